#include "twbd/perm.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "twbd/error.hpp"

namespace twbd {

Permutation Permutation::identity(Point degree) {
  std::vector<Point> images(degree);
  for (Point x = 0; x < degree; ++x) images[x] = x;
  return Permutation(std::move(images));
}

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  if (images_.empty()) throw std::invalid_argument("permutation of degree 0");
  std::vector<bool> seen(images_.size(), false);
  for (Point y : images_) {
    if (y >= images_.size() || seen[y]) throw std::invalid_argument("images are not a bijection");
    seen[y] = true;
  }
}

bool Permutation::is_identity() const {
  for (Point x = 0; x < degree(); ++x)
    if (images_[x] != x) return false;
  return true;
}

Subset Permutation::apply(Subset s) const {
  std::uint64_t out = 0;
  s.for_each([&](Point x) { out |= std::uint64_t{1} << images_[x]; });
  return Subset(out);
}

std::string Permutation::to_cycle_string() const {
  std::string out;
  std::vector<bool> done(degree(), false);
  for (Point x = 0; x < degree(); ++x) {
    if (done[x] || images_[x] == x) continue;
    out += '(';
    Point y = x;
    bool first = true;
    while (!done[y]) {
      if (!first) out += ',';
      out += std::to_string(y);
      done[y] = true;
      first = false;
      y = images_[y];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation compose(const Permutation &g, const Permutation &h) {
  if (g.degree() != h.degree()) throw std::invalid_argument("compose: degree mismatch");
  std::vector<Point> images(g.degree());
  for (Point x = 0; x < g.degree(); ++x) images[x] = h(g(x));
  return Permutation(std::move(images));
}

Permutation inverse(const Permutation &g) {
  std::vector<Point> images(g.degree());
  for (Point x = 0; x < g.degree(); ++x) images[g(x)] = x;
  return Permutation(std::move(images));
}

Subset apply_to_subset(const Permutation &g, Subset s) {
  if (s.span_end() > g.degree()) throw std::invalid_argument("apply_to_subset: point outside degree");
  return g.apply(s);
}

namespace {

Point parse_decimal(std::string_view tok) {
  Point value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("bad point label '" + std::string(tok) + "'");
  return value;
}

bool is_separator(char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

}  // namespace

Permutation parse_cycle_notation(std::string_view text, Point degree) {
  return parse_cycle_notation(text, degree, parse_decimal);
}

Permutation parse_cycle_notation(std::string_view text, Point degree, const LabelParser &label) {
  if (degree == 0) throw ParseError("degree must be positive");
  std::vector<Point> images(degree);
  for (Point x = 0; x < degree; ++x) images[x] = x;
  std::vector<bool> used(degree, false);

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && is_separator(text[i]) && text[i] != ',') ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in \"" + std::string(text) + "\"");
    ++i;
    std::vector<Point> cycle;
    while (true) {
      while (i < text.size() && is_separator(text[i])) ++i;
      if (i >= text.size()) throw ParseError("unterminated cycle in \"" + std::string(text) + "\"");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == '(') throw ParseError("nested '(' in \"" + std::string(text) + "\"");
      std::size_t start = i;
      while (i < text.size() && !is_separator(text[i]) && text[i] != '(' && text[i] != ')') ++i;
      Point x = label(text.substr(start, i - start));
      if (x >= degree)
        throw ParseError("point " + std::to_string(x) + " out of range for degree " + std::to_string(degree));
      if (used[x]) throw ParseError("point " + std::to_string(x) + " repeated");
      used[x] = true;
      cycle.push_back(x);
    }
    for (std::size_t j = 0; j < cycle.size(); ++j) images[cycle[j]] = cycle[(j + 1) % cycle.size()];
    skip_ws();
  }
  return Permutation(std::move(images));
}

std::size_t PermutationHash::operator()(const Permutation &p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point y : p.images()) h = (h ^ y) * 1099511628211ull;
  return h;
}

PermGroup::PermGroup(Point degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  if (generators_.empty()) throw std::invalid_argument("group needs at least one generator");
  for (const auto &g : generators_)
    if (g.degree() != degree_) throw std::invalid_argument("generator degree mismatch");
}

std::uint64_t closure_order(const PermGroup &group, std::uint64_t cap) {
  if (cap < 1) throw std::invalid_argument("closure cap must be positive");
  std::unordered_set<Permutation, PermutationHash> seen;
  std::deque<Permutation> queue;
  auto id = Permutation::identity(group.degree());
  seen.insert(id);
  queue.push_back(std::move(id));
  while (!queue.empty()) {
    Permutation g = std::move(queue.front());
    queue.pop_front();
    for (const auto &s : group.generators()) {
      Permutation h = compose(g, s);
      if (seen.insert(h).second) {
        if (seen.size() > cap)
          throw CapExceeded("group closure exceeded cap of " + std::to_string(cap) + " elements");
        queue.push_back(std::move(h));
      }
    }
  }
  return seen.size();
}

std::vector<Point> point_orbit(const PermGroup &group, Point x) {
  std::vector<bool> seen(group.degree(), false);
  std::vector<Point> orbit{x};
  seen[x] = true;
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (const auto &g : group.generators()) {
      Point y = g(orbit[i]);
      if (!seen[y]) {
        seen[y] = true;
        orbit.push_back(y);
      }
    }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

bool is_transitive(const PermGroup &group) { return point_orbit(group, 0).size() == group.degree(); }

PermGroup parse_group_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Point> degree;
  std::vector<Permutation> gens;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (!degree) {
      std::istringstream head(line);
      std::string kw;
      long long v = 0;
      if (!(head >> kw >> v) || kw != "degree" || v <= 0 || v > kMaxPoints)
        throw ParseError("group file line " + std::to_string(lineno) + ": expected 'degree v'");
      degree = static_cast<Point>(v);
      continue;
    }
    try {
      gens.push_back(parse_cycle_notation(line, *degree));
    } catch (const ParseError &e) {
      throw ParseError("group file line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!degree) throw ParseError("group file: missing 'degree' line");
  if (gens.empty()) gens.push_back(Permutation::identity(*degree));
  return PermGroup(*degree, std::move(gens));
}

PermGroup read_group_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_group_text(buf.str());
}

std::string format_group_text(const PermGroup &group) {
  std::string out = "degree " + std::to_string(group.degree()) + "\n";
  for (const auto &g : group.generators()) out += g.to_cycle_string() + "\n";
  return out;
}

}  // namespace twbd
