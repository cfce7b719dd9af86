#include "twbd/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "twbd/canonical.hpp"
#include "twbd/classify.hpp"
#include "twbd/error.hpp"
#include "catalog_assets.hpp"

namespace twbd {

namespace {

enum class Labels { decimal, hex, z11x2 };

Point parse_number(std::string_view tok) {
  Point value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError("bad point label '" + std::string(tok) + "'");
  return value;
}

// Single characters are hex digits; longer tokens are read as decimal, so
// a stray "14" in a hex listing still means point 14.
Point parse_hex_label(std::string_view tok) {
  if (tok.size() == 1) {
    char c = tok[0];
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw ParseError("bad point label '" + std::string(tok) + "'");
  }
  return parse_number(tok);
}

// x_i -> x + 11 i.
Point parse_z11x2_label(std::string_view tok) {
  auto us = tok.find('_');
  if (us == std::string_view::npos) throw ParseError("expected x_i label, got '" + std::string(tok) + "'");
  Point x = parse_number(tok.substr(0, us));
  Point i = parse_number(tok.substr(us + 1));
  if (x >= 11 || i >= 2) throw ParseError("label '" + std::string(tok) + "' outside Z11 x Z2");
  return x + 11 * i;
}

Point parse_label(Labels labels, std::string_view tok) {
  switch (labels) {
    case Labels::hex: return parse_hex_label(tok);
    case Labels::z11x2: return parse_z11x2_label(tok);
    default: return parse_number(tok);
  }
}

// "ax+b" acts as x_i -> (ax+b)_i; a trailing ",i+1" also swaps the copies.
Permutation parse_z11x2_action(const std::string &text) {
  static const std::regex re(R"(^(-?\d*)x([+-]\d+)?(,i\+1)?$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw ParseError("bad action '" + text + "'");
  int a = 1;
  if (m[1].length() == 1 && m[1].str() == "-")
    a = -1;
  else if (m[1].length() > 0)
    a = std::stoi(m[1].str());
  int b = m[2].matched ? std::stoi(m[2].str()) : 0;
  bool swap = m[3].matched;
  std::vector<Point> images(22);
  for (int i = 0; i < 2; ++i)
    for (int x = 0; x < 11; ++x) {
      int y = ((a * x + b) % 11 + 11) % 11;
      int j = swap ? 1 - i : i;
      images[x + 11 * i] = static_cast<Point>(y + 11 * j);
    }
  return Permutation(std::move(images));
}

std::string trim(std::string s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Subset parse_block(Labels labels, std::string text, Point v) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') throw ParseError("bad block '" + text + "'");
  text = text.substr(1, text.size() - 2);
  std::vector<Point> pts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    Point x = parse_label(labels, trim(tok));
    if (x >= v) throw ParseError("point " + std::to_string(x) + " outside block range in '{" + text + "}'");
    pts.push_back(x);
  }
  Subset b(pts);
  if (static_cast<std::size_t>(b.size()) != pts.size()) throw ParseError("repeated point in '{" + text + "}'");
  return b;
}

// Listing index of an id such as "D28_11".
int entry_index(const std::string &id) {
  auto us = id.find('_');
  return us == std::string::npos ? 0 : std::atoi(id.c_str() + us + 1);
}

std::vector<CatalogEntry> load_catalog() {
  std::vector<CatalogEntry> out;
  for (const auto &asset : catalog_assets()) {
    if (asset.name == "best_biplane") continue;
    out.push_back(parse_catalog_entry(asset.text));
    if (out.back().id != asset.name) throw std::logic_error("catalog asset " + std::string(asset.name) + " names " + out.back().id);
  }
  std::sort(out.begin(), out.end(), [](const CatalogEntry &a, const CatalogEntry &b) {
    if (a.v != b.v) return a.v < b.v;
    return entry_index(a.id) < entry_index(b.id);
  });
  return out;
}

}  // namespace

PermGroup CatalogEntry::group() const { return PermGroup(v, generators); }

SetSystem CatalogEntry::materialize() const { return develop(baseblocks, group()); }

std::vector<std::string> CatalogEntry::generator_strings() const {
  std::vector<std::string> out;
  for (const auto &g : generators) out.push_back(g.to_cycle_string());
  return out;
}

CatalogEntry parse_catalog_entry(std::string_view text) {
  CatalogEntry e;
  Labels labels = Labels::decimal;
  enum { header, gens, blocks } section = header;
  std::stringstream ss{std::string(text)};
  std::string line;
  while (std::getline(ss, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (e.id.empty()) e.id = trim(line.substr(1));
      continue;
    }
    if (line == "generators") {
      section = gens;
      continue;
    }
    if (line == "baseblocks") {
      section = blocks;
      continue;
    }
    if (section == gens) {
      if (e.v == 0) throw ParseError("generators before v");
      if (line.rfind("action ", 0) == 0) {
        if (labels != Labels::z11x2 || e.v != 22) throw ParseError("actions need z11x2 labels");
        e.generators.push_back(parse_z11x2_action(trim(line.substr(7))));
      } else {
        e.generators.push_back(
            parse_cycle_notation(line, e.v, [labels](std::string_view t) { return parse_label(labels, t); }));
      }
      continue;
    }
    if (section == blocks) {
      e.baseblocks.push_back(parse_block(labels, line, e.v));
      continue;
    }
    auto sp = line.find(' ');
    std::string key = line.substr(0, sp);
    std::string value = sp == std::string::npos ? "" : trim(line.substr(sp + 1));
    if (key == "v") {
      e.v = parse_number(value);
      if (e.v == 0 || e.v > kMaxPoints) throw ParseError("v out of range");
    } else if (key == "labels") {
      if (value == "hex")
        labels = Labels::hex;
      else if (value == "z11x2")
        labels = Labels::z11x2;
      else if (value == "decimal")
        labels = Labels::decimal;
      else
        throw ParseError("unknown label scheme '" + value + "'");
    } else if (key == "family") {
      e.family = value;
    } else if (key == "order") {
      if (value != "unknown") e.expected_order = parse_number(value);
    } else if (key == "hexads") {
      std::stringstream vs(value);
      std::string kind;
      vs >> kind;
      std::vector<int> p;
      for (int x; vs >> x;) p.push_back(x);
      auto pair = [&] { return "(" + std::to_string(p.at(0)) + "," + std::to_string(p.at(1)) + ")"; };
      if (kind == "biplane" && p.size() == 2)
        e.expected_hexads = "biplane bp" + pair();
      else if (kind == "sbp" && p.size() == 2)
        e.expected_hexads = "sbp" + pair();
      else if (kind == "two-class" && p.size() == 6)
        e.expected_hexads = TwoClassParams{p[0], p[1], p[2], p[3], p[4], p[5]}.to_string();
      else if (kind == "not-2-class" && p.empty())
        e.expected_hexads = "not 2-class";
      else
        throw ParseError("bad hexads line '" + value + "'");
    } else {
      throw ParseError("unknown catalog key '" + key + "'");
    }
  }
  if (e.id.empty() || e.v == 0 || e.generators.empty() || e.baseblocks.empty())
    throw ParseError("incomplete catalog entry '" + e.id + "'");
  return e;
}

const std::vector<CatalogEntry> &catalog_entries() {
  static const std::vector<CatalogEntry> entries = load_catalog();
  return entries;
}

std::vector<std::string> catalog_list() {
  std::vector<std::string> ids;
  for (const auto &e : catalog_entries()) ids.push_back(e.id);
  return ids;
}

const CatalogEntry &catalog_get(std::string_view id) {
  for (const auto &e : catalog_entries())
    if (e.id == id) return e;
  throw std::out_of_range("unknown catalog id '" + std::string(id) + "'");
}

SetSystem best_biplane_fixture() {
  for (const auto &asset : catalog_assets()) {
    if (asset.name != "best_biplane") continue;
    std::stringstream ss{std::string(asset.text)};
    std::string line;
    std::vector<Subset> blocks;
    while (std::getline(ss, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#' || line.find(' ') != std::string::npos || line == "hexads" || line == "ovals")
        continue;
      std::vector<Point> pts;
      for (char c : line) pts.push_back(parse_hex_label(std::string_view(&c, 1)));
      blocks.emplace_back(pts);
    }
    return SetSystem(16, std::move(blocks));
  }
  throw std::logic_error("best biplane fixture missing");
}

EntryReport verify_entry(const CatalogEntry &entry, const SetSystem &design) {
  auto start = std::chrono::steady_clock::now();
  EntryReport r;
  r.id = entry.id;
  r.v = entry.v;
  r.expected_tag = entry.expected_hexads;
  r.expected_order = entry.expected_order;
  r.expected_tetrads = tetrad_count(entry.v);

  auto balance = verify_twbd(design, 3, {4, 6}, 1);
  r.balanced = balance.ok;
  if (!balance.ok) r.balance_detail = balance.describe();
  r.hexads = design.blocks_of_size(6).size();
  r.tetrads = design.blocks_of_size(4).size();

  auto c = classify(design.blocks_of_size(6));
  r.hexad_tag = c.tag();
  if (c.gd.type != GdType::not_gd || c.gd.index_convention_type != GdType::not_gd)
    r.gd_conventions_agree = c.gd.conventions_agree();

  auto aut = automorphism_group(design);
  r.aut_order = aut.order;
  r.aut_transitive = aut.generators.empty() ? design.v() == 1 : is_transitive(PermGroup(design.v(), aut.generators));

  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

EntryReport verify_entry(const CatalogEntry &entry) { return verify_entry(entry, entry.materialize()); }

std::vector<EntryReport> verify_all(unsigned jobs) {
  const auto &entries = catalog_entries();
  std::vector<EntryReport> reports(entries.size());
  const long n = static_cast<long>(entries.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs > 0 ? jobs : 1)
  for (long i = 0; i < n; ++i) reports[i] = verify_entry(entries[i]);
  return reports;
}

std::string format_report_table(const std::vector<EntryReport> &reports) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-7s %3s %9s %-20s %8s %5s %7s  %s\n", "id", "v", "6/4", "hexads", "|Aut|", "3-bal",
                "time", "result");
  out += buf;
  std::size_t passed = 0;
  for (const auto &r : reports) {
    std::string counts = std::to_string(r.hexads) + "/" + std::to_string(r.tetrads);
    std::string order = std::to_string(r.aut_order);
    if (!r.expected_order) order += "*";
    std::string verdict = r.pass() ? "pass" : "FAIL";
    if (!r.balanced) verdict += " (" + r.balance_detail + ")";
    if (!r.counts_ok()) verdict += " (expected " + std::to_string(r.v) + "/" + std::to_string(r.expected_tetrads) + ")";
    if (!r.tag_ok()) verdict += " (expected " + r.expected_tag + ")";
    if (!r.order_ok()) verdict += " (expected order " + std::to_string(*r.expected_order) + ")";
    if (!r.aut_transitive) verdict += " (automorphisms not transitive)";
    if (!r.gd_conventions_agree) verdict += " [GD conventions disagree]";
    std::snprintf(buf, sizeof buf, "%-7s %3u %9s %-20s %8s %5s %6.2fs  %s\n", r.id.c_str(), r.v, counts.c_str(),
                  r.hexad_tag.c_str(), order.c_str(), r.balanced ? "yes" : "no", r.seconds, verdict.c_str());
    out += buf;
    passed += r.pass();
  }
  out += std::to_string(passed) + "/" + std::to_string(reports.size()) + " entries pass";
  bool any_unknown = std::any_of(reports.begin(), reports.end(), [](const EntryReport &r) { return !r.expected_order; });
  if (any_unknown) out += "; * = no published order to compare";
  out += "\n";
  return out;
}

}  // namespace twbd
