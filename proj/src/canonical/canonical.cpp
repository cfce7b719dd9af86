#include "twbd/canonical.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "twbd/error.hpp"

namespace twbd {

Certificate::Certificate(Point v, std::vector<std::uint64_t> blocks) : v_(v), blocks_(std::move(blocks)) {
  std::sort(blocks_.begin(), blocks_.end());
}

std::vector<std::uint32_t> Certificate::color_signature() const {
  std::vector<std::uint32_t> sig(v_ + 1, 0);
  for (auto b : blocks_) ++sig[std::popcount(b)];
  return sig;
}

std::string Certificate::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 + 16 * blocks_.size());
  out += digits[(v_ >> 4) & 0xf];
  out += digits[v_ & 0xf];
  for (auto b : blocks_)
    for (int shift = 60; shift >= 0; shift -= 4) out += digits[(b >> shift) & 0xf];
  return out;
}

Certificate Certificate::from_hex(const std::string &text) {
  if (text.size() < 2 || (text.size() - 2) % 16 != 0) throw ParseError("certificate: bad hex length");
  auto nibble = [](char c) -> std::uint64_t {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw ParseError("certificate: bad hex digit");
  };
  const auto v = static_cast<Point>(nibble(text[0]) * 16 + nibble(text[1]));
  std::vector<std::uint64_t> blocks;
  for (std::size_t i = 2; i < text.size(); i += 16) {
    std::uint64_t b = 0;
    for (std::size_t j = 0; j < 16; ++j) b = (b << 4) | nibble(text[i + j]);
    blocks.push_back(b);
  }
  return Certificate(v, std::move(blocks));
}

namespace {

class Searcher {
public:
  explicit Searcher(const SetSystem &s) : v_(s.v()) {
    point_blocks_.resize(v_);
    for (Subset b : s.blocks()) {
      const auto id = static_cast<std::uint32_t>(block_points_.size());
      block_points_.push_back(b.points());
      b.for_each([&](Point x) { point_blocks_[x].push_back(id); });
    }
  }

  CanonicalForm run() {
    std::vector<int> colors(v_, 0);
    std::vector<Point> path;
    dfs(refine(std::move(colors)), path);
    CanonicalForm out;
    out.certificate = best_cert_;
    out.labeling = Permutation(std::vector<Point>(best_lab_.begin(), best_lab_.end()));
    out.automorphisms = std::move(gens_);
    out.leaves_visited = leaves_;
    return out;
  }

private:
  // Ranks signatures so that equal signatures share a rank and ranks follow
  // signature order; returns the number of distinct ranks.
  static int rank_signatures(const std::vector<std::vector<int>> &sigs, std::vector<int> &rank) {
    std::vector<std::uint32_t> idx(sigs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return sigs[a] < sigs[b]; });
    rank.assign(sigs.size(), 0);
    int r = -1;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i == 0 || sigs[idx[i]] != sigs[idx[i - 1]]) ++r;
      rank[idx[i]] = r;
    }
    return r + 1;
  }

  // Equitable refinement of the point coloring against the blocks.
  std::vector<int> refine(std::vector<int> colors) const {
    int cells = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
    std::vector<std::vector<int>> bsig(block_points_.size());
    std::vector<std::vector<int>> psig(v_);
    std::vector<int> brank, prank;
    while (cells < static_cast<int>(v_)) {
      for (std::size_t b = 0; b < block_points_.size(); ++b) {
        auto &sig = bsig[b];
        sig.clear();
        sig.push_back(static_cast<int>(block_points_[b].size()));
        for (Point x : block_points_[b]) sig.push_back(colors[x]);
        std::sort(sig.begin() + 1, sig.end());
      }
      rank_signatures(bsig, brank);
      for (Point x = 0; x < v_; ++x) {
        auto &sig = psig[x];
        sig.clear();
        sig.push_back(colors[x]);
        for (auto b : point_blocks_[x]) sig.push_back(brank[b]);
        std::sort(sig.begin() + 1, sig.end());
      }
      const int next = rank_signatures(psig, prank);
      if (next == cells) break;
      colors.swap(prank);
      cells = next;
    }
    return colors;
  }

  static std::vector<int> individualize(const std::vector<int> &colors, Point x) {
    const int c = colors[x];
    std::vector<int> out(colors);
    for (std::size_t y = 0; y < out.size(); ++y)
      if (out[y] > c || (out[y] == c && y != x)) ++out[y];
    return out;
  }

  Certificate leaf_certificate(const std::vector<int> &labels) const {
    std::vector<std::uint64_t> masks;
    masks.reserve(block_points_.size());
    for (const auto &pts : block_points_) {
      std::uint64_t m = 0;
      for (Point x : pts) m |= std::uint64_t{1} << labels[x];
      masks.push_back(m);
    }
    return Certificate(v_, std::move(masks));
  }

  // Orbits of the automorphisms found so far that fix the path pointwise.
  bool same_orbit(Point x, const std::vector<Point> &explored, const std::vector<Point> &path) const {
    std::vector<Point> parent(v_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Point a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    bool any = false;
    for (const auto &g : gens_) {
      if (!std::all_of(path.begin(), path.end(), [&](Point p) { return g(p) == p; })) continue;
      any = true;
      for (Point y = 0; y < v_; ++y) parent[find(y)] = find(g(y));
    }
    if (!any) return false;
    const Point rx = find(x);
    return std::any_of(explored.begin(), explored.end(), [&](Point y) { return find(y) == rx; });
  }

  // Automorphism taking each point of the reference leaf to the point with
  // the same label in the current leaf. Returns the depth to resume at when
  // it carries the reference path onto the current one up to their first
  // difference, else -1.
  int record_automorphism(const std::vector<int> &ref_lab, const std::vector<Point> &ref_path,
                          const std::vector<int> &cur_lab, const std::vector<Point> &cur_path) {
    std::vector<Point> inv_cur(v_);
    for (Point x = 0; x < v_; ++x) inv_cur[cur_lab[x]] = x;
    std::vector<Point> img(v_);
    for (Point x = 0; x < v_; ++x) img[x] = inv_cur[ref_lab[x]];
    Permutation g(std::move(img));
    std::size_t d = 0;
    while (d < ref_path.size() && d < cur_path.size() && ref_path[d] == cur_path[d]) ++d;
    bool carries = d < ref_path.size() && d < cur_path.size();
    for (std::size_t i = 0; carries && i <= d; ++i) carries = g(ref_path[i]) == cur_path[i];
    if (!g.is_identity() && std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(std::move(g));
    return carries ? static_cast<int>(d) : -1;
  }

  int leaf(const std::vector<int> &labels, const std::vector<Point> &path) {
    ++leaves_;
    Certificate cert = leaf_certificate(labels);
    if (!have_first_) {
      have_first_ = true;
      first_cert_ = best_cert_ = cert;
      first_lab_ = best_lab_ = labels;
      first_path_ = best_path_ = path;
      return -1;
    }
    if (cert == first_cert_) return record_automorphism(first_lab_, first_path_, labels, path);
    if (cert > best_cert_) {
      best_cert_ = std::move(cert);
      best_lab_ = labels;
      best_path_ = path;
      return -1;
    }
    if (cert == best_cert_) return record_automorphism(best_lab_, best_path_, labels, path);
    return -1;
  }

  int dfs(const std::vector<int> &colors, std::vector<Point> &path) {
    const int depth = static_cast<int>(path.size());
    // Target cell: the first cell with more than one point.
    std::vector<int> count(v_, 0);
    for (int c : colors) ++count[c];
    int target = -1;
    for (Point c = 0; c < v_; ++c)
      if (count[c] > 1) {
        target = static_cast<int>(c);
        break;
      }
    if (target < 0) return leaf(colors, path);

    std::vector<Point> explored;
    for (Point x = 0; x < v_; ++x) {
      if (colors[x] != target) continue;
      if (!explored.empty() && same_orbit(x, explored, path)) continue;
      explored.push_back(x);
      path.push_back(x);
      const int r = dfs(refine(individualize(colors, x)), path);
      path.pop_back();
      if (r >= 0 && r < depth) return r;
    }
    return -1;
  }

  Point v_;
  std::vector<std::vector<Point>> block_points_;
  std::vector<std::vector<std::uint32_t>> point_blocks_;

  bool have_first_ = false;
  Certificate first_cert_, best_cert_;
  std::vector<int> first_lab_, best_lab_;
  std::vector<Point> first_path_, best_path_;
  std::vector<Permutation> gens_;
  std::uint64_t leaves_ = 0;
};

}  // namespace

CanonicalForm canonical_form(const SetSystem &s) {
  if (s.v() == 0) throw std::invalid_argument("canonical_form: empty point set");
  return Searcher(s).run();
}

Certificate canonical_certificate(const SetSystem &s) { return canonical_form(s).certificate; }

std::vector<std::uint64_t> design_invariants(const SetSystem &s) {
  const Point v = s.v();
  std::vector<std::uint64_t> inv{v, s.size()};
  std::vector<std::uint64_t> sizes(v + 1, 0);
  for (Subset b : s.blocks()) ++sizes[b.size()];
  inv.insert(inv.end(), sizes.begin(), sizes.end());

  auto rep = replication_profile(s);
  std::sort(rep.begin(), rep.end());
  inv.insert(inv.end(), rep.begin(), rep.end());

  // Intersection sizes keyed by the pair of block sizes.
  std::map<std::array<int, 3>, std::uint64_t> meets;
  const auto blocks = s.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      const int si = blocks[i].size(), sj = blocks[j].size();
      ++meets[{std::min(si, sj), std::max(si, sj), (blocks[i] & blocks[j]).size()}];
    }
  for (const auto &[key, n] : meets) inv.insert(inv.end(), {std::uint64_t(key[0]), std::uint64_t(key[1]),
                                                            std::uint64_t(key[2]), n});

  std::vector<std::vector<std::uint32_t>> cov(v, std::vector<std::uint32_t>(v, 0));
  for (Subset b : blocks) {
    const auto pts = b.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) ++cov[pts[i]][pts[j]];
  }
  std::map<std::uint32_t, std::uint64_t> pairs;
  for (Point x = 0; x < v; ++x)
    for (Point y = x + 1; y < v; ++y) ++pairs[cov[x][y]];
  inv.push_back(~std::uint64_t{0});
  for (const auto &[c, n] : pairs) inv.insert(inv.end(), {c, n});
  return inv;
}

bool are_isomorphic(const SetSystem &a, const SetSystem &b) {
  if (a.v() != b.v() || a.size() != b.size()) return false;
  if (design_invariants(a) != design_invariants(b)) return false;
  return canonical_certificate(a) == canonical_certificate(b);
}

AutomorphismGroup automorphism_group(const SetSystem &s, std::uint64_t cap) {
  auto form = canonical_form(s);
  AutomorphismGroup out;
  out.generators = std::move(form.automorphisms);
  if (out.generators.empty()) {
    out.order = 1;
    return out;
  }
  out.order = closure_order(PermGroup(s.v(), out.generators), cap);
  return out;
}

std::size_t IsoReducer::add(const SetSystem &s) { return find_or_insert(s, nullptr); }

std::size_t IsoReducer::add(const SetSystem &s, const Certificate &cert) { return find_or_insert(s, &cert); }

const Certificate &IsoReducer::certificate(std::size_t id) {
  if (!certs_[id]) certs_[id] = canonical_certificate(classes_[id].representative);
  return *certs_[id];
}

std::size_t IsoReducer::find_or_insert(const SetSystem &s, const Certificate *given) {
  auto inv = design_invariants(s);
  auto &bucket = buckets_[inv];
  std::optional<Certificate> cert;
  if (given) cert = *given;
  if (!bucket.empty()) {
    if (!cert) cert = canonical_certificate(s);
    for (std::size_t id : bucket)
      if (certificate(id) == *cert) {
        ++classes_[id].multiplicity;
        return id;
      }
  }
  const std::size_t id = classes_.size();
  classes_.push_back({s, 1});
  certs_.push_back(std::move(cert));
  invariants_.push_back(std::move(inv));
  bucket.push_back(id);
  return id;
}

std::vector<IsoReducer::Class> iso_reduce(const std::vector<SetSystem> &systems) {
  IsoReducer r;
  for (const auto &s : systems) r.add(s);
  return r.classes();
}

std::optional<std::size_t> CertificateCache::find(const Certificate &c) const {
  auto it = ids_.find(c.hex());
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::size_t CertificateCache::insert(const Certificate &c) {
  auto [it, inserted] = ids_.emplace(c.hex(), ids_.size());
  return it->second;
}

void CertificateCache::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open certificate cache " + path);
  std::string hex;
  std::size_t id = 0;
  while (in >> hex >> id) {
    Certificate::from_hex(hex);  // validates
    ids_[hex] = id;
  }
}

void CertificateCache::save(const std::string &path) const {
  std::vector<std::pair<std::size_t, std::string>> rows;
  for (const auto &[hex, id] : ids_) rows.emplace_back(id, hex);
  std::sort(rows.begin(), rows.end());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto &[id, hex] : rows) out << hex << ' ' << id << '\n';
}

}  // namespace twbd
