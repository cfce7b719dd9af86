#include "twbd/classify.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace twbd {

std::string TwoClassParams::to_string() const {
  return "(" + std::to_string(v) + "," + std::to_string(k) + ";" + std::to_string(lambda1) + "," +
         std::to_string(lambda2) + ";" + std::to_string(delta1) + "," + std::to_string(delta2) + ")";
}

std::string to_string(GdType t) {
  switch (t) {
    case GdType::not_gd: return "not group divisible";
    case GdType::singular: return "singular group divisible";
    case GdType::semi_regular: return "semi-regular group divisible";
    case GdType::regular: return "regular group divisible";
  }
  return "?";
}

std::string Classification::tag() const {
  if (!two_class) return "not 2-class";
  const auto &p = *two_class;
  if (is_biplane) return "biplane bp(" + std::to_string(p.v) + "," + std::to_string(p.k) + ")";
  if (is_symmetric_2design)
    return "symmetric 2-(" + std::to_string(p.v) + "," + std::to_string(p.k) + "," + std::to_string(design_lambda) + ")";
  if (is_semibiplane) return "sbp(" + std::to_string(p.v) + "," + std::to_string(p.k) + ")";
  return p.to_string();
}

namespace {

// Number of blocks through each pair, as a dense v x v table.
std::vector<std::vector<int>> pair_coverage(const SetSystem &s) {
  std::vector<std::vector<int>> cov(s.v(), std::vector<int>(s.v(), 0));
  for (Subset b : s.blocks()) {
    const auto pts = b.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        ++cov[pts[i]][pts[j]];
        ++cov[pts[j]][pts[i]];
      }
  }
  return cov;
}

// Associate class (1 or 2) of every pair; 0 on the diagonal.
std::vector<std::vector<int>> associate_classes(const SetSystem &s, const TwoClassParams &tc) {
  auto cov = pair_coverage(s);
  for (Point x = 0; x < s.v(); ++x)
    for (Point y = 0; y < s.v(); ++y) cov[x][y] = x == y ? 0 : (cov[x][y] == tc.lambda1 ? 1 : 2);
  return cov;
}

}  // namespace

std::optional<SchemeParams> association_scheme_params(const SetSystem &s, const TwoClassParams &tc) {
  if (tc.lambda1 == tc.lambda2) return std::nullopt;
  const Point v = s.v();
  const auto cls = associate_classes(s, tc);

  std::array<int, 3> n{-1, -1, -1};
  for (Point x = 0; x < v; ++x) {
    std::array<int, 3> cnt{0, 0, 0};
    for (Point y = 0; y < v; ++y)
      if (y != x) ++cnt[cls[x][y]];
    for (int i = 1; i <= 2; ++i) {
      if (n[i] < 0) n[i] = cnt[i];
      if (n[i] != cnt[i]) return std::nullopt;
    }
  }
  if (n[1] == 0 || n[2] == 0) return std::nullopt;

  std::array<Matrix2, 3> P{};
  std::array<bool, 3> seen{false, false, false};
  for (Point x = 0; x < v; ++x)
    for (Point y = 0; y < v; ++y) {
      if (x == y) continue;
      Matrix2 m{};
      for (Point z = 0; z < v; ++z)
        if (z != x && z != y) ++m[cls[x][z] - 1][cls[y][z] - 1];
      const int i = cls[x][y];
      if (!seen[i]) {
        P[i] = m;
        seen[i] = true;
      } else if (P[i] != m) {
        return std::nullopt;
      }
    }
  return SchemeParams{n[1], n[2], P[1], P[2]};
}

namespace {

GdType type_from(int r, int k, int v, int lambda_within, int lambda_between) {
  if (r - lambda_within == 0) return GdType::singular;
  if (r - lambda_within < 0) return GdType::not_gd;
  const int d = r * k - v * lambda_between;
  if (d == 0) return GdType::semi_regular;
  if (d > 0) return GdType::regular;
  return GdType::not_gd;
}

}  // namespace

GdInfo gd_type(const SetSystem &s, const SchemeParams &scheme, const TwoClassParams &tc) {
  GdInfo info;
  const Point v = s.v();
  const auto cls = associate_classes(s, tc);
  const int r = tc.k;  // symmetric: replication equals block size

  for (int c = 1; c <= 2 && info.group_class == 0; ++c) {
    const int m = (c == 1 ? scheme.n1 : scheme.n2) + 1;
    if (m < 2 || v % m != 0 || static_cast<Point>(m) == v) continue;
    // x ~ y iff x = y or (x,y) is in class c; must be transitive.
    bool equivalence = true;
    for (Point x = 0; x < v && equivalence; ++x)
      for (Point y = 0; y < v && equivalence; ++y) {
        if (x == y || cls[x][y] != c) continue;
        for (Point z = 0; z < v; ++z)
          if (z != x && cls[y][z] == c && cls[x][z] != c) {
            equivalence = false;
            break;
          }
      }
    if (!equivalence) continue;
    info.group_class = c;
    info.group_size = m;
  }
  if (info.group_class == 0) return info;

  const int within = info.group_class == 1 ? tc.lambda1 : tc.lambda2;
  const int between = info.group_class == 1 ? tc.lambda2 : tc.lambda1;
  info.type = type_from(r, tc.k, static_cast<int>(v), within, between);
  info.index_convention_type = type_from(r, tc.k, static_cast<int>(v), tc.lambda2, tc.lambda1);
  return info;
}

Classification classify(const SetSystem &s) {
  Classification c;
  const auto rep = replication_profile(s);
  c.is_tactical = !rep.empty() && std::all_of(rep.begin(), rep.end(), [&](auto r) { return r == rep[0]; });
  if (c.is_tactical) c.replication = rep[0];
  if (s.size() == 0) return c;

  const int k = s.blocks()[0].size();
  const bool uniform = std::all_of(s.blocks().begin(), s.blocks().end(), [&](Subset b) { return b.size() == k; });
  c.is_one_design_6_6 = uniform && k == 6 && s.size() == s.v() && c.is_tactical && c.replication == 6;

  const bool symmetric_one_design =
      uniform && s.size() == s.v() && c.is_tactical && c.replication == static_cast<std::uint64_t>(k);
  if (!symmetric_one_design) return c;

  const auto cov = pair_coverage(s);
  std::set<int> lambdas;
  for (Point x = 0; x < s.v(); ++x)
    for (Point y = x + 1; y < s.v(); ++y) lambdas.insert(cov[x][y]);
  std::set<int> deltas;
  const auto blocks = s.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j) deltas.insert((blocks[i] & blocks[j]).size());

  if (lambdas.size() > 2 || deltas.size() > 2 || lambdas.empty()) return c;
  TwoClassParams p;
  p.v = static_cast<int>(s.v());
  p.k = k;
  p.lambda1 = *lambdas.begin();
  p.lambda2 = *lambdas.rbegin();
  p.delta1 = deltas.empty() ? p.lambda1 : *deltas.begin();
  p.delta2 = deltas.empty() ? p.lambda2 : *deltas.rbegin();
  c.two_class = p;

  if (p.lambda1 == p.lambda2) {
    c.is_symmetric_2design = true;
    c.design_lambda = p.lambda1;
    c.is_biplane = p.lambda1 == 2;
    return c;
  }
  c.is_semibiplane = p.lambda1 == 0 && p.delta1 == 0 && p.lambda2 == 2 && p.delta2 == 2;
  c.scheme = association_scheme_params(s, p);
  if (c.scheme) c.gd = gd_type(s, *c.scheme, p);
  return c;
}

}  // namespace twbd
