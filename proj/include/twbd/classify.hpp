#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "twbd/design.hpp"

namespace twbd {

// (v,k;lambda1,lambda2;delta1,delta2) with lambda1 <= lambda2 and
// delta1 <= delta2.
struct TwoClassParams {
  int v = 0, k = 0;
  int lambda1 = 0, lambda2 = 0;
  int delta1 = 0, delta2 = 0;

  std::string to_string() const;
  friend bool operator==(const TwoClassParams &, const TwoClassParams &) = default;
};

using Matrix2 = std::array<std::array<int, 2>, 2>;

// Parameters of a 2-class association scheme. Class 1 holds the pairs
// covered lambda1 times. P1[j][k] counts, for a pair of first associates
// x,y, the points that are (j+1)-th associates of x and (k+1)-th of y.
struct SchemeParams {
  int n1 = 0, n2 = 0;
  Matrix2 P1{}, P2{};

  friend bool operator==(const SchemeParams &, const SchemeParams &) = default;
};

enum class GdType { not_gd, singular, semi_regular, regular };

std::string to_string(GdType t);

struct GdInfo {
  GdType type = GdType::not_gd;
  // Associate class (1 or 2) whose pairs lie inside a group; 0 if none.
  int group_class = 0;
  int group_size = 0;
  // Type from the inequalities r-lambda2 > 0 and rk-v*lambda1 > 0 read with
  // fixed class indices, which assumes class 2 is the within-group class.
  GdType index_convention_type = GdType::not_gd;
  bool conventions_agree() const { return type == index_convention_type; }
};

struct Classification {
  bool is_tactical = false;
  std::uint64_t replication = 0;  // valid when is_tactical
  bool is_one_design_6_6 = false;
  std::optional<TwoClassParams> two_class;
  bool is_symmetric_2design = false;
  int design_lambda = 0;  // valid when is_symmetric_2design
  bool is_biplane = false;
  bool is_semibiplane = false;
  std::optional<SchemeParams> scheme;
  GdInfo gd;

  // Short verdict, e.g. "biplane bp(16,6)", "sbp(20,6)",
  // "(26,6;1,6;0,2)" or "not 2-class".
  std::string tag() const;
};

Classification classify(const SetSystem &s);

std::optional<SchemeParams> association_scheme_params(const SetSystem &s, const TwoClassParams &two_class);

GdInfo gd_type(const SetSystem &s, const SchemeParams &scheme, const TwoClassParams &two_class);

}  // namespace twbd
