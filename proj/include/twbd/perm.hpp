#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "twbd/subset.hpp"

namespace twbd {

// A bijection on {0..degree-1}; images()[x] is the image of x.
class Permutation {
public:
  static Permutation identity(Point degree);

  // Throws std::invalid_argument unless images is a bijection.
  explicit Permutation(std::vector<Point> images);

  Point degree() const { return static_cast<Point>(images_.size()); }
  Point operator()(Point x) const { return images_[x]; }
  const std::vector<Point> &images() const { return images_; }

  bool is_identity() const;
  Subset apply(Subset s) const;

  // Cycle notation with singleton cycles omitted; "()" for the identity.
  std::string to_cycle_string() const;

  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend auto operator<=>(const Permutation &, const Permutation &) = default;

private:
  std::vector<Point> images_;
};

// Apply g first, then h.
Permutation compose(const Permutation &g, const Permutation &h);
Permutation inverse(const Permutation &g);
Subset apply_to_subset(const Permutation &g, Subset s);

// Parses a product of disjoint cycles such as "(0,1,2)(3,4)". Separators
// may be commas or whitespace. Unmentioned points are fixed.
Permutation parse_cycle_notation(std::string_view text, Point degree);

// Maps one point token to a point label; used for listings written in
// other alphabets (hex digits, subscripted labels).
using LabelParser = std::function<Point(std::string_view)>;
Permutation parse_cycle_notation(std::string_view text, Point degree, const LabelParser &label);

struct PermutationHash {
  std::size_t operator()(const Permutation &p) const noexcept;
};

class PermGroup {
public:
  // Throws std::invalid_argument on an empty list or mismatched degrees.
  PermGroup(Point degree, std::vector<Permutation> generators);

  Point degree() const { return degree_; }
  const std::vector<Permutation> &generators() const { return generators_; }

private:
  Point degree_;
  std::vector<Permutation> generators_;
};

inline constexpr std::uint64_t kDefaultClosureCap = 10'000'000;

// |<generators>| by breadth-first closure. Throws CapExceeded once more
// than cap elements are found.
std::uint64_t closure_order(const PermGroup &group, std::uint64_t cap = kDefaultClosureCap);

std::vector<Point> point_orbit(const PermGroup &group, Point x);
bool is_transitive(const PermGroup &group);

// Group file: "degree v" on the first line, then one permutation per
// nonempty line in cycle notation; '#' starts a comment.
PermGroup parse_group_text(std::string_view text);
PermGroup read_group_file(const std::string &path);
std::string format_group_text(const PermGroup &group);

}  // namespace twbd
