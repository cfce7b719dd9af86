#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace twbd {

using Point = std::uint32_t;

inline constexpr Point kMaxPoints = 64;

// A subset of {0..63} stored as a bitmask. The mask is the canonical
// encoding of the sorted point sequence, so it doubles as a hash key.
class Subset {
public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t mask) : mask_(mask) {}
  Subset(std::initializer_list<Point> points);
  explicit Subset(std::span<const Point> points);

  static Subset from_points(std::span<const Point> points) { return Subset(points); }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(Point x) const { return (mask_ >> x) & 1u; }
  constexpr bool includes(Subset other) const { return (other.mask_ & ~mask_) == 0; }

  constexpr Subset with(Point x) const { return Subset(mask_ | (std::uint64_t{1} << x)); }
  constexpr Subset without(Point x) const { return Subset(mask_ & ~(std::uint64_t{1} << x)); }
  constexpr Subset operator|(Subset o) const { return Subset(mask_ | o.mask_); }
  constexpr Subset operator&(Subset o) const { return Subset(mask_ & o.mask_); }

  // Largest point + 1, or 0 for the empty set.
  constexpr Point span_end() const { return mask_ ? 64u - std::countl_zero(mask_) : 0u; }

  std::vector<Point> points() const;
  std::string to_string() const;

  template <typename F>
  constexpr void for_each(F &&f) const {
    for (std::uint64_t m = mask_; m; m &= m - 1) f(static_cast<Point>(std::countr_zero(m)));
  }

  friend constexpr bool operator==(Subset, Subset) = default;

private:
  std::uint64_t mask_ = 0;
};

// Lexicographic order on the sorted point sequences; a proper prefix
// sorts first.
constexpr int lex_compare(Subset a, Subset b) {
  std::uint64_t x = a.mask(), y = b.mask();
  while (x && y) {
    int lx = std::countr_zero(x), ly = std::countr_zero(y);
    if (lx != ly) return lx < ly ? -1 : 1;
    x &= x - 1;
    y &= y - 1;
  }
  if (x) return 1;
  if (y) return -1;
  return 0;
}

constexpr bool lex_less(Subset a, Subset b) { return lex_compare(a, b) < 0; }

struct SubsetHash {
  std::size_t operator()(Subset s) const noexcept {
    std::uint64_t h = s.mask() * 0x9e3779b97f4a7c15ull;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Binomial coefficients and colex ranking of k-subsets.
std::uint64_t binomial(unsigned n, unsigned k);

class SubsetRanker {
public:
  SubsetRanker(unsigned n, unsigned k);

  unsigned n() const { return n_; }
  unsigned k() const { return k_; }
  std::uint64_t count() const { return binom_[n_][k_]; }

  std::uint64_t rank(Subset s) const {
    std::uint64_t r = 0;
    unsigned i = 1;
    s.for_each([&](Point x) { r += binom_[x][i++]; });
    return r;
  }

  Subset unrank(std::uint64_t r) const;

private:
  unsigned n_, k_;
  std::vector<std::vector<std::uint64_t>> binom_;
};

// Calls f(Subset) for every k-subset of {0..n-1} in colex order.
template <typename F>
void for_each_ksubset(unsigned n, unsigned k, F &&f) {
  if (k > n) return;
  if (k == 0) {
    f(Subset{});
    return;
  }
  // Gosper's hack walks masks with k bits in increasing numeric (= colex) order.
  std::uint64_t m = (k == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
  const std::uint64_t limit = (n == 64) ? 0 : (std::uint64_t{1} << n);
  while (true) {
    f(Subset(m));
    const std::uint64_t c = m & (~m + 1);
    const std::uint64_t r = m + c;
    if (r == 0) break;
    const std::uint64_t next = (((r ^ m) >> 2) / c) | r;
    if (limit && next >= limit) break;
    m = next;
  }
}

}  // namespace twbd
