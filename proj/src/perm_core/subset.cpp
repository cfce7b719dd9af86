#include "twbd/subset.hpp"

#include <stdexcept>

namespace twbd {

Subset::Subset(std::initializer_list<Point> points) {
  for (Point x : points) {
    if (x >= kMaxPoints) throw std::invalid_argument("point out of range: " + std::to_string(x));
    mask_ |= std::uint64_t{1} << x;
  }
}

Subset::Subset(std::span<const Point> points) {
  for (Point x : points) {
    if (x >= kMaxPoints) throw std::invalid_argument("point out of range: " + std::to_string(x));
    mask_ |= std::uint64_t{1} << x;
  }
}

std::vector<Point> Subset::points() const {
  std::vector<Point> out;
  out.reserve(size());
  for_each([&](Point x) { out.push_back(x); });
  return out;
}

std::string Subset::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each([&](Point x) {
    if (!first) out += ',';
    out += std::to_string(x);
    first = false;
  });
  out += '}';
  return out;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

SubsetRanker::SubsetRanker(unsigned n, unsigned k) : n_(n), k_(k) {
  if (n > kMaxPoints) throw std::invalid_argument("SubsetRanker: n exceeds 64");
  binom_.assign(n + 1, std::vector<std::uint64_t>(k + 2, 0));
  for (unsigned a = 0; a <= n; ++a)
    for (unsigned b = 0; b <= k + 1; ++b) binom_[a][b] = binomial(a, b);
}

Subset SubsetRanker::unrank(std::uint64_t r) const {
  std::uint64_t mask = 0;
  unsigned x = n_;
  for (unsigned i = k_; i >= 1; --i) {
    do {
      --x;
    } while (binom_[x][i] > r);
    mask |= std::uint64_t{1} << x;
    r -= binom_[x][i];
  }
  return Subset(mask);
}

}  // namespace twbd
