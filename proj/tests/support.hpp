#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <unordered_set>
#include <vector>

#include "twbd/design.hpp"
#include "twbd/perm.hpp"

namespace twbd::testing {

inline constexpr std::uint64_t kSeed = 20240611;

inline Permutation random_permutation(Point n, std::mt19937_64 &rng) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

inline Subset random_subset(Point n, int k, std::mt19937_64 &rng) {
  std::vector<Point> pts(n);
  std::iota(pts.begin(), pts.end(), Point{0});
  std::shuffle(pts.begin(), pts.end(), rng);
  pts.resize(k);
  return Subset(pts);
}

// Random blocks of mixed sizes on n points.
inline SetSystem random_system(Point n, std::size_t blocks, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> size(1, static_cast<int>(n));
  std::vector<Subset> out;
  for (std::size_t i = 0; i < blocks; ++i) out.push_back(random_subset(n, size(rng), rng));
  return SetSystem(n, std::move(out));
}

// Every element of the group, by plain BFS on words.
inline std::vector<Permutation> all_elements(const PermGroup &g) {
  std::vector<Permutation> elems{Permutation::identity(g.degree())};
  std::unordered_set<Permutation, PermutationHash> seen(elems.begin(), elems.end());
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto &s : g.generators()) {
      auto h = compose(elems[i], s);
      if (seen.insert(h).second) elems.push_back(std::move(h));
    }
  return elems;
}

}  // namespace twbd::testing
