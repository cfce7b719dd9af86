#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "twbd/perm.hpp"
#include "twbd/subset.hpp"

namespace twbd {

using OrbitId = std::uint32_t;

inline constexpr std::uint64_t kDefaultSubsetCap = 5'000'000;

// The partition of all k-subsets of the point set into orbits of a group.
// Orbits are ordered by their representative, which is the
// lexicographically smallest member.
class OrbitIndex {
public:
  // Throws CapExceeded when C(v,k) > cap.
  OrbitIndex(const PermGroup &group, unsigned k, std::uint64_t cap = kDefaultSubsetCap);

  Point degree() const { return ranker_.n(); }
  unsigned subset_size() const { return ranker_.k(); }
  std::size_t size() const { return reps_.size(); }

  Subset representative(OrbitId id) const { return reps_[id]; }
  std::span<const Subset> orbit(OrbitId id) const {
    return {members_.data() + offsets_[id], offsets_[id + 1] - offsets_[id]};
  }
  std::size_t orbit_size(OrbitId id) const { return offsets_[id + 1] - offsets_[id]; }

  // Orbit containing s; s must have exactly subset_size() points.
  OrbitId lookup(Subset s) const { return orbit_of_rank_[ranker_.rank(s)]; }

  const SubsetRanker &ranker() const { return ranker_; }

private:
  SubsetRanker ranker_;
  std::vector<Subset> reps_;
  std::vector<Subset> members_;
  std::vector<std::size_t> offsets_;
  std::vector<OrbitId> orbit_of_rank_;
};

OrbitIndex orbits_on_ksubsets(const PermGroup &group, unsigned k, std::uint64_t cap = kDefaultSubsetCap);

}  // namespace twbd
