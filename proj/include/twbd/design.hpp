#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "twbd/perm.hpp"
#include "twbd/subset.hpp"

namespace twbd {

// A collection of distinct blocks on the points {0..v-1}. Blocks are kept
// sorted lexicographically and deduplicated.
class SetSystem {
public:
  SetSystem() = default;
  // Throws std::invalid_argument if a block contains a point >= v.
  SetSystem(Point v, std::vector<Subset> blocks);

  Point v() const { return v_; }
  std::span<const Subset> blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool contains(Subset block) const;

  // Blocks of exactly the given size, as a system on the same points.
  SetSystem blocks_of_size(int k) const;
  SetSystem relabeled(const Permutation &g) const;

  friend bool operator==(const SetSystem &, const SetSystem &) = default;

private:
  Point v_ = 0;
  std::vector<Subset> blocks_;
};

// Union of the orbits of the base blocks under the group.
SetSystem develop(std::span<const Subset> baseblocks, const PermGroup &group);

struct BalanceReport {
  bool ok = true;
  // First offending t-subset (colex order) and its block count.
  std::optional<Subset> witness;
  std::uint64_t witness_count = 0;
  // First block whose size is not in K.
  std::optional<Subset> bad_block;

  std::string describe() const;
};

// Checks that all block sizes lie in K and every t-subset of points lies
// in exactly lambda blocks.
BalanceReport verify_twbd(const SetSystem &s, unsigned t, const std::set<int> &sizes, std::uint64_t lambda);

std::vector<std::uint64_t> replication_profile(const SetSystem &s);
bool is_tactical(const SetSystem &s);

// Necessary condition for a homogeneous 3-(v,{4,6},1) design.
bool admissible_v(unsigned v);
// (C(v,3) - 20v) / 4; throws std::domain_error if that is not a
// nonnegative integer.
std::uint64_t tetrad_count(unsigned v);

// Hughes-Dickey doubling: the system with incidence matrix [[A,I],[I,A^T]].
// Throws std::invalid_argument unless the input has as many blocks as points.
SetSystem double_design(const SetSystem &d);

// Symmetric 2-(11,5,2) design from the quadratic residues mod 11.
SetSystem paley_biplane();

}  // namespace twbd
