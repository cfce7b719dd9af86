#include "twbd/orbits.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "twbd/error.hpp"

namespace twbd {

OrbitIndex::OrbitIndex(const PermGroup &group, unsigned k, std::uint64_t cap)
    : ranker_(group.degree(), k) {
  const Point v = group.degree();
  if (k < 1 || k > v) throw std::invalid_argument("orbits_on_ksubsets: need 1 <= k <= v");
  const std::uint64_t total = ranker_.count();
  if (total > cap)
    throw CapExceeded("C(" + std::to_string(v) + "," + std::to_string(k) + ") = " + std::to_string(total) +
                      " exceeds the subset enumeration cap " + std::to_string(cap));

  constexpr OrbitId kUnseen = std::numeric_limits<OrbitId>::max();
  orbit_of_rank_.assign(total, kUnseen);

  // Discovery pass: BFS from each unvisited subset, orbits numbered in
  // discovery order, renumbered below by representative.
  std::vector<std::vector<Subset>> found;
  std::vector<Subset> frontier;
  for_each_ksubset(v, k, [&](Subset s) {
    const auto r = ranker_.rank(s);
    if (orbit_of_rank_[r] != kUnseen) return;
    const auto id = static_cast<OrbitId>(found.size());
    std::vector<Subset> orbit{s};
    orbit_of_rank_[r] = id;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (const auto &g : group.generators()) {
        Subset t = g.apply(orbit[i]);
        auto &slot = orbit_of_rank_[ranker_.rank(t)];
        if (slot == kUnseen) {
          slot = id;
          orbit.push_back(t);
        }
      }
    std::sort(orbit.begin(), orbit.end(), lex_less);
    found.push_back(std::move(orbit));
  });

  std::vector<OrbitId> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](OrbitId a, OrbitId b) { return lex_less(found[a].front(), found[b].front()); });
  std::vector<OrbitId> renumber(found.size());
  for (OrbitId i = 0; i < order.size(); ++i) renumber[order[i]] = i;

  offsets_.reserve(found.size() + 1);
  offsets_.push_back(0);
  members_.reserve(total);
  reps_.reserve(found.size());
  for (OrbitId old : order) {
    reps_.push_back(found[old].front());
    members_.insert(members_.end(), found[old].begin(), found[old].end());
    offsets_.push_back(members_.size());
  }
  for (auto &id : orbit_of_rank_) id = renumber[id];
}

OrbitIndex orbits_on_ksubsets(const PermGroup &group, unsigned k, std::uint64_t cap) {
  return OrbitIndex(group, k, cap);
}

}  // namespace twbd
