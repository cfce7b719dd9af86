#include "twbd/design.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace twbd {

SetSystem::SetSystem(Point v, std::vector<Subset> blocks) : v_(v), blocks_(std::move(blocks)) {
  if (v > kMaxPoints) throw std::invalid_argument("SetSystem: more than 64 points");
  for (Subset b : blocks_)
    if (b.span_end() > v) throw std::invalid_argument("block " + b.to_string() + " has a point >= v");
  std::sort(blocks_.begin(), blocks_.end(), lex_less);
  blocks_.erase(std::unique(blocks_.begin(), blocks_.end()), blocks_.end());
}

bool SetSystem::contains(Subset block) const {
  return std::binary_search(blocks_.begin(), blocks_.end(), block, lex_less);
}

SetSystem SetSystem::blocks_of_size(int k) const {
  std::vector<Subset> out;
  for (Subset b : blocks_)
    if (b.size() == k) out.push_back(b);
  return SetSystem(v_, std::move(out));
}

SetSystem SetSystem::relabeled(const Permutation &g) const {
  if (g.degree() != v_) throw std::invalid_argument("relabel: degree mismatch");
  std::vector<Subset> out;
  out.reserve(blocks_.size());
  for (Subset b : blocks_) out.push_back(g.apply(b));
  return SetSystem(v_, std::move(out));
}

SetSystem develop(std::span<const Subset> baseblocks, const PermGroup &group) {
  std::unordered_set<Subset, SubsetHash> seen;
  std::vector<Subset> blocks;
  for (Subset base : baseblocks) {
    if (!seen.insert(base).second) continue;
    std::size_t start = blocks.size();
    blocks.push_back(base);
    for (std::size_t i = start; i < blocks.size(); ++i)
      for (const auto &g : group.generators()) {
        Subset img = g.apply(blocks[i]);
        if (seen.insert(img).second) blocks.push_back(img);
      }
  }
  return SetSystem(group.degree(), std::move(blocks));
}

std::string BalanceReport::describe() const {
  if (ok) return "ok";
  if (bad_block) return "block " + bad_block->to_string() + " has a size outside K";
  return "subset " + witness->to_string() + " lies in " + std::to_string(witness_count) + " blocks";
}

BalanceReport verify_twbd(const SetSystem &s, unsigned t, const std::set<int> &sizes, std::uint64_t lambda) {
  BalanceReport report;
  for (Subset b : s.blocks())
    if (!sizes.contains(b.size())) {
      report.ok = false;
      report.bad_block = b;
      return report;
    }
  if (t > s.v()) return report;
  SubsetRanker ranker(s.v(), t);
  std::vector<std::uint64_t> count(ranker.count(), 0);
  for (Subset b : s.blocks()) {
    if (static_cast<unsigned>(b.size()) < t) continue;
    const auto pts = b.points();
    // Enumerate t-subsets of the block through local index masks.
    for_each_ksubset(static_cast<unsigned>(pts.size()), t, [&](Subset local) {
      std::uint64_t m = 0;
      local.for_each([&](Point i) { m |= std::uint64_t{1} << pts[i]; });
      ++count[ranker.rank(Subset(m))];
    });
  }
  for (std::uint64_t r = 0; r < count.size(); ++r)
    if (count[r] != lambda) {
      report.ok = false;
      report.witness = ranker.unrank(r);
      report.witness_count = count[r];
      return report;
    }
  return report;
}

std::vector<std::uint64_t> replication_profile(const SetSystem &s) {
  std::vector<std::uint64_t> r(s.v(), 0);
  for (Subset b : s.blocks()) b.for_each([&](Point x) { ++r[x]; });
  return r;
}

bool is_tactical(const SetSystem &s) {
  auto r = replication_profile(s);
  return std::adjacent_find(r.begin(), r.end(), std::not_equal_to<>{}) == r.end();
}

bool admissible_v(unsigned v) { return v >= 16 && (v % 6 == 2 || v % 6 == 4); }

std::uint64_t tetrad_count(unsigned v) {
  const std::uint64_t triples = binomial(v, 3);
  const std::uint64_t hexad_triples = 20ull * v;
  if (triples < hexad_triples || (triples - hexad_triples) % 4 != 0)
    throw std::domain_error("no integral tetrad count for v = " + std::to_string(v));
  return (triples - hexad_triples) / 4;
}

SetSystem double_design(const SetSystem &d) {
  const Point v = d.v();
  if (d.size() != v) throw std::invalid_argument("doubling needs a symmetric system (b = v)");
  if (2 * v > kMaxPoints) throw std::invalid_argument("doubled system exceeds 64 points");
  std::vector<Subset> blocks;
  blocks.reserve(2 * v);
  const auto base = d.blocks();
  for (Point j = 0; j < v; ++j) blocks.push_back(base[j].with(v + j));
  for (Point i = 0; i < v; ++i) {
    Subset b{i};
    for (Point j = 0; j < v; ++j)
      if (base[j].contains(i)) b = b.with(v + j);
    blocks.push_back(b);
  }
  return SetSystem(2 * v, std::move(blocks));
}

SetSystem paley_biplane() {
  std::vector<Point> shift(11);
  for (Point x = 0; x < 11; ++x) shift[x] = (x + 1) % 11;
  PermGroup z11(11, {Permutation(shift)});
  const Subset residues{1, 3, 4, 5, 9};
  return develop(std::span<const Subset>(&residues, 1), z11);
}

}  // namespace twbd
