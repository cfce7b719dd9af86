#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twbd/classify.hpp"
#include "twbd/design.hpp"
#include "twbd/exact_cover.hpp"
#include "twbd/orbits.hpp"
#include "twbd/perm.hpp"

namespace twbd {

// Orbits of the prescribed group on 3-, 4- and 6-subsets.
struct KmContext {
  PermGroup group;
  OrbitIndex triples, tetrads, hexads;

  // Throws CapExceeded if an orbit enumeration exceeds subset_cap.
  KmContext(PermGroup g, std::uint64_t subset_cap = kDefaultSubsetCap);
  Point v() const { return group.degree(); }
};

// Union of 6-subset orbits with total size v that covers no triple twice.
struct HexadCandidate {
  std::vector<OrbitId> orbit_ids;
  std::vector<Subset> blocks;
  // 3-subset orbit id -> number of covered triples in that orbit.
  std::map<OrbitId, std::uint32_t> triple_cover;
  // Covered triples by colex rank.
  std::vector<std::uint64_t> covered;

  bool covers(std::uint64_t triple_rank) const { return (covered[triple_rank >> 6] >> (triple_rank & 63)) & 1u; }
};

struct CandidateStats {
  std::uint64_t orbits_self_overlapping = 0;  // 6-orbits covering a triple twice on their own
  std::uint64_t double_cover_pruned = 0;      // unions rejected incrementally
  std::uint64_t tactical_pruned = 0;          // size-v unions that are not 1-(v,6,6)
  std::uint64_t emitted = 0;
};

// Streams candidates in lexicographic order of their orbit-id sets; the
// sink returns false to stop.
void enumerate_hexad_candidates(const OrbitIndex &hexads, const OrbitIndex &triples,
                                const std::function<bool(HexadCandidate &&)> &sink, CandidateStats *stats = nullptr);

std::vector<OrbitId> residual_triple_orbits(const HexadCandidate &h, const OrbitIndex &triples);

// 4-orbits usable as columns: every tetrad triple is residual and no
// residual representative lies in two tetrads of the orbit.
std::vector<OrbitId> admissible_tetrad_orbits(const std::vector<OrbitId> &residual, const OrbitIndex &triples,
                                              const OrbitIndex &tetrads);

// A[r][c] = number of tetrads of orbit cols[c] containing the
// representative of orbit rows[r]; entries are 0/1.
struct KMMatrix {
  std::vector<OrbitId> rows;
  std::vector<OrbitId> cols;
  std::vector<std::vector<std::uint8_t>> entries;

  bool has_empty_row() const;
  CoverMatrix to_cover() const;
};

// Throws std::logic_error on an entry >= 2 or an all-zero column.
KMMatrix build_km_matrix(const std::vector<OrbitId> &rows, const std::vector<OrbitId> &cols,
                         const OrbitIndex &triples, const OrbitIndex &tetrads);

struct SearchConfig {
  bool two_class_only = false;
  std::optional<TwoClassParams> hexad_params;  // keep only candidates with exactly these hexad parameters
  std::optional<std::uint64_t> solution_limit;
  std::optional<std::uint64_t> candidate_limit;
  std::uint64_t subset_cap = kDefaultSubsetCap;
  unsigned jobs = 1;  // 1 selects the serial reference path
  // Observes every Kramer-Mesner matrix before it is solved (serially, in
  // candidate order).
  std::function<void(std::size_t candidate_index, const HexadCandidate &, const KMMatrix &)> on_matrix;
};

struct FoundDesign {
  SetSystem design;
  std::size_t candidate_index = 0;
  std::vector<OrbitId> hexad_orbits;
  std::vector<OrbitId> tetrad_orbits;
};

struct SearchSummary {
  bool admissible = true;
  bool transitive = true;
  std::string diagnostic;
  std::uint64_t candidates = 0;        // hexad candidates enumerated
  std::uint64_t candidates_tried = 0;  // passed the hexad filter and were solved
  std::uint64_t filtered_out = 0;
  std::uint64_t infeasible = 0;  // matrix had a row with no 1
  std::uint64_t solutions = 0;
  // A candidate or solution limit was reached; output may be incomplete.
  bool capped = false;
  CandidateStats candidate_stats;
};

// Kramer-Mesner search for 3-(v,{4,6},1) designs with v hexads admitting
// the group. Designs go to the sink in candidate order, and within a
// candidate in solver order; the sink returns false to stop.
SearchSummary search_designs(const PermGroup &group, const SearchConfig &config,
                             const std::function<bool(FoundDesign &&)> &sink);

// Explicit entry points; search_designs picks one from config.jobs.
SearchSummary search_designs_serial(const KmContext &ctx, const SearchConfig &config,
                                    const std::function<bool(FoundDesign &&)> &sink);
SearchSummary search_designs_parallel(const KmContext &ctx, const SearchConfig &config,
                                      const std::function<bool(FoundDesign &&)> &sink);

}  // namespace twbd
