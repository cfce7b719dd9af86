#include "twbd/km_search.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

namespace twbd {

KmContext::KmContext(PermGroup g, std::uint64_t subset_cap)
    : group(std::move(g)),
      triples(group, 3, subset_cap),
      tetrads(group, 4, subset_cap),
      hexads(group, 6, subset_cap) {}

namespace {

using Bits = std::vector<std::uint64_t>;

inline bool test_bit(const Bits &b, std::uint64_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
inline void set_bit(Bits &b, std::uint64_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

bool intersects(const Bits &a, const Bits &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

template <typename F>
void for_each_triple(Subset block, F &&f) {
  const auto pts = block.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) f(Subset{pts[i], pts[j], pts[k]});
}

// Triples covered by one 6-orbit, or nullopt if the orbit covers some
// triple twice by itself.
std::optional<Bits> orbit_coverage(std::span<const Subset> orbit, const SubsetRanker &ranker) {
  Bits bits((ranker.count() + 63) / 64, 0);
  bool ok = true;
  for (Subset h : orbit) {
    for_each_triple(h, [&](Subset t) {
      const auto r = ranker.rank(t);
      if (test_bit(bits, r)) ok = false;
      set_bit(bits, r);
    });
    if (!ok) return std::nullopt;
  }
  return bits;
}

}  // namespace

void enumerate_hexad_candidates(const OrbitIndex &hexads, const OrbitIndex &triples,
                                const std::function<bool(HexadCandidate &&)> &sink, CandidateStats *stats) {
  CandidateStats local;
  CandidateStats &st = stats ? *stats : local;
  const Point v = hexads.degree();
  const auto &ranker = triples.ranker();

  // Orbits that can take part in a candidate, in id order.
  std::vector<OrbitId> usable;
  std::vector<Bits> cover;
  std::vector<std::size_t> usable_index(hexads.size(), SIZE_MAX);
  for (OrbitId o = 0; o < hexads.size(); ++o) {
    if (hexads.orbit_size(o) > v) continue;
    auto bits = orbit_coverage(hexads.orbit(o), ranker);
    if (!bits) {
      ++st.orbits_self_overlapping;
      continue;
    }
    usable_index[o] = usable.size();
    usable.push_back(o);
    cover.push_back(std::move(*bits));
  }
  // Orbits shorter than v: the only ones that can follow another orbit.
  std::vector<std::size_t> small;
  for (std::size_t i = 0; i < usable.size(); ++i)
    if (hexads.orbit_size(usable[i]) < v) small.push_back(i);

  std::vector<std::size_t> chosen;
  bool stop = false;

  auto emit = [&](const Bits &bits) {
    HexadCandidate c;
    std::vector<std::uint32_t> rep(v, 0);
    for (auto i : chosen) {
      c.orbit_ids.push_back(usable[i]);
      for (Subset h : hexads.orbit(usable[i])) {
        c.blocks.push_back(h);
        h.for_each([&](Point x) { ++rep[x]; });
      }
    }
    if (!std::all_of(rep.begin(), rep.end(), [](auto r) { return r == 6; })) {
      ++st.tactical_pruned;
      return;
    }
    std::sort(c.blocks.begin(), c.blocks.end(), lex_less);
    for (Subset h : c.blocks) for_each_triple(h, [&](Subset t) { ++c.triple_cover[triples.lookup(t)]; });
    c.covered = bits;
    ++st.emitted;
    if (!sink(std::move(c))) stop = true;
  };

  // Depth-first over increasing orbit ids; sizes are checked before the
  // overlap test.
  auto extend = [&](auto &&self, std::size_t small_pos, std::size_t remaining, const Bits &bits) -> void {
    if (stop) return;
    if (remaining == 0) {
      emit(bits);
      return;
    }
    for (std::size_t p = small_pos; p < small.size() && !stop; ++p) {
      const std::size_t i = small[p];
      const std::size_t sz = hexads.orbit_size(usable[i]);
      if (sz > remaining) continue;
      if (intersects(bits, cover[i])) {
        ++st.double_cover_pruned;
        continue;
      }
      Bits next(bits);
      for (std::size_t w = 0; w < next.size(); ++w) next[w] |= cover[i][w];
      chosen.push_back(i);
      self(self, p + 1, remaining - sz, next);
      chosen.pop_back();
    }
  };

  std::size_t small_pos = 0;
  for (std::size_t i = 0; i < usable.size() && !stop; ++i) {
    while (small_pos < small.size() && small[small_pos] <= i) ++small_pos;
    chosen.assign(1, i);
    extend(extend, small_pos, v - hexads.orbit_size(usable[i]), cover[i]);
  }
}

std::vector<OrbitId> residual_triple_orbits(const HexadCandidate &h, const OrbitIndex &triples) {
  std::vector<OrbitId> out;
  const auto &ranker = triples.ranker();
  for (OrbitId d = 0; d < triples.size(); ++d)
    if (!h.covers(ranker.rank(triples.representative(d)))) out.push_back(d);
  return out;
}

std::vector<OrbitId> admissible_tetrad_orbits(const std::vector<OrbitId> &residual, const OrbitIndex &triples,
                                              const OrbitIndex &tetrads) {
  const Point v = triples.degree();
  std::vector<bool> is_residual(triples.size(), false);
  for (OrbitId d : residual) is_residual[d] = true;

  // Tetrads through each residual representative, counted per 4-orbit.
  std::vector<std::uint32_t> hits(tetrads.size(), 0);
  std::vector<bool> overfull(tetrads.size(), false);
  std::vector<OrbitId> touched;
  for (OrbitId d : residual) {
    const Subset t = triples.representative(d);
    touched.clear();
    for (Point x = 0; x < v; ++x) {
      if (t.contains(x)) continue;
      const OrbitId g = tetrads.lookup(t.with(x));
      if (hits[g]++ == 0) touched.push_back(g);
    }
    for (OrbitId g : touched) {
      if (hits[g] > 1) overfull[g] = true;
      hits[g] = 0;
    }
  }

  std::vector<OrbitId> out;
  for (OrbitId g = 0; g < tetrads.size(); ++g) {
    if (overfull[g]) continue;
    bool all_residual = true;
    for_each_triple(tetrads.representative(g), [&](Subset t) {
      if (!is_residual[triples.lookup(t)]) all_residual = false;
    });
    if (all_residual) out.push_back(g);
  }
  return out;
}

bool KMMatrix::has_empty_row() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const auto &row) { return std::none_of(row.begin(), row.end(), [](auto e) { return e != 0; }); });
}

CoverMatrix KMMatrix::to_cover() const {
  std::vector<std::vector<CoverMatrix::Index>> col_rows(cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (entries[r][c]) col_rows[c].push_back(static_cast<CoverMatrix::Index>(r));
  return CoverMatrix(rows.size(), col_rows);
}

KMMatrix build_km_matrix(const std::vector<OrbitId> &rows, const std::vector<OrbitId> &cols,
                         const OrbitIndex &triples, const OrbitIndex &tetrads) {
  KMMatrix a;
  a.rows = rows;
  a.cols = cols;
  a.entries.assign(rows.size(), std::vector<std::uint8_t>(cols.size(), 0));
  std::vector<std::int64_t> col_of(tetrads.size(), -1);
  for (std::size_t c = 0; c < cols.size(); ++c) col_of[cols[c]] = static_cast<std::int64_t>(c);

  const Point v = triples.degree();
  std::vector<std::uint32_t> col_ones(cols.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Subset t = triples.representative(rows[r]);
    for (Point x = 0; x < v; ++x) {
      if (t.contains(x)) continue;
      const auto c = col_of[tetrads.lookup(t.with(x))];
      if (c < 0) continue;
      if (++a.entries[r][c] > 1)
        throw std::logic_error("Kramer-Mesner entry exceeds 1 at row orbit " + std::to_string(rows[r]));
      ++col_ones[c];
    }
  }
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (col_ones[c] == 0) throw std::logic_error("Kramer-Mesner column " + std::to_string(cols[c]) + " is empty");
  return a;
}

namespace {

bool passes_filter(const HexadCandidate &cand, Point v, const SearchConfig &config) {
  if (!config.two_class_only && !config.hexad_params) return true;
  const auto cls = classify(SetSystem(v, cand.blocks));
  if (!cls.two_class) return false;
  if (config.hexad_params && *cls.two_class != *config.hexad_params) return false;
  return true;
}

struct CandidateResult {
  bool filtered = false;
  bool infeasible = false;
  std::optional<KMMatrix> matrix;
  std::vector<FoundDesign> designs;
};

CandidateResult solve_candidate(const KmContext &ctx, const HexadCandidate &cand, std::size_t index,
                                const SearchConfig &config, std::optional<std::uint64_t> limit) {
  CandidateResult res;
  if (!passes_filter(cand, ctx.v(), config)) {
    res.filtered = true;
    return res;
  }
  const auto rows = residual_triple_orbits(cand, ctx.triples);
  const auto cols = admissible_tetrad_orbits(rows, ctx.triples, ctx.tetrads);
  KMMatrix a = build_km_matrix(rows, cols, ctx.triples, ctx.tetrads);
  res.infeasible = a.has_empty_row();
  if (!res.infeasible) {
    CoverMatrix m = a.to_cover();
    m.enumerate(
        [&](std::span<const CoverMatrix::Index> sol) {
          FoundDesign fd;
          fd.candidate_index = index;
          fd.hexad_orbits = cand.orbit_ids;
          std::vector<Subset> blocks(cand.blocks);
          for (auto c : sol) {
            fd.tetrad_orbits.push_back(a.cols[c]);
            const auto orbit = ctx.tetrads.orbit(a.cols[c]);
            blocks.insert(blocks.end(), orbit.begin(), orbit.end());
          }
          fd.design = SetSystem(ctx.v(), std::move(blocks));
          const auto check = verify_twbd(fd.design, 3, {4, 6}, 1);
          if (!check.ok) throw std::logic_error("search produced an unbalanced design: " + check.describe());
          res.designs.push_back(std::move(fd));
          return true;
        },
        limit);
  }
  if (config.on_matrix) res.matrix = std::move(a);
  return res;
}

// Shared preamble: admissibility and transitivity gates.
bool precheck(const KmContext &ctx, SearchSummary &summary) {
  if (!admissible_v(ctx.v())) {
    summary.admissible = false;
    summary.diagnostic = "v = " + std::to_string(ctx.v()) +
                         " is inadmissible: homogeneous 3-(v,{4,6},1) designs need v = 2 or 4 (mod 6) and v >= 16";
    return false;
  }
  if (!is_transitive(ctx.group)) {
    summary.transitive = false;
    summary.diagnostic = "the prescribed group is not transitive";
    return false;
  }
  return true;
}

// Gathers candidates up to the candidate limit; flags the summary when the
// limit cut the stream short.
std::vector<HexadCandidate> gather_candidates(const KmContext &ctx, const SearchConfig &config,
                                              SearchSummary &summary) {
  std::vector<HexadCandidate> out;
  enumerate_hexad_candidates(
      ctx.hexads, ctx.triples,
      [&](HexadCandidate &&c) {
        if (config.candidate_limit && out.size() >= *config.candidate_limit) {
          summary.capped = true;
          return false;
        }
        out.push_back(std::move(c));
        return true;
      },
      &summary.candidate_stats);
  summary.candidates = out.size();
  return out;
}

// Folds one candidate's results into the summary and the sink, honoring
// the global solution limit. Returns false when the run must stop.
bool deliver(std::size_t index, const HexadCandidate &cand, CandidateResult &res, const SearchConfig &config,
             SearchSummary &summary, const std::function<bool(FoundDesign &&)> &sink) {
  if (res.filtered) {
    ++summary.filtered_out;
    return true;
  }
  ++summary.candidates_tried;
  if (res.infeasible) ++summary.infeasible;
  if (config.on_matrix && res.matrix) config.on_matrix(index, cand, *res.matrix);
  for (auto &fd : res.designs) {
    if (config.solution_limit && summary.solutions >= *config.solution_limit) {
      summary.capped = true;
      return false;
    }
    ++summary.solutions;
    if (!sink(std::move(fd))) return false;
  }
  if (config.solution_limit && summary.solutions >= *config.solution_limit) {
    summary.capped = true;
    return false;
  }
  return true;
}

std::optional<std::uint64_t> remaining(const SearchConfig &config, const SearchSummary &summary) {
  if (!config.solution_limit) return std::nullopt;
  return *config.solution_limit - summary.solutions;
}

}  // namespace

SearchSummary search_designs_serial(const KmContext &ctx, const SearchConfig &config,
                                    const std::function<bool(FoundDesign &&)> &sink) {
  SearchSummary summary;
  if (!precheck(ctx, summary)) return summary;
  const auto candidates = gather_candidates(ctx, config, summary);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto res = solve_candidate(ctx, candidates[i], i, config, remaining(config, summary));
    if (!deliver(i, candidates[i], res, config, summary, sink)) break;
  }
  return summary;
}

SearchSummary search_designs_parallel(const KmContext &ctx, const SearchConfig &config,
                                      const std::function<bool(FoundDesign &&)> &sink) {
  SearchSummary summary;
  if (!precheck(ctx, summary)) return summary;
  const auto candidates = gather_candidates(ctx, config, summary);
  const int jobs = static_cast<int>(std::max(1u, config.jobs));
  const std::size_t chunk = static_cast<std::size_t>(jobs) * 16;

  for (std::size_t begin = 0; begin < candidates.size(); begin += chunk) {
    const std::size_t end = std::min(candidates.size(), begin + chunk);
    std::vector<CandidateResult> results(end - begin);
    const auto limit = remaining(config, summary);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (std::size_t i = begin; i < end; ++i) {
      try {
        results[i - begin] = solve_candidate(ctx, candidates[i], i, config, limit);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    for (std::size_t i = begin; i < end; ++i)
      if (!deliver(i, candidates[i], results[i - begin], config, summary, sink)) return summary;
  }
  return summary;
}

SearchSummary search_designs(const PermGroup &group, const SearchConfig &config,
                             const std::function<bool(FoundDesign &&)> &sink) {
  if (!admissible_v(group.degree())) {
    SearchSummary summary;
    summary.admissible = false;
    summary.diagnostic = "v = " + std::to_string(group.degree()) +
                         " is inadmissible: homogeneous 3-(v,{4,6},1) designs need v = 2 or 4 (mod 6) and v >= 16";
    return summary;
  }
  const KmContext ctx(group, config.subset_cap);
  return config.jobs <= 1 ? search_designs_serial(ctx, config, sink) : search_designs_parallel(ctx, config, sink);
}

}  // namespace twbd
