#include <set>

#include "doctest.h"
#include "support.hpp"
#include "twbd/error.hpp"
#include "twbd/orbits.hpp"
#include "twbd/perm.hpp"
#include "twbd/subset.hpp"

using namespace twbd;
using namespace twbd::testing;

TEST_SUITE("perm_core") {

TEST_CASE("subset ranking round-trips and counts") {
  for (unsigned n : {1u, 5u, 9u, 16u}) {
    for (unsigned k = 0; k <= std::min(n, 4u); ++k) {
      SubsetRanker r(n, k);
      std::uint64_t seen = 0;
      std::uint64_t prev = 0;
      for_each_ksubset(n, k, [&](Subset s) {
        CHECK(s.size() == static_cast<int>(k));
        CHECK(r.rank(s) == seen);
        CHECK(r.unrank(seen) == s);
        if (seen) CHECK(s.mask() > prev);
        prev = s.mask();
        ++seen;
      });
      CHECK(seen == binomial(n, k));
      CHECK(r.count() == seen);
    }
  }
  CHECK(binomial(28, 6) == 376740);
}

TEST_CASE("lex order compares smallest differing point") {
  CHECK(lex_less(Subset{0, 5}, Subset{1, 2}));
  CHECK(lex_less(Subset{0, 1, 9}, Subset{0, 2, 3}));
  CHECK_FALSE(lex_less(Subset{1, 2}, Subset{1, 2}));
}

TEST_CASE("cycle notation parses and prints") {
  auto g = parse_cycle_notation("(0,1,2)(3,4)", 6);
  CHECK(g(0) == 1);
  CHECK(g(2) == 0);
  CHECK(g(3) == 4);
  CHECK(g(5) == 5);
  CHECK(g.to_cycle_string() == "(0,1,2)(3,4)");
  CHECK(parse_cycle_notation("()", 4).is_identity());
  CHECK(parse_cycle_notation("(6)(7)", 8).is_identity());
  CHECK(Permutation::identity(3).to_cycle_string() == "()");
  CHECK(parse_cycle_notation("(0, 2) (1 ,3)", 4) == parse_cycle_notation("(0,2)(1,3)", 4));
}

TEST_CASE("cycle notation rejects bad input") {
  CHECK_THROWS_AS(parse_cycle_notation("(0,1,0)", 3), ParseError);
  CHECK_THROWS_AS(parse_cycle_notation("(0,5)", 5), ParseError);
  CHECK_THROWS_AS(parse_cycle_notation("(0,1", 3), ParseError);
  CHECK_THROWS_AS(parse_cycle_notation("0,1)", 3), ParseError);
  CHECK_THROWS_AS(parse_cycle_notation("(0,(1))", 3), ParseError);
  CHECK_THROWS_AS(parse_cycle_notation("(0,x)", 3), ParseError);
}

TEST_CASE("composition, inverse and printing are consistent on random permutations") {
  std::mt19937_64 rng(kSeed);
  for (int trial = 0; trial < 200; ++trial) {
    Point n = 1 + rng() % 20;
    auto g = random_permutation(n, rng), h = random_permutation(n, rng);
    auto gh = compose(g, h);
    for (Point x = 0; x < n; ++x) CHECK(gh(x) == h(g(x)));
    CHECK(compose(g, inverse(g)).is_identity());
    CHECK(parse_cycle_notation(g.to_cycle_string(), n) == g);
    auto s = random_subset(n, 1 + rng() % n, rng);
    CHECK(apply_to_subset(h, apply_to_subset(g, s)) == apply_to_subset(gh, s));
  }
}

TEST_CASE("closure orders of small groups") {
  PermGroup s4(4, {parse_cycle_notation("(0,1)", 4), parse_cycle_notation("(0,1,2,3)", 4)});
  CHECK(closure_order(s4) == 24);
  PermGroup c26(26, {parse_cycle_notation("(0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25)", 26)});
  CHECK(closure_order(c26) == 26);
  CHECK(is_transitive(c26));
  PermGroup split(4, {parse_cycle_notation("(0,1)(2,3)", 4)});
  CHECK_FALSE(is_transitive(split));
  CHECK(point_orbit(split, 2) == std::vector<Point>{2, 3});
  PermGroup s8(8, {parse_cycle_notation("(0,1)", 8), parse_cycle_notation("(0,1,2,3,4,5,6,7)", 8)});
  CHECK_THROWS_AS(closure_order(s8, 1000), CapExceeded);
}

TEST_CASE("closure order matches element enumeration on random groups") {
  std::mt19937_64 rng(kSeed + 1);
  for (int trial = 0; trial < 30; ++trial) {
    Point n = 2 + rng() % 5;
    std::vector<Permutation> gens;
    for (int i = 0, m = 1 + rng() % 2; i < m; ++i) gens.push_back(random_permutation(n, rng));
    PermGroup g(n, gens);
    CHECK(closure_order(g) == all_elements(g).size());
  }
}

TEST_CASE("group files") {
  auto g = parse_group_text("# cyclic\ndegree 5\n(0,1,2,3,4)\n\n");
  CHECK(g.degree() == 5);
  CHECK(closure_order(g) == 5);
  CHECK(parse_group_text(format_group_text(g)).generators() == g.generators());
  CHECK(closure_order(parse_group_text("degree 3\n")) == 1);
  CHECK_THROWS_AS(parse_group_text("(0,1)\n"), ParseError);
  CHECK_THROWS_AS(parse_group_text("degree 3\n(0,3)\n"), ParseError);
  CHECK_THROWS_AS(read_group_file("/nonexistent/group.txt"), ParseError);
}

// Burnside: number of orbits = average number of fixed k-subsets. A
// permutation fixes a k-set iff the set is a union of its cycles.
std::uint64_t burnside_orbits(const PermGroup &g, unsigned k) {
  const auto elems = all_elements(g);
  std::uint64_t total = 0;
  for (const auto &p : elems) {
    std::vector<unsigned> cycles;
    std::vector<bool> seen(g.degree(), false);
    for (Point x = 0; x < g.degree(); ++x) {
      if (seen[x]) continue;
      unsigned len = 0;
      for (Point y = x; !seen[y]; y = p(y)) seen[y] = true, ++len;
      cycles.push_back(len);
    }
    std::vector<std::uint64_t> ways(k + 1, 0);
    ways[0] = 1;
    for (unsigned c : cycles)
      for (int s = static_cast<int>(k); s >= static_cast<int>(c); --s) ways[s] += ways[s - c];
    total += ways[k];
  }
  return total / elems.size();
}

TEST_CASE("orbits on k-subsets") {
  PermGroup c26(26, {parse_cycle_notation("(0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25)", 26)});
  OrbitIndex triples(c26, 3);
  CHECK(triples.size() == 100);
  CHECK(burnside_orbits(c26, 3) == 100);

  std::mt19937_64 rng(kSeed + 2);
  for (int trial = 0; trial < 25; ++trial) {
    Point n = 4 + rng() % 4;
    unsigned k = 1 + rng() % (n - 1);
    PermGroup g(n, {random_permutation(n, rng), random_permutation(n, rng)});
    OrbitIndex idx(g, k);
    CHECK(idx.size() == burnside_orbits(g, k));
    std::uint64_t total = 0;
    for (OrbitId id = 0; id < idx.size(); ++id) {
      total += idx.orbit_size(id);
      for (Subset s : idx.orbit(id)) {
        CHECK(idx.lookup(s) == id);
        CHECK_FALSE(lex_less(s, idx.representative(id)));
        for (const auto &gen : g.generators()) CHECK(idx.lookup(gen.apply(s)) == id);
      }
      if (id > 0) CHECK(lex_less(idx.representative(id - 1), idx.representative(id)));
    }
    CHECK(total == binomial(n, k));
  }
  CHECK_THROWS_AS(OrbitIndex(c26, 6, 1000), CapExceeded);
}

}  // TEST_SUITE
