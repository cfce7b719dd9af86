#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "twbd/exact_cover.hpp"

using namespace twbd;
using namespace twbd::testing;

namespace {

Dense random_dense(std::size_t rows, std::size_t cols, double density, std::mt19937_64 &rng) {
  std::bernoulli_distribution one(density);
  Dense m(rows, std::vector<int>(cols, 0));
  for (auto &row : m)
    for (auto &x : row) x = one(rng);
  return m;
}

Solutions solve(CoverMatrix &m, BranchRule rule) {
  Solutions out;
  m.enumerate(
      [&](std::span<const CoverMatrix::Index> s) {
        CHECK(std::is_sorted(s.begin(), s.end()));
        CHECK(out.emplace(s.begin(), s.end()).second);
        return true;
      },
      std::nullopt, rule);
  return out;
}

}  // namespace

TEST_SUITE("exact_cover") {

TEST_CASE("small fixed matrices") {
  // Knuth's example, transposed so rows are constraints.
  Dense knuth_rows = {{0, 0, 1, 0, 1, 1, 0}, {1, 0, 0, 1, 0, 0, 1}, {0, 1, 1, 0, 0, 1, 0},
                      {1, 0, 0, 1, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 1}, {0, 0, 0, 1, 1, 0, 1}};
  Dense m(7, std::vector<int>(6));
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 7; ++c) m[c][r] = knuth_rows[r][c];
  auto cm = CoverMatrix::from_dense(m);
  auto sols = enumerate_solutions(cm);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0] == std::vector<CoverMatrix::Index>{0, 3, 4});

  auto empty = CoverMatrix::from_dense({});
  CHECK(enumerate_solutions(empty).size() == 1);
  auto zero_row = CoverMatrix::from_dense({{0, 0}, {1, 1}});
  CHECK(enumerate_solutions(zero_row).empty());
  CHECK_THROWS_AS(CoverMatrix::from_dense({{0, 1}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(CoverMatrix::from_dense({{0, 2}}), std::invalid_argument);
}

TEST_CASE("solution sets equal exhaustive enumeration") {
  std::mt19937_64 rng(kSeed + 20);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 12;
    double density = 0.15 + 0.5 * (rng() % 100) / 100.0;
    auto dense = random_dense(rows, cols, density, rng);
    auto expect = brute_force_cover(dense, cols);
    auto m = CoverMatrix::from_dense(dense);
    CHECK(solve(m, BranchRule::min_size) == expect);
    CHECK(solve(m, BranchRule::first_row) == expect);
    CHECK(m.to_dense() == dense);
  }
}

TEST_CASE("enumeration limit and early stop") {
  Dense all_ones_cols(2, std::vector<int>(5, 0));
  for (int c = 0; c < 5; ++c) all_ones_cols[0][c] = all_ones_cols[1][c] = 1;  // 5 solutions of one column
  auto m = CoverMatrix::from_dense(all_ones_cols);
  CHECK(m.enumerate([](auto) { return true; }) == 5);
  CHECK(m.enumerate([](auto) { return true; }, 3) == 3);
  int seen = 0;
  CHECK(m.enumerate([&](auto) { return ++seen < 2; }) == 2);
}

TEST_CASE("cover and uncover restore the link structure") {
  std::mt19937_64 rng(kSeed + 21);
  auto m = CoverMatrix::from_dense(random_dense(12, 20, 0.3, rng));
  const auto original = m.fingerprint();
  std::vector<std::pair<CoverMatrix::Index, std::uint64_t>> stack;
  for (int op = 0; op < 10000; ++op) {
    std::vector<CoverMatrix::Index> active;
    for (CoverMatrix::Index r = 0; r < m.n_rows(); ++r)
      if (m.row_active(r)) active.push_back(r);
    bool push = !active.empty() && (stack.empty() || rng() % 2 == 0);
    if (push) {
      auto r = active[rng() % active.size()];
      stack.emplace_back(r, m.fingerprint());
      m.cover_row(r);
      CHECK_FALSE(m.row_active(r));
    } else {
      auto [r, before] = stack.back();
      stack.pop_back();
      m.uncover_row(r);
      CHECK(m.fingerprint() == before);
    }
  }
  while (!stack.empty()) {
    m.uncover_row(stack.back().first);
    stack.pop_back();
  }
  CHECK(m.fingerprint() == original);
}

TEST_CASE("libexact text format round-trips") {
  std::mt19937_64 rng(kSeed + 22);
  for (int trial = 0; trial < 50; ++trial) {
    auto dense = random_dense(1 + rng() % 8, 1 + rng() % 15, 0.3, rng);
    auto m = CoverMatrix::from_dense(dense);
    std::stringstream ss;
    write_libexact(ss, m);
    auto back = read_libexact(ss);
    CHECK(back.to_dense() == dense);
    CHECK(solve(back, BranchRule::min_size) == solve(m, BranchRule::min_size));
  }
  std::stringstream bad("r 2 2\ne 5 0\n");
  CHECK_THROWS(read_libexact(bad));
}

}  // TEST_SUITE
