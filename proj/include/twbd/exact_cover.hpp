#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace twbd {

enum class BranchRule {
  min_size,   // fewest remaining choices, ties to the lowest row id
  first_row,  // lowest uncovered row id; only used for cross-checks
};

// Exact cover over a 0/1 matrix whose rows are constraints and whose
// columns are choices: find column sets that cover every row exactly once.
// A column with no 1 covers nothing and is never part of a solution.
// Stored as Algorithm X dancing links, one circular list per row and one
// per column. A matrix is mutated in place during search, so a single
// instance must not be searched from two threads.
class CoverMatrix {
public:
  using Index = std::uint32_t;

  // rows[r][c] in {0,1}; throws std::invalid_argument on ragged input or
  // other entries.
  static CoverMatrix from_dense(const std::vector<std::vector<int>> &rows);

  // column_rows[c] lists the rows with a 1 in column c (any order, no repeats).
  CoverMatrix(std::size_t n_rows, const std::vector<std::vector<Index>> &column_rows);

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return n_cols_; }
  std::size_t ones_in_row(Index r) const { return size_[r + 1]; }

  // Enumerates solutions in a deterministic order. on_solution receives the
  // sorted column ids and returns false to stop. Returns the number of
  // solutions delivered.
  std::uint64_t enumerate(const std::function<bool(std::span<const Index>)> &on_solution,
                          std::optional<std::uint64_t> limit = std::nullopt,
                          BranchRule rule = BranchRule::min_size);

  // Unlinks row r and every column meeting it; uncover_row undoes exactly
  // that and must be called in reverse order.
  void cover_row(Index r) { cover(r + 1); }
  void uncover_row(Index r) { uncover(r + 1); }
  bool row_active(Index r) const;

  // Hash of the complete link structure.
  std::uint64_t fingerprint() const;

  // The matrix as constructed, ignoring any covered rows.
  std::vector<std::vector<int>> to_dense() const;

private:
  void cover(Index item);
  void uncover(Index item);
  Index choose(BranchRule rule) const;
  bool search(std::vector<Index> &partial, const std::function<bool(std::span<const Index>)> &emit,
              std::uint64_t &count, std::optional<std::uint64_t> limit, BranchRule rule);

  std::size_t n_rows_ = 0, n_cols_ = 0;
  // Node 0 is the root, nodes 1..n_rows are row headers, the rest are 1-entries.
  std::vector<Index> left_, right_, up_, down_, item_, column_;
  std::vector<Index> size_;
  std::vector<std::vector<Index>> column_rows_;
};

std::vector<std::vector<CoverMatrix::Index>> enumerate_solutions(CoverMatrix &m,
                                                                  std::optional<std::uint64_t> limit = std::nullopt);

// Text exchange format for differential runs: a header line
// "r <rows> <cols>" followed by one "e <row> <col>" line per 1-entry.
void write_libexact(std::ostream &out, const CoverMatrix &m);
CoverMatrix read_libexact(std::istream &in);

}  // namespace twbd
