#include "twbd/exact_cover.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "twbd/error.hpp"

namespace twbd {

CoverMatrix CoverMatrix::from_dense(const std::vector<std::vector<int>> &rows) {
  const std::size_t n_cols = rows.empty() ? 0 : rows.front().size();
  std::vector<std::vector<Index>> cols(n_cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n_cols) throw std::invalid_argument("from_dense: ragged input");
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (rows[r][c] != 0 && rows[r][c] != 1) throw std::invalid_argument("from_dense: entries must be 0 or 1");
      if (rows[r][c]) cols[c].push_back(static_cast<Index>(r));
    }
  }
  return CoverMatrix(rows.size(), cols);
}

CoverMatrix::CoverMatrix(std::size_t n_rows, const std::vector<std::vector<Index>> &column_rows)
    : n_rows_(n_rows), n_cols_(column_rows.size()), column_rows_(column_rows) {
  std::size_t ones = 0;
  for (auto &col : column_rows_) {
    std::sort(col.begin(), col.end());
    if (std::adjacent_find(col.begin(), col.end()) != col.end())
      throw std::invalid_argument("CoverMatrix: repeated row in a column");
    if (!col.empty() && col.back() >= n_rows) throw std::invalid_argument("CoverMatrix: row index out of range");
    ones += col.size();
  }
  const std::size_t n_nodes = 1 + n_rows + ones;
  left_.resize(n_nodes);
  right_.resize(n_nodes);
  up_.resize(n_nodes);
  down_.resize(n_nodes);
  item_.assign(n_nodes, 0);
  column_.assign(n_nodes, 0);
  size_.assign(n_rows + 1, 0);

  for (Index i = 0; i <= n_rows; ++i) {
    left_[i] = i == 0 ? static_cast<Index>(n_rows) : i - 1;
    right_[i] = i == n_rows ? 0 : i + 1;
    up_[i] = down_[i] = i;
    item_[i] = i;
  }
  Index node = static_cast<Index>(n_rows + 1);
  for (Index c = 0; c < n_cols_; ++c) {
    const auto &col = column_rows_[c];
    const Index first = node;
    for (std::size_t j = 0; j < col.size(); ++j, ++node) {
      const Index item = col[j] + 1;
      item_[node] = item;
      column_[node] = c;
      up_[node] = up_[item];
      down_[node] = item;
      down_[up_[item]] = node;
      up_[item] = node;
      ++size_[item];
      left_[node] = j == 0 ? static_cast<Index>(first + col.size() - 1) : node - 1;
      right_[node] = j + 1 == col.size() ? first : node + 1;
    }
  }
}

void CoverMatrix::cover(Index item) {
  right_[left_[item]] = right_[item];
  left_[right_[item]] = left_[item];
  for (Index i = down_[item]; i != item; i = down_[i])
    for (Index j = right_[i]; j != i; j = right_[j]) {
      down_[up_[j]] = down_[j];
      up_[down_[j]] = up_[j];
      --size_[item_[j]];
    }
}

void CoverMatrix::uncover(Index item) {
  for (Index i = up_[item]; i != item; i = up_[i])
    for (Index j = left_[i]; j != i; j = left_[j]) {
      ++size_[item_[j]];
      down_[up_[j]] = j;
      up_[down_[j]] = j;
    }
  right_[left_[item]] = item;
  left_[right_[item]] = item;
}

bool CoverMatrix::row_active(Index r) const {
  for (Index i = right_[0]; i != 0; i = right_[i])
    if (i == r + 1) return true;
  return false;
}

CoverMatrix::Index CoverMatrix::choose(BranchRule rule) const {
  Index best = right_[0];
  if (rule == BranchRule::first_row) return best;
  for (Index i = right_[best]; i != 0; i = right_[i])
    if (size_[i] < size_[best]) best = i;
  return best;
}

bool CoverMatrix::search(std::vector<Index> &partial, const std::function<bool(std::span<const Index>)> &emit,
                         std::uint64_t &count, std::optional<std::uint64_t> limit, BranchRule rule) {
  if (right_[0] == 0) {
    std::vector<Index> sol(partial);
    std::sort(sol.begin(), sol.end());
    ++count;
    if (!emit(sol)) return false;
    return !(limit && count >= *limit);
  }
  const Index item = choose(rule);
  if (size_[item] == 0) return true;
  cover(item);
  bool keep_going = true;
  for (Index r = down_[item]; r != item && keep_going; r = down_[r]) {
    partial.push_back(column_[r]);
    for (Index j = right_[r]; j != r; j = right_[j]) cover(item_[j]);
    keep_going = search(partial, emit, count, limit, rule);
    for (Index j = left_[r]; j != r; j = left_[j]) uncover(item_[j]);
    partial.pop_back();
  }
  uncover(item);
  return keep_going;
}

std::uint64_t CoverMatrix::enumerate(const std::function<bool(std::span<const Index>)> &on_solution,
                                     std::optional<std::uint64_t> limit, BranchRule rule) {
  if (limit && *limit == 0) return 0;
  for (Index i = right_[0]; i != 0; i = right_[i])
    if (size_[i] == 0) return 0;
  std::uint64_t count = 0;
  std::vector<Index> partial;
  search(partial, on_solution, count, limit, rule);
  return count;
}

std::uint64_t CoverMatrix::fingerprint() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::vector<Index> &v) {
    for (Index x : v) h = (h ^ x) * 1099511628211ull;
    h = (h ^ 0xff) * 1099511628211ull;
  };
  mix(left_);
  mix(right_);
  mix(up_);
  mix(down_);
  mix(size_);
  return h;
}

std::vector<std::vector<int>> CoverMatrix::to_dense() const {
  std::vector<std::vector<int>> dense(n_rows_, std::vector<int>(n_cols_, 0));
  for (Index c = 0; c < n_cols_; ++c)
    for (Index r : column_rows_[c]) dense[r][c] = 1;
  return dense;
}

std::vector<std::vector<CoverMatrix::Index>> enumerate_solutions(CoverMatrix &m, std::optional<std::uint64_t> limit) {
  std::vector<std::vector<CoverMatrix::Index>> out;
  m.enumerate(
      [&](std::span<const CoverMatrix::Index> s) {
        out.emplace_back(s.begin(), s.end());
        return true;
      },
      limit);
  return out;
}

void write_libexact(std::ostream &out, const CoverMatrix &m) {
  out << "r " << m.n_rows() << ' ' << m.n_cols() << '\n';
  const auto dense = m.to_dense();
  for (std::size_t r = 0; r < dense.size(); ++r)
    for (std::size_t c = 0; c < dense[r].size(); ++c)
      if (dense[r][c]) out << "e " << r << ' ' << c << '\n';
}

CoverMatrix read_libexact(std::istream &in) {
  std::string line;
  std::optional<std::pair<std::size_t, std::size_t>> shape;
  std::vector<std::vector<CoverMatrix::Index>> cols;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    long long a = -1, b = -1;
    if (!(ls >> a >> b) || a < 0 || b < 0)
      throw ParseError("libexact line " + std::to_string(lineno) + ": expected two nonnegative integers");
    if (tag == "r") {
      if (shape) throw ParseError("libexact: repeated header");
      shape = {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
      cols.assign(shape->second, {});
    } else if (tag == "e") {
      if (!shape) throw ParseError("libexact: entry before header");
      if (static_cast<std::size_t>(a) >= shape->first || static_cast<std::size_t>(b) >= shape->second)
        throw ParseError("libexact line " + std::to_string(lineno) + ": entry out of range");
      cols[b].push_back(static_cast<CoverMatrix::Index>(a));
    } else {
      throw ParseError("libexact line " + std::to_string(lineno) + ": unknown tag '" + tag + "'");
    }
  }
  if (!shape) throw ParseError("libexact: missing header");
  return CoverMatrix(shape->first, cols);
}

}  // namespace twbd
