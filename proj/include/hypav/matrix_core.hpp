#pragma once

// 0-1 matrices and permutation-matrix pattern containment.
//
// Cells are addressed 0-based (row, col) in code; the text format is
//   rows cols
//   0110
//   ...
// with one line of contiguous 0/1 characters per row.

#include <cmath>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hypav/error.hpp"
#include "hypav/parallel.hpp"
#include "hypav/perm_core.hpp"
#include "hypav/random.hpp"
#include "hypav/rational.hpp"

namespace hypav {

class BinaryMatrix {
 public:
  BinaryMatrix() = default;

  BinaryMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64),
        bits_(static_cast<std::size_t>(rows) * static_cast<std::size_t>((cols + 63) / 64), 0) {
    require(rows >= 0 && cols >= 0, "matrix dimensions must be non-negative");
  }

  static BinaryMatrix all_ones(int rows, int cols) {
    BinaryMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) m.set(r, c, true);
    }
    return m;
  }

  // Square matrix whose cell (r, c) is bit r*n + c of `mask`; n*n <= 64.
  static BinaryMatrix from_mask(int n, std::uint64_t mask) {
    require(n * n <= 64, "from_mask needs n*n <= 64");
    BinaryMatrix m(n, n);
    for (int cell = 0; cell < n * n; ++cell) {
      if ((mask >> static_cast<unsigned>(cell)) & 1U) m.set(cell / n, cell % n, true);
    }
    return m;
  }

  static BinaryMatrix from_rows(const std::vector<std::string>& lines) {
    const int rows = static_cast<int>(lines.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(lines.front().size());
    BinaryMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      const auto& line = lines[static_cast<std::size_t>(r)];
      require(static_cast<int>(line.size()) == cols, "matrix row " + std::to_string(r + 1) + " has length " +
                                                         std::to_string(line.size()) + ", expected " +
                                                         std::to_string(cols));
      for (int c = 0; c < cols; ++c) {
        const char ch = line[static_cast<std::size_t>(c)];
        require(ch == '0' || ch == '1', "matrix entry at row " + std::to_string(r + 1) + ", column " +
                                            std::to_string(c + 1) + " is '" + std::string(1, ch) +
                                            "', expected 0 or 1");
        if (ch == '1') m.set(r, c, true);
      }
    }
    return m;
  }

  // Inline form used on the command line: rows separated by '/', e.g. "10/01".
  static BinaryMatrix parse_inline(std::string_view text) {
    std::vector<std::string> lines;
    if (!text.empty()) {
      std::size_t start = 0;
      while (true) {
        const auto slash = text.find('/', start);
        lines.emplace_back(text.substr(start, slash - start));
        if (slash == std::string_view::npos) break;
        start = slash + 1;
      }
    }
    return from_rows(lines);
  }

  // The documented text format: header "rows cols" then one 0/1 line per row.
  static BinaryMatrix parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    int rows = -1;
    int cols = -1;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
      throw ValidationError("malformed matrix: line 1 must be 'rows cols' with non-negative integers");
    }
    std::string rest;
    std::getline(in, rest);
    require(rest.find_first_not_of(" \t\r") == std::string::npos, "malformed matrix: trailing text on line 1");
    std::vector<std::string> lines;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() && static_cast<int>(lines.size()) == rows) continue;
      require(static_cast<int>(lines.size()) < rows, "malformed matrix: unexpected line " + std::to_string(line_no));
      require(static_cast<int>(line.size()) == cols, "malformed matrix: line " + std::to_string(line_no) +
                                                         " has " + std::to_string(line.size()) +
                                                         " characters, expected " + std::to_string(cols));
      lines.push_back(line);
    }
    require(static_cast<int>(lines.size()) == rows, "malformed matrix: expected " + std::to_string(rows) +
                                                        " rows, found " + std::to_string(lines.size()));
    BinaryMatrix m = rows == 0 ? BinaryMatrix(0, cols) : from_rows(lines);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  std::uint64_t ones() const { return ones_; }

  bool get(int r, int c) const {
    return (bits_[index(r, c)] >> static_cast<unsigned>(c % 64)) & 1U;
  }

  void set(int r, int c, bool value) {
    require(r >= 0 && r < rows_ && c >= 0 && c < cols_, "matrix cell out of range");
    auto& word = bits_[index(r, c)];
    const std::uint64_t bit = std::uint64_t{1} << static_cast<unsigned>(c % 64);
    const bool old = (word & bit) != 0;
    if (old == value) return;
    word ^= bit;
    if (value) {
      ++ones_;
    } else {
      --ones_;
    }
  }

  // Row r as a bitmask over columns; only valid when cols <= 64.
  std::uint64_t row_bits(int r) const { return cols_ == 0 ? 0 : bits_[static_cast<std::size_t>(r) * words_]; }

  std::vector<std::string> row_strings() const {
    std::vector<std::string> out(static_cast<std::size_t>(rows_), std::string(static_cast<std::size_t>(cols_), '0'));
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        if (get(r, c)) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = '1';
      }
    }
    return out;
  }

  std::string to_text() const {
    std::string out = std::to_string(rows_) + " " + std::to_string(cols_) + "\n";
    for (const auto& line : row_strings()) out += line + "\n";
    return out;
  }

  friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(words_) + static_cast<std::size_t>(c / 64);
  }

  int rows_ = 0;
  int cols_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::uint64_t ones_ = 0;
};

// Entry (i, sigma(i)) is 1 for each 1-based position i.
inline BinaryMatrix permutation_matrix(const Permutation& sigma) {
  const int n = sigma.size();
  BinaryMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, sigma[static_cast<std::size_t>(i)], true);
  return m;
}

// Recovers pi from a k x k permutation matrix; any other 0-1 matrix is
// rejected since only permutation patterns are supported.
inline Permutation pattern_of(const BinaryMatrix& p) {
  require(p.square(), "pattern matrix must be square");
  const int k = p.rows();
  std::vector<int> one_line;
  for (int r = 0; r < k; ++r) {
    int col = -1;
    for (int c = 0; c < k; ++c) {
      if (!p.get(r, c)) continue;
      require(col < 0, "pattern matrix row " + std::to_string(r + 1) + " has more than one 1: only permutation matrices are supported");
      col = c;
    }
    require(col >= 0, "pattern matrix row " + std::to_string(r + 1) + " has no 1: only permutation matrices are supported");
    one_line.push_back(col + 1);
  }
  return Permutation(one_line);
}

inline BinaryMatrix submatrix(const BinaryMatrix& a, std::span<const int> rows, std::span<const int> cols) {
  BinaryMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (a.get(rows[i], cols[j])) out.set(static_cast<int>(i), static_cast<int>(j), true);
    }
  }
  return out;
}

namespace detail {

// Walks row k-subsets x_1 < ... < x_k (rows without a 1 are skipped) and, for
// each, counts increasing column tuples y_1 < ... < y_k with
// A[x_i][y_{pi(i)}] = 1 by a DP over columns. Calls on_count(n) per row set;
// stops when it returns false.
class MatrixCopyCounter {
 public:
  MatrixCopyCounter(const BinaryMatrix& a, const Permutation& pi) : a_(a), k_(pi.size()) {
    row_for_slot_.resize(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) row_for_slot_[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])] = i;
    for (int r = 0; r < a.rows(); ++r) {
      bool any = false;
      for (int c = 0; c < a.cols() && !any; ++c) any = a.get(r, c);
      if (any) live_rows_.push_back(r);
    }
    chosen_.resize(static_cast<std::size_t>(k_));
    dp_.resize(static_cast<std::size_t>(k_) + 1);
  }

  template <class OnCount>
  void run(OnCount&& on_count) {
    if (k_ == 0) {
      on_count(std::uint64_t{1});
      return;
    }
    if (k_ > a_.cols()) return;
    choose(0, 0, on_count);
  }

 private:
  template <class OnCount>
  bool choose(int depth, std::size_t start, OnCount& on_count) {
    if (depth == k_) return on_count(columns_dp());
    for (std::size_t i = start; i + static_cast<std::size_t>(k_ - depth) <= live_rows_.size(); ++i) {
      chosen_[static_cast<std::size_t>(depth)] = live_rows_[i];
      if (!choose(depth + 1, i + 1, on_count)) return false;
    }
    return true;
  }

  std::uint64_t columns_dp() {
    std::fill(dp_.begin(), dp_.end(), 0);
    dp_[0] = 1;
    for (int c = 0; c < a_.cols(); ++c) {
      for (int j = k_; j >= 1; --j) {
        const int row = chosen_[static_cast<std::size_t>(row_for_slot_[static_cast<std::size_t>(j - 1)])];
        if (a_.get(row, c)) dp_[static_cast<std::size_t>(j)] += dp_[static_cast<std::size_t>(j - 1)];
      }
    }
    return dp_[static_cast<std::size_t>(k_)];
  }

  const BinaryMatrix& a_;
  int k_;
  std::vector<int> row_for_slot_;  // column slot j holds the 1 of pattern row row_for_slot_[j]
  std::vector<int> live_rows_;
  std::vector<int> chosen_;
  std::vector<std::uint64_t> dp_;
};

}  // namespace detail

// Number of (row k-set, column k-set) pairs whose induced k x k submatrix has
// a 1 at every 1 of A_pi.
inline std::uint64_t count_matrix_copies(const BinaryMatrix& a, const Permutation& pi) {
  std::uint64_t total = 0;
  detail::MatrixCopyCounter(a, pi).run([&](std::uint64_t n) {
    total = checked_add(total, n);
    return true;
  });
  return total;
}

inline bool contains_pattern(const BinaryMatrix& a, const Permutation& pi) {
  bool found = false;
  detail::MatrixCopyCounter(a, pi).run([&](std::uint64_t n) {
    found = n > 0;
    return !found;
  });
  return found;
}

// A contains P when P's 1s appear in some row/column-selected submatrix.
// P must be a permutation matrix.
inline bool matrix_contains(const BinaryMatrix& a, const BinaryMatrix& p) {
  return contains_pattern(a, pattern_of(p));
}

// ones / (rows*cols) and copies / (C(rows,k) * C(cols,k)); a zero
// denominator yields density 0.
struct DensityPair {
  Rational one_density;
  Rational pi_density;
};

inline DensityPair densities(const BinaryMatrix& a, const Permutation& pi) {
  DensityPair d;
  const auto cells = static_cast<std::uint64_t>(a.rows()) * static_cast<std::uint64_t>(a.cols());
  d.one_density = cells == 0 ? Rational(0) : Rational(BigInt(a.ones()), BigInt(cells));
  const BigInt placements = binomial(a.rows(), pi.size()) * binomial(a.cols(), pi.size());
  d.pi_density = placements == 0 ? Rational(0) : Rational(BigInt(count_matrix_copies(a, pi)), placements);
  return d;
}

// Uniform r-subset of rows and, independently, of columns.
inline BinaryMatrix random_submatrix(const BinaryMatrix& a, int r, Rng& rng) {
  require(r >= 0 && r <= a.rows() && r <= a.cols(),
          "submatrix side " + std::to_string(r) + " exceeds matrix dimensions " + std::to_string(a.rows()) + "x" +
              std::to_string(a.cols()));
  const auto rows = rng.subset(a.rows(), r);
  const auto cols = rng.subset(a.cols(), r);
  return submatrix(a, rows, cols);
}

// Sample means of 1(R) and pi(R) over random r x r submatrices. Means are
// exact rationals (trial sums are integers over a fixed denominator);
// standard errors are sample standard deviations over sqrt(trials), 0 when
// trials == 1. Trial t belongs to chunk t / 4096, which draws from RNG
// stream (seed, chunk), so results do not depend on the thread count.
struct SamplingEstimate {
  int r = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  Rational mean_one_density;
  Rational mean_pi_density;
  double se_one_density = 0.0;
  double se_pi_density = 0.0;
};

inline SamplingEstimate sampling_estimates(const BinaryMatrix& a, const Permutation& pi, int r, std::uint64_t trials,
                                           std::uint64_t seed, const Limits& limits = {}) {
  require(trials >= 1, "trials must be at least 1");
  require(r >= 0 && r <= a.rows() && r <= a.cols(),
          "submatrix side " + std::to_string(r) + " exceeds matrix dimensions");
  struct Sums {
    BigInt ones, ones_sq, copies, copies_sq;
  };
  const TrialChunks chunks{trials};
  std::vector<Sums> partial(chunks.count());
  parallel_for(chunks.count(), limits.threads, [&](std::size_t c) {
    Rng rng(seed, c);
    Sums s;
    for (std::uint64_t t = chunks.begin(c); t < chunks.end(c); ++t) {
      const BinaryMatrix sample = random_submatrix(a, r, rng);
      const BigInt ones(sample.ones());
      const BigInt copies(count_matrix_copies(sample, pi));
      s.ones += ones;
      s.ones_sq += ones * ones;
      s.copies += copies;
      s.copies_sq += copies * copies;
    }
    partial[c] = std::move(s);
  });
  Sums total;
  for (const auto& s : partial) {
    total.ones += s.ones;
    total.ones_sq += s.ones_sq;
    total.copies += s.copies;
    total.copies_sq += s.copies_sq;
  }
  const BigInt n(trials);
  const BigInt cells = BigInt(r) * r;
  const BigInt placements = binomial(r, pi.size()) * binomial(r, pi.size());
  auto standard_error = [&](const BigInt& sum, const BigInt& sum_sq, const BigInt& scale) {
    if (trials < 2 || scale == 0) return 0.0;
    const Rational variance = (Rational(sum_sq) - Rational(sum * sum, n)) / Rational(n - 1) / Rational(scale * scale);
    return std::sqrt(to_double(variance) / static_cast<double>(trials));
  };
  SamplingEstimate est;
  est.r = r;
  est.trials = trials;
  est.seed = seed;
  est.mean_one_density = cells == 0 ? Rational(0) : Rational(total.ones, n * cells);
  est.mean_pi_density = placements == 0 ? Rational(0) : Rational(total.copies, n * placements);
  est.se_one_density = standard_error(total.ones, total.ones_sq, cells);
  est.se_pi_density = standard_error(total.copies, total.copies_sq, placements);
  return est;
}

}  // namespace hypav
