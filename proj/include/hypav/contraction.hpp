#pragma once

// Block contractions of 0-1 matrices. Both maps OR the entries of each block,
// so a copy of A_pi in the contraction lifts to at least one copy in the
// original matrix.

#include <cstdint>
#include <string>

#include "hypav/error.hpp"
#include "hypav/matrix_core.hpp"
#include "hypav/rational.hpp"

namespace hypav {

// Exact contraction factor b = p/q >= 1, kept in lowest terms.
struct ContractionFactor {
  std::uint64_t p = 1;
  std::uint64_t q = 1;

  static ContractionFactor from(const Rational& b) {
    require(b >= 1, "contraction factor " + to_string(b) + " must be at least 1");
    const BigInt num = numerator_of(b);
    const BigInt den = denominator_of(b);
    require(num < (BigInt(1) << 31), "contraction factor " + to_string(b) + " has a numerator that is too large");
    return {num.convert_to<std::uint64_t>(), den.convert_to<std::uint64_t>()};
  }

  Rational value() const { return Rational(BigInt(p), BigInt(q)); }

  // ceil(count / b) = ceil(count * q / p).
  int contracted_size(int count) const {
    return static_cast<int>((static_cast<std::uint64_t>(count) * q + p - 1) / p);
  }

  // 0-based group of 0-based index i: ceil((i+1) / b) - 1.
  int group_of(int i) const { return contracted_size(i + 1) - 1; }
};

// (n/2) x (n/2) matrix whose entry is 1 iff the matching 2x2 block has a 1.
inline BinaryMatrix contract2(const BinaryMatrix& m) {
  require(m.square(), "2-contraction needs a square matrix");
  require(m.rows() % 2 == 0, "2-contraction needs an even dimension, got " + std::to_string(m.rows()));
  const int half = m.rows() / 2;
  BinaryMatrix out(half, half);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (m.get(r, c)) out.set(r / 2, c / 2, true);
    }
  }
  return out;
}

// ceil(rows/b) x ceil(cols/b) matrix; source row i' (1-based) lands in group
// ceil(i'/b), computed in integer arithmetic.
inline BinaryMatrix contract_b(const BinaryMatrix& m, const ContractionFactor& b) {
  require(b.p >= b.q && b.q >= 1, "contraction factor must satisfy p >= q >= 1");
  BinaryMatrix out(b.contracted_size(m.rows()), b.contracted_size(m.cols()));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (m.get(r, c)) out.set(b.group_of(r), b.group_of(c), true);
    }
  }
  return out;
}

// Each 1 of M' has 15 non-zero 2x2 preimage blocks and each 0 exactly one.
inline BigInt preimage_count_contract2(const BinaryMatrix& m_prime) {
  BigInt count = 1;
  for (std::uint64_t i = 0; i < m_prime.ones(); ++i) count *= 15;
  return count;
}

}  // namespace hypav
