#include <catch_amalgamated.hpp>

#include <random>

#include "hypav/contraction.hpp"
#include "oracles.hpp"

using namespace hypav;

namespace {
Permutation P(const char* s) { return Permutation::parse(s); }

oracle::Grid grid(const BinaryMatrix& m) {
  oracle::Grid g(static_cast<std::size_t>(m.rows()), std::vector<int>(static_cast<std::size_t>(m.cols()), 0));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) g[r][c] = m.get(r, c);
  return g;
}

BinaryMatrix random_matrix(int n, std::mt19937_64& gen) {
  BinaryMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.set(r, c, gen() & 1U);
  return m;
}
}  // namespace

TEST_CASE("contract2 examples") {
  CHECK(contract2(BinaryMatrix::all_ones(2, 2)) == BinaryMatrix::parse_inline("1"));
  CHECK(contract2(BinaryMatrix(2, 2)) == BinaryMatrix::parse_inline("0"));
  CHECK(contract2(permutation_matrix(Permutation::identity(4))) == permutation_matrix(Permutation::identity(2)));
  CHECK_THROWS_AS(contract2(BinaryMatrix(3, 3)), ValidationError);
  CHECK_THROWS_AS(contract2(BinaryMatrix(2, 4)), ValidationError);
}

TEST_CASE("factor arithmetic") {
  const auto b = ContractionFactor::from(Rational(3, 2));
  CHECK(b.contracted_size(3) == 2);
  CHECK(b.group_of(0) == 0);
  CHECK(b.group_of(1) == 1);
  CHECK(b.group_of(2) == 1);
  CHECK_THROWS_AS(ContractionFactor::from(Rational(1, 2)), ValidationError);
}

TEST_CASE("contract_b examples") {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = random_matrix(6, gen);
    CHECK(contract_b(m, ContractionFactor::from(1)) == m);
    CHECK(contract_b(m, ContractionFactor::from(2)) == contract2(m));
  }
  BinaryMatrix m(3, 3);
  m.set(2, 0, true);
  const auto c = contract_b(m, ContractionFactor::from(Rational(3, 2)));
  CHECK(c.rows() == 2);
  CHECK(c.get(1, 0));
  CHECK(c.ones() == 1);
}

TEST_CASE("contract_b matches the oracle") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 9);
    const int q = 1 + static_cast<int>(gen() % 4);
    const int p = q + static_cast<int>(gen() % 5);
    const auto m = random_matrix(n, gen);
    const auto got = contract_b(m, ContractionFactor::from(Rational(p, q)));
    CHECK(grid(got) == oracle::contract(grid(m), p, q));
  }
}

TEST_CASE("contraction never adds copies") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 * (1 + static_cast<int>(gen() % 4));
    const auto m = random_matrix(n, gen);
    for (const char* pat : {"1,2", "2,1", "1,3,2"}) {
      const auto copies = count_matrix_copies(m, P(pat));
      CHECK(count_matrix_copies(contract2(m), P(pat)) <= copies);
      CHECK(count_matrix_copies(contract_b(m, ContractionFactor::from(Rational(3, 2))), P(pat)) <= copies);
    }
  }
}

TEST_CASE("preimage counts") {
  CHECK(preimage_count_contract2(BinaryMatrix::parse_inline("1")) == 15);
  CHECK(preimage_count_contract2(BinaryMatrix(3, 3)) == 1);
  CHECK(preimage_count_contract2(BinaryMatrix::parse_inline("11/10")) == 3375);
  std::map<std::uint64_t, std::uint64_t> tally;
  for (std::uint64_t mask = 0; mask < (1U << 16); ++mask) {
    const auto c = contract2(BinaryMatrix::from_mask(4, mask));
    std::uint64_t key = 0;
    for (int cell = 0; cell < 4; ++cell) key |= static_cast<std::uint64_t>(c.get(cell / 2, cell % 2)) << cell;
    ++tally[key];
  }
  REQUIRE(tally.size() == 16);
  for (const auto& [key, count] : tally) CHECK(BigInt(count) == preimage_count_contract2(BinaryMatrix::from_mask(2, key)));
}
