#include <gtest/gtest.h>

#include "gentile/eigensolve.hpp"
#include "gentile/operators.hpp"
#include "oracle.hpp"

using namespace gentile;

TEST(Tau, FullSpaceMatchesOracle) {
  for (int n = 1; n <= 2; ++n) {
    const GentileOrder o(n);
    const FockBasis full(2, 2, o, std::nullopt);
    const oracle::Space sp{n, 2, 2};
    EXPECT_LT(oracle::max_abs(to_dense(build_tau(1, 2, full)) - oracle::tau(sp, 1, 2)), 1e-12) << n;
    EXPECT_LT(oracle::max_abs(to_dense(build_tau(2, 1, full)) - oracle::tau(sp, 2, 1)), 1e-12) << n;
  }
}

TEST(Tau, SectorBuildEqualsRestrictedOracle) {
  for (int n = 1; n <= 3; ++n) {
    const GentileOrder o(n);
    const oracle::Space sp{n, 2, 2};
    const FockBasis sector(2, 2, o, 1);
    const auto ref = oracle::submatrix(oracle::tau(sp, 1, 2), oracle::sector_indices(sp, 1));
    EXPECT_LT(oracle::max_abs(to_dense(build_tau(1, 2, sector)) - ref), 1e-12) << n;
  }
}

// On the one-particle-per-position sector the exchange operator is twice the swap.
TEST(Tau, IsTwiceTheSwapOnTheSector) {
  for (int n = 1; n <= 4; ++n) {
    const GentileOrder o(n);
    const FockBasis b(3, 2, o, 1);
    const auto t = build_tau(1, 3, b);
    for (std::size_t s = 0; s < b.dimension(); ++s) {
      auto occ = index_to_state(b, s).occupations;
      std::swap_ranges(occ.begin(), occ.begin() + 2, occ.begin() + 4);
      const auto target = *b.find(occ);
      for (std::size_t r = 0; r < b.dimension(); ++r) {
        const cplx expect = r == target ? cplx(2.0, 0.0) : cplx{};
        EXPECT_LT(std::abs(t.at(r, s) - expect), 1e-12) << n << " " << r << " " << s;
      }
    }
    const auto sq = t * t;
    EXPECT_LT((sq - 4.0 * ComplexOperator::identity(b.dimension())).max_abs(), 1e-12);
  }
}

TEST(Tau, RejectsEqualOrOutOfRangePositions) {
  const FockBasis b(2, 2, GentileOrder(1), 1);
  EXPECT_THROW(build_tau(1, 1, b), DomainError);
  EXPECT_THROW(build_tau(0, 2, b), DomainError);
  EXPECT_THROW(build_tau(1, 3, b), DomainError);
}

TEST(ClassSum, SectorSpectra) {
  for (int n = 1; n <= 3; ++n) {
    const GentileOrder o(n);
    const auto s2 = eigensolve_hermitian(build_class_sum(FockBasis(2, 2, o, 1)));
    ASSERT_EQ(s2.size(), 2u);
    EXPECT_NEAR(s2[0].value, -2.0, 1e-10);
    EXPECT_EQ(s2[0].multiplicity, 1u);
    EXPECT_NEAR(s2[1].value, 2.0, 1e-10);
    EXPECT_EQ(s2[1].multiplicity, 3u);
    const auto s3 = eigensolve_hermitian(build_class_sum(FockBasis(3, 2, o, 1)));
    ASSERT_EQ(s3.size(), 2u);
    EXPECT_NEAR(s3[0].value, 0.0, 1e-10);
    EXPECT_EQ(s3[0].multiplicity, 4u);
    EXPECT_NEAR(s3[1].value, 6.0, 1e-10);
    EXPECT_EQ(s3[1].multiplicity, 4u);
  }
  EXPECT_THROW(build_class_sum(FockBasis(1, 2, GentileOrder(1), 1)), DomainError);
}

TEST(E, FullSpaceMatchesOracle) {
  for (int n = 1; n <= 2; ++n) {
    const GentileOrder o(n);
    const FockBasis full(2, 2, o, std::nullopt);
    const oracle::Space sp{n, 2, 2};
    for (int k = 1; k <= 2; ++k)
      for (int l = 1; l <= 2; ++l)
        EXPECT_LT(oracle::max_abs(to_dense(build_E(k, l, full)) - oracle::E(sp, k, l)), 1e-12);
  }
}

TEST(E, HandAmplitude) {
  // nu=1, m=2, n=1: |0,1> (index 1) -> |1,0> (index 2) with both words contributing 1
  const FockBasis b(1, 2, GentileOrder(1), std::nullopt);
  const auto e = build_E(1, 2, b);
  EXPECT_NEAR(std::abs(e.at(2, 1) - cplx(2.0, 0.0)), 0.0, 1e-14);
  EXPECT_EQ(e.nonzeros(), 1u);
  EXPECT_THROW(build_E(0, 1, b), DomainError);
  EXPECT_THROW(build_E(1, 3, b), DomainError);
}

TEST(Casimirs, HermitianAndSectorValues) {
  for (int n = 1; n <= 3; ++n) {
    const GentileOrder o(n);
    for (auto sector : {std::optional<int>{}, std::optional<int>{1}}) {
      if (!sector && n == 3) continue;
      const FockBasis b(2, 2, o, sector);
      EXPECT_LT(hermiticity_defect(build_C1(b)), 1e-10);
      EXPECT_LT(hermiticity_defect(build_C2(b)), 1e-10);
    }
    // frozen sector values: C1 = 2 nu, C2 in {8, 24} for nu = 2
    const FockBasis s(2, 2, o, 1);
    const auto c1 = eigensolve_hermitian(build_C1(s));
    ASSERT_EQ(c1.size(), 1u);
    EXPECT_NEAR(c1[0].value, 4.0, 1e-10);
    const auto c2 = eigensolve_hermitian(build_C2(s));
    ASSERT_EQ(c2.size(), 2u);
    EXPECT_NEAR(c2[0].value, 8.0, 1e-10);
    EXPECT_EQ(c2[0].multiplicity, 1u);
    EXPECT_NEAR(c2[1].value, 24.0, 1e-10);
    EXPECT_EQ(c2[1].multiplicity, 3u);
  }
}

TEST(Casimirs, C2EqualsSumOfOracleProducts) {
  const int n = 2;
  const GentileOrder o(n);
  const FockBasis full(2, 2, o, std::nullopt);
  const oracle::Space sp{n, 2, 2};
  oracle::Mat ref = oracle::Mat::Zero(sp.dim(), sp.dim());
  for (int k = 1; k <= 2; ++k)
    for (int l = 1; l <= 2; ++l) ref += oracle::E(sp, k, l) * oracle::E(sp, l, k);
  EXPECT_LT(oracle::max_abs(to_dense(build_C2(full)) - ref), 1e-11);
}

TEST(Conservation, BuiltOperatorsCommuteWithPositionNumbers) {
  for (int n = 1; n <= 3; ++n) {
    const GentileOrder o(n);
    const FockBasis b(2, 2, o, n == 3 ? std::optional<int>{1} : std::nullopt);
    std::vector<ComplexOperator> ops{build_tau(1, 2, b), build_C1(b), build_C2(b), build_class_sum(b)};
    for (int k = 1; k <= 2; ++k)
      for (int l = 1; l <= 2; ++l) ops.push_back(build_E(k, l, b));
    for (const auto& op : ops)
      for (int i = 1; i <= 2; ++i) EXPECT_LT(commutator(op, build_position_number(i, b)).max_abs(), 1e-12);
  }
}

TEST(Diagonals, TotalNumberAndJSum) {
  const GentileOrder o(2);
  const FockBasis b(1, 2, o, std::nullopt);
  const auto N = build_total_number(b);
  const auto J = build_J_sum(b);
  for (std::size_t s = 0; s < b.dimension(); ++s) {
    const auto occ = b.occupations(s);
    EXPECT_EQ(N.at(s, s).real(), occ[0] + occ[1]);
    EXPECT_NEAR(J.at(s, s).real(), coupling_J(occ[0], o) + coupling_J(occ[1], o), 1e-14);
  }
  EXPECT_THROW(build_position_number(2, b), DomainError);
}
