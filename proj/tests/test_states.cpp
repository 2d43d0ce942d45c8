#include <gtest/gtest.h>

#include "oracle_values.hpp"
#include "support.hpp"

using namespace qcopula;
using namespace testing_support;

namespace {

std::string invalid_state_message(const CMatrix& m, int n, int k) {
  try {
    DensityMatrix rho(m, n, k);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidState);
    return e.what();
  }
  ADD_FAILURE() << "state was accepted";
  return {};
}

}  // namespace

TEST(DensityMatrix, RejectionNamesTheInvariant) {
  EXPECT_NE(invalid_state_message(0.9 * identity(4) / 4.0, 2, 2).find("trace"), std::string::npos);
  EXPECT_NE(invalid_state_message(identity(4) / 4.0, 2, 3).find("dims"), std::string::npos);
  EXPECT_NE(invalid_state_message(diag({1.2, -0.2, 0.0, 0.0}), 2, 2).find("PSD"), std::string::npos);
  CMatrix h = identity(4) / 4.0;
  h(0, 1) = 0.1;
  EXPECT_NE(invalid_state_message(h, 2, 2).find("Hermitian"), std::string::npos);
}

TEST(PartialTrace, ProductStateMarginals) {
  Rng rng(1);
  const CMatrix r1 = random_state_matrix(2, rng);
  const CMatrix r2 = random_state_matrix(3, rng);
  const DensityMatrix rho = product_state(r1, r2);
  EXPECT_LT((partial_trace_first(rho) - r2).norm(), 1e-12);
  EXPECT_LT((partial_trace_second(rho) - r1).norm(), 1e-12);
}

TEST(PartialTrace, BellAndMaximallyMixed) {
  const DensityMatrix bell = bell_state();
  EXPECT_LT((partial_trace_first(bell) - identity(2) / 2.0).norm(), 1e-15);
  EXPECT_LT((partial_trace_second(bell) - identity(2) / 2.0).norm(), 1e-15);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2, 2);
  EXPECT_LT((partial_trace_first(mixed) - identity(2) / 2.0).norm(), 1e-15);
  EXPECT_LT((partial_trace_second(mixed) - identity(2) / 2.0).norm(), 1e-15);
}

TEST(PartialTrace, NonSquareDimsIndexing) {
  // rho = E_00 (x) E_21 on M_2 (x) M_3 plus its adjoint, trace-free but Hermitian.
  const CMatrix x = kron(matrix_unit(2, 1, 1), matrix_unit(3, 2, 1));
  EXPECT_EQ(partial_trace_first(x, 2, 3), matrix_unit(3, 2, 1));
  EXPECT_EQ(partial_trace_second(x, 2, 3), CMatrix::Zero(2, 2));
  const CMatrix y = kron(matrix_unit(2, 0, 1), matrix_unit(3, 2, 2));
  EXPECT_EQ(partial_trace_second(y, 2, 3), matrix_unit(2, 0, 1));
}

TEST(PartialTrace, TracePreservedOnRandomStates) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3), m = 1 + static_cast<int>((seed / 3) % 3);
    const DensityMatrix rho = random_full_rank_state(n, m, seed);
    ASSERT_NEAR(partial_trace_first(rho).trace().real(), 1.0, 1e-12);
    ASSERT_NEAR(partial_trace_second(rho).trace().real(), 1.0, 1e-12);
  }
}

TEST(PartialTranspose, IsAnInvolution) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DensityMatrix rho = random_full_rank_state(2, 3, seed);
    const CMatrix twice = partial_transpose_second(partial_transpose_second(rho.matrix(), 2, 3), 2, 3);
    ASSERT_EQ(twice, rho.matrix());
  }
}

TEST(IsPrecopula, Examples) {
  EXPECT_TRUE(is_precopula(DensityMatrix::maximally_mixed(2, 2), 1e-12));
  EXPECT_TRUE(is_precopula(DensityMatrix(diag({0.4, 0.1, 0.1, 0.4}), 2, 2), 1e-12));
  EXPECT_FALSE(is_precopula(product_state(diag({0.9, 0.1}), identity(2) / 2.0), 1e-6));
}

TEST(RandomFullRankState, PropertiesAndDeterminism) {
  const DensityMatrix a = random_full_rank_state(2, 2, 1);
  EXPECT_NEAR(a.matrix().trace().real(), 1.0, 1e-14);
  EXPECT_GT(eig_hermitian(a.matrix()).min(), 0.0);
  const DensityMatrix b = random_full_rank_state(2, 2, 1);
  EXPECT_EQ(a.matrix(), b.matrix());
  const DensityMatrix one = random_full_rank_state(1, 1, 77);
  EXPECT_EQ(one.matrix().rows(), 1);
  EXPECT_DOUBLE_EQ(one.matrix()(0, 0).real(), 1.0);
}

TEST(RandomSeparableState, PptAndProductCase) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DensityMatrix rho = random_separable_state(2, 2, 8, seed);
    ASSERT_GE(ppt_verdict(rho).min_pt_eigenvalue, -1e-12);
    ASSERT_EQ(ppt_verdict(rho).tag, Separability::Separable);
  }
  const DensityMatrix p = random_separable_state(2, 3, 1, 5);
  const CMatrix rebuilt = kron(partial_trace_second(p), partial_trace_first(p));
  EXPECT_LT((rebuilt - p.matrix()).norm(), 1e-12);
  EXPECT_EQ(random_separable_state(2, 2, 8, 9).matrix(), random_separable_state(2, 2, 8, 9).matrix());
  EXPECT_THROW(random_separable_state(2, 2, 0, 1), Error);
}

TEST(PptVerdict, BellIsEntangled) {
  const SeparabilityVerdict v = ppt_verdict(bell_state());
  EXPECT_EQ(v.tag, Separability::Entangled);
  EXPECT_NEAR(v.min_pt_eigenvalue, oracle::kBellPtMin, 1e-14);
  EXPECT_EQ(ppt_verdict(DensityMatrix::maximally_mixed(2, 2)).tag, Separability::Separable);
}

TEST(PptVerdict, LargerDimsArePptInconclusive) {
  EXPECT_EQ(ppt_verdict(DensityMatrix::maximally_mixed(3, 3)).tag, Separability::Inconclusive);
}

TEST(PptVerdict, InvariantUnderLocalUnitaries) {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    const DensityMatrix rho = random_full_rank_state(2, 2, rng);
    const DensityMatrix moved = local_conjugate(rho, haar_unitary(2, rng), haar_unitary(2, rng));
    const SeparabilityVerdict a = ppt_verdict(rho), b = ppt_verdict(moved);
    ASSERT_EQ(a.tag, b.tag) << "trial " << t;
    ASSERT_NEAR(a.min_pt_eigenvalue, b.min_pt_eigenvalue, 1e-12);
  }
}

TEST(HaarUnitary, IsUnitary) {
  Rng rng(2);
  for (int n = 1; n <= 6; ++n) {
    const CMatrix u = haar_unitary(n, rng);
    EXPECT_LT((u.adjoint() * u - identity(n)).norm(), 1e-13);
  }
}
