#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qcorr/correlations.hpp"
#include "qcorr/states.hpp"
#include "support/random.hpp"

namespace qcorr {
namespace {

using testing::Rng;

Eigen::Matrix3d diag3(double x, double y, double z) {
  return Eigen::Vector3d(x, y, z).asDiagonal();
}

TEST(DensityMatrix, ValidatesInvariants) {
  EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(2)), DimensionError);
  EXPECT_THROW(DensityMatrix(ComplexMatrix::identity(4)), NotAStateError);  // trace 4
  ComplexMatrix non_herm = ComplexMatrix::identity(4) * Complex(0.25);
  non_herm(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{non_herm}, NotAStateError);
  ComplexMatrix negative(4, 4);
  negative(0, 0) = 1.2;
  negative(1, 1) = -0.2;
  EXPECT_THROW(DensityMatrix{negative}, NotAStateError);
}

TEST(FromFano, MaximallyMixedAndBellState) {
  const auto mixed = from_fano({});
  EXPECT_LT(mixed.matrix().max_abs_diff(ComplexMatrix::identity(4) * Complex(0.25)), 1e-15);

  FanoForm f;
  f.T = diag3(1, -1, 1);
  EXPECT_LT(from_fano(f).matrix().max_abs_diff(bell_projector(BellState::PhiPlus).matrix()), 1e-15);
}

TEST(FromFano, RejectsNonPositiveTensor) {
  FanoForm f;
  f.T = diag3(1, 1, 1);
  EXPECT_THROW(from_fano(f), NotAStateError);
}

TEST(ExtractFano, Examples) {
  const auto mixed = extract_fano(from_fano({}));
  EXPECT_LT(mixed.a.norm() + mixed.b.norm() + mixed.T.norm(), 1e-15);

  const auto phi = extract_fano(bell_projector(BellState::PhiPlus));
  EXPECT_LT((phi.T - diag3(1, -1, 1)).norm(), 1e-14);
  EXPECT_LT(phi.a.norm() + phi.b.norm(), 1e-14);

  for (double beta : {-1.0 / 3.0, 0.0, 0.4, 0.8, 1.0}) {
    const auto w = extract_fano(werner(beta));
    EXPECT_LT((w.T - diag3(-beta, -beta, -beta)).norm(), 1e-14) << beta;
  }
}

TEST(ExtractFano, RoundTripsRandomStates) {
  Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = testing::random_state(rng, 1 + trial % 4);
    EXPECT_LT(from_fano(extract_fano(rho)).matrix().max_abs_diff(rho.matrix()), 1e-10);
  }
}

TEST(BellDiagonal, Examples) {
  EXPECT_LT(bell_diagonal({1, -1, 1}).matrix().max_abs_diff(bell_projector(BellState::PhiPlus).matrix()),
            1e-15);
  EXPECT_LT(bell_diagonal({0, 0, 0}).matrix().max_abs_diff(ComplexMatrix::identity(4) * Complex(0.25)),
            1e-15);

  // c1 = 1, c2 = -c3, c3 = 0.6: weight (1 + c3)/2 on Phi+ and (1 - c3)/2 on Psi+.
  const BellDiagonalCoeffs c(1, -0.6, 0.6);
  EXPECT_NEAR(c.lambda_phi_plus(), 0.8, 1e-15);
  EXPECT_NEAR(c.lambda_psi_plus(), 0.2, 1e-15);
  EXPECT_NEAR(c.lambda_phi_minus(), 0.0, 1e-15);
  EXPECT_NEAR(c.lambda_psi_minus(), 0.0, 1e-15);
  const ComplexMatrix expected = bell_projector(BellState::PhiPlus).matrix() * Complex(0.8) +
                                 bell_projector(BellState::PsiPlus).matrix() * Complex(0.2);
  EXPECT_LT(bell_diagonal(c).matrix().max_abs_diff(expected), 1e-15);
}

TEST(BellDiagonal, WeightsMatchBellStateCorrelations) {
  const std::pair<BellState, Eigen::Vector3d> cases[] = {
      {BellState::PhiPlus, {1, -1, 1}},
      {BellState::PhiMinus, {-1, 1, 1}},
      {BellState::PsiPlus, {1, 1, -1}},
      {BellState::PsiMinus, {-1, -1, -1}},
  };
  for (const auto& [state, c] : cases) {
    const auto f = extract_fano(bell_projector(state));
    EXPECT_LT((f.T.diagonal() - c).norm(), 1e-14);
  }
}

TEST(BellDiagonal, InvalidCoefficients) {
  EXPECT_THROW(BellDiagonalCoeffs(1, 1, 1), NotAStateError);
  EXPECT_THROW(BellDiagonalCoeffs(1.5, 0, 0), NotAStateError);
}

TEST(BellDiagonal, EqualsFanoAndHasMixedMarginals) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto c = testing::random_bell_coeffs(rng);
    const auto rho = bell_diagonal(c);
    FanoForm f;
    f.T = diag3(c.c1(), c.c2(), c.c3());
    EXPECT_LT(rho.matrix().max_abs_diff(from_fano(f).matrix()), 1e-14);
    const auto back = extract_fano(rho);
    EXPECT_LT(back.a.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(back.b.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Werner, Examples) {
  EXPECT_LT(werner(1).matrix().max_abs_diff(bell_projector(BellState::PsiMinus).matrix()), 1e-15);
  EXPECT_LT(werner(0).matrix().max_abs_diff(ComplexMatrix::identity(4) * Complex(0.25)), 1e-15);
  const auto spectrum = hermitian_eigen(werner(0.8).matrix()).values;
  EXPECT_NEAR(spectrum[0], 0.85, 1e-14);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(spectrum[i], 0.05, 1e-14);
}

TEST(Werner, OutOfRange) {
  EXPECT_THROW(werner(-0.5), NotAStateError);
  EXPECT_THROW(werner(1.01), NotAStateError);
}

TEST(SchmidtPure, Examples) {
  const auto quarter = schmidt_pure(std::numbers::pi / 4);
  EXPECT_LT(quarter.matrix().max_abs_diff(bell_projector(BellState::PhiPlus).matrix()), 1e-15);
  EXPECT_LT((extract_fano(schmidt_pure(0)).T - diag3(0, 0, 1)).norm(), 1e-15);
  const double r = std::sqrt(3.0) / 2;
  EXPECT_LT((extract_fano(schmidt_pure(std::numbers::pi / 6)).T - diag3(r, -r, 1)).norm(), 1e-14);
}

TEST(SchmidtPure, IsPureWithDiagonalTensor) {
  for (double theta = 0.0; theta <= std::numbers::pi / 2; theta += 0.05) {
    const auto rho = schmidt_pure(theta);
    EXPECT_NEAR(rho.purity(), 1.0, 1e-10);
    const auto f = extract_fano(rho);
    const double s = std::sin(2 * theta);
    EXPECT_LT((f.T - diag3(s, -s, 1)).norm(), 1e-14);
  }
}

TEST(RotationToUnitary, ConjugationRotatesBlochVectors) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = testing::random_unitary(rng, 2);
    // Rotation read off from the unitary, then lifted back.
    Eigen::Matrix3d o;
    for (int n = 0; n < 3; ++n) {
      const auto img = u * pauli(n + 1) * u.adjoint();
      for (int m = 0; m < 3; ++m) o(m, n) = 0.5 * (pauli(m + 1) * img).trace().real();
    }
    const auto lifted = rotation_to_unitary(o);
    for (int n = 0; n < 3; ++n) {
      const auto img = lifted * pauli(n + 1) * lifted.adjoint();
      ComplexMatrix expected(2, 2);
      for (int m = 0; m < 3; ++m) expected += pauli(m + 1) * Complex(o(m, n));
      EXPECT_LT(img.max_abs_diff(expected), 1e-12);
    }
  }
}

TEST(DiagonalizeCorrelationTensor, BellDiagonalInputStaysPut) {
  const auto rho = bell_diagonal({0.5, -0.3, 0.2});
  const auto d = diagonalize_correlation_tensor(rho);
  const auto t = extract_fano(d.state).T;
  EXPECT_LT((t - Eigen::Matrix3d(t.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((t.diagonal().cwiseAbs() - Eigen::Vector3d(0.5, 0.3, 0.2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DiagonalizeCorrelationTensor, LocallyRotatedBellState) {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rotated = apply_local_unitaries(bell_projector(BellState::PhiPlus),
                                               testing::random_unitary(rng, 2),
                                               testing::random_unitary(rng, 2));
    const auto d = diagonalize_correlation_tensor(rotated);
    const auto t = extract_fano(d.state).T;
    EXPECT_LT((t.diagonal().cwiseAbs() - Eigen::Vector3d::Ones()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(DiagonalizeCorrelationTensor, RandomStatesPreserveSpectrumAndMeasures) {
  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rho = testing::random_state(rng, 1 + trial % 4);
    const auto d = diagonalize_correlation_tensor(rho);
    EXPECT_NEAR(d.o1.determinant(), 1.0, 1e-12);
    EXPECT_NEAR(d.o2.determinant(), 1.0, 1e-12);
    const auto t = extract_fano(d.state).T;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) { EXPECT_LT(std::abs(t(i, j)), 1e-9); }
    const auto before = hermitian_eigen(rho.matrix()).values;
    const auto after = hermitian_eigen(d.state.matrix()).values;
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(before[i], after[i], 1e-9);

    const auto r0 = discord(rho);
    const auto r1 = discord(d.state);
    EXPECT_NEAR(r0.mutual_information, r1.mutual_information, 1e-6);
    EXPECT_NEAR(r0.classical, r1.classical, 1e-6);
    EXPECT_NEAR(r0.discord, r1.discord, 1e-6);
  }
}

}  // namespace
}  // namespace qcorr
