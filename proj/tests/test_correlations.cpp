#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qcorr/channels.hpp"
#include "qcorr/correlations.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

namespace qcorr {
namespace {

using testing::Rng;

constexpr double kH08 = 0.7219280948873623;          // h(0.8)
constexpr double kMi = 1.2780719051126377;           // 2 - h(0.8)
constexpr double kPairP06 = 0.27807190511263774;     // P[0.6] + P[-0.6]

DensityMatrix mazzola_state() { return bell_diagonal({1, -0.6, 0.6}); }

DensityMatrix product_of_random(Rng& rng) {
  return product_state(testing::random_qubit_state(rng), testing::random_qubit_state(rng));
}

TEST(MeasurementDirection, ProjectorsAreOrthogonalRankOne) {
  Rng rng(30);
  std::uniform_real_distribution<double> th(0, std::numbers::pi), ph(0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 50; ++trial) {
    const MeasurementDirection d(th(rng), ph(rng));
    const auto [p, m] = d.projectors();
    EXPECT_LT((p + m).max_abs_diff(ComplexMatrix::identity(2)), 1e-12);
    EXPECT_LT((p * m).max_abs_diff(ComplexMatrix(2, 2)), 1e-12);
    EXPECT_LT((p * p).max_abs_diff(p), 1e-12);
    EXPECT_NEAR(p.trace().real(), 1.0, 1e-12);
  }
  EXPECT_THROW(MeasurementDirection(4.0, 0.0), ParameterError);
}

TEST(MeasurementDirection, CanonicalRepresentative) {
  const auto d = MeasurementDirection(std::numbers::pi, 0.0).canonical();
  EXPECT_NEAR(d.theta(), 0.0, 1e-12);
  const auto e = MeasurementDirection(std::numbers::pi / 2, std::numbers::pi).canonical();
  EXPECT_NEAR(e.phi(), 0.0, 1e-12);
}

TEST(PFunction, Examples) {
  EXPECT_DOUBLE_EQ(p_function(1), 1.0);
  EXPECT_DOUBLE_EQ(p_function(0), 0.0);
  EXPECT_DOUBLE_EQ(p_function(-1), 0.0);
  EXPECT_NEAR(p_function(0.6), 0.5424575240901102, 1e-15);
  EXPECT_THROW(p_function(1.5), ParameterError);
}

TEST(MutualInformation, Examples) {
  Rng rng(31);
  EXPECT_NEAR(mutual_information(product_of_random(rng)), 0.0, 1e-10);
  EXPECT_NEAR(mutual_information(bell_projector(BellState::PhiPlus)), 2.0, 1e-10);
  EXPECT_NEAR(mutual_information(mazzola_state()), kMi, 1e-10);
}

TEST(ConditionalEntropy, Examples) {
  Rng rng(32);
  const auto ra = testing::random_qubit_state(rng);
  const auto prod = product_state(ra, testing::random_qubit_state(rng));
  EXPECT_NEAR(conditional_entropy_after_measurement(prod, MeasurementDirection(1.1, 2.3)),
              von_neumann_entropy(ra), 1e-10);
  EXPECT_NEAR(conditional_entropy_after_measurement(bell_projector(BellState::PhiPlus), z_axis()),
              0.0, 1e-10);
  EXPECT_NEAR(conditional_entropy_after_measurement(mazzola_state(), z_axis()), kH08, 1e-10);
}

TEST(ConditionalEntropy, BlochRouteMatchesMatrixRoute) {
  Rng rng(33);
  std::uniform_real_distribution<double> th(0, std::numbers::pi), ph(0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = testing::random_state(rng, 1 + trial % 4);
    const MeasurementDirection d(th(rng), ph(rng));
    for (auto side : {Subsystem::A, Subsystem::B}) {
      const MeasurementGain gain(extract_fano(rho), side);
      EXPECT_NEAR(gain.conditional_entropy(d.unit_vector()),
                  conditional_entropy_after_measurement(rho, d, side), 1e-10);
    }
  }
}

TEST(ClassicalCorrelation, MazzolaStateMeasuresAlongX) {
  const auto cc = classical_correlation(mazzola_state());
  EXPECT_NEAR(cc.value, 1.0, 1e-9);
  EXPECT_GT(std::abs(cc.direction.unit_vector().x()), 1 - 1e-6);
}

TEST(ClassicalCorrelation, QuantumClassicalStateHasZeroDiscord) {
  Rng rng(34);
  const ComplexMatrix rho0 = testing::random_qubit_state(rng), rho1 = testing::random_qubit_state(rng);
  const ComplexMatrix p0{{1, 0}, {0, 0}}, p1{{0, 0}, {0, 1}};
  const DensityMatrix qc(tensor_product(rho0, p0) * Complex(0.3) + tensor_product(rho1, p1) * Complex(0.7));
  const auto r = discord(qc);
  EXPECT_NEAR(r.discord, 0.0, 1e-6);
  EXPECT_NEAR(r.classical, r.mutual_information, 1e-6);
  EXPECT_NEAR(r.classical,
              1.0 * 0 + mutual_information(qc), 1e-6);
  EXPECT_NEAR(conditional_entropy_after_measurement(qc, z_axis()),
              von_neumann_entropy(partial_trace(qc.matrix(), Subsystem::A)) - r.classical, 1e-6);
}

TEST(ClassicalCorrelation, BellDiagonalClosedForm) {
  Rng rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = testing::random_bell_coeffs(rng);
    const auto cc = classical_correlation(bell_diagonal(c));
    const double k = c.max_abs();
    EXPECT_NEAR(cc.value, p_function(k) + p_function(-k), 1e-6);
    EXPECT_NEAR(cc.value, testing::bell_diagonal_classical(c.c1(), c.c2(), c.c3()), 1e-6);
    // Direction check only when the dominant coefficient is unique.
    const double cs[3] = {std::abs(c.c1()), std::abs(c.c2()), std::abs(c.c3())};
    int axis = 0;
    for (int i = 1; i < 3; ++i)
      if (cs[i] > cs[axis]) axis = i;
    double gap = 1.0;
    for (int i = 0; i < 3; ++i)
      if (i != axis) gap = std::min(gap, cs[axis] - cs[i]);
    if (gap > 1e-2) { EXPECT_GT(std::abs(cc.direction.unit_vector()(axis)), 1 - 1e-4); }
  }
}

TEST(ClassicalCorrelation, AgreesWithExhaustiveGrid) {
  Rng rng(36);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = testing::random_state(rng, 1 + trial % 4);
    const double oracle = testing::grid_classical_correlation(rho);
    const double value = classical_correlation(rho).value;
    EXPECT_NEAR(value, oracle, 1e-5);
    EXPECT_GE(value, oracle - 1e-12);
  }
}

TEST(Discord, Examples) {
  const auto phi = discord(bell_projector(BellState::PhiPlus));
  EXPECT_NEAR(phi.discord, 1.0, 1e-6);
  EXPECT_NEAR(phi.classical, 1.0, 1e-6);
  const auto m = discord(mazzola_state());
  EXPECT_NEAR(m.mutual_information, kMi, 1e-10);
  EXPECT_NEAR(m.discord, kPairP06, 1e-8);
  EXPECT_NEAR(m.discord, p_function(0.6) + p_function(-0.6), 1e-8);
}

TEST(Discord, RandomQuantumClassicalStates) {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const auto qc = testing::random_qc_state(rng);
    EXPECT_LE(discord(qc.state).discord, 1e-6);
  }
}

TEST(Discord, AsymmetricInMeasuredSide) {
  // Classical on B, but A carries non-orthogonal conditional states.
  const ComplexMatrix plus{{0.5, 0.5}, {0.5, 0.5}};
  const ComplexMatrix zero{{1, 0}, {0, 0}}, one{{0, 0}, {0, 1}};
  const DensityMatrix rho(tensor_product(zero, zero) * Complex(0.5) +
                          tensor_product(plus, one) * Complex(0.5));
  EXPECT_NEAR(discord(rho, Subsystem::B).discord, 0.0, 1e-8);
  EXPECT_GT(discord(rho, Subsystem::A).discord, 1e-2);
}

TEST(Discord, InvariantsOnRandomStates) {
  Rng rng(38);
  for (int trial = 0; trial < 500; ++trial) {
    const auto rho = testing::random_state(rng, 1 + trial % 4);
    const auto r = discord(rho);
    EXPECT_GE(r.discord, -1e-9);
    EXPECT_GE(r.classical, -1e-9);
    EXPECT_LE(r.classical, r.mutual_information + 1e-9);
    EXPECT_LE(r.discord, r.mutual_information + 1e-9);
    EXPECT_LE(r.mutual_information, 2.0 + 1e-9);
    EXPECT_NEAR(r.discord, r.mutual_information - r.classical, 1e-9);
  }
}

TEST(Discord, LocalUnitaryInvariance) {
  Rng rng(39);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rho = testing::random_state(rng, 1 + trial % 4);
    const auto rotated = apply_local_unitaries(rho, testing::random_unitary(rng, 2),
                                               testing::random_unitary(rng, 2));
    const auto a = discord(rho), b = discord(rotated);
    EXPECT_NEAR(a.mutual_information, b.mutual_information, 1e-6);
    EXPECT_NEAR(a.classical, b.classical, 1e-6);
    EXPECT_NEAR(a.discord, b.discord, 1e-6);
  }
}

TEST(Discord, MonotoneUnderChannelsOnUnmeasuredSide) {
  Rng rng(40);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = testing::random_state(rng, 1 + trial % 4);
    const auto ch = testing::random_channel(rng);
    const double before = discord(rho).discord;
    const double after = discord(apply_local(rho, ch, KrausChannel::identity())).discord;
    EXPECT_LE(after, before + 1e-6);
  }
}

TEST(MeasurementMutualInformation, BellDiagonalAxes) {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = testing::random_bell_coeffs(rng);
    const auto rho = bell_diagonal(c);
    EXPECT_NEAR(measurement_mutual_information(rho, x_axis(), x_axis()),
                p_function(c.c1()) + p_function(-c.c1()), 1e-10);
    EXPECT_NEAR(measurement_mutual_information(rho, z_axis(), z_axis()),
                p_function(c.c3()) + p_function(-c.c3()), 1e-10);
  }
  const auto prod = product_of_random(rng);
  EXPECT_NEAR(measurement_mutual_information(prod, MeasurementDirection(0.3, 1.0),
                                             MeasurementDirection(2.0, 4.0)),
              0.0, 1e-10);
}

TEST(ComplementaryCorrelation, Thresholds) {
  EXPECT_NEAR(complementary_correlation(bell_projector(BellState::PhiPlus), {x_axis(), z_axis()}),
              2.0, 1e-9);
  EXPECT_NEAR(complementary_correlation(bell_diagonal({0, 0, 1}), {x_axis(), z_axis()}), 1.0, 1e-9);
  for (double c1 : {1.0, 0.7, 0.2, 0.0}) {
    const auto rho = bell_diagonal({c1, -0.6 * c1, 0.6});
    EXPECT_NEAR(complementary_correlation(rho, {x_axis(), z_axis()}),
                p_function(c1) + p_function(-c1) + kPairP06, 1e-10);
  }
}

TEST(ComplementaryCorrelation, RejectsNonOrthogonalAxes) {
  EXPECT_THROW(complementary_correlation(mazzola_state(), {x_axis(), MeasurementDirection(1.0, 0.0)}),
               ComplementarityError);
}

TEST(Classifier, Labels) {
  EXPECT_EQ(classify_by_complementary_correlations(2.0), CorrelationClass::MaximallyEntangled);
  EXPECT_EQ(classify_by_complementary_correlations(1.3), CorrelationClass::Entangled);
  EXPECT_EQ(classify_by_complementary_correlations(1.0), CorrelationClass::AtClassicalBoundary);
  EXPECT_EQ(classify_by_complementary_correlations(0.4), CorrelationClass::Inconclusive);
  EXPECT_THROW(classify_by_complementary_correlations(2.5), ParameterError);
  EXPECT_THROW(classify_by_complementary_correlations(-0.1), ParameterError);
}

}  // namespace
}  // namespace qcorr
