#pragma once

// Correlation measures of two-qubit states, all in bits.
//
// Classical correlation follows Henderson-Vedral with rank-1 projective
// measurements on one side (B unless stated otherwise); discord is the gap
// between mutual information and classical correlation.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qcorr/errors.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/nelder_mead.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

inline constexpr double kMeasureTolerance = 1e-9;
inline constexpr double kNegligibleProbability = 1e-12;

// Bloch direction n(theta, phi) defining the measurement {(I + n.sigma)/2, (I - n.sigma)/2}.
class MeasurementDirection {
 public:
  MeasurementDirection(double theta, double phi) : theta_(theta), phi_(phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
      throw ParameterError("measurement angles must be finite");
    }
    if (theta < -1e-12 || theta > std::numbers::pi + 1e-12) {
      throw ParameterError("polar angle " + std::to_string(theta) + " outside [0, pi]");
    }
    theta_ = std::clamp(theta, 0.0, std::numbers::pi);
    phi_ = std::fmod(phi, 2 * std::numbers::pi);
    if (phi_ < 0) phi_ += 2 * std::numbers::pi;
  }

  static MeasurementDirection from_vector(const Eigen::Vector3d& v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw ParameterError("measurement direction must be a non-zero finite vector");
    }
    const Eigen::Vector3d n = v / norm;
    return {std::acos(std::clamp(n.z(), -1.0, 1.0)), std::atan2(n.y(), n.x())};
  }

  [[nodiscard]] double theta() const { return theta_; }
  [[nodiscard]] double phi() const { return phi_; }

  [[nodiscard]] Eigen::Vector3d unit_vector() const {
    return {std::sin(theta_) * std::cos(phi_), std::sin(theta_) * std::sin(phi_),
            std::cos(theta_)};
  }

  // Representative of {n, -n} with theta in [0, pi/2] (and phi in [0, pi) on the equator).
  [[nodiscard]] MeasurementDirection canonical() const {
    Eigen::Vector3d n = unit_vector();
    constexpr double eps = 1e-15;
    if (n.z() < -eps || (std::abs(n.z()) <= eps && (n.y() < -eps || (std::abs(n.y()) <= eps && n.x() < 0)))) {
      n = -n;
    }
    for (int i = 0; i < 3; ++i)
      if (std::abs(n(i)) <= eps) n(i) = 0.0;
    return from_vector(n);
  }

  // Outcome projectors (+, -).
  [[nodiscard]] std::array<ComplexMatrix, 2> projectors() const {
    const Eigen::Vector3d n = unit_vector();
    ComplexMatrix ns = pauli(1) * Complex(n.x()) + pauli(2) * Complex(n.y()) +
                       pauli(3) * Complex(n.z());
    const auto id = pauli(0);
    return {(id + ns) * Complex(0.5), (id - ns) * Complex(0.5)};
  }

 private:
  double theta_;
  double phi_;
};

inline MeasurementDirection x_axis() { return {std::numbers::pi / 2, 0.0}; }
inline MeasurementDirection y_axis() { return {std::numbers::pi / 2, std::numbers::pi / 2}; }
inline MeasurementDirection z_axis() { return {0.0, 0.0}; }

// Entropy of a qubit state with Bloch vector length r.
inline double qubit_entropy(double bloch_length) {
  const double r = std::clamp(bloch_length, 0.0, 1.0);
  const double p = 0.5 * (1.0 + r), q = 0.5 * (1.0 - r);
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (q > 0.0) h -= q * std::log2(q);
  return h;
}

// P[alpha] = (1 + alpha)/2 log2(1 + alpha), with P[-1] = 0.
inline double p_function(double alpha) {
  if (!std::isfinite(alpha) || alpha < -1.0 - 1e-12 || alpha > 1.0 + 1e-12) {
    throw ParameterError("P[alpha] requires alpha in [-1, 1], got " + std::to_string(alpha));
  }
  const double x = 1.0 + std::clamp(alpha, -1.0, 1.0);
  return x > 0.0 ? 0.5 * x * std::log2(x) : 0.0;
}

namespace detail {
inline double clamp_small_negative(double v) { return (v < 0.0 && v >= -kMeasureTolerance) ? 0.0 : v; }

inline Subsystem other(Subsystem s) { return s == Subsystem::A ? Subsystem::B : Subsystem::A; }

inline ComplexMatrix embed(const ComplexMatrix& op, Subsystem side) {
  return side == Subsystem::A ? tensor_product(op, pauli(0)) : tensor_product(pauli(0), op);
}
}  // namespace detail

// I = S(rho_A) + S(rho_B) - S(rho_AB).
inline double mutual_information(const DensityMatrix& rho) {
  const double sa = von_neumann_entropy(partial_trace(rho.matrix(), Subsystem::A));
  const double sb = von_neumann_entropy(partial_trace(rho.matrix(), Subsystem::B));
  const double sab = von_neumann_entropy(rho.matrix());
  return detail::clamp_small_negative(sa + sb - sab);
}

// sum_j p_j S(rho_unmeasured^j) after measuring `measured` along `dir`.
inline double conditional_entropy_after_measurement(const DensityMatrix& rho,
                                                    const MeasurementDirection& dir,
                                                    Subsystem measured = Subsystem::B) {
  double total = 0.0;
  for (const auto& proj : dir.projectors()) {
    const auto p = detail::embed(proj, measured);
    const ComplexMatrix post = p * rho.matrix() * p;
    const double prob = post.trace().real();
    if (prob < kNegligibleProbability) continue;
    ComplexMatrix reduced = partial_trace(post, detail::other(measured)) * Complex(1.0 / prob);
    reduced = (reduced + reduced.adjoint()) * Complex(0.5);
    total += prob * von_neumann_entropy(reduced);
  }
  return total;
}

// Information gained about the unmeasured qubit by a projective measurement,
// evaluated in Bloch coordinates. Measuring B along n gives outcome
// probabilities (1 +- b.n)/2 and conditional A Bloch vectors (a +- T n)/(1 +- b.n).
class MeasurementGain {
 public:
  MeasurementGain(const FanoForm& f, Subsystem measured) {
    if (measured == Subsystem::B) {
      unmeasured_ = f.a;
      measured_ = f.b;
      tensor_ = f.T;
    } else {
      unmeasured_ = f.b;
      measured_ = f.a;
      tensor_ = f.T.transpose();
    }
    prior_entropy_ = qubit_entropy(unmeasured_.norm());
  }

  [[nodiscard]] double prior_entropy() const { return prior_entropy_; }

  [[nodiscard]] double conditional_entropy(const Eigen::Vector3d& n) const {
    const double bn = measured_.dot(n);
    const Eigen::Vector3d tn = tensor_ * n;
    double s = 0.0;
    for (double sign : {1.0, -1.0}) {
      const double weight = 1.0 + sign * bn;  // 2 p
      if (0.5 * weight < kNegligibleProbability) continue;
      const Eigen::Vector3d r = (unmeasured_ + sign * tn) / weight;
      s += 0.5 * weight * qubit_entropy(r.norm());
    }
    return s;
  }

  [[nodiscard]] double operator()(const Eigen::Vector3d& n) const {
    return prior_entropy_ - conditional_entropy(n);
  }

 private:
  Eigen::Vector3d unmeasured_, measured_;
  Eigen::Matrix3d tensor_;
  double prior_entropy_ = 0.0;
};

struct ClassicalCorrelation {
  double value = 0.0;
  MeasurementDirection direction = z_axis();
};

struct ClassicalCorrelationOptions {
  int theta_cells = 64;
  int phi_cells = 128;
  int restarts = 3;
  NelderMeadOptions simplex{};
};

namespace detail {
// Orders candidates by value (descending), then theta, then phi.
inline bool better_candidate(double va, const MeasurementDirection& a, double vb,
                             const MeasurementDirection& b) {
  constexpr double tie = 1e-12;
  if (std::abs(va - vb) > tie) return va > vb;
  if (std::abs(a.theta() - b.theta()) > 1e-12) return a.theta() < b.theta();
  return a.phi() < b.phi();
}
}  // namespace detail

// Maximizes the measurement gain over rank-1 projective measurements:
// coarse (theta, phi) grid, then simplex refinement from the best distinct
// grid cells in tangent-plane coordinates around each seed.
inline ClassicalCorrelation classical_correlation(const DensityMatrix& rho,
                                                  Subsystem measured = Subsystem::B,
                                                  const ClassicalCorrelationOptions& opt = {}) {
  const MeasurementGain gain(extract_fano(rho), measured);

  struct Candidate {
    double value;
    MeasurementDirection dir;
  };
  std::vector<Candidate> grid;
  grid.reserve(static_cast<std::size_t>(opt.theta_cells) * opt.phi_cells);
  for (int i = 0; i < opt.theta_cells; ++i) {
    const double theta = std::numbers::pi * i / opt.theta_cells;
    for (int j = 0; j < opt.phi_cells; ++j) {
      const MeasurementDirection d(theta, 2 * std::numbers::pi * j / opt.phi_cells);
      grid.push_back({gain(d.unit_vector()), d});
    }
  }
  std::stable_sort(grid.begin(), grid.end(), [](const Candidate& a, const Candidate& b) {
    return detail::better_candidate(a.value, a.dir, b.value, b.dir);
  });

  std::vector<Candidate> seeds;
  for (const auto& c : grid) {
    if (static_cast<int>(seeds.size()) == opt.restarts) break;
    const Eigen::Vector3d n = c.dir.unit_vector();
    const bool duplicate = std::any_of(seeds.begin(), seeds.end(), [&](const Candidate& s) {
      return std::abs(std::abs(s.dir.unit_vector().dot(n)) - 1.0) < 1e-12;
    });
    if (!duplicate) seeds.push_back(c);
  }

  NelderMeadOptions simplex = opt.simplex;
  simplex.initial_step = std::numbers::pi / opt.theta_cells;

  Candidate best = seeds.front();
  for (const auto& seed : seeds) {
    const Eigen::Vector3d n0 = seed.dir.unit_vector();
    const Eigen::Vector3d helper =
        std::abs(n0.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    const Eigen::Vector3d e1 = n0.cross(helper).normalized();
    const Eigen::Vector3d e2 = n0.cross(e1);
    const auto point = [&](const std::array<double, 2>& uv) {
      return Eigen::Vector3d((n0 + uv[0] * e1 + uv[1] * e2).normalized());
    };
    const auto result = nelder_mead<2>(
        [&](const std::array<double, 2>& uv) { return -gain(point(uv)); }, {0.0, 0.0}, simplex);
    Candidate refined{-result.value, MeasurementDirection::from_vector(point(result.x)).canonical()};
    Candidate start{seed.value, seed.dir.canonical()};
    for (const auto& c : {refined, start}) {
      if (detail::better_candidate(c.value, c.dir, best.value, best.dir)) best = c;
    }
  }
  return {std::max(0.0, best.value), best.dir.canonical()};
}

struct CorrelationReport {
  double mutual_information = 0.0;  // I
  double classical = 0.0;           // C
  double discord = 0.0;             // D = I - C
  MeasurementDirection direction = z_axis();
  std::optional<double> complementary;  // I^c, when a complementary pair was evaluated
};

inline CorrelationReport discord(const DensityMatrix& rho, Subsystem measured = Subsystem::B,
                                 const ClassicalCorrelationOptions& opt = {}) {
  CorrelationReport r;
  r.mutual_information = mutual_information(rho);
  const auto cc = classical_correlation(rho, measured, opt);
  r.classical = cc.value;
  if (r.classical > r.mutual_information && r.classical <= r.mutual_information + kMeasureTolerance) {
    r.classical = r.mutual_information;
  }
  r.direction = cc.direction;
  r.discord = detail::clamp_small_negative(r.mutual_information - r.classical);
  return r;
}

// Classical mutual information of the outcomes of measuring A along dir_a and B along dir_b.
inline double measurement_mutual_information(const DensityMatrix& rho,
                                             const MeasurementDirection& dir_a,
                                             const MeasurementDirection& dir_b) {
  const auto pa = dir_a.projectors();
  const auto pb = dir_b.projectors();
  std::array<double, 4> joint{};
  std::array<double, 2> ma{}, mb{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double p =
          std::max(0.0, (rho.matrix() * tensor_product(pa[i], pb[j])).trace().real());
      joint[2 * i + j] = p;
      ma[i] += p;
      mb[j] += p;
    }
  const double value = shannon_entropy(ma) + shannon_entropy(mb) - shannon_entropy(joint);
  return detail::clamp_small_negative(value);
}

struct ComplementaryPair {
  MeasurementDirection first;
  MeasurementDirection second;
};

inline constexpr double kComplementarityTolerance = 1e-9;

// I^c = I(first_A : first_B) + I(second_A : second_B); the two Bloch axes must
// be orthogonal, i.e. the observables mutually unbiased.
inline double complementary_correlation(const DensityMatrix& rho, const ComplementaryPair& pair) {
  const double overlap = pair.first.unit_vector().dot(pair.second.unit_vector());
  if (std::abs(overlap) > kComplementarityTolerance) {
    throw ComplementarityError("measurement axes are not complementary (n1.n2 = " +
                               std::to_string(overlap) + ")");
  }
  return measurement_mutual_information(rho, pair.first, pair.first) +
         measurement_mutual_information(rho, pair.second, pair.second);
}

enum class CorrelationClass { MaximallyEntangled, Entangled, AtClassicalBoundary, Inconclusive };

inline std::string_view to_string(CorrelationClass c) {
  switch (c) {
    case CorrelationClass::MaximallyEntangled: return "maximally-entangled";
    case CorrelationClass::Entangled: return "entangled";
    case CorrelationClass::AtClassicalBoundary: return "at-classical-boundary";
    case CorrelationClass::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

// Thresholds for qubits: 2 log2 d = 2 and log2 d = 1.
inline CorrelationClass classify_by_complementary_correlations(double icomp) {
  constexpr double tol = 1e-9;
  if (!std::isfinite(icomp) || icomp < -tol || icomp > 2.0 + tol) {
    throw ParameterError("complementary correlation " + std::to_string(icomp) +
                         " outside [0, 2]");
  }
  if (icomp >= 2.0 - tol) return CorrelationClass::MaximallyEntangled;
  if (icomp > 1.0 + tol) return CorrelationClass::Entangled;
  if (std::abs(icomp - 1.0) <= tol) return CorrelationClass::AtClassicalBoundary;
  return CorrelationClass::Inconclusive;
}

}  // namespace qcorr
