#pragma once

// Correlation dynamics of two qubits under identical local noise on both
// sides, sudden-transition detection and the Werner closed-form comparison.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcorr/channels.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/scenario.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct CorrelationSample {
  double t = 0.0;
  double I = 0.0;
  double C = 0.0;
  double D = 0.0;
  double Icomp = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

struct Trajectory {
  Scenario scenario;
  std::vector<CorrelationSample> samples;
};

// 4x4 real matrix R with R(0,0) = 1, R(k,0) = a_k, R(0,m) = b_m, R(k,m) = T_km.
inline Eigen::Matrix4d pauli_coefficients(const FanoForm& f) {
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  r(0, 0) = 1.0;
  r.block<3, 1>(1, 0) = f.a;
  r.block<1, 3>(0, 1) = f.b.transpose();
  r.block<3, 3>(1, 1) = f.T;
  return r;
}

inline FanoForm fano_from_coefficients(const Eigen::Matrix4d& r) {
  FanoForm f;
  f.a = r.block<3, 1>(1, 0);
  f.b = r.block<1, 3>(0, 1).transpose();
  f.T = r.block<3, 3>(1, 1);
  return f;
}

// Bloch-ball action [[1, 0], [v, M]] of each channel family written out
// directly, independent of the Kraus operators:
//   phase damping:     M = diag(1-p, 1-p, 1),        v = 0
//   depolarizing:      M = (1 - 4p/3) I,             v = 0
//   amplitude damping: M = diag(s, s, 1-p), s = sqrt(1-p), v = (0, 0, p)
inline Eigen::Matrix4d closed_form_transfer(ChannelFamily family, double p) {
  Eigen::Matrix4d l = Eigen::Matrix4d::Identity();
  switch (family) {
    case ChannelFamily::Identity: break;
    case ChannelFamily::PhaseDamping:
      l(1, 1) = l(2, 2) = 1.0 - p;
      break;
    case ChannelFamily::Depolarizing:
      l(1, 1) = l(2, 2) = l(3, 3) = 1.0 - 4.0 * p / 3.0;
      break;
    case ChannelFamily::AmplitudeDamping:
      l(1, 1) = l(2, 2) = std::sqrt(1.0 - p);
      l(3, 3) = 1.0 - p;
      l(3, 0) = p;
      break;
    case ChannelFamily::Custom:
      throw ParameterError("no closed form for a custom channel");
  }
  return l;
}

// Same channel on both qubits: R' = L R L^T. For phase damping at
// p = 1 - exp(-gamma t) this is c1,2(t) = c1,2(0) exp(-2 gamma t), c3(t) = c3(0).
inline FanoForm evolve_fano_closed_form(const FanoForm& f, ChannelFamily family, double p) {
  const Eigen::Matrix4d l = closed_form_transfer(family, p);
  return fano_from_coefficients(l * pauli_coefficients(f) * l.transpose());
}

inline constexpr double kRouteAgreementTolerance = 1e-9;

struct EvolutionOptions {
  ClassicalCorrelationOptions optimizer{};
  double route_tolerance = kRouteAgreementTolerance;
};

inline CorrelationSample measure_sample(double t, const DensityMatrix& rho,
                                        const ClassicalCorrelationOptions& opt = {}) {
  const auto report = discord(rho, Subsystem::B, opt);
  const FanoForm f = extract_fano(rho);
  CorrelationSample s;
  s.t = t;
  s.I = report.mutual_information;
  s.C = report.classical;
  s.D = report.discord;
  s.Icomp = complementary_correlation(rho, {x_axis(), z_axis()});
  s.c1 = f.T(0, 0);
  s.c2 = f.T(1, 1);
  s.c3 = f.T(2, 2);
  return s;
}

// Evolves the scenario's initial state over its time grid. Each state is
// produced twice, by the Kraus operators and by the closed-form Bloch map,
// and the two must agree entry-wise.
inline Trajectory evolve_trajectory(const Scenario& scenario, const EvolutionOptions& opt = {}) {
  if (const auto report = validate(scenario); !report.ok()) {
    throw ConfigError(report.failures.front());
  }
  const DensityMatrix rho0 = initial_state(scenario);
  const FanoForm f0 = extract_fano(rho0);

  Trajectory traj{scenario, {}};
  const auto times = time_grid(scenario);
  traj.samples.reserve(times.size());
  for (double t : times) {
    const double p = noise_strength_at_time(scenario.gamma, t);
    const KrausChannel channel = make_channel(scenario.channel, p);
    const DensityMatrix kraus = apply_local(rho0, channel, channel);
    const ComplexMatrix closed =
        fano_matrix(evolve_fano_closed_form(f0, scenario.channel, p));
    const double gap = kraus.matrix().max_abs_diff(closed);
    if (!(gap <= opt.route_tolerance)) {
      throw ConsistencyError("Kraus and closed-form evolution disagree by " +
                             std::to_string(gap) + " at t = " + std::to_string(t));
    }
    traj.samples.push_back(measure_sample(t, kraus, opt.optimizer));
  }
  return traj;
}

// t' = -ln|c3| / (2 gamma): the time at which exp(-2 gamma t) drops to |c3|.
inline std::optional<double> analytic_transition_time(double c3, double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0) {
    throw ParameterError("transition time needs gamma > 0, got " + std::to_string(gamma));
  }
  if (!std::isfinite(c3) || std::abs(c3) > 1.0) {
    throw ParameterError("transition time needs |c3| <= 1, got " + std::to_string(c3));
  }
  if (c3 == 0.0) return std::nullopt;
  return -std::log(std::abs(c3)) / (2.0 * gamma);
}

// Predicted crossing for a scenario. Only Bell-diagonal states under phase
// damping whose dominant coefficient decays below a constant |c3| cross.
inline std::optional<double> analytic_transition_time(const Scenario& s) {
  if (s.channel != ChannelFamily::PhaseDamping) return std::nullopt;
  if (s.family == Family::Mazzola) {
    return s.c3 ? analytic_transition_time(*s.c3, s.gamma) : std::nullopt;
  }
  if (s.family != Family::Custom || !s.fano) return std::nullopt;
  const FanoForm& f = *s.fano;
  const Eigen::Matrix3d off = f.T - Eigen::Matrix3d(f.T.diagonal().asDiagonal());
  constexpr double tol = 1e-12;
  if (f.a.norm() > tol || f.b.norm() > tol || off.cwiseAbs().maxCoeff() > tol) return std::nullopt;
  const double lead = std::max(std::abs(f.T(0, 0)), std::abs(f.T(1, 1)));
  const double c3 = std::abs(f.T(2, 2));
  if (c3 == 0.0 || lead <= c3) return std::nullopt;
  return std::log(lead / c3) / (2.0 * s.gamma);
}

struct TransitionResult {
  std::optional<double> detected_t;
  std::optional<double> analytic_t;
  std::string method;
};

struct TransitionDetectorOptions {
  double median_factor = 10.0;
  double locality_factor = 10.0;
  double noise_floor = 1e-6;
};

// Kink detection on C(t). A kink shows up as an isolated spike in the
// absolute second difference, so candidates are interior samples whose
// second difference exceeds `locality_factor` times those two samples away;
// this rejects steep but smooth stretches such as the logarithmic edge of
// P near |c| = 1. The largest candidate is reported if it also exceeds
// `median_factor` times the median second difference and the absolute
// noise floor. The kink position is then interpolated from the split of
// the slope change between the two adjacent second differences.
inline TransitionResult detect_transition(const Trajectory& traj,
                                          const TransitionDetectorOptions& opt = {}) {
  const auto& s = traj.samples;
  if (s.size() < 8) {
    throw ParameterError("transition detection needs at least 8 samples, got " +
                         std::to_string(s.size()));
  }
  TransitionResult result;
  result.method = "largest isolated |second difference of C| with median and floor tests";
  result.analytic_t = analytic_transition_time(traj.scenario);

  const std::size_t n = s.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = std::abs(s[i + 1].C - 2.0 * s[i].C + s[i - 1].C);

  std::vector<double> interior(d.begin() + 1, d.end() - 1);
  auto mid = interior.begin() + static_cast<std::ptrdiff_t>(interior.size() / 2);
  std::nth_element(interior.begin(), mid, interior.end());
  const double median = *mid;

  std::size_t peak = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double far = 0.0;
    if (i >= 3) far = std::max(far, d[i - 2]);
    if (i + 3 <= n - 1) far = std::max(far, d[i + 2]);
    if (d[i] > opt.locality_factor * far && (peak == 0 || d[i] > d[peak])) peak = i;
  }
  if (peak == 0) return result;
  const double spike = d[peak];

  if (spike <= opt.median_factor * median || spike <= opt.noise_floor) {
    return result;
  }

  // Slope change at t* = t_k + frac h splits as d_k ~ (1 - frac), d_{k+1} ~ frac.
  std::size_t k = peak;
  const double left = peak >= 2 ? d[peak - 1] : 0.0;
  const double right = peak + 2 <= n - 1 ? d[peak + 1] : 0.0;
  if (left > right && peak >= 2) k = peak - 1;
  const double frac = d[k + 1] / (d[k] + d[k + 1]);
  result.detected_t = s[k].t + frac * (s[k + 1].t - s[k].t);
  return result;
}

struct WernerClosedForms {
  double C = 0.0;
  double D = 0.0;
};

// Literal evaluation of the Werner closed-form expressions
//   C = P[k] + P[-k],
//   D = 1/2 (P[k + 2k e^{-2 gamma t}] + P[k - 2k e^{-2 gamma t}] - 2 P[k]).
// These are compared against optimizer values, not treated as ground truth.
inline WernerClosedForms werner_closed_forms(double k, double gamma, double t) {
  const double decay = std::exp(-2.0 * gamma * t);
  const double hi = k + 2.0 * k * decay;
  const double lo = k - 2.0 * k * decay;
  for (double arg : {k, -k, hi, lo}) {
    if (!std::isfinite(arg) || arg < -1.0 || arg > 1.0) {
      throw FormulaDomainError("P[" + std::to_string(arg) + "] is outside the domain [-1, 1]");
    }
  }
  return {p_function(k) + p_function(-k),
          0.5 * (p_function(hi) + p_function(lo) - 2.0 * p_function(k))};
}

struct WernerComparison {
  double t = 0.0;
  double C = 0.0, D = 0.0;  // optimizer
  double C_formula = 0.0;
  std::optional<double> D_formula;  // empty when the formula leaves its domain
  std::optional<std::string> domain_error;
  [[nodiscard]] double c_discrepancy() const { return std::abs(C - C_formula); }
  [[nodiscard]] std::optional<double> d_discrepancy() const {
    if (!D_formula) return std::nullopt;
    return std::abs(D - *D_formula);
  }
};

inline std::vector<WernerComparison> compare_with_werner_closed_forms(const Trajectory& traj) {
  if (traj.scenario.family != Family::Werner || !traj.scenario.beta) {
    throw ParameterError("Werner comparison needs a Werner trajectory");
  }
  const double k = std::abs(*traj.scenario.beta);
  std::vector<WernerComparison> out;
  out.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    WernerComparison row{s.t, s.C, s.D, p_function(k) + p_function(-k), std::nullopt, std::nullopt};
    try {
      row.D_formula = werner_closed_forms(k, traj.scenario.gamma, s.t).D;
    } catch (const FormulaDomainError& e) {
      row.domain_error = e.what();
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace qcorr
