#pragma once

// Single-qubit CPTP maps in Kraus form and their local action on two qubits.

#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qcorr/errors.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

enum class ChannelFamily { Identity, Depolarizing, AmplitudeDamping, PhaseDamping, Custom };

inline std::string_view to_string(ChannelFamily f) {
  switch (f) {
    case ChannelFamily::Identity: return "identity";
    case ChannelFamily::Depolarizing: return "depolarizing";
    case ChannelFamily::AmplitudeDamping: return "amplitude_damping";
    case ChannelFamily::PhaseDamping: return "phase_damping";
    case ChannelFamily::Custom: return "custom";
  }
  return "unknown";
}

inline constexpr double kCompletenessTolerance = 1e-10;

class KrausChannel {
 public:
  // Checks 1 <= rank <= 4, 2x2 operators and sum_j G_j^dagger G_j = I.
  KrausChannel(std::vector<ComplexMatrix> ops, ChannelFamily family = ChannelFamily::Custom,
               double p = 0.0)
      : ops_(std::move(ops)), family_(family), p_(p) {
    if (ops_.empty() || ops_.size() > 4) {
      throw ParameterError("Kraus rank must be between 1 and 4, got " +
                           std::to_string(ops_.size()));
    }
    for (const auto& g : ops_) {
      if (g.rows() != 2 || g.cols() != 2) {
        throw DimensionError("Kraus operators must be 2x2, got " + g.shape());
      }
    }
    const double defect = completeness_defect();
    if (defect > kCompletenessTolerance) {
      throw ParameterError("Kraus operators are not trace preserving (defect " +
                           std::to_string(defect) + ")");
    }
  }

  static KrausChannel identity() {
    return KrausChannel({ComplexMatrix::identity(2)}, ChannelFamily::Identity, 0.0);
  }

  [[nodiscard]] const std::vector<ComplexMatrix>& ops() const { return ops_; }
  [[nodiscard]] ChannelFamily family() const { return family_; }
  [[nodiscard]] double p() const { return p_; }
  [[nodiscard]] std::size_t rank() const { return ops_.size(); }

  // Number of operators that are not identically zero.
  [[nodiscard]] std::size_t effective_rank() const {
    std::size_t n = 0;
    for (const auto& g : ops_) n += g.eigen().cwiseAbs().maxCoeff() > 0.0 ? 1 : 0;
    return n;
  }

  [[nodiscard]] ComplexMatrix completeness_sum() const {
    ComplexMatrix s(2, 2);
    for (const auto& g : ops_) s += g.adjoint() * g;
    return s;
  }

  [[nodiscard]] double completeness_defect() const {
    return completeness_sum().max_abs_diff(ComplexMatrix::identity(2));
  }

  // Lambda(X) = sum_j G_j X G_j^dagger on a 2x2 operator.
  [[nodiscard]] ComplexMatrix apply(const ComplexMatrix& x) const {
    if (x.rows() != 2 || x.cols() != 2) {
      throw DimensionError("single-qubit channel applied to " + x.shape() + " operator");
    }
    ComplexMatrix out(2, 2);
    for (const auto& g : ops_) out += g * x * g.adjoint();
    return out;
  }

  // Affine Bloch-ball action r -> M r + v, read off from the Kraus operators.
  // Returned as the 4x4 real Pauli transfer matrix [[1, 0], [v, M]].
  [[nodiscard]] Eigen::Matrix4d pauli_transfer() const {
    Eigen::Matrix4d r;
    for (int i = 0; i < 4; ++i) {
      const ComplexMatrix image = apply(pauli(i));
      for (int k = 0; k < 4; ++k) r(k, i) = 0.5 * (pauli(k) * image).trace().real();
    }
    return r;
  }

 private:
  std::vector<ComplexMatrix> ops_;
  ChannelFamily family_;
  double p_;
};

namespace detail {
inline void require_probability(double p, const char* name) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw ParameterError(std::string(name) + ": p = " + std::to_string(p) +
                         " outside [0, 1]");
  }
}
}  // namespace detail

inline KrausChannel depolarizing(double p) {
  detail::require_probability(p, "depolarizing");
  const double s = std::sqrt(p / 3.0);
  return KrausChannel({pauli(0) * Complex(std::sqrt(1.0 - p)), pauli(1) * Complex(s),
                       pauli(2) * Complex(s), pauli(3) * Complex(s)},
                      ChannelFamily::Depolarizing, p);
}

inline KrausChannel amplitude_damping(double p) {
  detail::require_probability(p, "amplitude_damping");
  return KrausChannel({ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - p)}},
                       ComplexMatrix{{0.0, std::sqrt(p)}, {0.0, 0.0}}},
                      ChannelFamily::AmplitudeDamping, p);
}

// G0 = sqrt(1 - p/2) I, G1 = sqrt(p/2) sigma_z; coherences scale by (1 - p).
inline KrausChannel phase_damping(double p) {
  detail::require_probability(p, "phase_damping");
  return KrausChannel({pauli(0) * Complex(std::sqrt(1.0 - p / 2.0)),
                       pauli(3) * Complex(std::sqrt(p / 2.0))},
                      ChannelFamily::PhaseDamping, p);
}

// Noise strength reached after time t at rate gamma: p(t) = 1 - exp(-gamma t).
// With the channel on both qubits, c1 and c2 decay as exp(-2 gamma t).
inline double noise_strength_at_time(double gamma, double t) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw ParameterError("decay rate gamma must be >= 0, got " + std::to_string(gamma));
  }
  if (!std::isfinite(t) || t < 0.0) {
    throw ParameterError("time must be >= 0, got " + std::to_string(t));
  }
  return -std::expm1(-gamma * t);
}

inline KrausChannel phase_damping_at_time(double gamma, double t) {
  return phase_damping(noise_strength_at_time(gamma, t));
}

inline KrausChannel make_channel(ChannelFamily family, double p) {
  switch (family) {
    case ChannelFamily::Identity: return KrausChannel::identity();
    case ChannelFamily::Depolarizing: return depolarizing(p);
    case ChannelFamily::AmplitudeDamping: return amplitude_damping(p);
    case ChannelFamily::PhaseDamping: return phase_damping(p);
    case ChannelFamily::Custom: break;
  }
  throw ParameterError("custom channels have no parametric constructor");
}

// (Lambda_A x Lambda_B)(rho) = sum_jk (G_j x G_k) rho (G_j x G_k)^dagger.
inline DensityMatrix apply_local(const DensityMatrix& rho, const KrausChannel& on_a,
                                 const KrausChannel& on_b) {
  ComplexMatrix out(4, 4);
  for (const auto& ga : on_a.ops()) {
    for (const auto& gb : on_b.ops()) {
      const auto g = tensor_product(ga, gb);
      out += g * rho.matrix() * g.adjoint();
    }
  }
  out = (out + out.adjoint()) * Complex(0.5);
  return DensityMatrix(out);
}

}  // namespace qcorr
