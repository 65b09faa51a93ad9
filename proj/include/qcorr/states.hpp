#pragma once

// Two-qubit density matrices: validation, Fano (Bloch + correlation tensor)
// form, local-unitary canonicalization and the standard state families.
//
// Basis order is |00>, |01>, |10>, |11>; Pauli order is (x, y, z).

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "qcorr/errors.hpp"
#include "qcorr/linalg.hpp"

namespace qcorr {

inline constexpr double kStateTolerance = 1e-10;

class DensityMatrix {
 public:
  // Validates shape, hermiticity, unit trace and positivity.
  explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
    if (mat_.rows() != 4 || mat_.cols() != 4) {
      throw DimensionError("two-qubit density matrix must be 4x4, got " + mat_.shape());
    }
    const double defect = mat_.hermiticity_defect();
    if (defect > kStateTolerance) {
      throw NotAStateError("density matrix not Hermitian (defect " + std::to_string(defect) +
                           ")");
    }
    const double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > kStateTolerance) {
      throw NotAStateError("density matrix trace is " + std::to_string(tr));
    }
    min_eigenvalue_ = hermitian_eigen(mat_).values.back();
    if (min_eigenvalue_ < -kStateTolerance) {
      throw NotAStateError("density matrix has negative eigenvalue " +
                           std::to_string(min_eigenvalue_));
    }
  }

  // Projector onto a normalized 4x1 ket.
  static DensityMatrix pure(const ComplexMatrix& ket) {
    if (ket.rows() != 4 || ket.cols() != 1) {
      throw DimensionError("pure state expects a 4x1 ket, got " + ket.shape());
    }
    return DensityMatrix(ket * ket.adjoint());
  }

  [[nodiscard]] const ComplexMatrix& matrix() const { return mat_; }
  [[nodiscard]] double min_eigenvalue() const { return min_eigenvalue_; }
  [[nodiscard]] double purity() const { return (mat_ * mat_).trace().real(); }

 private:
  ComplexMatrix mat_;
  double min_eigenvalue_ = 0.0;
};

// rho = 1/4 (I + a.sigma x I + I x b.sigma + sum_nm T_nm sigma_n x sigma_m)
struct FanoForm {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  Eigen::Matrix3d T = Eigen::Matrix3d::Zero();
};

inline ComplexMatrix fano_matrix(const FanoForm& f) {
  ComplexMatrix m = tensor_product(pauli(0), pauli(0));
  for (int n = 0; n < 3; ++n) {
    m += tensor_product(pauli(n + 1), pauli(0)) * Complex(f.a(n));
    m += tensor_product(pauli(0), pauli(n + 1)) * Complex(f.b(n));
    for (int k = 0; k < 3; ++k) {
      if (f.T(n, k) != 0.0) m += tensor_product(pauli(n + 1), pauli(k + 1)) * Complex(f.T(n, k));
    }
  }
  return m * Complex(0.25);
}

inline DensityMatrix from_fano(const FanoForm& f) { return DensityMatrix(fano_matrix(f)); }

inline FanoForm extract_fano(const DensityMatrix& rho) {
  const auto expect = [&](int i, int j) {
    return (rho.matrix() * tensor_product(pauli(i), pauli(j))).trace().real();
  };
  FanoForm f;
  for (int n = 0; n < 3; ++n) {
    f.a(n) = expect(n + 1, 0);
    f.b(n) = expect(0, n + 1);
    for (int k = 0; k < 3; ++k) f.T(n, k) = expect(n + 1, k + 1);
  }
  return f;
}

// Bell kets: |Phi+-> = (|00> +- |11>)/sqrt2, |Psi+-> = (|01> +- |10>)/sqrt2.
enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline ComplexMatrix bell_ket(BellState s) {
  const double h = std::numbers::sqrt2 / 2.0;
  ComplexMatrix k(4, 1);
  switch (s) {
    case BellState::PhiPlus: k(0, 0) = h; k(3, 0) = h; break;
    case BellState::PhiMinus: k(0, 0) = h; k(3, 0) = -h; break;
    case BellState::PsiPlus: k(1, 0) = h; k(2, 0) = h; break;
    case BellState::PsiMinus: k(1, 0) = h; k(2, 0) = -h; break;
  }
  return k;
}

inline DensityMatrix bell_projector(BellState s) { return DensityMatrix::pure(bell_ket(s)); }

// Diagonal correlation tensor of a state with maximally mixed marginals.
//
// Bell weights follow from c_n = <sigma_n x sigma_n> on each Bell state:
// Phi+ -> (1,-1,1), Phi- -> (-1,1,1), Psi+ -> (1,1,-1), Psi- -> (-1,-1,-1).
class BellDiagonalCoeffs {
 public:
  static constexpr double kWeightTolerance = 1e-12;

  BellDiagonalCoeffs(double c1, double c2, double c3) : c_{c1, c2, c3} {
    for (double v : c_) {
      if (!std::isfinite(v) || std::abs(v) > 1.0 + kWeightTolerance) {
        throw NotAStateError("Bell-diagonal coefficient " + std::to_string(v) +
                             " outside [-1, 1]");
      }
    }
    for (double w : weights()) {
      if (w < -kWeightTolerance) {
        throw NotAStateError("Bell-diagonal weight " + std::to_string(w) + " is negative");
      }
    }
  }

  [[nodiscard]] double c1() const { return c_[0]; }
  [[nodiscard]] double c2() const { return c_[1]; }
  [[nodiscard]] double c3() const { return c_[2]; }

  [[nodiscard]] double lambda_phi_plus() const { return 0.25 * (1 + c_[0] - c_[1] + c_[2]); }
  [[nodiscard]] double lambda_phi_minus() const { return 0.25 * (1 - c_[0] + c_[1] + c_[2]); }
  [[nodiscard]] double lambda_psi_plus() const { return 0.25 * (1 + c_[0] + c_[1] - c_[2]); }
  [[nodiscard]] double lambda_psi_minus() const { return 0.25 * (1 - c_[0] - c_[1] - c_[2]); }

  // Ordered as (Phi+, Phi-, Psi+, Psi-).
  [[nodiscard]] std::array<double, 4> weights() const {
    return {lambda_phi_plus(), lambda_phi_minus(), lambda_psi_plus(), lambda_psi_minus()};
  }

  // max(|c1|, |c2|, |c3|)
  [[nodiscard]] double max_abs() const {
    return std::max({std::abs(c_[0]), std::abs(c_[1]), std::abs(c_[2])});
  }

 private:
  std::array<double, 3> c_;
};

inline DensityMatrix bell_diagonal(const BellDiagonalCoeffs& c) {
  constexpr std::array kOrder{BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus,
                              BellState::PsiMinus};
  const auto w = c.weights();
  ComplexMatrix m(4, 4);
  for (std::size_t i = 0; i < kOrder.size(); ++i) {
    const auto ket = bell_ket(kOrder[i]);
    m += (ket * ket.adjoint()) * Complex(std::max(w[i], 0.0));
  }
  return DensityMatrix(m);
}

// beta |psi-><psi-| + (1 - beta) I/4, admissible for beta in [-1/3, 1].
inline DensityMatrix werner(double beta) {
  constexpr double tol = 1e-12;
  if (!std::isfinite(beta)) throw NotAStateError("Werner parameter must be finite");
  if (beta < -1.0 / 3.0 - tol) {
    throw NotAStateError("eigenvalue (1 + 3 beta)/4 = " + std::to_string((1 + 3 * beta) / 4) +
                         " is negative");
  }
  if (beta > 1.0 + tol) {
    throw NotAStateError("eigenvalue (1 - beta)/4 = " + std::to_string((1 - beta) / 4) +
                         " is negative");
  }
  const auto psi = bell_ket(BellState::PsiMinus);
  ComplexMatrix m = (psi * psi.adjoint()) * Complex(beta) +
                    ComplexMatrix::identity(4) * Complex((1.0 - beta) / 4.0);
  return DensityMatrix(m);
}

// cos(theta)|00> + sin(theta)|11>; correlation tensor diag(sin 2theta, -sin 2theta, 1).
inline DensityMatrix schmidt_pure(double theta) {
  if (!std::isfinite(theta)) throw ParameterError("Schmidt angle must be finite");
  ComplexMatrix ket(4, 1);
  ket(0, 0) = std::cos(theta);
  ket(3, 0) = std::sin(theta);
  return DensityMatrix::pure(ket);
}

inline DensityMatrix product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b) {
  return DensityMatrix(tensor_product(rho_a, rho_b));
}

inline DensityMatrix apply_local_unitaries(const DensityMatrix& rho, const ComplexMatrix& u1,
                                           const ComplexMatrix& u2) {
  const auto u = tensor_product(u1, u2);
  ComplexMatrix m = u * rho.matrix() * u.adjoint();
  // Round-off from the product can leave a ~1e-17 anti-Hermitian part.
  m = (m + m.adjoint()) * Complex(0.5);
  return DensityMatrix(m);
}

// SU(2) element U with U (n.sigma) U^dagger = (O n).sigma for a proper rotation O.
inline ComplexMatrix rotation_to_unitary(const Eigen::Matrix3d& rotation) {
  using namespace std::complex_literals;
  const Eigen::Quaterniond q(rotation);
  ComplexMatrix u = pauli(0) * Complex(q.w());
  u -= pauli(1) * (1i * q.x());
  u -= pauli(2) * (1i * q.y());
  u -= pauli(3) * (1i * q.z());
  return u;
}

struct TensorDiagonalization {
  DensityMatrix state;         // (U1 x U2) rho (U1 x U2)^dagger
  ComplexMatrix u1, u2;        // local unitaries
  Eigen::Matrix3d o1, o2;      // matching proper rotations, T' = O1 T O2^T
};

// Brings the correlation tensor to diagonal form with local unitaries.
// Uses T = U S V^T and flips one column of U (resp. V) together with the
// sign of the matching singular value when det < 0, so O1 = U^T and O2 = V^T
// are proper rotations. |diag T'| are the singular values of T.
inline TensorDiagonalization diagonalize_correlation_tensor(const DensityMatrix& rho) {
  const FanoForm f = extract_fano(rho);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(f.T, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d u = svd.matrixU();
  Eigen::Matrix3d v = svd.matrixV();
  if (u.determinant() < 0) u.col(2) *= -1.0;
  if (v.determinant() < 0) v.col(2) *= -1.0;
  const Eigen::Matrix3d o1 = u.transpose();
  const Eigen::Matrix3d o2 = v.transpose();
  const auto u1 = rotation_to_unitary(o1);
  const auto u2 = rotation_to_unitary(o2);
  return {apply_local_unitaries(rho, u1, u2), u1, u2, o1, o2};
}

}  // namespace qcorr
