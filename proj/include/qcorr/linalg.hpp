#pragma once

// Dense complex linear algebra for one- and two-qubit operators.
//
// Matrices are at most 4x4 and live on the stack (Eigen fixed-max storage).
// All entropies are in bits.

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcorr/errors.hpp"

namespace qcorr {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 4;

class ComplexMatrix {
 public:
  using Storage = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                Eigen::RowMajor, kMaxDim, kMaxDim>;

  ComplexMatrix() : ComplexMatrix(2, 2) {}

  ComplexMatrix(int rows, int cols) {
    check_dims(rows, cols);
    data_ = Storage::Zero(rows, cols);
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    check_dims(r, c);
    data_ = Storage::Zero(r, c);
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != c) {
        throw DimensionError("ragged initializer for ComplexMatrix");
      }
      int j = 0;
      for (const auto& v : row) data_(i, j++) = v;
      ++i;
    }
  }

  template <typename Derived>
  explicit ComplexMatrix(const Eigen::MatrixBase<Derived>& m) {
    check_dims(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    data_ = m.template cast<Complex>();
  }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    m.data_.setIdentity();
    return m;
  }

  static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

  [[nodiscard]] int rows() const { return static_cast<int>(data_.rows()); }
  [[nodiscard]] int cols() const { return static_cast<int>(data_.cols()); }
  [[nodiscard]] bool is_square() const { return rows() == cols(); }

  [[nodiscard]] Complex at(int r, int c) const {
    check_index(r, c);
    return data_(r, c);
  }
  Complex& at(int r, int c) {
    check_index(r, c);
    return data_(r, c);
  }
  Complex operator()(int r, int c) const { return at(r, c); }
  Complex& operator()(int r, int c) { return at(r, c); }

  [[nodiscard]] const Storage& eigen() const { return data_; }

  [[nodiscard]] ComplexMatrix adjoint() const { return ComplexMatrix(data_.adjoint().eval()); }

  [[nodiscard]] Complex trace() const {
    if (!is_square()) throw DimensionError("trace of a non-square matrix");
    return data_.trace();
  }

  // Largest absolute entry-wise difference; shapes must agree.
  [[nodiscard]] double max_abs_diff(const ComplexMatrix& other) const {
    require_same_shape(other, "max_abs_diff");
    return (data_ - other.data_).cwiseAbs().maxCoeff();
  }

  [[nodiscard]] double hermiticity_defect() const {
    if (!is_square()) throw DimensionError("hermiticity of a non-square matrix");
    return (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "operator+");
    data_ += o.data_;
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o, "operator-");
    data_ -= o.data_;
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    data_ *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
      throw DimensionError("matrix product with incompatible shapes " + a.shape() + " * " +
                           b.shape());
    }
    return ComplexMatrix((a.data_ * b.data_).eval());
  }

  [[nodiscard]] std::string shape() const {
    return std::to_string(rows()) + "x" + std::to_string(cols());
  }

 private:
  static void check_dims(int rows, int cols) {
    if (rows < 1 || cols < 1 || rows > kMaxDim || cols > kMaxDim) {
      throw DimensionError("ComplexMatrix dimensions must lie in [1, 4], got " +
                           std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  void check_index(int r, int c) const {
    if (r < 0 || c < 0 || r >= rows() || c >= cols()) {
      throw DimensionError("index (" + std::to_string(r) + ", " + std::to_string(c) +
                           ") out of range for " + shape() + " matrix");
    }
  }
  void require_same_shape(const ComplexMatrix& o, const char* what) const {
    if (rows() != o.rows() || cols() != o.cols()) {
      throw DimensionError(std::string(what) + ": shape mismatch " + shape() + " vs " +
                           o.shape());
    }
  }

  Storage data_;
};

// Pauli matrices in the order (I, x, y, z).
inline ComplexMatrix pauli(int k) {
  using namespace std::complex_literals;
  switch (k) {
    case 0: return ComplexMatrix::identity(2);
    case 1: return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
    case 2: return ComplexMatrix{{0.0, -1i}, {1i, 0.0}};
    case 3: return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}};
    default: throw DimensionError("Pauli index must be 0..3, got " + std::to_string(k));
  }
}

inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int r = a.rows() * b.rows();
  const int c = a.cols() * b.cols();
  ComplexMatrix out(r, c);  // throws when the product exceeds 4x4
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Complex aij = a.eigen()(i, j);
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b.eigen()(k, l);
    }
  return out;
}

enum class Subsystem { A, B };

// Reduced operator of a 4x4 two-qubit operator; `keep` names the surviving qubit.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw DimensionError("partial_trace expects a 4x4 matrix, got " + rho.shape());
  }
  const auto& m = rho.eigen();
  ComplexMatrix out(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Complex s{0.0, 0.0};
      for (int k = 0; k < 2; ++k) {
        s += keep == Subsystem::A ? m(2 * i + k, 2 * j + k) : m(2 * k + i, 2 * k + j);
      }
      out(i, j) = s;
    }
  return out;
}

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kEigenClamp = 1e-10;

struct EigenDecomposition {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column i pairs with values[i]
};

inline EigenDecomposition hermitian_eigen(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitian_eigen on non-square " + m.shape());
  const double defect = m.hermiticity_defect();
  if (defect > kHermitianTolerance) {
    throw PreconditionError("matrix is not Hermitian: max |M - M^dagger| = " +
                            std::to_string(defect));
  }
  using Dyn = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
  const Dyn sym = (0.5 * (m.eigen() + m.eigen().adjoint())).eval();
  Eigen::SelfAdjointEigenSolver<Dyn> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw PreconditionError("Hermitian eigensolver failed to converge");
  }
  const int n = m.rows();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto& ev = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ev(a) > ev(b); });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (int c = 0; c < n; ++c) {
    out.values[c] = ev(order[c]);
    for (int r = 0; r < n; ++r) out.vectors(r, c) = solver.eigenvectors()(r, order[c]);
  }
  return out;
}

inline constexpr double kProbabilityClamp = 1e-12;
inline constexpr double kNormalizationTolerance = 1e-9;

// -sum p log2 p with 0 log 0 = 0.
inline double shannon_entropy(std::span<const double> p) {
  double total = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < -kProbabilityClamp) {
      throw DistributionError("probability entry " + std::to_string(v) + " is negative");
    }
    total += std::max(v, 0.0);
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw DistributionError("probabilities sum to " + std::to_string(total));
  }
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

inline double shannon_entropy(std::initializer_list<double> p) {
  return shannon_entropy(std::span<const double>(p.begin(), p.size()));
}

// Spectrum of a density operator after clamping noise-level negatives and
// renormalizing. Throws NotAStateError for genuinely negative eigenvalues.
inline std::vector<double> state_spectrum(const ComplexMatrix& rho) {
  auto values = hermitian_eigen(rho).values;
  double total = 0.0;
  for (double& v : values) {
    if (v < -kEigenClamp) {
      throw NotAStateError("negative eigenvalue " + std::to_string(v));
    }
    v = std::max(v, 0.0);
    total += v;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw NotAStateError("trace is " + std::to_string(total) + ", expected 1");
  }
  for (double& v : values) v /= total;
  return values;
}

inline double von_neumann_entropy(const ComplexMatrix& rho) {
  const auto spectrum = state_spectrum(rho);
  return shannon_entropy(spectrum);
}

}  // namespace qcorr
