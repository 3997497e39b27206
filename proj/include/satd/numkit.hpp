#pragma once

// Dense complex linear algebra for the 2x2 and 4x4 operators used throughout
// the library. Storage is inline (no heap) so matrices are cheap value types.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <functional>
#include <span>

namespace satd {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

namespace tol {
/// Structural checks: Hermiticity, unitarity, normalization of single objects.
inline constexpr double kStructural = 1e-10;
/// Quantities accumulated over a full time evolution.
inline constexpr double kAccumulated = 1e-9;
}  // namespace tol

class ComplexMatrix {
 public:
  static constexpr std::size_t kMaxDim = 4;

  /// Zero matrix; dim must be 2 or 4.
  explicit ComplexMatrix(std::size_t dim = 2);
  /// Row-major entries; the list length must be dim*dim.
  ComplexMatrix(std::size_t dim, std::initializer_list<Complex> row_major);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> entries);

  [[nodiscard]] std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

  [[nodiscard]] ComplexMatrix adjoint() const;
  [[nodiscard]] Complex trace() const;
  [[nodiscard]] Complex determinant() const;
  [[nodiscard]] double frobenius_norm() const;
  [[nodiscard]] bool all_finite() const;
  [[nodiscard]] bool is_hermitian(double tolerance = tol::kStructural) const;
  [[nodiscard]] bool is_unitary(double tolerance = tol::kStructural) const;

  /// Copies the (2x2) block starting at (offset, offset).
  [[nodiscard]] ComplexMatrix block(std::size_t offset) const;
  /// Overwrites the 2x2 block starting at (offset, offset).
  void set_block(std::size_t offset, const ComplexMatrix& b);

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_;
  std::array<Complex, kMaxDim * kMaxDim> a_{};
};

/// Pauli matrices and spin-1/2 operators S = sigma/2.
namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

class StateVector {
 public:
  explicit StateVector(std::size_t dim = 2);
  StateVector(std::initializer_list<Complex> amplitudes);

  [[nodiscard]] std::size_t dim() const { return dim_; }
  Complex& operator[](std::size_t i) { return a_[i]; }
  const Complex& operator[](std::size_t i) const { return a_[i]; }

  [[nodiscard]] double norm() const;
  [[nodiscard]] bool is_normalized(double tolerance = tol::kStructural) const;
  [[nodiscard]] StateVector normalized() const;

  /// <this|other>
  [[nodiscard]] Complex inner(const StateVector& other) const;
  /// |this><this|
  [[nodiscard]] ComplexMatrix projector() const;

  friend StateVector operator*(const ComplexMatrix& m, const StateVector& v);

 private:
  std::size_t dim_;
  std::array<Complex, ComplexMatrix::kMaxDim> a_{};
};

/// Hermitian, unit-trace, positive semidefinite operator. Always validated on
/// construction.
class DensityMatrix {
 public:
  /// Throws InputError if rho violates the density-matrix invariants.
  explicit DensityMatrix(const ComplexMatrix& rho);
  static DensityMatrix pure(const StateVector& psi);

  [[nodiscard]] const ComplexMatrix& matrix() const { return rho_; }
  [[nodiscard]] std::size_t dim() const { return rho_.dim(); }
  [[nodiscard]] Complex operator()(std::size_t r, std::size_t c) const { return rho_(r, c); }
  /// <psi|rho|psi>
  [[nodiscard]] double expectation(const StateVector& psi) const;

 private:
  ComplexMatrix rho_;
};

/// Eigenvalues of a Hermitian matrix in ascending order (first dim entries used).
std::array<double, ComplexMatrix::kMaxDim> hermitian_eigenvalues(const ComplexMatrix& h);

/// exp(-i H dt) for Hermitian H. Closed Pauli form for 2x2 (and for each block of
/// a block-diagonal 4x4), Hermitian eigendecomposition otherwise.
ComplexMatrix expm_skew(const ComplexMatrix& h, double dt);

/// ||A - B||_F.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// min over global phase p of ||A - e^{ip} B||_F.
double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Adaptive Gauss-Kronrod integral of f over [a, b]. Throws ConvergenceError
/// when the error estimate stays above abs_tol.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-10);

struct Extremum {
  double arg;
  double value;
};

/// Maximum of f on [a, b]: best of a uniform n-point grid, then Brent refinement
/// on the bracketing cells.
Extremum maximize(const std::function<double(double)>& f, double a, double b, int n);

}  // namespace satd
