#include "satd/numkit.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "satd/errors.hpp"

namespace satd {
namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void check_dim(std::size_t dim) {
  if (dim != 2 && dim != 4) {
    throw ContractError("matrix dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw ContractError("matrix dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                        std::to_string(b.dim()));
  }
}

// exp(-i dt (c0 I + a.sigma)) for a Hermitian 2x2 block.
ComplexMatrix expm_skew_2x2(const ComplexMatrix& h, double dt) {
  const double c0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double az = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const double ax = h(1, 0).real();
  const double ay = h(1, 0).imag();
  const double norm = std::sqrt(ax * ax + ay * ay + az * az);
  const double angle = norm * dt;
  const double c = std::cos(angle);
  // sin(angle)/norm, finite as norm -> 0
  const double s_over = norm > 1e-300 ? std::sin(angle) / norm : dt;
  const Complex phase = std::polar(1.0, -c0 * dt);
  ComplexMatrix u(2);
  u(0, 0) = phase * Complex(c, -s_over * az);
  u(1, 1) = phase * Complex(c, s_over * az);
  // -i s (ax sx + ay sy): off-diagonal (0,1) = -i s (ax - i ay)
  u(0, 1) = phase * (-kI * s_over * Complex(ax, -ay));
  u(1, 0) = phase * (-kI * s_over * Complex(ax, ay));
  return u;
}

bool is_block_diagonal(const ComplexMatrix& m) {
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 2; c < 4; ++c) {
      if (m(r, c) != Complex{} || m(c, r) != Complex{}) return false;
    }
  }
  return true;
}

Eigen::Matrix4cd to_eigen(const ComplexMatrix& m) {
  Eigen::Matrix4cd e;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
  }
  return e;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<Complex> row_major) : dim_(dim) {
  check_dim(dim);
  if (row_major.size() != dim * dim) {
    throw ContractError("expected " + std::to_string(dim * dim) + " entries, got " +
                        std::to_string(row_major.size()));
  }
  std::copy(row_major.begin(), row_major.end(), a_.begin());
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) m(r, c) = std::conj((*this)(c, r));
  }
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

Complex ComplexMatrix::determinant() const {
  if (dim_ == 2) return a_[0] * a_[3] - a_[1] * a_[2];
  // Gaussian elimination with partial pivoting.
  std::array<Complex, 16> m = a_;
  Complex det = 1.0;
  for (std::size_t k = 0; k < 4; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < 4; ++r) {
      if (std::abs(m[r * 4 + k]) > std::abs(m[piv * 4 + k])) piv = r;
    }
    if (m[piv * 4 + k] == Complex{}) return Complex{};
    if (piv != k) {
      for (std::size_t c = 0; c < 4; ++c) std::swap(m[k * 4 + c], m[piv * 4 + c]);
      det = -det;
    }
    det *= m[k * 4 + k];
    for (std::size_t r = k + 1; r < 4; ++r) {
      const Complex f = m[r * 4 + k] / m[k * 4 + k];
      for (std::size_t c = k; c < 4; ++c) m[r * 4 + c] -= f * m[k * 4 + c];
    }
  }
  return det;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_ * dim_; ++i) s += std::norm(a_[i]);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  for (std::size_t i = 0; i < dim_ * dim_; ++i) {
    if (!std::isfinite(a_[i].real()) || !std::isfinite(a_[i].imag())) return false;
  }
  return true;
}

bool ComplexMatrix::is_hermitian(double tolerance) const {
  return frobenius_distance(*this, adjoint()) < tolerance;
}

bool ComplexMatrix::is_unitary(double tolerance) const {
  return frobenius_distance(adjoint() * *this, identity(dim_)) < tolerance;
}

ComplexMatrix ComplexMatrix::block(std::size_t offset) const {
  ComplexMatrix b(2);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) b(r, c) = (*this)(offset + r, offset + c);
  }
  return b;
}

void ComplexMatrix::set_block(std::size_t offset, const ComplexMatrix& b) {
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) (*this)(offset + r, offset + c) = b(r, c);
  }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  check_same_dim(*this, o);
  for (std::size_t i = 0; i < dim_ * dim_; ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  check_same_dim(*this, o);
  for (std::size_t i = 0; i < dim_ * dim_; ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (std::size_t i = 0; i < dim_ * dim_; ++i) a_[i] *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b);
  const std::size_t n = a.dim();
  ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) m(r, c) += ark * b(k, c);
    }
  }
  return m;
}

namespace pauli {
ComplexMatrix x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix y() { return ComplexMatrix(2, {0.0, -kI, kI, 0.0}); }
ComplexMatrix z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
}  // namespace pauli

StateVector::StateVector(std::size_t dim) : dim_(dim) { check_dim(dim); }

StateVector::StateVector(std::initializer_list<Complex> amplitudes) : dim_(amplitudes.size()) {
  check_dim(dim_);
  std::copy(amplitudes.begin(), amplitudes.end(), a_.begin());
}

double StateVector::norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += std::norm(a_[i]);
  return std::sqrt(s);
}

bool StateVector::is_normalized(double tolerance) const { return std::abs(norm() - 1.0) < tolerance; }

StateVector StateVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw InputError("cannot normalize a zero state vector");
  StateVector v(dim_);
  for (std::size_t i = 0; i < dim_; ++i) v.a_[i] = a_[i] / n;
  return v;
}

Complex StateVector::inner(const StateVector& other) const {
  if (dim_ != other.dim_) throw ContractError("state dimension mismatch");
  Complex s{};
  for (std::size_t i = 0; i < dim_; ++i) s += std::conj(a_[i]) * other.a_[i];
  return s;
}

ComplexMatrix StateVector::projector() const {
  ComplexMatrix p(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) p(r, c) = a_[r] * std::conj(a_[c]);
  }
  return p;
}

StateVector operator*(const ComplexMatrix& m, const StateVector& v) {
  if (m.dim() != v.dim()) throw ContractError("matrix/state dimension mismatch");
  StateVector out(v.dim());
  for (std::size_t r = 0; r < v.dim(); ++r) {
    Complex s{};
    for (std::size_t c = 0; c < v.dim(); ++c) s += m(r, c) * v[c];
    out[r] = s;
  }
  return out;
}

DensityMatrix::DensityMatrix(const ComplexMatrix& rho) : rho_(rho) {
  if (!rho.all_finite()) throw InputError("density matrix has non-finite entries");
  if (!rho.is_hermitian(tol::kStructural)) throw InputError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol::kAccumulated) {
    throw InputError("density matrix trace differs from 1 by " + std::to_string(std::abs(rho.trace() - 1.0)));
  }
  const auto ev = hermitian_eigenvalues(rho);
  if (ev[0] < -tol::kAccumulated) {
    throw InputError("density matrix has negative eigenvalue " + std::to_string(ev[0]));
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) { return DensityMatrix(psi.normalized().projector()); }

double DensityMatrix::expectation(const StateVector& psi) const {
  return psi.inner(rho_ * psi).real();
}

std::array<double, ComplexMatrix::kMaxDim> hermitian_eigenvalues(const ComplexMatrix& h) {
  std::array<double, ComplexMatrix::kMaxDim> ev{};
  if (h.dim() == 2) {
    const double mean = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double half = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double r = std::sqrt(half * half + std::norm(h(0, 1)));
    ev[0] = mean - r;
    ev[1] = mean + r;
    return ev;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(to_eigen(h), Eigen::EigenvaluesOnly);
  for (int i = 0; i < 4; ++i) ev[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return ev;
}

ComplexMatrix expm_skew(const ComplexMatrix& h, double dt) {
  if (!h.all_finite() || !std::isfinite(dt)) throw InputError("expm_skew: non-finite input");
  if (!h.is_hermitian(tol::kStructural)) throw ContractError("expm_skew: generator is not Hermitian");
  if (h.dim() == 2) return expm_skew_2x2(h, dt);
  if (is_block_diagonal(h)) {
    ComplexMatrix u(4);
    u.set_block(0, expm_skew_2x2(h.block(0), dt));
    u.set_block(2, expm_skew_2x2(h.block(2), dt));
    return u;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(to_eigen(h));
  const Eigen::Matrix4cd& v = solver.eigenvectors();
  Eigen::Vector4cd phases;
  for (int i = 0; i < 4; ++i) phases(i) = std::polar(1.0, -solver.eigenvalues()(i) * dt);
  const Eigen::Matrix4cd e = v * phases.asDiagonal() * v.adjoint();
  ComplexMatrix u(4);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) u(r, c) = e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }
  return u;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).frobenius_norm(); }

double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0};
  return frobenius_distance(a, b * phase);
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-12, &err);
  if (!std::isfinite(v) || err > abs_tol) {
    throw ConvergenceError("quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
                           "] stopped at error estimate " + sci(err));
  }
  return v;
}

Extremum maximize(const std::function<double(double)>& f, double a, double b, int n) {
  if (n < 3 || !(b > a)) throw ContractError("maximize: need n >= 3 and b > a");
  const double h = (b - a) / (n - 1);
  int best = 0;
  double best_v = f(a);
  for (int i = 1; i < n; ++i) {
    const double v = f(a + i * h);
    if (v > best_v) best_v = v, best = i;
  }
  Extremum out{a + best * h, best_v};
  const double lo = a + std::max(best - 1, 0) * h;
  const double hi = a + std::min(best + 1, n - 1) * h;
  auto r = boost::math::tools::brent_find_minima([&](double t) { return -f(t); }, lo, hi, 52);
  if (-r.second > out.value) out = {r.first, -r.second};
  return out;
}

}  // namespace satd
