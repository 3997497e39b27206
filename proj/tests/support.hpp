#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "satd/numkit.hpp"

namespace testing {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kOmega0 = 2.0 * kPi * 3.0;  // 3 MHz

// Random Hermitian matrix with entries of order `scale`.
inline satd::ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  satd::ComplexMatrix h(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    h(r, r) = n(rng);
    for (std::size_t c = r + 1; c < dim; ++c) {
      h(r, c) = {n(rng), n(rng)};
      h(c, r) = std::conj(h(r, c));
    }
  }
  return h;
}

inline satd::StateVector random_state(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> n(0.0, 1.0);
  satd::StateVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = {n(rng), n(rng)};
  return v.normalized();
}

// Random full-rank density matrix: normalized mixture of two random pure states.
inline satd::DensityMatrix random_density(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  const double w = u(rng);
  satd::ComplexMatrix m = w * random_state(rng, 2).projector() + (1.0 - w) * random_state(rng, 2).projector();
  return satd::DensityMatrix(0.5 * (m + m.adjoint()));
}

// Truncated Taylor series of exp(-i H dt), independent of expm_skew.
inline satd::ComplexMatrix taylor_expm(const satd::ComplexMatrix& h, double dt, int terms = 60) {
  const satd::ComplexMatrix a = (-satd::kI * dt) * h;
  satd::ComplexMatrix term = satd::ComplexMatrix::identity(h.dim());
  satd::ComplexMatrix sum = term;
  for (int k = 1; k < terms; ++k) {
    term = (1.0 / k) * (a * term);
    sum += term;
  }
  return sum;
}

inline double max_entry(const satd::ComplexMatrix& m) {
  double v = 0.0;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) v = std::max(v, std::abs(m(r, c)));
  }
  return v;
}

}  // namespace testing
