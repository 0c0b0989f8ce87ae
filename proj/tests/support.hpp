#pragma once

// Random parameter draws and small brute-force oracles shared by the tests.
// Nothing here calls into the code paths it is used to check.

#include <cmath>
#include <random>

#include "repeater/protocol.hpp"

namespace repeater::testing {

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  /// Non-zero detuning with |value| in [lo, hi] and random sign.
  double detuning(double lo, double hi) { return (coin() ? 1.0 : -1.0) * uniform(lo, hi); }
  bool coin() { return std::bernoulli_distribution(0.5)(rng_); }
  int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  TwoModeParams two_mode() {
    return TwoModeParams(uniform(0.3, 4.0), uniform(0.3, 4.0), detuning(0.5, 25.0), detuning(0.5, 25.0));
  }
  SingleModeParams single_mode() { return SingleModeParams(uniform(0.3, 3.0), detuning(0.5, 10.0)); }
  double time() { return uniform(0.0, 20.0); }

  Complex complex() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

  ComplexMatrix matrix(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = complex();
    return m;
  }

  ComplexMatrix hermitian(std::size_t n) {
    const ComplexMatrix a = matrix(n);
    return (a + a.adjoint()).scaled(0.5);
  }

  StateVector state(std::size_t dim) {
    std::vector<Complex> a(dim);
    for (auto& z : a) z = complex();
    return StateVector(std::move(a)).normalized();
  }

 private:
  std::mt19937_64 rng_;
};

/// exp(-i h t) by scaling and squaring a truncated Taylor series.
inline ComplexMatrix taylor_exponential(const ComplexMatrix& h, double t) {
  const std::size_t n = h.rows();
  ComplexMatrix a = h.scaled(Complex(0.0, -t));
  int squarings = 0;
  while (a.max_abs() * static_cast<double>(n) > 0.25) {
    a = a.scaled(0.5);
    ++squarings;
  }
  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = (term * a).scaled(1.0 / k);
    sum = sum + term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

inline SwapQuery bsm_query(CaseLabel c, BellTarget bell, const TwoModeParams& p, double t) {
  return SwapQuery{.case_label = c, .method = Method::BSM, .bell = bell, .segment = p, .t = t};
}

inline SwapQuery qed_query(CaseLabel c, ProductOutcome o, const TwoModeParams& p, const SingleModeParams& sp,
                           double t, double tau) {
  return SwapQuery{.case_label = c,
                   .method = Method::QED,
                   .qed_outcome = o,
                   .segment = p,
                   .cavity = sp,
                   .t = t,
                   .tau = tau};
}

inline constexpr CaseLabel kPsiPsi{Segment::Psi, Segment::Psi};
inline constexpr CaseLabel kPsiPrime{Segment::Psi, Segment::PsiPrime};
inline constexpr CaseLabel kPrimePsi{Segment::PsiPrime, Segment::Psi};
inline constexpr CaseLabel kPrimePrime{Segment::PsiPrime, Segment::PsiPrime};

}  // namespace repeater::testing
