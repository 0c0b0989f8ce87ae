#include "repeater/effective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace repeater {

namespace {

bool finite_nonzero(double x) { return std::isfinite(x) && x != 0.0; }

}  // namespace

TwoModeParams::TwoModeParams(double g2, double g3, double delta2, double delta3)
    : g2_(g2), g3_(g3), delta2_(delta2), delta3_(delta3) {
  if (!(std::isfinite(g2) && g2 > 0.0) || !(std::isfinite(g3) && g3 > 0.0)) {
    throw ConfigInvalid("TwoModeParams: couplings must be positive");
  }
  if (!finite_nonzero(delta2) || !finite_nonzero(delta3)) {
    throw ConfigInvalid("TwoModeParams: detunings must be non-zero");
  }
}

double TwoModeParams::omega_bar23() const {
  const double inv = 0.5 * (1.0 / delta2_ + 1.0 / delta3_);
  return inv == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv;
}

double TwoModeParams::f() const {
  const double d = delta23();
  const double g = g23();
  return std::sqrt(d * d + 4.0 * g * g);
}

bool TwoModeParams::dispersive_validity() const {
  return std::min(std::abs(delta2_) / g2_, std::abs(delta3_) / g3_) >= 10.0;
}

SingleModeParams::SingleModeParams(double g, double delta) : g_(g), delta_(delta) {
  if (!(std::isfinite(g) && g > 0.0)) throw ConfigInvalid("SingleModeParams: coupling must be positive");
  if (!finite_nonzero(delta)) throw ConfigInvalid("SingleModeParams: detuning must be non-zero");
}

ComplexMatrix effective_unitary(const TwoModeParams& p, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("effective_unitary: t must be >= 0");
  const double l2 = p.lambda2();
  const double l3 = p.lambda3();
  const double d = p.delta23();
  const double g = p.g23();
  const double f = p.f();
  const double c = std::cos(0.5 * f * t);
  // sin(f t / 2) / f, finite as f -> 0
  const double s_over_f = f > 0.0 ? std::sin(0.5 * f * t) / f : 0.5 * t;
  const Complex i(0.0, 1.0);

  const Complex row2 = std::exp(-i * l2 * t) * std::exp(i * d * t / 2.0);
  const Complex row3 = std::exp(-i * l3 * t) * std::exp(-i * d * t / 2.0);
  const Complex off = -2.0 * i * g * s_over_f;

  ComplexMatrix u(4, 4);
  u(0, 0) = std::exp(-i * (l2 + l3) * t);
  u(1, 1) = row2 * (c - i * d * s_over_f);
  u(1, 2) = row2 * off;
  u(2, 1) = row3 * off;
  u(2, 2) = row3 * (c + i * d * s_over_f);
  u(3, 3) = 1.0;
  return u;
}

ComplexMatrix qed_pair_unitary(const SingleModeParams& p, double duration) {
  if (!(duration >= 0.0)) throw std::invalid_argument("qed_pair_unitary: duration must be >= 0");
  const Complex phase = std::exp(Complex(0.0, -2.0 * p.lambda_prime() * duration));
  ComplexMatrix u(4, 4);
  u(0, 0) = phase;
  u(1, 1) = 0.5 * (phase + 1.0);
  u(2, 2) = 0.5 * (phase + 1.0);
  u(1, 2) = 0.5 * (phase - 1.0);
  u(2, 1) = 0.5 * (phase - 1.0);
  u(3, 3) = 1.0;
  return u;
}

ComplexMatrix qed_pair_hamiltonian(const SingleModeParams& p) {
  const double l = p.lambda_prime();
  ComplexMatrix h(4, 4);
  h(0, 0) = 2.0 * l;
  h(1, 1) = l;
  h(2, 2) = l;
  h(1, 2) = l;
  h(2, 1) = l;
  return h;
}

ComplexMatrix two_mode_hamiltonian_resonant(const TwoModeParams& p) {
  if (p.delta2() != p.delta3()) {
    throw std::invalid_argument("two_mode_hamiltonian_resonant: requires delta2 == delta3");
  }
  ComplexMatrix h(4, 4);
  h(0, 0) = p.lambda2() + p.lambda3();
  h(1, 1) = p.lambda2();
  h(2, 2) = p.lambda3();
  h(1, 2) = p.g23();
  h(2, 1) = p.g23();
  return h;
}

}  // namespace repeater
