#pragma once

// Closed-form propagators of the dispersive (effective) atom-atom dynamics.
//
// All couplings and detunings are in units of a reference coupling g and all
// times are the dimensionless g*t.

#include "repeater/linalg.hpp"

namespace repeater {

/// Two atoms coupled to a two-mode cavity through a two-photon transition,
/// reduced to an effective exchange interaction in the dispersive limit.
class TwoModeParams {
 public:
  /// Throws ConfigInvalid unless g2, g3 > 0 and the detunings are non-zero and finite.
  TwoModeParams(double g2, double g3, double delta2, double delta3);

  double g2() const { return g2_; }
  double g3() const { return g3_; }
  double delta2() const { return delta2_; }
  double delta3() const { return delta3_; }

  // Stark shifts g_i^2 / Delta_i.
  double lambda2() const { return g2_ * g2_ / delta2_; }
  double lambda3() const { return g3_ * g3_ / delta3_; }
  /// Harmonic-mean detuning; infinite when 1/Delta2 + 1/Delta3 = 0.
  double omega_bar23() const;
  /// Effective exchange coupling g2 g3 / omega_bar23.
  double g23() const { return g2_ * g3_ * 0.5 * (1.0 / delta2_ + 1.0 / delta3_); }
  double delta23() const { return delta2_ - delta3_ + (lambda2() - lambda3()); }
  double f() const;

  /// Advisory: min(|Delta2|/g2, |Delta3|/g3) >= 10. Never enforced.
  bool dispersive_validity() const;

 private:
  double g2_, g3_, delta2_, delta3_;
};

/// Two atoms in a single-mode cavity with common detuning delta.
class SingleModeParams {
 public:
  SingleModeParams(double g, double delta);

  double g() const { return g_; }
  double delta() const { return delta_; }
  double lambda_prime() const { return g_ * g_ / delta_; }

 private:
  double g_, delta_;
};

/// 4x4 propagator of the two-mode effective dynamics from 0 to t in the
/// basis {|ee>, |eg>, |ge>, |gg>}. Throws std::invalid_argument for t < 0.
ComplexMatrix effective_unitary(const TwoModeParams& p, double t);

/// exp(-i H' duration) for H' = lambda' (n4 + n5) + lambda' (s4+ s5- + h.c.).
ComplexMatrix qed_pair_unitary(const SingleModeParams& p, double duration);

/// The effective Hamiltonian generating qed_pair_unitary, for oracle checks.
ComplexMatrix qed_pair_hamiltonian(const SingleModeParams& p);

/// Time-independent effective Hamiltonian for Delta2 == Delta3.
ComplexMatrix two_mode_hamiltonian_resonant(const TwoModeParams& p);

}  // namespace repeater
