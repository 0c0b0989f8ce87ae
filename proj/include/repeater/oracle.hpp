#pragma once

// Exact simulation of two atoms and the cavity field in a truncated Fock
// space, used to check the effective propagators.
//
// Two-mode:    H = w a+a + w' b+b + sum_i (w_i/2) sz_i + sum_i g_i (a b s+_i + a+ b+ s-_i)
// Single-mode: H = w a+a + sum_i (w_i/2) sz_i + sum_i g_i (a s+_i + a+ s-_i)
//
// Both conserve (photons in each mode) + (atomic excitations), so a cutoff
// of two photons per mode is exact for at most two atomic excitations.

#include <array>

#include "repeater/effective.hpp"
#include "repeater/linalg.hpp"

namespace repeater {

enum class CavityKind { TwoMode, SingleMode };

/// Frequencies are inputs; detunings are derived from them.
struct OracleParams {
  double omega = 0.0;        // mode a
  double omega_prime = 0.0;  // mode b (two-mode only)
  double omega_first = 0.0;  // first atom
  double omega_second = 0.0; // second atom
  double g_first = 0.0;
  double g_second = 0.0;

  /// Delta_i = w_i - (w + w'). Throws ConfigInvalid if a derived value is invalid.
  TwoModeParams two_mode() const;
  /// delta = w_i - w; requires equal atomic frequencies and couplings.
  SingleModeParams single_mode() const;
};

struct FullSystemBasis {
  CavityKind kind = CavityKind::TwoMode;
  int n_a_max = 2;
  int n_b_max = 2;  // ignored (treated as 0) for a single mode

  int modes_b() const { return kind == CavityKind::TwoMode ? n_b_max + 1 : 1; }
  std::size_t dimension() const { return 4u * static_cast<std::size_t>((n_a_max + 1) * modes_b()); }
  /// atoms: 0..3 in {ee, eg, ge, gg}
  std::size_t index(std::size_t atoms, int n_a, int n_b) const {
    return (atoms * static_cast<std::size_t>(n_a_max + 1) + static_cast<std::size_t>(n_a)) *
               static_cast<std::size_t>(modes_b()) +
           static_cast<std::size_t>(n_b);
  }
};

inline FullSystemBasis default_basis(CavityKind kind) { return FullSystemBasis{kind, 2, 2}; }

ComplexMatrix build_free_hamiltonian(const OracleParams& p, const FullSystemBasis& basis);
ComplexMatrix build_full_hamiltonian(const OracleParams& p, const FullSystemBasis& basis);

/// Total photons in mode a (or b) plus atomic excitations; conserved by H.
ComplexMatrix conserved_charge(const FullSystemBasis& basis, bool mode_b);

struct OracleResult {
  StateVector atoms;     // vacuum-sector amplitudes in the interaction picture (unnormalized)
  double leakage = 0.0;  // population outside the vacuum sector
};

/// Evolves |atoms> (x) |vacuum> under the full Hamiltonian for time t and
/// reads off the vacuum-sector atomic amplitudes, rotated by exp(i H0 t).
/// Throws CutoffInsufficient if population sits on a truncated state that
/// the Hamiltonian would couple upward (|amplitude| > 1e-12).
OracleResult oracle_reduced_propagation(const OracleParams& p, const FullSystemBasis& basis, double t,
                                        const StateVector& initial_atoms);

struct ReducedPropagator {
  ComplexMatrix u;                 // 4x4, columns are reduced images of |ee>, |eg>, |ge>, |gg>
  std::array<double, 4> leakage{};  // per input column
};

ReducedPropagator oracle_reduced_propagator(const OracleParams& p, const FullSystemBasis& basis, double t);

/// Effective counterpart of the reduced propagator: effective_unitary for
/// two modes, qed_pair_unitary for one.
ComplexMatrix effective_counterpart(const OracleParams& p, CavityKind kind, double t);

/// Max-norm distance between oracle and effective propagators after
/// removing a global phase fixed on the effective matrix's largest entry.
double propagator_deviation(const ComplexMatrix& effective, const ComplexMatrix& reduced);

}  // namespace repeater
