#include "repeater/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace repeater {

namespace {

constexpr double kBoundaryTol = 1e-12;

// atom index bits: first atom is the high bit; bit set means ground.
bool excited(std::size_t atoms, int which) { return ((atoms >> (1 - which)) & 1u) == 0; }

std::size_t flip(std::size_t atoms, int which) { return atoms ^ (std::size_t{1} << (1 - which)); }

int excitations(std::size_t atoms) { return (excited(atoms, 0) ? 1 : 0) + (excited(atoms, 1) ? 1 : 0); }

void validate(const FullSystemBasis& b) {
  if (b.n_a_max < 0 || (b.kind == CavityKind::TwoMode && b.n_b_max < 0)) {
    throw ConfigInvalid("FullSystemBasis: negative cutoff");
  }
  if (b.dimension() > 64) throw DimensionMismatch("FullSystemBasis: dimension exceeds 64");
}

}  // namespace

TwoModeParams OracleParams::two_mode() const {
  return TwoModeParams(g_first, g_second, omega_first - (omega + omega_prime),
                       omega_second - (omega + omega_prime));
}

SingleModeParams OracleParams::single_mode() const {
  if (omega_first != omega_second || g_first != g_second) {
    throw ConfigInvalid("single-mode oracle requires equal atomic frequencies and couplings");
  }
  return SingleModeParams(g_first, omega_first - omega);
}

ComplexMatrix build_free_hamiltonian(const OracleParams& p, const FullSystemBasis& basis) {
  validate(basis);
  ComplexMatrix h(basis.dimension(), basis.dimension());
  const double w_atoms[2] = {p.omega_first, p.omega_second};
  for (std::size_t atoms = 0; atoms < 4; ++atoms)
    for (int na = 0; na <= basis.n_a_max; ++na)
      for (int nb = 0; nb < basis.modes_b(); ++nb) {
        double e = p.omega * na;
        if (basis.kind == CavityKind::TwoMode) e += p.omega_prime * nb;
        for (int i = 0; i < 2; ++i) e += 0.5 * w_atoms[i] * (excited(atoms, i) ? 1.0 : -1.0);
        const auto k = basis.index(atoms, na, nb);
        h(k, k) = e;
      }
  return h;
}

ComplexMatrix build_full_hamiltonian(const OracleParams& p, const FullSystemBasis& basis) {
  ComplexMatrix h = build_free_hamiltonian(p, basis);
  const double g[2] = {p.g_first, p.g_second};
  const bool two_mode = basis.kind == CavityKind::TwoMode;
  // Emission terms g_i a+ (b+) s-_i; absorption added as the adjoint entry.
  for (std::size_t atoms = 0; atoms < 4; ++atoms)
    for (int i = 0; i < 2; ++i) {
      if (!excited(atoms, i)) continue;
      const std::size_t lowered = flip(atoms, i);
      for (int na = 0; na < basis.n_a_max; ++na)
        for (int nb = 0; nb < basis.modes_b(); ++nb) {
          if (two_mode && nb >= basis.n_b_max) continue;
          const int nb_out = two_mode ? nb + 1 : nb;
          double amp = g[i] * std::sqrt(static_cast<double>(na + 1));
          if (two_mode) amp *= std::sqrt(static_cast<double>(nb + 1));
          const auto from = basis.index(atoms, na, nb);
          const auto to = basis.index(lowered, na + 1, nb_out);
          h(to, from) += amp;
          h(from, to) += amp;
        }
    }
  return h;
}

ComplexMatrix conserved_charge(const FullSystemBasis& basis, bool mode_b) {
  validate(basis);
  ComplexMatrix n(basis.dimension(), basis.dimension());
  for (std::size_t atoms = 0; atoms < 4; ++atoms)
    for (int na = 0; na <= basis.n_a_max; ++na)
      for (int nb = 0; nb < basis.modes_b(); ++nb) {
        const auto k = basis.index(atoms, na, nb);
        n(k, k) = (mode_b ? nb : na) + excitations(atoms);
      }
  return n;
}

OracleResult oracle_reduced_propagation(const OracleParams& p, const FullSystemBasis& basis, double t,
                                        const StateVector& initial_atoms) {
  if (initial_atoms.dim() != 4) throw DimensionMismatch("oracle: expected a two-atom initial state");
  const ComplexMatrix h0 = build_free_hamiltonian(p, basis);
  const ComplexMatrix h = build_full_hamiltonian(p, basis);

  std::vector<Complex> start(basis.dimension());
  for (std::size_t a = 0; a < 4; ++a) start[basis.index(a, 0, 0)] = initial_atoms[a];
  const StateVector psi = matrix_exponential_small(h, t) * StateVector(std::move(start));

  const bool two_mode = basis.kind == CavityKind::TwoMode;
  for (std::size_t a = 0; a < 4; ++a) {
    if (excitations(a) == 0) continue;
    for (int na = 0; na <= basis.n_a_max; ++na)
      for (int nb = 0; nb < basis.modes_b(); ++nb) {
        const bool at_edge = na == basis.n_a_max || (two_mode && nb == basis.n_b_max);
        if (at_edge && std::abs(psi[basis.index(a, na, nb)]) > kBoundaryTol) {
          throw CutoffInsufficient("oracle: population on a truncated Fock state; raise the photon cutoff");
        }
      }
  }

  std::vector<Complex> reduced(4);
  double vacuum = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    const auto k = basis.index(a, 0, 0);
    reduced[a] = std::exp(Complex(0.0, h0(k, k).real() * t)) * psi[k];
    vacuum += std::norm(psi[k]);
  }
  const double total = psi.norm();
  return OracleResult{StateVector(std::move(reduced)), std::max(0.0, total * total - vacuum)};
}

ReducedPropagator oracle_reduced_propagator(const OracleParams& p, const FullSystemBasis& basis, double t) {
  ReducedPropagator out{ComplexMatrix(4, 4), {}};
  for (std::size_t c = 0; c < 4; ++c) {
    const auto r = oracle_reduced_propagation(p, basis, t, StateVector::basis(4, c));
    for (std::size_t row = 0; row < 4; ++row) out.u(row, c) = r.atoms[row];
    out.leakage[c] = r.leakage;
  }
  return out;
}

ComplexMatrix effective_counterpart(const OracleParams& p, CavityKind kind, double t) {
  return kind == CavityKind::TwoMode ? effective_unitary(p.two_mode(), t)
                                     : qed_pair_unitary(p.single_mode(), t);
}

double propagator_deviation(const ComplexMatrix& effective, const ComplexMatrix& reduced) {
  return max_abs_diff_up_to_phase(effective, reduced);
}

}  // namespace repeater
