// Closed-form swap results, written directly in terms of the matrix
// elements U22, U23, U32, U33 of the effective two-mode propagator
// (1-based row/column indices in the basis {ee, eg, ge, gg}).

#include <cmath>
#include <stdexcept>

#include "repeater/protocol.hpp"

namespace repeater {

namespace {

// Below this branch weight the printed state is 0/0.
constexpr double kDegenerateWeight = 1e-28;

struct Elements {
  Complex u22, u23, u32, u33;
  double n_psi;    // |U33|^2 + |U32|^2
  double n_prime;  // |U23|^2 + |U22|^2
};

Elements elements(const TwoModeParams& p, double t) {
  const ComplexMatrix u = effective_unitary(p, t);
  Elements e{u(1, 1), u(1, 2), u(2, 1), u(2, 2), 0.0, 0.0};
  e.n_psi = std::norm(e.u33) + std::norm(e.u32);
  e.n_prime = std::norm(e.u23) + std::norm(e.u22);
  return e;
}

// Two-term (1,8) state x|first> + y|second> with its printed concurrence
// 2|x* y| / (|x|^2 + |y|^2).
struct TwoTerm {
  Complex x, y;
  const char* first;
  const char* second;
};

StateVector two_term_state(const TwoTerm& s) {
  const double n = std::sqrt(std::norm(s.x) + std::norm(s.y));
  return (StateVector::ket(s.first).scaled(s.x) + StateVector::ket(s.second).scaled(s.y)).scaled(1.0 / n);
}

double two_term_concurrence(const TwoTerm& s) {
  return 2.0 * std::abs(std::conj(s.x) * s.y) / (std::norm(s.x) + std::norm(s.y));
}

[[noreturn]] void degenerate(const SwapQuery& q) {
  throw DegenerateFormulaPoint("closed form undefined for case " + to_string(q.case_label) + ", " +
                               q.selector() + " at t=" + std::to_string(q.t));
}

SwapResult make_result(const SwapQuery& q, StateVector state, double probability, double concurrence,
                       const Elements& e) {
  SwapResult r;
  r.state18 = std::move(state);
  r.probability = probability;
  r.concurrence = concurrence;
  r.case_label = q.case_label;
  r.outcome = OutcomeLabel{4, 5, q.selector()};
  r.method = q.method;
  const double herald_left = (q.case_label.left == Segment::Psi ? e.n_psi : e.n_prime) / 4.0;
  const double herald_right = (q.case_label.right == Segment::Psi ? e.n_psi : e.n_prime) / 4.0;
  r.heralding_probability = herald_left * herald_right;
  return r;
}

// A (1,8) branch before normalization: either one of the Bell outputs or a
// two-term state, together with its probability given the heralded inputs.
struct Branch {
  double weight = 0.0;
  bool bell = false;
  BellTarget bell_kind = BellTarget::B;
  TwoTerm terms{};
};

Branch bsm_branch(const SwapQuery& q, const Elements& e) {
  const bool left_psi = q.case_label.left == Segment::Psi;
  const bool right_psi = q.case_label.right == Segment::Psi;
  const bool same = left_psi == right_psi;

  Branch b;
  if (same && q.bell == BellTarget::B) {
    // Bell output |B>_{1,8}; success probability |Ua Ub|^2 / (|Ua|^2 + |Ub|^2)^2
    b.bell = true;
    b.bell_kind = BellTarget::B;
    b.weight = left_psi ? std::norm(e.u33 * e.u32) / (e.n_psi * e.n_psi)
                        : std::norm(e.u23 * e.u22) / (e.n_prime * e.n_prime);
  } else if (!same && q.bell == BellTarget::BPrime) {
    // Bell output (|eg> + e^{-2i phi}|ge>)/sqrt2
    b.bell = true;
    b.bell_kind = BellTarget::BPrime;
    b.weight = (std::norm(e.u33 * e.u23) + std::norm(e.u32 * e.u22)) / (2.0 * e.n_psi * e.n_prime);
  } else if (same) {
    // gamma^1 / gamma^4: U^2 |eg> + U'^2 |ge>
    const Complex x = left_psi ? e.u33 : e.u23;
    const Complex y = left_psi ? e.u32 : e.u22;
    const double n = left_psi ? e.n_psi : e.n_prime;
    b.terms = {x * x, y * y, "eg", "ge"};
    b.weight = (std::norm(x) * std::norm(x) + std::norm(y) * std::norm(y)) / (2.0 * n * n);
  } else if (left_psi) {
    // gamma^2: U22 U33 |ee> + U23 U32 |gg>
    b.terms = {e.u22 * e.u33, e.u23 * e.u32, "ee", "gg"};
    b.weight = (std::norm(b.terms.x) + std::norm(b.terms.y)) / (2.0 * e.n_psi * e.n_prime);
  } else {
    // gamma^3: U32 U23 |ee> + U22 U33 |gg>
    b.terms = {e.u32 * e.u23, e.u22 * e.u33, "ee", "gg"};
    b.weight = (std::norm(b.terms.x) + std::norm(b.terms.y)) / (2.0 * e.n_psi * e.n_prime);
  }
  return b;
}

Branch qed_branch(const SwapQuery& q, const Elements& e) {
  if (!q.cavity) throw ConfigInvalid("QED swap requires single-mode cavity parameters");
  if (!(q.tau >= q.t)) throw std::invalid_argument("QED closed form: requires tau >= t");
  if (q.qed_outcome != ProductOutcome::eg && q.qed_outcome != ProductOutcome::ge) {
    throw std::invalid_argument("QED closed form covers the 'eg' and 'ge' readings only");
  }
  // e^{2i lambda' t} e^{-2i lambda' tau}, evaluated through the duration so that tau == t gives exactly 1.
  const Complex phase = std::exp(Complex(0.0, -2.0 * q.cavity->lambda_prime() * (q.tau - q.t)));

  const bool left_psi = q.case_label.left == Segment::Psi;
  const bool right_psi = q.case_label.right == Segment::Psi;
  Complex pa, pb;
  double norm;
  if (left_psi && right_psi) {
    pa = e.u33 * e.u33;
    pb = e.u32 * e.u32;
    norm = e.n_psi * e.n_psi;
  } else if (!left_psi && !right_psi) {
    pa = e.u23 * e.u23;
    pb = e.u22 * e.u22;
    norm = e.n_prime * e.n_prime;
  } else {
    // the two mixed cases give the same (1,8) states
    pa = e.u23 * e.u33;
    pb = e.u22 * e.u32;
    norm = e.n_psi * e.n_prime;
  }

  const bool eg = q.qed_outcome == ProductOutcome::eg;
  Branch b;
  b.terms = {pa * (eg ? phase - 1.0 : phase + 1.0), pb * (eg ? phase + 1.0 : phase - 1.0), "eg", "ge"};
  b.weight = (std::norm(b.terms.x) + std::norm(b.terms.y)) / (4.0 * norm);
  return b;
}

Branch branch(const SwapQuery& q) {
  const Elements e = elements(q.segment, q.t);
  return q.method == Method::BSM ? bsm_branch(q, e) : qed_branch(q, e);
}

}  // namespace

Complex bell_prime_phase(const TwoModeParams& p, double t) {
  const double f = p.f();
  const double s_over_f = f > 0.0 ? std::sin(0.5 * f * t) / f : 0.5 * t;
  const Complex z(std::cos(0.5 * f * t), p.delta23() * s_over_f);
  const double m = std::abs(z);
  if (m == 0.0) throw DegenerateFormulaPoint("bell_prime_phase: undefined where |U22| = 0");
  const Complex e_phi = z / m;  // the overall sign choice squares away
  return std::conj(e_phi * e_phi);
}

SwapResult closed_form_swap(const SwapQuery& q) {
  const Elements e = elements(q.segment, q.t);
  const Branch b = q.method == Method::BSM ? bsm_branch(q, e) : qed_branch(q, e);
  if (b.weight < kDegenerateWeight) degenerate(q);
  if (!b.bell) return make_result(q, two_term_state(b.terms), b.weight, two_term_concurrence(b.terms), e);
  if (b.bell_kind == BellTarget::B) return make_result(q, bell_state(BellTarget::B), b.weight, 1.0, e);
  const double r = 1.0 / std::sqrt(2.0);
  StateVector state({0.0, r, r * bell_prime_phase(q.segment, q.t), 0.0});
  return make_result(q, std::move(state), b.weight, 1.0, e);
}

double closed_form_probability(const SwapQuery& q) { return branch(q).weight; }

Observables closed_form_observables(const SwapQuery& q) {
  const auto r = closed_form_swap(q);
  return {r.concurrence, r.probability};
}

}  // namespace repeater
