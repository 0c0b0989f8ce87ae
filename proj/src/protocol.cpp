#include "repeater/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace repeater {

namespace {

constexpr std::array<std::size_t, 2> kMiddlePair{1, 2};

Segment segment_from_reading(const OutcomeLabel& o) {
  if (o.result == "ge") return Segment::Psi;
  if (o.result == "eg") return Segment::PsiPrime;
  throw std::invalid_argument("swap input was not heralded by an 'eg' or 'ge' reading (got '" +
                              o.result + "')");
}

void require_pair(const HeraldedState& h, const char* which) {
  if (h.state.dim() != 4) throw DimensionMismatch(std::string(which) + ": expected a two-atom state");
}

SwapResult finish(HeraldedState branch, const HeraldedState& left, const HeraldedState& right,
                  Method method) {
  SwapResult r;
  r.concurrence = concurrence_pure(branch.state);
  r.state18 = std::move(branch.state);
  r.probability = branch.probability;
  r.case_label = {segment_from_reading(left.outcome), segment_from_reading(right.outcome)};
  r.outcome = std::move(branch.outcome);
  r.method = method;
  r.heralding_probability = left.probability * right.probability;
  return r;
}

}  // namespace

std::string to_string(Segment s) { return s == Segment::Psi ? "Psi" : "PsiPrime"; }

std::string to_string(const CaseLabel& c) { return to_string(c.left) + "-" + to_string(c.right); }

std::string to_string(Method m) { return m == Method::BSM ? "BSM" : "QED"; }

std::string to_string(BellTarget b) { return b == BellTarget::B ? "B" : "B'"; }

std::string to_string(ProductOutcome o) {
  switch (o) {
    case ProductOutcome::ee: return "ee";
    case ProductOutcome::eg: return "eg";
    case ProductOutcome::ge: return "ge";
    case ProductOutcome::gg: return "gg";
  }
  return "?";
}

CaseLabel parse_case(std::string_view text) {
  for (const auto& c : kAllCases)
    if (to_string(c) == text) return c;
  throw ConfigInvalid("unknown case '" + std::string(text) + "' (expected e.g. Psi-PsiPrime)");
}

Method parse_method(std::string_view text) {
  if (text == "BSM" || text == "bsm") return Method::BSM;
  if (text == "QED" || text == "qed") return Method::QED;
  throw ConfigInvalid("unknown method '" + std::string(text) + "'");
}

BellTarget parse_bell(std::string_view text) {
  if (text == "B") return BellTarget::B;
  if (text == "B'" || text == "Bp" || text == "BPrime") return BellTarget::BPrime;
  throw ConfigInvalid("unknown Bell target '" + std::string(text) + "'");
}

ProductOutcome parse_product_outcome(std::string_view text) {
  for (auto o : {ProductOutcome::ee, ProductOutcome::eg, ProductOutcome::ge, ProductOutcome::gg})
    if (to_string(o) == text) return o;
  throw ConfigInvalid("unknown product outcome '" + std::string(text) + "'");
}

StateVector bell_state(BellTarget b) {
  const double r = 1.0 / std::sqrt(2.0);
  return b == BellTarget::B ? StateVector({r, 0.0, 0.0, r}) : StateVector({0.0, r, r, 0.0});
}

StateVector product_state(ProductOutcome o) { return StateVector::ket(to_string(o)); }

ProductOutcome heralding_outcome(Segment s) {
  return s == Segment::Psi ? ProductOutcome::ge : ProductOutcome::eg;
}

std::string SwapQuery::selector() const {
  return method == Method::BSM ? to_string(bell) : to_string(qed_outcome);
}

StateVector initial_bell_pair() {
  const double r = 1.0 / std::sqrt(2.0);
  return StateVector({0.0, r, -r, 0.0});
}

StateVector evolve_segment(const TwoModeParams& p, double t) {
  const StateVector singlet = initial_bell_pair();
  const StateVector start = kron(singlet, singlet);
  return ops::embed(effective_unitary(p, t), 1, 4) * start;
}

StateVector evolve_segment_closed_form(const TwoModeParams& p, double t) {
  const ComplexMatrix u = effective_unitary(p, t);
  const Complex u11 = u(0, 0), u22 = u(1, 1), u23 = u(1, 2), u32 = u(2, 1), u33 = u(2, 2);
  return (StateVector::ket("eegg").scaled(u23) + StateVector::ket("egeg").scaled(u33) -
          StateVector::ket("egge") - StateVector::ket("geeg").scaled(u11) +
          StateVector::ket("gege").scaled(u22) + StateVector::ket("ggee").scaled(u32))
      .scaled(0.5);
}

HeraldedState herald_inner_pair(const StateVector& segment_state, ProductOutcome outcome, Side side) {
  if (segment_state.dim() != 16) throw DimensionMismatch("herald_inner_pair: expected a four-atom state");
  const int first = side == Side::Left ? 2 : 6;
  return project(segment_state, kMiddlePair, product_state(outcome),
                 OutcomeLabel{first, first + 1, to_string(outcome)});
}

SwapResult bsm_swap(const HeraldedState& left, const HeraldedState& right, BellTarget bell) {
  require_pair(left, "bsm_swap left");
  require_pair(right, "bsm_swap right");
  const StateVector joint = kron(left.state, right.state);  // atoms 1,4,5,8
  auto branch = project(joint, kMiddlePair, bell_state(bell), OutcomeLabel{4, 5, to_string(bell)});
  return finish(std::move(branch), left, right, Method::BSM);
}

SwapResult qed_swap(const HeraldedState& left, const HeraldedState& right,
                    const SingleModeParams& cavity, double t, double tau, ProductOutcome outcome) {
  require_pair(left, "qed_swap left");
  require_pair(right, "qed_swap right");
  if (!(tau >= t)) throw std::invalid_argument("qed_swap: requires tau >= t");
  const StateVector joint = kron(left.state, right.state);
  const StateVector evolved = ops::embed(qed_pair_unitary(cavity, tau - t), 1, 4) * joint;
  auto branch = project(evolved, kMiddlePair, product_state(outcome),
                        OutcomeLabel{4, 5, to_string(outcome)});
  return finish(std::move(branch), left, right, Method::QED);
}

SwapResult pipeline_swap(const SwapQuery& q) {
  const StateVector left_segment = evolve_segment(q.segment, q.t);
  const StateVector& right_segment = left_segment;  // both segments share parameters and t
  const auto left = herald_inner_pair(left_segment, heralding_outcome(q.case_label.left), Side::Left);
  const auto right = herald_inner_pair(right_segment, heralding_outcome(q.case_label.right), Side::Right);
  if (q.method == Method::BSM) return bsm_swap(left, right, q.bell);
  if (!q.cavity) throw ConfigInvalid("QED swap requires single-mode cavity parameters");
  return qed_swap(left, right, *q.cavity, q.t, q.tau, q.qed_outcome);
}

Observables pipeline_observables(const SwapQuery& q) {
  const auto r = pipeline_swap(q);
  return {r.concurrence, r.probability};
}

}  // namespace repeater
