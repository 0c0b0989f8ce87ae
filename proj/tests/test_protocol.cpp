#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "repeater/protocol.hpp"
#include "support.hpp"

using namespace repeater;
using namespace repeater::testing;

namespace {

constexpr std::array<ProductOutcome, 4> kOutcomes{ProductOutcome::ee, ProductOutcome::eg, ProductOutcome::ge,
                                                  ProductOutcome::gg};

double probability_or_zero(auto&& fn) {
  try {
    return fn();
  } catch (const ZeroProbabilityBranch&) {
    return 0.0;
  }
}

// Matrix elements in the 1-based labelling of the 4x4 propagator: 2 = |eg>, 3 = |ge>.
struct U {
  Complex u22, u23, u32, u33;
  explicit U(const ComplexMatrix& m) : u22(m(1, 1)), u23(m(1, 2)), u32(m(2, 1)), u33(m(2, 2)) {}
};

double c_of(Complex a, Complex b) { return 2.0 * std::abs(std::conj(a) * b) / (std::norm(a) + std::norm(b)); }

}  // namespace

TEST_CASE("string round trips and parse errors") {
  for (const auto& c : kAllCases) CHECK(parse_case(to_string(c)) == c);
  CHECK(to_string(kPsiPrime) == "Psi-PsiPrime");
  CHECK(parse_bell("B'") == BellTarget::BPrime);
  CHECK(parse_bell("Bp") == BellTarget::BPrime);
  CHECK(to_string(BellTarget::BPrime) == "B'");
  CHECK(parse_method("QED") == Method::QED);
  CHECK(parse_product_outcome("ge") == ProductOutcome::ge);
  CHECK_THROWS_AS(parse_case("Psi-Phi"), ConfigInvalid);
  CHECK_THROWS_AS(parse_bell("C"), ConfigInvalid);
  CHECK_THROWS_AS(parse_product_outcome("xx"), ConfigInvalid);
  CHECK(heralding_outcome(Segment::Psi) == ProductOutcome::ge);
  CHECK(heralding_outcome(Segment::PsiPrime) == ProductOutcome::eg);
}

TEST_CASE("initial pair is the normalized singlet") {
  const auto s = initial_bell_pair();
  CHECK(s.norm() == doctest::Approx(1.0));
  CHECK(concurrence_pure(s) == doctest::Approx(1.0));
  CHECK(s[1] == Complex(1.0 / std::sqrt(2.0)));
  CHECK(s[2] == Complex(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("evolve_segment") {
  const TwoModeParams p(1.0, 3.0, 2.0, 10.0);
  // t = 0: plain singlet (x) singlet, coefficient of |egge> is -1/2.
  const auto s0 = evolve_segment(p, 0.0);
  CHECK(max_abs_diff(s0, kron(initial_bell_pair(), initial_bell_pair())) == 0.0);
  CHECK(std::abs(s0[0b0110] - Complex(-0.5)) < 1e-15);

  Draws d(31);
  for (int i = 0; i < 100; ++i) {
    const auto q = d.two_mode();
    const double t = d.time();
    const auto s = evolve_segment(q, t);
    CHECK(std::abs(s.norm() - 1.0) <= 1e-12);
    CHECK(max_abs_diff(s, evolve_segment_closed_form(q, t)) <= 1e-12);
  }
}

TEST_CASE("heralding the inner pair") {
  const TwoModeParams p(1.0, 3.0, 2.0, 10.0);
  const auto h0 = herald_inner_pair(evolve_segment(p, 0.0), ProductOutcome::ge);
  CHECK(h0.probability == doctest::Approx(0.25));
  CHECK(max_abs_diff(h0.state, StateVector::ket("eg")) < 1e-15);
  CHECK(h0.outcome.first_atom == 2);
  CHECK(h0.outcome.second_atom == 3);
  CHECK(herald_inner_pair(evolve_segment(p, 0.0), ProductOutcome::ge, Side::Right).outcome.first_atom == 6);

  Draws d(32);
  for (int i = 0; i < 200; ++i) {
    const auto q = d.two_mode();
    const double t = d.time();
    const auto seg = evolve_segment(q, t);
    const U u(effective_unitary(q, t));
    // Psi: (U33|eg> + U32|ge>)/N, PsiPrime: (U23|eg> + U22|ge>)/N', each with weight N^2/4.
    const auto psi = herald_inner_pair(seg, ProductOutcome::ge);
    const auto prime = herald_inner_pair(seg, ProductOutcome::eg);
    const double n = std::sqrt(std::norm(u.u33) + std::norm(u.u32));
    const double np = std::sqrt(std::norm(u.u23) + std::norm(u.u22));
    CHECK(max_abs_diff(psi.state, StateVector({0.0, u.u33 / n, u.u32 / n, 0.0})) <= 1e-12);
    CHECK(max_abs_diff(prime.state, StateVector({0.0, u.u23 / np, u.u22 / np, 0.0})) <= 1e-12);
    CHECK(std::abs(psi.probability - n * n / 4.0) <= 1e-12);
    CHECK(std::abs(prime.probability - np * np / 4.0) <= 1e-12);

    double total = 0.0;
    for (auto o : kOutcomes) {
      total += probability_or_zero([&] {
        const auto h = herald_inner_pair(seg, o);
        if (o == ProductOutcome::ee || o == ProductOutcome::gg) CHECK(concurrence_pure(h.state) <= 1e-12);
        return h.probability;
      });
    }
    CHECK(std::abs(total - 1.0) <= 1e-10);
  }
}

TEST_CASE("BSM at Delta2 = Delta3 and g23 t = pi/4 is a perfect swap") {
  const TwoModeParams p(1.0, 1.0, 5.0, 5.0);
  const double t = std::numbers::pi / (4.0 * p.g23());
  for (auto q : {bsm_query(kPsiPsi, BellTarget::B, p, t), bsm_query(kPsiPsi, BellTarget::BPrime, p, t)}) {
    const auto r = pipeline_swap(q);
    CHECK(r.concurrence == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.probability == doctest::Approx(0.25).epsilon(1e-12));
    const auto cf = closed_form_observables(q);
    CHECK(cf.concurrence == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cf.probability == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("zero-weight branches") {
  const TwoModeParams p(1.0, 1.0, 2.0, 3.0);
  // At t = 0 the Psi segment is |eg>, so projecting (4,5) on B has no support.
  CHECK_THROWS_AS(pipeline_swap(bsm_query(kPsiPsi, BellTarget::B, p, 0.0)), ZeroProbabilityBranch);
  CHECK_THROWS_AS(closed_form_swap(bsm_query(kPsiPsi, BellTarget::B, p, 0.0)), DegenerateFormulaPoint);
  CHECK(closed_form_probability(bsm_query(kPsiPsi, BellTarget::B, p, 0.0)) == 0.0);
  CHECK(closed_form_observables(bsm_query(kPsiPsi, BellTarget::BPrime, p, 0.0)).concurrence == 0.0);

  // A heralding reading other than eg/ge is not a swap input.
  const auto seg = evolve_segment(p, 1.0);
  const auto bad = herald_inner_pair(seg, ProductOutcome::ee);
  const auto good = herald_inner_pair(seg, ProductOutcome::ge, Side::Right);
  CHECK_THROWS_AS(bsm_swap(bad, good, BellTarget::B), std::invalid_argument);
}

TEST_CASE("BSM closed forms match hand-derived amplitudes") {
  Draws d(33);
  for (int i = 0; i < 100; ++i) {
    const auto p = d.two_mode();
    const double t = d.time();
    const U u(effective_unitary(p, t));
    const double n2 = std::norm(u.u33) + std::norm(u.u32);
    const double np2 = std::norm(u.u23) + std::norm(u.u22);
    // (Psi,Psi) on B': U33^2 |eg> + U32^2 |ge>
    const auto r1 = pipeline_swap(bsm_query(kPsiPsi, BellTarget::BPrime, p, t));
    CHECK(std::abs(r1.probability - (std::norm(u.u33 * u.u33) + std::norm(u.u32 * u.u32)) / (2 * n2 * n2)) <= 1e-12);
    CHECK(std::abs(r1.concurrence - c_of(u.u33 * u.u33, u.u32 * u.u32)) <= 1e-10);
    // (Psi,Psi) on B: Bell state with weight |U33 U32|^2 / N^4
    const auto r2 = pipeline_swap(bsm_query(kPsiPsi, BellTarget::B, p, t));
    CHECK(std::abs(r2.probability - std::norm(u.u33 * u.u32) / (n2 * n2)) <= 1e-12);
    CHECK(std::abs(r2.concurrence - 1.0) <= 1e-10);
    // (Psi,PsiPrime) on B: U22 U33 |ee> + U23 U32 |gg>
    const auto r3 = pipeline_swap(bsm_query(kPsiPrime, BellTarget::B, p, t));
    CHECK(std::abs(r3.concurrence - c_of(u.u22 * u.u33, u.u23 * u.u32)) <= 1e-10);
    CHECK(std::abs(r3.probability - (std::norm(u.u22 * u.u33) + std::norm(u.u23 * u.u32)) / (2 * n2 * np2)) <= 1e-12);
  }
}

TEST_CASE("BSM equality chains") {
  Draws d(34);
  for (int i = 0; i < 200; ++i) {
    const auto p = d.two_mode();
    const double t = d.time();
    // Concurrences of the non-Bell branches agree across the four cases.
    const double c1 = pipeline_observables(bsm_query(kPsiPsi, BellTarget::BPrime, p, t)).concurrence;
    const double c2 = pipeline_observables(bsm_query(kPsiPrime, BellTarget::B, p, t)).concurrence;
    const double c3 = pipeline_observables(bsm_query(kPrimePsi, BellTarget::B, p, t)).concurrence;
    const double c4 = pipeline_observables(bsm_query(kPrimePrime, BellTarget::BPrime, p, t)).concurrence;
    CHECK(std::abs(c1 - c2) <= 1e-10);
    CHECK(std::abs(c1 - c3) <= 1e-10);
    CHECK(std::abs(c1 - c4) <= 1e-10);
    // Bell-branch success probabilities.
    const double sb = pipeline_observables(bsm_query(kPsiPsi, BellTarget::B, p, t)).probability;
    const double sbp = pipeline_observables(bsm_query(kPsiPrime, BellTarget::BPrime, p, t)).probability;
    const double spb = pipeline_observables(bsm_query(kPrimePrime, BellTarget::B, p, t)).probability;
    CHECK(std::abs(sb - sbp) <= 1e-10);
    CHECK(std::abs(sb - spb) <= 1e-10);
    // Bell branches are maximally entangled whenever they occur.
    for (auto q : {bsm_query(kPsiPsi, BellTarget::B, p, t), bsm_query(kPrimePsi, BellTarget::BPrime, p, t)}) {
      const auto o = pipeline_observables(q);
      if (o.probability > 1e-12) CHECK(std::abs(o.concurrence - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("mixed-case Bell branch phase") {
  Draws d(35);
  for (int i = 0; i < 100; ++i) {
    const auto p = d.two_mode();
    const double t = d.uniform(0.1, 20.0);
    const Complex phase = bell_prime_phase(p, t);
    CHECK(std::abs(std::abs(phase) - 1.0) <= 1e-12);
    const auto r = pipeline_swap(bsm_query(kPsiPrime, BellTarget::BPrime, p, t));
    // (|eg> + e^{-2i phi}|ge>)/sqrt2 up to a global phase
    const StateVector expected({0.0, 1.0 / std::sqrt(2.0), phase / std::sqrt(2.0), 0.0});
    CHECK(max_abs_diff_up_to_phase(expected, r.state18) <= 1e-10);
  }
}

TEST_CASE("complete Bell basis on (4,5) conserves probability") {
  const std::array<StateVector, 4> bell{
      StateVector({1.0, 0.0, 0.0, 1.0}).normalized(), StateVector({1.0, 0.0, 0.0, -1.0}).normalized(),
      StateVector({0.0, 1.0, 1.0, 0.0}).normalized(), StateVector({0.0, 1.0, -1.0, 0.0}).normalized()};
  const std::array<std::size_t, 2> middle{1, 2};
  Draws d(36);
  for (int i = 0; i < 100; ++i) {
    const auto p = d.two_mode();
    const double t = d.time();
    const auto seg = evolve_segment(p, t);
    const auto left = herald_inner_pair(seg, d.coin() ? ProductOutcome::eg : ProductOutcome::ge);
    const auto right = herald_inner_pair(seg, d.coin() ? ProductOutcome::eg : ProductOutcome::ge, Side::Right);
    const auto joint = kron(left.state, right.state);
    double total = 0.0;
    for (const auto& b : bell) total += probability_or_zero([&] { return project(joint, middle, b).probability; });
    CHECK(std::abs(total - 1.0) <= 1e-10);
  }
}

TEST_CASE("QED swap") {
  const TwoModeParams p(1.0, 5.0, 2.0, 3.0);
  const SingleModeParams cav(1.0, 2.0);
  // tau = t: the cavity never acts and the (Psi,Psi) "eg" branch is a product state.
  for (double t : {0.3, 1.0, 4.5, 10.0}) {
    const auto q = qed_query(kPsiPsi, ProductOutcome::eg, p, cav, t, t);
    CHECK(pipeline_observables(q).concurrence == 0.0);
    CHECK(closed_form_observables(q).concurrence == 0.0);
  }
  // at tau = t = 0 the whole branch is empty (U32 = 0 as well)
  CHECK_THROWS_AS(pipeline_swap(qed_query(kPsiPsi, ProductOutcome::eg, p, cav, 0.0, 0.0)), ZeroProbabilityBranch);
  CHECK(closed_form_probability(qed_query(kPsiPsi, ProductOutcome::eg, p, cav, 0.0, 0.0)) == 0.0);
  CHECK_THROWS(pipeline_swap(qed_query(kPsiPsi, ProductOutcome::eg, p, cav, 2.0, 1.0)));

  Draws d(37);
  for (int i = 0; i < 200; ++i) {
    const auto tp = d.two_mode();
    const auto sp = d.single_mode();
    const double t = d.time();
    const double tau = t + d.uniform(0.0, 20.0);
    auto c = [&](CaseLabel k, ProductOutcome o) {
      return pipeline_observables(qed_query(k, o, tp, sp, t, tau)).concurrence;
    };
    const double c1p = c(kPsiPsi, ProductOutcome::eg), c1pp = c(kPsiPsi, ProductOutcome::ge);
    const double c4p = c(kPrimePrime, ProductOutcome::eg), c4pp = c(kPrimePrime, ProductOutcome::ge);
    CHECK(std::abs(c4p - c1pp) <= 1e-10);
    CHECK(std::abs(c4pp - c1p) <= 1e-10);
    const double c2p = c(kPsiPrime, ProductOutcome::eg);
    CHECK(std::abs(c2p - c(kPsiPrime, ProductOutcome::ge)) <= 1e-10);
    CHECK(std::abs(c2p - c(kPrimePsi, ProductOutcome::eg)) <= 1e-10);
    CHECK(std::abs(c2p - c(kPrimePsi, ProductOutcome::ge)) <= 1e-10);

    // hand-derived (Psi,Psi) "eg" amplitudes: a = U33^2 (E - 1), b = U32^2 (E + 1)
    const U u(effective_unitary(tp, t));
    const Complex e = std::exp(Complex(0.0, -2.0 * sp.lambda_prime() * (tau - t)));
    const Complex a = u.u33 * u.u33 * (e - 1.0), b = u.u32 * u.u32 * (e + 1.0);
    if (std::norm(a) + std::norm(b) > 1e-20) CHECK(std::abs(c1p - c_of(a, b)) <= 1e-9);

    const CaseLabel k = kAllCases[static_cast<std::size_t>(d.index(4))];
    double total = 0.0;
    for (auto o : kOutcomes)
      total += probability_or_zero([&] { return pipeline_swap(qed_query(k, o, tp, sp, t, tau)).probability; });
    CHECK(std::abs(total - 1.0) <= 1e-10);
  }
}

TEST_CASE("dual engines agree") {
  Draws d(38);
  int compared = 0;
  for (int i = 0; i < 500; ++i) {
    const auto p = d.two_mode();
    const double t = d.time();
    const CaseLabel k = kAllCases[static_cast<std::size_t>(d.index(4))];
    SwapQuery q = d.coin() ? bsm_query(k, d.coin() ? BellTarget::B : BellTarget::BPrime, p, t)
                           : qed_query(k, d.coin() ? ProductOutcome::eg : ProductOutcome::ge, p, d.single_mode(), t,
                                       t + d.uniform(0.0, 20.0));
    const auto a = pipeline_swap(q);
    const auto b = closed_form_swap(q);
    CHECK(std::abs(a.concurrence - b.concurrence) <= 1e-10);
    CHECK(std::abs(a.probability - b.probability) <= 1e-10);
    CHECK(std::abs(a.heralding_probability - b.heralding_probability) <= 1e-10);
    CHECK(max_abs_diff_up_to_phase(a.state18, b.state18) <= 1e-9);
    CHECK(std::abs(closed_form_probability(q) - a.probability) <= 1e-10);
    ++compared;
  }
  CHECK(compared == 500);
}

TEST_CASE("symmetric C1 follows from |U32| and |U33| alone") {
  Draws d(39);
  for (int i = 0; i < 100; ++i) {
    const double g = d.uniform(0.3, 4.0);
    const TwoModeParams p(g, g, d.detuning(0.5, 25.0), d.detuning(0.5, 25.0));
    const double t = d.time();
    const U u(effective_unitary(p, t));
    const double x = std::norm(u.u33), y = std::norm(u.u32);
    const double expected = 2.0 * x * y / (x * x + y * y);
    CHECK(std::abs(closed_form_observables(bsm_query(kPsiPsi, BellTarget::BPrime, p, t)).concurrence - expected) <=
          1e-10);
    CHECK(std::abs(closed_form_probability(bsm_query(kPsiPsi, BellTarget::B, p, t)) - x * y / ((x + y) * (x + y))) <=
          1e-12);
  }
}
