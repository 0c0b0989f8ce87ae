#pragma once

// Eight-atom repeater: singlets on (1,2), (3,4), (5,6), (7,8); effective
// two-mode interaction on (2,3) and (6,7); heralding; then entanglement
// swapping onto (1,8) by a Bell-state measurement or by a dispersive
// single-mode interaction of (4,5) followed by a product-basis measurement.
//
// Two engines produce every swap result: a generic pipeline (tensor
// products, unitaries, projections) and the closed-form expressions written
// directly in terms of the effective propagator's matrix elements.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "repeater/effective.hpp"
#include "repeater/linalg.hpp"

namespace repeater {

/// Heralded state of an outer pair: Psi after atoms (2,3) read |ge>,
/// PsiPrime after they read |eg>.
enum class Segment { Psi, PsiPrime };

struct CaseLabel {
  Segment left = Segment::Psi;   // pair (1,4)
  Segment right = Segment::Psi;  // pair (5,8)

  friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

enum class Method { BSM, QED };

/// B = (|ee> + |gg>)/sqrt2, BPrime = (|eg> + |ge>)/sqrt2
enum class BellTarget { B, BPrime };

enum class ProductOutcome { ee, eg, ge, gg };

enum class Side { Left, Right };

inline constexpr std::array<CaseLabel, 4> kAllCases{{
    {Segment::Psi, Segment::Psi},
    {Segment::Psi, Segment::PsiPrime},
    {Segment::PsiPrime, Segment::Psi},
    {Segment::PsiPrime, Segment::PsiPrime},
}};

std::string to_string(Segment s);
std::string to_string(const CaseLabel& c);
std::string to_string(Method m);
std::string to_string(BellTarget b);
std::string to_string(ProductOutcome o);

// Parsers throw ConfigInvalid on unknown names.
CaseLabel parse_case(std::string_view text);
Method parse_method(std::string_view text);
BellTarget parse_bell(std::string_view text);
ProductOutcome parse_product_outcome(std::string_view text);

StateVector bell_state(BellTarget b);
StateVector product_state(ProductOutcome o);
/// Inner-pair reading that heralds the given segment state.
ProductOutcome heralding_outcome(Segment s);

struct SwapResult {
  StateVector state18;             // atoms (1,8), normalized
  double probability = 0.0;        // of the swap measurement, given the heralded inputs
  double concurrence = 0.0;
  CaseLabel case_label;
  OutcomeLabel outcome;            // on atoms (4,5)
  Method method = Method::BSM;
  double heralding_probability = 0.0;  // product of the two inner-pair branch weights
};

/// (|eg> - |ge>)/sqrt2
StateVector initial_bell_pair();

/// Four-atom state after the effective two-mode interaction on the middle
/// pair, built by tensor products and the 4x4 propagator.
StateVector evolve_segment(const TwoModeParams& p, double t);

/// The same state assembled term by term from the propagator's elements.
StateVector evolve_segment_closed_form(const TwoModeParams& p, double t);

/// Measures the middle pair of a four-atom segment in the product basis.
/// Any of the four outcomes is accepted; "ee"/"gg" give product states.
HeraldedState herald_inner_pair(const StateVector& segment_state, ProductOutcome outcome,
                                Side side = Side::Left);

/// Bell-state measurement on atoms (4,5). Both inputs must be heralded by
/// an "eg" or "ge" reading.
SwapResult bsm_swap(const HeraldedState& left, const HeraldedState& right, BellTarget bell);

/// Dispersive single-mode interaction on (4,5) from t to tau, then a
/// product-basis measurement of (4,5).
SwapResult qed_swap(const HeraldedState& left, const HeraldedState& right,
                    const SingleModeParams& cavity, double t, double tau, ProductOutcome outcome);

/// Complete description of one swap branch.
struct SwapQuery {
  CaseLabel case_label;
  Method method = Method::BSM;
  BellTarget bell = BellTarget::B;                // BSM only
  ProductOutcome qed_outcome = ProductOutcome::eg;  // QED only
  TwoModeParams segment;
  std::optional<SingleModeParams> cavity;         // required for QED
  double t = 0.0;
  double tau = 0.0;                               // QED only, tau >= t

  /// "B", "B'", "eg", ...
  std::string selector() const;
};

struct Observables {
  double concurrence = 0.0;
  double probability = 0.0;
};

/// Generic engine: evolve, herald, swap.
SwapResult pipeline_swap(const SwapQuery& q);
Observables pipeline_observables(const SwapQuery& q);

/// Closed-form engine. Throws DegenerateFormulaPoint where the branch has
/// zero weight and the printed state is undefined.
SwapResult closed_form_swap(const SwapQuery& q);
Observables closed_form_observables(const SwapQuery& q);
/// Printed branch probability alone; defined (possibly 0) everywhere.
double closed_form_probability(const SwapQuery& q);

/// Bell-branch relative phase e^{-2i phi} of the (1,8) state for the mixed cases.
Complex bell_prime_phase(const TwoModeParams& p, double t);

}  // namespace repeater
