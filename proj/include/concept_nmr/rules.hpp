#pragma once

// The proof systems CC (Reflexivity, LLE, RW, CM, Cut) and CCL (CC + Loop):
// closure checkers and a forward-chaining entailment engine, both over a
// finite formula universe.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "concept_nmr/consequence_relation.hpp"
#include "concept_nmr/formula.hpp"
#include "concept_nmr/universe.hpp"

namespace cnmr::rules {

// A rule instance whose premises hold in the relation while its conclusion
// does not.
struct RuleViolation {
  std::string rule;
  std::vector<logic::Sequent> premises;
  logic::Sequent conclusion;
  // Universe indices of the missing defeasible pair.
  std::pair<std::size_t, std::size_t> missing;

  std::string to_string() const;
};

// Reflexivity, LLE, RW, CM and Cut over every universe instance.
std::vector<RuleViolation> check_closure_cc(const ConsequenceRelation& r);
// phi0 |~ phi1 ... phin |~ phi0  /  phi0 |~ phin, for cycles of any length.
std::vector<RuleViolation> check_loop(const ConsequenceRelation& r);
// Every ordered pair inside a defeasible cycle must be present.
std::vector<RuleViolation> check_generalized_loop(const ConsequenceRelation& r);
// phi |~ chi, psi |~ chi  /  phi | psi |~ chi.
std::vector<RuleViolation> check_or(const ConsequenceRelation& r);
// phi |~ psi, psi |~ phi, phi |~ chi  /  psi |~ chi.
std::vector<RuleViolation> check_equivalence_rule(const ConsequenceRelation& r);

// Proof tree. Leaf rules: "K" (hypothesis), "Reflexivity", and "L" (a strict
// sequent valid in the universe). Inner rules: "LLE", "RW", "CM", "Cut" and
// "Loop" (the cycle form that concludes any pair on a closed walk).
struct Derivation {
  logic::Sequent conclusion;
  std::string rule;
  std::vector<Derivation> premises;

  std::size_t node_count() const;
  std::string to_string() const;
};

struct Entailment {
  bool entailed = false;
  std::optional<Derivation> derivation;
  // Least fixpoint of the hypotheses under the rules.
  ConsequenceRelation closure;
};

// Throws InputError when a sequent of kb falls outside the universe or a
// strict hypothesis is not valid in it.
Entailment entail_cc(const std::vector<logic::Sequent>& kb, std::shared_ptr<const logic::Universe> universe,
                     const logic::Sequent& goal, bool with_loop = false);

// Checks every node against its rule schema; returns a description of the
// first bad node, or nullopt when the whole tree is valid.
std::optional<std::string> check_derivation(const logic::Universe& universe, const Derivation& d,
                                            const std::vector<logic::Sequent>& kb);

// The K leaves of a derivation, without duplicates, in first-use order.
std::vector<logic::Sequent> hypotheses(const Derivation& d);

// One sequent per line; '#' starts a comment. Throws ParseError with the line.
std::vector<logic::Sequent> parse_kb(std::string_view text);

}  // namespace cnmr::rules
