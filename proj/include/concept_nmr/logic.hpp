#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "concept_nmr/fca.hpp"
#include "concept_nmr/formula.hpp"

namespace cnmr::logic {

// A formal context together with a concept assigned to every variable.
class PolarityModel {
 public:
  // Throws InputError when some assigned pair is not a concept of `context`.
  PolarityModel(std::shared_ptr<const fca::FormalContext> context,
                std::map<std::string, fca::Concept, std::less<>> valuation);

  const fca::FormalContext& context() const { return *context_; }
  const std::shared_ptr<const fca::FormalContext>& context_ptr() const { return context_; }
  const std::map<std::string, fca::Concept, std::less<>>& valuation() const { return valuation_; }

  bool binds(std::string_view variable) const { return valuation_.find(variable) != valuation_.end(); }
  // Throws EvaluationError naming the variable when unbound.
  const fca::Concept& value(std::string_view variable) const;

 private:
  std::shared_ptr<const fca::FormalContext> context_;
  std::map<std::string, fca::Concept, std::less<>> valuation_;
};

// Homomorphic extension of the valuation: & is meet, | is join.
fca::Concept interpret(const PolarityModel& m, const Formula& f);

bool satisfies(const PolarityModel& m, std::size_t object, const Formula& f);
bool satisfies(const PolarityModel& m, std::string_view object, const Formula& f);
bool co_satisfies(const PolarityModel& m, std::size_t attribute, const Formula& f);
bool co_satisfies(const PolarityModel& m, std::string_view attribute, const Formula& f);

// [[lhs]] ⊆ [[rhs]]. Throws InputError for a defeasible sequent.
bool valid_sequent(const PolarityModel& m, const Sequent& s);

struct SublatticeElement {
  Formula representative;
  fca::Concept value;
};

// Closure of {V(v) | v in vars} ∪ {top, bottom} under meet and join, one
// representative formula per concept (fewest nodes, then smallest text).
std::vector<SublatticeElement> generated_sublattice(const PolarityModel& m,
                                                    const std::vector<std::string>& vars);

}  // namespace cnmr::logic
