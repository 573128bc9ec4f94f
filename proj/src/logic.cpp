#include "concept_nmr/logic.hpp"

#include "concept_nmr/error.hpp"
#include "concept_nmr/universe.hpp"

namespace cnmr::logic {

PolarityModel::PolarityModel(std::shared_ptr<const fca::FormalContext> context,
                             std::map<std::string, fca::Concept, std::less<>> valuation)
    : context_(std::move(context)), valuation_(std::move(valuation)) {
  if (!context_) throw InputError("polarity model without a context");
  for (const auto& [name, c] : valuation_) {
    if (!fca::is_concept(*context_, c))
      throw InputError("value of variable '" + name + "' is not a formal concept of its context");
  }
}

const fca::Concept& PolarityModel::value(std::string_view variable) const {
  auto it = valuation_.find(variable);
  if (it == valuation_.end()) throw EvaluationError("unbound variable '" + std::string(variable) + "'");
  return it->second;
}

fca::Concept interpret(const PolarityModel& m, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Var:
      return m.value(f.name());
    case K::Top:
      return fca::top_concept(m.context());
    case K::Bot:
      return fca::bottom_concept(m.context());
    case K::And:
      return fca::meet(m.context(), interpret(m, f.left()), interpret(m, f.right()));
    case K::Or:
      return fca::join(m.context(), interpret(m, f.left()), interpret(m, f.right()));
  }
  throw std::logic_error("unreachable formula kind");
}

bool satisfies(const PolarityModel& m, std::size_t object, const Formula& f) {
  if (object >= m.context().object_count()) throw InputError("object index out of range");
  return interpret(m, f).extent.test(object);
}

bool satisfies(const PolarityModel& m, std::string_view object, const Formula& f) {
  return satisfies(m, m.context().object_index(object), f);
}

bool co_satisfies(const PolarityModel& m, std::size_t attribute, const Formula& f) {
  if (attribute >= m.context().attribute_count()) throw InputError("attribute index out of range");
  return interpret(m, f).intent.test(attribute);
}

bool co_satisfies(const PolarityModel& m, std::string_view attribute, const Formula& f) {
  return co_satisfies(m, m.context().attribute_index(attribute), f);
}

bool valid_sequent(const PolarityModel& m, const Sequent& s) {
  if (s.kind != Sequent::Kind::Strict) throw InputError("valid_sequent expects a strict sequent");
  return fca::leq(interpret(m, s.lhs), interpret(m, s.rhs));
}

std::vector<SublatticeElement> generated_sublattice(const PolarityModel& m,
                                                    const std::vector<std::string>& vars) {
  auto shared = std::make_shared<const PolarityModel>(m);
  Universe u({shared}, vars);
  std::vector<SublatticeElement> out;
  out.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out.push_back({u.representative(i), u.concept_at(i, 0)});
  return out;
}

}  // namespace cnmr::logic
