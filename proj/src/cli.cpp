#include "concept_nmr/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"

#include "concept_nmr/cxt.hpp"
#include "concept_nmr/error.hpp"
#include "concept_nmr/example_data.hpp"
#include "concept_nmr/model_io.hpp"
#include "concept_nmr/rules.hpp"

namespace cnmr::cli {

namespace {

using io::Json;
using logic::Formula;
using logic::Sequent;

constexpr std::string_view kExamplePrefix = "example:";

class Context {
 public:
  Context(RunConfig config, std::ostream& out) : config_(std::move(config)), out_(&out) {
    if (!config_.output.empty()) {
      file_.open(config_.output);
      if (!file_) throw InputError("cannot write '" + config_.output + "'");
      out_ = &file_;
    }
  }

  const RunConfig& config() const { return config_; }
  std::ostream& out() { return *out_; }
  bool text() const { return config_.format == Format::Text; }
  bool json() const { return config_.format == Format::Json; }
  bool dot() const { return config_.format == Format::Dot; }

  std::string paint(const std::string& s, const char* code) const {
    return config_.color ? std::string("\x1b[") + code + "m" + s + "\x1b[0m" : s;
  }
  std::string verdict(bool v) const { return paint(v ? "true" : "false", v ? "32" : "31"); }

  void emit(const Json& j) { out() << j.dump(2) << "\n"; }

 private:
  RunConfig config_;
  std::ostream* out_;
  std::ofstream file_;
};

bool is_example(std::string_view path) { return path.substr(0, kExamplePrefix.size()) == kExamplePrefix; }

std::string example_text(std::string_view path) {
  auto name = path.substr(kExamplePrefix.size());
  auto text = data::example_file(name);
  if (!text) {
    std::string known;
    for (auto f : data::example_files()) known += (known.empty() ? "" : ", ") + std::string(f);
    throw InputError("no built-in file '" + std::string(name) + "' (known: " + known + ")");
  }
  return std::string(*text);
}

std::string read_text(const std::string& path) {
  if (is_example(path)) return example_text(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

fca::FormalContext load_context(const std::string& path) {
  if (is_example(path)) {
    try {
      return fca::parse_cxt(example_text(path));
    } catch (const ParseError& e) {
      throw InputError(path + ": " + e.what());
    }
  }
  return fca::read_cxt_file(path);
}

io::ModelDocument load_model(const std::string& path) {
  if (is_example(path)) {
    try {
      return io::parse_model(example_text(path));
    } catch (const InputError& e) {
      throw InputError(path + ": " + e.what());
    }
  }
  return io::load_model(path);
}

std::string braces(const std::vector<std::string>& names) {
  std::string s = "{";
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
  return s + "}";
}

std::vector<std::string> state_names(const nmr::PreferenceModel& m, const IndexSet& set) {
  std::vector<std::string> out;
  for (auto s : members(set)) out.push_back(m.states()[s]);
  return out;
}

std::string pair_list(const nmr::PreferenceModel& m, const nmr::Preference& p) {
  std::string s = "{";
  bool first = true;
  for (const auto& [a, b] : p.pairs()) {
    s += (first ? "(" : ", (") + m.states()[a] + ", " + m.states()[b] + ")";
    first = false;
  }
  return s + "}";
}

Json pairs_json(const nmr::PreferenceModel& m, const nmr::Preference& p) {
  Json j = Json::array();
  for (const auto& [a, b] : p.pairs()) j.push_back({m.states()[a], m.states()[b]});
  return j;
}

Json violation_json(const rules::RuleViolation& v) {
  Json premises = Json::array();
  for (const auto& p : v.premises) premises.push_back(p.to_string());
  return {{"rule", v.rule}, {"premises", premises}, {"missing", v.conclusion.to_string()}};
}

std::string quote_dot(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Sequent or formula, depending on whether a turnstile occurs.
bool has_turnstile(std::string_view text) {
  return text.find("|-") != std::string_view::npos || text.find("|~") != std::string_view::npos;
}

// ---------------------------------------------------------------- lattice

std::string hasse_dot(const fca::FormalContext& ctx, const fca::ConceptLattice& lat) {
  std::ostringstream os;
  os << "digraph lattice {\n  rankdir=BT;\n  node [shape=box, fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < lat.size(); ++i)
    os << "  c" << i << " [label="
       << quote_dot(braces(ctx.object_names(lat[i].extent)) + "\\n" + braces(ctx.attribute_names(lat[i].intent)))
       << "];\n";
  for (const auto& [a, b] : lat.covers()) os << "  c" << a << " -> c" << b << ";\n";
  os << "}\n";
  return os.str();
}

int cmd_lattice(Context& cx) {
  const auto ctx = load_context(cx.config().inputs.at(0));
  const auto lat = fca::concept_lattice(ctx);
  if (cx.dot()) {
    cx.out() << hasse_dot(ctx, lat);
  } else if (cx.json()) {
    Json concepts = Json::array();
    for (std::size_t i = 0; i < lat.size(); ++i)
      concepts.push_back(
          {{"extent", ctx.object_names(lat[i].extent)}, {"intent", ctx.attribute_names(lat[i].intent)}});
    Json covers = Json::array();
    for (const auto& [a, b] : lat.covers()) covers.push_back({a, b});
    cx.emit({{"objects", ctx.objects()},
             {"attributes", ctx.attributes()},
             {"concepts", concepts},
             {"top", lat.top()},
             {"bottom", lat.bottom()},
             {"covers", covers}});
  } else {
    cx.out() << lat.size() << " concepts (" << ctx.object_count() << " objects, " << ctx.attribute_count()
             << " attributes)\n";
    for (std::size_t i = 0; i < lat.size(); ++i) {
      cx.out() << "  #" << i << "  " << braces(ctx.object_names(lat[i].extent)) << "  "
               << braces(ctx.attribute_names(lat[i].intent));
      if (i == lat.top()) cx.out() << "  top";
      if (i == lat.bottom()) cx.out() << "  bottom";
      cx.out() << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------- eval / holds

std::vector<std::size_t> selected_valuations(const nmr::PreferenceModel& m, const std::string& name) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < m.valuations().size(); ++v)
    if (name.empty() || m.valuations()[v].name == name) out.push_back(v);
  if (out.empty()) throw InputError("unknown valuation '" + name + "'");
  return out;
}

int cmd_eval(Context& cx, const std::string& valuation) {
  const auto doc = load_model(cx.config().inputs.at(0));
  const auto& m = doc.model;
  const Formula f = logic::parse_formula(cx.config().inputs.at(1));
  Json rows = Json::array();
  for (auto v : selected_valuations(m, valuation)) {
    const auto& base = *m.valuations()[v].model;
    const auto c = logic::interpret(base, f);
    const auto ext = base.context().object_names(c.extent);
    const auto in = base.context().attribute_names(c.intent);
    if (cx.json()) {
      rows.push_back({{"valuation", m.valuations()[v].name}, {"extent", ext}, {"intent", in}});
    } else {
      cx.out() << m.valuations()[v].name << ": [[" << f.to_string() << "]] = (" << braces(ext) << ", " << braces(in)
               << ")\n";
    }
  }
  if (cx.json()) cx.emit({{"formula", f.to_string()}, {"values", rows}});
  return 0;
}

struct HoldsTarget {
  std::string object;
  std::string attribute;
  std::string state;
  std::string valuation;
};

int cmd_holds(Context& cx, const HoldsTarget& target) {
  const auto doc = load_model(cx.config().inputs.at(0));
  const auto& m = doc.model;
  const std::string& expr = cx.config().inputs.at(1);
  Json result = Json::object();
  bool all = true;

  if (has_turnstile(expr)) {
    const Sequent s = logic::parse_sequent(expr);
    if (s.kind != Sequent::Kind::Strict) throw InputError("holds decides strict sequents; use 'nm' for '|~'");
    Json rows = Json::array();
    for (auto v : selected_valuations(m, target.valuation)) {
      const bool ok = logic::valid_sequent(*m.valuations()[v].model, s);
      all = all && ok;
      rows.push_back({{"valuation", m.valuations()[v].name}, {"valid", ok}});
      if (cx.text()) cx.out() << m.valuations()[v].name << " |= " << s.to_string() << ": " << cx.verdict(ok) << "\n";
    }
    result = {{"sequent", s.to_string()}, {"valid", all}, {"valuations", rows}};
  } else {
    const Formula f = logic::parse_formula(expr);
    const int chosen = !target.object.empty() + !target.attribute.empty() + !target.state.empty();
    if (chosen != 1) throw InputError("give exactly one of --object, --attribute or --state");
    if (!target.state.empty()) {
      all = nmr::state_sat(m, target.state, f);
      result = {{"state", target.state}, {"formula", f.to_string()}, {"holds", all}};
      if (cx.text()) cx.out() << target.state << " |= " << f.to_string() << ": " << cx.verdict(all) << "\n";
    } else {
      const bool object = !target.object.empty();
      const std::string& who = object ? target.object : target.attribute;
      Json rows = Json::array();
      for (auto v : selected_valuations(m, target.valuation)) {
        const auto& base = *m.valuations()[v].model;
        const bool known = object ? base.context().find_object(who).has_value()
                                  : base.context().find_attribute(who).has_value();
        if (!known && !target.valuation.empty())
          throw InputError(std::string("unknown ") + (object ? "object '" : "attribute '") + who + "'");
        if (!known) continue;
        const bool ok = object ? logic::satisfies(base, who, f) : logic::co_satisfies(base, who, f);
        all = all && ok;
        rows.push_back({{"valuation", m.valuations()[v].name}, {"holds", ok}});
        if (cx.text())
          cx.out() << m.valuations()[v].name << ", " << who << (object ? " |= " : " >- ") << f.to_string() << ": "
                   << cx.verdict(ok) << "\n";
      }
      if (rows.empty())
        throw InputError(std::string("unknown ") + (object ? "object '" : "attribute '") + who + "'");
      result = {{object ? "object" : "attribute", who}, {"formula", f.to_string()}, {"holds", all}, {"valuations", rows}};
    }
  }
  if (cx.json()) cx.emit(result);
  return all ? 0 : 1;
}

// ---------------------------------------------------------------- nm

struct NmResult {
  bool holds;
  IndexSet lhs_hat, minimal, rhs_hat;
  bool smooth;
};

NmResult evaluate_nm(const nmr::PreferenceModel& m, const Sequent& s) {
  NmResult r;
  r.lhs_hat = nmr::hat(m, s.lhs);
  r.rhs_hat = nmr::hat(m, s.rhs);
  r.minimal = nmr::minimal_states(r.lhs_hat, m.preference());
  r.holds = r.minimal.is_subset_of(r.rhs_hat);
  r.smooth = nmr::is_smooth(r.lhs_hat, m.preference()).smooth;
  return r;
}

int cmd_nm(Context& cx) {
  const auto doc = load_model(cx.config().inputs.at(0));
  const auto& m = doc.model;
  const Sequent s = logic::parse_sequent(cx.config().inputs.at(1));
  if (s.kind != Sequent::Kind::Defeasible) throw InputError("nm decides defeasible sequents 'lhs |~ rhs'");
  const auto r = evaluate_nm(m, s);
  const IndexSet outside = r.minimal - r.rhs_hat;
  const bool vacuous = r.minimal.none();
  if (cx.json()) {
    cx.emit({{"sequent", s.to_string()},
             {"holds", r.holds},
             {"vacuous", vacuous},
             {"lhs_hat", state_names(m, r.lhs_hat)},
             {"minimal", state_names(m, r.minimal)},
             {"rhs_hat", state_names(m, r.rhs_hat)},
             {"counterexamples", state_names(m, outside)},
             {"lhs_hat_smooth", r.smooth}});
  } else {
    cx.out() << s.to_string() << ": " << cx.verdict(r.holds) << (vacuous ? " (vacuous)" : "") << "\n";
    cx.out() << "  hat(" << s.lhs.to_string() << ") = " << braces(state_names(m, r.lhs_hat)) << "\n";
    cx.out() << "  minimal = " << braces(state_names(m, r.minimal)) << "\n";
    cx.out() << "  hat(" << s.rhs.to_string() << ") = " << braces(state_names(m, r.rhs_hat)) << "\n";
    if (!r.holds) cx.out() << "  minimal states outside hat(" << s.rhs.to_string() << "): " << braces(state_names(m, outside)) << "\n";
    if (vacuous) cx.out() << "  no minimal states, so every consequence holds\n";
    if (!r.smooth) cx.out() << "  warning: hat(" << s.lhs.to_string() << ") is not smooth\n";
  }
  return r.holds ? 0 : 1;
}

// ---------------------------------------------------------------- classify

std::string cycle_text(const nmr::PreferenceModel& m, const std::vector<std::size_t>& cycle) {
  std::string s;
  for (auto c : cycle) s += m.states()[c] + " > ";
  return s + m.states()[cycle.front()];
}

Json classify_json(const nmr::PreferenceModel& m, const nmr::ModelClass& mc, const logic::Universe& u) {
  Json j = {{"cumulative", mc.cumulative},
            {"ordered", mc.ordered},
            {"preferential", mc.preferential},
            {"strong", mc.strong},
            {"universe_size", mc.universe_size},
            {"universe_note", mc.universe_note}};
  if (mc.non_smooth) {
    Json cycle = Json::array();
    for (auto c : mc.non_smooth->detail.cycle) cycle.push_back(m.states()[c]);
    Json w = {{"formula", mc.non_smooth->formula.to_string()},
              {"hat", state_names(m, nmr::hat(m, u, mc.non_smooth->entry))},
              {"cycle", cycle}};
    if (mc.non_smooth->detail.witness) w["witness"] = m.states()[*mc.non_smooth->detail.witness];
    j["non_smooth"] = w;
  }
  if (!mc.order_counterexample.empty()) {
    Json c = Json::array();
    for (auto s : mc.order_counterexample) c.push_back(m.states()[s]);
    j["order_counterexample"] = c;
  }
  if (mc.multi_label_state) j["multi_label_state"] = m.states()[*mc.multi_label_state];
  if (mc.symmetric_pair) j["symmetric_pair"] = {m.states()[mc.symmetric_pair->first], m.states()[mc.symmetric_pair->second]};
  if (mc.no_minimum_entry) j["no_minimum"] = u.representative(*mc.no_minimum_entry).to_string();
  return j;
}

void classify_text(Context& cx, std::ostream& os, const nmr::PreferenceModel& m, const nmr::ModelClass& mc,
                   const logic::Universe& u, const std::string& indent) {
  os << indent << "cumulative:   " << cx.verdict(mc.cumulative);
  if (mc.non_smooth) {
    const auto& ns = *mc.non_smooth;
    os << "  (hat(" << ns.formula.to_string() << ") = " << braces(state_names(m, nmr::hat(m, u, ns.entry)))
       << " is not smooth";
    if (ns.detail.witness) os << ": " << m.states()[*ns.detail.witness] << " has no minimal state below it";
    if (!ns.detail.cycle.empty()) os << "; cycle " << cycle_text(m, ns.detail.cycle);
    os << ")";
  }
  os << "\n" << indent << "ordered:      " << cx.verdict(mc.ordered);
  if (mc.order_counterexample.size() == 1)
    os << "  (" << m.states()[mc.order_counterexample[0]] << " < itself)";
  else if (mc.order_counterexample.size() == 3)
    os << "  (" << m.states()[mc.order_counterexample[0]] << " < " << m.states()[mc.order_counterexample[1]] << " < "
       << m.states()[mc.order_counterexample[2]] << " but not " << m.states()[mc.order_counterexample[0]] << " < "
       << m.states()[mc.order_counterexample[2]] << ")";
  os << "\n" << indent << "preferential: " << cx.verdict(mc.preferential);
  if (mc.multi_label_state) os << "  (" << m.states()[*mc.multi_label_state] << " has several pointed models)";
  os << "\n" << indent << "strong:       " << cx.verdict(mc.strong);
  if (mc.symmetric_pair)
    os << "  (" << m.states()[mc.symmetric_pair->first] << " and " << m.states()[mc.symmetric_pair->second]
       << " prefer each other)";
  else if (mc.no_minimum_entry)
    os << "  (hat(" << u.representative(*mc.no_minimum_entry).to_string() << ") has no minimum)";
  os << "\n";
}

int cmd_classify(Context& cx) {
  const auto doc = load_model(cx.config().inputs.at(0));
  const auto& m = doc.model;
  const auto u = m.universe(cx.config().max_universe);
  const auto mc = nmr::classify(m, *u);
  if (cx.json()) {
    cx.emit(classify_json(m, mc, *u));
  } else {
    cx.out() << mc.universe_note << "\n";
    classify_text(cx, cx.out(), m, mc, *u, "");
  }
  return mc.cumulative ? 0 : 1;
}

// ---------------------------------------------------------------- check-rules

struct RuleReport {
  std::string name;
  std::vector<rules::RuleViolation> violations;
};

std::vector<RuleReport> run_checks(const rules::ConsequenceRelation& r, const std::string& system,
                                   const std::vector<std::string>& extra) {
  std::vector<RuleReport> out;
  out.push_back({"CC", rules::check_closure_cc(r)});
  if (system == "ccl") out.push_back({"Loop", rules::check_loop(r)});
  for (const auto& e : extra) {
    if (e == "or") out.push_back({"Or", rules::check_or(r)});
    else if (e == "equivalence") out.push_back({"Equivalence", rules::check_equivalence_rule(r)});
    else if (e == "generalized-loop") out.push_back({"GeneralizedLoop", rules::check_generalized_loop(r)});
  }
  return out;
}

int cmd_check_rules(Context& cx, const std::string& system, const std::vector<std::string>& extra, std::size_t limit) {
  const auto doc = load_model(cx.config().inputs.at(0));
  const auto& m = doc.model;
  const auto u = m.universe(cx.config().max_universe);
  const auto table = nmr::consequence_table(m, u);
  const auto reports = run_checks(table, system, extra);
  std::size_t total = 0;
  for (const auto& rep : reports) total += rep.violations.size();
  if (cx.json()) {
    Json j = {{"system", system}, {"universe_size", u->size()}, {"violations", Json::object()}};
    for (const auto& rep : reports) {
      Json list = Json::array();
      for (const auto& v : rep.violations) list.push_back(violation_json(v));
      j["violations"][rep.name] = list;
    }
    cx.emit(j);
  } else {
    cx.out() << "universe: " << u->size() << " entries, " << table.defeasible.count() << " defeasible pairs\n";
    for (const auto& rep : reports) {
      cx.out() << rep.name << ": " << rep.violations.size() << " violation" << (rep.violations.size() == 1 ? "" : "s")
               << "\n";
      for (std::size_t i = 0; i < rep.violations.size() && i < limit; ++i)
        cx.out() << "  " << rep.violations[i].to_string() << "\n";
      if (rep.violations.size() > limit) cx.out() << "  ... " << rep.violations.size() - limit << " more\n";
    }
  }
  return total == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- entail

std::shared_ptr<const logic::Universe> universe_for(const std::string& path, std::optional<std::size_t> cap) {
  if (ends_with(path, ".cxt")) {
    auto ctx = std::make_shared<const fca::FormalContext>(load_context(path));
    std::map<std::string, fca::Concept, std::less<>> assign;
    for (std::size_t x = 0; x < ctx->attribute_count(); ++x) {
      const auto& name = ctx->attributes()[x];
      if (!logic::is_identifier(name) || name == "top" || name == "bot")
        throw InputError("attribute '" + name + "' cannot be used as a variable name");
      IndexSet y(ctx->attribute_count());
      y.set(x);
      assign.emplace(name, fca::close_intent(*ctx, y));
    }
    auto model = std::make_shared<const logic::PolarityModel>(ctx, std::move(assign));
    return std::make_shared<const logic::Universe>(std::vector<std::shared_ptr<const logic::PolarityModel>>{model},
                                                   ctx->attributes(), cap);
  }
  return load_model(path).model.universe(cap);
}

int cmd_entail(Context& cx, const std::string& system) {
  const auto kb = rules::parse_kb(read_text(cx.config().inputs.at(0)));
  const auto u = universe_for(cx.config().inputs.at(1), cx.config().max_universe);
  const Sequent goal = logic::parse_sequent(cx.config().inputs.at(2));
  const auto result = rules::entail_cc(kb, u, goal, system == "ccl");
  if (cx.json()) {
    Json j = {{"goal", goal.to_string()},
              {"system", system},
              {"entailed", result.entailed},
              {"closure_pairs", result.closure.defeasible.count()}};
    if (result.derivation) {
      Json used = Json::array();
      for (const auto& h : rules::hypotheses(*result.derivation)) used.push_back(h.to_string());
      std::function<Json(const rules::Derivation&)> tree = [&](const rules::Derivation& d) {
        Json p = Json::array();
        for (const auto& q : d.premises) p.push_back(tree(q));
        return Json{{"sequent", d.conclusion.to_string()}, {"rule", d.rule}, {"premises", p}};
      };
      j["hypotheses_used"] = used;
      j["derivation"] = tree(*result.derivation);
    }
    cx.emit(j);
  } else {
    cx.out() << goal.to_string() << ": " << (result.entailed ? cx.verdict(true) + " (entailed in " : cx.verdict(false) + " (not entailed in ")
             << (system == "ccl" ? "CCL" : "CC") << ", universe of " << u->size() << " entries)\n";
    if (result.derivation) {
      std::istringstream lines(result.derivation->to_string());
      for (std::string line; std::getline(lines, line);) cx.out() << "  " << line << "\n";
      cx.out() << "  hypotheses used: " << rules::hypotheses(*result.derivation).size() << " of " << kb.size() << "\n";
    } else {
      cx.out() << "  closure has " << result.closure.defeasible.count() << " defeasible pairs\n";
    }
  }
  return result.entailed ? 0 : 1;
}

// ---------------------------------------------------------------- canonical

int cmd_canonical(Context& cx, bool ordered, bool preferential, std::ostream& report) {
  const auto doc = load_model(cx.config().inputs.at(0));
  const auto& m = doc.model;
  const auto u = m.universe(cx.config().max_universe);
  const auto table = nmr::consequence_table(m, u);
  canonical::CanonicalOptions options;
  options.close_transitively = ordered;
  options.preferential = preferential;
  options.bounds = cx.config().bounds;
  const auto c = canonical::build_canonical(table, m, options);
  const auto rep = canonical::verify_representation(m, *u, c);
  const auto mc = nmr::classify(c.model);

  Json meta = canonical::canonical_metadata(c, *u);
  Json verification = {{"equal", rep.equal}};
  if (rep.mismatch) {
    verification["first_mismatch"] = {{"lhs", u->representative(rep.mismatch->first).to_string()},
                                      {"rhs", u->representative(rep.mismatch->second).to_string()},
                                      {"source", rep.in_source},
                                      {"canonical", rep.in_canonical}};
  }
  meta["canonical"]["verification"] = verification;
  meta["canonical"]["warnings"] = c.warnings;

  const bool json_to_stream = cx.json() || !cx.config().output.empty();
  if (json_to_stream) cx.out() << io::emit_model(c.model, meta);
  if (!cx.json()) {
    std::ostream& os = cx.config().output.empty() ? cx.out() : report;
    os << c.classes.size() << " classes over a universe of " << u->size() << " entries\n";
    for (std::size_t k = 0; k < c.classes.size(); ++k) {
      std::vector<std::string> names;
      for (auto i : c.classes[k].members) names.push_back(u->representative(i).to_string());
      std::vector<std::string> label;
      for (const auto& pm : c.model.label(k)) label.push_back(c.model.describe(pm));
      os << "  " << c.model.states()[k] << " = " << braces(names) << "  label " << braces(label) << "\n";
    }
    os << "preference: " << pair_list(c.model, c.model.preference()) << "\n";
    for (const auto& w : c.warnings) os << "warning: " << w << "\n";
    os << "representation: " << cx.verdict(rep.equal);
    if (rep.mismatch)
      os << "  (first mismatch: " << u->representative(rep.mismatch->first).to_string() << " |~ "
         << u->representative(rep.mismatch->second).to_string() << " is " << (rep.in_source ? "true" : "false")
         << " in the source, " << (rep.in_canonical ? "true" : "false") << " in the canonical model)";
    os << "\n";
    classify_text(cx, os, c.model, mc, *c.model.universe(), "  ");
  }
  return rep.equal ? 0 : 1;
}

// ---------------------------------------------------------------- dot

int cmd_dot(Context& cx, const std::string& graph) {
  const std::string& path = cx.config().inputs.at(0);
  const bool cxt = ends_with(path, ".cxt");
  const std::string kind = graph.empty() ? (cxt ? "hasse" : "preference") : graph;
  if (kind == "hasse") {
    if (!cxt) throw InputError("the Hasse diagram needs a CXT file");
    const auto ctx = load_context(path);
    cx.out() << hasse_dot(ctx, fca::concept_lattice(ctx));
    return 0;
  }
  if (cxt) throw InputError("graph '" + kind + "' needs a model file");
  const auto doc = load_model(path);
  const auto& m = doc.model;
  std::ostringstream os;
  if (kind == "preference") {
    os << "digraph preference {\n  node [shape=ellipse, fontname=\"Helvetica\"];\n";
    for (std::size_t s = 0; s < m.state_count(); ++s) {
      std::vector<std::string> label;
      for (const auto& pm : m.label(s)) label.push_back(m.describe(pm));
      os << "  " << quote_dot(m.states()[s]) << " [label=" << quote_dot(m.states()[s] + "\\n" + braces(label)) << "];\n";
    }
    for (const auto& [a, b] : m.preference().pairs())
      os << "  " << quote_dot(m.states()[a]) << " -> " << quote_dot(m.states()[b]) << ";\n";
  } else if (kind == "consequence") {
    const auto u = m.universe(cx.config().max_universe);
    const auto table = nmr::consequence_table(m, u);
    os << "digraph consequence {\n  node [shape=box, fontname=\"Helvetica\"];\n";
    for (std::size_t i = 0; i < u->size(); ++i)
      os << "  e" << i << " [label=" << quote_dot(u->representative(i).to_string()) << "];\n";
    for (const auto& [a, b] : table.defeasible.pairs())
      if (a != b) os << "  e" << a << " -> e" << b << ";\n";
  } else {
    throw InputError("unknown graph '" + kind + "' (hasse, preference, consequence)");
  }
  os << "}\n";
  cx.out() << os.str();
  return 0;
}

// ---------------------------------------------------------------- example-paper

struct Claim {
  std::string sequent;
  bool expected;
};

struct ScenarioResult {
  std::string title;
  std::string file;
  Json json;
  bool agrees = true;
};

ScenarioResult run_scenario(Context& cx, const std::string& file, const std::string& title,
                            const std::vector<Claim>& claims, const std::vector<std::string>& divergent,
                            const std::string& counter_rule, const std::string& counter_conclusion,
                            bool counter_expected = true) {
  const auto doc = load_model(std::string(kExamplePrefix) + file);
  const auto& m = doc.model;
  const auto u = m.universe();
  const auto mc = nmr::classify(m, *u);
  const auto table = nmr::consequence_table(m, u);
  ScenarioResult out{title, file, Json::object()};
  auto& os = cx.out();
  if (cx.text()) os << title << "  [" << file << "]\n  preference " << pair_list(m, m.preference()) << "\n";

  Json verdicts = Json::array();
  for (const auto& claim : claims) {
    const Sequent s = logic::parse_sequent(claim.sequent);
    const bool v = evaluate_nm(m, s).holds;
    const bool known_divergence =
        std::find(divergent.begin(), divergent.end(), claim.sequent) != divergent.end();
    const bool match = v == claim.expected;
    if (!match && !known_divergence) out.agrees = false;
    verdicts.push_back({{"sequent", s.to_string()}, {"holds", v}, {"expected", claim.expected}, {"agrees", match}});
    if (cx.text()) {
      std::string seq = s.to_string();
      seq.resize(std::max<std::size_t>(seq.size(), 16), ' ');
      os << "  " << seq << "  " << cx.verdict(v) << (v ? " " : "") << "  expected: " << (claim.expected ? "true" : "false");
      if (!match) os << (claim.expected ? " " : "") << (known_divergence ? "  <- documented discrepancy" : "  <- MISMATCH");
      os << "\n";
    }
  }

  std::string counter;
  if (!counter_rule.empty()) {
    std::vector<rules::RuleViolation> vs =
        counter_rule == "Or" ? rules::check_or(table) : rules::check_loop(table);
    for (const auto& v : vs)
      if (v.conclusion.to_string() == counter_conclusion) {
        counter = v.to_string();
        break;
      }
    if (counter.empty() == counter_expected) out.agrees = false;
    if (cx.text())
      os << "  " << counter_rule << " counterexample for " << counter_conclusion << ": "
         << (counter.empty() ? "none, the cycle is broken" : counter) << "\n";
  }
  const auto cc = rules::check_closure_cc(table);
  if (cx.text()) {
    os << "  CC violations: " << cc.size() << "\n";
    classify_text(cx, os, m, mc, *u, "  ");
    os << "\n";
  }
  out.json = {{"file", file}, {"preference", pairs_json(m, m.preference())}, {"verdicts", verdicts},
              {"cc_violations", cc.size()}, {"classification", classify_json(m, mc, *u)}};
  if (!counter_rule.empty()) out.json["counterexample"] = {{"rule", counter_rule}, {"violation", counter}};
  return out;
}

int cmd_example_paper(Context& cx) {
  auto& os = cx.out();
  if (cx.text())
    os << "Animals a1 platypus, a2 tiger, a3 sparrow, a4 scorpion; concepts C1 mammals, C2 viviparous,\n"
          "C3 oviparous, C4 small, C5 warm-blooded. State si is labelled by the animal ai.\n\n";

  // The non-classical join: a3 lies in [[C1 | C2]] but in neither disjunct.
  const auto base = load_model(std::string(kExamplePrefix) + "model_m.json");
  const auto& pm = *base.model.valuations()[0].model;
  const Formula c1 = Formula::var("C1"), c2 = Formula::var("C2");
  const bool join = logic::satisfies(pm, "a3", c1 | c2);
  const bool left = logic::satisfies(pm, "a3", c1);
  const bool right = logic::satisfies(pm, "a3", c2);
  if (cx.text())
    os << "Join witness: a3 |= C1 | C2 " << cx.verdict(join) << ", a3 |= C1 " << cx.verdict(left) << ", a3 |= C2 "
       << cx.verdict(right) << "\n\n";

  const auto m = run_scenario(cx, "model_m.json", "Model M",
                              {{"C1 |~ C2", true}, {"C1 & C3 |~ C2", false}, {"C2 |~ C2", true}, {"top |~ C2", false}},
                              {}, "Or", "top |~ C2");

  // Combination of the two agents' preferences recorded in the metadata.
  const auto& meta = base.metadata.at("agents");
  auto read_pref = [&](const Json& pairs) {
    nmr::Preference p(base.model.state_count());
    for (const auto& pr : pairs)
      p.add(base.model.state_index(pr.at(0).get<std::string>()), base.model.state_index(pr.at(1).get<std::string>()));
    return p;
  };
  const auto combined = nmr::combine_preferences(read_pref(meta.at("A")), read_pref(meta.at("B")));
  const auto derived = load_model(std::string(kExamplePrefix) + "model_m_prime_derived.json");
  const auto literal = load_model(std::string(kExamplePrefix) + "model_m_prime_literal.json");
  const bool derived_match = combined == derived.model.preference();
  const bool literal_match = combined == literal.model.preference();
  nmr::Preference extra(base.model.state_count());
  for (const auto& [a, b] : combined.pairs())
    if (!literal.model.preference().prefers(a, b)) extra.add(a, b);
  if (cx.text()) {
    os << "Combined preference (B's pairs, plus A's pairs that B does not reverse)\n"
       << "  A = " << pair_list(base.model, read_pref(meta.at("A"))) << "\n"
       << "  B = " << pair_list(base.model, read_pref(meta.at("B"))) << "\n"
       << "  combined = " << pair_list(base.model, combined) << "\n"
       << "  equals model_m_prime_derived.json: " << cx.verdict(derived_match) << "\n"
       << "  equals the displayed three-pair set: " << cx.verdict(literal_match) << " (extra pairs "
       << pair_list(base.model, extra) << ")\n\n";
  }

  const std::vector<Claim> prime = {
      {"C4 |~ C2", true}, {"C2 |~ C5", true}, {"C5 |~ C4", true}, {"C4 |~ C5", false}};
  const auto md = run_scenario(cx, "model_m_prime_derived.json", "Model M' with the combined preference", prime, {},
                               "Loop", "C4 |~ C5");
  const auto ml = run_scenario(cx, "model_m_prime_literal.json", "Model M' with the displayed preference", prime,
                               {"C5 |~ C4"}, "Loop", "C4 |~ C5", false);

  const std::vector<std::string> notes = {
      "The displayed relation for M' holds only the pairs among s2, s3, s4. Applying the combination rule to every "
      "pair also keeps (s2, s1), (s3, s1) and (s4, s1). With the displayed set s1 is minimal in hat(C5) and "
      "C5 |~ C4 fails; with the full set it holds.",
      "Under both readings hat(top) contains the cycle s2, s3, s4 with no minimal state, so M' is not smooth and "
      "hence not cumulative, although it is described as a preferential model."};
  if (cx.text()) {
    os << "Discrepancies\n";
    for (std::size_t i = 0; i < notes.size(); ++i) os << "  " << i + 1 << ". " << notes[i] << "\n";
  }
  const bool agrees = m.agrees && md.agrees && ml.agrees && derived_match && join && !left && !right;
  if (cx.json()) {
    cx.emit({{"join_witness", {{"object", "a3"}, {"C1 | C2", join}, {"C1", left}, {"C2", right}}},
             {"M", m.json},
             {"combination",
              {{"combined", pairs_json(base.model, combined)},
               {"equals_derived_file", derived_match},
               {"equals_displayed_set", literal_match}}},
             {"M_prime_derived", md.json},
             {"M_prime_literal", ml.json},
             {"discrepancies", notes},
             {"agrees", agrees}});
  }
  return agrees ? 0 : 1;
}

// ---------------------------------------------------------------- driver

bool color_from_env(bool tty) {
  const char* env = std::getenv("CONCEPT_NMR_COLOR");
  const std::string v = env ? env : "auto";
  if (v == "auto" || v.empty()) return tty;
  if (v == "always") return true;
  if (v == "never") return false;
  throw InputError("CONCEPT_NMR_COLOR must be auto, never or always (got '" + v + "')");
}

canonical::SearchBounds parse_bounds(const std::string& text) {
  canonical::SearchBounds b;
  const auto x = text.find('x');
  std::size_t used = 0;
  try {
    if (x == std::string::npos) throw std::invalid_argument("");
    b.max_objects = std::stoul(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument("");
    b.max_attributes = std::stoul(text.substr(x + 1), &used);
    if (used != text.size() - x - 1) throw std::invalid_argument("");
  } catch (const std::logic_error&) {
    throw InputError("--search-bounds expects OBJECTSxATTRIBUTES, e.g. 3x3 (got '" + text + "')");
  }
  if (b.max_objects == 0 || b.max_attributes == 0) throw InputError("--search-bounds must be positive");
  if (b.max_objects * b.max_attributes > 30) throw InputError("--search-bounds allow at most 30 incidence cells");
  return b;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool stdout_is_tty) {
  CLI::App app{"Defeasible reasoning on formal concepts", "concept-nmr"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format = "text";
  std::string bounds;
  std::optional<std::size_t> max_universe;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("-o,--output", config.output, "Write the main output to this file");
  app.add_flag("--strict", config.strict, "Exit with 1 on a false verdict or a violation");
  app.add_option("--max-universe", max_universe, "Refuse formula universes larger than N")->check(CLI::PositiveNumber);
  app.add_option("--search-bounds", bounds, "Supernormal search bounds, OBJECTSxATTRIBUTES (default 3x3)");

  std::vector<std::string> inputs;
  auto* lattice = app.add_subcommand("lattice", "Concept lattice of a CXT context");
  lattice->add_option("context", inputs, "CXT file")->required()->expected(1);

  std::string valuation;
  auto* eval = app.add_subcommand("eval", "Interpret a formula in the valuations of a model");
  eval->add_option("args", inputs, "MODEL FORMULA")->required()->expected(2);
  eval->add_option("--valuation", valuation, "Only this valuation");

  HoldsTarget target;
  auto* holds = app.add_subcommand("holds", "Satisfaction, co-satisfaction, state satisfaction or strict validity");
  holds->add_option("args", inputs, "MODEL FORMULA-or-SEQUENT")->required()->expected(2);
  holds->add_option("--object", target.object, "Object that should satisfy the formula");
  holds->add_option("--attribute", target.attribute, "Attribute that should co-satisfy the formula");
  holds->add_option("--state", target.state, "State that should satisfy the formula");
  holds->add_option("--valuation", target.valuation, "Only this valuation");

  auto* nm = app.add_subcommand("nm", "Decide lhs |~ rhs in a preference model");
  nm->add_option("args", inputs, "MODEL SEQUENT")->required()->expected(2);

  auto* classify = app.add_subcommand("classify", "Cumulative, ordered, preferential and strong checks");
  classify->add_option("model", inputs, "Model file")->required()->expected(1);

  std::string system = "cc";
  std::vector<std::string> extra;
  std::size_t limit = 10;
  auto* check = app.add_subcommand("check-rules", "Check the consequence table against proof rules");
  check->add_option("model", inputs, "Model file")->required()->expected(1);
  check->add_option("--system", system, "cc or ccl (cc plus Loop)")->check(CLI::IsMember({"cc", "ccl"}));
  check->add_option("--extra", extra, "Additional rules: or, equivalence, generalized-loop")
      ->check(CLI::IsMember({"or", "equivalence", "generalized-loop"}));
  check->add_option("--limit", limit, "Violations listed per rule in text output");

  auto* entail = app.add_subcommand("entail", "Cumulative entailment from a knowledge base");
  entail->add_option("args", inputs, "KB CONTEXT-or-MODEL GOAL")->required()->expected(3);
  entail->add_option("--system", system, "cc or ccl")->check(CLI::IsMember({"cc", "ccl"}));

  bool ordered = false, preferential = false;
  auto* canon = app.add_subcommand("canonical", "Canonical model of a model's consequence relation");
  canon->add_option("model", inputs, "Model file")->required()->expected(1);
  canon->add_flag("--ordered", ordered, "Transitively close the class order");
  canon->add_flag("--preferential", preferential, "Label classes with searched supernormal models");

  app.add_subcommand("example-paper", "Run the built-in animals scenario");

  std::string graph;
  auto* dot = app.add_subcommand("dot", "Graphviz export");
  dot->add_option("file", inputs, "CXT or model file")->required()->expected(1);
  dot->add_option("--graph", graph, "hasse, preference or consequence");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    config.subcommand = app.get_subcommands().front()->get_name();
    config.inputs = inputs;
    config.max_universe = max_universe;
    config.format = format == "json" ? Format::Json : format == "dot" ? Format::Dot : Format::Text;
    if (!bounds.empty()) config.bounds = parse_bounds(bounds);
    config.color = config.output.empty() && color_from_env(stdout_is_tty);
    if (config.format == Format::Dot && config.subcommand != "lattice" && config.subcommand != "dot")
      throw InputError("--format dot applies to lattice and dot only");

    std::ostringstream report;
    Context cx(config, out);
    int code = 0;
    const std::string& sub = config.subcommand;
    if (sub == "lattice") code = cmd_lattice(cx);
    else if (sub == "eval") code = cmd_eval(cx, valuation);
    else if (sub == "holds") code = cmd_holds(cx, target);
    else if (sub == "nm") code = cmd_nm(cx);
    else if (sub == "classify") code = cmd_classify(cx);
    else if (sub == "check-rules") code = cmd_check_rules(cx, system, extra, limit);
    else if (sub == "entail") code = cmd_entail(cx, system);
    else if (sub == "canonical") code = cmd_canonical(cx, ordered, preferential, report);
    else if (sub == "example-paper") code = cmd_example_paper(cx);
    else if (sub == "dot") code = cmd_dot(cx, graph);
    out << report.str();
    return config.strict ? code : 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cnmr::cli
