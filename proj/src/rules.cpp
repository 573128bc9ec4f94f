#include "concept_nmr/rules.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "concept_nmr/error.hpp"

namespace cnmr::rules {

namespace {

using logic::Sequent;
using Pair = std::pair<std::size_t, std::size_t>;

BinaryRelation reachability(const BinaryRelation& edges) {
  BinaryRelation reach = edges;
  const std::size_t n = reach.size();
  std::vector<IndexSet> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rows.push_back(reach.row(i));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rows[i].test(k)) rows[i] |= rows[k];
  BinaryRelation out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : members(rows[i])) out.set(i, j);
  return out;
}

// Shortest path from -> to along defeasible edges, as a list of vertices that
// starts with `from` and ends with `to`. Ties go to the lowest index.
std::vector<std::size_t> shortest_path(const BinaryRelation& edges, std::size_t from, std::size_t to) {
  const std::size_t n = edges.size();
  std::vector<std::size_t> parent(n, n);
  std::deque<std::size_t> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    if (v == to && v != from) break;
    for (auto w : members(edges.row(v))) {
      if (parent[w] != n) continue;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  std::vector<std::size_t> path;
  if (parent[to] == n) return path;
  for (auto v = to; v != from; v = parent[v]) path.push_back(v);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

// Defeasible sequents along a closed walk a -> ... -> b -> ... -> a.
std::vector<Sequent> closed_walk(const ConsequenceRelation& r, std::size_t a, std::size_t b) {
  std::vector<Sequent> out;
  auto there = shortest_path(r.defeasible, a, b);
  auto back = shortest_path(r.defeasible, b, a);
  for (std::size_t k = 0; k + 1 < there.size(); ++k) out.push_back(r.defeasible_sequent(there[k], there[k + 1]));
  for (std::size_t k = 0; k + 1 < back.size(); ++k) out.push_back(r.defeasible_sequent(back[k], back[k + 1]));
  return out;
}

}  // namespace

std::string RuleViolation::to_string() const {
  std::string out = rule + ": ";
  for (std::size_t i = 0; i < premises.size(); ++i) out += (i ? ", " : "") + premises[i].to_string();
  return out + "  but not  " + conclusion.to_string();
}

std::vector<RuleViolation> check_closure_cc(const ConsequenceRelation& r) {
  std::vector<RuleViolation> out;
  const std::size_t n = r.size();
  const auto& u = *r.universe;
  const auto& D = r.defeasible;
  const auto& S = r.strict;
  auto report = [&](const char* rule, std::vector<Sequent> premises, std::size_t i, std::size_t j) {
    out.push_back({rule, std::move(premises), r.defeasible_sequent(i, j), {i, j}});
  };

  for (std::size_t i = 0; i < n; ++i)
    if (!D.test(i, i)) report("Reflexivity", {}, i, i);

  // LLE: phi |- psi, psi |- phi, phi |~ chi / psi |~ chi
  for (std::size_t phi = 0; phi < n; ++phi)
    for (std::size_t psi = 0; psi < n; ++psi) {
      if (phi == psi || !S.test(phi, psi) || !S.test(psi, phi)) continue;
      for (auto chi : members(D.row(phi)))
        if (!D.test(psi, chi))
          report("LLE", {r.strict_sequent(phi, psi), r.strict_sequent(psi, phi), r.defeasible_sequent(phi, chi)}, psi,
                 chi);
    }

  // RW: phi |- psi, chi |~ phi / chi |~ psi
  for (std::size_t chi = 0; chi < n; ++chi)
    for (auto phi : members(D.row(chi)))
      for (auto psi : members(S.row(phi)))
        if (!D.test(chi, psi)) report("RW", {r.strict_sequent(phi, psi), r.defeasible_sequent(chi, phi)}, chi, psi);

  // CM: phi |~ psi, phi |~ chi / phi & psi |~ chi
  for (std::size_t phi = 0; phi < n; ++phi)
    for (auto psi : members(D.row(phi))) {
      const std::size_t m = u.meet(phi, psi);
      for (auto chi : members(D.row(phi)))
        if (!D.test(m, chi)) report("CM", {r.defeasible_sequent(phi, psi), r.defeasible_sequent(phi, chi)}, m, chi);
    }

  // Cut: phi & psi |~ chi, phi |~ psi / phi |~ chi
  for (std::size_t phi = 0; phi < n; ++phi)
    for (auto psi : members(D.row(phi))) {
      const std::size_t m = u.meet(phi, psi);
      for (auto chi : members(D.row(m)))
        if (!D.test(phi, chi))
          report("Cut", {r.defeasible_sequent(m, chi), r.defeasible_sequent(phi, psi)}, phi, chi);
    }
  return out;
}

std::vector<RuleViolation> check_loop(const ConsequenceRelation& r) {
  std::vector<RuleViolation> out;
  const auto reach = reachability(r.defeasible);
  const std::size_t n = r.size();
  // An edge last -> first closing a cycle first -> ... -> last demands first |~ last.
  for (std::size_t last = 0; last < n; ++last)
    for (auto first : members(r.defeasible.row(last))) {
      if (first == last || !reach.test(first, last) || r.defeasible.test(first, last)) continue;
      auto path = shortest_path(r.defeasible, first, last);
      std::vector<Sequent> premises;
      for (std::size_t k = 0; k + 1 < path.size(); ++k) premises.push_back(r.defeasible_sequent(path[k], path[k + 1]));
      premises.push_back(r.defeasible_sequent(last, first));
      out.push_back({"Loop", std::move(premises), r.defeasible_sequent(first, last), {first, last}});
    }
  return out;
}

std::vector<RuleViolation> check_generalized_loop(const ConsequenceRelation& r) {
  std::vector<RuleViolation> out;
  const auto reach = reachability(r.defeasible);
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || r.defeasible.test(i, j) || !reach.test(i, j) || !reach.test(j, i)) continue;
      out.push_back({"GeneralizedLoop", closed_walk(r, i, j), r.defeasible_sequent(i, j), {i, j}});
    }
  return out;
}

std::vector<RuleViolation> check_or(const ConsequenceRelation& r) {
  std::vector<RuleViolation> out;
  const std::size_t n = r.size();
  const auto& u = *r.universe;
  for (std::size_t chi = 0; chi < n; ++chi)
    for (std::size_t phi = 0; phi < n; ++phi) {
      if (!r.defeasible.test(phi, chi)) continue;
      for (std::size_t psi = phi + 1; psi < n; ++psi) {
        if (!r.defeasible.test(psi, chi)) continue;
        const std::size_t j = u.join(phi, psi);
        if (!r.defeasible.test(j, chi))
          out.push_back({"Or", {r.defeasible_sequent(phi, chi), r.defeasible_sequent(psi, chi)},
                         r.defeasible_sequent(j, chi), {j, chi}});
      }
    }
  return out;
}

std::vector<RuleViolation> check_equivalence_rule(const ConsequenceRelation& r) {
  std::vector<RuleViolation> out;
  const std::size_t n = r.size();
  for (std::size_t phi = 0; phi < n; ++phi)
    for (auto psi : members(r.defeasible.row(phi))) {
      if (psi == phi || !r.defeasible.test(psi, phi)) continue;
      for (auto chi : members(r.defeasible.row(phi)))
        if (!r.defeasible.test(psi, chi))
          out.push_back({"Equivalence",
                         {r.defeasible_sequent(phi, psi), r.defeasible_sequent(psi, phi), r.defeasible_sequent(phi, chi)},
                         r.defeasible_sequent(psi, chi),
                         {psi, chi}});
    }
  return out;
}

std::size_t Derivation::node_count() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.node_count();
  return n;
}

namespace {

void render(const Derivation& d, std::size_t depth, std::string& out) {
  out += std::string(2 * depth, ' ') + d.conclusion.to_string() + "   [" + d.rule + "]\n";
  for (const auto& p : d.premises) render(p, depth + 1, out);
}

void collect_hypotheses(const Derivation& d, std::vector<Sequent>& out) {
  if (d.rule == "K" && std::find(out.begin(), out.end(), d.conclusion) == out.end()) out.push_back(d.conclusion);
  for (const auto& p : d.premises) collect_hypotheses(p, out);
}

struct PremiseRef {
  Sequent::Kind kind;
  std::size_t lhs;
  std::size_t rhs;
};

struct Justification {
  std::string rule;
  std::vector<PremiseRef> premises;
};

class Saturator {
 public:
  Saturator(std::shared_ptr<const logic::Universe> u, bool with_loop)
      : u_(std::move(u)), n_(u_->size()), with_loop_(with_loop), rel_(ConsequenceRelation::over(u_)), why_(n_ * n_) {
    meet_inverse_.resize(n_);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) meet_inverse_[u_->meet(a, b)].emplace_back(a, b);
  }

  void seed(std::size_t a, std::size_t b, Justification j) { add(a, b, std::move(j)); }

  void run() {
    for (;;) {
      while (!queue_.empty()) {
        auto [a, b] = queue_.front();
        queue_.pop_front();
        fire(a, b);
      }
      if (!with_loop_ || !close_loops()) break;
    }
  }

  const ConsequenceRelation& relation() const { return rel_; }

  Derivation derive(std::size_t a, std::size_t b) const {
    const auto& j = *why_[a * n_ + b];
    Derivation d{rel_.defeasible_sequent(a, b), j.rule, {}};
    for (const auto& p : j.premises) {
      if (p.kind == Sequent::Kind::Strict)
        d.premises.push_back({rel_.strict_sequent(p.lhs, p.rhs), "L", {}});
      else
        d.premises.push_back(derive(p.lhs, p.rhs));
    }
    return d;
  }

 private:
  static PremiseRef def(std::size_t a, std::size_t b) { return {Sequent::Kind::Defeasible, a, b}; }
  static PremiseRef str(std::size_t a, std::size_t b) { return {Sequent::Kind::Strict, a, b}; }

  void add(std::size_t a, std::size_t b, Justification j) {
    if (rel_.defeasible.test(a, b)) return;
    rel_.defeasible.set(a, b);
    why_[a * n_ + b] = std::move(j);
    queue_.emplace_back(a, b);
  }

  void fire(std::size_t a, std::size_t b) {
    const auto& D = rel_.defeasible;
    const auto& S = rel_.strict;
    // RW with (a, b) as the defeasible premise.
    for (auto m : members(S.row(b))) add(a, m, {"RW", {def(a, b), str(b, m)}});
    // LLE with (a, b) as the defeasible premise.
    for (std::size_t p = 0; p < n_; ++p)
      if (p != a && S.test(a, p) && S.test(p, a)) add(p, b, {"LLE", {str(a, p), str(p, a), def(a, b)}});
    const IndexSet row = D.row(a);
    for (auto c : members(row)) {
      // CM, (a, b) first: a |~ b, a |~ c / a&b |~ c
      add(u_->meet(a, b), c, {"CM", {def(a, b), def(a, c)}});
      // CM, (a, b) second: a |~ c, a |~ b / a&c |~ b
      add(u_->meet(a, c), b, {"CM", {def(a, c), def(a, b)}});
    }
    // Cut, (a, b) as phi&psi |~ chi.
    for (const auto& [phi, psi] : meet_inverse_[a])
      if (D.test(phi, psi)) add(phi, b, {"Cut", {def(a, b), def(phi, psi)}});
    // Cut, (a, b) as phi |~ psi.
    const std::size_t m = u_->meet(a, b);
    const IndexSet mrow = D.row(m);
    for (auto c : members(mrow)) add(a, c, {"Cut", {def(m, c), def(a, b)}});
  }

  bool close_loops() {
    const auto reach = reachability(rel_.defeasible);
    std::vector<Pair> missing;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (i != j && !rel_.defeasible.test(i, j) && reach.test(i, j) && reach.test(j, i)) missing.emplace_back(i, j);
    for (const auto& [i, j] : missing) {
      Justification just{"Loop", {}};
      auto there = shortest_path(rel_.defeasible, i, j);
      auto back = shortest_path(rel_.defeasible, j, i);
      for (std::size_t k = 0; k + 1 < there.size(); ++k) just.premises.push_back(def(there[k], there[k + 1]));
      for (std::size_t k = 0; k + 1 < back.size(); ++k) just.premises.push_back(def(back[k], back[k + 1]));
      add(i, j, std::move(just));
    }
    return !missing.empty();
  }

  std::shared_ptr<const logic::Universe> u_;
  std::size_t n_;
  bool with_loop_;
  ConsequenceRelation rel_;
  std::vector<std::optional<Justification>> why_;
  std::vector<std::vector<Pair>> meet_inverse_;
  std::deque<Pair> queue_;
};

}  // namespace

std::string Derivation::to_string() const {
  std::string out;
  render(*this, 0, out);
  return out;
}

std::vector<Sequent> hypotheses(const Derivation& d) {
  std::vector<Sequent> out;
  collect_hypotheses(d, out);
  return out;
}

Entailment entail_cc(const std::vector<Sequent>& kb, std::shared_ptr<const logic::Universe> universe,
                     const Sequent& goal, bool with_loop) {
  const auto& u = *universe;
  std::vector<Pair> hyps;
  std::map<Pair, Sequent> hyp_source;
  for (const auto& s : kb) {
    const std::size_t a = u.index_of(s.lhs);
    const std::size_t b = u.index_of(s.rhs);
    if (s.kind == Sequent::Kind::Strict) {
      if (!u.leq(a, b))
        throw InputError("strict hypothesis '" + s.to_string() + "' is not valid in the formula universe");
      continue;
    }
    hyps.emplace_back(a, b);
    hyp_source.emplace(Pair{a, b}, s);
  }
  const std::size_t ga = u.index_of(goal.lhs);
  const std::size_t gb = u.index_of(goal.rhs);

  Saturator sat(universe, with_loop);
  std::sort(hyps.begin(), hyps.end());
  hyps.erase(std::unique(hyps.begin(), hyps.end()), hyps.end());
  for (const auto& [a, b] : hyps) sat.seed(a, b, {"K", {}});
  for (std::size_t i = 0; i < u.size(); ++i) sat.seed(i, i, {"Reflexivity", {}});
  sat.run();

  Entailment result;
  result.closure = sat.relation();
  if (goal.kind == Sequent::Kind::Strict) {
    result.entailed = u.leq(ga, gb);
    if (result.entailed) result.derivation = Derivation{goal, "L", {}};
    return result;
  }
  result.entailed = result.closure.defeasible.test(ga, gb);
  if (result.entailed) {
    Derivation d = sat.derive(ga, gb);
    // Show hypotheses as the user wrote them.
    auto restore = [&](auto& self, Derivation& node) -> void {
      if (node.rule == "K") {
        auto it = hyp_source.find({u.index_of(node.conclusion.lhs), u.index_of(node.conclusion.rhs)});
        if (it != hyp_source.end()) node.conclusion = it->second;
      }
      for (auto& p : node.premises) self(self, p);
    };
    restore(restore, d);
    d.conclusion = goal;
    result.derivation = std::move(d);
  }
  return result;
}

std::optional<std::string> check_derivation(const logic::Universe& u, const Derivation& d,
                                            const std::vector<Sequent>& kb) {
  using K = Sequent::Kind;
  auto idx = [&](const logic::Formula& f) { return u.index_of(f); };
  auto bad = [&](const std::string& why) { return std::optional<std::string>(d.conclusion.to_string() + " [" + d.rule + "]: " + why); };
  const std::size_t lhs = idx(d.conclusion.lhs);
  const std::size_t rhs = idx(d.conclusion.rhs);
  const auto& p = d.premises;
  auto is = [&](std::size_t k, K kind) { return p[k].conclusion.kind == kind; };
  auto l = [&](std::size_t k) { return idx(p[k].conclusion.lhs); };
  auto r = [&](std::size_t k) { return idx(p[k].conclusion.rhs); };

  if (d.rule == "K") {
    if (!p.empty()) return bad("hypothesis with premises");
    for (const auto& s : kb)
      if (s.kind == d.conclusion.kind && idx(s.lhs) == lhs && idx(s.rhs) == rhs) return std::nullopt;
    return bad("not a member of the knowledge base");
  }
  if (d.rule == "L") {
    if (!p.empty() || d.conclusion.kind != K::Strict || !u.leq(lhs, rhs)) return bad("not a valid strict sequent");
    return std::nullopt;
  }
  if (d.conclusion.kind != K::Defeasible) return bad("expected a defeasible conclusion");
  if (d.rule == "Reflexivity") {
    if (!p.empty() || lhs != rhs) return bad("not an instance of phi |~ phi");
  } else if (d.rule == "LLE") {
    if (p.size() != 3 || !is(0, K::Strict) || !is(1, K::Strict) || !is(2, K::Defeasible) || l(0) != r(1) ||
        r(0) != l(1) || l(0) != l(2) || lhs != r(0) || rhs != r(2))
      return bad("not an LLE instance");
  } else if (d.rule == "RW") {
    if (p.size() != 2 || !is(0, K::Defeasible) || !is(1, K::Strict) || r(0) != l(1) || lhs != l(0) || rhs != r(1))
      return bad("not an RW instance");
  } else if (d.rule == "CM") {
    if (p.size() != 2 || !is(0, K::Defeasible) || !is(1, K::Defeasible) || l(0) != l(1) ||
        lhs != u.meet(l(0), r(0)) || rhs != r(1))
      return bad("not a CM instance");
  } else if (d.rule == "Cut") {
    if (p.size() != 2 || !is(0, K::Defeasible) || !is(1, K::Defeasible) || l(0) != u.meet(l(1), r(1)) ||
        lhs != l(1) || rhs != r(0))
      return bad("not a Cut instance");
  } else if (d.rule == "Loop") {
    if (p.empty()) return bad("empty cycle");
    bool has_lhs = false, has_rhs = false;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (!is(k, K::Defeasible)) return bad("cycle premise is not defeasible");
      if (r(k) != l((k + 1) % p.size())) return bad("premises do not form a closed walk");
      has_lhs = has_lhs || l(k) == lhs;
      has_rhs = has_rhs || l(k) == rhs;
    }
    if (!has_lhs || !has_rhs) return bad("conclusion endpoints are not on the cycle");
  } else {
    return bad("unknown rule");
  }
  for (const auto& q : p)
    if (auto e = check_derivation(u, q, kb)) return e;
  return std::nullopt;
}

std::vector<Sequent> parse_kb(std::string_view text) {
  std::vector<Sequent> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        out.push_back(logic::parse_sequent(line));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line_no);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace cnmr::rules
