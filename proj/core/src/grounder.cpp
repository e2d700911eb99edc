#include "sky/grounder.hpp"

#include <algorithm>
#include <map>

#include "sky/fixpoint.hpp"

namespace sky {

bool ground_atom_less(const ground_atom& a, const ground_atom& b) {
  if (a.predicate != b.predicate) return a.predicate < b.predicate;
  const std::size_t n = std::min(a.args.size(), b.args.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a.args[i] != b.args[i]) return constant_less(a.args[i], b.args[i]);
  return a.args.size() < b.args.size();
}

std::string render(const ground_atom& a) {
  if (a.args.empty()) return a.predicate;
  std::string out = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    out += a.args[i];
  }
  out += ")";
  return out;
}

std::optional<atom_id> ground_program::find(const ground_atom& a) const {
  const auto it = std::lower_bound(atoms.begin(), atoms.end(), a, ground_atom_less);
  if (it == atoms.end() || !(*it == a)) return std::nullopt;
  return static_cast<atom_id>(it - atoms.begin());
}

std::optional<std::uint32_t> ground_program::decision_index(atom_id id) const {
  const auto it = std::lower_bound(decision_atoms.begin(), decision_atoms.end(), id);
  if (it == decision_atoms.end() || *it != id) return std::nullopt;
  return static_cast<std::uint32_t>(it - decision_atoms.begin());
}

std::vector<std::string> herbrand_universe(const program& p) {
  std::set<std::string> constants;
  auto scan = [&](const atom& a) {
    for (const term& t : a.args)
      if (!t.is_variable()) constants.insert(t.name);
  };
  for (const rule& r : p.rules) {
    if (r.head) scan(*r.head);
    for (const literal& l : r.body) scan(l.a);
  }
  std::vector<std::string> out(constants.begin(), constants.end());
  std::sort(out.begin(), out.end(), constant_less);
  return out;
}

namespace {

struct ga_less {
  bool operator()(const ground_atom& a, const ground_atom& b) const {
    return ground_atom_less(a, b);
  }
};

struct raw_rule {
  std::optional<ground_atom> head;
  std::vector<std::pair<ground_atom, bool>> body;  // atom, negated
  rule_kind kind;
  int source_index;
};

}  // namespace

ground_program ground(const program& p) {
  const std::vector<std::string> universe = herbrand_universe(p);

  std::set<ground_atom, ga_less> fact_base;
  for (const rule& r : p.rules)
    if (r.kind == rule_kind::fact && r.head) {
      ground_atom ga{r.head->predicate, {}};
      for (const term& t : r.head->args) ga.args.push_back(t.name);
      fact_base.insert(std::move(ga));
    }

  // Full instantiation, filtered against the fact base on positive
  // extensional body atoms.
  std::vector<raw_rule> instances;
  for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
    const rule& r = p.rules[ri];

    std::vector<std::string> vars;
    std::map<std::string, std::size_t> var_index;
    auto scan_vars = [&](const atom& a) {
      for (const term& t : a.args)
        if (t.is_variable() && !var_index.count(t.name)) {
          var_index[t.name] = vars.size();
          vars.push_back(t.name);
        }
    };
    if (r.head) scan_vars(*r.head);
    for (const literal& l : r.body) scan_vars(l.a);

    if (!vars.empty() && universe.empty()) continue;

    std::vector<std::size_t> odometer(vars.size(), 0);
    while (true) {
      auto instantiate = [&](const atom& a) {
        ground_atom ga{a.predicate, {}};
        ga.args.reserve(a.args.size());
        for (const term& t : a.args)
          ga.args.push_back(t.is_variable() ? universe[odometer[var_index.at(t.name)]]
                                            : t.name);
        return ga;
      };

      raw_rule inst;
      inst.kind = r.kind;
      inst.source_index = static_cast<int>(ri);
      if (r.head) inst.head = instantiate(*r.head);
      bool relevant = true;
      for (const literal& l : r.body) {
        ground_atom ga = instantiate(l.a);
        if (!l.negated && p.edb_predicates.count(ga.predicate) &&
            !fact_base.count(ga)) {
          relevant = false;
          break;
        }
        inst.body.emplace_back(std::move(ga), l.negated);
      }
      if (relevant) instances.push_back(std::move(inst));

      if (vars.empty()) break;
      std::size_t k = vars.size();
      while (k > 0) {
        if (++odometer[k - 1] < universe.size()) break;
        odometer[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
  }

  ground_program g;
  g.policy = p.policy;
  g.strata = p.strata;
  g.show = p.show;
  g.edb_predicates = p.edb_predicates;
  g.guess_predicates = p.guess_predicates;

  std::set<ground_atom, ga_less> atom_set;
  for (const raw_rule& inst : instances) {
    if (inst.head) atom_set.insert(*inst.head);
    for (const auto& [ga, neg] : inst.body) atom_set.insert(ga);
  }
  g.atoms.assign(atom_set.begin(), atom_set.end());

  const std::size_t word_count = (g.atoms.size() + 63) / 64;
  g.positive_watch.resize(g.atoms.size());
  g.rules_by_stratum.resize(g.strata.strata.size());

  for (const raw_rule& inst : instances) {
    ground_rule gr;
    gr.kind = inst.kind;
    gr.source_index = inst.source_index;
    if (inst.head) gr.head = *g.find(*inst.head);
    for (const auto& [ga, neg] : inst.body) gr.body.push_back({*g.find(ga), neg});
    g.rules.push_back(std::move(gr));
  }

  g.rule_stratum.assign(g.rules.size(), -1);
  for (std::size_t i = 0; i < g.rules.size(); ++i) {
    const ground_rule& gr = g.rules[i];
    switch (gr.kind) {
      case rule_kind::fact:
        g.fact_atoms.push_back(*gr.head);
        break;
      case rule_kind::rule: {
        const int level = g.strata.level.at(g.atoms[*gr.head].predicate);
        g.rule_stratum[i] = level;
        g.rules_by_stratum[level].push_back(i);
        for (const ground_literal& bl : gr.body)
          if (!bl.negated) g.positive_watch[bl.id].push_back(i);
        break;
      }
      case rule_kind::constraint:
        g.constraints.push_back(i);
        break;
      case rule_kind::guess:
        g.guess_rules.push_back(i);
        break;
    }
  }
  std::sort(g.fact_atoms.begin(), g.fact_atoms.end());
  g.fact_atoms.erase(std::unique(g.fact_atoms.begin(), g.fact_atoms.end()),
                     g.fact_atoms.end());

  auto fill_mask = [&](const std::set<std::string>& preds, bool all_when_empty) {
    std::vector<std::uint64_t> mask(word_count, 0);
    for (std::size_t id = 0; id < g.atoms.size(); ++id)
      if ((all_when_empty && preds.empty()) || preds.count(g.atoms[id].predicate))
        mask[id >> 6] |= std::uint64_t{1} << (id & 63);
    return mask;
  };
  g.minimized_mask = fill_mask(g.policy.minimized, false);
  g.fixed_mask = fill_mask(g.policy.fixed, false);
  g.show_mask = fill_mask(g.show, true);

  // Decision atoms: guess-head instances whose range holds in the least model
  // with every guess out.
  const interpretation base = least_model(g, {});
  for (std::size_t idx : g.guess_rules) {
    const ground_rule& gr = g.rules[idx];
    bool holds = true;
    for (const ground_literal& bl : gr.body)
      if (bl.negated == base.contains(bl.id)) {
        holds = false;
        break;
      }
    if (holds) g.decision_atoms.push_back(*gr.head);
  }
  std::sort(g.decision_atoms.begin(), g.decision_atoms.end());
  g.decision_atoms.erase(
      std::unique(g.decision_atoms.begin(), g.decision_atoms.end()),
      g.decision_atoms.end());

  g.decision_mask.assign(word_count, 0);
  for (atom_id id : g.decision_atoms)
    g.decision_mask[id >> 6] |= std::uint64_t{1} << (id & 63);

  // Constraints usable for unit propagation: every literal is a decision atom
  // or an extensional atom of statically known truth.
  interpretation facts(g.atoms.size());
  for (atom_id id : g.fact_atoms) facts.insert(id);
  for (std::size_t ci : g.constraints) {
    const ground_rule& gr = g.rules[ci];
    prop_constraint pc{ci, {}};
    bool propagatable = true, vacuous = false;
    for (const ground_literal& bl : gr.body) {
      if (auto didx = g.decision_index(bl.id)) {
        pc.literals.push_back({*didx, bl.negated});
        continue;
      }
      if (g.edb_predicates.count(g.atoms[bl.id].predicate)) {
        const bool lit_true = bl.negated ? !facts.contains(bl.id) : facts.contains(bl.id);
        if (!lit_true) {
          vacuous = true;  // the constraint can never fire
          break;
        }
        continue;  // statically true, drop from the reduced form
      }
      propagatable = false;  // mentions a derived atom, checked at leaves
      break;
    }
    if (propagatable && !vacuous) g.prop_constraints.push_back(std::move(pc));
  }

  return g;
}

std::vector<ground_atom> guess_domain(const program& p) {
  const ground_program g = ground(p);
  std::vector<ground_atom> out;
  out.reserve(g.decision_atoms.size());
  for (atom_id id : g.decision_atoms) out.push_back(g.atoms[id]);
  return out;
}

std::string render_ground_rule(const ground_program& g, std::size_t rule_index) {
  const ground_rule& r = g.rules[rule_index];
  std::string out;
  if (r.kind == rule_kind::guess) out += "#guess ";
  if (r.head) out += render(g.atoms[*r.head]);
  if (!r.body.empty()) {
    if (r.head) out += " ";
    out += ":- ";
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      if (i) out += ", ";
      if (r.body[i].negated) out += "not ";
      out += render(g.atoms[r.body[i].id]);
    }
  } else if (!r.head) {
    out += ":- ";
  }
  out += ".";
  return out;
}

}  // namespace sky
