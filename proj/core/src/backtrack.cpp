#include "sky/backtrack.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace sky {

void partial_assignment::assign(std::uint32_t index, truth v, std::int32_t reason) {
  state_[index] = v;
  trail_.push_back({index, v, reason});
}

void partial_assignment::undo_to(std::size_t mark) {
  while (trail_.size() > mark) {
    state_[trail_.back().index] = truth::undecided;
    trail_.pop_back();
  }
}

namespace {

bool literal_falsified(const prop_constraint::dlit& dl, truth v) {
  return dl.negated ? v == truth::in : v == truth::out;
}

}  // namespace

propagation_result propagate(const ground_program& g, partial_assignment& pa) {
  propagation_result res;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const prop_constraint& pc : g.prop_constraints) {
      std::size_t undecided = 0;
      const prop_constraint::dlit* unit = nullptr;
      bool live = true;
      for (const prop_constraint::dlit& dl : pc.literals) {
        const truth v = pa.value(dl.decision_index);
        if (v == truth::undecided) {
          ++undecided;
          unit = &dl;
        } else if (literal_falsified(dl, v)) {
          live = false;
          break;
        }
      }
      if (!live) continue;
      if (undecided == 0) {
        res.conflict = true;
        res.violated = pc.rule_index;
        return res;
      }
      if (undecided == 1) {
        pa.assign(unit->decision_index, unit->negated ? truth::in : truth::out,
                  static_cast<std::int32_t>(pc.rule_index));
        ++res.forced;
        changed = true;
      }
    }
  }
  return res;
}

bool dominance_allowed(const ground_program& g) {
  for (const std::string& p : g.policy.minimized)
    if (!g.guess_predicates.count(p)) return false;
  for (const std::string& p : g.policy.fixed)
    if (!g.edb_predicates.count(p)) return false;
  return true;
}

std::optional<std::uint32_t> select_branch_atom(const ground_program& g,
                                                const partial_assignment& pa,
                                                const solve_config& cfg) {
  const std::size_t n = pa.size();
  if (cfg.branch == branch_order::lexicographic || cfg.mode == solve_mode::enumerate) {
    for (std::uint32_t i = 0; i < n; ++i)
      if (pa.value(i) == truth::undecided) return i;
    return std::nullopt;
  }

  // most-constrained-first: occurrences in live constraints, one per constraint
  std::vector<std::size_t> score(n, 0);
  for (const prop_constraint& pc : g.prop_constraints) {
    bool live = true;
    std::set<std::uint32_t> open;
    for (const prop_constraint::dlit& dl : pc.literals) {
      const truth v = pa.value(dl.decision_index);
      if (v == truth::undecided)
        open.insert(dl.decision_index);
      else if (literal_falsified(dl, v)) {
        live = false;
        break;
      }
    }
    if (!live) continue;
    for (std::uint32_t idx : open) ++score[idx];
  }

  std::optional<std::uint32_t> best;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (pa.value(i) != truth::undecided) continue;
    if (!best || score[i] > score[*best]) best = i;
  }
  return best;
}

eval_result evaluate_leaf(const ground_program& g, const partial_assignment& pa) {
  std::vector<atom_id> candidate;
  for (std::uint32_t i = 0; i < pa.size(); ++i)
    if (pa.value(i) == truth::in) candidate.push_back(g.decision_atoms[i]);
  return is_model(g, candidate);
}

namespace {

struct searcher {
  const ground_program& g;
  const solve_config& cfg;
  bool dominance;
  partial_assignment pa;
  model_set accepted;
  std::vector<interpretation> found_min_projections;
  solver_stats stats;
  bool truncated = false;
  bool stop = false;

  searcher(const ground_program& gp, const solve_config& c)
      : g(gp), cfg(c), pa(gp.decision_atoms.size()), accepted(gp) {
    const bool allowed = dominance_allowed(gp);
    dominance = c.mode == solve_mode::backtrack &&
                (c.dominance ? (*c.dominance && allowed) : allowed);
  }

  // In-assigned minimized atoms strictly above some found projection?
  bool dominated() const {
    interpretation forced_in(g.atoms.size());
    for (std::uint32_t i = 0; i < pa.size(); ++i)
      if (pa.value(i) == truth::in) forced_in.insert(g.decision_atoms[i]);
    forced_in = forced_in.project(g.minimized_mask);
    for (const interpretation& proj : found_min_projections)
      if (proj != forced_in && proj.subset_of(forced_in)) return true;
    return false;
  }

  void leaf() {
    ++stats.leaves_evaluated;
    eval_result r = evaluate_leaf(g, pa);
    if (!r.accepted()) return;
    if (accepted.insert(*r.model))
      found_min_projections.push_back(r.model->project(g.minimized_mask));
    if (cfg.max_models && accepted.size() >= *cfg.max_models) {
      truncated = true;
      stop = true;
    }
  }

  void dfs() {
    if (stop) return;
    ++stats.nodes_expanded;
    const std::size_t entry = pa.mark();

    if (cfg.mode == solve_mode::backtrack) {
      const propagation_result pr = propagate(g, pa);
      stats.constraint_prunes += pr.forced;
      if (pr.conflict) {
        ++stats.constraint_prunes;
        pa.undo_to(entry);
        return;
      }
      if (dominance && dominated()) {
        ++stats.dominance_prunes;
        pa.undo_to(entry);
        return;
      }
    }

    if (pa.complete()) {
      leaf();
      pa.undo_to(entry);
      return;
    }

    const std::uint32_t atom = *select_branch_atom(g, pa, cfg);
    const std::size_t before_branch = pa.mark();
    pa.assign(atom, truth::out, -1);  // smallest candidates first
    dfs();
    pa.undo_to(before_branch);
    if (!stop) {
      pa.assign(atom, truth::in, -1);
      dfs();
      pa.undo_to(before_branch);
    }
    pa.undo_to(entry);
  }
};

}  // namespace

solve_result solve(const ground_program& g, const solve_config& cfg) {
  searcher s(g, cfg);
  s.dfs();
  solve_result out;
  out.models = minimal_filter(g, s.accepted);
  out.stats = s.stats;
  out.stats.models_found = out.models.size();
  out.truncated = s.truncated;
  return out;
}

}  // namespace sky
