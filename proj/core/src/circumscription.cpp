#include "sky/circumscription.hpp"

#include <algorithm>

namespace sky {

bool model_set::insert(const interpretation& I) {
  const auto it = std::lower_bound(seen_.begin(), seen_.end(), I.words());
  if (it != seen_.end() && *it == I.words()) return false;
  seen_.insert(it, I.words());
  models_.push_back(I);
  return true;
}

bool model_set::contains(const interpretation& I) const {
  return std::binary_search(seen_.begin(), seen_.end(), I.words());
}

std::vector<interpretation> model_set::canonical() const {
  std::vector<std::pair<std::pair<std::string, std::string>, std::size_t>> keyed;
  keyed.reserve(models_.size());
  for (std::size_t i = 0; i < models_.size(); ++i)
    keyed.push_back({{render_model(*g_, models_[i]), render_model_full(*g_, models_[i])}, i});
  std::sort(keyed.begin(), keyed.end());
  std::vector<interpretation> out;
  out.reserve(models_.size());
  for (const auto& [key, i] : keyed) out.push_back(models_[i]);
  return out;
}

std::vector<std::string> model_set::render_lines() const {
  std::vector<std::string> lines;
  lines.reserve(models_.size());
  for (const interpretation& m : canonical()) lines.push_back(render_model(*g_, m));
  return lines;
}

eval_result is_model(const ground_program& g, const std::vector<atom_id>& candidate) {
  eval_result out;
  interpretation M = least_model(g, candidate);
  if (const auto violated = violates_constraints(g, M)) {
    out.violated = violated;
    return out;
  }
  out.model = std::move(M);
  return out;
}

bool is_minimal(const ground_program& g, const interpretation& model,
                const model_set& accepted) {
  const interpretation mmin = model.project(g.minimized_mask);
  const interpretation mfix = model.project(g.fixed_mask);
  for (const interpretation& other : accepted.all()) {
    if (other.project(g.fixed_mask) == mfix) {
      interpretation omin = other.project(g.minimized_mask);
      if (omin != mmin && omin.subset_of(mmin)) return false;
    }
  }
  return true;
}

model_set minimal_filter(const ground_program& g, const model_set& accepted) {
  model_set out(g);
  for (const interpretation& m : accepted.all())
    if (is_minimal(g, m, accepted)) out.insert(m);
  return out;
}

guard_error::guard_error(std::size_t atoms, std::size_t g)
    : std::runtime_error("domain too large for exhaustive enumeration: " +
                         std::to_string(atoms) + " decision atoms exceed the guard of " +
                         std::to_string(g) + " (override to proceed)"),
      decision_atom_count(atoms),
      guard(g) {}

oracle_result enumerate_bruteforce(const ground_program& g,
                                   const oracle_options& opt) {
  if (g.decision_atoms.size() > opt.guard && !opt.force)
    throw guard_error(g.decision_atoms.size(), opt.guard);

  oracle_result out;
  model_set accepted(g);
  bool stop = false;

  std::vector<atom_id> candidate;
  auto try_candidate = [&]() {
    ++out.stats.candidates_tried;
    eval_result r = is_model(g, candidate);
    if (!r.accepted()) return;
    ++out.stats.accepted;
    accepted.insert(*r.model);
    if (opt.limit && out.stats.accepted >= *opt.limit) {
      out.stats.truncated = true;
      stop = true;
    }
  };

  // Lexicographic subset order: emit the current set, then every extension
  // by a strictly larger atom. {} < {a} < {a,b} < ... < {b} < ...
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (stop) return;
    try_candidate();
    for (std::size_t i = start; i < g.decision_atoms.size() && !stop; ++i) {
      candidate.push_back(g.decision_atoms[i]);
      self(self, i + 1);
      candidate.pop_back();
    }
  };
  rec(rec, 0);

  out.models = minimal_filter(g, accepted);
  out.stats.minimal = out.models.size();
  return out;
}

}  // namespace sky
