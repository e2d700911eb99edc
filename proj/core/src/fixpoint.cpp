#include "sky/fixpoint.hpp"

#include <algorithm>
#include <bit>
#include <deque>

namespace sky {

std::size_t interpretation::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

bool interpretation::subset_of(const interpretation& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

interpretation interpretation::project(const std::vector<std::uint64_t>& mask) const {
  interpretation out(*this);
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] &= mask[i];
  return out;
}

std::vector<atom_id> interpretation::to_sorted_ids() const {
  std::vector<atom_id> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word) {
      const int bit = std::countr_zero(word);
      out.push_back(static_cast<atom_id>((w << 6) + bit));
      word &= word - 1;
    }
  }
  return out;
}

namespace {

bool body_satisfied(const ground_rule& r, const interpretation& I) {
  for (const ground_literal& bl : r.body)
    if (bl.negated == I.contains(bl.id)) return false;
  return true;
}

interpretation seed(const ground_program& g, const std::vector<atom_id>& guesses) {
  interpretation I(g.atoms.size());
  for (atom_id id : g.fact_atoms) I.insert(id);
  for (atom_id id : guesses) I.insert(id);
  return I;
}

}  // namespace

interpretation tp_step(const ground_program& g,
                       const std::vector<std::string>& stratum,
                       const interpretation& current) {
  const std::set<std::string> preds(stratum.begin(), stratum.end());
  interpretation next = current;
  for (const ground_rule& r : g.rules) {
    if (r.kind != rule_kind::rule) continue;
    if (!preds.count(g.atoms[*r.head].predicate)) continue;
    if (body_satisfied(r, current)) next.insert(*r.head);
  }
  return next;
}

interpretation least_model_naive(const ground_program& g,
                                 const std::vector<atom_id>& guesses) {
  interpretation I = seed(g, guesses);
  for (const std::vector<std::string>& stratum : g.strata.strata) {
    while (true) {
      interpretation next = tp_step(g, stratum, I);
      if (next == I) break;
      I = next;
    }
  }
  return I;
}

interpretation least_model(const ground_program& g,
                           const std::vector<atom_id>& guesses) {
  interpretation I = seed(g, guesses);
  std::deque<atom_id> agenda;
  for (std::size_t s = 0; s < g.strata.strata.size(); ++s) {
    for (std::size_t idx : g.rules_by_stratum[s]) {
      const ground_rule& r = g.rules[idx];
      if (body_satisfied(r, I) && I.insert_new(*r.head)) agenda.push_back(*r.head);
    }
    while (!agenda.empty()) {
      const atom_id a = agenda.front();
      agenda.pop_front();
      for (std::size_t idx : g.positive_watch[a]) {
        if (g.rule_stratum[idx] != static_cast<int>(s)) continue;
        const ground_rule& r = g.rules[idx];
        if (!I.contains(*r.head) && body_satisfied(r, I)) {
          I.insert(*r.head);
          agenda.push_back(*r.head);
        }
      }
    }
  }
  return I;
}

std::optional<std::size_t> violates_constraints(const ground_program& g,
                                                const interpretation& I) {
  for (std::size_t ci : g.constraints)
    if (body_satisfied(g.rules[ci], I)) return ci;
  return std::nullopt;
}

std::string render_model(const ground_program& g, const interpretation& I) {
  std::vector<std::string> parts;
  for (atom_id id : I.to_sorted_ids()) {
    if (!g.show.empty() && !g.show.count(g.atoms[id].predicate)) continue;
    parts.push_back(render(g.atoms[id]));
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  out += "}";
  return out;
}

std::string render_model_full(const ground_program& g, const interpretation& I) {
  std::vector<std::string> parts;
  for (atom_id id : I.to_sorted_ids()) parts.push_back(render(g.atoms[id]));
  std::sort(parts.begin(), parts.end());
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  out += "}";
  return out;
}

}  // namespace sky
