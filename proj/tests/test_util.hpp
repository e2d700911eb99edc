#pragma once

// Shared helpers for the unit and acceptance suites: parsing shortcuts,
// temp-file plumbing, and the random program generators used by the
// differential and antichain checks.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sky/backtrack.hpp"
#include "sky/harness.hpp"
#include "sky/parser.hpp"

namespace testutil {

inline sky::ground_program ground_of(const std::string& text) {
  return sky::ground(sky::parse_program(text));
}

// Every atom of a model, rendered and sorted; ignores #show.
inline std::vector<std::string> atom_names(const sky::ground_program& g,
                                           const sky::interpretation& I) {
  std::vector<std::string> out;
  for (sky::atom_id id : I.to_sorted_ids()) out.push_back(sky::render(g.atoms[id]));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<std::uint64_t>> model_words(const sky::model_set& ms) {
  std::vector<std::vector<std::uint64_t>> out;
  for (const sky::interpretation& m : ms.all()) out.push_back(m.words());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string write_temp(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "sky_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  return path.string();
}

// ---------------------------------------------------------------------------
// Random safe stratified programs (no guesses) for semi-naive/naive
// differential testing. Layer discipline makes stratifiability structural:
// negation only ever looks at a strictly lower layer.

struct rand_pred {
  std::string name;
  int arity;
  int layer;
};

inline std::string random_stratified_program(std::mt19937& rng) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const std::vector<std::string> constants = {"a", "b", "c", "d"};
  const int nconst = pick(1, 4);
  const std::vector<std::string> vars = {"X", "Y", "Z"};

  std::vector<rand_pred> preds;
  const int npred = pick(3, 5);
  for (int i = 0; i < npred; ++i)
    preds.push_back({"p" + std::to_string(i), pick(1, 2), pick(0, 2)});

  std::ostringstream out;

  const int nfacts = pick(2, 4);
  for (int i = 0; i < nfacts; ++i) {
    const rand_pred& p = preds[pick(0, npred - 1)];
    out << p.name << "(";
    for (int a = 0; a < p.arity; ++a)
      out << (a ? "," : "") << constants[pick(0, nconst - 1)];
    out << ").\n";
  }

  const int nrules = pick(2, 4);
  for (int r = 0; r < nrules; ++r) {
    const rand_pred& h = preds[pick(0, npred - 1)];
    std::vector<const rand_pred*> lower_eq, strictly_lower;
    for (const rand_pred& p : preds) {
      if (p.layer <= h.layer) lower_eq.push_back(&p);
      if (p.layer < h.layer) strictly_lower.push_back(&p);
    }

    std::vector<std::string> body;
    std::vector<std::string> bound;
    const int npos = pick(1, 2);
    for (int b = 0; b < npos; ++b) {
      const rand_pred& p = *lower_eq[pick(0, static_cast<int>(lower_eq.size()) - 1)];
      std::string lit = p.name + "(";
      for (int a = 0; a < p.arity; ++a) {
        if (a) lit += ",";
        if (pick(0, 2) == 0) {
          lit += constants[pick(0, nconst - 1)];
        } else {
          const std::string& v = vars[pick(0, 2)];
          bound.push_back(v);
          lit += v;
        }
      }
      lit += ")";
      body.push_back(lit);
    }

    if (!strictly_lower.empty() && !bound.empty() && pick(0, 1) == 0) {
      const rand_pred& p =
          *strictly_lower[pick(0, static_cast<int>(strictly_lower.size()) - 1)];
      std::string lit = "not " + p.name + "(";
      for (int a = 0; a < p.arity; ++a) {
        if (a) lit += ",";
        lit += pick(0, 1) == 0 ? constants[pick(0, nconst - 1)]
                               : bound[pick(0, static_cast<int>(bound.size()) - 1)];
      }
      lit += ")";
      body.push_back(lit);
    }

    std::string head = h.name + "(";
    for (int a = 0; a < h.arity; ++a) {
      if (a) head += ",";
      if (!bound.empty() && pick(0, 2) != 0)
        head += bound[pick(0, static_cast<int>(bound.size()) - 1)];
      else
        head += constants[pick(0, nconst - 1)];
    }
    head += ")";

    out << head << " :- ";
    for (std::size_t b = 0; b < body.size(); ++b) out << (b ? ", " : "") << body[b];
    out << ".\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Random guess programs (≤ 12 decision atoms) for the antichain property.
// Constraints range over ground guess literals of either polarity, plus an
// occasional constraint through a derived predicate.

inline std::string random_guess_program(std::mt19937& rng) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const std::vector<std::string> items = {"a", "b", "c", "d"};
  const int nitems = pick(2, 4);

  std::ostringstream out;
  for (int i = 0; i < nitems; ++i) out << "item(" << items[i] << ").\n";

  const int nguess = pick(1, 2);
  std::vector<std::string> gpred;
  for (int i = 0; i < nguess; ++i) {
    gpred.push_back("g" + std::to_string(i));
    out << "#guess g" << i << "(X) :- item(X).\n";
  }
  const bool flag = pick(0, 1) == 1;
  if (flag) out << "#guess flag.\n";

  out << "covered :- g0(X).\n";

  const int ncons = pick(1, 4);
  for (int c = 0; c < ncons; ++c) {
    const int len = pick(1, 2);
    out << ":- ";
    for (int l = 0; l < len; ++l) {
      if (l) out << ", ";
      if (pick(0, 3) == 0) out << "not ";
      if (flag && pick(0, 4) == 0)
        out << "flag";
      else
        out << gpred[pick(0, nguess - 1)] << "(" << items[pick(0, nitems - 1)] << ")";
    }
    out << ".\n";
  }
  if (pick(0, 1) == 0) out << ":- not covered.\n";
  return out.str();
}

}  // namespace testutil
