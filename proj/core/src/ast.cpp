#include "sky/ast.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <sstream>

namespace sky {

term make_constant(std::string name) { return term{term_kind::constant, std::move(name)}; }

term make_variable(std::string name) { return term{term_kind::variable, std::move(name)}; }

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool constant_less(const std::string& a, const std::string& b) {
  const bool ia = is_integer_text(a), ib = is_integer_text(b);
  if (ia != ib) return ia;  // integers sort before identifiers
  if (ia && ib) {
    // canonical decimals: shorter means smaller
    if (a.size() != b.size()) return a.size() < b.size();
  }
  return a < b;
}

bool atom::is_ground() const {
  return std::none_of(args.begin(), args.end(),
                      [](const term& t) { return t.is_variable(); });
}

bool structural_equal(const rule& a, const rule& b) {
  return a.kind == b.kind && a.head == b.head && a.body == b.body;
}

bool structural_equal(const program& a, const program& b) {
  if (a.rules.size() != b.rules.size()) return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i)
    if (!structural_equal(a.rules[i], b.rules[i])) return false;
  return a.policy == b.policy && a.show == b.show;
}

// ---------------------------------------------------------------------------
// Rendering

std::string render(const term& t) { return t.name; }

std::string render(const atom& a) {
  if (a.args.empty()) return a.predicate;
  std::string out = a.predicate + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    out += a.args[i].name;
  }
  out += ")";
  return out;
}

std::string render(const literal& l) {
  return l.negated ? "not " + render(l.a) : render(l.a);
}

std::string render(const rule& r) {
  std::string out;
  if (r.kind == rule_kind::guess) out += "#guess ";
  if (r.head) out += render(*r.head);
  if (!r.body.empty()) {
    if (r.head) out += " ";
    out += ":- ";
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      if (i) out += ", ";
      out += render(r.body[i]);
    }
  } else if (!r.head) {
    out += ":- ";
  }
  out += ".";
  return out;
}

// ---------------------------------------------------------------------------
// Safety

std::vector<safety_violation> validate_safety(const rule& r) {
  std::set<std::string> bound;
  for (const literal& l : r.body)
    if (!l.negated)
      for (const term& t : l.a.args)
        if (t.is_variable()) bound.insert(t.name);

  std::vector<safety_violation> out;
  std::set<std::pair<std::string, std::string>> seen;
  auto report = [&](const std::string& var, const std::string& where) {
    if (seen.emplace(var, where).second) out.push_back({var, where});
  };

  if (r.head)
    for (const term& t : r.head->args)
      if (t.is_variable() && !bound.count(t.name)) report(t.name, "head");

  for (std::size_t i = 0; i < r.body.size(); ++i) {
    const literal& l = r.body[i];
    if (!l.negated) continue;
    for (const term& t : l.a.args)
      if (t.is_variable() && !bound.count(t.name))
        report(t.name, "negated body literal " + std::to_string(i + 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dependency graph

dependency_graph build_dependency_graph(const std::vector<rule>& rules) {
  std::set<std::string> verts;
  std::set<dep_edge> edges;
  for (const rule& r : rules) {
    if (r.head) verts.insert(r.head->predicate);
    for (const literal& l : r.body) verts.insert(l.a.predicate);
    if (!r.head) continue;
    for (const literal& l : r.body)
      edges.insert({l.a.predicate, r.head->predicate, l.negated});
  }
  dependency_graph g;
  g.vertices.assign(verts.begin(), verts.end());
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

dependency_graph build_dependency_graph(const program& p) {
  return build_dependency_graph(p.rules);
}

// ---------------------------------------------------------------------------
// Stratification

namespace {

struct scc_info {
  std::vector<int> comp;  // vertex -> component id
  int count = 0;
};

scc_info strongly_connected_components(std::size_t n,
                                       const std::vector<std::vector<int>>& adj,
                                       const std::vector<std::vector<int>>& radj) {
  std::vector<int> order;
  order.reserve(n);
  std::vector<char> visited(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (visited[s]) continue;
    // iterative DFS, records finish order
    std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(s), 0}};
    visited[s] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < adj[v].size()) {
        int w = adj[v][i++];
        if (!visited[w]) {
          visited[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }

  scc_info info;
  info.comp.assign(n, -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (info.comp[*it] != -1) continue;
    const int id = info.count++;
    std::deque<int> queue{*it};
    info.comp[*it] = id;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : radj[v])
        if (info.comp[w] == -1) {
          info.comp[w] = id;
          queue.push_back(w);
        }
    }
  }
  return info;
}

}  // namespace

strat_result stratify(const dependency_graph& g) {
  const std::size_t n = g.vertices.size();
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < n; ++i) index[g.vertices[i]] = static_cast<int>(i);

  std::vector<std::vector<int>> adj(n), radj(n);
  for (const dep_edge& e : g.edges) {
    adj[index.at(e.from)].push_back(index.at(e.to));
    radj[index.at(e.to)].push_back(index.at(e.from));
  }

  const scc_info scc = strongly_connected_components(n, adj, radj);

  // A negative edge inside a strongly connected component means a cycle
  // through negation.
  for (const dep_edge& e : g.edges) {
    const int u = index.at(e.from), v = index.at(e.to);
    if (!e.negative || scc.comp[u] != scc.comp[v]) continue;

    // Close the cycle: shortest path v -> ... -> u inside the component,
    // then the negative edge u -> v.
    std::vector<int> parent(n, -1);
    std::deque<int> queue{v};
    parent[v] = v;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      if (x == u) break;
      for (int y : adj[x])
        if (scc.comp[y] == scc.comp[v] && parent[y] == -1) {
          parent[y] = x;
          queue.push_back(y);
        }
    }
    std::vector<std::string> cycle;
    for (int x = u; x != v; x = parent[x]) cycle.push_back(g.vertices[x]);
    cycle.push_back(g.vertices[v]);
    std::reverse(cycle.begin(), cycle.end());  // v ... u
    cycle.push_back(g.vertices[v]);            // close it
    return {std::nullopt, std::move(cycle)};
  }

  // Component levels: positive edges keep or raise the level, negative edges
  // raise it strictly. Components form a DAG, so relaxation converges.
  std::vector<int> level(scc.count, 0);
  for (int pass = 0; pass < scc.count; ++pass) {
    bool changed = false;
    for (const dep_edge& e : g.edges) {
      const int cu = scc.comp[index.at(e.from)], cv = scc.comp[index.at(e.to)];
      if (cu == cv) continue;
      const int want = level[cu] + (e.negative ? 1 : 0);
      if (want > level[cv]) {
        level[cv] = want;
        changed = true;
      }
    }
    if (!changed) break;
  }

  stratification s;
  int max_level = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int l = level[scc.comp[i]];
    s.level[g.vertices[i]] = l;
    max_level = std::max(max_level, l);
  }
  s.strata.resize(n == 0 ? 0 : max_level + 1);
  for (const std::string& v : g.vertices) s.strata[s.level[v]].push_back(v);
  return {std::move(s), {}};
}

strat_result stratify(const program& p) {
  return stratify(build_dependency_graph(p.rules));
}

// ---------------------------------------------------------------------------
// Validation

validation_error::validation_error(std::vector<validity_issue> issues)
    : std::runtime_error(issues.empty() ? "validation failed"
                                        : issues.front().message),
      issues_(std::move(issues)) {}

namespace {

std::string rule_pos(const rule& r, std::size_t idx) {
  std::ostringstream os;
  os << "rule " << (idx + 1);
  if (r.line > 0) os << " (line " << r.line << ")";
  return os.str();
}

std::string join_cycle(const std::vector<std::string>& cycle) {
  std::string out;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) out += " -> ";
    out += cycle[i];
  }
  return out;
}

}  // namespace

program finalize_program(std::vector<rule> rules, const directive_sets& directives) {
  std::vector<validity_issue> issues;

  // Arity consistency; first use wins for the reported baseline.
  std::map<std::string, std::pair<int, int>> arity_at;  // pred -> (arity, line)
  std::map<std::string, int> arity;
  auto see_atom = [&](const atom& a, int line) {
    const int ar = static_cast<int>(a.args.size());
    auto [it, inserted] = arity_at.emplace(a.predicate, std::make_pair(ar, line));
    if (inserted) {
      arity[a.predicate] = ar;
    } else if (it->second.first != ar) {
      std::ostringstream os;
      os << "predicate '" << a.predicate << "' used with arity " << ar;
      if (line > 0) os << " at line " << line;
      os << " but previously with arity " << it->second.first;
      if (it->second.second > 0) os << " at line " << it->second.second;
      issues.push_back({issue_kind::arity, os.str()});
    }
  };
  for (const rule& r : rules) {
    if (r.head) see_atom(*r.head, r.line);
    for (const literal& l : r.body) see_atom(l.a, r.line);
  }

  // Safety of every rule.
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (const safety_violation& v : validate_safety(rules[i])) {
      std::ostringstream os;
      os << rule_pos(rules[i], i) << ": variable '" << v.variable << "' in "
         << v.where << " is not bound by a positive body literal";
      issues.push_back({issue_kind::safety, os.str()});
    }
  }

  // Guess predicates are defined by exactly one head: their own guess rule.
  std::set<std::string> guess_preds;
  for (const rule& r : rules)
    if (r.kind == rule_kind::guess && r.head) guess_preds.insert(r.head->predicate);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const rule& r = rules[i];
    if (!r.head || !guess_preds.count(r.head->predicate)) continue;
    if (r.kind == rule_kind::guess) continue;
    std::ostringstream os;
    os << rule_pos(r, i) << ": guess predicate '" << r.head->predicate
       << "' may not appear in another head";
    issues.push_back({issue_kind::guess_structure, os.str()});
  }
  {
    std::map<std::string, int> guess_count;
    for (const rule& r : rules)
      if (r.kind == rule_kind::guess && r.head) ++guess_count[r.head->predicate];
    for (const auto& [pred, count] : guess_count)
      if (count > 1)
        issues.push_back({issue_kind::guess_structure,
                          "guess predicate '" + pred +
                              "' is declared by more than one #guess directive"});
  }

  const dependency_graph graph = build_dependency_graph(rules);

  // Guess ranges may not depend on guess predicates, directly or transitively.
  {
    // witness[p] = some guess predicate that p depends on (p is downstream of it)
    std::map<std::string, std::string> witness;
    std::deque<std::string> queue;
    for (const std::string& gp : guess_preds) {
      witness[gp] = gp;
      queue.push_back(gp);
    }
    while (!queue.empty()) {
      const std::string cur = queue.front();
      queue.pop_front();
      for (const dep_edge& e : graph.edges)
        if (e.from == cur && !witness.count(e.to)) {
          witness[e.to] = witness[cur];
          queue.push_back(e.to);
        }
    }
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const rule& r = rules[i];
      if (r.kind != rule_kind::guess) continue;
      for (const literal& l : r.body) {
        auto it = witness.find(l.a.predicate);
        if (it == witness.end()) continue;
        std::ostringstream os;
        os << rule_pos(r, i) << ": guess range refers to '" << l.a.predicate
           << "', which depends on guess predicate '" << it->second << "'";
        issues.push_back({issue_kind::guess_structure, os.str()});
      }
    }
  }

  strat_result strat = stratify(graph);
  if (!strat.strata) {
    issues.push_back({issue_kind::stratification,
                      "program is not stratifiable: cycle through negation: " +
                          join_cycle(strat.negative_cycle)});
  }

  // EDB predicates: never the head of a derivation or guess rule.
  std::set<std::string> idb;
  for (const rule& r : rules)
    if (r.head && r.kind != rule_kind::fact) idb.insert(r.head->predicate);
  std::set<std::string> edb_preds;
  for (const std::string& v : graph.vertices)
    if (!idb.count(v)) edb_preds.insert(v);

  // Policy resolution: explicit directives replace the default assignment of
  // guess predicates to minimized; EDB predicates are always fixed.
  std::set<std::string> mex(directives.minimize.begin(), directives.minimize.end());
  std::set<std::string> fex(directives.fix.begin(), directives.fix.end());
  std::set<std::string> known(graph.vertices.begin(), graph.vertices.end());

  auto check_known = [&](const std::set<std::string>& names, const char* where) {
    for (const std::string& p : names)
      if (!known.count(p))
        issues.push_back({issue_kind::policy,
                          "unknown predicate '" + p + "' in " + where + " directive"});
  };
  check_known(mex, "#minimize");
  check_known(fex, "#fix");
  for (const std::string& p : mex)
    if (fex.count(p))
      issues.push_back({issue_kind::policy,
                        "predicate '" + p + "' is listed in both #minimize and #fix"});
  for (const std::string& p : mex)
    if (edb_preds.count(p))
      issues.push_back({issue_kind::policy,
                        "extensional predicate '" + p +
                            "' cannot be minimized; predicates defined only by facts stay fixed"});

  circ_policy policy;
  if (!directives.minimize.empty()) {
    policy.minimized = mex;
  } else {
    for (const std::string& gp : guess_preds)
      if (!fex.count(gp)) policy.minimized.insert(gp);
  }
  policy.fixed = edb_preds;
  policy.fixed.insert(fex.begin(), fex.end());
  for (const std::string& p : known)
    if (!policy.minimized.count(p) && !policy.fixed.count(p))
      policy.varying.insert(p);

  std::set<std::string> show(directives.show.begin(), directives.show.end());
  check_known(show, "#show");

  if (!issues.empty()) throw validation_error(std::move(issues));

  program p;
  p.rules = std::move(rules);
  p.policy = std::move(policy);
  p.show = std::move(show);
  p.strata = std::move(*strat.strata);
  p.arity = std::move(arity);
  p.guess_predicates = std::move(guess_preds);
  p.edb_predicates = std::move(edb_preds);
  return p;
}

}  // namespace sky
