#pragma once

// Branching skolem chase computing the minimal named models of a program,
// plus query answering and the frozen-query decision procedures.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ontominer/error.hpp"
#include "ontominer/program.hpp"

namespace ontominer {

struct ChaseConfig {
  int skolem_depth_cap = 3;
  std::size_t max_branches = 100000;
};

// Facts sorted by (predicate, arguments).
struct Model {
  std::vector<Fact> facts;

  bool contains(const Fact& f) const { return std::binary_search(facts.begin(), facts.end(), f); }

  std::pair<std::vector<Fact>::const_iterator, std::vector<Fact>::const_iterator> of(PredId p) const {
    auto lo = std::lower_bound(facts.begin(), facts.end(), p, [](const Fact& f, PredId q) { return f.pred < q; });
    auto hi = std::upper_bound(lo, facts.end(), p, [](PredId q, const Fact& f) { return q < f.pred; });
    return {lo, hi};
  }

  std::pair<std::vector<Fact>::const_iterator, std::vector<Fact>::const_iterator> of(PredId p, ConstId first) const {
    auto lo = std::lower_bound(facts.begin(), facts.end(), Fact{p, {first}});
    auto hi = std::lower_bound(lo, facts.end(), Fact{p, {first + 1}});
    return {lo, hi};
  }

  bool operator==(const Model&) const = default;
  bool operator<(const Model& o) const { return facts < o.facts; }
};

struct ModelSet {
  std::vector<Model> models;
  bool inconsistent = false;
  bool truncated = false;
  Domain domain;  // named constants; skolem witnesses are projected away
};

namespace detail {

using Tuple = std::vector<ConstId>;

struct Branch {
  std::vector<std::set<Tuple>> rel;
  std::set<ConstId> skolems;

  bool has(PredId p, const Tuple& t) const { return rel[static_cast<std::size_t>(p)].count(t) > 0; }
};

class ChaseEngine {
 public:
  ChaseEngine(const GroundProgram& program, Domain domain, const std::vector<Fact>& facts, ChaseConfig cfg)
      : program_(program), domain_(std::move(domain)), facts_(facts), cfg_(cfg) {
    named_ = domain_.size();
    depth_.assign(named_, 0);
  }

  ModelSet run() {
    ModelSet out;
    Branch init;
    init.rel.resize(program_.signature.size());
    for (const auto& f : facts_) {
      if (Signature::is_virtual(f.pred)) continue;
      init.rel[static_cast<std::size_t>(f.pred)].insert(f.args);
    }
    std::vector<Branch> stack;
    stack.push_back(std::move(init));
    std::vector<Model> leaves;
    while (!stack.empty()) {
      Branch b = std::move(stack.back());
      stack.pop_back();
      while (true) {
        if (!saturate(b)) break;
        auto choice = find_open_disjunction(b);
        if (!choice) {
          leaves.push_back(project(b));
          break;
        }
        const auto& rule = program_.rules[static_cast<std::size_t>(choice->first)];
        for (std::size_t i = rule.head.size(); i-- > 1;) {
          Branch child = b;
          apply_head(child, rule, rule.head[i], choice->second);
          stack.push_back(std::move(child));
          if (stack.size() + 1 > cfg_.max_branches) throw BranchLimitExceeded(cfg_.max_branches);
        }
        apply_head(b, rule, rule.head[0], choice->second);
      }
    }
    out.truncated = truncated_;
    out.domain = domain_prefix();
    if (leaves.empty()) {
      out.inconsistent = true;
      return out;
    }
    std::sort(leaves.begin(), leaves.end(), [](const Model& a, const Model& b) {
      return a.facts.size() != b.facts.size() ? a.facts.size() < b.facts.size() : a.facts < b.facts;
    });
    leaves.erase(std::unique(leaves.begin(), leaves.end()), leaves.end());
    for (auto& m : leaves) {
      bool dominated = std::any_of(out.models.begin(), out.models.end(), [&](const Model& k) {
        return std::includes(m.facts.begin(), m.facts.end(), k.facts.begin(), k.facts.end());
      });
      if (!dominated) out.models.push_back(std::move(m));
    }
    std::sort(out.models.begin(), out.models.end());
    return out;
  }

 private:
  Domain domain_prefix() const {
    Domain d;
    for (std::size_t i = 0; i < named_; ++i)
      d.intern(domain_.name(static_cast<ConstId>(i)), domain_.is_individual(static_cast<ConstId>(i)));
    return d;
  }

  static ConstId resolve(std::int32_t arg, const std::vector<ConstId>& bind) {
    return is_var_arg(arg) ? bind[static_cast<std::size_t>(var_index(arg))] : arg;
  }

  // Calls cb for every binding of body in b; cb returns false to stop.
  template <class F>
  void match(const Branch& b, const ProgramRule& rule, F&& cb) {
    std::vector<ConstId> bind(static_cast<std::size_t>(rule.var_count()), -1);
    std::vector<char> done(rule.body.size(), 0);
    match_rec(b, rule.body, done, rule.body.size(), bind, cb);
  }

  template <class F>
  bool match_rec(const Branch& b, const std::vector<ProgramAtom>& body, std::vector<char>& done,
                 std::size_t remaining, std::vector<ConstId>& bind, F& cb) {
    if (remaining == 0) return cb(bind);
    // Prefer fully bound checks, then stored atoms with most bound arguments.
    std::size_t pick = body.size();
    int best = -1;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (done[i]) continue;
      const auto& a = body[i];
      int bound = 0;
      for (auto arg : a.args)
        if (!is_var_arg(arg) || bind[static_cast<std::size_t>(var_index(arg))] >= 0) ++bound;
      int score;
      if (bound == static_cast<int>(a.args.size())) score = 1000;
      else if (Signature::is_virtual(a.pred)) score = 0;
      else score = 10 + bound;
      if (score > best) {
        best = score;
        pick = i;
      }
    }
    const auto& a = body[pick];
    done[pick] = 1;
    bool go_on = true;
    if (a.pred == Signature::kO || a.pred == Signature::kThing) {
      auto arg = a.args[0];
      ConstId c = resolve(arg, bind);
      if (c >= 0) {
        bool ok = a.pred == Signature::kThing || domain_.is_individual(c);
        if (ok) go_on = match_rec(b, body, done, remaining - 1, bind, cb);
      } else {
        auto& slot = bind[static_cast<std::size_t>(var_index(arg))];
        std::vector<ConstId> range;
        for (std::size_t i = 0; i < named_; ++i)
          if (a.pred == Signature::kThing || domain_.is_individual(static_cast<ConstId>(i)))
            range.push_back(static_cast<ConstId>(i));
        if (a.pred == Signature::kThing) range.insert(range.end(), b.skolems.begin(), b.skolems.end());
        for (ConstId v : range) {
          slot = v;
          go_on = match_rec(b, body, done, remaining - 1, bind, cb);
          if (!go_on) break;
        }
        slot = -1;
      }
    } else {
      const auto& rel = b.rel[static_cast<std::size_t>(a.pred)];
      ConstId first = resolve(a.args[0], bind);
      auto lo = first >= 0 ? rel.lower_bound(Tuple{first}) : rel.begin();
      std::vector<std::size_t> assigned;
      for (auto it = lo; it != rel.end(); ++it) {
        const auto& t = *it;
        if (first >= 0 && t[0] != first) break;
        bool ok = true;
        assigned.clear();
        for (std::size_t i = 0; i < a.args.size(); ++i) {
          auto arg = a.args[i];
          if (!is_var_arg(arg)) {
            if (t[i] != arg) { ok = false; break; }
            continue;
          }
          auto& slot = bind[static_cast<std::size_t>(var_index(arg))];
          if (slot < 0) {
            slot = t[i];
            assigned.push_back(static_cast<std::size_t>(var_index(arg)));
          } else if (slot != t[i]) {
            ok = false;
            break;
          }
        }
        if (ok) go_on = match_rec(b, body, done, remaining - 1, bind, cb);
        for (auto v : assigned) bind[v] = -1;
        if (!go_on) break;
      }
    }
    done[pick] = 0;
    return go_on;
  }

  bool has_witness(const Branch& b, const HeadAtom& h, ConstId f) const {
    const auto& rel = b.rel[static_cast<std::size_t>(h.role)];
    auto filler_ok = [&](ConstId w) {
      return h.filler == Signature::kThing || b.has(h.filler, Tuple{w});
    };
    if (!h.inverse) {
      for (auto it = rel.lower_bound(Tuple{f}); it != rel.end() && (*it)[0] == f; ++it)
        if (filler_ok((*it)[1])) return true;
      return false;
    }
    for (const auto& t : rel)
      if (t[1] == f && filler_ok(t[0])) return true;
    return false;
  }

  bool exists_blocked(ConstId f) const { return depth_[static_cast<std::size_t>(f)] + 1 > cfg_.skolem_depth_cap; }

  ConstId skolem(int rule, ConstId f) {
    auto key = std::make_pair(rule, f);
    if (auto it = skolems_.find(key); it != skolems_.end()) return it->second;
    ConstId c = domain_.intern("_sk" + std::to_string(skolems_.size() + 1), false);
    depth_.push_back(depth_[static_cast<std::size_t>(f)] + 1);
    skolems_.emplace(key, c);
    return c;
  }

  void exists_facts(const ProgramRule& rule, const HeadAtom& h, ConstId f,
                    std::vector<std::pair<PredId, Tuple>>& out) {
    ConstId w = skolem(rule.id, f);
    out.push_back({h.role, h.inverse ? Tuple{w, f} : Tuple{f, w}});
    if (h.filler != Signature::kThing) out.push_back({h.filler, Tuple{w}});
  }

  Tuple ground(const ProgramAtom& a, const std::vector<ConstId>& bind) const {
    Tuple t;
    t.reserve(a.args.size());
    for (auto arg : a.args) t.push_back(resolve(arg, bind));
    return t;
  }

  void insert(Branch& b, PredId p, Tuple t, bool& changed) {
    for (ConstId c : t)
      if (static_cast<std::size_t>(c) >= named_) b.skolems.insert(c);
    if (b.rel[static_cast<std::size_t>(p)].insert(std::move(t)).second) changed = true;
  }

  void apply_head(Branch& b, const ProgramRule& rule, const HeadAtom& h, const std::vector<ConstId>& bind) {
    bool changed = false;
    if (h.kind == HeadAtom::Kind::Plain) {
      insert(b, h.atom.pred, ground(h.atom, bind), changed);
      return;
    }
    std::vector<std::pair<PredId, Tuple>> facts;
    exists_facts(rule, h, resolve(h.frontier, bind), facts);
    for (auto& [p, t] : facts) insert(b, p, std::move(t), changed);
  }

  // Horn fixpoint; false when a constraint fires.
  bool saturate(Branch& b) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::pair<PredId, Tuple>> pending;
      for (const auto& rule : program_.rules) {
        if (rule.is_disjunctive()) continue;
        bool dead = false;
        match(b, rule, [&](const std::vector<ConstId>& bind) {
          if (rule.is_constraint()) {
            dead = true;
            return false;
          }
          const auto& h = rule.head[0];
          if (h.kind == HeadAtom::Kind::Plain) {
            auto t = ground(h.atom, bind);
            if (!b.has(h.atom.pred, t)) pending.push_back({h.atom.pred, std::move(t)});
            return true;
          }
          ConstId f = resolve(h.frontier, bind);
          if (has_witness(b, h, f)) return true;
          if (exists_blocked(f)) {
            truncated_ = true;
            return true;
          }
          exists_facts(rule, h, f, pending);
          return true;
        });
        if (dead) return false;
      }
      for (auto& [p, t] : pending) insert(b, p, std::move(t), changed);
    }
    return true;
  }

  std::optional<std::pair<int, std::vector<ConstId>>> find_open_disjunction(const Branch& b) {
    std::optional<std::pair<int, std::vector<ConstId>>> found;
    for (const auto& rule : program_.rules) {
      if (!rule.is_disjunctive()) continue;
      match(b, rule, [&](const std::vector<ConstId>& bind) {
        for (const auto& h : rule.head) {
          if (h.kind == HeadAtom::Kind::Plain) {
            if (b.has(h.atom.pred, ground(h.atom, bind))) return true;
            continue;
          }
          ConstId f = resolve(h.frontier, bind);
          if (has_witness(b, h, f)) return true;
          // A witness beyond the depth cap is assumed to exist.
          if (exists_blocked(f)) {
            truncated_ = true;
            return true;
          }
        }
        found = std::make_pair(rule.id, bind);
        return false;
      });
      if (found) return found;
    }
    return std::nullopt;
  }

  Model project(const Branch& b) const {
    Model m;
    for (std::size_t p = 0; p < b.rel.size(); ++p)
      for (const auto& t : b.rel[p]) {
        bool named = std::all_of(t.begin(), t.end(), [&](ConstId c) { return static_cast<std::size_t>(c) < named_; });
        if (named) m.facts.push_back({static_cast<PredId>(p), t});
      }
    return m;
  }

  const GroundProgram& program_;
  Domain domain_;
  const std::vector<Fact>& facts_;
  ChaseConfig cfg_;
  std::size_t named_ = 0;
  std::vector<int> depth_;
  std::map<std::pair<int, ConstId>, ConstId> skolems_;
  bool truncated_ = false;
};

}  // namespace detail

inline ModelSet chase(const GroundProgram& program, const Domain& domain, const std::vector<Fact>& facts,
                      ChaseConfig cfg = {}) {
  return detail::ChaseEngine(program, domain, facts, cfg).run();
}

inline ModelSet chase(const GroundProgram& program, ChaseConfig cfg = {}) {
  return chase(program, program.domain, program.facts, cfg);
}

inline bool cautious_entails(const ModelSet& ms, const Fact& f) {
  if (ms.inconsistent) throw InconsistentKB();
  return std::all_of(ms.models.begin(), ms.models.end(), [&](const Model& m) { return m.contains(f); });
}

inline std::string models_to_string(const ModelSet& ms, const Signature& sig) {
  std::string out;
  for (std::size_t i = 0; i < ms.models.size(); ++i) {
    if (i) out += "---\n";
    std::vector<std::pair<std::string, std::vector<std::string>>> rows;
    for (const auto& f : ms.models[i].facts) {
      std::vector<std::string> args;
      for (auto c : f.args) args.push_back(ms.domain.name(c));
      rows.push_back({sig[f.pred].name, std::move(args)});
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [p, args] : rows) {
      out += p + "(";
      for (std::size_t k = 0; k < args.size(); ++k) out += (k ? "," : "") + args[k];
      out += ")\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjunctive queries. Variable 0 is the distinguished variable key; every
// variable is implicitly restricted to named individuals.

struct QueryAtom {
  PredId pred = 0;
  std::vector<int> vars;

  auto operator<=>(const QueryAtom&) const = default;
};

struct Query {
  std::vector<QueryAtom> atoms;
  int var_count = 1;

  bool operator==(const Query&) const = default;
};

inline std::string var_name(int v) { return v == 0 ? "key" : "x" + std::to_string(v); }

inline std::string to_string(const QueryAtom& a, const Signature& sig) {
  std::string s = sig[a.pred].name + "(";
  for (std::size_t i = 0; i < a.vars.size(); ++i) s += (i ? "," : "") + var_name(a.vars[i]);
  return s + ")";
}

inline std::string to_string(const Query& q, const Signature& sig) {
  std::string s;
  for (std::size_t i = 0; i < q.atoms.size(); ++i) s += (i ? ", " : "") + to_string(q.atoms[i], sig);
  return s;
}

// Renumbers variables by first occurrence, keeping key as variable 0.
inline Query compact(const Query& q) {
  std::map<int, int> remap{{0, 0}};
  Query out;
  for (const auto& a : q.atoms) {
    QueryAtom b{a.pred, {}};
    for (int v : a.vars) {
      auto [it, fresh] = remap.try_emplace(v, static_cast<int>(remap.size()));
      b.vars.push_back(it->second);
    }
    out.atoms.push_back(std::move(b));
  }
  out.var_count = static_cast<int>(remap.size());
  return out;
}

inline bool is_linked(const Query& q) {
  std::vector<char> linked(static_cast<std::size_t>(q.var_count), 0);
  linked[0] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& a : q.atoms) {
      bool any = std::any_of(a.vars.begin(), a.vars.end(), [&](int v) { return linked[static_cast<std::size_t>(v)]; });
      if (!any) continue;
      for (int v : a.vars)
        if (!linked[static_cast<std::size_t>(v)]) linked[static_cast<std::size_t>(v)] = changed = true;
    }
  }
  std::vector<char> used(static_cast<std::size_t>(q.var_count), 0);
  for (const auto& a : q.atoms)
    for (int v : a.vars) used[static_cast<std::size_t>(v)] = 1;
  for (std::size_t v = 1; v < used.size(); ++v)
    if (used[v] && !linked[v]) return false;
  return true;
}

namespace detail {

inline bool query_match(const Model& m, const Domain& d, const Query& q, std::vector<char>& done,
                        std::size_t remaining, std::vector<ConstId>& bind) {
  if (remaining == 0) return true;
  std::size_t pick = q.atoms.size();
  int best = -1;
  for (std::size_t i = 0; i < q.atoms.size(); ++i) {
    if (done[i]) continue;
    int bound = 0;
    for (int v : q.atoms[i].vars)
      if (bind[static_cast<std::size_t>(v)] >= 0) ++bound;
    if (bound > best) {
      best = bound;
      pick = i;
    }
  }
  const auto& a = q.atoms[pick];
  done[pick] = 1;
  bool found = false;
  auto try_tuple = [&](const std::vector<ConstId>& t) {
    std::vector<int> assigned;
    bool ok = true;
    for (std::size_t i = 0; i < a.vars.size(); ++i) {
      auto& slot = bind[static_cast<std::size_t>(a.vars[i])];
      if (slot < 0) {
        if (!d.is_individual(t[i])) { ok = false; break; }
        slot = t[i];
        assigned.push_back(a.vars[i]);
      } else if (slot != t[i]) {
        ok = false;
        break;
      }
    }
    if (ok) found = query_match(m, d, q, done, remaining - 1, bind);
    for (int v : assigned) bind[static_cast<std::size_t>(v)] = -1;
    return found;
  };
  if (a.pred == Signature::kO || a.pred == Signature::kThing) {
    ConstId c = bind[static_cast<std::size_t>(a.vars[0])];
    if (c >= 0) {
      if (d.is_individual(c)) found = query_match(m, d, q, done, remaining - 1, bind);
    } else {
      for (ConstId i : d.individuals())
        if (try_tuple({i})) break;
    }
  } else {
    ConstId first = bind[static_cast<std::size_t>(a.vars[0])];
    auto [lo, hi] = first >= 0 ? m.of(a.pred, first) : m.of(a.pred);
    for (auto it = lo; it != hi; ++it)
      if (try_tuple(it->args)) break;
  }
  done[pick] = 0;
  return found;
}

}  // namespace detail

inline bool has_answer(const Model& m, const Domain& d, const Query& q, ConstId key) {
  std::vector<ConstId> bind(static_cast<std::size_t>(q.var_count), -1);
  bind[0] = key;
  std::vector<char> done(q.atoms.size(), 0);
  return detail::query_match(m, d, q, done, q.atoms.size(), bind);
}

// Certain answers: individuals a such that every minimal model has a match
// with key = a.
inline std::vector<ConstId> answer_query(const ModelSet& ms, const Query& q, std::optional<ConstId> key = {}) {
  if (ms.inconsistent) throw InconsistentKB();
  std::vector<ConstId> cand;
  if (key) {
    if (ms.domain.is_individual(*key)) cand.push_back(*key);
  } else {
    cand = ms.domain.individuals();
  }
  for (const auto& m : ms.models) {
    std::vector<ConstId> keep;
    for (ConstId c : cand)
      if (has_answer(m, ms.domain, q, c)) keep.push_back(c);
    cand = std::move(keep);
    if (cand.empty()) break;
  }
  return cand;
}

// ---------------------------------------------------------------------------
// Decision procedures over cp(KB,P): the program with its ground facts removed.

class QueryReasoner {
 public:
  struct Frozen {
    ModelSet models;
    std::vector<ConstId> vars;  // frozen constant per query variable
  };

  QueryReasoner(const GroundProgram& program, ChaseConfig cfg = {}, bool keep_nondl = false)
      : program_(&program), cfg_(cfg) {
    cp_domain_ = program.domain;
    for (std::size_t c = 0; c < cp_domain_.size(); ++c) cp_domain_.set_individual(static_cast<ConstId>(c), false);
    if (keep_nondl) {
      for (const auto& f : program.facts) {
        if (program.signature[f.pred].kind != PredicateKind::NonDL) continue;
        cp_facts_.push_back(f);
        for (auto c : f.args) cp_domain_.set_individual(c, true);
      }
    }
  }

  const Frozen& freeze(const Query& q) {
    std::string key = cache_key(q);
    if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
    Domain d = cp_domain_;
    auto frozen = std::make_unique<Frozen>();
    for (int v = 0; v < q.var_count; ++v) frozen->vars.push_back(d.intern("#" + var_name(v), true));
    std::vector<Fact> facts = cp_facts_;
    for (const auto& a : q.atoms) {
      Fact f{a.pred, {}};
      for (int v : a.vars) f.args.push_back(frozen->vars[static_cast<std::size_t>(v)]);
      facts.push_back(std::move(f));
    }
    frozen->models = chase(*program_, d, facts, cfg_);
    truncated_ = truncated_ || frozen->models.truncated;
    ++chases_;
    return *cache_.emplace(std::move(key), std::move(frozen)).first->second;
  }

  bool satisfiable(const Query& q) { return !freeze(q).models.inconsistent; }

  // general ⪰ specific: every answer of specific is an answer of general.
  bool subsumes(const Query& general, const Query& specific) {
    const auto& f = freeze(specific);
    if (f.models.inconsistent) throw InconsistentKB("frozen query is inconsistent with the terminology");
    return !answer_query(f.models, general, f.vars[0]).empty();
  }

  bool equivalent(const Query& a, const Query& b) { return subsumes(a, b) && subsumes(b, a); }

  bool truncated() const { return truncated_; }
  std::size_t chase_count() const { return chases_; }
  const GroundProgram& program() const { return *program_; }

 private:
  static std::string cache_key(const Query& q) {
    std::string s = std::to_string(q.var_count);
    for (const auto& a : q.atoms) {
      s += "|" + std::to_string(a.pred);
      for (int v : a.vars) s += "," + std::to_string(v);
    }
    return s;
  }

  const GroundProgram* program_;
  ChaseConfig cfg_;
  Domain cp_domain_;
  std::vector<Fact> cp_facts_;
  std::map<std::string, std::unique_ptr<Frozen>> cache_;
  bool truncated_ = false;
  std::size_t chases_ = 0;
};

inline bool is_satisfiable_query(const GroundProgram& program, const Query& q, ChaseConfig cfg = {}) {
  return QueryReasoner(program, cfg).satisfiable(q);
}

inline bool subsumes(const GroundProgram& program, const Query& general, const Query& specific, ChaseConfig cfg = {}) {
  return QueryReasoner(program, cfg).subsumes(general, specific);
}

inline bool equivalent(const GroundProgram& program, const Query& a, const Query& b, ChaseConfig cfg = {}) {
  return QueryReasoner(program, cfg).equivalent(a, b);
}

// ---------------------------------------------------------------------------
// Classification of named concepts and roles.

struct Taxonomy {
  // Strict or equivalent subsumers of each satisfiable name (self excluded).
  std::map<PredId, std::set<PredId>> subsumers;
  std::set<PredId> unsatisfiable;
  // Direct strict edges (sub, super) of the transitive reduction.
  std::vector<std::pair<PredId, PredId>> direct;

  bool subsumed_by(PredId a, PredId b) const {
    if (a == b) return true;
    auto it = subsumers.find(a);
    return it != subsumers.end() && it->second.count(b) > 0;
  }
  bool strictly_below(PredId a, PredId b) const { return a != b && subsumed_by(a, b) && !subsumed_by(b, a); }
};

inline Taxonomy classify(const GroundProgram& program, ChaseConfig cfg = {}) {
  Taxonomy tax;
  QueryReasoner reasoner(program, cfg);
  std::vector<PredId> concepts, roles;
  for (PredId p = 0; static_cast<std::size_t>(p) < program.signature.size(); ++p) {
    if (Signature::is_builtin(p) || program.signature[p].auxiliary) continue;
    if (program.signature[p].kind == PredicateKind::Concept) concepts.push_back(p);
    if (program.signature[p].kind == PredicateKind::Role) roles.push_back(p);
  }
  auto run = [&](const std::vector<PredId>& names, int arity) {
    for (PredId a : names) {
      Query q;
      q.var_count = arity;
      q.atoms.push_back({a, arity == 1 ? std::vector<int>{0} : std::vector<int>{0, 1}});
      const auto& f = reasoner.freeze(q);
      if (f.models.inconsistent) {
        tax.unsatisfiable.insert(a);
        continue;
      }
      auto& sups = tax.subsumers[a];
      for (PredId b : names) {
        if (b == a) continue;
        Fact fact{b, {f.vars.begin(), f.vars.begin() + arity}};
        if (cautious_entails(f.models, fact)) sups.insert(b);
      }
    }
  };
  run(concepts, 1);
  run(roles, 2);
  for (const auto& [a, sups] : tax.subsumers)
    for (PredId b : sups) {
      if (!tax.strictly_below(a, b)) continue;
      bool direct = std::none_of(sups.begin(), sups.end(), [&](PredId c) {
        return tax.strictly_below(a, c) && tax.strictly_below(c, b);
      });
      if (direct) tax.direct.push_back({a, b});
    }
  return tax;
}

}  // namespace ontominer
