#pragma once

// Reference procedures used to cross-check the chase and the miner. They share
// no code with the library beyond its data types.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "ontominer/ontominer.hpp"

namespace oracle {

using namespace ontominer;

using FactSet = std::set<Fact>;

struct Clause {
  std::vector<int> body;  // positive atoms that must hold
  std::vector<int> head;  // at least one must hold
};

// Tiny DPLL over clauses "body -> head1 | ... | headn".
class Dpll {
 public:
  Dpll(int atoms, std::vector<Clause> clauses) : n_(atoms), clauses_(std::move(clauses)) {}

  void add(Clause c) { clauses_.push_back(std::move(c)); }

  // Returns true with a model in `out`; decisions try false first.
  bool solve(std::vector<char>& out) {
    std::vector<signed char> val(static_cast<std::size_t>(n_), -1);
    if (!search(val)) return false;
    out.assign(val.begin(), val.end());
    return true;
  }

 private:
  enum class State { Satisfied, Conflict, Unit, Open };

  State status(const Clause& c, const std::vector<signed char>& val, int& unit_atom, bool& unit_value) const {
    int free_count = 0;
    for (int b : c.body) {
      auto v = val[static_cast<std::size_t>(b)];
      if (v == 0) return State::Satisfied;
      if (v == -1) {
        ++free_count;
        unit_atom = b;
        unit_value = false;
      }
    }
    for (int h : c.head) {
      auto v = val[static_cast<std::size_t>(h)];
      if (v == 1) return State::Satisfied;
      if (v == -1) {
        ++free_count;
        unit_atom = h;
        unit_value = true;
      }
    }
    if (free_count == 0) return State::Conflict;
    return free_count == 1 ? State::Unit : State::Open;
  }

  bool propagate(std::vector<signed char>& val) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : clauses_) {
        int atom = -1;
        bool value = false;
        auto st = status(c, val, atom, value);
        if (st == State::Conflict) return false;
        if (st == State::Unit) {
          val[static_cast<std::size_t>(atom)] = value ? 1 : 0;
          changed = true;
        }
      }
    }
    return true;
  }

  bool search(std::vector<signed char>& val) const {
    if (!propagate(val)) return false;
    auto it = std::find(val.begin(), val.end(), -1);
    if (it == val.end()) return true;
    for (signed char choice : {0, 1}) {
      auto copy = val;
      copy[static_cast<std::size_t>(it - val.begin())] = choice;
      if (search(copy)) {
        val = copy;
        return true;
      }
    }
    return false;
  }

  int n_;
  std::vector<Clause> clauses_;
};

struct GroundClauses {
  std::vector<Fact> atoms;
  std::map<Fact, int> index;
  std::vector<Clause> clauses;

  int id(const Fact& f) {
    auto [it, inserted] = index.emplace(f, static_cast<int>(atoms.size()));
    if (inserted) atoms.push_back(f);
    return it->second;
  }
};

// Grounds an existential-free program over its named constants. Only atoms
// reachable when every disjunct is taken can ever be true; the rest are dropped.
inline GroundClauses ground(const GroundProgram& p) {
  std::size_t n = p.domain.size();
  std::set<Fact> reachable;
  for (const auto& f : p.facts)
    if (!Signature::is_virtual(f.pred)) reachable.insert(f);

  auto holds_builtin = [&](const Fact& f) {
    if (f.pred == Signature::kO) return p.domain.is_individual(f.args[0]);
    if (f.pred == Signature::kThing) return true;
    if (f.pred == Signature::kEquality) throw std::logic_error("equality is not supported by the oracle");
    return false;
  };

  struct Instance {
    std::vector<Fact> body, head;
  };
  auto instances = [&](const ProgramRule& r) {
    std::vector<Instance> out;
    std::vector<ConstId> bind(static_cast<std::size_t>(r.var_count()), 0);
    auto subst = [&](const ProgramAtom& a) {
      Fact f{a.pred, {}};
      for (auto arg : a.args) f.args.push_back(is_var_arg(arg) ? bind[static_cast<std::size_t>(var_index(arg))] : arg);
      return f;
    };
    while (true) {
      Instance inst;
      bool ok = true;
      for (const auto& a : r.body) {
        Fact f = subst(a);
        if (Signature::is_builtin(f.pred)) {
          if (!holds_builtin(f)) ok = false;
        } else if (!reachable.count(f)) {
          ok = false;
        } else {
          inst.body.push_back(f);
        }
      }
      if (ok) {
        for (const auto& h : r.head) {
          if (h.kind != HeadAtom::Kind::Plain) throw std::logic_error("existential head in oracle input");
          inst.head.push_back(subst(h.atom));
        }
        out.push_back(std::move(inst));
      }
      std::size_t k = 0;
      while (k < bind.size() && ++bind[k] == static_cast<ConstId>(n)) bind[k++] = 0;
      if (k == bind.size()) break;
    }
    return out;
  };

  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& r : p.rules)
      for (const auto& inst : instances(r))
        for (const auto& h : inst.head)
          if (!Signature::is_virtual(h.pred) && reachable.insert(h).second) grew = true;
  }

  GroundClauses g;
  for (const auto& f : reachable) g.id(f);
  for (const auto& f : p.facts)
    if (!Signature::is_virtual(f.pred)) g.clauses.push_back({{}, {g.id(f)}});
  for (const auto& r : p.rules)
    for (const auto& inst : instances(r)) {
      Clause c;
      for (const auto& b : inst.body) c.body.push_back(g.id(b));
      bool trivially_true = false;
      for (const auto& h : inst.head) {
        if (Signature::is_builtin(h.pred)) {
          if (holds_builtin(h)) trivially_true = true;
          continue;
        }
        c.head.push_back(g.id(h));
      }
      if (!trivially_true) g.clauses.push_back(std::move(c));
    }
  return g;
}

struct MinimalModels {
  bool inconsistent = false;
  std::set<FactSet> models;
};

// Enumerates minimal models: find any model, shrink it until no strictly
// smaller model exists, record it, then block it and all its supersets.
inline MinimalModels minimal_models(const GroundProgram& p) {
  auto g = ground(p);
  int n = static_cast<int>(g.atoms.size());
  MinimalModels out;
  std::vector<Clause> blocking;
  while (true) {
    Dpll solver(n, g.clauses);
    for (const auto& b : blocking) solver.add(b);
    std::vector<char> model;
    if (!solver.solve(model)) break;
    while (true) {
      Dpll smaller(n, g.clauses);
      Clause drop;  // some true atom becomes false
      for (int a = 0; a < n; ++a) {
        if (model[static_cast<std::size_t>(a)]) drop.body.push_back(a);
        else smaller.add({{a}, {}});
      }
      smaller.add(drop);
      std::vector<char> next;
      if (!smaller.solve(next)) break;
      model = next;
    }
    FactSet facts;
    Clause block;
    for (int a = 0; a < n; ++a)
      if (model[static_cast<std::size_t>(a)]) {
        facts.insert(g.atoms[static_cast<std::size_t>(a)]);
        block.body.push_back(a);
      }
    out.models.insert(facts);
    blocking.push_back(block);
    if (block.body.empty()) break;
  }
  out.inconsistent = out.models.empty();
  return out;
}

inline std::set<FactSet> as_fact_sets(const ModelSet& ms) {
  std::set<FactSet> out;
  for (const auto& m : ms.models) {
    FactSet s;
    for (const auto& f : m.facts)
      if (!Signature::is_virtual(f.pred)) s.insert(f);
    out.insert(s);
  }
  return out;
}

// Every linked pattern Ref(key), a2, ..., ad over the given predicates, with
// distinct variables inside each atom and fresh variables numbered in order.
inline std::vector<Query> enumerate_patterns(const Signature& sig, PredId ref, const std::vector<PredId>& preds,
                                             int max_depth) {
  std::vector<Query> out;
  Query root;
  root.atoms.push_back({ref, {0}});
  root.var_count = 1;
  std::vector<Query> frontier{root};
  out.push_back(root);
  for (int d = 2; d <= max_depth; ++d) {
    std::vector<Query> next;
    for (const auto& q : frontier)
      for (PredId p : preds) {
        int arity = sig[p].arity;
        std::vector<int> vars(static_cast<std::size_t>(arity), 0);
        while (true) {
          int fresh = q.var_count;
          bool canonical = true;
          for (int v : vars) {
            if (v > fresh) canonical = false;
            if (v == fresh) ++fresh;
          }
          std::vector<int> sorted = vars;
          std::sort(sorted.begin(), sorted.end());
          bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
          if (canonical && distinct) {
            Query e = q;
            e.atoms.push_back({p, vars});
            e.var_count = fresh;
            next.push_back(e);
          }
          std::size_t k = 0;
          while (k < vars.size() && ++vars[k] > q.var_count + arity) vars[k++] = 0;
          if (k == vars.size()) break;
        }
      }
    for (const auto& q : next)
      if (is_linked(q)) out.push_back(q);
    frontier = std::move(next);
  }
  return out;
}

}  // namespace oracle
