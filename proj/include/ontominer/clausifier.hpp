#pragma once

// Structural normalization of terminological axioms and their translation,
// together with the rules, into a GroundProgram.

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ontominer/error.hpp"
#include "ontominer/kb.hpp"
#include "ontominer/program.hpp"

namespace ontominer {

// An atomic concept or ∃R.A (filler empty means ⊤).
struct NormalConcept {
  enum class Kind { Atomic, Some };

  Kind kind = Kind::Atomic;
  std::string name;
  RoleExpr role;
  std::string filler;

  static NormalConcept atomic(std::string n) { return {Kind::Atomic, std::move(n), {}, {}}; }
  static NormalConcept some(RoleExpr r, std::string f) { return {Kind::Some, {}, std::move(r), std::move(f)}; }

  bool operator==(const NormalConcept&) const = default;
};

// lhs conjunction ⊑ rhs disjunction; empty rhs is ⊥. With value_role set the
// right-hand side reads ∀R.(rhs1 ⊔ ... ⊔ rhsn) and rhs holds only atomics.
struct NormalizedInclusion {
  std::vector<NormalConcept> lhs;
  std::vector<NormalConcept> rhs;
  std::optional<RoleExpr> value_role;

  bool operator==(const NormalizedInclusion&) const = default;
};

inline std::string to_string(const NormalConcept& c) {
  if (c.kind == NormalConcept::Kind::Atomic) return c.name;
  std::string r = c.role.inverse ? c.role.name + "^-" : c.role.name;
  return "∃" + r + "." + (c.filler.empty() ? "Thing" : c.filler);
}

inline std::string to_string(const NormalizedInclusion& n) {
  auto join = [](const std::vector<NormalConcept>& v, const char* sep, const char* empty) {
    if (v.empty()) return std::string(empty);
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + to_string(v[i]);
    return s;
  };
  std::string out = join(n.lhs, " ⊓ ", "Thing") + " ⊑ ";
  if (n.value_role) {
    std::string r = n.value_role->inverse ? n.value_role->name + "^-" : n.value_role->name;
    return out + "∀" + r + ".(" + join(n.rhs, " ⊔ ", "Nothing") + ")";
  }
  return out + join(n.rhs, " ⊔ ", "Nothing");
}

class Normalizer {
 public:
  // Returns normalized inclusions; fresh concept names are appended to aux_names.
  std::vector<NormalizedInclusion> run(const std::vector<TBoxAxiom>& tbox) {
    for (const auto& ax : tbox) {
      std::visit(
          [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, axiom::SubClass>) {
              push(a.sub, a.sup);
            } else if constexpr (std::is_same_v<T, axiom::EquivClass>) {
              push(a.lhs, a.rhs);
              push(a.rhs, a.lhs);
            } else if constexpr (std::is_same_v<T, axiom::Domain>) {
              push(ConceptExpr::some({a.role, false}, ConceptExpr::top()), a.cls);
            } else if constexpr (std::is_same_v<T, axiom::Range>) {
              push(ConceptExpr::top(), ConceptExpr::all({a.role, false}, a.cls));
            }
          },
          ax);
      drain();
    }
    auto result = std::move(out_);
    out_.clear();
    return result;
  }

  const std::vector<std::string>& aux_names() const { return aux_; }

  void set_aux_counter(int next) { next_aux_ = next; }

 private:
  using K = ConceptExpr::Kind;

  void push(ConceptExpr lhs, ConceptExpr rhs) { work_.push_back({std::move(lhs), std::move(rhs)}); }

  void drain() {
    while (!work_.empty()) {
      auto [l, r] = std::move(work_.front());
      work_.pop_front();
      process(l, r);
    }
  }

  std::string fresh() {
    std::string n = "aux_" + std::to_string(next_aux_++);
    aux_.push_back(n);
    return n;
  }

  static void flatten(const ConceptExpr& c, K op, std::vector<ConceptExpr>& out) {
    if (c.kind == op) {
      flatten(c.operands[0], op, out);
      flatten(c.operands[1], op, out);
    } else {
      out.push_back(c);
    }
  }

  static bool simple_filler(const ConceptExpr& c) { return c.kind == K::Atomic || c.kind == K::Top; }

  static bool atomic_disjunction(const ConceptExpr& c) {
    std::vector<ConceptExpr> parts;
    flatten(c, K::Or, parts);
    return std::all_of(parts.begin(), parts.end(), [](const ConceptExpr& p) {
      return p.kind == K::Atomic || p.kind == K::Bottom;
    });
  }

  void process(const ConceptExpr& lhs_expr, const ConceptExpr& rhs_expr) {
    std::vector<ConceptExpr> lhs, rhs;
    flatten(lhs_expr, K::And, lhs);
    flatten(rhs_expr, K::Or, rhs);

    // Disjunctions on the left distribute into separate axioms.
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      if (lhs[i].kind != K::Or) continue;
      for (const auto& branch : lhs[i].operands) {
        auto copy = lhs;
        copy[i] = branch;
        push(conj_of(copy), rhs_expr);
      }
      return;
    }

    NormalizedInclusion n;
    std::vector<ConceptExpr> moved_right;
    for (const auto& c : lhs) {
      switch (c.kind) {
        case K::Atomic: add_unique(n.lhs, NormalConcept::atomic(c.name)); break;
        case K::Top: break;
        case K::Bottom: return;
        case K::Not: moved_right.push_back(ConceptExpr::atomic(c.name)); break;
        case K::Some:
          if (simple_filler(c.filler())) {
            add_unique(n.lhs, NormalConcept::some(c.role, c.filler().kind == K::Top ? "" : c.filler().name));
          } else {
            auto aux = fresh();
            push(c.filler(), ConceptExpr::atomic(aux));
            add_unique(n.lhs, NormalConcept::some(c.role, aux));
          }
          break;
        case K::All:
          throw UnsupportedAxiom("universal restriction on the left of an inclusion: " + to_string(c));
        default:
          throw UnsupportedAxiom("cannot normalize " + to_string(c));
      }
    }
    for (auto& c : moved_right) rhs.push_back(std::move(c));

    // Conjunction as the whole right-hand side splits.
    if (rhs.size() == 1 && rhs[0].kind == K::And) {
      push(conj_of(lhs), rhs[0].operands[0]);
      push(conj_of(lhs), rhs[0].operands[1]);
      return;
    }
    if (rhs.size() == 1 && rhs[0].kind == K::All) {
      const auto& all = rhs[0];
      if (all.filler().kind == K::Top) return;
      if (atomic_disjunction(all.filler())) {
        std::vector<ConceptExpr> parts;
        flatten(all.filler(), K::Or, parts);
        n.value_role = all.role;
        for (const auto& p : parts)
          if (p.kind == K::Atomic) add_unique(n.rhs, NormalConcept::atomic(p.name));
        emit(std::move(n));
        return;
      }
      auto aux = fresh();
      push(ConceptExpr::atomic(aux), all.filler());
      n.value_role = all.role;
      n.rhs.push_back(NormalConcept::atomic(aux));
      emit(std::move(n));
      return;
    }

    for (const auto& c : rhs) {
      switch (c.kind) {
        case K::Atomic: add_unique(n.rhs, NormalConcept::atomic(c.name)); break;
        case K::Bottom: break;
        case K::Top: return;
        case K::Not: add_unique(n.lhs, NormalConcept::atomic(c.name)); break;
        case K::Some:
          if (simple_filler(c.filler())) {
            add_unique(n.rhs, NormalConcept::some(c.role, c.filler().kind == K::Top ? "" : c.filler().name));
          } else {
            auto aux = fresh();
            push(ConceptExpr::atomic(aux), c.filler());
            add_unique(n.rhs, NormalConcept::some(c.role, aux));
          }
          break;
        case K::And:
        case K::All: {
          auto aux = fresh();
          push(ConceptExpr::atomic(aux), c);
          add_unique(n.rhs, NormalConcept::atomic(aux));
          break;
        }
        default:
          throw UnsupportedAxiom("cannot normalize " + to_string(c));
      }
    }
    // Tautology: an atomic conjunct reappearing as a disjunct.
    for (const auto& l : n.lhs)
      if (std::find(n.rhs.begin(), n.rhs.end(), l) != n.rhs.end()) return;
    emit(std::move(n));
  }

  static ConceptExpr conj_of(const std::vector<ConceptExpr>& parts) {
    if (parts.empty()) return ConceptExpr::top();
    ConceptExpr acc = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) acc = ConceptExpr::conj(std::move(acc), parts[i]);
    return acc;
  }

  static void add_unique(std::vector<NormalConcept>& v, NormalConcept c) {
    if (std::find(v.begin(), v.end(), c) == v.end()) v.push_back(std::move(c));
  }

  void emit(NormalizedInclusion n) {
    if (std::find(out_.begin(), out_.end(), n) == out_.end()) out_.push_back(std::move(n));
  }

  std::deque<std::pair<ConceptExpr, ConceptExpr>> work_;
  std::vector<NormalizedInclusion> out_;
  std::vector<std::string> aux_;
  int next_aux_ = 1;
};

inline std::vector<NormalizedInclusion> normalize(const std::vector<TBoxAxiom>& tbox) {
  return Normalizer().run(tbox);
}

namespace detail {

class ProgramBuilder {
 public:
  explicit ProgramBuilder(GroundProgram& p) : p_(p) {}

  ProgramRule& start(std::string origin) {
    current_ = ProgramRule{};
    current_.origin = std::move(origin);
    return current_;
  }

  std::int32_t var(const std::string& name) {
    auto& names = current_.var_names;
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) return var_arg(static_cast<int>(it - names.begin()));
    names.push_back(name);
    return var_arg(static_cast<int>(names.size()) - 1);
  }

  PredId concept_pred(const std::string& name) {
    return p_.signature.intern(name, 1, PredicateKind::Concept, name.rfind("aux_", 0) == 0);
  }
  PredId role(const std::string& name) { return p_.signature.intern(name, 2, PredicateKind::Role); }

  ProgramAtom role_atom(const RoleExpr& r, std::int32_t a, std::int32_t b) {
    return r.inverse ? ProgramAtom{role(r.name), {b, a}} : ProgramAtom{role(r.name), {a, b}};
  }

  void finish() {
    for (const auto& r : p_.rules)
      if (r.head == current_.head && r.body == current_.body) return;
    current_.id = static_cast<int>(p_.rules.size());
    p_.rules.push_back(std::move(current_));
  }

  ProgramRule& rule() { return current_; }

 private:
  GroundProgram& p_;
  ProgramRule current_;
};

inline HeadAtom plain(ProgramAtom a) {
  HeadAtom h;
  h.atom = std::move(a);
  return h;
}

}  // namespace detail

inline void add_inclusion_rule(detail::ProgramBuilder& b, const NormalizedInclusion& n, const std::string& origin) {
  b.start(origin);
  auto x = b.var("x");
  int fresh = 0;
  for (const auto& c : n.lhs) {
    if (c.kind == NormalConcept::Kind::Atomic) {
      b.rule().body.push_back({b.concept_pred(c.name), {x}});
    } else {
      auto y = b.var("y" + std::to_string(++fresh));
      b.rule().body.push_back(b.role_atom(c.role, x, y));
      if (!c.filler.empty()) b.rule().body.push_back({b.concept_pred(c.filler), {y}});
    }
  }
  if (n.value_role) {
    auto y = b.var("y");
    b.rule().body.push_back(b.role_atom(*n.value_role, x, y));
    for (const auto& c : n.rhs) b.rule().head.push_back(detail::plain({b.concept_pred(c.name), {y}}));
  } else {
    if (n.lhs.empty()) b.rule().body.push_back({Signature::kThing, {x}});
    for (const auto& c : n.rhs) {
      if (c.kind == NormalConcept::Kind::Atomic) {
        b.rule().head.push_back(detail::plain({b.concept_pred(c.name), {x}}));
      } else {
        HeadAtom h;
        h.kind = HeadAtom::Kind::Exists;
        h.role = b.role(c.role.name);
        h.inverse = c.role.inverse;
        h.filler = c.filler.empty() ? Signature::kThing : b.concept_pred(c.filler);
        h.frontier = x;
        b.rule().head.push_back(h);
      }
    }
  }
  b.finish();
}

struct ClausifyOptions {
  // Force the equality axiomatization even without functional roles or '='.
  bool force_equality = false;
};

inline GroundProgram clausify(const CombinedKB& kb, ClausifyOptions options = {}) {
  GroundProgram p;
  for (const auto& pred : kb.predicates) p.signature.intern(pred.name, pred.arity, pred.kind);

  // ABox individuals in order of first appearance, then rule constants.
  for (const auto& a : kb.abox)
    for (const auto& t : a.args) p.domain.intern(t.name, true);
  for (const auto& r : kb.rules)
    for (const auto* atoms : {&r.head, &r.body})
      for (const auto& a : *atoms)
        for (const auto& t : a.args)
          if (!t.is_variable()) p.domain.intern(t.name, kb.individuals.count(t.name) > 0);

  detail::ProgramBuilder b(p);
  bool equality = options.force_equality;

  Normalizer normalizer;
  for (const auto& ax : kb.tbox) {
    std::string origin = to_string(ax);
    if (std::holds_alternative<axiom::SubClass>(ax) || std::holds_alternative<axiom::EquivClass>(ax) ||
        std::holds_alternative<axiom::Domain>(ax) || std::holds_alternative<axiom::Range>(ax)) {
      for (const auto& n : normalizer.run({ax})) add_inclusion_rule(b, n, origin);
      continue;
    }
    std::visit(
        [&](const auto& a) {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, axiom::Disjoint>) {
            b.start(origin);
            auto x = b.var("x");
            b.rule().body = {{b.concept_pred(a.first), {x}}, {b.concept_pred(a.second), {x}}};
            b.finish();
          } else if constexpr (std::is_same_v<T, axiom::SubRole> || std::is_same_v<T, axiom::EquivRole>) {
            auto emit = [&](const RoleExpr& sub, const RoleExpr& sup) {
              if (sub == sup) return;
              b.start(origin);
              auto x = b.var("x");
              auto y = b.var("y");
              b.rule().body = {b.role_atom(sub, x, y)};
              b.rule().head = {detail::plain(b.role_atom(sup, x, y))};
              b.finish();
            };
            if constexpr (std::is_same_v<T, axiom::SubRole>) {
              emit(a.sub, a.sup);
            } else {
              emit(a.lhs, a.rhs);
              emit(a.rhs, a.lhs);
            }
          } else if constexpr (std::is_same_v<T, axiom::Symmetric>) {
            b.start(origin);
            auto x = b.var("x");
            auto y = b.var("y");
            b.rule().body = {{b.role(a.role), {x, y}}};
            b.rule().head = {detail::plain({b.role(a.role), {y, x}})};
            b.finish();
          } else if constexpr (std::is_same_v<T, axiom::Transitive>) {
            b.start(origin);
            auto x = b.var("x");
            auto y = b.var("y");
            auto z = b.var("z");
            b.rule().body = {{b.role(a.role), {x, y}}, {b.role(a.role), {y, z}}};
            b.rule().head = {detail::plain({b.role(a.role), {x, z}})};
            b.finish();
          } else if constexpr (std::is_same_v<T, axiom::Functional>) {
            equality = true;
            b.start(origin);
            auto x1 = b.var("x1");
            auto x2 = b.var("x2");
            auto y = b.var("y");
            b.rule().body = {b.role_atom(a.role, y, x1), b.role_atom(a.role, y, x2)};
            b.rule().head = {detail::plain({Signature::kEquality, {x1, x2}})};
            b.finish();
          }
        },
        ax);
  }

  for (std::size_t i = 0; i < kb.rules.size(); ++i) {
    auto safe = make_dl_safe(kb.rules[i]);
    b.start("rule " + std::to_string(i + 1));
    auto convert = [&](const Atom& a) {
      ProgramAtom pa;
      if (a.predicate.kind == PredicateKind::Equality) {
        equality = true;
        pa.pred = Signature::kEquality;
      } else if (a.predicate.kind == PredicateKind::OPred) {
        pa.pred = Signature::kO;
      } else {
        pa.pred = p.signature.intern(a.predicate.name, a.predicate.arity, a.predicate.kind);
      }
      for (const auto& t : a.args)
        pa.args.push_back(t.is_variable() ? b.var(t.name) : *p.domain.find(t.name));
      return pa;
    };
    for (const auto& a : safe.body) b.rule().body.push_back(convert(a));
    for (const auto& a : safe.head) b.rule().head.push_back(detail::plain(convert(a)));
    b.finish();
  }

  if (equality) {
    p.has_equality = true;
    const auto eq = Signature::kEquality;
    b.start("equality reflexivity");
    {
      auto x = b.var("x");
      b.rule().body = {{Signature::kO, {x}}};
      b.rule().head = {detail::plain({eq, {x, x}})};
    }
    b.finish();
    b.start("equality symmetry");
    {
      auto x = b.var("x");
      auto y = b.var("y");
      b.rule().body = {{eq, {x, y}}};
      b.rule().head = {detail::plain({eq, {y, x}})};
    }
    b.finish();
    b.start("equality transitivity");
    {
      auto x = b.var("x");
      auto y = b.var("y");
      auto z = b.var("z");
      b.rule().body = {{eq, {x, y}}, {eq, {y, z}}};
      b.rule().head = {detail::plain({eq, {x, z}})};
    }
    b.finish();
    for (PredId id = 0; static_cast<std::size_t>(id) < p.signature.size(); ++id) {
      if (Signature::is_builtin(id)) continue;
      int arity = p.signature[id].arity;
      for (int pos = 0; pos < arity; ++pos) {
        b.start("equality congruence " + p.signature[id].name + "/" + std::to_string(pos + 1));
        std::vector<std::int32_t> from, to;
        for (int i = 0; i < arity; ++i) {
          auto v = b.var("x" + std::to_string(i + 1));
          from.push_back(v);
          to.push_back(v);
        }
        auto y = b.var("y");
        to[static_cast<std::size_t>(pos)] = y;
        b.rule().body = {{id, from}, {eq, {from[static_cast<std::size_t>(pos)], y}}};
        b.rule().head = {detail::plain({id, to})};
        b.finish();
      }
    }
  }

  for (const auto& a : kb.abox) {
    Fact f;
    f.pred = *p.signature.find(a.predicate.name);
    for (const auto& t : a.args) f.args.push_back(*p.domain.find(t.name));
    p.facts.push_back(std::move(f));
  }
  return p;
}

}  // namespace ontominer
