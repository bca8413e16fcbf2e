#pragma once

// Combined knowledge base: terminology, DL-safe rules and facts, together with
// the reader for the s-expression KB format.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <istream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ontominer/error.hpp"

namespace ontominer {

enum class PredicateKind { Concept, Role, NonDL, Equality, OPred };

inline const char* to_string(PredicateKind kind) {
  switch (kind) {
    case PredicateKind::Concept: return "concept";
    case PredicateKind::Role: return "role";
    case PredicateKind::NonDL: return "nondl";
    case PredicateKind::Equality: return "equality";
    case PredicateKind::OPred: return "O";
  }
  return "?";
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

struct Term {
  enum class Kind { Constant, Variable };

  Kind kind = Kind::Constant;
  std::string name;

  static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
  static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }

  bool is_variable() const { return kind == Kind::Variable; }

  auto operator<=>(const Term&) const = default;
};

struct Predicate {
  std::string name;
  int arity = 1;
  PredicateKind kind = PredicateKind::Concept;

  // DL-atoms are concept, role and equality atoms; everything else is non-DL.
  bool is_dl() const {
    return kind == PredicateKind::Concept || kind == PredicateKind::Role ||
           kind == PredicateKind::Equality;
  }

  auto operator<=>(const Predicate&) const = default;
};

inline Predicate equality_predicate() { return {"=", 2, PredicateKind::Equality}; }
inline Predicate o_predicate() { return {"O", 1, PredicateKind::OPred}; }

struct Atom {
  Predicate predicate;
  std::vector<Term> args;

  bool is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
  }

  auto operator<=>(const Atom&) const = default;
};

struct RoleExpr {
  std::string name;
  bool inverse = false;

  RoleExpr inverted() const { return {name, !inverse}; }

  auto operator<=>(const RoleExpr&) const = default;
};

struct ConceptExpr {
  enum class Kind { Atomic, Top, Bottom, And, Or, Some, All, Not };

  Kind kind = Kind::Top;
  std::string name;                  // Atomic, Not
  RoleExpr role;                     // Some, All
  std::vector<ConceptExpr> operands;  // And/Or: two operands; Some/All: the filler

  static ConceptExpr atomic(std::string n) { return {Kind::Atomic, std::move(n), {}, {}}; }
  static ConceptExpr top() { return {Kind::Top, {}, {}, {}}; }
  static ConceptExpr bottom() { return {Kind::Bottom, {}, {}, {}}; }
  static ConceptExpr negation(std::string n) { return {Kind::Not, std::move(n), {}, {}}; }
  static ConceptExpr conj(ConceptExpr a, ConceptExpr b) {
    return {Kind::And, {}, {}, {std::move(a), std::move(b)}};
  }
  static ConceptExpr disj(ConceptExpr a, ConceptExpr b) {
    return {Kind::Or, {}, {}, {std::move(a), std::move(b)}};
  }
  static ConceptExpr some(RoleExpr r, ConceptExpr filler) {
    return {Kind::Some, {}, std::move(r), {std::move(filler)}};
  }
  static ConceptExpr all(RoleExpr r, ConceptExpr filler) {
    return {Kind::All, {}, std::move(r), {std::move(filler)}};
  }

  const ConceptExpr& filler() const { return operands.front(); }

  bool operator==(const ConceptExpr&) const = default;
};

namespace axiom {
struct SubClass { ConceptExpr sub, sup; bool operator==(const SubClass&) const = default; };
struct EquivClass { ConceptExpr lhs, rhs; bool operator==(const EquivClass&) const = default; };
struct Disjoint { std::string first, second; bool operator==(const Disjoint&) const = default; };
struct SubRole { RoleExpr sub, sup; bool operator==(const SubRole&) const = default; };
struct EquivRole { RoleExpr lhs, rhs; bool operator==(const EquivRole&) const = default; };
struct Transitive { std::string role; bool operator==(const Transitive&) const = default; };
struct Functional { RoleExpr role; bool operator==(const Functional&) const = default; };
struct Symmetric { std::string role; bool operator==(const Symmetric&) const = default; };
struct Domain { std::string role; ConceptExpr cls; bool operator==(const Domain&) const = default; };
struct Range { std::string role; ConceptExpr cls; bool operator==(const Range&) const = default; };
}  // namespace axiom

using TBoxAxiom = std::variant<axiom::SubClass, axiom::EquivClass, axiom::Disjoint, axiom::SubRole,
                               axiom::EquivRole, axiom::Transitive, axiom::Functional,
                               axiom::Symmetric, axiom::Domain, axiom::Range>;

// Disjunctive head, conjunctive body. Positive only.
struct DLRule {
  std::vector<Atom> head;
  std::vector<Atom> body;

  bool operator==(const DLRule&) const = default;
};

struct CombinedKB {
  std::vector<Predicate> predicates;  // user predicates in declaration order
  std::vector<TBoxAxiom> tbox;
  std::vector<DLRule> rules;
  std::vector<Atom> abox;
  std::set<std::string> individuals;

  const Predicate* find_predicate(std::string_view name) const {
    for (const auto& p : predicates)
      if (p.name == name) return &p;
    return nullptr;
  }

  bool operator==(const CombinedKB&) const = default;
};

struct ParseOptions {
  // Read (equivalent A (not B)) as covering A ⊔ B as well as disjointness.
  bool covering_complement = false;
};

// ---------------------------------------------------------------------------
// DL-safety

inline std::vector<std::string> rule_variables(const DLRule& rule) {
  std::vector<std::string> vars;
  auto collect = [&](const std::vector<Atom>& atoms) {
    for (const auto& a : atoms)
      for (const auto& t : a.args)
        if (t.is_variable() && std::find(vars.begin(), vars.end(), t.name) == vars.end())
          vars.push_back(t.name);
  };
  collect(rule.body);
  collect(rule.head);
  return vars;
}

inline bool covered_by_non_dl(const DLRule& rule, const std::string& var) {
  return std::any_of(rule.body.begin(), rule.body.end(), [&](const Atom& a) {
    return !a.predicate.is_dl() &&
           std::any_of(a.args.begin(), a.args.end(),
                       [&](const Term& t) { return t.is_variable() && t.name == var; });
  });
}

// True iff every variable of the rule occurs in a non-DL body atom. The
// individuals set does not affect the answer: constants never need covering.
inline bool check_dl_safety(const DLRule& rule, const std::set<std::string>& /*individuals*/ = {}) {
  auto vars = rule_variables(rule);
  return std::all_of(vars.begin(), vars.end(),
                     [&](const std::string& v) { return covered_by_non_dl(rule, v); });
}

inline DLRule make_dl_safe(const DLRule& rule) {
  DLRule out = rule;
  for (const auto& v : rule_variables(rule))
    if (!covered_by_non_dl(rule, v)) out.body.push_back({o_predicate(), {Term::variable(v)}});
  return out;
}

// ---------------------------------------------------------------------------
// Printing

inline std::string to_string(const Term& t) { return t.is_variable() ? "?" + t.name : t.name; }

inline std::string to_sexpr(const Atom& a) {
  std::string s = "(" + a.predicate.name;
  for (const auto& t : a.args) s += " " + to_string(t);
  return s + ")";
}

// Functional notation, e.g. isOwnerOf(Anna,a1).
inline std::string to_string(const Atom& a) {
  std::string s = a.predicate.name + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) s += ",";
    s += to_string(a.args[i]);
  }
  return s + ")";
}

inline std::string to_string(const RoleExpr& r) {
  return r.inverse ? "(inv " + r.name + ")" : r.name;
}

inline std::string to_string(const ConceptExpr& c) {
  using K = ConceptExpr::Kind;
  switch (c.kind) {
    case K::Atomic: return c.name;
    case K::Top: return "Thing";
    case K::Bottom: return "Nothing";
    case K::Not: return "(not " + c.name + ")";
    case K::And: return "(and " + to_string(c.operands[0]) + " " + to_string(c.operands[1]) + ")";
    case K::Or: return "(or " + to_string(c.operands[0]) + " " + to_string(c.operands[1]) + ")";
    case K::Some: return "(some " + to_string(c.role) + " " + to_string(c.filler()) + ")";
    case K::All: return "(all " + to_string(c.role) + " " + to_string(c.filler()) + ")";
  }
  return {};
}

inline std::string to_string(const TBoxAxiom& ax) {
  return std::visit(
      [](const auto& a) -> std::string {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, axiom::SubClass>)
          return "(subclass " + to_string(a.sub) + " " + to_string(a.sup) + ")";
        else if constexpr (std::is_same_v<T, axiom::EquivClass>)
          return "(equivalent " + to_string(a.lhs) + " " + to_string(a.rhs) + ")";
        else if constexpr (std::is_same_v<T, axiom::Disjoint>)
          return "(disjoint " + a.first + " " + a.second + ")";
        else if constexpr (std::is_same_v<T, axiom::SubRole>)
          return "(subrole " + to_string(a.sub) + " " + to_string(a.sup) + ")";
        else if constexpr (std::is_same_v<T, axiom::EquivRole>)
          return "(equivrole " + to_string(a.lhs) + " " + to_string(a.rhs) + ")";
        else if constexpr (std::is_same_v<T, axiom::Transitive>)
          return "(transitive " + a.role + ")";
        else if constexpr (std::is_same_v<T, axiom::Functional>)
          return "(functional " + to_string(a.role) + ")";
        else if constexpr (std::is_same_v<T, axiom::Symmetric>)
          return "(symmetric " + a.role + ")";
        else if constexpr (std::is_same_v<T, axiom::Domain>)
          return "(domain " + a.role + " " + to_string(a.cls) + ")";
        else
          return "(range " + a.role + " " + to_string(a.cls) + ")";
      },
      ax);
}

inline std::string to_string(const DLRule& r) {
  std::string s = "(rule (head";
  for (const auto& a : r.head) s += " " + to_sexpr(a);
  s += ") (body";
  for (const auto& a : r.body) s += " " + to_sexpr(a);
  return s + "))";
}

inline std::string fact_to_string(const Atom& a) {
  switch (a.predicate.kind) {
    case PredicateKind::Concept: return "(instance " + a.predicate.name + " " + a.args[0].name + ")";
    case PredicateKind::Role:
      return "(related " + a.predicate.name + " " + a.args[0].name + " " + a.args[1].name + ")";
    default: {
      std::string s = "(fact " + a.predicate.name;
      for (const auto& t : a.args) s += " " + t.name;
      return s + ")";
    }
  }
}

// Serializes in the same format parse_kb reads; declarations come first so the
// predicate order survives a round trip.
inline std::string serialize(const CombinedKB& kb) {
  std::ostringstream out;
  for (const auto& p : kb.predicates) {
    if (p.kind == PredicateKind::Concept) out << "(concept " << p.name << ")\n";
    else if (p.kind == PredicateKind::Role) out << "(role " << p.name << ")\n";
    else if (p.kind == PredicateKind::NonDL) out << "(nondl " << p.name << " " << p.arity << ")\n";
  }
  for (const auto& ax : kb.tbox) out << to_string(ax) << "\n";
  for (const auto& r : kb.rules) out << to_string(r) << "\n";
  for (const auto& a : kb.abox) out << fact_to_string(a) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Reader

namespace detail {

struct SExpr {
  bool is_list = false;
  std::string token;
  std::vector<SExpr> items;
  std::size_t line = 0;
  std::size_t column = 0;

  bool is_token(std::string_view t) const { return !is_list && token == t; }
};

class SExprReader {
 public:
  explicit SExprReader(std::string text) : text_(std::move(text)) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_blank();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip_blank();
    }
    return out;
  }

 private:
  SExpr read() {
    SExpr e;
    e.line = line_;
    e.column = column_;
    char c = text_[pos_];
    if (c == ')') throw ParseError(line_, column_, "unexpected ')'");
    if (c == '(') {
      e.is_list = true;
      advance();
      skip_blank();
      while (true) {
        if (pos_ >= text_.size()) throw ParseError(e.line, e.column, "unterminated list");
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
        skip_blank();
      }
      return e;
    }
    while (pos_ < text_.size()) {
      c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';') break;
      e.token.push_back(c);
      advance();
    }
    return e;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

[[noreturn]] inline void fail(const SExpr& at, const std::string& what) {
  throw ParseError(at.line, at.column, what);
}

inline bool is_reserved(std::string_view name) {
  return name == "Thing" || name == "Nothing" || name == "O";
}

class KbBuilder {
 public:
  explicit KbBuilder(ParseOptions options) : options_(options) {}

  CombinedKB build(const std::vector<SExpr>& exprs) {
    // Names first used in rules or facts get their kind only after all
    // terminological declarations are known, hence two passes.
    for (const auto& e : exprs) {
      const std::string& head = form_name(e);
      if (head == "rule") note_rule_names(e);
      else if (head == "fact") note_fact_name(e);
      else interpret_terminology(e);
    }
    for (const auto& e : exprs) {
      const std::string& head = form_name(e);
      if (head == "rule") kb_.rules.push_back(interpret_rule(e));
      else if (head == "fact") add_fact(interpret_fact(e));
    }
    std::vector<std::pair<std::size_t, Predicate>> ordered;
    for (const auto& [name, entry] : entries_)
      ordered.push_back({order_.at(name), Predicate{name, entry.arity, entry.kind}});
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [_, p] : ordered) kb_.predicates.push_back(std::move(p));
    return std::move(kb_);
  }

 private:
  struct Entry {
    PredicateKind kind;
    int arity;
  };

  static const std::string& form_name(const SExpr& e) {
    if (!e.is_list || e.items.empty() || e.items[0].is_list)
      fail(e, "expected a top-level form such as (subclass ...) or (rule ...)");
    return e.items[0].token;
  }

  void note(const std::string& name) { order_.try_emplace(name, order_.size()); }

  void note_rule_names(const SExpr& e) {
    if (e.items.size() != 3) fail(e, "expected (rule (head atom+) (body atom+))");
    for (std::size_t i = 1; i < 3; ++i)
      if (e.items[i].is_list)
        for (std::size_t j = 1; j < e.items[i].items.size(); ++j) {
          const auto& a = e.items[i].items[j];
          if (a.is_list && !a.items.empty() && !a.items[0].is_list) {
            const auto& n = a.items[0].token;
            if (n != "=" && n != "O") note(n);
          }
        }
  }

  void note_fact_name(const SExpr& e) {
    if (e.items.size() >= 2 && !e.items[1].is_list) note(e.items[1].token);
  }

  std::string name_at(const SExpr& e, const char* what) {
    if (e.is_list || !is_identifier(e.token)) fail(e, std::string("expected ") + what + " name");
    if (is_reserved(e.token)) fail(e, "'" + e.token + "' is reserved");
    return e.token;
  }

  void declare(const SExpr& at, const std::string& name, PredicateKind kind, int arity) {
    note(name);
    auto [it, inserted] = entries_.try_emplace(name, Entry{kind, arity});
    if (inserted) return;
    if (it->second.kind != kind)
      fail(at, "name '" + name + "' reused as " + to_string(kind) + ", already declared " +
                   to_string(it->second.kind));
    if (it->second.arity != arity)
      fail(at, "arity mismatch for '" + name + "': expected " + std::to_string(it->second.arity) +
                   ", got " + std::to_string(arity));
  }

  std::string concept_name(const SExpr& e) {
    auto n = name_at(e, "concept");
    declare(e, n, PredicateKind::Concept, 1);
    return n;
  }

  std::string role_name(const SExpr& e) {
    auto n = name_at(e, "role");
    declare(e, n, PredicateKind::Role, 2);
    return n;
  }

  RoleExpr role(const SExpr& e) {
    if (!e.is_list) return {role_name(e), false};
    if (e.items.size() != 2 || !e.items[0].is_token("inv")) fail(e, "expected NAME or (inv R)");
    return role(e.items[1]).inverted();
  }

  ConceptExpr concept_expr(const SExpr& e) {
    if (!e.is_list) {
      if (e.token == "Thing") return ConceptExpr::top();
      if (e.token == "Nothing") return ConceptExpr::bottom();
      return ConceptExpr::atomic(concept_name(e));
    }
    if (e.items.empty() || e.items[0].is_list) fail(e, "expected a concept constructor");
    const auto& op = e.items[0].token;
    if (op == "and" || op == "or") {
      if (e.items.size() < 3) fail(e, "'" + op + "' needs at least two operands");
      ConceptExpr acc = concept_expr(e.items[1]);
      for (std::size_t i = 2; i < e.items.size(); ++i)
        acc = op == "and" ? ConceptExpr::conj(std::move(acc), concept_expr(e.items[i]))
                          : ConceptExpr::disj(std::move(acc), concept_expr(e.items[i]));
      return acc;
    }
    if (op == "some" || op == "all") {
      if (e.items.size() != 3) fail(e, "expected (" + op + " R C)");
      auto r = role(e.items[1]);
      auto c = concept_expr(e.items[2]);
      return op == "some" ? ConceptExpr::some(std::move(r), std::move(c))
                          : ConceptExpr::all(std::move(r), std::move(c));
    }
    if (op == "not") {
      if (e.items.size() != 2) fail(e, "expected (not NAME)");
      const auto& arg = e.items[1];
      if (arg.is_list || arg.token == "Thing" || arg.token == "Nothing")
        fail(arg, "negation applies only to atomic concepts");
      return ConceptExpr::negation(concept_name(arg));
    }
    fail(e, "unknown concept constructor '" + op + "'");
  }

  void expect_size(const SExpr& e, std::size_t n, const char* shape) {
    if (e.items.size() != n) fail(e, std::string("expected ") + shape);
  }

  std::string constant(const SExpr& e) {
    if (e.is_list || !is_identifier(e.token)) fail(e, "expected a constant");
    return e.token;
  }

  void interpret_terminology(const SExpr& e) {
    const auto& op = e.items[0].token;
    using namespace axiom;
    if (op == "concept") {
      expect_size(e, 2, "(concept NAME)");
      concept_name(e.items[1]);
    } else if (op == "role") {
      expect_size(e, 2, "(role NAME)");
      role_name(e.items[1]);
    } else if (op == "nondl") {
      expect_size(e, 3, "(nondl NAME ARITY)");
      auto n = name_at(e.items[1], "predicate");
      const auto& a = e.items[2];
      if (a.is_list || a.token.empty() ||
          !std::all_of(a.token.begin(), a.token.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
          std::stoi(a.token) < 1)
        fail(a, "arity must be a positive integer");
      declare(e.items[1], n, PredicateKind::NonDL, std::stoi(a.token));
    } else if (op == "subclass") {
      expect_size(e, 3, "(subclass C C)");
      kb_.tbox.push_back(SubClass{concept_expr(e.items[1]), concept_expr(e.items[2])});
    } else if (op == "equivalent") {
      expect_size(e, 3, "(equivalent C C)");
      auto lhs = concept_expr(e.items[1]);
      auto rhs = concept_expr(e.items[2]);
      using K = ConceptExpr::Kind;
      if (lhs.kind == K::Not && rhs.kind == K::Atomic) std::swap(lhs, rhs);
      if (lhs.kind == K::Atomic && rhs.kind == K::Not) {
        kb_.tbox.push_back(Disjoint{lhs.name, rhs.name});
        if (options_.covering_complement)
          kb_.tbox.push_back(SubClass{ConceptExpr::top(), ConceptExpr::disj(ConceptExpr::atomic(lhs.name),
                                                                              ConceptExpr::atomic(rhs.name))});
      } else {
        kb_.tbox.push_back(EquivClass{std::move(lhs), std::move(rhs)});
      }
    } else if (op == "disjoint") {
      expect_size(e, 3, "(disjoint NAME NAME)");
      kb_.tbox.push_back(Disjoint{concept_name(e.items[1]), concept_name(e.items[2])});
    } else if (op == "subrole") {
      expect_size(e, 3, "(subrole R R)");
      kb_.tbox.push_back(SubRole{role(e.items[1]), role(e.items[2])});
    } else if (op == "equivrole") {
      expect_size(e, 3, "(equivrole R R)");
      kb_.tbox.push_back(EquivRole{role(e.items[1]), role(e.items[2])});
    } else if (op == "transitive") {
      expect_size(e, 2, "(transitive NAME)");
      kb_.tbox.push_back(Transitive{role_name(e.items[1])});
    } else if (op == "functional") {
      expect_size(e, 2, "(functional R)");
      kb_.tbox.push_back(Functional{role(e.items[1])});
    } else if (op == "symmetric") {
      expect_size(e, 2, "(symmetric NAME)");
      kb_.tbox.push_back(Symmetric{role_name(e.items[1])});
    } else if (op == "domain") {
      expect_size(e, 3, "(domain NAME C)");
      auto r = role_name(e.items[1]);
      kb_.tbox.push_back(Domain{r, concept_expr(e.items[2])});
    } else if (op == "range") {
      expect_size(e, 3, "(range NAME C)");
      auto r = role_name(e.items[1]);
      kb_.tbox.push_back(Range{r, concept_expr(e.items[2])});
    } else if (op == "instance") {
      expect_size(e, 3, "(instance NAME constant)");
      auto c = concept_name(e.items[1]);
      add_fact({{c, 1, PredicateKind::Concept}, {Term::constant(constant(e.items[2]))}});
    } else if (op == "related") {
      expect_size(e, 4, "(related NAME constant constant)");
      auto r = role_name(e.items[1]);
      add_fact({{r, 2, PredicateKind::Role},
                {Term::constant(constant(e.items[2])), Term::constant(constant(e.items[3]))}});
    } else {
      fail(e, "unknown form '" + op + "'");
    }
  }

  // Resolves a predicate used in a rule or generic fact: known names keep
  // their kind, unknown names become non-DL predicates of the used arity.
  Predicate resolve(const SExpr& at, const std::string& name, int arity) {
    auto it = entries_.find(name);
    if (it == entries_.end()) {
      declare(at, name, PredicateKind::NonDL, arity);
      it = entries_.find(name);
    }
    if (it->second.arity != arity)
      fail(at, "arity mismatch for '" + name + "': expected " + std::to_string(it->second.arity) +
                   ", got " + std::to_string(arity));
    return {name, arity, it->second.kind};
  }

  Term term(const SExpr& e) {
    if (e.is_list) fail(e, "expected a term");
    if (!e.token.empty() && e.token[0] == '?') {
      auto n = e.token.substr(1);
      if (!is_identifier(n)) fail(e, "invalid variable name '" + e.token + "'");
      return Term::variable(n);
    }
    return Term::constant(constant(e));
  }

  Atom rule_atom(const SExpr& e, bool in_head) {
    if (!e.is_list || e.items.size() < 2 || e.items[0].is_list) fail(e, "expected an atom (NAME term+)");
    const auto& name = e.items[0].token;
    std::vector<Term> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(term(e.items[i]));
    if (name == "=") {
      if (args.size() != 2) fail(e, "'=' takes two terms");
      return {equality_predicate(), std::move(args)};
    }
    if (name == "O") {
      if (args.size() != 1) fail(e, "'O' takes one term");
      if (in_head) fail(e, "'O' cannot be derived by a rule");
      return {o_predicate(), std::move(args)};
    }
    if (name == "Thing" || name == "Nothing") fail(e, "'" + name + "' cannot appear in a rule atom");
    if (!is_identifier(name)) fail(e.items[0], "invalid predicate name '" + name + "'");
    auto pred = resolve(e.items[0], name, static_cast<int>(args.size()));
    return {std::move(pred), std::move(args)};
  }

  std::vector<Atom> atom_list(const SExpr& e, const char* tag, bool in_head) {
    if (!e.is_list || e.items.size() < 2 || !e.items[0].is_token(tag))
      fail(e, std::string("expected (") + tag + " atom+)");
    std::vector<Atom> atoms;
    for (std::size_t i = 1; i < e.items.size(); ++i) atoms.push_back(rule_atom(e.items[i], in_head));
    return atoms;
  }

  DLRule interpret_rule(const SExpr& e) {
    DLRule r;
    r.head = atom_list(e.items[1], "head", true);
    r.body = atom_list(e.items[2], "body", false);
    return r;
  }

  Atom interpret_fact(const SExpr& e) {
    if (e.items.size() < 3) fail(e, "expected (fact NAME constant+)");
    auto name = name_at(e.items[1], "predicate");
    std::vector<Term> args;
    for (std::size_t i = 2; i < e.items.size(); ++i) args.push_back(Term::constant(constant(e.items[i])));
    auto pred = resolve(e.items[1], name, static_cast<int>(args.size()));
    return {std::move(pred), std::move(args)};
  }

  void add_fact(Atom a) {
    for (const auto& t : a.args) kb_.individuals.insert(t.name);
    kb_.abox.push_back(std::move(a));
  }

  ParseOptions options_;
  CombinedKB kb_;
  std::map<std::string, Entry> entries_;
  std::map<std::string, std::size_t> order_;
};

}  // namespace detail

inline CombinedKB parse_kb(std::string_view text, ParseOptions options = {}) {
  detail::SExprReader reader{std::string(text)};
  return detail::KbBuilder(options).build(reader.read_all());
}

inline CombinedKB parse_kb(std::istream& in, ParseOptions options = {}) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_kb(std::string_view(text), options);
}

}  // namespace ontominer
