#pragma once

// Interned form of a positive disjunctive program with existential heads.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontominer/error.hpp"
#include "ontominer/kb.hpp"

namespace ontominer {

using PredId = std::int32_t;
using ConstId = std::int32_t;

struct PredInfo {
  std::string name;
  int arity = 1;
  PredicateKind kind = PredicateKind::Concept;
  bool auxiliary = false;
};

class Signature {
 public:
  static constexpr PredId kEquality = 0;
  static constexpr PredId kO = 1;
  // Top concept: holds for every constant of a branch.
  static constexpr PredId kThing = 2;

  Signature() {
    intern("=", 2, PredicateKind::Equality);
    intern("O", 1, PredicateKind::OPred);
    intern("Thing", 1, PredicateKind::Concept);
  }

  PredId intern(const std::string& name, int arity, PredicateKind kind, bool auxiliary = false) {
    if (auto it = index_.find(name); it != index_.end()) {
      if (preds_[it->second].arity != arity)
        throw Error("predicate '" + name + "' used with arity " + std::to_string(arity));
      return it->second;
    }
    auto id = static_cast<PredId>(preds_.size());
    preds_.push_back({name, arity, kind, auxiliary});
    index_.emplace(name, id);
    return id;
  }

  std::optional<PredId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const PredInfo& operator[](PredId id) const { return preds_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return preds_.size(); }

  static bool is_builtin(PredId id) { return id <= kThing; }
  static bool is_virtual(PredId id) { return id == kO || id == kThing; }

 private:
  std::vector<PredInfo> preds_;
  std::map<std::string, PredId> index_;
};

// Named constants. Individuals are the O-extension.
class Domain {
 public:
  ConstId intern(const std::string& name, bool individual) {
    if (auto it = index_.find(name); it != index_.end()) {
      if (individual) individual_[static_cast<std::size_t>(it->second)] = true;
      return it->second;
    }
    auto id = static_cast<ConstId>(names_.size());
    names_.push_back(name);
    individual_.push_back(individual);
    index_.emplace(name, id);
    return id;
  }

  std::optional<ConstId> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name(ConstId c) const { return names_[static_cast<std::size_t>(c)]; }
  bool is_individual(ConstId c) const {
    return c >= 0 && static_cast<std::size_t>(c) < individual_.size() && individual_[static_cast<std::size_t>(c)];
  }
  void set_individual(ConstId c, bool v) { individual_[static_cast<std::size_t>(c)] = v; }
  std::size_t size() const { return names_.size(); }

  std::vector<ConstId> individuals() const {
    std::vector<ConstId> out;
    for (std::size_t i = 0; i < individual_.size(); ++i)
      if (individual_[i]) out.push_back(static_cast<ConstId>(i));
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::vector<bool> individual_;
  std::map<std::string, ConstId> index_;
};

// Arguments >= 0 are constants, < 0 encode variable index -1-arg.
inline constexpr std::int32_t var_arg(int index) { return -1 - index; }
inline constexpr bool is_var_arg(std::int32_t a) { return a < 0; }
inline constexpr int var_index(std::int32_t a) { return -1 - a; }

struct ProgramAtom {
  PredId pred = 0;
  std::vector<std::int32_t> args;

  auto operator<=>(const ProgramAtom&) const = default;
};

struct HeadAtom {
  enum class Kind { Plain, Exists };

  Kind kind = Kind::Plain;
  ProgramAtom atom;              // Plain
  PredId role = 0;               // Exists: role(frontier, w), or role(w, frontier) if inverse
  bool inverse = false;
  PredId filler = Signature::kThing;
  std::int32_t frontier = var_arg(0);

  auto operator<=>(const HeadAtom&) const = default;
};

struct ProgramRule {
  int id = 0;
  std::string origin;
  std::vector<HeadAtom> head;  // empty: integrity constraint
  std::vector<ProgramAtom> body;
  std::vector<std::string> var_names;

  bool is_constraint() const { return head.empty(); }
  bool is_disjunctive() const { return head.size() > 1; }
  int var_count() const { return static_cast<int>(var_names.size()); }
};

struct Fact {
  PredId pred = 0;
  std::vector<ConstId> args;

  auto operator<=>(const Fact&) const = default;
};

struct GroundProgram {
  Signature signature;
  Domain domain;
  std::vector<ProgramRule> rules;
  std::vector<Fact> facts;
  bool has_equality = false;
};

inline std::string arg_to_string(const ProgramRule& r, const Domain& d, std::int32_t a) {
  return is_var_arg(a) ? r.var_names[static_cast<std::size_t>(var_index(a))] : d.name(a);
}

inline std::string to_string(const ProgramAtom& a, const ProgramRule& r, const Signature& s, const Domain& d) {
  std::string out = s[a.pred].name + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    out += arg_to_string(r, d, a.args[i]);
  }
  return out + ")";
}

inline std::string to_string(const HeadAtom& h, const ProgramRule& r, const Signature& s, const Domain& d) {
  if (h.kind == HeadAtom::Kind::Plain) return to_string(h.atom, r, s, d);
  std::string role = h.inverse ? "inv(" + s[h.role].name + ")" : s[h.role].name;
  return "exists[" + role + "," + s[h.filler].name + "](" + arg_to_string(r, d, h.frontier) + ")";
}

inline std::string to_string(const ProgramRule& r, const Signature& s, const Domain& d) {
  std::string out;
  for (std::size_t i = 0; i < r.head.size(); ++i) {
    if (i) out += " | ";
    out += to_string(r.head[i], r, s, d);
  }
  out += r.head.empty() ? ":- " : " :- ";
  for (std::size_t i = 0; i < r.body.size(); ++i) {
    if (i) out += ", ";
    out += to_string(r.body[i], r, s, d);
  }
  return out + ".";
}

inline std::string to_string(const Fact& f, const Signature& s, const Domain& d) {
  std::string out = s[f.pred].name + "(";
  for (std::size_t i = 0; i < f.args.size(); ++i) {
    if (i) out += ",";
    out += d.name(f.args[i]);
  }
  return out + ")";
}

inline std::string dump_program(const GroundProgram& p) {
  std::string out;
  for (const auto& r : p.rules) out += to_string(r, p.signature, p.domain) + "\n";
  for (const auto& f : p.facts) out += to_string(f, p.signature, p.domain) + ".\n";
  return out;
}

}  // namespace ontominer
