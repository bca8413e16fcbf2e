#pragma once

// Trie-based frequent pattern search over a combined knowledge base.

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ontominer/clausifier.hpp"
#include "ontominer/error.hpp"
#include "ontominer/kb.hpp"
#include "ontominer/program.hpp"
#include "ontominer/rational.hpp"
#include "ontominer/reasoner.hpp"

namespace ontominer {

enum class Mode { Sem, NoSem, SemTax };
enum class EquivScan { All, SameDepth };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::Sem: return "sem";
    case Mode::NoSem: return "nosem";
    case Mode::SemTax: return "sem-tax";
  }
  return "?";
}

struct MiningConfig {
  std::string reference_concept;
  Rational minsup{1};
  int max_depth = 3;
  Mode mode = Mode::Sem;
  std::vector<std::string> bias;  // empty: every non-auxiliary predicate with some extension
  ChaseConfig chase;
  bool cp_keep_nondl = false;
  EquivScan equiv_scan = EquivScan::All;
};

struct DepthCounters {
  std::size_t gen = 0, sat = 0, sfree = 0, cand = 0, freq = 0;

  bool operator==(const DepthCounters&) const = default;
};

struct RunStats {
  std::vector<DepthCounters> depths;  // depths[d-1] counts candidates of depth d
  double runtime_seconds = 0;
  bool truncated = false;
  std::size_t chases = 0;
};

enum class CandidateStatus { Accepted, Frequent, Infrequent, PrunedUnsat, PrunedNotSFree, PrunedEquivalent };

inline const char* to_string(CandidateStatus s) {
  switch (s) {
    case CandidateStatus::Accepted: return "accepted";
    case CandidateStatus::Frequent: return "frequent";
    case CandidateStatus::Infrequent: return "infrequent";
    case CandidateStatus::PrunedUnsat: return "unsatisfiable";
    case CandidateStatus::PrunedNotSFree: return "not s-free";
    case CandidateStatus::PrunedEquivalent: return "equivalent";
  }
  return "?";
}

struct TrieNode {
  QueryAtom atom;
  int parent = -1;
  std::vector<int> children;
  Rational support;
  int depth = 1;
  int var_count = 1;  // variables of the pattern ending here
  std::vector<ConstId> answers;
};

struct Trie {
  std::vector<TrieNode> nodes;

  Query query(int id) const {
    Query q;
    q.var_count = nodes[static_cast<std::size_t>(id)].var_count;
    for (int n = id; n >= 0; n = nodes[static_cast<std::size_t>(n)].parent)
      q.atoms.push_back(nodes[static_cast<std::size_t>(n)].atom);
    std::reverse(q.atoms.begin(), q.atoms.end());
    return q;
  }

  // Variables introduced by the atom of node id.
  int first_new_var(int id) const {
    int p = nodes[static_cast<std::size_t>(id)].parent;
    return p < 0 ? 0 : nodes[static_cast<std::size_t>(p)].var_count;
  }
};

struct Candidate {
  QueryAtom atom;
  int var_count = 1;
  bool spawns = false;  // may seed taxonomy specializations

  bool operator==(const Candidate&) const = default;
};

class Miner {
 public:
  Miner(const CombinedKB& kb, MiningConfig cfg) : Miner(clausify(kb), std::move(cfg)) {}

  Miner(GroundProgram program, MiningConfig cfg)
      : program_(std::make_unique<GroundProgram>(std::move(program))), cfg_(std::move(cfg)) {
    if (cfg_.max_depth < 1) throw Error("max depth must be at least 1");
    if (cfg_.minsup <= Rational(0) || cfg_.minsup > Rational(1)) throw Error("minsup must lie in (0,1]");
    const auto& sig = program_->signature;
    auto ref = sig.find(cfg_.reference_concept);
    if (!ref || Signature::is_builtin(*ref) || sig[*ref].arity != 1)
      throw Error("unknown reference concept '" + cfg_.reference_concept + "'");
    ref_ = *ref;
    models_ = chase(*program_, cfg_.chase);
    if (models_.inconsistent) throw InconsistentKB();
    stats_.truncated = models_.truncated;
    reasoner_ = std::make_unique<QueryReasoner>(*program_, cfg_.chase, cfg_.cp_keep_nondl);
    ref_answers_ = answer_query(models_, reference_query());
    if (ref_answers_.empty()) throw EmptyReferenceConcept(cfg_.reference_concept);
    resolve_bias();
    if (cfg_.mode == Mode::SemTax) taxonomy_ = classify(*program_, cfg_.chase);
  }

  Miner(const Miner&) = delete;
  Miner& operator=(const Miner&) = delete;
  Miner(Miner&&) = default;

  void run() {
    auto start = std::chrono::steady_clock::now();
    trie_.nodes.clear();
    stats_.depths.assign(static_cast<std::size_t>(cfg_.max_depth), DepthCounters{});
    TrieNode root;
    root.atom = {ref_, {0}};
    root.answers = ref_answers_;
    root.support = Rational(1);
    trie_.nodes.push_back(root);
    stats_.depths[0] = {1, 1, 1, 1, 1};
    expand(0);
    stats_.truncated = stats_.truncated || reasoner_->truncated();
    stats_.chases = reasoner_->chase_count();
    stats_.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  Query reference_query() const {
    Query q;
    q.atoms.push_back({ref_, {0}});
    return q;
  }

  std::vector<ConstId> answers(const Query& q) const { return answer_query(models_, q); }

  Rational support(const Query& q) const {
    return Rational(static_cast<std::int64_t>(answers(q).size()), static_cast<std::int64_t>(ref_answers_.size()));
  }

  // Dependent atoms of the node's last atom followed by its right brothers.
  std::vector<Candidate> refine_candidates(int node) const {
    auto out = dependent_atoms(node);
    auto rb = right_brothers(node);
    out.insert(out.end(), rb.begin(), rb.end());
    return out;
  }

  std::vector<Candidate> dependent_atoms(int node) const {
    const auto& n = trie_.nodes[static_cast<std::size_t>(node)];
    Query q = trie_.query(node);
    int first_new = trie_.first_new_var(node);
    std::vector<int> opts;
    for (int v : n.atom.vars)
      if (std::find(opts.begin(), opts.end(), v) == opts.end()) opts.push_back(v);
    std::vector<Candidate> out;
    for (PredId p : bias_) {
      if (cfg_.mode == Mode::SemTax && is_dl_name(p) && !is_tax_root(p)) continue;
      int arity = program_->signature[p].arity;
      std::vector<int> choice(static_cast<std::size_t>(arity), 0);
      // Odometer over options; the last option index stands for a fresh variable.
      int base = static_cast<int>(opts.size()) + 1;
      while (true) {
        QueryAtom a{p, {}};
        int next = n.var_count;
        bool shares_new = false;
        for (int c : choice) {
          int v = c < static_cast<int>(opts.size()) ? opts[static_cast<std::size_t>(c)] : next++;
          if (v < n.var_count && v >= first_new) shares_new = true;
          a.vars.push_back(v);
        }
        std::vector<int> sorted = a.vars;
        std::sort(sorted.begin(), sorted.end());
        bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        if (shares_new && distinct && !redundant_copy(node, q, a, n.var_count))
          out.push_back({a, next, true});
        int pos = arity - 1;
        while (pos >= 0 && ++choice[static_cast<std::size_t>(pos)] == base) choice[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
      }
    }
    return out;
  }

  std::vector<Candidate> right_brothers(int node) const {
    const auto& n = trie_.nodes[static_cast<std::size_t>(node)];
    std::vector<Candidate> out;
    if (n.parent < 0) return out;
    const auto& parent = trie_.nodes[static_cast<std::size_t>(n.parent)];
    Query q = trie_.query(node);
    auto it = std::find(parent.children.begin(), parent.children.end(), node);
    for (++it; it != parent.children.end(); ++it) {
      const auto& s = trie_.nodes[static_cast<std::size_t>(*it)];
      QueryAtom a{s.atom.pred, {}};
      std::map<int, int> rename;
      int next = n.var_count;
      for (int v : s.atom.vars) {
        if (v < parent.var_count) {
          a.vars.push_back(v);
        } else {
          auto [r, fresh] = rename.try_emplace(v, next);
          if (fresh) ++next;
          a.vars.push_back(r->second);
        }
      }
      if (!redundant_copy(node, q, a, n.var_count)) out.push_back({a, next, false});
    }
    return out;
  }

  CandidateStatus semantic_filter(const Query& q, const std::vector<ConstId>& q_answers, int depth) {
    if (!reasoner_->satisfiable(q)) return CandidateStatus::PrunedUnsat;
    if (!is_sfree(q)) return CandidateStatus::PrunedNotSFree;
    for (int id : equivalence_scan_order(depth)) {
      const auto& other = trie_.nodes[static_cast<std::size_t>(id)];
      if (other.answers != q_answers) continue;
      if (reasoner_->equivalent(trie_.query(id), q)) return CandidateStatus::PrunedEquivalent;
    }
    return CandidateStatus::Accepted;
  }

  // s-freeness with the reference atom removed: no atom is implied by the rest.
  bool is_sfree(const Query& q) {
    Query rest = q;
    rest.atoms.erase(rest.atoms.begin());
    for (std::size_t i = 0; i < rest.atoms.size(); ++i) {
      Query smaller = rest;
      smaller.atoms.erase(smaller.atoms.begin() + static_cast<std::ptrdiff_t>(i));
      if (reasoner_->subsumes(rest, compact(smaller))) return false;
    }
    return true;
  }

  // Node ids of retained patterns: by depth, then support descending, then trie order.
  std::vector<int> patterns_in_output_order() const {
    std::vector<int> ids(trie_.nodes.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
      const auto& x = trie_.nodes[static_cast<std::size_t>(a)];
      const auto& y = trie_.nodes[static_cast<std::size_t>(b)];
      if (x.depth != y.depth) return x.depth < y.depth;
      return x.support > y.support;
    });
    return ids;
  }

  const Trie& trie() const { return trie_; }
  const RunStats& stats() const { return stats_; }
  const GroundProgram& program() const { return *program_; }
  const ModelSet& models() const { return models_; }
  QueryReasoner& reasoner() { return *reasoner_; }
  const MiningConfig& config() const { return cfg_; }
  const std::vector<PredId>& bias() const { return bias_; }
  const std::vector<ConstId>& reference_answers() const { return ref_answers_; }
  PredId reference_predicate() const { return ref_; }
  const std::optional<Taxonomy>& taxonomy() const { return taxonomy_; }

  std::string pattern_text(int node) const { return to_string(trie_.query(node), program_->signature); }

 private:
  void resolve_bias() {
    const auto& sig = program_->signature;
    if (!cfg_.bias.empty()) {
      for (const auto& name : cfg_.bias) {
        auto p = sig.find(name);
        if (!p || Signature::is_builtin(*p)) throw Error("unknown bias predicate '" + name + "'");
        if (std::find(bias_.begin(), bias_.end(), *p) == bias_.end()) bias_.push_back(*p);
      }
      return;
    }
    std::set<PredId> extended;
    for (const auto& m : models_.models)
      for (const auto& f : m.facts) extended.insert(f.pred);
    for (PredId p = 0; static_cast<std::size_t>(p) < sig.size(); ++p)
      if (!Signature::is_builtin(p) && !sig[p].auxiliary && extended.count(p)) bias_.push_back(p);
  }

  bool is_dl_name(PredId p) const {
    auto k = program_->signature[p].kind;
    return k == PredicateKind::Concept || k == PredicateKind::Role;
  }

  bool in_bias(PredId p) const { return std::find(bias_.begin(), bias_.end(), p) != bias_.end(); }

  bool is_tax_root(PredId p) const {
    return std::none_of(bias_.begin(), bias_.end(), [&](PredId q) { return taxonomy_->strictly_below(p, q); });
  }

  // Bias names directly below p in the taxonomy restricted to the bias.
  std::vector<PredId> tax_children(PredId p) const {
    std::vector<PredId> out;
    for (PredId d : bias_) {
      if (!taxonomy_->strictly_below(d, p)) continue;
      bool direct = std::none_of(bias_.begin(), bias_.end(), [&](PredId e) {
        return taxonomy_->strictly_below(d, e) && taxonomy_->strictly_below(e, p);
      });
      if (direct) out.push_back(d);
    }
    return out;
  }

  // True if a duplicates an atom of q, or copies one with its new variables renamed fresh.
  bool redundant_copy(int node, const Query& q, const QueryAtom& a, int fresh_from) const {
    std::vector<int> path;
    for (int n = node; n >= 0; n = trie_.nodes[static_cast<std::size_t>(n)].parent) path.push_back(n);
    std::reverse(path.begin(), path.end());
    for (std::size_t i = 0; i < q.atoms.size(); ++i) {
      const auto& b = q.atoms[i];
      if (b.pred != a.pred) continue;
      int lo = trie_.first_new_var(path[i]);
      int hi = trie_.nodes[static_cast<std::size_t>(path[i])].var_count;
      std::map<int, int> map;
      bool copy = true;
      for (std::size_t k = 0; k < a.vars.size() && copy; ++k) {
        int av = a.vars[k], bv = b.vars[k];
        if (av >= fresh_from) {
          if (bv < lo || bv >= hi) copy = false;
          else if (auto [it, ins] = map.try_emplace(av, bv); !ins && it->second != bv) copy = false;
        } else if (av != bv) {
          copy = false;
        }
      }
      if (copy) return true;
    }
    return false;
  }

  std::vector<int> equivalence_scan_order(int depth) const {
    std::vector<int> out;
    int max_seen = 0;
    for (const auto& n : trie_.nodes) max_seen = std::max(max_seen, n.depth);
    auto add_depth = [&](int d) {
      for (std::size_t i = trie_.nodes.size(); i-- > 0;)
        if (trie_.nodes[i].depth == d) out.push_back(static_cast<int>(i));
    };
    add_depth(depth);
    if (cfg_.equiv_scan == EquivScan::SameDepth) return out;
    for (int d = depth - 1; d >= 1; --d) add_depth(d);
    for (int d = depth + 1; d <= max_seen; ++d) add_depth(d);
    return out;
  }

  CandidateStatus evaluate(const Query& q, int depth, std::vector<ConstId>& q_answers) {
    auto& c = stats_.depths[static_cast<std::size_t>(depth - 1)];
    ++c.gen;
    q_answers = answers(q);
    if (cfg_.mode != Mode::NoSem) {
      auto status = semantic_filter(q, q_answers, depth);
      if (status == CandidateStatus::PrunedUnsat) return status;
      ++c.sat;
      if (status == CandidateStatus::PrunedNotSFree) return status;
      ++c.sfree;
      if (status == CandidateStatus::PrunedEquivalent) return status;
      ++c.cand;
    } else {
      ++c.sat;
      ++c.sfree;
      ++c.cand;
    }
    Rational s(static_cast<std::int64_t>(q_answers.size()), static_cast<std::int64_t>(ref_answers_.size()));
    if (s < cfg_.minsup) return CandidateStatus::Infrequent;
    ++c.freq;
    return CandidateStatus::Frequent;
  }

  void expand(int node) {
    int depth = trie_.nodes[static_cast<std::size_t>(node)].depth;
    if (depth >= cfg_.max_depth) return;
    Query base = trie_.query(node);
    std::vector<Candidate> queue = refine_candidates(node);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Candidate cand = queue[i];
      Query q = base;
      q.atoms.push_back(cand.atom);
      q.var_count = cand.var_count;
      std::vector<ConstId> ans;
      auto status = evaluate(q, depth + 1, ans);
      if (status == CandidateStatus::Frequent) {
        TrieNode child;
        child.atom = cand.atom;
        child.parent = node;
        child.depth = depth + 1;
        child.var_count = cand.var_count;
        child.support = Rational(static_cast<std::int64_t>(ans.size()), static_cast<std::int64_t>(ref_answers_.size()));
        child.answers = std::move(ans);
        trie_.nodes.push_back(std::move(child));
        trie_.nodes[static_cast<std::size_t>(node)].children.push_back(static_cast<int>(trie_.nodes.size()) - 1);
      }
      if (cfg_.mode == Mode::SemTax && cand.spawns && is_dl_name(cand.atom.pred) &&
          status != CandidateStatus::PrunedUnsat && status != CandidateStatus::Infrequent) {
        std::size_t at = i + 1;
        for (PredId d : tax_children(cand.atom.pred)) {
          Candidate narrower{{d, cand.atom.vars}, cand.var_count, true};
          bool queued = std::any_of(queue.begin(), queue.end(), [&](const Candidate& c) { return c.atom == narrower.atom; });
          if (queued) continue;
          if (redundant_copy(node, base, narrower.atom, trie_.nodes[static_cast<std::size_t>(node)].var_count)) continue;
          queue.insert(queue.begin() + static_cast<std::ptrdiff_t>(at++), narrower);
        }
      }
    }
    auto children = trie_.nodes[static_cast<std::size_t>(node)].children;
    for (int c : children) expand(c);
  }

  std::unique_ptr<GroundProgram> program_;
  MiningConfig cfg_;
  PredId ref_ = 0;
  ModelSet models_;
  std::unique_ptr<QueryReasoner> reasoner_;
  std::vector<ConstId> ref_answers_;
  std::vector<PredId> bias_;
  std::optional<Taxonomy> taxonomy_;
  Trie trie_;
  RunStats stats_;
};

inline Miner mine(const CombinedKB& kb, const MiningConfig& cfg) {
  Miner m(kb, cfg);
  m.run();
  return m;
}

}  // namespace ontominer
