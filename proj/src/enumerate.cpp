#include "tcclab/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace tcclab {

namespace {

using TermId = std::uint32_t;
using State = std::vector<TermId>;  // sorted root ids

struct PairHash {
  std::size_t operator()(const std::pair<TermId, TermId>& p) const {
    return std::hash<std::uint64_t>()(
        (static_cast<std::uint64_t>(p.first) << 32) | p.second);
  }
};

// Hash-consed set-theoretic terms: unordered pairs over atoms, blind to
// chains and occurrence identity ("distinct sets" in the set-theoretic
// sense). One id space for atoms and pairs.
class TermTable {
 public:
  explicit TermTable(const std::vector<LexicalItem>& lexicon) {
    for (const auto& item : lexicon) lexicon_ids_.push_back(atom_id(item));
  }

  TermId atom_id(const LexicalItem& item) {
    for (TermId id : atom_ids_)
      if (atoms_[terms_[id].atom_index] == item) return id;
    TermId id = static_cast<TermId>(terms_.size());
    terms_.push_back({true, atoms_.size(), {0, 0}});
    atoms_.push_back(item);
    atom_ids_.push_back(id);
    subterms_.push_back({id});
    return id;
  }

  TermId pair(TermId x, TermId y) {
    auto key = std::minmax(x, y);
    auto it = pair_ids_.find(key);
    if (it != pair_ids_.end()) return it->second;
    TermId id = static_cast<TermId>(terms_.size());
    pair_ids_.emplace(key, id);
    terms_.push_back({false, 0, key});
    std::vector<TermId> subs;
    std::set_union(subterms_[key.first].begin(), subterms_[key.first].end(),
                   subterms_[key.second].begin(), subterms_[key.second].end(),
                   std::back_inserter(subs));
    subs.insert(std::lower_bound(subs.begin(), subs.end(), id), id);
    subterms_.push_back(std::move(subs));
    return id;
  }

  bool is_atom(TermId t) const { return terms_[t].atom; }
  const std::vector<TermId>& lexicon_ids() const { return lexicon_ids_; }
  const std::vector<TermId>& subterms(TermId t) const { return subterms_[t]; }
  const LexicalItem& atom(TermId t) const { return atoms_[terms_[t].atom_index]; }
  std::pair<TermId, TermId> node(TermId t) const { return terms_[t].kids; }

  std::size_t memory_estimate() const {
    std::size_t bytes = terms_.size() * sizeof(Term) + pair_ids_.size() * 48;
    for (const auto& s : subterms_) bytes += s.capacity() * sizeof(TermId) + 24;
    return bytes;
  }

  /// Interns an existing syntactic object; nullopt when a leaf's item is
  /// unknown and `create_atoms` is off.
  std::optional<TermId> intern(const SoPtr& so, bool create_atoms) {
    if (so->is_leaf()) {
      if (!create_atoms) {
        for (TermId id : atom_ids_)
          if (atoms_[terms_[id].atom_index] == so->item()) return id;
        return std::nullopt;
      }
      return atom_id(so->item());
    }
    auto l = intern(so->left(), create_atoms);
    auto r = intern(so->right(), create_atoms);
    if (!l || !r) return std::nullopt;
    return pair(*l, *r);
  }

 private:
  struct Term {
    bool atom;
    std::size_t atom_index;
    std::pair<TermId, TermId> kids;
  };

  std::vector<Term> terms_;
  std::vector<LexicalItem> atoms_;
  std::vector<TermId> atom_ids_;
  std::vector<TermId> lexicon_ids_;
  std::vector<std::vector<TermId>> subterms_;  // sorted, includes self
  std::unordered_map<std::pair<TermId, TermId>, TermId, PairHash> pair_ids_;
};

struct Op {
  WitnessStep::Kind kind;
  TermId formed;  // the set this op creates
  State successor;
  TermId a = 0, b = 0;  // operands, for witness text
};

// Replacements of t obtained by merging x at one position inside t
// (excluding t's own top when is_root): (replacement, formed set) per
// position. Counter-cyclic attachment, the move Extension forbids.
void insertions(TermId t, TermId x, bool is_root, TermTable& table,
                std::vector<std::pair<TermId, TermId>>& out) {
  if (!is_root) {
    TermId f = table.pair(x, t);
    out.push_back({f, f});
  }
  if (!table.is_atom(t)) {
    auto [l, r] = table.node(t);
    std::vector<std::pair<TermId, TermId>> inner;
    insertions(l, x, false, table, inner);
    for (auto [l2, f] : inner) out.push_back({table.pair(l2, r), f});
    inner.clear();
    insertions(r, x, false, table, inner);
    for (auto [r2, f] : inner) out.push_back({table.pair(l, r2), f});
  }
}

// All MERGE applications from a state. Root-level ops satisfy NoTampering
// and Extension by construction and create exactly one set each; the
// counter-cyclic insertions below are exactly what those validators reject,
// so they are generated only when the corresponding constraints are off.
// Resource Restriction under the raw-growth rule excludes the fresh lexicon
// pair (it adds two atom tokens plus the set, growth 3 > 2); under the
// new-sets rule it excludes counter-cyclic insertions (spine rebuilding
// makes more than one new set).
std::vector<Op> successors(const State& state, TermTable& table,
                           const EnumerationConfig& cfg) {
  std::vector<Op> out;
  auto with_replaced = [&](std::size_t i, TermId t) {
    State s;
    s.reserve(state.size());
    for (std::size_t k = 0; k < state.size(); ++k)
      if (k != i) s.push_back(state[k]);
    s.insert(std::lower_bound(s.begin(), s.end(), t), t);
    return s;
  };
  auto with_two_replaced = [&](std::size_t i, std::size_t j, TermId t) {
    State s;
    for (std::size_t k = 0; k < state.size(); ++k)
      if (k != i && k != j) s.push_back(state[k]);
    s.insert(std::lower_bound(s.begin(), s.end(), t), t);
    return s;
  };

  // external: lexicon item merged onto a root
  for (std::size_t i = 0; i < state.size(); ++i) {
    for (TermId a : table.lexicon_ids()) {
      TermId t = table.pair(a, state[i]);
      out.push_back({WitnessStep::Kind::ExternalLexicon, t, with_replaced(i, t),
                     a, state[i]});
    }
  }
  // external: fresh lexicon pair as a new root
  bool rr_blocks_pair = cfg.resource_restriction &&
                        cfg.rr_rule == ResourceCountingRule::AccessibleGrowth;
  if (!rr_blocks_pair) {
    const auto& lex = table.lexicon_ids();
    for (std::size_t a = 0; a < lex.size(); ++a) {
      for (std::size_t b = a + 1; b < lex.size(); ++b) {
        TermId t = table.pair(lex[a], lex[b]);
        State s = state;
        s.insert(std::lower_bound(s.begin(), s.end(), t), t);
        out.push_back({WitnessStep::Kind::ExternalPair, t, std::move(s), lex[a],
                       lex[b]});
      }
    }
  }
  // external: root merged with root
  for (std::size_t i = 0; i < state.size(); ++i) {
    for (std::size_t j = i + 1; j < state.size(); ++j) {
      TermId t = table.pair(state[i], state[j]);
      out.push_back({WitnessStep::Kind::ExternalRootRoot, t,
                     with_two_replaced(i, j, t), state[i], state[j]});
    }
  }
  // internal: proper subterm re-merged onto its root
  for (std::size_t i = 0; i < state.size(); ++i) {
    TermId r = state[i];
    for (TermId sub : table.subterms(r)) {
      if (sub == r) continue;
      TermId t = table.pair(sub, r);
      out.push_back({WitnessStep::Kind::Internal, t, with_replaced(i, t), sub, r});
    }
  }
  // counter-cyclic: merge at a non-root position
  const bool allow_counter_cyclic =
      !cfg.extension && !cfg.no_tampering &&
      !(cfg.resource_restriction && cfg.rr_rule == ResourceCountingRule::NewSets);
  if (allow_counter_cyclic) {
    for (std::size_t i = 0; i < state.size(); ++i) {
      TermId r = state[i];
      std::vector<TermId> operands(table.lexicon_ids());
      for (TermId sub : table.subterms(r))
        if (sub != r &&
            std::find(operands.begin(), operands.end(), sub) == operands.end())
          operands.push_back(sub);
      for (TermId x : operands) {
        std::vector<std::pair<TermId, TermId>> reps;
        insertions(r, x, /*is_root=*/true, table, reps);
        for (auto [replacement, formed_set] : reps) {
          out.push_back({WitnessStep::Kind::CounterCyclic, formed_set,
                         with_replaced(i, replacement), x, r});
        }
      }
    }
  }
  return out;
}

std::string term_text(const TermTable& table, TermId t) {
  if (table.is_atom(t)) {
    const auto& item = table.atom(t);
    return item.phon.empty() && item.category ? *item.category : item.phon;
  }
  auto [x, y] = table.node(t);
  return "{" + term_text(table, x) + ", " + term_text(table, y) + "}";
}

std::string op_text(const TermTable& table, const Op& op) {
  switch (op.kind) {
    case WitnessStep::Kind::ExternalLexicon:
      return "merge lexicon item '" + term_text(table, op.a) + "' onto root " +
             term_text(table, op.b);
    case WitnessStep::Kind::ExternalPair:
      return "merge fresh lexicon items '" + term_text(table, op.a) + "' and '" +
             term_text(table, op.b) + "' as a new root";
    case WitnessStep::Kind::ExternalRootRoot:
      return "merge roots " + term_text(table, op.a) + " and " +
             term_text(table, op.b);
    case WitnessStep::Kind::Internal:
      return "internal merge of " + term_text(table, op.a) + " within root " +
             term_text(table, op.b);
    case WitnessStep::Kind::CounterCyclic:
      return "counter-cyclic merge of " + term_text(table, op.a) +
             " inside root " + term_text(table, op.b);
  }
  return "";
}

State initial_state(const EnumerationConfig& cfg, TermTable& table) {
  State s;
  if (cfg.start) {
    for (const auto& root : cfg.start->roots)
      s.push_back(*table.intern(root, /*create_atoms=*/true));
    std::sort(s.begin(), s.end());
  }
  return s;
}

void validate_config(const EnumerationConfig& cfg) {
  if (cfg.lexicon.empty())
    throw ValidationError("enumeration config: lexicon must be nonempty");
  if (cfg.max_steps < 1)
    throw ValidationError("enumeration config: max_steps must be >= 1");
}

}  // namespace

EnumerationResult enumerate_derivations(const EnumerationConfig& cfg) {
  validate_config(cfg);
  auto t0 = std::chrono::steady_clock::now();

  TermTable table(cfg.lexicon);
  const bool dedupe = cfg.dedupe == EnumerationConfig::Dedupe::Structural;

  // weighted BFS over canonical states: the weight is the number of
  // derivation branches reaching the state, so distinct-state work stays
  // small while branch totals remain exact
  std::map<State, std::uint64_t> level;
  level[initial_state(cfg, table)] = 1;

  EnumerationResult res;
  std::unordered_set<TermId> formed;
  std::uint64_t formations = 0;

  auto memory_used = [&]() {
    std::size_t bytes = table.memory_estimate();
    for (const auto& [st, w] : level)
      bytes += st.capacity() * sizeof(TermId) + 64;
    bytes += formed.size() * 16;
    return bytes;
  };

  for (int depth = 1; depth <= cfg.max_steps; ++depth) {
    std::map<State, std::uint64_t> next;
    std::uint64_t branches = 0;
    for (const auto& [state, weight] : level) {
      for (const Op& op : successors(state, table, cfg)) {
        next[op.successor] += weight;
        branches += weight;
        formations += weight;
        formed.insert(op.formed);
      }
    }
    level = std::move(next);
    res.workspaces_per_step.push_back(dedupe ? level.size() : branches);
    res.per_step.push_back(dedupe ? formed.size() : formations);

    if (cfg.memory_budget_bytes && memory_used() > cfg.memory_budget_bytes) {
      res.partial = true;
      res.total_sets = res.per_step.back();
      res.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      throw EnumerationBudgetExceeded(res);
    }
  }

  res.total_sets = res.per_step.back();
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

DerivabilityResult is_derivable(const SoPtr& target, const EnumerationConfig& cfg) {
  validate_config(cfg);
  TermTable table(cfg.lexicon);
  State start = initial_state(cfg, table);

  auto target_id = table.intern(target, /*create_atoms=*/false);
  if (!target_id) return {false, {}};  // uses atoms outside the lexicon/start

  for (TermId root : start)  // already present before any step
    for (TermId sub : table.subterms(root))
      if (sub == *target_id) return {true, {}};

  struct Parent {
    State state;
    WitnessStep step;
  };
  std::map<State, Parent> parents;
  std::map<State, int> seen;
  seen[start] = 0;
  std::vector<State> frontier{start};

  auto reconstruct = [&](State s) {
    std::vector<WitnessStep> steps;
    while (true) {
      auto it = parents.find(s);
      if (it == parents.end()) break;
      steps.push_back(it->second.step);
      s = it->second.state;
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
  };

  auto reaches_target = [&](const Op& op) {
    if (op.formed == *target_id) return true;
    // counter-cyclic steps also create the rebuilt spine sets
    for (TermId r : op.successor) {
      const auto& subs = table.subterms(r);
      if (std::binary_search(subs.begin(), subs.end(), *target_id)) return true;
    }
    return false;
  };

  for (int depth = 1; depth <= cfg.max_steps; ++depth) {
    std::vector<State> next_frontier;
    for (const auto& state : frontier) {
      for (const Op& op : successors(state, table, cfg)) {
        bool fresh = !seen.count(op.successor);
        if (fresh) {
          seen[op.successor] = depth;
          parents[op.successor] = {state, {op.kind, op_text(table, op)}};
          next_frontier.push_back(op.successor);
        }
        if (reaches_target(op)) {
          if (fresh) return {true, reconstruct(op.successor)};
          auto steps = reconstruct(state);
          steps.push_back({op.kind, op_text(table, op)});
          return {true, std::move(steps)};
        }
      }
    }
    frontier = std::move(next_frontier);
  }
  return {false, {}};
}

}  // namespace tcclab
