#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcclab/syntax.hpp"

namespace tcclab {

struct EnumerationConfig {
  std::vector<LexicalItem> lexicon;  // nonempty; drawable without bound
  int max_steps = 1;
  bool no_tampering = false;
  bool extension = false;
  bool resource_restriction = false;
  ResourceCountingRule rr_rule = ResourceCountingRule::NewSets;
  enum class Dedupe { Structural, None } dedupe = Dedupe::Structural;
  /// 0 means unlimited.
  std::size_t memory_budget_bytes = 0;
  /// Enumeration starts from this workspace instead of the empty one.
  std::optional<Workspace> start;
};

struct EnumerationResult {
  /// Cumulative set count per step. Structural dedupe: distinct sets formed
  /// up to each depth; no dedupe: set-formation events across all derivation
  /// branches.
  std::vector<std::uint64_t> per_step;
  /// per_step.back(): the deduped union size (structural) or the total
  /// formation count (none).
  std::uint64_t total_sets = 0;
  /// Workspaces per depth: distinct states (structural) or derivation
  /// branches (none).
  std::vector<std::uint64_t> workspaces_per_step;
  double wall_seconds = 0.0;
  bool partial = false;  // memory budget pressure; not authoritative
};

/// Breadth-first generation of every workspace reachable by MERGE
/// (lexicon item onto a root, a fresh lexicon pair as a new root, root with
/// root, subterm re-merge) within max_steps, filtered by the selected
/// economy conditions, deduped per config. Deterministic.
EnumerationResult enumerate_derivations(const EnumerationConfig& config);

/// Thrown when the memory budget is exceeded; carries the partial counts.
struct EnumerationBudgetExceeded : ResourceError {
  explicit EnumerationBudgetExceeded(EnumerationResult partial_result)
      : ResourceError("enumeration memory budget exceeded; partial counts are "
                      "not authoritative"),
        partial(std::move(partial_result)) {}
  EnumerationResult partial;
};

struct WitnessStep {
  enum class Kind {
    ExternalLexicon,
    ExternalPair,
    ExternalRootRoot,
    Internal,
    CounterCyclic
  };
  Kind kind;
  std::string text;  // human-readable description of the step
};

struct DerivabilityResult {
  bool derivable = false;
  std::vector<WitnessStep> witness;  // derivation reaching the target
};

/// True iff the target appears among the sets formed by some derivation
/// within the configured step budget, with a witness derivation.
DerivabilityResult is_derivable(const SoPtr& target, const EnumerationConfig& config);

}  // namespace tcclab
