#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcclab/syntax.hpp"

namespace tcclab {

/// What a probe looks for: a feature bundle (the goal must bear all of them)
/// or a category symbol (matches a leaf's category or a node's label).
struct SearchTarget {
  FeatureSet features;
  std::optional<std::string> category;

  bool empty() const { return features.empty() && !category; }
};

struct SearchHit {
  Path path;
  int depth = 0;  // root's daughters are at depth 1
};

struct SearchResult {
  std::vector<SearchHit> hits;       // all at the same, minimal depth
  int depth_limit_reached = 0;       // final depth limit probed
  bool found() const { return !hits.empty(); }
};

enum class TraceOrigin { LabelSearch, ProbeGoal, NodeEnumeration };

enum class DescriptorKind { LabelSym, TerminalSym, BoundarySym };

struct VisitDescriptor {
  std::string symbol;
  DescriptorKind kind = DescriptorKind::LabelSym;

  friend bool operator==(const VisitDescriptor&, const VisitDescriptor&) = default;
};

struct SearchTrace {
  std::vector<VisitDescriptor> visits;
  TraceOrigin origin = TraceOrigin::ProbeGoal;
};

/// Iterative-deepening minimal search: depth-limited DFS (left daughter
/// first), limit starting at 1 and increased by one level until the target
/// is found; all ties at the minimal depth are returned, deeper matches
/// never. An occurrence whose copy chain has a shallower member inside the
/// domain is skipped together with its subtree. A no-match result carries
/// empty hits and the final limit probed.
SearchResult minimal_search(const SoPtr& domain, const SearchTarget& target);

struct LabelResult {
  std::optional<Label> label;
  std::string reason;  // set when unlabeled

  bool labeled() const { return label.has_value(); }
};

/// Labeling algorithm: lower copies are invisible; a head (leaf) labels a
/// head-phrase pair; a phrase-phrase pair labels by a feature shared by both
/// daughters' heads; anything else is an explicit unlabeled verdict.
LabelResult label(const SoPtr& node);

/// Descriptor for a node in traces: label category when present, else leaf
/// category, else phon; "?" for an unlabeled internal node.
std::string trace_descriptor(const SyntacticObject& so);

/// Root-to-hit visit chain of the successful minimal search (origin and hit
/// included). Not-found searches throw DomainError.
SearchTrace search_trace(const SoPtr& domain, const SearchTarget& target);

/// Root-to-goal visit chain for an explicitly designated goal.
SearchTrace path_trace(const SoPtr& domain, const Path& goal,
                       TraceOrigin origin = TraceOrigin::LabelSearch);

/// The path a derived structure designates for scoring: the unique head
/// bearing a +Goal feature when present, otherwise the lowest trace site of
/// the outermost copy chain. DomainError when the structure designates
/// nothing.
Path goal_path(const SoPtr& so);

enum class EnumerationMode { LabelsOnly, LabelsAndTerminals, PhraseLabels };

/// Depth-first, left-to-right enumeration of the selected node classes.
/// LabelsOnly: labels of labeled nodes. LabelsAndTerminals: labels plus
/// terminal descriptors. PhraseLabels: labels plus a boundary descriptor at
/// each labeled node's close. Unlabeled nodes emit nothing.
SearchTrace node_enumeration(const SoPtr& so, EnumerationMode mode);

/// Movement candidates grouped by probe search depth from the root; equal
/// depths share a group (either order licensed). All targets must bear +Q.
std::vector<std::vector<Path>> superiority_order(const Workspace& ws,
                                                 const std::vector<Path>& movables);

}  // namespace tcclab
