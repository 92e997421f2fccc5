#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcclab/errors.hpp"

namespace tcclab {

// ---------------------------------------------------------------------------
// Features and lexical items
// ---------------------------------------------------------------------------

enum class Polarity { Plus, Minus };

struct Feature {
  std::string name;
  Polarity polarity = Polarity::Plus;

  friend bool operator==(const Feature&, const Feature&) = default;
};

/// A set of features, kept sorted by name; at most one polarity per name.
class FeatureSet {
 public:
  FeatureSet() = default;
  FeatureSet(std::initializer_list<Feature> fs);

  /// Inserts or replaces the feature with the same name.
  void set(Feature f);
  bool has(std::string_view name, Polarity pol = Polarity::Plus) const;
  /// True when every feature of `other` appears here with the same polarity.
  bool contains_all(const FeatureSet& other) const;
  bool empty() const { return feats_.empty(); }
  const std::vector<Feature>& items() const { return feats_; }

  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;

 private:
  std::vector<Feature> feats_;  // sorted by name
};

/// The bounded category inventory: N V Adj Adv P C T n v Asp Cl Neg Q Det.
bool is_category_symbol(std::string_view s);

struct LexicalItem {
  std::string phon;                     // may be empty (covert items)
  std::optional<std::string> category;  // from the fixed inventory when set
  FeatureSet features;

  friend bool operator==(const LexicalItem&, const LexicalItem&) = default;
};

/// Throws ValidationError unless the item satisfies its invariants.
void validate(const LexicalItem& item);

// ---------------------------------------------------------------------------
// Syntactic objects
// ---------------------------------------------------------------------------

// A tree path: 0 = left daughter, 1 = right daughter.
using Path = std::vector<int>;

struct Label {
  std::string category;
  std::optional<Path> source;  // path from the labeled node to its head

  friend bool operator==(const Label&, const Label&) = default;
};

using ChainId = std::uint32_t;
using OccurrenceId = std::uint64_t;

class SyntacticObject;
using SoPtr = std::shared_ptr<const SyntacticObject>;

/// Immutable binary-branching term over lexical items. Every internal node
/// has exactly two daughters. Copy chains are marked with a shared chain id;
/// the in-situ occurrence of a moved element additionally carries the
/// lower-copy flag.
class SyntacticObject {
 public:
  static SoPtr make_leaf(LexicalItem item);
  static SoPtr make_node(SoPtr left, SoPtr right,
                         std::optional<Label> label = std::nullopt);

  bool is_leaf() const { return leaf_.has_value(); }
  const LexicalItem& item() const;
  const SoPtr& left() const;
  const SoPtr& right() const;
  const std::optional<Label>& label() const { return label_; }

  std::optional<ChainId> chain() const { return chain_; }
  bool is_lower_copy() const { return lower_copy_; }
  OccurrenceId occurrence() const { return occurrence_; }

  /// Same term with chain membership attached (occurrence ids preserved).
  SoPtr with_chain(ChainId chain, bool lower_copy) const;
  SoPtr with_label(std::optional<Label> label) const;

  /// Number of nodes plus leaves.
  std::size_t size() const;
  int height() const;

 private:
  SyntacticObject() = default;

  std::optional<LexicalItem> leaf_;
  SoPtr left_, right_;
  std::optional<Label> label_;
  std::optional<ChainId> chain_;
  bool lower_copy_ = false;
  OccurrenceId occurrence_ = 0;
};

/// Subterm at `path`; throws IndexError on an invalid path.
const SoPtr& subterm_at(const SoPtr& root, const Path& path);

/// All root-to-node paths of subterms satisfying `pred`, preorder.
std::vector<Path> find_paths(const SoPtr& root,
                             const std::function<bool(const SyntacticObject&)>& pred);

/// Structural equality: occurrence ids ignored; the partition of occurrences
/// into copy chains is respected, restricted to the compared terms (a chain
/// with a single member inside a term is indistinguishable from no chain).
/// With order_sensitive=false, daughters compare as an unordered pair.
bool structurally_equal(const SoPtr& a, const SoPtr& b, bool order_sensitive = true);

/// Canonical serialization implementing the equality above (chains renumbered
/// in traversal order, singleton chains dropped). Equal keys iff equal terms.
std::string canonical_key(const SoPtr& so, bool order_sensitive = true);

/// Like canonical_key but blind to chains entirely ("set-theoretic" identity,
/// used by the derivation enumerator's structural dedup).
std::string set_key(const SoPtr& so);

// ---------------------------------------------------------------------------
// Workspaces and MERGE
// ---------------------------------------------------------------------------

struct Workspace {
  std::vector<SoPtr> roots;  // ordered multiset
  int step = 0;
};

/// Pairs a fresh leaf for `item` on top of the target root:
/// the target root R becomes {item, R}. On an empty workspace the item
/// becomes the sole root (paired by the next call). Inputs are untouched.
Workspace external_merge(const Workspace& ws, const LexicalItem& item,
                         std::size_t target = 0);

/// Re-merges the subterm at `path` (proper subterm of roots[root]) on top of
/// that root: R becomes {S, R'} where R' is R with the in-situ occurrence of
/// S marked as the lower copy of a shared chain.
Workspace internal_merge(const Workspace& ws, std::size_t root, const Path& path);

enum class EconomyCondition { NoTampering, Extension, ResourceRestriction };

struct EconomyVerdict {
  EconomyCondition condition;
  bool ok = false;
  std::string detail;  // nonempty when ok is false
};

/// MERGE must leave existing material unchanged: every root of `before`
/// appears intact (no structural change, no added features) in `after`.
EconomyVerdict check_no_tampering(const Workspace& before, const Workspace& after);

/// MERGE applies at the root: every newly created node is a root of `after`.
EconomyVerdict check_extension(const Workspace& before, const Workspace& after);

enum class ResourceCountingRule {
  NewSets,         // exactly one new set per step (default)
  AccessibleGrowth // accessible-term growth <= 2
};

EconomyVerdict check_resource_restriction(
    const Workspace& before, const Workspace& after,
    ResourceCountingRule rule = ResourceCountingRule::NewSets);

/// All subterms of all roots, each copy chain counted once. Returns one
/// representative per accessible term.
std::vector<SoPtr> accessible_terms(const Workspace& ws);

/// |accessible_terms| + |roots| (the literal Fong et al. sum).
std::size_t workspace_size(const Workspace& ws);

/// True iff a's sister dominates-or-equals b and a does not dominate b.
bool c_command(const SoPtr& root, const Path& a, const Path& b);

/// Canonical printable form of a full workspace (used by tests to check
/// that operations never mutate their inputs).
std::string workspace_fingerprint(const Workspace& ws);

}  // namespace tcclab
