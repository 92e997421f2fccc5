#include "tcclab/syntax.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace tcclab {

namespace {

std::atomic<OccurrenceId> g_occurrence_counter{1};

OccurrenceId next_occurrence() {
  return g_occurrence_counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

// ---------------------------------------------------------------------------
// FeatureSet
// ---------------------------------------------------------------------------

FeatureSet::FeatureSet(std::initializer_list<Feature> fs) {
  for (const auto& f : fs) set(f);
}

void FeatureSet::set(Feature f) {
  if (f.name.empty()) throw ValidationError("feature name must be nonempty");
  auto it = std::lower_bound(
      feats_.begin(), feats_.end(), f,
      [](const Feature& a, const Feature& b) { return a.name < b.name; });
  if (it != feats_.end() && it->name == f.name) {
    it->polarity = f.polarity;
  } else {
    feats_.insert(it, std::move(f));
  }
}

bool FeatureSet::has(std::string_view name, Polarity pol) const {
  for (const auto& f : feats_)
    if (f.name == name) return f.polarity == pol;
  return false;
}

bool FeatureSet::contains_all(const FeatureSet& other) const {
  for (const auto& f : other.feats_)
    if (!has(f.name, f.polarity)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Category inventory
// ---------------------------------------------------------------------------

bool is_category_symbol(std::string_view s) {
  static const std::array<std::string_view, 14> kInventory = {
      "N", "V", "Adj", "Adv", "P", "C", "T", "n", "v", "Asp", "Cl", "Neg", "Q", "Det"};
  return std::find(kInventory.begin(), kInventory.end(), s) != kInventory.end();
}

void validate(const LexicalItem& item) {
  if (item.category && !is_category_symbol(*item.category))
    throw ValidationError("category '" + *item.category +
                          "' is not in the fixed inventory");
}

// ---------------------------------------------------------------------------
// SyntacticObject
// ---------------------------------------------------------------------------

SoPtr SyntacticObject::make_leaf(LexicalItem item) {
  validate(item);
  auto so = std::shared_ptr<SyntacticObject>(new SyntacticObject());
  so->leaf_ = std::move(item);
  so->occurrence_ = next_occurrence();
  return so;
}

SoPtr SyntacticObject::make_node(SoPtr left, SoPtr right, std::optional<Label> label) {
  if (!left || !right)
    throw ValidationError("a node requires exactly two daughters");
  auto so = std::shared_ptr<SyntacticObject>(new SyntacticObject());
  so->left_ = std::move(left);
  so->right_ = std::move(right);
  so->label_ = std::move(label);
  so->occurrence_ = next_occurrence();
  return so;
}

const LexicalItem& SyntacticObject::item() const {
  if (!is_leaf()) throw IndexError("item() on a non-leaf");
  return *leaf_;
}

const SoPtr& SyntacticObject::left() const {
  if (is_leaf()) throw IndexError("left() on a leaf");
  return left_;
}

const SoPtr& SyntacticObject::right() const {
  if (is_leaf()) throw IndexError("right() on a leaf");
  return right_;
}

SoPtr SyntacticObject::with_chain(ChainId chain, bool lower_copy) const {
  auto so = std::shared_ptr<SyntacticObject>(new SyntacticObject(*this));
  so->chain_ = chain;
  so->lower_copy_ = lower_copy;
  return so;
}

SoPtr SyntacticObject::with_label(std::optional<Label> label) const {
  auto so = std::shared_ptr<SyntacticObject>(new SyntacticObject(*this));
  so->label_ = std::move(label);
  return so;
}

std::size_t SyntacticObject::size() const {
  if (is_leaf()) return 1;
  return 1 + left_->size() + right_->size();
}

int SyntacticObject::height() const {
  if (is_leaf()) return 0;
  return 1 + std::max(left_->height(), right_->height());
}

const SoPtr& subterm_at(const SoPtr& root, const Path& path) {
  const SoPtr* cur = &root;
  for (int step : path) {
    if ((*cur)->is_leaf() || (step != 0 && step != 1))
      throw IndexError("invalid path into syntactic object");
    cur = step == 0 ? &(*cur)->left() : &(*cur)->right();
  }
  return *cur;
}

std::vector<Path> find_paths(const SoPtr& root,
                             const std::function<bool(const SyntacticObject&)>& pred) {
  std::vector<Path> out;
  Path cur;
  std::function<void(const SoPtr&)> walk = [&](const SoPtr& so) {
    if (pred(*so)) out.push_back(cur);
    if (!so->is_leaf()) {
      cur.push_back(0);
      walk(so->left());
      cur.back() = 1;
      walk(so->right());
      cur.pop_back();
    }
  };
  walk(root);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical keys and structural equality
// ---------------------------------------------------------------------------

namespace {

std::string feature_text(const FeatureSet& fs) {
  std::string out;
  for (const auto& f : fs.items()) {
    out += f.polarity == Polarity::Plus ? '+' : '-';
    out += f.name;
    out += ',';
  }
  return out;
}

std::string leaf_text(const LexicalItem& it) {
  std::string out = "L(";
  out += it.phon;
  out += '|';
  if (it.category) out += *it.category;
  out += '|';
  out += feature_text(it.features);
  out += ')';
  return out;
}

// Keys are built in two passes: first chains occurring in the term are
// renumbered by first appearance and chains with a single member inside the
// term are dropped, then the term serializes with those local chain marks.
void collect_chain_counts(const SyntacticObject& so,
                          std::map<ChainId, int>& counts) {
  if (so.chain()) counts[*so.chain()]++;
  if (!so.is_leaf()) {
    collect_chain_counts(*so.left(), counts);
    collect_chain_counts(*so.right(), counts);
  }
}

struct KeyContext {
  const std::map<ChainId, int>* counts;
  std::map<ChainId, int> renumber;
  bool order_sensitive;
  bool chain_blind;
};

std::string key_of(const SyntacticObject& so, KeyContext& ctx) {
  std::string mark;
  if (!ctx.chain_blind && so.chain() && ctx.counts->at(*so.chain()) > 1) {
    auto [it, fresh] =
        ctx.renumber.emplace(*so.chain(), static_cast<int>(ctx.renumber.size()));
    mark = "~" + std::to_string(it->second);
  }
  if (so.is_leaf()) return leaf_text(so.item()) + mark;
  std::string lab = so.label() ? "_" + so.label()->category : std::string();
  std::string l = key_of(*so.left(), ctx);
  std::string r = key_of(*so.right(), ctx);
  if (!ctx.order_sensitive && r < l) std::swap(l, r);
  return "(" + lab + " " + l + " " + r + ")" + mark;
}

std::string make_key(const SoPtr& so, bool order_sensitive, bool chain_blind) {
  std::map<ChainId, int> counts;
  collect_chain_counts(*so, counts);
  KeyContext ctx{&counts, {}, order_sensitive, chain_blind};
  return key_of(*so, ctx);
}

}  // namespace

std::string canonical_key(const SoPtr& so, bool order_sensitive) {
  return make_key(so, order_sensitive, /*chain_blind=*/false);
}

std::string set_key(const SoPtr& so) {
  return make_key(so, /*order_sensitive=*/false, /*chain_blind=*/true);
}

bool structurally_equal(const SoPtr& a, const SoPtr& b, bool order_sensitive) {
  return canonical_key(a, order_sensitive) == canonical_key(b, order_sensitive);
}

// ---------------------------------------------------------------------------
// MERGE
// ---------------------------------------------------------------------------

Workspace external_merge(const Workspace& ws, const LexicalItem& item,
                         std::size_t target) {
  Workspace out = ws;
  out.step = ws.step + 1;
  SoPtr leaf = SyntacticObject::make_leaf(item);
  if (ws.roots.empty()) {
    out.roots.push_back(leaf);
    return out;
  }
  if (target >= ws.roots.size())
    throw IndexError("external_merge: root index " + std::to_string(target) +
                     " out of range");
  out.roots[target] = SyntacticObject::make_node(leaf, ws.roots[target]);
  return out;
}

namespace {

SoPtr replace_at(const SoPtr& root, const Path& path, std::size_t depth,
                 const SoPtr& replacement) {
  if (depth == path.size()) return replacement;
  if (root->is_leaf()) throw IndexError("invalid path into syntactic object");
  SoPtr rebuilt;
  if (path[depth] == 0)
    rebuilt = SyntacticObject::make_node(
        replace_at(root->left(), path, depth + 1, replacement), root->right(),
        root->label());
  else
    rebuilt = SyntacticObject::make_node(
        root->left(), replace_at(root->right(), path, depth + 1, replacement),
        root->label());
  if (root->chain()) rebuilt = rebuilt->with_chain(*root->chain(), root->is_lower_copy());
  return rebuilt;
}

std::atomic<ChainId> g_chain_counter{1};

}  // namespace

Workspace internal_merge(const Workspace& ws, std::size_t root, const Path& path) {
  if (root >= ws.roots.size())
    throw IndexError("internal_merge: root index out of range");
  if (path.empty())
    throw IndexError("internal_merge: degenerate merge of a root with itself");
  const SoPtr& old_root = ws.roots[root];
  // copies are frozen: no extraction from inside a chain member, and a chain
  // moves again only via its highest occurrence
  for (std::size_t i = 1; i < path.size(); ++i) {
    Path prefix(path.begin(), path.begin() + i);
    if (subterm_at(old_root, prefix)->chain())
      throw IndexError("internal_merge: cannot extract from inside a copy");
  }
  const SoPtr& sub = subterm_at(old_root, path);
  if (sub->is_lower_copy())
    throw IndexError("internal_merge: a lower copy cannot re-merge; move the "
                     "chain's highest occurrence");

  ChainId chain = sub->chain() ? *sub->chain()
                               : g_chain_counter.fetch_add(1, std::memory_order_relaxed);
  SoPtr lower = sub->with_chain(chain, /*lower_copy=*/true);
  SoPtr upper = sub->with_chain(chain, /*lower_copy=*/false);
  SoPtr rebuilt = replace_at(old_root, path, 0, lower);

  Workspace out = ws;
  out.step = ws.step + 1;
  out.roots[root] = SyntacticObject::make_node(upper, rebuilt);
  return out;
}

// ---------------------------------------------------------------------------
// Economy validators
// ---------------------------------------------------------------------------

namespace {

void require_one_step(const Workspace& before, const Workspace& after,
                      const char* who) {
  if (after.step != before.step + 1)
    throw SequencingError(std::string(who) +
                          ": workspaces are not one derivation step apart");
}

void collect_subterm_keys(const SoPtr& so, std::multiset<std::string>& keys) {
  keys.insert(canonical_key(so));
  if (!so->is_leaf()) {
    collect_subterm_keys(so->left(), keys);
    collect_subterm_keys(so->right(), keys);
  }
}

// Object multiset for counting purposes: a copy chain is one object, so a
// lower-copy subtree contributes nothing (its content is counted at the
// chain's upper occurrence).
void collect_object_keys(const SoPtr& so, std::multiset<std::string>& keys) {
  if (so->is_lower_copy()) return;
  keys.insert(canonical_key(so));
  if (!so->is_leaf()) {
    collect_object_keys(so->left(), keys);
    collect_object_keys(so->right(), keys);
  }
}

// Canonical keys of the nodes (sets) of `after` that are not present in
// `before`, as a chain-aware multiset difference over all subterms.
std::vector<std::string> new_node_keys(const Workspace& before,
                                       const Workspace& after) {
  std::multiset<std::string> b, a;
  for (const auto& r : before.roots) collect_object_keys(r, b);
  for (const auto& r : after.roots) collect_object_keys(r, a);
  std::vector<std::string> fresh;
  for (const auto& k : a) {
    auto it = b.find(k);
    if (it != b.end()) {
      b.erase(it);
    } else if (k.front() == '(') {  // nodes only; leaf keys start with 'L'
      fresh.push_back(k);
    }
  }
  return fresh;
}

bool workspaces_identical(const Workspace& a, const Workspace& b) {
  if (a.roots.size() != b.roots.size()) return false;
  for (std::size_t i = 0; i < a.roots.size(); ++i)
    if (canonical_key(a.roots[i]) != canonical_key(b.roots[i])) return false;
  return true;
}

}  // namespace

EconomyVerdict check_no_tampering(const Workspace& before, const Workspace& after) {
  require_one_step(before, after, "check_no_tampering");
  if (workspaces_identical(before, after))
    return {EconomyCondition::NoTampering, true,
            "vacuous: workspaces are structurally identical"};

  std::set<std::string> available;
  for (const auto& r : after.roots) {
    std::multiset<std::string> keys;
    collect_subterm_keys(r, keys);
    available.insert(keys.begin(), keys.end());
  }
  for (std::size_t i = 0; i < before.roots.size(); ++i) {
    if (!available.count(canonical_key(before.roots[i]))) {
      return {EconomyCondition::NoTampering, false,
              "root " + std::to_string(i) +
                  " of the input workspace was modified by the step"};
    }
  }
  return {EconomyCondition::NoTampering, true, ""};
}

EconomyVerdict check_extension(const Workspace& before, const Workspace& after) {
  require_one_step(before, after, "check_extension");
  auto fresh = new_node_keys(before, after);
  if (fresh.empty())
    return {EconomyCondition::Extension, true, "vacuous: no new node created"};
  std::set<std::string> root_keys;
  for (const auto& r : after.roots) root_keys.insert(canonical_key(r));
  for (const auto& k : fresh) {
    if (!root_keys.count(k))
      return {EconomyCondition::Extension, false,
              "a newly created node is not a root of the output workspace "
              "(non-root attachment)"};
  }
  return {EconomyCondition::Extension, true, ""};
}

EconomyVerdict check_resource_restriction(const Workspace& before,
                                          const Workspace& after,
                                          ResourceCountingRule rule) {
  require_one_step(before, after, "check_resource_restriction");
  if (rule == ResourceCountingRule::NewSets) {
    auto fresh = new_node_keys(before, after);
    if (fresh.size() == 1) return {EconomyCondition::ResourceRestriction, true, ""};
    if (fresh.empty())
      return {EconomyCondition::ResourceRestriction, true,
              "vacuous: no new set created"};
    return {EconomyCondition::ResourceRestriction, false,
            "step created " + std::to_string(fresh.size()) +
                " new sets; at most 1 allowed"};
  }
  std::ptrdiff_t growth =
      static_cast<std::ptrdiff_t>(accessible_terms(after).size()) -
      static_cast<std::ptrdiff_t>(accessible_terms(before).size());
  if (growth <= 2) return {EconomyCondition::ResourceRestriction, true, ""};
  return {EconomyCondition::ResourceRestriction, false,
          "accessible terms grew by " + std::to_string(growth) +
              "; at most 2 allowed"};
}

// ---------------------------------------------------------------------------
// Accessibility
// ---------------------------------------------------------------------------

std::vector<SoPtr> accessible_terms(const Workspace& ws) {
  std::vector<SoPtr> out;
  std::unordered_set<std::string> seen;  // "occ:<id>" or "chain:<id>"
  std::function<void(const SoPtr&)> walk = [&](const SoPtr& so) {
    std::string key = so->chain() ? "chain:" + std::to_string(*so->chain())
                                  : "occ:" + std::to_string(so->occurrence());
    if (seen.insert(key).second) out.push_back(so);
    if (!so->is_leaf()) {
      walk(so->left());
      walk(so->right());
    }
  };
  for (const auto& r : ws.roots) walk(r);
  return out;
}

std::size_t workspace_size(const Workspace& ws) {
  return accessible_terms(ws).size() + ws.roots.size();
}

// ---------------------------------------------------------------------------
// c-command
// ---------------------------------------------------------------------------

namespace {

bool is_prefix(const Path& p, const Path& q) {
  if (p.size() > q.size()) return false;
  return std::equal(p.begin(), p.end(), q.begin());
}

}  // namespace

bool c_command(const SoPtr& root, const Path& a, const Path& b) {
  subterm_at(root, a);  // validate both paths
  subterm_at(root, b);
  if (a.empty()) return false;  // the root has no sister
  Path sister = a;
  sister.back() ^= 1;
  return is_prefix(sister, b) && !is_prefix(a, b);
}

std::string workspace_fingerprint(const Workspace& ws) {
  std::ostringstream os;
  os << "step=" << ws.step << ";";
  for (const auto& r : ws.roots) os << canonical_key(r) << ";";
  return os.str();
}

}  // namespace tcclab
