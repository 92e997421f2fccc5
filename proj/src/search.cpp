#include "tcclab/search.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>

namespace tcclab {

namespace {

// Chain occurrences inside a search domain, keyed by (depth, preorder index):
// only the minimal occurrence of each chain is visible to the probe.
struct ChainIndex {
  std::map<ChainId, std::pair<int, std::size_t>> best;

  static ChainIndex build(const SoPtr& domain) {
    ChainIndex idx;
    std::size_t counter = 0;
    std::function<void(const SoPtr&, int)> walk = [&](const SoPtr& so, int depth) {
      std::size_t my_index = counter++;
      if (so->chain()) {
        auto key = std::make_pair(depth, my_index);
        auto it = idx.best.find(*so->chain());
        if (it == idx.best.end() || key < it->second)
          idx.best[*so->chain()] = key;
      }
      if (!so->is_leaf()) {
        walk(so->left(), depth + 1);
        walk(so->right(), depth + 1);
      }
    };
    walk(domain, 0);
    return idx;
  }

  bool skipped(const SyntacticObject& so, int depth, std::size_t preorder) const {
    if (!so.chain()) return false;
    auto it = best.find(*so.chain());
    return it != best.end() && it->second != std::make_pair(depth, preorder);
  }
};

bool matches(const SyntacticObject& so, const SearchTarget& target) {
  if (so.is_leaf()) {
    const auto& item = so.item();
    if (!target.features.empty() && !item.features.contains_all(target.features))
      return false;
    if (target.category && item.category != *target.category) return false;
    return true;
  }
  // nodes match category targets through their label
  if (!target.features.empty()) return false;
  return target.category && so.label() &&
         so.label()->category == *target.category;
}

}  // namespace

SearchResult minimal_search(const SoPtr& domain, const SearchTarget& target) {
  if (target.empty())
    throw ValidationError("minimal_search: empty search target");
  ChainIndex chains = ChainIndex::build(domain);
  const int height = domain->height();

  SearchResult result;
  for (int limit = 1; limit <= height; ++limit) {
    std::vector<SearchHit> hits;
    std::size_t preorder = 0;
    Path cur;
    std::function<void(const SoPtr&, int)> dfs = [&](const SoPtr& so, int depth) {
      std::size_t my_index = preorder++;
      if (depth > 0 && chains.skipped(*so, depth, my_index)) return;
      if (depth > 0 && matches(*so, target)) {
        hits.push_back({cur, depth});
        return;  // a hit terminates this branch of the search
      }
      if (depth == limit || so->is_leaf()) return;
      cur.push_back(0);
      dfs(so->left(), depth + 1);
      cur.back() = 1;
      dfs(so->right(), depth + 1);
      cur.pop_back();
    };
    dfs(domain, 0);
    result.depth_limit_reached = limit;
    if (!hits.empty()) {
      // iterative deepening: first successful limit, hence all minimal
      result.hits = std::move(hits);
      return result;
    }
  }
  result.depth_limit_reached = std::max(height, 1);
  return result;
}

// ---------------------------------------------------------------------------
// Labeling
// ---------------------------------------------------------------------------

namespace {

bool visible_to_labeling(const SyntacticObject& so) {
  return !so.is_lower_copy();
}

// Shallowest visible leaf of a daughter; breadth-first, left first.
std::optional<std::pair<Path, const SyntacticObject*>> labeling_head(const SoPtr& so) {
  std::deque<std::pair<Path, const SyntacticObject*>> queue;
  queue.push_back({{}, so.get()});
  while (!queue.empty()) {
    auto [path, node] = queue.front();
    queue.pop_front();
    if (!visible_to_labeling(*node)) continue;
    if (node->is_leaf()) return std::make_pair(path, node);
    Path l = path, r = path;
    l.push_back(0);
    r.push_back(1);
    queue.push_back({l, node->left().get()});
    queue.push_back({r, node->right().get()});
  }
  return std::nullopt;
}

std::string head_symbol(const LexicalItem& item) {
  if (item.category) return *item.category;
  return item.phon;
}

LabelResult project_from(const SoPtr& daughter, int side) {
  if (daughter->is_leaf()) {
    return {Label{head_symbol(daughter->item()), Path{side}}, ""};
  }
  if (daughter->label()) {
    Label lab = *daughter->label();
    Path src{side};
    if (lab.source)
      src.insert(src.end(), lab.source->begin(), lab.source->end());
    lab.source = daughter->label()->source ? std::optional<Path>(src) : std::nullopt;
    return {lab, ""};
  }
  LabelResult inner = label(daughter);
  if (!inner.labeled())
    return {std::nullopt, "projecting daughter is itself unlabeled: " + inner.reason};
  Label lab = *inner.label;
  if (lab.source) lab.source->insert(lab.source->begin(), side);
  return {lab, ""};
}

}  // namespace

LabelResult label(const SoPtr& node) {
  if (node->is_leaf()) throw IndexError("label: applies to nodes, not leaves");
  const SoPtr& l = node->left();
  const SoPtr& r = node->right();
  const bool lv = visible_to_labeling(*l);
  const bool rv = visible_to_labeling(*r);

  if (!lv && !rv)
    return {std::nullopt, "both daughters are lower copies"};
  if (lv != rv)  // copy invisibility: the visible daughter projects
    return project_from(lv ? l : r, lv ? 0 : 1);

  const bool lleaf = l->is_leaf();
  const bool rleaf = r->is_leaf();
  if (lleaf && !rleaf)
    return {Label{head_symbol(l->item()), Path{0}}, ""};
  if (rleaf && !lleaf)
    return {Label{head_symbol(r->item()), Path{1}}, ""};
  if (lleaf && rleaf)  // first-merge of two heads: the left one projects
    return {Label{head_symbol(l->item()), Path{0}}, ""};

  // phrase-phrase: label by a prominent feature shared by both heads
  auto lh = labeling_head(l);
  auto rh = labeling_head(r);
  if (lh && rh) {
    for (const auto& f : lh->second->item().features.items()) {
      if (f.polarity == Polarity::Plus &&
          rh->second->item().features.has(f.name, Polarity::Plus)) {
        Path src{0};
        src.insert(src.end(), lh->first.begin(), lh->first.end());
        return {Label{f.name, src}, ""};
      }
    }
  }
  return {std::nullopt,
          "phrase-phrase configuration with no shared prominent feature"};
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

std::string trace_descriptor(const SyntacticObject& so) {
  if (so.is_leaf()) {
    const auto& item = so.item();
    if (item.category) return *item.category;
    return item.phon;
  }
  if (so.label()) return so.label()->category;
  return "?";
}

SearchTrace path_trace(const SoPtr& domain, const Path& goal, TraceOrigin origin) {
  SearchTrace trace;
  trace.origin = origin;
  const SoPtr* cur = &domain;
  trace.visits.push_back({trace_descriptor(**cur),
                          (*cur)->is_leaf() ? DescriptorKind::TerminalSym
                                            : DescriptorKind::LabelSym});
  for (int step : goal) {
    if ((*cur)->is_leaf() || (step != 0 && step != 1))
      throw IndexError("path_trace: invalid goal path");
    cur = step == 0 ? &(*cur)->left() : &(*cur)->right();
    trace.visits.push_back({trace_descriptor(**cur),
                            (*cur)->is_leaf() ? DescriptorKind::TerminalSym
                                              : DescriptorKind::LabelSym});
  }
  return trace;
}

SearchTrace search_trace(const SoPtr& domain, const SearchTarget& target) {
  SearchResult res = minimal_search(domain, target);
  if (!res.found())
    throw DomainError("search_trace: target not found in domain");
  return path_trace(domain, res.hits.front().path, TraceOrigin::ProbeGoal);
}

Path goal_path(const SoPtr& so) {
  // explicit goal marker first
  auto goals = find_paths(so, [](const SyntacticObject& n) {
    return n.is_leaf() && n.item().features.has("Goal");
  });
  if (goals.size() > 1)
    throw ValidationError("goal_path: more than one +Goal head");
  if (goals.size() == 1) return goals.front();

  // otherwise the outermost movement chain's lowest trace site
  struct Occurrence { int depth; std::size_t preorder; Path path; };
  std::map<ChainId, std::vector<std::pair<Occurrence, bool>>> chains;
  std::size_t counter = 0;
  Path cur;
  std::function<void(const SoPtr&, int)> walk = [&](const SoPtr& n, int depth) {
    std::size_t idx = counter++;
    if (n->chain())
      chains[*n->chain()].push_back({{depth, idx, cur}, n->is_lower_copy()});
    if (!n->is_leaf()) {
      cur.push_back(0);
      walk(n->left(), depth + 1);
      cur.back() = 1;
      walk(n->right(), depth + 1);
      cur.pop_back();
    }
  };
  walk(so, 0);

  const std::vector<std::pair<Occurrence, bool>>* outermost = nullptr;
  std::pair<int, std::size_t> best{std::numeric_limits<int>::max(),
                                   std::numeric_limits<std::size_t>::max()};
  for (const auto& [id, occs] : chains) {
    for (const auto& [occ, lower] : occs) {
      if (lower) continue;
      auto key = std::make_pair(occ.depth, occ.preorder);
      if (key < best) {
        best = key;
        outermost = &occs;
      }
    }
  }
  if (!outermost)
    throw DomainError("goal_path: structure designates no goal "
                      "(no +Goal head and no movement chain)");
  const Path* site = nullptr;
  int deepest = -1;
  for (const auto& [occ, lower] : *outermost) {
    if (lower && occ.depth > deepest) {
      deepest = occ.depth;
      site = &occ.path;
    }
  }
  if (!site)
    throw DomainError("goal_path: outermost chain has no lower copy");
  return *site;
}

SearchTrace node_enumeration(const SoPtr& so, EnumerationMode mode) {
  SearchTrace trace;
  trace.origin = TraceOrigin::NodeEnumeration;
  std::function<void(const SoPtr&)> walk = [&](const SoPtr& n) {
    if (n->is_leaf()) {
      if (mode == EnumerationMode::LabelsAndTerminals)
        trace.visits.push_back({trace_descriptor(*n), DescriptorKind::TerminalSym});
      return;
    }
    const bool labeled = n->label().has_value();
    if (labeled)
      trace.visits.push_back({n->label()->category, DescriptorKind::LabelSym});
    walk(n->left());
    walk(n->right());
    if (labeled && mode == EnumerationMode::PhraseLabels)
      trace.visits.push_back({"|", DescriptorKind::BoundarySym});
  };
  walk(so);
  return trace;
}

std::vector<std::vector<Path>> superiority_order(const Workspace& ws,
                                                 const std::vector<Path>& movables) {
  if (movables.empty()) return {};
  if (ws.roots.empty())
    throw ValidationError("superiority_order: empty workspace");
  const SoPtr& root = ws.roots.front();

  std::vector<std::pair<int, Path>> by_depth;
  for (const auto& p : movables) {
    const SoPtr& sub = subterm_at(root, p);  // validates
    bool bears_q = false;
    std::function<void(const SoPtr&)> scan = [&](const SoPtr& n) {
      if (n->is_leaf()) {
        if (n->item().features.has("Q")) bears_q = true;
      } else {
        scan(n->left());
        scan(n->right());
      }
    };
    scan(sub);
    if (!bears_q)
      throw ValidationError("superiority_order: movable does not bear +Q");
    by_depth.emplace_back(static_cast<int>(p.size()), p);
  }
  std::stable_sort(by_depth.begin(), by_depth.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::vector<Path>> groups;
  for (const auto& [d, p] : by_depth) {
    if (groups.empty() || static_cast<int>(groups.back().front().size()) != d)
      groups.emplace_back();
    groups.back().push_back(p);
  }
  return groups;
}

}  // namespace tcclab
