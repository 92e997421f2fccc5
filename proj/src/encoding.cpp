#include "tcclab/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace tcclab {

namespace {

bool keep_descriptor(const VisitDescriptor& d, const EncodingScheme& scheme) {
  switch (d.kind) {
    case DescriptorKind::LabelSym: return scheme.labels;
    case DescriptorKind::TerminalSym: return scheme.terminals;
    case DescriptorKind::BoundarySym: return scheme.boundary_markers;
  }
  return false;
}

std::string kind_text(DescriptorKind k) {
  switch (k) {
    case DescriptorKind::LabelSym: return "label";
    case DescriptorKind::TerminalSym: return "terminal";
    case DescriptorKind::BoundarySym: return "boundary";
  }
  return "?";
}

}  // namespace

SymbolSequence encode(const SearchTrace& trace, const EncodingScheme& scheme) {
  if (trace.visits.empty())
    throw DomainError("encode: empty trace");

  // token stream: either the selected node descriptors, or one token per
  // transition between consecutive visits (step markers)
  std::vector<std::pair<std::string, DescriptorKind>> tokens;
  if (scheme.step_markers) {
    for (std::size_t i = 1; i < trace.visits.size(); ++i) {
      tokens.emplace_back(trace.visits[i - 1].symbol + ">" + trace.visits[i].symbol,
                          DescriptorKind::LabelSym);
    }
  } else {
    for (const auto& v : trace.visits)
      if (keep_descriptor(v, scheme)) tokens.emplace_back(v.symbol, v.kind);
  }
  if (tokens.empty())
    throw DomainError("encode: scheme '" + scheme.id +
                      "' selects nothing from this trace");

  SymbolSequence seq;
  seq.scheme = scheme.id;
  std::unordered_map<std::string, std::uint32_t> interned;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& [text, kind] = tokens[i];
    std::string key;
    switch (scheme.symbol_map) {
      case SymbolMap::CategoryIdentity: key = text; break;
      case SymbolMap::FreshPerStep: key = std::to_string(i); break;
      case SymbolMap::FreshPerType: key = kind_text(kind); break;
    }
    auto [it, fresh] =
        interned.emplace(key, static_cast<std::uint32_t>(interned.size()));
    if (fresh) seq.legend.push_back(text);
    seq.symbols.push_back(it->second);
  }
  seq.alphabet_size = static_cast<std::uint32_t>(interned.size());
  return seq;
}

SymbolSequence encode_structure(const SoPtr& so, const EncodingScheme& scheme) {
  EnumerationMode mode = EnumerationMode::LabelsOnly;
  if (scheme.terminals) mode = EnumerationMode::LabelsAndTerminals;
  if (scheme.boundary_markers) mode = EnumerationMode::PhraseLabels;
  return encode(node_enumeration(so, mode), scheme);
}

const std::vector<EncodingScheme>& default_registry() {
  static const std::vector<EncodingScheme> registry = [] {
    std::vector<EncodingScheme> r;
    r.push_back({"labels+terminals", true, true, false, SymbolMap::CategoryIdentity, false});
    r.push_back({"labels+terminals+b", true, true, false, SymbolMap::CategoryIdentity, true});
    r.push_back({"phrase-labels", true, false, false, SymbolMap::CategoryIdentity, false});
    r.push_back({"phrase-labels+b", true, false, false, SymbolMap::CategoryIdentity, true});
    r.push_back({"path-steps", false, false, true, SymbolMap::FreshPerStep, false});
    r.push_back({"path-steps+b", false, false, true, SymbolMap::FreshPerStep, true});
    return r;
  }();
  return registry;
}

const EncodingScheme& scheme_by_id(const std::string& id,
                                   const std::vector<EncodingScheme>& registry) {
  for (const auto& s : registry)
    if (s.id == id) return s;
  throw DomainError("unknown encoding scheme: " + id);
}

std::vector<SchemeScore> calibrate(const std::vector<CalibrationFixture>& fixtures,
                                   const std::vector<EncodingScheme>& schemes,
                                   double tolerance) {
  if (fixtures.empty())
    throw ValidationError("calibrate: no fixtures");
  if (tolerance <= 0)
    throw ValidationError("calibrate: tolerance must be positive");

  std::vector<SchemeScore> scores;
  for (const auto& scheme : schemes) {
    SchemeScore sc;
    sc.scheme_id = scheme.id;
    for (const auto& fx : fixtures) {
      double value = std::nan("");
      try {
        SymbolSequence seq =
            std::holds_alternative<SoPtr>(fx.payload)
                ? encode_structure(std::get<SoPtr>(fx.payload), scheme)
                : encode(std::get<SearchTrace>(fx.payload), scheme);
        value = normalized_complexity(seq.symbols, LogBase::Two).normalized;
      } catch (const DomainError&) {
        // scheme selects nothing (or too short) for this fixture
      }
      sc.values.push_back(value);
      sc.abs_errors.push_back(std::isnan(value)
                                  ? std::numeric_limits<double>::infinity()
                                  : std::abs(value - fx.target));
    }
    sc.max_abs_error = *std::max_element(sc.abs_errors.begin(), sc.abs_errors.end());
    sc.within_tolerance = sc.max_abs_error <= tolerance;

    sc.orderings_preserved = true;
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
      for (std::size_t j = i + 1; j < fixtures.size(); ++j) {
        if (fixtures[i].target == fixtures[j].target) continue;
        double vi = sc.values[i], vj = sc.values[j];
        if (std::isnan(vi) || std::isnan(vj) ||
            (fixtures[i].target < fixtures[j].target) != (vi < vj)) {
          sc.orderings_preserved = false;
        }
      }
    }
    scores.push_back(std::move(sc));
  }
  std::stable_sort(scores.begin(), scores.end(),
                   [](const SchemeScore& a, const SchemeScore& b) {
                     if (a.orderings_preserved != b.orderings_preserved)
                       return a.orderings_preserved;
                     if (a.max_abs_error != b.max_abs_error)
                       return a.max_abs_error < b.max_abs_error;
                     return a.scheme_id < b.scheme_id;
                   });
  return scores;
}

}  // namespace tcclab
