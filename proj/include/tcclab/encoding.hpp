#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tcclab/lz.hpp"
#include "tcclab/search.hpp"
#include "tcclab/syntax.hpp"

namespace tcclab {

enum class SymbolMap {
  CategoryIdentity,  // intern descriptors by symbol text, first appearance
  FreshPerStep,      // every token gets a fresh symbol
  FreshPerType       // one symbol per descriptor kind
};

struct EncodingScheme {
  std::string id;
  bool labels = false;
  bool terminals = false;
  bool step_markers = false;  // encode transitions between visits, not visits
  SymbolMap symbol_map = SymbolMap::CategoryIdentity;
  bool boundary_markers = false;
};

struct SymbolSequence {
  std::vector<std::uint32_t> symbols;
  std::uint32_t alphabet_size = 0;  // distinct symbols actually used
  std::string scheme;
  std::string provenance;
  /// Human-readable legend: symbol -> descriptor text (interning order).
  std::vector<std::string> legend;
};

/// Deterministic flattening of a trace under a scheme. Symbols are interned
/// in first-appearance order (symbol i appears before symbol i+1). Throws
/// DomainError when nothing remains to encode.
SymbolSequence encode(const SearchTrace& trace, const EncodingScheme& scheme);

/// node_enumeration followed by encode. The enumeration mode follows the
/// scheme: terminals selected -> labels-and-terminals; boundary markers
/// selected -> phrase-labels; otherwise labels-only.
SymbolSequence encode_structure(const SoPtr& so, const EncodingScheme& scheme);

/// The shipped scheme registry: labels+terminals, phrase-labels and
/// path-steps, each with and without boundary markers.
const std::vector<EncodingScheme>& default_registry();

/// Registry lookup by id; throws ValidationError for unknown ids.
const EncodingScheme& scheme_by_id(const std::string& id,
                                   const std::vector<EncodingScheme>& registry
                                   = default_registry());

struct CalibrationFixture {
  std::string id;
  std::variant<SoPtr, SearchTrace> payload;
  double target = 0.0;  // the reported value this fixture should reproduce
};

struct SchemeScore {
  std::string scheme_id;
  bool orderings_preserved = false;
  double max_abs_error = 0.0;
  bool within_tolerance = false;
  std::vector<double> values;             // per fixture, NaN when unencodable
  std::vector<double> abs_errors;         // per fixture
};

/// Scores every scheme against the fixture targets: per-fixture normalized
/// complexity (base two), max absolute error, and whether every pair of
/// fixtures with distinct targets is ordered the same way by the computed
/// values. Ranked by (orderings preserved, max error, scheme id).
std::vector<SchemeScore> calibrate(const std::vector<CalibrationFixture>& fixtures,
                                   const std::vector<EncodingScheme>& schemes,
                                   double tolerance);

}  // namespace tcclab
