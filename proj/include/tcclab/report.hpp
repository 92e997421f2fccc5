#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tcclab/encoding.hpp"
#include "tcclab/enumerate.hpp"
#include "tcclab/fep.hpp"
#include "tcclab/judge.hpp"
#include "tcclab/lz.hpp"
#include "tcclab/syntax.hpp"

namespace tcclab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Rounds to 12 significant digits so serialized values are stable.
double fmt12(double v);

/// Two-decimal display string matching reported values.
std::string display2(double v);

/// FNV-1a 64 hex digest.
std::string fnv1a_hex(const std::string& bytes);

Json scheme_to_json(const EncodingScheme& scheme);
EncodingScheme scheme_from_json(const Json& j);
Json registry_to_json(const std::vector<EncodingScheme>& registry);
std::vector<EncodingScheme> registry_from_json(const Json& j);

/// The active registry: default, or the file named by TCCLAB_SCHEME_MANIFEST.
std::vector<EncodingScheme> active_registry();
/// Hash of the active registry's serialized manifest.
std::string registry_hash(const std::vector<EncodingScheme>& registry);

Json to_json(const ComplexityReport& rep);
Json to_json(const SymbolSequence& seq);
Json to_json(const TCCVerdict& verdict);
Json to_json(const CorpusReport& report);
Json to_json(const EnumerationResult& result);
Json term_to_json(const SoPtr& so);

/// Wraps a payload in the reproducible run envelope (command echo, inputs,
/// version, scheme manifest hash).
Json run_report(const std::string& command, const std::vector<std::string>& inputs,
                Json payload, const std::vector<EncodingScheme>& registry);

}  // namespace tcclab
