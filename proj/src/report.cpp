#include "tcclab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace tcclab {

double fmt12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string display2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string symbol_map_name(SymbolMap m) {
  switch (m) {
    case SymbolMap::CategoryIdentity: return "category-identity";
    case SymbolMap::FreshPerStep: return "fresh-per-step";
    case SymbolMap::FreshPerType: return "fresh-per-type";
  }
  return "";
}

SymbolMap symbol_map_from(const std::string& s) {
  if (s == "category-identity") return SymbolMap::CategoryIdentity;
  if (s == "fresh-per-step") return SymbolMap::FreshPerStep;
  if (s == "fresh-per-type") return SymbolMap::FreshPerType;
  throw ValidationError("unknown symbol map: " + s);
}

}  // namespace

Json scheme_to_json(const EncodingScheme& s) {
  Json node_classes = Json::array();
  if (s.labels) node_classes.push_back("labels");
  if (s.terminals) node_classes.push_back("terminals");
  if (s.step_markers) node_classes.push_back("step-markers");
  return Json{{"id", s.id},
              {"node_classes", node_classes},
              {"symbol_map", symbol_map_name(s.symbol_map)},
              {"boundary_markers", s.boundary_markers}};
}

EncodingScheme scheme_from_json(const Json& j) {
  EncodingScheme s;
  s.id = j.at("id").get<std::string>();
  for (const auto& c : j.at("node_classes")) {
    std::string name = c.get<std::string>();
    if (name == "labels") s.labels = true;
    else if (name == "terminals") s.terminals = true;
    else if (name == "step-markers") s.step_markers = true;
    else throw ValidationError("unknown node class: " + name);
  }
  s.symbol_map = symbol_map_from(j.at("symbol_map").get<std::string>());
  s.boundary_markers = j.value("boundary_markers", false);
  if (!s.labels && !s.terminals && !s.step_markers)
    throw ValidationError("scheme '" + s.id + "' selects no node class");
  return s;
}

Json registry_to_json(const std::vector<EncodingScheme>& registry) {
  Json arr = Json::array();
  for (const auto& s : registry) arr.push_back(scheme_to_json(s));
  return Json{{"version", kToolVersion}, {"schemes", arr}};
}

std::vector<EncodingScheme> registry_from_json(const Json& j) {
  std::vector<EncodingScheme> out;
  for (const auto& s : j.at("schemes")) out.push_back(scheme_from_json(s));
  if (out.empty()) throw ValidationError("scheme manifest is empty");
  return out;
}

std::vector<EncodingScheme> active_registry() {
  const char* override_path = std::getenv("TCCLAB_SCHEME_MANIFEST");
  if (!override_path || !*override_path) return default_registry();
  std::ifstream in(override_path);
  if (!in)
    throw ValidationError(std::string("TCCLAB_SCHEME_MANIFEST not readable: ") +
                          override_path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("scheme manifest is not valid JSON: " +
                          std::string(e.what()));
  }
  return registry_from_json(j);
}

std::string registry_hash(const std::vector<EncodingScheme>& registry) {
  return fnv1a_hex(registry_to_json(registry).dump());
}

Json to_json(const ComplexityReport& rep) {
  return Json{{"length", rep.length},
              {"phrase_count", rep.phrase_count},
              {"alphabet_size", rep.alphabet_size},
              {"log_base", rep.log_base == LogBase::Two ? "two" : "alphabet"},
              {"normalized", fmt12(rep.normalized)},
              {"display", display2(rep.normalized)}};
}

Json to_json(const SymbolSequence& seq) {
  return Json{{"symbols", seq.symbols},
              {"alphabet_size", seq.alphabet_size},
              {"scheme", seq.scheme},
              {"legend", seq.legend}};
}

Json to_json(const TCCVerdict& verdict) {
  Json reports = Json::array();
  for (const auto& e : verdict.reports)
    reports.push_back(Json{{"id", e.id}, {"report", to_json(e.report)}});
  return Json{{"reports", reports},
              {"preferred", verdict.preferred},
              {"tie", verdict.tie}};
}

Json to_json(const CorpusReport& report) {
  Json rows = Json::array();
  for (const auto& p : report.pairs) {
    Json row{{"pair", p.id},
             {"grammatical", fmt12(p.grammatical_value)},
             {"grammatical_display", display2(p.grammatical_value)},
             {"ungrammatical", fmt12(p.ungrammatical_value)},
             {"ungrammatical_display", display2(p.ungrammatical_value)},
             {"ordering_correct", p.ordering_correct}};
    if (!std::isnan(p.error_grammatical)) {
      row["error_grammatical"] = fmt12(p.error_grammatical);
      row["error_ungrammatical"] = fmt12(p.error_ungrammatical);
    }
    rows.push_back(row);
  }
  return Json{{"pairs", rows},
              {"correct", report.correct},
              {"total", report.pairs.size()},
              {"all_correct", report.all_correct}};
}

Json to_json(const EnumerationResult& result) {
  return Json{{"per_step_sets", result.per_step},
              {"workspaces_per_step", result.workspaces_per_step},
              {"total_sets", result.total_sets},
              {"wall_seconds", fmt12(result.wall_seconds)},
              {"partial", result.partial}};
}

Json term_to_json(const SoPtr& so) {
  Json j;
  if (so->is_leaf()) {
    const auto& item = so->item();
    j["kind"] = "leaf";
    j["phon"] = item.phon;
    if (item.category) j["category"] = *item.category;
    Json feats = Json::array();
    for (const auto& f : item.features.items())
      feats.push_back((f.polarity == Polarity::Plus ? "+" : "-") + f.name);
    j["features"] = feats;
  } else {
    j["kind"] = "node";
    if (so->label()) j["label"] = so->label()->category;
    j["left"] = term_to_json(so->left());
    j["right"] = term_to_json(so->right());
  }
  if (so->chain()) {
    j["chain"] = *so->chain();
    j["lower_copy"] = so->is_lower_copy();
  }
  return j;
}

Json run_report(const std::string& command, const std::vector<std::string>& inputs,
                Json payload, const std::vector<EncodingScheme>& registry) {
  return Json{{"tool", "tcclab"},
              {"version", kToolVersion},
              {"command", command},
              {"inputs", inputs},
              {"scheme_manifest_hash", registry_hash(registry)},
              {"result", std::move(payload)}};
}

}  // namespace tcclab
