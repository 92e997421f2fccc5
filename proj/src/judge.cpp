#include "tcclab/judge.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "tcclab/bracket.hpp"

namespace tcclab {

SymbolSequence candidate_sequence(const Candidate& cand,
                                  const std::vector<EncodingScheme>& registry) {
  const EncodingScheme& scheme = scheme_by_id(cand.scheme, registry);
  try {
    if (std::holds_alternative<SearchTrace>(cand.payload))
      return encode(std::get<SearchTrace>(cand.payload), scheme);
    const SoPtr& so = std::get<SoPtr>(cand.payload);
    if (scheme.step_markers) {
      // a structure under a path scheme designates a goal; its root-to-goal
      // search path is what gets scored
      return encode(path_trace(so, goal_path(so)), scheme);
    }
    return encode_structure(so, scheme);
  } catch (const Error& e) {
    throw DomainError("candidate '" + cand.id + "': " + e.what());
  }
}

ComplexityReport score_candidate(const Candidate& cand,
                                 const std::vector<EncodingScheme>& registry) {
  SymbolSequence seq = candidate_sequence(cand, registry);
  try {
    return normalized_complexity(seq.symbols, LogBase::Two);
  } catch (const Error& e) {
    throw DomainError("candidate '" + cand.id + "': " + e.what());
  }
}

TCCVerdict compare(const std::vector<Candidate>& candidates, double tie_tolerance,
                   const std::vector<EncodingScheme>& registry) {
  if (candidates.size() < 2)
    throw ValidationError("compare: at least two candidates required");
  const std::string& family = candidates.front().scheme;
  for (const auto& c : candidates)
    if (c.scheme != family)
      throw ValidationError("compare: candidates use different scheme families ('" +
                            family + "' vs '" + c.scheme + "')");

  TCCVerdict verdict;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    ComplexityReport rep = score_candidate(c, registry);
    best = std::min(best, rep.normalized);
    verdict.reports.push_back({c.id, rep});
  }
  for (const auto& entry : verdict.reports)
    if (entry.report.normalized <= best + tie_tolerance)
      verdict.preferred.push_back(entry.id);
  verdict.tie = verdict.preferred.size() >= 2;
  return verdict;
}

CorpusReport evaluate_corpus(const std::vector<ContrastPair>& pairs,
                             const std::vector<EncodingScheme>& registry) {
  if (pairs.empty()) throw ValidationError("evaluate_corpus: empty corpus");
  CorpusReport report;
  for (const auto& pair : pairs) {
    if (pair.grammatical.id.empty() || pair.ungrammatical.id.empty())
      throw ValidationError("evaluate_corpus: malformed pair '" + pair.id + "'");
    TCCVerdict verdict = compare({pair.grammatical, pair.ungrammatical}, 1e-9,
                                 registry);
    PairOutcome out;
    out.id = pair.id;
    out.grammatical_value = verdict.reports[0].report.normalized;
    out.ungrammatical_value = verdict.reports[1].report.normalized;
    out.ordering_correct = verdict.preferred.size() == 1 &&
                           verdict.preferred.front() == pair.grammatical.id;
    out.error_grammatical =
        pair.expected_grammatical
            ? std::abs(out.grammatical_value - *pair.expected_grammatical)
            : std::nan("");
    out.error_ungrammatical =
        pair.expected_ungrammatical
            ? std::abs(out.ungrammatical_value - *pair.expected_ungrammatical)
            : std::nan("");
    if (out.ordering_correct) report.correct++;
    report.pairs.push_back(out);
  }
  report.all_correct = report.correct == report.pairs.size();
  return report;
}

std::vector<ContrastPair> load_corpus(const std::string& directory) {
  const std::string manifest_path = directory + "/corpus.json";
  std::ifstream in(manifest_path);
  if (!in) throw ValidationError("corpus manifest not found: " + manifest_path);
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("corpus manifest is not valid JSON: " +
                          std::string(e.what()));
  }
  if (!manifest.contains("pairs") || !manifest["pairs"].is_array() ||
      manifest["pairs"].empty())
    throw ValidationError("corpus manifest has no pairs");

  std::vector<ContrastPair> pairs;
  for (const auto& entry : manifest["pairs"]) {
    ContrastPair pair;
    try {
      pair.id = entry.at("id").get<std::string>();
      const std::string scheme = entry.at("scheme").get<std::string>();
      const std::string gram = entry.at("grammatical").get<std::string>();
      const std::string ungram = entry.at("ungrammatical").get<std::string>();
      pair.grammatical = {gram, parse_bracket_file(directory + "/" + gram),
                          scheme, true};
      pair.ungrammatical = {ungram, parse_bracket_file(directory + "/" + ungram),
                            scheme, false};
      if (entry.contains("expected")) {
        pair.expected_grammatical =
            entry["expected"].at("grammatical").get<double>();
        pair.expected_ungrammatical =
            entry["expected"].at("ungrammatical").get<double>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("corpus pair '" + pair.id +
                            "' is malformed: " + std::string(e.what()));
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace tcclab
