#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tcclab/encoding.hpp"
#include "tcclab/lz.hpp"
#include "tcclab/search.hpp"
#include "tcclab/syntax.hpp"

namespace tcclab {

struct Candidate {
  std::string id;
  std::variant<SoPtr, SearchTrace> payload;
  std::string scheme;  // encoding scheme id
  std::optional<bool> gold_grammatical;  // fixture metadata; never scored
};

struct TCCVerdict {
  struct Entry {
    std::string id;
    ComplexityReport report;
  };
  std::vector<Entry> reports;        // in candidate order
  std::vector<std::string> preferred;  // argmin within tie tolerance
  bool tie = false;                  // at least two candidates preferred
};

/// The symbol sequence a candidate is judged on. Structure payloads under a
/// step-marker scheme are reduced to their designated goal trace first
/// (movement path or +Goal head); other structures are enumerated whole.
SymbolSequence candidate_sequence(const Candidate& cand,
                                  const std::vector<EncodingScheme>& registry
                                  = default_registry());

/// Encodes a candidate and scores it with base-two normalized complexity.
ComplexityReport score_candidate(const Candidate& cand,
                                 const std::vector<EncodingScheme>& registry
                                 = default_registry());

/// Lower normalized complexity wins; all candidates within tie_tolerance of
/// the minimum are preferred, a tie is flagged when that set has >= 2
/// members. Candidates must share a scheme family (identical scheme id).
TCCVerdict compare(const std::vector<Candidate>& candidates,
                   double tie_tolerance = 1e-9,
                   const std::vector<EncodingScheme>& registry = default_registry());

struct ContrastPair {
  std::string id;
  Candidate grammatical;
  Candidate ungrammatical;
  std::optional<double> expected_grammatical;    // reported value, when known
  std::optional<double> expected_ungrammatical;
};

struct PairOutcome {
  std::string id;
  double grammatical_value = 0.0;
  double ungrammatical_value = 0.0;
  bool ordering_correct = false;  // grammatical member strictly preferred
  double error_grammatical = 0.0;    // |value - expected|, NaN when no target
  double error_ungrammatical = 0.0;
};

struct CorpusReport {
  std::vector<PairOutcome> pairs;
  std::size_t correct = 0;
  bool all_correct = false;
};

/// Judges every contrast pair blind to the gold labels and reports the
/// per-pair values and aggregate accuracy.
CorpusReport evaluate_corpus(const std::vector<ContrastPair>& pairs,
                             const std::vector<EncodingScheme>& registry
                             = default_registry());

/// Loads a corpus manifest (JSON) plus its .sbt fixtures from a directory.
std::vector<ContrastPair> load_corpus(const std::string& directory);

}  // namespace tcclab
