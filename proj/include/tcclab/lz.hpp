#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tcclab/errors.hpp"

namespace tcclab {

enum class LogBase { Two, Alphabet };

struct ComplexityReport {
  std::size_t length = 0;        // n
  std::size_t phrase_count = 0;  // c(n)
  std::uint32_t alphabet_size = 0;
  LogBase log_base = LogBase::Two;
  double normalized = 0.0;  // c(n) * log_b(n) / n
};

/// Exhaustive-history LZ76 production count: scanning left to right, a phrase
/// grows while it occurs as a substring of the text ending one symbol before
/// the phrase's end (self-overlap allowed); the first non-reproducible
/// extension closes the phrase. The final, possibly still reproducible,
/// phrase counts as one. Throws DomainError on an empty sequence.
std::size_t lz76_phrase_count(std::span<const std::uint32_t> seq);

/// Kaspar-Schuster normalization c(n) * log_b(n) / n. Requires n >= 2; with
/// LogBase::Alphabet the alphabet must have at least 2 symbols.
ComplexityReport normalized_complexity(std::span<const std::uint32_t> seq,
                                       LogBase base = LogBase::Two);

/// Empirical symbol-frequency entropy in bits per symbol.
double shannon_entropy(std::span<const std::uint32_t> seq);

/// Number of distinct symbols.
std::uint32_t alphabet_size(std::span<const std::uint32_t> seq);

}  // namespace tcclab
