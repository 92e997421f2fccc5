#include <algorithm>
#include <random>

#include "doctest.h"
#include "tcclab/lz.hpp"
#include "test_util.hpp"

using namespace tcclab;
using testutil::lz76_oracle;

namespace {

std::vector<std::uint32_t> digits(const std::string& s) {
  std::vector<std::uint32_t> out;
  for (char c : s) out.push_back(static_cast<std::uint32_t>(c - '0'));
  return out;
}

}  // namespace

TEST_SUITE("lz76") {

TEST_CASE("exhaustive-history production count on known strings") {
  // 0.001.10.100.1000.101
  CHECK(lz76_phrase_count(digits("0001101001000101")) == 6);
  CHECK(lz76_phrase_count(digits("0000")) == 2);
  std::vector<std::uint32_t> abcd{10, 11, 12, 13};
  CHECK(lz76_phrase_count(abcd) == 4);
  std::vector<std::uint32_t> one{7};
  CHECK(lz76_phrase_count(one) == 1);
}

TEST_CASE("empty sequence is an error") {
  std::vector<std::uint32_t> empty;
  CHECK_THROWS_AS(lz76_phrase_count(empty), DomainError);
  CHECK_THROWS_AS(shannon_entropy(empty), DomainError);
}

TEST_CASE("matches the definition-level oracle exhaustively (length <= 10)") {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
      std::vector<std::uint32_t> s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> i) & 1;
      REQUIRE(lz76_phrase_count(s) == lz76_oracle(s));
    }
  }
}

TEST_CASE("matches the oracle on random ternary strings") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint32_t> sym(0, 2);
  std::uniform_int_distribution<std::size_t> len(1, 60);
  for (int t = 0; t < 300; ++t) {
    std::vector<std::uint32_t> s(len(rng));
    for (auto& x : s) x = sym(rng);
    REQUIRE(lz76_phrase_count(s) == lz76_oracle(s));
  }
}

TEST_CASE("bounds and constant/distinct extremes") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint32_t> sym(0, 1);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::uint32_t> s(1 + (rng() % 64));
    for (auto& x : s) x = sym(rng);
    std::size_t c = lz76_phrase_count(s);
    CHECK(c >= 1);
    CHECK(c <= s.size());
  }
  for (std::size_t n = 2; n <= 40; ++n) {
    std::vector<std::uint32_t> constant(n, 3);
    CHECK(lz76_phrase_count(constant) == 2);
    std::vector<std::uint32_t> distinct(n);
    for (std::size_t i = 0; i < n; ++i) distinct[i] = static_cast<std::uint32_t>(i);
    CHECK(lz76_phrase_count(distinct) == n);
  }
}

TEST_CASE("subadditivity over concatenation") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::uint32_t> sym(0, 3);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::uint32_t> s(1 + (rng() % 40)), u(1 + (rng() % 40));
    for (auto& x : s) x = sym(rng);
    for (auto& x : u) x = sym(rng);
    std::vector<std::uint32_t> su = s;
    su.insert(su.end(), u.begin(), u.end());
    CHECK(lz76_phrase_count(su) <= lz76_phrase_count(s) + lz76_phrase_count(u));
  }
}

TEST_CASE("phrase count is invariant under symbol permutation") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::uint32_t> sym(0, 4);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::uint32_t> s(2 + (rng() % 50));
    for (auto& x : s) x = sym(rng);
    std::vector<std::uint32_t> perm{0, 1, 2, 3, 4};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::uint32_t> relabeled(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) relabeled[i] = perm[s[i]];
    CHECK(lz76_phrase_count(s) == lz76_phrase_count(relabeled));
  }
}

TEST_CASE("normalization values") {
  std::vector<std::uint32_t> four{0, 1, 2, 3};
  auto rep4 = normalized_complexity(four, LogBase::Two);
  CHECK(rep4.normalized == doctest::Approx(2.0).epsilon(1e-12));

  std::vector<std::uint32_t> three{0, 1, 2};
  auto rep3 = normalized_complexity(three, LogBase::Two);
  CHECK(rep3.normalized == doctest::Approx(1.5849625007).epsilon(1e-9));

  auto repc = normalized_complexity(digits("0000"), LogBase::Two);
  CHECK(repc.phrase_count == 2);
  CHECK(repc.normalized == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalization error paths") {
  std::vector<std::uint32_t> one{0};
  CHECK_THROWS_AS(normalized_complexity(one, LogBase::Two), DomainError);
  std::vector<std::uint32_t> constant{5, 5, 5};
  CHECK_THROWS_AS(normalized_complexity(constant, LogBase::Alphabet), DomainError);
  CHECK_NOTHROW(normalized_complexity(constant, LogBase::Two));
  // alphabet base on a genuine 2-symbol sequence
  auto rep = normalized_complexity(digits("0101"), LogBase::Alphabet);
  CHECK(rep.alphabet_size == 2);
}

TEST_CASE("shannon entropy") {
  std::vector<std::uint32_t> constant{1, 1, 1, 1};
  CHECK(shannon_entropy(constant) == doctest::Approx(0.0));
  CHECK(shannon_entropy(digits("0101")) == doctest::Approx(1.0));
  // frequency count for this string: 10 zeros, 6 ones
  CHECK(shannon_entropy(digits("0001101001000101")) ==
        doctest::Approx(0.9544340029).epsilon(1e-9));
}

TEST_CASE("random binary normalized complexity approaches 1") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::uint32_t> sym(0, 1);
  std::vector<std::uint32_t> s(20000);
  for (auto& x : s) x = sym(rng);
  auto rep = normalized_complexity(s, LogBase::Two);
  CHECK(rep.normalized > 0.9);
  CHECK(rep.normalized < 1.2);
}

}  // TEST_SUITE
