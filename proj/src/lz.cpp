#include "tcclab/lz.hpp"

#include <cmath>
#include <map>
#include <unordered_set>

namespace tcclab {

namespace {

// Suffix automaton over the whole sequence with, per state, the minimal end
// position over all occurrences of the state's strings. A phrase starting at
// `pos` matched to length k reaches the state of S[pos..pos+k-1]; that string
// occurs in the prefix S[0..pos+k-2] iff some occurrence ends at or before
// pos+k-2, i.e. iff min_end(state) <= pos+k-2.
class SuffixAutomaton {
 public:
  explicit SuffixAutomaton(std::span<const std::uint32_t> s) {
    states_.reserve(2 * s.size() + 4);
    states_.push_back({-1, 0, -1, {}});
    int last = 0;
    for (std::size_t i = 0; i < s.size(); ++i) last = extend(last, s[i], i);
    compute_min_end();
  }

  int root() const { return 0; }

  int step(int state, std::uint32_t symbol) const {
    const auto& next = states_[state].next;
    auto it = next.find(symbol);
    return it == next.end() ? -1 : it->second;
  }

  long long min_end(int state) const { return states_[state].min_end; }

 private:
  struct State {
    int link;
    int len;
    long long min_end;  // minimal end position of any occurrence; -1 = unset
    std::map<std::uint32_t, int> next;
  };

  int extend(int last, std::uint32_t c, std::size_t pos) {
    int cur = static_cast<int>(states_.size());
    states_.push_back({-1, states_[last].len + 1, static_cast<long long>(pos), {}});
    int p = last;
    while (p != -1 && !states_[p].next.count(c)) {
      states_[p].next[c] = cur;
      p = states_[p].link;
    }
    if (p == -1) {
      states_[cur].link = 0;
    } else {
      int q = states_[p].next[c];
      if (states_[p].len + 1 == states_[q].len) {
        states_[cur].link = q;
      } else {
        int clone = static_cast<int>(states_.size());
        State qcopy = states_[q];
        states_.push_back(std::move(qcopy));
        states_[clone].len = states_[p].len + 1;
        while (p != -1 && states_[p].next[c] == q) {
          states_[p].next[c] = clone;
          p = states_[p].link;
        }
        states_[q].link = clone;
        states_[cur].link = clone;
      }
    }
    return cur;
  }

  // min_end(v) = min over the endpos set of v: propagate each state's own
  // first position up the suffix-link tree (children have larger len, so a
  // simple descending-len pass suffices; counting sort by len).
  void compute_min_end() {
    std::size_t n = states_.size();
    int max_len = 0;
    for (const auto& st : states_) max_len = std::max(max_len, st.len);
    std::vector<int> cnt(max_len + 2, 0);
    for (const auto& st : states_) cnt[st.len]++;
    for (int i = 1; i <= max_len; ++i) cnt[i] += cnt[i - 1];
    std::vector<int> order(n);
    for (std::size_t v = 0; v < n; ++v) order[--cnt[states_[v].len]] = static_cast<int>(v);
    for (std::size_t i = n; i-- > 1;) {
      int v = order[i];
      int parent = states_[v].link;
      if (parent < 0) continue;
      long long me = states_[v].min_end;
      if (me >= 0 &&
          (states_[parent].min_end < 0 || me < states_[parent].min_end))
        states_[parent].min_end = me;
    }
  }

  std::vector<State> states_;
};

}  // namespace

std::size_t lz76_phrase_count(std::span<const std::uint32_t> seq) {
  if (seq.empty()) throw DomainError("lz76_phrase_count: empty sequence");
  const std::size_t n = seq.size();
  SuffixAutomaton sam(seq);

  std::size_t count = 0;
  std::size_t pos = 0;
  while (pos < n) {
    int state = sam.root();
    std::size_t k = 1;
    for (;; ++k) {
      if (pos + k - 1 >= n) {
        // ran off the end while still reproducible: final partial phrase
        ++count;
        return count;
      }
      state = sam.step(state, seq[pos + k - 1]);
      // reproducible iff an occurrence ends before the phrase's last symbol
      if (state < 0 || sam.min_end(state) > static_cast<long long>(pos + k) - 2)
        break;
    }
    ++count;
    pos += k;
  }
  return count;
}

std::uint32_t alphabet_size(std::span<const std::uint32_t> seq) {
  std::unordered_set<std::uint32_t> distinct(seq.begin(), seq.end());
  return static_cast<std::uint32_t>(distinct.size());
}

ComplexityReport normalized_complexity(std::span<const std::uint32_t> seq,
                                       LogBase base) {
  if (seq.size() < 2)
    throw DomainError("normalized_complexity: sequence shorter than 2");
  ComplexityReport rep;
  rep.length = seq.size();
  rep.phrase_count = lz76_phrase_count(seq);
  rep.alphabet_size = alphabet_size(seq);
  rep.log_base = base;
  double logn;
  if (base == LogBase::Two) {
    logn = std::log2(static_cast<double>(rep.length));
  } else {
    if (rep.alphabet_size < 2)
      throw DomainError("normalized_complexity: alphabet log base is "
                        "degenerate for a single-symbol alphabet");
    logn = std::log(static_cast<double>(rep.length)) /
           std::log(static_cast<double>(rep.alphabet_size));
  }
  rep.normalized = static_cast<double>(rep.phrase_count) * logn /
                   static_cast<double>(rep.length);
  return rep;
}

double shannon_entropy(std::span<const std::uint32_t> seq) {
  if (seq.empty()) throw DomainError("shannon_entropy: empty sequence");
  std::map<std::uint32_t, std::size_t> freq;
  for (auto s : seq) freq[s]++;
  double h = 0.0;
  const double n = static_cast<double>(seq.size());
  for (const auto& [sym, cnt] : freq) {
    double p = static_cast<double>(cnt) / n;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace tcclab
