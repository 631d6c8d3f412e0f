#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bmmparse/grammar.hpp"

namespace bmmparse {

/// Token sequence to parse. Positions are 1-based; tokens are terminal
/// names resolved against a grammar at parse time.
class InputString {
 public:
  explicit InputString(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty()) throw std::invalid_argument("InputString: length must be >= 1");
  }

  std::size_t size() const { return tokens_.size(); }

  const std::string& token(std::size_t pos) const {
    if (pos < 1 || pos > tokens_.size()) throw std::out_of_range("InputString: position out of range");
    return tokens_[pos - 1];
  }

  const std::vector<std::string>& tokens() const { return tokens_; }

  friend bool operator==(const InputString& a, const InputString& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
};

struct ChartItem {
  std::string nonterminal;
  std::size_t i;
  std::size_t j;

  friend bool operator==(const ChartItem& a, const ChartItem& b) {
    return a.i == b.i && a.j == b.j && a.nonterminal == b.nonterminal;
  }
};

/// Set of (nonterminal, i, j) items over spans 1 <= i <= j <= n, with O(1)
/// membership. Nonterminals are re-indexed densely; the chart carries its
/// own name table so queries need no grammar. Immutable once built.
class Chart {
 public:
  Chart(std::size_t n, bool filtered, std::vector<std::string> nonterminal_names,
        std::size_t start_index)
      : n_(n),
        filtered_(filtered),
        names_(std::move(nonterminal_names)),
        start_(start_index),
        words_per_span_((names_.size() + 63) / 64),
        bits_(span_count(n) * words_per_span_, 0) {
    if (n == 0) throw std::invalid_argument("Chart: n must be >= 1");
    if (start_ >= names_.size()) throw std::invalid_argument("Chart: start index out of range");
    for (std::size_t id = 0; id < names_.size(); ++id) by_name_.emplace(names_[id], id);
  }

  std::size_t n() const { return n_; }
  bool filtered() const { return filtered_; }
  std::size_t nonterminal_count() const { return names_.size(); }
  const std::string& nonterminal_name(std::size_t id) const { return names_.at(id); }
  std::size_t start_index() const { return start_; }

  /// Dense index of the named nonterminal; throws for unknown names.
  std::size_t index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end())
      throw std::invalid_argument("chart: unknown nonterminal '" + name + "'");
    return it->second;
  }

  bool knows(const std::string& name) const { return by_name_.count(name) != 0; }

  void add(std::size_t nt, std::size_t i, std::size_t j) {
    bits_[word_index(nt, i, j)] |= bit_mask(nt);
  }

  bool contains(std::size_t nt, std::size_t i, std::size_t j) const {
    return (bits_[word_index(nt, i, j)] & bit_mask(nt)) != 0;
  }

  void check_span(std::size_t i, std::size_t j) const {
    if (i < 1 || i > j || j > n_) throw std::out_of_range("chart: span out of range");
  }

  /// Direct view of one span's nonterminal bitset (words_per_span words).
  const std::uint64_t* span_words(std::size_t i, std::size_t j) const {
    return bits_.data() + span_offset(i, j) * words_per_span_;
  }
  std::uint64_t* span_words(std::size_t i, std::size_t j) {
    return bits_.data() + span_offset(i, j) * words_per_span_;
  }
  std::size_t words_per_span() const { return words_per_span_; }

  std::size_t item_count() const {
    std::size_t total = 0;
    for (std::uint64_t w : bits_) total += static_cast<std::size_t>(__builtin_popcountll(w));
    return total;
  }

  /// All items sorted by (i, j, name), the order used by the dump format.
  std::vector<ChartItem> items_sorted() const {
    std::vector<ChartItem> out;
    for (std::size_t i = 1; i <= n_; ++i) {
      for (std::size_t j = i; j <= n_; ++j) {
        std::vector<std::size_t> here;
        for (std::size_t nt = 0; nt < names_.size(); ++nt) {
          if (contains(nt, i, j)) here.push_back(nt);
        }
        std::sort(here.begin(), here.end(), [&](std::size_t a, std::size_t b) {
          return names_[a] < names_[b];
        });
        for (std::size_t nt : here) out.push_back({names_[nt], i, j});
      }
    }
    return out;
  }

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.n_ == b.n_ && a.filtered_ == b.filtered_ && a.names_ == b.names_ &&
           a.start_ == b.start_ && a.bits_ == b.bits_;
  }

 private:
  static std::size_t span_count(std::size_t n) { return n * (n + 1) / 2; }

  // spans enumerated row-major: (1,1)..(1,n), (2,2)..(2,n), ...
  std::size_t span_offset(std::size_t i, std::size_t j) const {
    check_span(i, j);
    const std::size_t row_start = (i - 1) * n_ - (i - 1) * (i - 2) / 2;
    return row_start + (j - i);
  }

  std::size_t word_index(std::size_t nt, std::size_t i, std::size_t j) const {
    if (nt >= names_.size()) throw std::out_of_range("chart: nonterminal index out of range");
    return span_offset(i, j) * words_per_span_ + nt / 64;
  }

  static std::uint64_t bit_mask(std::size_t nt) { return std::uint64_t{1} << (nt % 64); }

  std::size_t n_;
  bool filtered_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::size_t start_;
  std::size_t words_per_span_;
  std::vector<std::uint64_t> bits_;
};

/// F_{G,w}(a, i, j): true iff the chart holds (a, i, j). Unknown
/// nonterminals and malformed spans raise instead of answering "no".
inline bool oracle_query(const Chart& c, const std::string& nonterminal, std::size_t i,
                         std::size_t j) {
  c.check_span(i, j);
  return c.contains(c.index_of(nonterminal), i, j);
}

/// True iff the start symbol spans the whole string.
inline bool recognizes(const Chart& c) { return c.contains(c.start_index(), 1, c.n()); }

}  // namespace bmmparse
