#pragma once

// Independent derivation oracles for testing the chart parsers. Everything
// here works by explicit sentential-form search or recursive splitting; no
// code is shared with the span-indexed parsers under test.

#include <cstddef>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "bmmparse/chart.hpp"
#include "bmmparse/grammar.hpp"

namespace test_support {

using bmmparse::Grammar;
using bmmparse::InputString;
using bmmparse::SymbolId;

using Form = std::vector<SymbolId>;
using ItemSet = std::set<std::tuple<std::string, std::size_t, std::size_t>>;

/// All terminal strings of length <= max_len derivable from `from`,
/// enumerated by breadth-first leftmost expansion (every terminal string has
/// a leftmost derivation; epsilon-freeness makes lengths non-decreasing).
inline std::set<Form> enumerate_strings(const Grammar& g, SymbolId from, std::size_t max_len) {
  std::set<Form> visited, results;
  std::deque<Form> queue;
  visited.insert({from});
  queue.push_back({from});
  while (!queue.empty()) {
    const Form form = queue.front();
    queue.pop_front();
    std::size_t pos = form.size();
    for (std::size_t k = 0; k < form.size(); ++k) {
      if (g.is_nonterminal(form[k])) {
        pos = k;
        break;
      }
    }
    if (pos == form.size()) {
      results.insert(form);
      continue;
    }
    for (const auto& p : g.productions()) {
      if (p.lhs != form[pos]) continue;
      Form next;
      next.reserve(form.size() - 1 + p.rhs.size());
      next.insert(next.end(), form.begin(), form.begin() + static_cast<std::ptrdiff_t>(pos));
      next.insert(next.end(), p.rhs.begin(), p.rhs.end());
      next.insert(next.end(), form.begin() + static_cast<std::ptrdiff_t>(pos) + 1, form.end());
      if (next.size() > max_len) continue;
      if (visited.insert(next).second) queue.push_back(next);
    }
  }
  return results;
}

/// All sentential forms of length <= max_len reachable from the start
/// symbol, expanding every nonterminal position (needed for forms that keep
/// a nonterminal while symbols to its right are rewritten).
inline std::set<Form> enumerate_forms(const Grammar& g, std::size_t max_len,
                                      std::size_t cap = 2000000) {
  std::set<Form> visited;
  std::deque<Form> queue;
  visited.insert({g.start()});
  queue.push_back({g.start()});
  while (!queue.empty()) {
    const Form form = queue.front();
    queue.pop_front();
    for (std::size_t pos = 0; pos < form.size(); ++pos) {
      if (!g.is_nonterminal(form[pos])) continue;
      for (const auto& p : g.productions()) {
        if (p.lhs != form[pos]) continue;
        Form next;
        next.reserve(form.size() - 1 + p.rhs.size());
        next.insert(next.end(), form.begin(), form.begin() + static_cast<std::ptrdiff_t>(pos));
        next.insert(next.end(), p.rhs.begin(), p.rhs.end());
        next.insert(next.end(), form.begin() + static_cast<std::ptrdiff_t>(pos) + 1, form.end());
        if (next.size() > max_len) continue;
        if (visited.insert(next).second) {
          if (visited.size() > cap)
            throw std::runtime_error("enumerate_forms: search space exceeded the cap");
          queue.push_back(next);
        }
      }
    }
  }
  return visited;
}

inline std::vector<SymbolId> token_ids(const Grammar& g, const InputString& w) {
  std::vector<SymbolId> toks;
  for (const auto& t : w.tokens()) {
    const SymbolId id = g.find(t);
    if (id == bmmparse::kNoSymbol)
      throw std::invalid_argument("token_ids: token not in grammar: " + t);
    toks.push_back(id);
  }
  return toks;
}

/// Raw-chart semantics by enumeration: (A, i, j) iff A derives w_i^j.
inline ItemSet brute_raw_items(const Grammar& g, const InputString& w) {
  const auto toks = token_ids(g, w);
  const std::size_t n = toks.size();
  ItemSet out;
  for (SymbolId a = 0; a < g.symbol_count(); ++a) {
    if (!g.is_nonterminal(a)) continue;
    const auto strings = enumerate_strings(g, a, n);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i; j <= n; ++j) {
        const Form segment(toks.begin() + static_cast<std::ptrdiff_t>(i) - 1,
                           toks.begin() + static_cast<std::ptrdiff_t>(j));
        if (strings.count(segment)) out.insert({g.name(a), i, j});
      }
    }
  }
  return out;
}

/// Filtered-chart semantics by enumeration: (A, i, j) iff A derives w_i^j
/// and the start symbol derives w_1^{i-1} A w_{j+1}^n.
inline ItemSet brute_filtered_items(const Grammar& g, const InputString& w) {
  const auto toks = token_ids(g, w);
  const std::size_t n = toks.size();
  const ItemSet raw = brute_raw_items(g, w);
  const auto forms = enumerate_forms(g, n);
  ItemSet out;
  for (const auto& [name, i, j] : raw) {
    Form context;
    context.insert(context.end(), toks.begin(), toks.begin() + static_cast<std::ptrdiff_t>(i) - 1);
    context.push_back(g.find(name));
    context.insert(context.end(), toks.begin() + static_cast<std::ptrdiff_t>(j), toks.end());
    if (forms.count(context)) out.insert({name, i, j});
  }
  return out;
}

inline ItemSet chart_items(const bmmparse::Chart& c) {
  ItemSet out;
  for (const auto& item : c.items_sorted()) out.insert({item.nonterminal, item.i, item.j});
  return out;
}

namespace brute_detail {
inline bool derives(const Grammar& g, const std::vector<SymbolId>& toks, SymbolId sym,
                    std::size_t i, std::size_t j, int depth);

// rhs[idx..] covers positions i..j
inline bool segment_match(const Grammar& g, const std::vector<SymbolId>& toks,
                          const std::vector<SymbolId>& rhs, std::size_t idx, std::size_t i,
                          std::size_t j, int depth) {
  if (idx + 1 == rhs.size()) return derives(g, toks, rhs[idx], i, j, depth);
  const std::size_t rest = rhs.size() - idx - 1;  // later symbols need >= 1 token each
  for (std::size_t k = i; k + rest <= j; ++k) {
    if (derives(g, toks, rhs[idx], i, k, depth) &&
        segment_match(g, toks, rhs, idx + 1, k + 1, j, depth))
      return true;
  }
  return false;
}

inline bool derives(const Grammar& g, const std::vector<SymbolId>& toks, SymbolId sym,
                    std::size_t i, std::size_t j, int depth) {
  if (depth == 0) throw std::runtime_error("brute_derives: recursion depth exceeded");
  if (g.is_terminal(sym)) return i == j && toks[i - 1] == sym;
  for (const auto& p : g.productions()) {
    if (p.lhs != sym) continue;
    if (segment_match(g, toks, p.rhs, 0, i, j, depth - 1)) return true;
  }
  return false;
}
}  // namespace brute_detail

/// Recursive split search: does `nonterminal` derive w_i^j? No memoization,
/// no chart; exponential, for spot checks on structured grammars without
/// unit cycles (the depth guard trips on those).
inline bool brute_derives(const Grammar& g, const InputString& w, const std::string& nonterminal,
                          std::size_t i, std::size_t j, int depth = 64) {
  const auto toks = token_ids(g, w);
  const SymbolId sym = g.find(nonterminal);
  if (sym == bmmparse::kNoSymbol)
    throw std::invalid_argument("brute_derives: unknown nonterminal " + nonterminal);
  return brute_detail::derives(g, toks, sym, i, j, depth);
}

/// Small random grammar (<= 3 nonterminals, <= 3 terminals, <= 6 productions,
/// rhs length 1..3) plus a string of 1..6 of its terminals.
struct RandomCase {
  Grammar g;
  InputString w;
};

inline RandomCase make_random_case(std::mt19937_64& rng) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  static const char* nt_names[] = {"S", "A", "B"};
  static const char* t_names[] = {"a", "b", "c"};
  const std::size_t n_nts = 1 + pick(3);
  const std::size_t n_terms = 1 + pick(3);
  Grammar g;
  std::vector<SymbolId> nts, ts;
  for (std::size_t k = 0; k < n_nts; ++k) nts.push_back(g.add_nonterminal(nt_names[k]));
  for (std::size_t k = 0; k < n_terms; ++k) ts.push_back(g.add_terminal(t_names[k]));
  g.set_start(nts[0]);
  const std::size_t n_prods = 1 + pick(6);
  for (std::size_t k = 0; k < n_prods; ++k) {
    const SymbolId lhs = nts[pick(n_nts)];
    const std::size_t len = 1 + pick(3);
    std::vector<SymbolId> rhs;
    for (std::size_t t = 0; t < len; ++t) {
      const std::size_t idx = pick(n_nts + n_terms);
      rhs.push_back(idx < n_nts ? nts[idx] : ts[idx - n_nts]);
    }
    g.add_production(lhs, std::move(rhs));
  }
  const std::size_t len = 1 + pick(6);
  std::vector<std::string> tokens;
  for (std::size_t t = 0; t < len; ++t) tokens.push_back(g.name(ts[pick(n_terms)]));
  return {std::move(g), InputString(std::move(tokens))};
}

}  // namespace test_support
