#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bmmparse/chart.hpp"
#include "bmmparse/grammar.hpp"

namespace bmmparse {
namespace detail {

/// Dense re-indexing of a grammar's nonterminals, shared by the parsers and
/// the consistency filter so their charts are bit-compatible.
struct DenseNts {
  std::vector<std::size_t> of_symbol;  // symbol id -> dense id, or npos for terminals
  std::vector<std::string> names;      // dense id -> name
  std::size_t start;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

inline DenseNts dense_nonterminals(const Grammar& g) {
  if (g.start() == kNoSymbol) throw std::invalid_argument("parse: grammar has no start symbol");
  DenseNts d;
  d.of_symbol.assign(g.symbol_count(), DenseNts::npos);
  for (SymbolId id = 0; id < g.symbol_count(); ++id) {
    if (g.is_nonterminal(id)) {
      d.of_symbol[id] = d.names.size();
      d.names.push_back(g.name(id));
    }
  }
  d.start = d.of_symbol[g.start()];
  return d;
}

/// Token positions resolved to terminal ids; 0-based vector for position p+1.
inline std::vector<SymbolId> resolve_tokens(const Grammar& g, const InputString& w) {
  std::vector<SymbolId> toks;
  toks.reserve(w.size());
  for (const std::string& t : w.tokens()) {
    const SymbolId id = g.find(t);
    if (id == kNoSymbol || !g.is_terminal(id))
      throw std::invalid_argument("parse: token '" + t + "' is not a terminal of the grammar");
    toks.push_back(id);
  }
  return toks;
}

inline bool chart_matches_grammar(const Chart& c, const DenseNts& d) {
  if (c.nonterminal_count() != d.names.size() || c.start_index() != d.start) return false;
  for (std::size_t i = 0; i < d.names.size(); ++i) {
    if (c.nonterminal_name(i) != d.names[i]) return false;
  }
  return true;
}

}  // namespace detail

/// CKY over a Chomsky-normal-form grammar. The raw chart holds (A,i,j)
/// exactly when A derives w_i^j. Binary rules are indexed by first child so
/// each split only touches rules whose left part is already proven.
inline Chart cky_parse(const Grammar& g, const InputString& w) {
  if (!is_cnf(g)) throw std::invalid_argument("cky_parse: grammar is not in Chomsky normal form");
  const auto dn = detail::dense_nonterminals(g);
  const auto toks = detail::resolve_tokens(g, w);
  const std::size_t n = w.size();
  Chart chart(n, false, dn.names, dn.start);

  std::unordered_map<SymbolId, std::vector<std::size_t>> by_terminal;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> by_first(dn.names.size());
  for (const auto& p : g.productions()) {
    if (p.rhs.size() == 1)
      by_terminal[p.rhs[0]].push_back(dn.of_symbol[p.lhs]);
    else
      by_first[dn.of_symbol[p.rhs[0]]].push_back({dn.of_symbol[p.rhs[1]], dn.of_symbol[p.lhs]});
  }

  for (std::size_t pos = 1; pos <= n; ++pos) {
    auto it = by_terminal.find(toks[pos - 1]);
    if (it == by_terminal.end()) continue;
    for (std::size_t lhs : it->second) chart.add(lhs, pos, pos);
  }

  const std::size_t wps = chart.words_per_span();
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 1; i + len - 1 <= n; ++i) {
      const std::size_t j = i + len - 1;
      for (std::size_t k = i; k < j; ++k) {
        const std::uint64_t* left = chart.span_words(i, k);
        const std::uint64_t* right = chart.span_words(k + 1, j);
        for (std::size_t wd = 0; wd < wps; ++wd) {
          std::uint64_t bits = left[wd];
          while (bits) {
            const std::size_t b = wd * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
            bits &= bits - 1;
            for (const auto& [second, lhs] : by_first[b]) {
              if ((right[second / 64] >> (second % 64)) & 1u) chart.add(lhs, i, j);
            }
          }
        }
      }
    }
  }
  return chart;
}

/// Span-by-span parser for epsilon-free grammars of any rhs length. Each
/// production is matched against a span by dynamic programming over the
/// boundary positions its rhs prefix can reach; no binarization happens, so
/// the grammar is parsed exactly as written. Lone-nonterminal rhs (unit
/// rules) may reference the span being filled, so those grammars iterate the
/// span to a fixpoint; all other dependencies point at strictly shorter
/// spans and need a single pass.
inline Chart chart_parse_general(const Grammar& g, const InputString& w) {
  bool has_unit = false;
  for (const auto& p : g.productions()) {
    if (p.rhs.empty())
      throw std::invalid_argument("chart_parse_general: epsilon production not supported");
    if (p.rhs.size() == 1 && g.is_nonterminal(p.rhs[0])) has_unit = true;
  }
  const auto dn = detail::dense_nonterminals(g);
  const auto toks = detail::resolve_tokens(g, w);
  const std::size_t n = w.size();
  Chart chart(n, false, dn.names, dn.start);

  // cur/next: reachable boundary positions, values i-1..j stored directly
  std::vector<char> cur(n + 1), next(n + 1);
  auto matches = [&](const std::vector<SymbolId>& rhs, std::size_t i, std::size_t j) {
    std::fill(cur.begin() + (i - 1), cur.begin() + (j + 1), 0);
    cur[i - 1] = 1;
    for (SymbolId r : rhs) {
      std::fill(next.begin() + (i - 1), next.begin() + (j + 1), 0);
      bool any = false;
      if (g.is_terminal(r)) {
        for (std::size_t p = i - 1; p < j; ++p) {
          if (cur[p] && toks[p] == r) {
            next[p + 1] = 1;
            any = true;
          }
        }
      } else {
        const std::size_t rd = dn.of_symbol[r];
        for (std::size_t p = i - 1; p < j; ++p) {
          if (!cur[p]) continue;
          for (std::size_t q = p + 1; q <= j; ++q) {
            if (chart.contains(rd, p + 1, q)) {
              next[q] = 1;
              any = true;
            }
          }
        }
      }
      cur.swap(next);
      if (!any) return false;
    }
    return cur[j] != 0;
  };

  for (std::size_t len = 1; len <= n; ++len) {
    for (std::size_t i = 1; i + len - 1 <= n; ++i) {
      const std::size_t j = i + len - 1;
      bool changed = true;
      while (changed) {
        changed = false;
        for (const auto& p : g.productions()) {
          const std::size_t lhs = dn.of_symbol[p.lhs];
          if (chart.contains(lhs, i, j)) continue;
          if (matches(p.rhs, i, j)) {
            chart.add(lhs, i, j);
            changed = true;
          }
        }
        if (!has_unit) break;
      }
    }
  }
  return chart;
}

/// Restricts a raw chart to the items whose span participates in some
/// complete parse of w: top-down from (start, 1, n), each consistent item is
/// decomposed per production against the raw chart, and every child
/// occurrence lying on a viable decomposition (reachable from the left,
/// completable to the right) is consistent in turn. If the string is not in
/// the language the result is empty.
inline Chart consistency_filter(const Chart& raw, const Grammar& g, const InputString& w) {
  if (raw.filtered())
    throw std::invalid_argument("consistency_filter: chart is already filtered");
  if (raw.n() != w.size())
    throw std::invalid_argument("consistency_filter: chart and string lengths differ");
  const auto dn = detail::dense_nonterminals(g);
  if (!detail::chart_matches_grammar(raw, dn))
    throw std::invalid_argument("consistency_filter: chart does not belong to this grammar");
  const auto toks = detail::resolve_tokens(g, w);
  const std::size_t n = w.size();

  Chart out(n, true, dn.names, dn.start);
  if (!raw.contains(dn.start, 1, n)) return out;

  std::vector<std::vector<const Production*>> by_lhs(dn.names.size());
  std::size_t max_rhs = 1;
  for (const auto& p : g.productions()) {
    by_lhs[dn.of_symbol[p.lhs]].push_back(&p);
    max_rhs = std::max(max_rhs, p.rhs.size());
  }

  struct Item {
    std::size_t nt, i, j;
  };
  std::vector<Item> work;
  out.add(dn.start, 1, n);
  work.push_back({dn.start, 1, n});

  // fwd[t*(n+1)+p]: rhs[0..t-1] can cover (i, p); bwd[t*(n+1)+p]: rhs[t..] can cover (p+1, j)
  std::vector<char> fwd((max_rhs + 1) * (n + 1)), bwd((max_rhs + 1) * (n + 1));
  auto f = [&](std::size_t t, std::size_t p) -> char& { return fwd[t * (n + 1) + p]; };
  auto bk = [&](std::size_t t, std::size_t p) -> char& { return bwd[t * (n + 1) + p]; };

  while (!work.empty()) {
    const Item it = work.back();
    work.pop_back();
    for (const Production* prod : by_lhs[it.nt]) {
      const auto& rhs = prod->rhs;
      const std::size_t k = rhs.size();
      std::fill(fwd.begin(), fwd.begin() + (k + 1) * (n + 1), 0);
      std::fill(bwd.begin(), bwd.begin() + (k + 1) * (n + 1), 0);

      f(0, it.i - 1) = 1;
      for (std::size_t t = 0; t < k; ++t) {
        const SymbolId r = rhs[t];
        for (std::size_t p = it.i - 1; p < it.j; ++p) {
          if (!f(t, p)) continue;
          if (g.is_terminal(r)) {
            if (toks[p] == r) f(t + 1, p + 1) = 1;
          } else {
            const std::size_t rd = dn.of_symbol[r];
            for (std::size_t q = p + 1; q <= it.j; ++q) {
              if (raw.contains(rd, p + 1, q)) f(t + 1, q) = 1;
            }
          }
        }
      }
      if (!f(k, it.j)) continue;  // production cannot cover this span

      bk(k, it.j) = 1;
      for (std::size_t t = k; t-- > 0;) {
        const SymbolId r = rhs[t];
        for (std::size_t q = it.i; q <= it.j; ++q) {
          if (!bk(t + 1, q)) continue;
          if (g.is_terminal(r)) {
            if (toks[q - 1] == r) bk(t, q - 1) = 1;
          } else {
            const std::size_t rd = dn.of_symbol[r];
            for (std::size_t p = it.i - 1; p < q; ++p) {
              if (raw.contains(rd, p + 1, q)) bk(t, p) = 1;
            }
          }
        }
      }

      for (std::size_t t = 0; t < k; ++t) {
        const SymbolId r = rhs[t];
        if (g.is_terminal(r)) continue;
        const std::size_t rd = dn.of_symbol[r];
        for (std::size_t p = it.i - 1; p < it.j; ++p) {
          if (!f(t, p)) continue;
          for (std::size_t q = p + 1; q <= it.j; ++q) {
            if (bk(t + 1, q) && raw.contains(rd, p + 1, q) && !out.contains(rd, p + 1, q)) {
              out.add(rd, p + 1, q);
              work.push_back({rd, p + 1, q});
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace bmmparse
