#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bmmparse/bool_matrix.hpp"
#include "bmmparse/chart.hpp"
#include "bmmparse/grammar.hpp"
#include "bmmparse/parse.hpp"

namespace bmmparse {

/// Exponent ell = num/den with 0 < ell <= 1; default 1/3.
struct Rational {
  std::uint32_t num = 1;
  std::uint32_t den = 3;
};

/// All derived parameters of one instance size m: the block base d, the
/// third-length delta = d + 2, the string length 3d + 6, the hi/lo index
/// ranges of the encoding, and predicted rule counts.
struct ReductionPlan {
  std::size_t m = 0;
  Rational ell;
  std::size_t d = 0;
  std::size_t delta = 0;
  std::size_t string_length = 0;
  std::size_t hi_bound = 0;  // hi indices range over 0..hi_bound inclusive
  std::size_t lo_min = 2;
  std::size_t lo_max = 0;  // = d + 1
  std::size_t w_rule_count = 0;
  std::size_t c_rule_count = 0;
  std::size_t s_rule_count = 0;
  std::size_t max_ab_rule_count = 0;   // m^2 per matrix, reached when all entries are 1
  std::size_t predicted_size_class = 0;  // m^2 + (hi_bound+1)^3, the two dominant terms
};

namespace detail {

inline unsigned __int128 pow_saturating(std::size_t base, std::uint32_t exp) {
  const unsigned __int128 kMax = ~static_cast<unsigned __int128>(0);
  unsigned __int128 acc = 1;
  for (std::uint32_t t = 0; t < exp; ++t) {
    if (base != 0 && acc > kMax / base) return kMax;
    acc *= base;
  }
  return acc;
}

}  // namespace detail

/// Smallest integer d with d^den >= m^num, i.e. ceil(m^(num/den)), computed
/// in exact integer arithmetic; no floating point near power boundaries.
inline std::size_t ceil_pow(std::size_t m, Rational ell) {
  const unsigned __int128 kMax = ~static_cast<unsigned __int128>(0);
  const unsigned __int128 target = detail::pow_saturating(m, ell.num);
  if (target == kMax) throw std::invalid_argument("ceil_pow: m^num overflows");
  std::size_t lo = 1, hi = m;  // m^(num/den) <= m when num <= den
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (detail::pow_saturating(mid, ell.den) >= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

inline ReductionPlan plan(std::size_t m, Rational ell = {}) {
  if (m == 0) throw std::invalid_argument("plan: m must be >= 1");
  if (ell.num == 0 || ell.den == 0 || ell.num > ell.den)
    throw std::invalid_argument("plan: exponent must satisfy 0 < num/den <= 1");
  if (ell.den > 64) throw std::invalid_argument("plan: exponent denominator too large");
  const std::uint32_t g = std::gcd(ell.num, ell.den);
  ell.num /= g;
  ell.den /= g;

  ReductionPlan p;
  p.m = m;
  p.ell = ell;
  p.d = ceil_pow(m, ell);
  p.delta = p.d + 2;
  p.string_length = 3 * p.delta;
  p.lo_max = p.d + 1;
  // At the default exponent the hi range is 0..d^2 (d^3 >= m makes that a
  // superset of the image of i -> i/d). Other exponents use the exact image
  // bound m/d, which keeps the C-rule count on its (m/d)^3 growth curve.
  p.hi_bound = (ell.num == 1 && ell.den == 3) ? p.d * p.d : m / p.d;
  p.w_rule_count = 2 * p.string_length;
  const std::size_t h1 = p.hi_bound + 1;
  p.c_rule_count = h1 * h1 * h1;
  p.s_rule_count = h1 * h1;
  p.max_ab_rule_count = m * m;
  p.predicted_size_class = m * m + p.c_rule_count;
  return p;
}

/// Split of a matrix index: hi = i/d in [0, hi_bound], lo = i%d + 2 in [2, d+1].
struct EncodedIndex {
  std::size_t hi = 0;
  std::size_t lo = 0;

  friend bool operator==(const EncodedIndex& a, const EncodedIndex& b) {
    return a.hi == b.hi && a.lo == b.lo;
  }
};

inline EncodedIndex encode_index(std::size_t i, const ReductionPlan& p) {
  if (i < 1 || i > p.m) throw std::out_of_range("encode_index: index outside [1, m]");
  return {i / p.d, i % p.d + 2};
}

inline std::size_t decode_index(const EncodedIndex& e, const ReductionPlan& p) {
  if (e.hi > p.hi_bound || e.lo < p.lo_min || e.lo > p.lo_max)
    throw std::out_of_range("decode_index: encoded parts outside their ranges");
  const std::size_t i = e.hi * p.d + (e.lo - 2);
  if (i < 1 || i > p.m) throw std::out_of_range("decode_index: decoded index outside [1, m]");
  return i;
}

/// The fixed input string w1 w2 ... w_{3d+6}; depends only on the plan,
/// never on matrix entries.
inline InputString build_string(const ReductionPlan& p) {
  std::vector<std::string> toks;
  toks.reserve(p.string_length);
  for (std::size_t l = 1; l <= p.string_length; ++l) toks.push_back("w" + std::to_string(l));
  return InputString(std::move(toks));
}

enum class GrammarVariant { general, cnf };

inline std::string family_nonterminal_name(char family, std::size_t hi, std::size_t hj) {
  return std::string(1, family) + "_" + std::to_string(hi) + "_" + std::to_string(hj);
}

struct FamilyIndex {
  char family;  // 'A', 'B', or 'C'
  std::size_t hi = 0;
  std::size_t hj = 0;
};

/// Inverse of family_nonterminal_name; nullopt for names outside the scheme.
inline std::optional<FamilyIndex> parse_family_name(const std::string& name) {
  if (name.size() < 5 || name[1] != '_') return std::nullopt;
  const char fam = name[0];
  if (fam != 'A' && fam != 'B' && fam != 'C') return std::nullopt;
  const std::size_t sep = name.find('_', 2);
  if (sep == std::string::npos || sep == 2 || sep + 1 >= name.size()) return std::nullopt;
  std::size_t hi = 0, hj = 0;
  for (std::size_t k = 2; k < sep; ++k) {
    if (name[k] < '0' || name[k] > '9') return std::nullopt;
    hi = hi * 10 + static_cast<std::size_t>(name[k] - '0');
  }
  for (std::size_t k = sep + 1; k < name.size(); ++k) {
    if (name[k] < '0' || name[k] > '9') return std::nullopt;
    hj = hj * 10 + static_cast<std::size_t>(name[k] - '0');
  }
  return FamilyIndex{fam, hi, hj};
}

/// A constructed instance: the grammar (general or CNF), the input string,
/// the plan it was built from, and name helpers for posing oracle queries.
struct ReductionArtifacts {
  Grammar grammar;
  InputString string;
  ReductionPlan plan;
  GrammarVariant variant;

  std::string a_name(std::size_t hi, std::size_t hj) const {
    return family_nonterminal_name('A', hi, hj);
  }
  std::string b_name(std::size_t hi, std::size_t hj) const {
    return family_nonterminal_name('B', hi, hj);
  }
  std::string c_name(std::size_t hi, std::size_t hj) const {
    return family_nonterminal_name('C', hi, hj);
  }
  /// Query answering entry (i, j) of the product: nonterminal plus span.
  struct ExtractionQuery {
    std::string nonterminal;
    std::size_t i;
    std::size_t j;
  };
  ExtractionQuery extraction_query(std::size_t i, std::size_t j) const {
    const EncodedIndex ei = encode_index(i, plan), ej = encode_index(j, plan);
    return {c_name(ei.hi, ej.hi), ei.lo, ej.lo + 2 * plan.delta};
  }
};

namespace detail {

inline void check_reduction_dims(const BooleanMatrix& a, const BooleanMatrix& b,
                                 const ReductionPlan& p) {
  if (a.dim() != p.m || b.dim() != p.m)
    throw std::invalid_argument("build_grammar: matrix dimension does not match plan");
}

struct FamilyIds {
  std::size_t side;  // hi_bound + 1
  std::vector<SymbolId> a, b, c;
  std::size_t at(std::size_t hi, std::size_t hj) const { return hi * side + hj; }
};

inline FamilyIds declare_families(Grammar& g, const ReductionPlan& p) {
  FamilyIds f;
  f.side = p.hi_bound + 1;
  f.a.resize(f.side * f.side);
  f.b.resize(f.side * f.side);
  f.c.resize(f.side * f.side);
  for (std::size_t hi = 0; hi < f.side; ++hi) {
    for (std::size_t hj = 0; hj < f.side; ++hj) {
      f.a[f.at(hi, hj)] = g.add_nonterminal(family_nonterminal_name('A', hi, hj));
      f.b[f.at(hi, hj)] = g.add_nonterminal(family_nonterminal_name('B', hi, hj));
      f.c[f.at(hi, hj)] = g.add_nonterminal(family_nonterminal_name('C', hi, hj));
    }
  }
  return f;
}

}  // namespace detail

/// General grammar G for the pair (a, b): W spans padding, one A-rule per
/// nonzero of a, one B-rule per nonzero of b, the full C composition grid,
/// and S-rules embedding every C_{p,q} between W paddings. Every family
/// nonterminal is declared even when no rule produces it.
inline ReductionArtifacts build_grammar(const BooleanMatrix& a, const BooleanMatrix& b,
                                        const ReductionPlan& p) {
  detail::check_reduction_dims(a, b, p);
  Grammar g;
  const std::size_t n = p.string_length, delta = p.delta, m = p.m;

  std::vector<SymbolId> term(n + 1);
  for (std::size_t l = 1; l <= n; ++l) term[l] = g.add_terminal("w" + std::to_string(l));
  const SymbolId S = g.add_nonterminal("S");
  const SymbolId W = g.add_nonterminal("W");
  const auto fam = detail::declare_families(g, p);
  g.set_start(S);

  for (std::size_t l = 1; l <= n; ++l) {
    g.add_production(W, {term[l], W});
    g.add_production(W, {term[l]});
  }
  for (std::size_t i = 1; i <= m; ++i) {
    const EncodedIndex ei = encode_index(i, p);
    for (std::size_t j = 1; j <= m; ++j) {
      if (!a.get(i, j)) continue;
      const EncodedIndex ej = encode_index(j, p);
      g.add_production(fam.a[fam.at(ei.hi, ej.hi)], {term[ei.lo], W, term[ej.lo + delta]});
    }
  }
  for (std::size_t i = 1; i <= m; ++i) {
    const EncodedIndex ei = encode_index(i, p);
    for (std::size_t j = 1; j <= m; ++j) {
      if (!b.get(i, j)) continue;
      const EncodedIndex ej = encode_index(j, p);
      g.add_production(fam.b[fam.at(ei.hi, ej.hi)],
                       {term[ei.lo + 1 + delta], W, term[ej.lo + 2 * delta]});
    }
  }
  for (std::size_t pp = 0; pp < fam.side; ++pp) {
    for (std::size_t qq = 0; qq < fam.side; ++qq) {
      for (std::size_t rr = 0; rr < fam.side; ++rr) {
        g.add_production(fam.c[fam.at(pp, qq)], {fam.a[fam.at(pp, rr)], fam.b[fam.at(rr, qq)]});
      }
    }
  }
  for (std::size_t pp = 0; pp < fam.side; ++pp) {
    for (std::size_t qq = 0; qq < fam.side; ++qq) {
      g.add_production(S, {W, fam.c[fam.at(pp, qq)], W});
    }
  }
  return {std::move(g), build_string(p), p, GrammarVariant::general};
}

/// Chomsky-normal-form grammar G' for the pair (a, b): same item semantics
/// at the extraction spans, built directly from its own schemata (W_l
/// preterminals, X helpers splitting the three-symbol A/B rules, T helpers
/// splitting the S-rules).
inline ReductionArtifacts build_grammar_cnf(const BooleanMatrix& a, const BooleanMatrix& b,
                                            const ReductionPlan& p) {
  detail::check_reduction_dims(a, b, p);
  Grammar g;
  const std::size_t n = p.string_length, d = p.d, delta = p.delta, m = p.m;

  std::vector<SymbolId> term(n + 1);
  for (std::size_t l = 1; l <= n; ++l) term[l] = g.add_terminal("w" + std::to_string(l));
  const SymbolId S = g.add_nonterminal("S");
  const SymbolId T = g.add_nonterminal("T");
  const SymbolId W = g.add_nonterminal("W");
  std::vector<SymbolId> wl(n + 1);
  for (std::size_t l = 1; l <= n; ++l) wl[l] = g.add_nonterminal("W" + std::to_string(l));
  std::vector<SymbolId> x(n + 1, kNoSymbol);
  for (std::size_t lo = 2; lo <= d + 1; ++lo) {
    x[lo + delta] = g.add_nonterminal("X" + std::to_string(lo + delta));
    x[lo + 2 * delta] = g.add_nonterminal("X" + std::to_string(lo + 2 * delta));
  }
  const auto fam = detail::declare_families(g, p);
  g.set_start(S);

  for (std::size_t l = 1; l <= n; ++l) {
    g.add_production(W, {wl[l], W});
    g.add_production(W, {term[l]});
    g.add_production(wl[l], {term[l]});
  }
  for (std::size_t lo = 2; lo <= d + 1; ++lo)
    g.add_production(x[lo + delta], {W, wl[lo + delta]});
  for (std::size_t lo = 2; lo <= d + 1; ++lo)
    g.add_production(x[lo + 2 * delta], {W, wl[lo + 2 * delta]});
  for (std::size_t i = 1; i <= m; ++i) {
    const EncodedIndex ei = encode_index(i, p);
    for (std::size_t j = 1; j <= m; ++j) {
      if (!a.get(i, j)) continue;
      const EncodedIndex ej = encode_index(j, p);
      g.add_production(fam.a[fam.at(ei.hi, ej.hi)], {wl[ei.lo], x[ej.lo + delta]});
    }
  }
  for (std::size_t i = 1; i <= m; ++i) {
    const EncodedIndex ei = encode_index(i, p);
    for (std::size_t j = 1; j <= m; ++j) {
      if (!b.get(i, j)) continue;
      const EncodedIndex ej = encode_index(j, p);
      g.add_production(fam.b[fam.at(ei.hi, ej.hi)], {wl[ei.lo + 1 + delta], x[ej.lo + 2 * delta]});
    }
  }
  for (std::size_t pp = 0; pp < fam.side; ++pp) {
    for (std::size_t qq = 0; qq < fam.side; ++qq) {
      for (std::size_t rr = 0; rr < fam.side; ++rr) {
        g.add_production(fam.c[fam.at(pp, qq)], {fam.a[fam.at(pp, rr)], fam.b[fam.at(rr, qq)]});
      }
    }
  }
  g.add_production(S, {W, T});
  for (std::size_t pp = 0; pp < fam.side; ++pp) {
    for (std::size_t qq = 0; qq < fam.side; ++qq) {
      g.add_production(T, {fam.c[fam.at(pp, qq)], W});
    }
  }
  return {std::move(g), build_string(p), p, GrammarVariant::cnf};
}

/// Reads the product off a chart of (art.grammar, art.string): entry (i, j)
/// is the oracle answer at the extraction query for (i, j). Exactly m^2
/// lookups. A chart that lacks an expected family name was not built from
/// these artifacts.
inline BooleanMatrix extract_product(const Chart& c, const ReductionArtifacts& art) {
  if (c.n() != art.plan.string_length)
    throw std::logic_error("extract_product: chart length does not match the artifact string");
  const std::size_t m = art.plan.m;
  BooleanMatrix out(m);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const auto q = art.extraction_query(i, j);
      if (!c.knows(q.nonterminal))
        throw std::logic_error("extract_product: chart lacks nonterminal '" + q.nonterminal +
                               "'; artifact and chart do not match");
      if (c.contains(c.index_of(q.nonterminal), q.i, q.j)) out.set(i, j, true);
    }
  }
  return out;
}

enum class ParserKind { cky, general_chart };

struct PhaseTimings {
  std::uint64_t build_ns = 0;
  std::uint64_t parse_ns = 0;
  std::uint64_t extract_ns = 0;
};

/// Full pipeline: build the instance for (a, b), parse the fixed string,
/// extract the product from the chart. The cky parser requires the cnf
/// variant; filtering restricts the chart to c-derivations first, which
/// leaves every extraction answer unchanged.
inline BooleanMatrix multiply_via_parsing(const BooleanMatrix& a, const BooleanMatrix& b,
                                          GrammarVariant variant, ParserKind parser, bool filtered,
                                          PhaseTimings* timings = nullptr, Rational ell = {}) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("multiply_via_parsing: dimension mismatch");
  if (parser == ParserKind::cky && variant != GrammarVariant::cnf)
    throw std::invalid_argument("multiply_via_parsing: cky parser requires the cnf variant");

  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const ReductionPlan p = plan(a.dim(), ell);
  const ReductionArtifacts art =
      variant == GrammarVariant::cnf ? build_grammar_cnf(a, b, p) : build_grammar(a, b, p);
  const auto t1 = clock::now();
  Chart chart = parser == ParserKind::cky ? cky_parse(art.grammar, art.string)
                                          : chart_parse_general(art.grammar, art.string);
  if (filtered) chart = consistency_filter(chart, art.grammar, art.string);
  const auto t2 = clock::now();
  BooleanMatrix out = extract_product(chart, art);
  const auto t3 = clock::now();

  if (timings) {
    timings->build_ns =
        static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    timings->parse_ns =
        static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t2 - t1).count());
    timings->extract_ns =
        static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t3 - t2).count());
  }
  return out;
}

}  // namespace bmmparse
