#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <stdexcept>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "bmmparse/bool_matrix.hpp"
#include "bmmparse/grammar.hpp"
#include "bmmparse/reduction.hpp"

namespace bmmparse {

struct BenchRecord {
  std::size_t m = 0;
  GrammarVariant variant = GrammarVariant::general;
  ParserKind parser = ParserKind::general_chart;
  std::uint64_t build_ns = 0;
  std::uint64_t parse_ns = 0;
  std::uint64_t extract_ns = 0;
  std::size_t grammar_size = 0;
  std::size_t string_len = 0;
  bool verified = false;
};

struct BenchOptions {
  std::vector<std::size_t> sizes;
  std::size_t reps = 1;
  double density = 0.5;
  std::uint64_t seed = 42;
  Rational ell;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  bool all_verified = true;
  std::optional<double> slope_general;  // log-log slope of total time vs m
  std::optional<double> slope_cnf;
};

inline const char* variant_name(GrammarVariant v) {
  return v == GrammarVariant::cnf ? "cnf" : "general";
}
inline const char* parser_name(ParserKind p) {
  return p == ParserKind::cky ? "cky" : "general-chart";
}

namespace detail {

/// Least-squares slope of ln(total_ns) against ln(m); needs two distinct m.
inline std::optional<double> loglog_slope(const std::vector<BenchRecord>& recs,
                                          GrammarVariant v) {
  std::vector<double> xs, ys;
  for (const auto& r : recs) {
    if (r.variant != v) continue;
    const double total = static_cast<double>(r.build_ns + r.parse_ns + r.extract_ns);
    if (total <= 0.0) continue;
    xs.push_back(std::log(static_cast<double>(r.m)));
    ys.push_back(std::log(total));
  }
  if (xs.size() < 2) return std::nullopt;
  bool distinct = false;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] != xs[0]) distinct = true;
  }
  if (!distinct) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double cov = 0, var = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cov += (xs[i] - mx) * (ys[i] - my);
    var += (xs[i] - mx) * (xs[i] - mx);
  }
  return cov / var;
}

}  // namespace detail

/// One timed pipeline run per (size, rep, variant); every product is checked
/// against the word-parallel reference multiply. Matrix seeds are drawn from
/// a master engine in a fixed order, so records are reproducible per seed.
inline BenchResult run_bench(const BenchOptions& opt) {
  if (opt.density < 0.0 || opt.density > 1.0)
    throw std::invalid_argument("bench: density must be in [0,1]");
  if (opt.reps == 0) throw std::invalid_argument("bench: reps must be >= 1");
  BenchResult res;
  std::mt19937_64 master(opt.seed);
  for (std::size_t m : opt.sizes) {
    if (m == 0) throw std::invalid_argument("bench: sizes must be >= 1");
    for (std::size_t rep = 0; rep < opt.reps; ++rep) {
      const BooleanMatrix a = random_matrix(m, opt.density, master());
      const BooleanMatrix b = random_matrix(m, opt.density, master());
      const BooleanMatrix expected = naive_bmm(a, b);
      for (GrammarVariant v : {GrammarVariant::general, GrammarVariant::cnf}) {
        const ParserKind parser =
            v == GrammarVariant::cnf ? ParserKind::cky : ParserKind::general_chart;
        using clock = std::chrono::steady_clock;
        const auto t0 = clock::now();
        const ReductionPlan p = plan(m, opt.ell);
        const ReductionArtifacts art =
            v == GrammarVariant::cnf ? build_grammar_cnf(a, b, p) : build_grammar(a, b, p);
        const auto t1 = clock::now();
        const Chart chart = parser == ParserKind::cky
                                ? cky_parse(art.grammar, art.string)
                                : chart_parse_general(art.grammar, art.string);
        const auto t2 = clock::now();
        const BooleanMatrix prod = extract_product(chart, art);
        const auto t3 = clock::now();

        BenchRecord rec;
        rec.m = m;
        rec.variant = v;
        rec.parser = parser;
        auto ns = [](auto from, auto to) {
          return static_cast<std::uint64_t>(
              std::chrono::duration_cast<std::chrono::nanoseconds>(to - from).count());
        };
        rec.build_ns = ns(t0, t1);
        rec.parse_ns = ns(t1, t2);
        rec.extract_ns = ns(t2, t3);
        rec.grammar_size = grammar_size(art.grammar);
        rec.string_len = art.string.size();
        rec.verified = matrices_equal(prod, expected);
        if (!rec.verified) res.all_verified = false;
        res.records.push_back(rec);
      }
    }
  }
  res.slope_general = detail::loglog_slope(res.records, GrammarVariant::general);
  res.slope_cnf = detail::loglog_slope(res.records, GrammarVariant::cnf);
  return res;
}

/// Fixed CSV schema; the slope summary rides along as comment lines because
/// it is informational, not a gating measurement.
inline void write_bench_csv(std::ostream& os, const BenchResult& res) {
  os << "m,variant,parser,build_ns,parse_ns,extract_ns,grammar_size,string_len,verified\n";
  for (const auto& r : res.records) {
    os << r.m << "," << variant_name(r.variant) << "," << parser_name(r.parser) << ","
       << r.build_ns << "," << r.parse_ns << "," << r.extract_ns << "," << r.grammar_size << ","
       << r.string_len << "," << (r.verified ? 1 : 0) << "\n";
  }
  const auto emit_slope = [&](const char* label, const std::optional<double>& s) {
    if (!s) return;
    os << "# loglog_slope " << label << " " << std::fixed << std::setprecision(4) << *s << "\n";
    os.unsetf(std::ios::fixed);
    os << std::setprecision(6);
  };
  emit_slope("general", res.slope_general);
  emit_slope("cnf", res.slope_cnf);
}

}  // namespace bmmparse
