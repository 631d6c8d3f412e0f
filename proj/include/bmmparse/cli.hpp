#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bmmparse/bench.hpp"
#include "bmmparse/bool_matrix.hpp"
#include "bmmparse/parse.hpp"
#include "bmmparse/reduction.hpp"
#include "bmmparse/text_io.hpp"

namespace bmmparse {
namespace cli {

// Exit codes: 0 success, 1 usage, 2 input format, 3 verification failure.

namespace detail {

/// Accepts "N" or "N/D" with 0 < N/D <= 1; nullopt on anything else.
inline std::optional<Rational> parse_ell(const std::string& text) {
  std::uint64_t parts[2] = {0, 1};
  std::size_t part = 0, digits = 0;
  for (char c : text) {
    if (c == '/') {
      if (part == 1 || digits == 0) return std::nullopt;
      part = 1;
      digits = 0;
      parts[1] = 0;
      continue;
    }
    if (c < '0' || c > '9') return std::nullopt;
    parts[part] = parts[part] * 10 + static_cast<std::uint64_t>(c - '0');
    if (parts[part] > 1000000) return std::nullopt;
    ++digits;
  }
  if (digits == 0) return std::nullopt;
  if (parts[0] == 0 || parts[1] == 0 || parts[0] > parts[1] || parts[1] > 64)
    return std::nullopt;
  return Rational{static_cast<std::uint32_t>(parts[0]), static_cast<std::uint32_t>(parts[1])};
}

template <typename Fn>
int guarded(std::ostream& err, Fn fn) {
  try {
    return fn();
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

struct ReduceOpts {
  std::string a_path, b_path;
  std::string ell = "1/3";
  std::string grammar_out = "grammar.txt";
  std::string string_out = "string.txt";
  bool cnf = false;
};

inline int cmd_reduce(const ReduceOpts& o, std::ostream& out, std::ostream& err) {
  const auto ell = parse_ell(o.ell);
  if (!ell) {
    err << "error: invalid --ell value '" << o.ell << "'\n";
    return 1;
  }
  return guarded(err, [&] {
    const BooleanMatrix a = load_matrix(o.a_path);
    const BooleanMatrix b = load_matrix(o.b_path);
    if (a.dim() != b.dim()) {
      err << "error: dimension mismatch: " << a.dim() << " vs " << b.dim() << "\n";
      return 2;
    }
    const ReductionPlan p = plan(a.dim(), *ell);
    const ReductionArtifacts art =
        o.cnf ? build_grammar_cnf(a, b, p) : build_grammar(a, b, p);
    save_grammar(o.grammar_out, art.grammar);
    save_string_file(o.string_out, art.string);
    out << "m " << p.m << "\n"
        << "ell " << p.ell.num << "/" << p.ell.den << "\n"
        << "d " << p.d << "\n"
        << "delta " << p.delta << "\n"
        << "string_length " << p.string_length << "\n"
        << "w_rules " << p.w_rule_count << "\n"
        << "a_rules " << a.popcount() << "\n"
        << "b_rules " << b.popcount() << "\n"
        << "c_rules " << p.c_rule_count << "\n"
        << "s_rules " << p.s_rule_count << "\n"
        << "grammar_size " << grammar_size(art.grammar) << "\n"
        << "grammar_file " << o.grammar_out << "\n"
        << "string_file " << o.string_out << "\n";
    return 0;
  });
}

struct MultiplyOpts {
  std::string a_path, b_path;
  std::string ell = "1/3";
  std::string parser;  // empty selects by variant
  std::string output;
  bool cnf = false;
  bool filtered = false;
  bool check = false;
};

inline int cmd_multiply(const MultiplyOpts& o, bool emit_output, std::ostream& out,
                        std::ostream& err) {
  const auto ell = parse_ell(o.ell);
  if (!ell) {
    err << "error: invalid --ell value '" << o.ell << "'\n";
    return 1;
  }
  ParserKind parser;
  if (o.parser.empty()) {
    parser = o.cnf ? ParserKind::cky : ParserKind::general_chart;
  } else if (o.parser == "cky") {
    parser = ParserKind::cky;
  } else if (o.parser == "general-chart") {
    parser = ParserKind::general_chart;
  } else {
    err << "error: invalid --parser value '" << o.parser << "'\n";
    return 1;
  }
  if (parser == ParserKind::cky && !o.cnf) {
    err << "error: --parser cky requires --cnf\n";
    return 1;
  }
  const GrammarVariant variant = o.cnf ? GrammarVariant::cnf : GrammarVariant::general;
  return guarded(err, [&] {
    const BooleanMatrix a = load_matrix(o.a_path);
    const BooleanMatrix b = load_matrix(o.b_path);
    if (a.dim() != b.dim()) {
      err << "error: dimension mismatch: " << a.dim() << " vs " << b.dim() << "\n";
      return 2;
    }
    PhaseTimings t;
    const BooleanMatrix prod = multiply_via_parsing(a, b, variant, parser, o.filtered, &t, *ell);
    if (o.check) {
      if (!matrices_equal(prod, naive_bmm(a, b))) {
        err << "error: verification failed: parsed product differs from reference multiply\n";
        return 3;
      }
    }
    if (emit_output) {
      if (o.output.empty()) {
        write_matrix(out, prod);
      } else {
        save_matrix(o.output, prod);
      }
    } else {
      out << "ok\n";
    }
    return 0;
  });
}

struct ParseOpts {
  std::string grammar_path, string_path;
  std::vector<std::string> queries;
  bool dump_chart = false;
  bool filtered = false;
};

/// "NAME,i,j" with decimal i, j.
inline bool split_query(const std::string& q, std::string& name, std::size_t& i,
                        std::size_t& j) {
  const std::size_t c1 = q.find(',');
  if (c1 == std::string::npos || c1 == 0) return false;
  const std::size_t c2 = q.find(',', c1 + 1);
  if (c2 == std::string::npos || c2 == c1 + 1 || c2 + 1 >= q.size()) return false;
  name = q.substr(0, c1);
  std::size_t vals[2] = {0, 0};
  const std::string nums[2] = {q.substr(c1 + 1, c2 - c1 - 1), q.substr(c2 + 1)};
  for (int k = 0; k < 2; ++k) {
    for (char c : nums[k]) {
      if (c < '0' || c > '9') return false;
      vals[k] = vals[k] * 10 + static_cast<std::size_t>(c - '0');
    }
  }
  i = vals[0];
  j = vals[1];
  return true;
}

inline int cmd_parse(const ParseOpts& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Grammar g = load_grammar(o.grammar_path);
    const InputString w = load_string_file(o.string_path);
    Chart chart = chart_parse_general(g, w);
    if (o.filtered) chart = consistency_filter(chart, g, w);
    bool acted = false;
    for (const std::string& q : o.queries) {
      acted = true;
      std::string name;
      std::size_t i = 0, j = 0;
      if (!split_query(q, name, i, j)) {
        out << "error: malformed query '" << q << "'\n";
        continue;
      }
      try {
        out << (oracle_query(chart, name, i, j) ? "yes" : "no") << "\n";
      } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
      }
    }
    if (o.dump_chart) {
      acted = true;
      write_chart_dump(out, chart);
    }
    if (!acted) out << (recognizes(chart) ? "recognized yes" : "recognized no") << "\n";
    return 0;
  });
}

struct BenchOpts {
  std::vector<std::size_t> sizes;
  std::size_t reps = 1;
  double density = 0.5;
  std::uint64_t seed = 42;
  std::string csv;
  std::string ell = "1/3";
};

inline int cmd_bench(const BenchOpts& o, std::ostream& out, std::ostream& err) {
  const auto ell = parse_ell(o.ell);
  if (!ell) {
    err << "error: invalid --ell value '" << o.ell << "'\n";
    return 1;
  }
  if (o.density < 0.0 || o.density > 1.0) {
    err << "error: --density must be in [0,1]\n";
    return 1;
  }
  if (o.reps == 0) {
    err << "error: --reps must be >= 1\n";
    return 1;
  }
  for (std::size_t m : o.sizes) {
    if (m == 0) {
      err << "error: --sizes entries must be >= 1\n";
      return 1;
    }
  }
  return guarded(err, [&] {
    BenchOptions bo;
    bo.sizes = o.sizes;
    bo.reps = o.reps;
    bo.density = o.density;
    bo.seed = o.seed;
    bo.ell = *ell;
    const BenchResult res = run_bench(bo);
    if (o.csv.empty()) {
      write_bench_csv(out, res);
    } else {
      auto os = bmmparse::detail::open_output(o.csv);
      write_bench_csv(os, res);
    }
    if (!res.all_verified) {
      err << "error: verification failed in benchmark rows\n";
      return 3;
    }
    return 0;
  });
}

}  // namespace detail

/// Parses args (program name excluded) and runs one subcommand. All output
/// goes to the given streams so the CLI is drivable in-process.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boolean matrix multiplication through context-free parse charts"};
  app.name("bmmparse");
  app.require_subcommand(1);
  int rc = 0;

  detail::ReduceOpts red;
  auto* reduce = app.add_subcommand("reduce", "Build the grammar and string for a matrix pair");
  reduce->add_option("A", red.a_path, "left matrix file")->required();
  reduce->add_option("B", red.b_path, "right matrix file")->required();
  reduce->add_flag("--cnf", red.cnf, "emit the Chomsky normal form variant");
  reduce->add_option("--ell", red.ell, "encoding exponent as N/D (default 1/3)");
  reduce->add_option("--grammar-out", red.grammar_out, "grammar output file");
  reduce->add_option("--string-out", red.string_out, "string output file");
  reduce->callback([&] { rc = detail::cmd_reduce(red, out, err); });

  detail::MultiplyOpts mul;
  auto* multiply =
      app.add_subcommand("multiply", "Multiply two matrices by parsing the reduction instance");
  multiply->add_option("A", mul.a_path, "left matrix file")->required();
  multiply->add_option("B", mul.b_path, "right matrix file")->required();
  multiply->add_flag("--cnf", mul.cnf, "use the Chomsky normal form variant");
  multiply->add_option("--parser", mul.parser, "cky or general-chart (default picked by variant)");
  multiply->add_flag("--filtered", mul.filtered, "restrict the chart to consistent items first");
  multiply->add_flag("--check", mul.check, "also compare against the reference multiply");
  multiply->add_option("-o,--output", mul.output, "write the product here instead of stdout");
  multiply->add_option("--ell", mul.ell, "encoding exponent as N/D (default 1/3)");
  multiply->callback([&] { rc = detail::cmd_multiply(mul, true, out, err); });

  detail::MultiplyOpts ver;
  auto* verify = app.add_subcommand(
      "verify", "Multiply via parsing and compare against the reference multiply");
  verify->add_option("A", ver.a_path, "left matrix file")->required();
  verify->add_option("B", ver.b_path, "right matrix file")->required();
  verify->add_flag("--cnf", ver.cnf, "use the Chomsky normal form variant");
  verify->add_option("--parser", ver.parser, "cky or general-chart (default picked by variant)");
  verify->add_flag("--filtered", ver.filtered, "restrict the chart to consistent items first");
  verify->add_option("--ell", ver.ell, "encoding exponent as N/D (default 1/3)");
  verify->callback([&] {
    ver.check = true;
    rc = detail::cmd_multiply(ver, false, out, err);
  });

  detail::ParseOpts par;
  auto* parse = app.add_subcommand("parse", "Parse a string file against a grammar file");
  parse->add_option("GRAMMAR", par.grammar_path, "grammar file")->required();
  parse->add_option("STRING", par.string_path, "string file")->required();
  parse->add_option("--query", par.queries, "chart query NONTERM,i,j (repeatable)");
  parse->add_flag("--dump-chart", par.dump_chart, "print all chart items sorted by (i, j, name)");
  parse->add_flag("--filtered", par.filtered, "restrict the chart to consistent items");
  parse->callback([&] { rc = detail::cmd_parse(par, out, err); });

  detail::BenchOpts ben;
  auto* bench = app.add_subcommand("bench", "Time the pipeline across instance sizes");
  bench->add_option("--sizes", ben.sizes, "comma-separated instance sizes")
      ->delimiter(',')
      ->required();
  bench->add_option("--reps", ben.reps, "repetitions per size (default 1)");
  bench->add_option("--density", ben.density, "probability of a 1 entry (default 0.5)");
  bench->add_option("--seed", ben.seed, "master seed (default 42)");
  bench->add_option("--csv", ben.csv, "write the CSV here instead of stdout");
  bench->add_option("--ell", ben.ell, "encoding exponent as N/D (default 1/3)");
  bench->callback([&] { rc = detail::cmd_bench(ben, out, err); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  return rc;
}

}  // namespace cli
}  // namespace bmmparse
