#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bmmparse/bool_matrix.hpp"
#include "bmmparse/chart.hpp"
#include "bmmparse/grammar.hpp"

namespace bmmparse {

/// Malformed input text (matrix, grammar, or string file).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return s.substr(b, e - b);
}

inline void reject_cr(const std::string& line, std::size_t lineno) {
  if (line.find('\r') != std::string::npos)
    throw FormatError("line " + std::to_string(lineno) + ": CR line ending; files must use LF");
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

// ---- matrix files: first line decimal m, then m lines of m chars from {0,1} ----

inline BooleanMatrix read_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("matrix: missing dimension line");
  detail::reject_cr(line, 1);
  if (line.empty()) throw FormatError("matrix: dimension line is empty");
  std::size_t m = 0;
  for (char c : line) {
    if (c < '0' || c > '9') throw FormatError("matrix: dimension line must be a decimal number");
    m = m * 10 + static_cast<std::size_t>(c - '0');
    if (m > 1000000) throw FormatError("matrix: dimension too large");
  }
  if (m == 0) throw FormatError("matrix: dimension must be >= 1");
  BooleanMatrix out(m);
  for (std::size_t i = 1; i <= m; ++i) {
    if (!std::getline(in, line))
      throw FormatError("matrix: expected " + std::to_string(m) + " rows, found " +
                        std::to_string(i - 1));
    detail::reject_cr(line, i + 1);
    if (line.size() != m)
      throw FormatError("matrix: row " + std::to_string(i) + " has " +
                        std::to_string(line.size()) + " characters, expected " + std::to_string(m));
    for (std::size_t j = 1; j <= m; ++j) {
      const char c = line[j - 1];
      if (c != '0' && c != '1')
        throw FormatError("matrix: row " + std::to_string(i) + " contains '" + std::string(1, c) +
                          "'; entries must be 0 or 1");
      if (c == '1') out.set(i, j, true);
    }
  }
  if (std::getline(in, line))
    throw FormatError("matrix: trailing content after row " + std::to_string(m));
  return out;
}

inline void write_matrix(std::ostream& os, const BooleanMatrix& a) {
  os << a.dim() << "\n";
  for (std::size_t i = 1; i <= a.dim(); ++i) {
    for (std::size_t j = 1; j <= a.dim(); ++j) os << (a.get(i, j) ? '1' : '0');
    os << "\n";
  }
}

// ---- grammar files: `start: NAME`, then `LHS -> SYM SYM ...` per production;
// ---- terminals are single-quoted, blank lines and # comments are ignored ----

inline Grammar read_grammar(std::istream& in) {
  Grammar g;
  std::string line;
  std::size_t lineno = 0;
  bool have_start = false;
  auto fail = [&](const std::string& msg) -> void {
    throw FormatError("grammar: line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    detail::reject_cr(line, lineno);
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;

    if (!have_start) {
      if (t.rfind("start:", 0) != 0) fail("first line must be 'start: <NAME>'");
      const std::string name = detail::trim(t.substr(6));
      if (!Grammar::valid_symbol_name(name)) fail("invalid start symbol name '" + name + "'");
      try {
        g.set_start(g.add_nonterminal(name));
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      have_start = true;
      continue;
    }

    const auto toks = detail::split_ws(t);
    if (toks.size() < 3 || toks[1] != "->")
      fail("expected 'LHS -> SYM ...'");
    try {
      if (toks[0].front() == '\'') fail("lhs must be a bare nonterminal name");
      const SymbolId lhs = g.add_nonterminal(toks[0]);
      std::vector<SymbolId> rhs;
      for (std::size_t k = 2; k < toks.size(); ++k) {
        const std::string& s = toks[k];
        if (s.front() == '\'') {
          if (s.size() < 3 || s.back() != '\'')
            fail("malformed quoted terminal " + s);
          rhs.push_back(g.add_terminal(s.substr(1, s.size() - 2)));
        } else {
          rhs.push_back(g.add_nonterminal(s));
        }
      }
      g.add_production(lhs, std::move(rhs));
    } catch (const FormatError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (!have_start) throw FormatError("grammar: missing 'start:' line");
  return g;
}

inline void write_grammar(std::ostream& os, const Grammar& g) {
  os << "start: " << g.name(g.start()) << "\n";
  for (const auto& p : g.productions()) {
    os << g.name(p.lhs) << " ->";
    for (SymbolId s : p.rhs) {
      if (g.is_terminal(s))
        os << " '" << g.name(s) << "'";
      else
        os << " " << g.name(s);
    }
    os << "\n";
  }
}

// ---- string files: one line of whitespace-separated terminal names ----

inline InputString read_string_file(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("string: empty file");
  detail::reject_cr(line, 1);
  auto toks = detail::split_ws(line);
  if (toks.empty()) throw FormatError("string: no tokens on the first line");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    detail::reject_cr(line, lineno);
    if (!detail::trim(line).empty())
      throw FormatError("string: unexpected content on line " + std::to_string(lineno));
  }
  return InputString(std::move(toks));
}

inline void write_string_file(std::ostream& os, const InputString& w) {
  for (std::size_t p = 1; p <= w.size(); ++p) {
    if (p > 1) os << " ";
    os << w.token(p);
  }
  os << "\n";
}

// ---- chart dumps: `NONTERM i j` sorted by (i, j, name) ----

inline void write_chart_dump(std::ostream& os, const Chart& c) {
  for (const auto& item : c.items_sorted())
    os << item.nonterminal << " " << item.i << " " << item.j << "\n";
}

// ---- file wrappers ----

namespace detail {
inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path + ": cannot open file");
  return in;
}
inline std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError(path + ": cannot open file for writing");
  return os;
}
template <typename T, typename Reader>
T load_with(const std::string& path, Reader reader) {
  auto in = open_input(path);
  try {
    return reader(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}
}  // namespace detail

inline BooleanMatrix load_matrix(const std::string& path) {
  return detail::load_with<BooleanMatrix>(path, [](std::istream& in) { return read_matrix(in); });
}
inline Grammar load_grammar(const std::string& path) {
  return detail::load_with<Grammar>(path, [](std::istream& in) { return read_grammar(in); });
}
inline InputString load_string_file(const std::string& path) {
  return detail::load_with<InputString>(path,
                                        [](std::istream& in) { return read_string_file(in); });
}

inline void save_matrix(const std::string& path, const BooleanMatrix& a) {
  auto os = detail::open_output(path);
  write_matrix(os, a);
}
inline void save_grammar(const std::string& path, const Grammar& g) {
  auto os = detail::open_output(path);
  write_grammar(os, g);
}
inline void save_string_file(const std::string& path, const InputString& w) {
  auto os = detail::open_output(path);
  write_string_file(os, w);
}

}  // namespace bmmparse
