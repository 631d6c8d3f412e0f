#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bmmparse {

enum class SymbolKind : std::uint8_t { terminal, nonterminal };

using SymbolId = std::uint32_t;
inline constexpr SymbolId kNoSymbol = 0xffffffffu;

/// One rewrite rule. rhs is never empty in a checked grammar; the
/// unchecked path may carry an empty rhs so validate_grammar can report it.
struct Production {
  SymbolId lhs;
  std::vector<SymbolId> rhs;

  friend bool operator==(const Production& a, const Production& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

/// Context-free grammar over interned symbols. Symbol names are unique
/// across both kinds; ids are dense in declaration order. Instances built
/// through the add_* interface are structurally valid; Grammar::unchecked
/// admits arbitrary states for validate_grammar to inspect.
class Grammar {
 public:
  struct RawSymbol {
    SymbolKind kind;
    std::string name;
  };

  Grammar() = default;

  static bool valid_symbol_name(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name) {
      const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '_';
      if (!ok) return false;
    }
    return true;
  }

  SymbolId add_terminal(const std::string& name) { return intern(SymbolKind::terminal, name); }
  SymbolId add_nonterminal(const std::string& name) {
    return intern(SymbolKind::nonterminal, name);
  }

  void add_production(SymbolId lhs, std::vector<SymbolId> rhs) {
    if (lhs >= names_.size() || kinds_[lhs] != SymbolKind::nonterminal)
      throw std::invalid_argument("add_production: lhs must be a declared nonterminal");
    if (rhs.empty())
      throw std::invalid_argument("add_production: epsilon production not representable");
    for (SymbolId s : rhs) {
      if (s >= names_.size())
        throw std::invalid_argument("add_production: undeclared symbol in rhs");
    }
    productions_.push_back({lhs, std::move(rhs)});
  }

  void set_start(SymbolId s) {
    if (s >= names_.size() || kinds_[s] != SymbolKind::nonterminal)
      throw std::invalid_argument("set_start: start must be a declared nonterminal");
    start_ = s;
  }

  /// Builds a grammar with no checks at all. Ill-formed inputs (duplicate
  /// names, dangling ids, empty rhs, bad start) are preserved verbatim so
  /// validate_grammar has something to report.
  static Grammar unchecked(std::vector<RawSymbol> symbols, std::vector<Production> productions,
                           SymbolId start) {
    Grammar g;
    for (auto& s : symbols) {
      if (!g.by_name_.count(s.name)) g.by_name_.emplace(s.name, static_cast<SymbolId>(g.names_.size()));
      g.names_.push_back(std::move(s.name));
      g.kinds_.push_back(s.kind);
    }
    g.productions_ = std::move(productions);
    g.start_ = start;
    return g;
  }

  std::size_t symbol_count() const { return names_.size(); }

  const std::string& name(SymbolId id) const {
    check_id(id);
    return names_[id];
  }

  SymbolKind kind(SymbolId id) const {
    check_id(id);
    return kinds_[id];
  }

  bool is_terminal(SymbolId id) const { return kind(id) == SymbolKind::terminal; }
  bool is_nonterminal(SymbolId id) const { return kind(id) == SymbolKind::nonterminal; }

  /// Id of the named symbol, or kNoSymbol.
  SymbolId find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? kNoSymbol : it->second;
  }

  SymbolId start() const { return start_; }
  const std::vector<Production>& productions() const { return productions_; }

  std::size_t terminal_count() const { return count_kind(SymbolKind::terminal); }
  std::size_t nonterminal_count() const { return count_kind(SymbolKind::nonterminal); }

 private:
  SymbolId intern(SymbolKind k, const std::string& name) {
    if (!valid_symbol_name(name))
      throw std::invalid_argument("symbol name must be non-empty alphanumeric/underscore: '" +
                                  name + "'");
    auto it = by_name_.find(name);
    if (it != by_name_.end()) {
      if (kinds_[it->second] != k)
        throw std::invalid_argument("symbol '" + name + "' already declared with the other kind");
      return it->second;
    }
    const SymbolId id = static_cast<SymbolId>(names_.size());
    names_.push_back(name);
    kinds_.push_back(k);
    by_name_.emplace(name, id);
    return id;
  }

  void check_id(SymbolId id) const {
    if (id >= names_.size()) throw std::out_of_range("symbol id out of range");
  }

  std::size_t count_kind(SymbolKind k) const {
    std::size_t c = 0;
    for (SymbolKind x : kinds_) {
      if (x == k) ++c;
    }
    return c;
  }

  std::vector<std::string> names_;
  std::vector<SymbolKind> kinds_;
  std::unordered_map<std::string, SymbolId> by_name_;
  std::vector<Production> productions_;
  SymbolId start_ = kNoSymbol;
};

/// Sum over productions of (1 + |rhs|); the lhs symbol counts.
inline std::size_t grammar_size(const Grammar& g) {
  std::size_t total = 0;
  for (const auto& p : g.productions()) total += 1 + p.rhs.size();
  return total;
}

/// True iff every rhs is exactly two nonterminals or exactly one terminal.
inline bool is_cnf(const Grammar& g) {
  for (const auto& p : g.productions()) {
    if (p.rhs.size() == 1) {
      if (!g.is_terminal(p.rhs[0])) return false;
    } else if (p.rhs.size() == 2) {
      if (!g.is_nonterminal(p.rhs[0]) || !g.is_nonterminal(p.rhs[1])) return false;
    } else {
      return false;
    }
  }
  return true;
}

/// Structural validation. Returns an empty list for a well-formed grammar,
/// otherwise one message per violation. Reachability is not checked.
inline std::vector<std::string> validate_grammar(const Grammar& g) {
  std::vector<std::string> out;
  const std::size_t n = g.symbol_count();

  std::unordered_map<std::string, SymbolId> seen;
  for (SymbolId id = 0; id < n; ++id) {
    const std::string& nm = g.name(id);
    if (!Grammar::valid_symbol_name(nm))
      out.push_back("invalid symbol name: '" + nm + "'");
    auto [it, fresh] = seen.emplace(nm, id);
    if (!fresh) out.push_back("duplicate symbol name: '" + nm + "'");
  }

  if (g.start() >= n)
    out.push_back("start symbol undeclared");
  else if (!g.is_nonterminal(g.start()))
    out.push_back("start symbol is not a nonterminal");

  for (std::size_t i = 0; i < g.productions().size(); ++i) {
    const auto& p = g.productions()[i];
    const std::string where = "production " + std::to_string(i) + ": ";
    if (p.lhs >= n)
      out.push_back(where + "undeclared symbol in lhs");
    else if (!g.is_nonterminal(p.lhs))
      out.push_back(where + "lhs is not a nonterminal");
    if (p.rhs.empty()) out.push_back(where + "epsilon production not representable");
    for (SymbolId s : p.rhs) {
      if (s >= n) {
        out.push_back(where + "undeclared symbol in rhs");
        break;
      }
    }
  }
  return out;
}

}  // namespace bmmparse
