#include <algorithm>
#include <set>

#include "dcl/grammar.hpp"

namespace dcl {

  Symbol SymbolTable::add(SymbolKind kind, std::string const& name) {
    if (auto it = _index.find(name); it != _index.end()) {
      if (it->second.first != kind) {
        throw ValidationError("symbol '" + name
                              + "' is used with two different kinds");
      }
      return it->second.second;
    }
    auto& v  = _names[static_cast<int>(kind)];
    auto  id = static_cast<Symbol>(v.size());
    v.push_back(name);
    _index.emplace(name, std::make_pair(kind, id));
    return id;
  }

  std::optional<Symbol> SymbolTable::find(SymbolKind       kind,
                                          std::string_view name) const {
    auto it = _index.find(std::string(name));
    if (it == _index.end() || it->second.first != kind) {
      return std::nullopt;
    }
    return it->second.second;
  }

  std::optional<SymbolKind> SymbolTable::kind_of(std::string_view name) const {
    auto it = _index.find(std::string(name));
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second.first;
  }

  std::string SymbolTable::fresh_name(std::string base) const {
    while (_index.count(base) != 0) {
      base += '\'';
    }
    return base;
  }

  Symbol lhs_of(Production const& p) {
    return std::visit([](auto const& r) { return r.lhs; }, p);
  }

  std::size_t IndexedGrammar::size() const {
    std::size_t n = symbols.num_nonterminals() + productions.size();
    for (auto const& p : productions) {
      if (auto const* t = std::get_if<TerminalRule>(&p)) {
        n += t->word.size();
      }
    }
    return n;
  }

  RuleIndex::RuleIndex(IndexedGrammar const& g) {
    auto const n = g.num_nonterminals();
    terminal_by_lhs.resize(n);
    binary_by_lhs.resize(n);
    push_by_lhs.resize(n);
    pop_by_lhs.resize(n);
    for (auto const& p : g.productions) {
      std::visit(
          [&](auto const& r) {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, TerminalRule>) {
              terminal_by_lhs[r.lhs].push_back(terminal.size());
              terminal.push_back(r);
            } else if constexpr (std::is_same_v<R, BinaryRule>) {
              binary_by_lhs[r.lhs].push_back(binary.size());
              binary.push_back(r);
            } else if constexpr (std::is_same_v<R, PushRule>) {
              push_by_lhs[r.lhs].push_back(push.size());
              push.push_back(r);
            } else {
              pop_by_lhs[r.lhs].push_back(pop.size());
              pop.push_back(r);
            }
          },
          p);
    }
  }

  std::optional<std::size_t> PartialDfa::letter(std::string_view n) const {
    auto it = std::find(alphabet.begin(), alphabet.end(), n);
    if (it == alphabet.end()) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - alphabet.begin());
  }

  std::optional<std::size_t> PartialDfa::step(std::size_t q,
                                              std::size_t a) const {
    auto it = delta.find({q, a});
    if (it == delta.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  bool PartialDfa::is_final(std::size_t q) const {
    return std::find(finals.begin(), finals.end(), q) != finals.end();
  }

  bool PartialDfa::accepts(std::vector<std::string> const& word) const {
    std::size_t q = initial;
    for (auto const& x : word) {
      auto a = letter(x);
      if (!a) {
        return false;
      }
      auto next = step(q, *a);
      if (!next) {
        return false;
      }
      q = *next;
    }
    return is_final(q);
  }

  std::vector<std::string> validate(IndexedGrammar const& g) {
    std::vector<std::string> diags;
    auto const&              sy = g.symbols;
    auto const               nN = sy.num_nonterminals();
    auto const               nT = sy.num_terminals();
    auto const               nI = sy.num_stack_symbols();

    {
      std::set<std::string> seen;
      for (auto k : {SymbolKind::nonterminal, SymbolKind::terminal,
                     SymbolKind::stack}) {
        for (auto const& name : sy.names(k)) {
          if (name.empty()
              || name.find_first_of(" \t\r\n\"") != std::string::npos) {
            diags.push_back("invalid identifier '" + name + "'");
          }
          if (!seen.insert(name).second) {
            diags.push_back("symbol '" + name + "' declared twice");
          }
        }
      }
    }

    if (g.start >= nN) {
      diags.push_back("start symbol is not a declared nonterminal");
    }

    auto describe = [&](std::size_t i) {
      return "production #" + std::to_string(i);
    };
    for (std::size_t i = 0; i < g.productions.size(); ++i) {
      auto const& p  = g.productions[i];
      bool        ok = std::visit(
          [&](auto const& r) {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, TerminalRule>) {
              return r.lhs < nN
                     && std::all_of(r.word.begin(), r.word.end(),
                                    [&](Symbol t) { return t < nT; });
            } else if constexpr (std::is_same_v<R, BinaryRule>) {
              return r.lhs < nN && r.left < nN && r.right < nN;
            } else if constexpr (std::is_same_v<R, PushRule>) {
              return r.lhs < nN && r.rhs < nN && r.sym < nI;
            } else {
              return r.lhs < nN && r.rhs < nN && r.sym < nI;
            }
          },
          p);
      if (!ok) {
        diags.push_back(describe(i) + " references an undeclared symbol");
      }
    }

    if (g.push_labels) {
      auto const& labels = *g.push_labels;
      if (labels.size() != nI) {
        diags.push_back("push labels are not total on the stack alphabet");
      } else {
        std::vector<bool> pushed(nI, false);
        for (std::size_t i = 0; i < g.productions.size(); ++i) {
          if (auto const* r = std::get_if<PushRule>(&g.productions[i])) {
            if (r->sym >= nI) {
              continue;
            }
            pushed[r->sym] = true;
            auto const& l  = labels[r->sym];
            if (l.alpha != r->lhs || l.beta != r->rhs) {
              diags.push_back(describe(i) + " (push of '"
                              + sy.stack_symbol(r->sym)
                              + "') is inconsistent with its push label");
            }
          }
        }
        for (Symbol f = 0; f < nI; ++f) {
          if (!pushed[f]) {
            diags.push_back("stack symbol '" + sy.stack_symbol(f)
                            + "' is never pushed");
          }
        }
      }
    }
    return diags;
  }

  IndexedGrammar load_grammar(std::string_view text) {
    auto g     = label_pushes(desugar(parse_grammar(text)));
    auto diags = validate(g);
    if (!diags.empty()) {
      throw ValidationError(diags.front());
    }
    return g;
  }

}  // namespace dcl
