#include <algorithm>
#include <sstream>

#include "dcl/grammar.hpp"

namespace dcl {

  namespace {

    bool single_char_terminals(SymbolTable const& sy) {
      auto const& ts = sy.names(SymbolKind::terminal);
      return std::all_of(ts.begin(), ts.end(),
                         [](std::string const& t) { return t.size() == 1; });
    }

    std::string quoted(SymbolTable const& sy, Word const& w) {
      return "\"" + print_word(sy, w) + "\"";
    }

    void header(std::ostream& os, SymbolTable const& sy, Symbol start) {
      auto line = [&](char const* key, SymbolKind k) {
        auto const& names = sy.names(k);
        if (names.empty()) {
          return;
        }
        os << key;
        for (auto const& n : names) {
          os << ' ' << n;
        }
        os << '\n';
      };
      line("nonterminals", SymbolKind::nonterminal);
      os << "start " << sy.nonterminal(start) << '\n';
      line("terminals", SymbolKind::terminal);
      line("stack", SymbolKind::stack);
    }

    void print_rhs(std::ostream& os, SymbolTable const& sy,
                   std::vector<RhsItem> const& rhs) {
      if (rhs.empty()) {
        os << " \"\"";
        return;
      }
      std::size_t i = 0;
      while (i < rhs.size()) {
        if (!rhs[i].terminal) {
          os << ' ' << sy.nonterminal(rhs[i].sym);
          ++i;
          continue;
        }
        Word w;
        while (i < rhs.size() && rhs[i].terminal) {
          w.push_back(rhs[i++].sym);
        }
        os << ' ' << quoted(sy, w);
      }
    }

  }  // namespace

  std::string print_word(SymbolTable const& symbols, Word const& w) {
    std::string out;
    bool        compact = single_char_terminals(symbols);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0 && !compact) {
        out += ' ';
      }
      out += symbols.terminal(w[i]);
    }
    return out;
  }

  std::string print_grammar(IndexedGrammar const& g) {
    std::ostringstream os;
    auto const&        sy = g.symbols;
    header(os, sy, g.start);
    for (auto const& p : g.productions) {
      std::visit(
          [&](auto const& r) {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, TerminalRule>) {
              os << sy.nonterminal(r.lhs) << " -> " << quoted(sy, r.word);
            } else if constexpr (std::is_same_v<R, BinaryRule>) {
              os << sy.nonterminal(r.lhs) << " -> " << sy.nonterminal(r.left)
                 << ' ' << sy.nonterminal(r.right);
            } else if constexpr (std::is_same_v<R, PushRule>) {
              os << sy.nonterminal(r.lhs) << " -> " << sy.nonterminal(r.rhs)
                 << " + " << sy.stack_symbol(r.sym);
            } else {
              os << sy.nonterminal(r.lhs) << " - " << sy.stack_symbol(r.sym)
                 << " -> " << sy.nonterminal(r.rhs);
            }
          },
          p);
      os << '\n';
    }
    return os.str();
  }

  std::string print_grammar(SugaredGrammar const& g) {
    std::ostringstream os;
    auto const&        sy = g.symbols;
    header(os, sy, g.start);
    for (auto const& d : g.dfas) {
      os << "dfa " << d.name << " {\n  states";
      for (auto const& s : d.states) {
        os << ' ' << s;
      }
      os << ";\n  init " << d.states[d.initial] << ";\n";
      if (!d.finals.empty()) {
        os << "  final";
        for (auto q : d.finals) {
          os << ' ' << d.states[q];
        }
        os << ";\n";
      }
      for (auto const& [key, q] : d.delta) {
        os << "  " << d.states[key.first] << ' ' << d.alphabet[key.second]
           << ' ' << d.states[q] << ";\n";
      }
      os << "}\n";
    }
    for (auto const& r : g.rules) {
      os << sy.nonterminal(r.lhs);
      switch (r.kind) {
        case SugaredRule::Kind::plain:
          os << " ->";
          print_rhs(os, sy, r.rhs);
          break;
        case SugaredRule::Kind::pop:
          os << " - " << sy.stack_symbol(r.sym) << " ->";
          print_rhs(os, sy, r.rhs);
          break;
        case SugaredRule::Kind::push:
          os << " -> " << sy.nonterminal(r.rhs.at(0).sym) << " + "
             << sy.stack_symbol(r.sym);
          break;
        case SugaredRule::Kind::check:
          os << " -> " << sy.nonterminal(r.rhs.at(0).sym) << " check";
          for (auto i : r.checks) {
            os << ' ' << g.dfas[i].name;
          }
          break;
      }
      os << '\n';
    }
    return os.str();
  }

  SugaredGrammar to_sugared(IndexedGrammar const& g) {
    SugaredGrammar out;
    out.symbols = g.symbols;
    out.start   = g.start;
    for (auto const& p : g.productions) {
      SugaredRule r;
      std::visit(
          [&](auto const& x) {
            using R = std::decay_t<decltype(x)>;
            r.lhs   = x.lhs;
            if constexpr (std::is_same_v<R, TerminalRule>) {
              r.kind = SugaredRule::Kind::plain;
              for (auto t : x.word) {
                r.rhs.push_back({true, t});
              }
            } else if constexpr (std::is_same_v<R, BinaryRule>) {
              r.kind = SugaredRule::Kind::plain;
              r.rhs  = {{false, x.left}, {false, x.right}};
            } else if constexpr (std::is_same_v<R, PushRule>) {
              r.kind = SugaredRule::Kind::push;
              r.sym  = x.sym;
              r.rhs  = {{false, x.rhs}};
            } else {
              r.kind = SugaredRule::Kind::pop;
              r.sym  = x.sym;
              r.rhs  = {{false, x.rhs}};
            }
          },
          p);
      out.rules.push_back(std::move(r));
    }
    return out;
  }

}  // namespace dcl
