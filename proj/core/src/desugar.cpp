#include <map>

#include "dcl/grammar.hpp"

namespace dcl {

  namespace {

    class Desugarer {
     public:
      explicit Desugarer(SugaredGrammar const& g) : _g(g) {
        _out.symbols = g.symbols;
        _out.start   = g.start;
      }

      IndexedGrammar run() {
        for (std::size_t r = 0; r < _g.rules.size(); ++r) {
          auto const& rule = _g.rules[r];
          auto const  tag  = "_r" + std::to_string(r);
          switch (rule.kind) {
            case SugaredRule::Kind::push:
              emit(PushRule{rule.lhs, rule.rhs.at(0).sym, rule.sym});
              break;
            case SugaredRule::Kind::pop:
              if (rule.rhs.size() == 1 && !rule.rhs[0].terminal) {
                emit(PopRule{rule.lhs, rule.sym, rule.rhs[0].sym});
              } else {
                auto p = fresh(tag + "_P");
                emit(PopRule{rule.lhs, rule.sym, p});
                plain(p, rule.rhs, tag);
              }
              break;
            case SugaredRule::Kind::plain:
              plain(rule.lhs, rule.rhs, tag);
              break;
            case SugaredRule::Kind::check:
              check(rule, tag);
              break;
          }
        }
        return std::move(_out);
      }

     private:
      Symbol fresh(std::string const& base) {
        return _out.symbols.add(SymbolKind::nonterminal,
                                _out.symbols.fresh_name(base));
      }

      void emit(Production p) {
        _out.productions.push_back(std::move(p));
      }

      void unary(Symbol a, Symbol b, std::string const& tag) {
        auto e = fresh(tag + "_E");
        emit(BinaryRule{a, b, e});
        emit(TerminalRule{e, {}});
      }

      // A -> u for u over N and T.
      void plain(Symbol a, std::vector<RhsItem> const& u,
                 std::string const& tag) {
        std::vector<Symbol> nts;
        std::vector<Word>   words(1);
        for (auto const& x : u) {
          if (x.terminal) {
            words.back().push_back(x.sym);
          } else {
            nts.push_back(x.sym);
            words.emplace_back();
          }
        }
        auto const k = nts.size();
        if (k == 0) {
          emit(TerminalRule{a, words[0]});
          return;
        }
        if (k == 1 && words[0].empty() && words[1].empty()) {
          unary(a, nts[0], tag);
          return;
        }
        if (k == 2 && words[0].empty() && words[1].empty()
            && words[2].empty()) {
          emit(BinaryRule{a, nts[0], nts[1]});
          return;
        }
        // A -> W0 B1, Wi -> wi, Bi -> Ai Ci, Ci -> Wi B(i+1), Bk -> Ak Wk
        std::vector<Symbol> w(k + 1), b(k + 1), c(k + 1);
        for (std::size_t i = 0; i <= k; ++i) {
          w[i] = fresh(tag + "_W" + std::to_string(i));
        }
        for (std::size_t i = 1; i <= k; ++i) {
          b[i] = fresh(tag + "_B" + std::to_string(i));
        }
        for (std::size_t i = 1; i < k; ++i) {
          c[i] = fresh(tag + "_C" + std::to_string(i));
        }
        emit(BinaryRule{a, w[0], b[1]});
        emit(TerminalRule{w[0], words[0]});
        for (std::size_t i = 1; i < k; ++i) {
          emit(BinaryRule{b[i], nts[i - 1], c[i]});
          emit(BinaryRule{c[i], w[i], b[i + 1]});
          emit(TerminalRule{w[i], words[i]});
        }
        emit(BinaryRule{b[k], nts[k - 1], w[k]});
        emit(TerminalRule{w[k], words[k]});
      }

      // A -> D1 C1, Di -> D(i+1) C(i+1), Dr -> B, Ci -> E_init(i).
      void check(SugaredRule const& rule, std::string const& tag) {
        auto const r = rule.checks.size();
        auto const b = rule.rhs.at(0).sym;
        if (r == 0) {
          unary(rule.lhs, b, tag);
          return;
        }
        std::vector<Symbol> d(r + 1), c(r + 1);
        for (std::size_t i = 1; i <= r; ++i) {
          d[i] = fresh(tag + "_D" + std::to_string(i));
          c[i] = fresh(tag + "_C" + std::to_string(i));
        }
        emit(BinaryRule{rule.lhs, d[1], c[1]});
        for (std::size_t i = 1; i < r; ++i) {
          emit(BinaryRule{d[i], d[i + 1], c[i + 1]});
        }
        unary(d[r], b, tag + "_D" + std::to_string(r));
        for (std::size_t i = 1; i <= r; ++i) {
          auto const& states = dfa_states(rule.checks[i - 1]);
          auto const& dfa    = _g.dfas[rule.checks[i - 1]];
          unary(c[i], states[dfa.initial], tag + "_C" + std::to_string(i));
        }
      }

      // One nonterminal per DFA state, shared by every check rule using it.
      std::vector<Symbol> const& dfa_states(std::size_t idx) {
        if (auto it = _dfa_states.find(idx); it != _dfa_states.end()) {
          return it->second;
        }
        auto const&         dfa = _g.dfas[idx];
        std::vector<Symbol> e;
        for (auto const& q : dfa.states) {
          e.push_back(fresh("_" + dfa.name + "_" + q));
        }
        for (auto const& [key, q] : dfa.delta) {
          auto f = _out.symbols.find(SymbolKind::stack,
                                     dfa.alphabet[key.second]);
          if (!f) {
            throw ValidationError("DFA '" + dfa.name
                                  + "' reads undeclared stack symbol '"
                                  + dfa.alphabet[key.second] + "'");
          }
          emit(PopRule{e[key.first], *f, e[q]});
        }
        for (auto q : dfa.finals) {
          emit(TerminalRule{e[q], {}});
        }
        return _dfa_states.emplace(idx, std::move(e)).first->second;
      }

      SugaredGrammar const&                         _g;
      IndexedGrammar                                _out;
      std::map<std::size_t, std::vector<Symbol>>    _dfa_states;
    };

  }  // namespace

  IndexedGrammar desugar(SugaredGrammar const& g) {
    return Desugarer(g).run();
  }

}  // namespace dcl
