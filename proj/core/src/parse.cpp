#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "dcl/grammar.hpp"

namespace dcl {

  namespace {

    struct Token {
      enum class Kind { ident, string, lbrace, rbrace, semi, newline, end };
      Kind        kind;
      std::string text;
      std::size_t line;
      std::size_t column;

      bool is(std::string_view s) const {
        return kind == Kind::ident && text == s;
      }
    };

    std::vector<Token> tokenize(std::string_view src) {
      std::vector<Token> out;
      std::size_t        line = 1, col = 1, i = 0;
      auto               advance = [&] {
        if (src[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
        ++i;
      };
      while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
          out.push_back({Token::Kind::newline, "", line, col});
          advance();
        } else if (std::isspace(static_cast<unsigned char>(c))) {
          advance();
        } else if (c == '#') {
          while (i < src.size() && src[i] != '\n') {
            advance();
          }
        } else if (c == '"') {
          auto l = line, k = col;
          advance();
          std::string text;
          while (i < src.size() && src[i] != '"' && src[i] != '\n') {
            text += src[i];
            advance();
          }
          if (i >= src.size() || src[i] != '"') {
            throw ParseError("unterminated string literal", l, k);
          }
          advance();
          out.push_back({Token::Kind::string, std::move(text), l, k});
        } else if (c == '{' || c == '}' || c == ';') {
          auto kind = c == '{'   ? Token::Kind::lbrace
                      : c == '}' ? Token::Kind::rbrace
                                 : Token::Kind::semi;
          out.push_back({kind, std::string(1, c), line, col});
          advance();
        } else {
          auto        l = line, k = col;
          std::string text;
          while (i < src.size()
                 && !std::isspace(static_cast<unsigned char>(src[i]))
                 && std::string_view("\"{};#").find(src[i])
                        == std::string_view::npos) {
            text += src[i];
            advance();
          }
          out.push_back({Token::Kind::ident, std::move(text), l, k});
        }
      }
      out.push_back({Token::Kind::end, "", line, col});
      return out;
    }

    [[noreturn]] void fail(Token const& t, std::string const& msg) {
      throw ParseError(msg, t.line, t.column);
    }

    struct RawDfa {
      Token                                              name;
      std::vector<Token>                                 states;
      std::optional<Token>                               init;
      std::vector<Token>                                 finals;
      std::vector<std::array<Token, 3>>                  transitions;
    };

    struct RawRule {
      Token              lhs;
      std::optional<Token> pop;
      std::vector<Token> rhs;
    };

    struct Statement {
      enum class Kind { start, terminals, stack, nonterminals, rule, dfa };
      Kind               kind;
      std::vector<Token> args;
      RawRule            rule;
      std::size_t        dfa = 0;
    };

    class Parser {
     public:
      explicit Parser(std::vector<Token> toks) : _toks(std::move(toks)) {}

      SugaredGrammar run() {
        while (peek().kind != Token::Kind::end) {
          if (peek().kind == Token::Kind::newline) {
            ++_pos;
            continue;
          }
          statement();
        }
        return resolve();
      }

     private:
      Token const& peek() const {
        return _toks[_pos];
      }
      Token const& next() {
        return _toks[_pos++];
      }
      bool at_line_end() const {
        auto k = peek().kind;
        return k == Token::Kind::newline || k == Token::Kind::end;
      }

      std::vector<Token> rest_of_line() {
        std::vector<Token> out;
        while (!at_line_end()) {
          auto const& t = next();
          if (t.kind != Token::Kind::ident && t.kind != Token::Kind::string) {
            fail(t, "unexpected '" + t.text + "'");
          }
          out.push_back(t);
        }
        return out;
      }

      void statement() {
        Token const& head = next();
        if (head.kind != Token::Kind::ident) {
          fail(head, "expected a declaration or a rule");
        }
        Statement st;
        if (head.is("start")) {
          st.kind = Statement::Kind::start;
          st.args = rest_of_line();
          if (st.args.size() != 1) {
            fail(head, "'start' takes exactly one nonterminal");
          }
        } else if (head.is("terminals")) {
          st.kind = Statement::Kind::terminals;
          st.args = rest_of_line();
        } else if (head.is("stack")) {
          st.kind = Statement::Kind::stack;
          st.args = rest_of_line();
        } else if (head.is("nonterminals")) {
          st.kind = Statement::Kind::nonterminals;
          st.args = rest_of_line();
        } else if (head.is("dfa")) {
          st.kind = Statement::Kind::dfa;
          st.dfa  = _dfas.size();
          _dfas.push_back(dfa_block(head));
        } else {
          st.kind     = Statement::Kind::rule;
          st.rule.lhs = head;
          if (peek().is("-")) {
            ++_pos;
            if (peek().kind != Token::Kind::ident) {
              fail(peek(), "expected a stack symbol after '-'");
            }
            st.rule.pop = next();
          }
          if (!peek().is("->")) {
            fail(peek(), "expected '->'");
          }
          ++_pos;
          st.rule.rhs = rest_of_line();
          if (st.rule.rhs.empty()) {
            fail(head, "empty right-hand side (write \"\" for epsilon)");
          }
        }
        for (auto const& a : st.args) {
          if (a.kind != Token::Kind::ident) {
            fail(a, "expected an identifier");
          }
        }
        _stmts.push_back(std::move(st));
      }

      RawDfa dfa_block(Token const& head) {
        RawDfa d;
        if (peek().kind != Token::Kind::ident) {
          fail(head, "expected a DFA name");
        }
        d.name = next();
        while (peek().kind == Token::Kind::newline) {
          ++_pos;
        }
        if (peek().kind != Token::Kind::lbrace) {
          fail(peek(), "expected '{'");
        }
        ++_pos;
        while (true) {
          std::vector<Token> item;
          while (peek().kind != Token::Kind::semi
                 && peek().kind != Token::Kind::rbrace) {
            auto const& t = next();
            if (t.kind == Token::Kind::newline) {
              continue;
            }
            if (t.kind != Token::Kind::ident) {
              fail(t, "unexpected token in DFA block");
            }
            item.push_back(t);
          }
          bool closing = peek().kind == Token::Kind::rbrace;
          ++_pos;
          if (!item.empty()) {
            auto const& k = item.front();
            if (k.is("states")) {
              d.states.insert(d.states.end(), item.begin() + 1, item.end());
            } else if (k.is("init")) {
              if (item.size() != 2) {
                fail(k, "'init' takes exactly one state");
              }
              d.init = item[1];
            } else if (k.is("final")) {
              d.finals.insert(d.finals.end(), item.begin() + 1, item.end());
            } else if (item.size() == 3) {
              d.transitions.push_back({item[0], item[1], item[2]});
            } else {
              fail(k, "expected 'states', 'init', 'final' or a transition");
            }
          }
          if (closing) {
            break;
          }
          if (peek().kind == Token::Kind::end) {
            fail(peek(), "unterminated DFA block");
          }
        }
        if (!d.init) {
          fail(d.name, "DFA '" + d.name.text + "' has no initial state");
        }
        return d;
      }

      SugaredGrammar resolve();

      std::vector<Token>     _toks;
      std::size_t            _pos = 0;
      std::vector<Statement> _stmts;
      std::vector<RawDfa>    _dfas;
    };

    SugaredGrammar Parser::resolve() {
      SugaredGrammar g;
      auto&          sy = g.symbols;

      // Terminals and stack symbols first so rule bodies can be classified.
      std::optional<Token> start;
      for (auto const& st : _stmts) {
        if (st.kind == Statement::Kind::terminals
            || st.kind == Statement::Kind::stack) {
          auto kind = st.kind == Statement::Kind::terminals
                          ? SymbolKind::terminal
                          : SymbolKind::stack;
          for (auto const& a : st.args) {
            if (sy.kind_of(a.text)) {
              fail(a, "duplicate symbol declaration '" + a.text + "'");
            }
            sy.add(kind, a.text);
          }
        } else if (st.kind == Statement::Kind::start) {
          if (start) {
            fail(st.args[0], "duplicate 'start' declaration");
          }
          start = st.args[0];
        }
      }
      if (!start) {
        throw ParseError("missing 'start' declaration", 1, 1);
      }

      std::unordered_set<std::string> declared;
      for (auto const& st : _stmts) {
        if (st.kind == Statement::Kind::nonterminals) {
          for (auto const& a : st.args) {
            if (!declared.insert(a.text).second) {
              fail(a, "duplicate symbol declaration '" + a.text + "'");
            }
          }
        } else if (st.kind == Statement::Kind::rule) {
          declared.insert(st.rule.lhs.text);
        }
      }

      auto nonterminal = [&](Token const& t) -> Symbol {
        auto k = sy.kind_of(t.text);
        if (k && *k != SymbolKind::nonterminal) {
          fail(t, "'" + t.text + "' is not a nonterminal");
        }
        if (t.kind != Token::Kind::ident || t.is("->") || t.is("+")
            || t.is("-") || t.is("check")) {
          fail(t, "expected a nonterminal");
        }
        if (declared.count(t.text) == 0) {
          fail(t, "undeclared nonterminal '" + t.text + "'");
        }
        return sy.add(SymbolKind::nonterminal, t.text);
      };
      auto stack_symbol = [&](Token const& t) -> Symbol {
        auto s = sy.find(SymbolKind::stack, t.text);
        if (!s) {
          fail(t, "undeclared stack symbol '" + t.text + "'");
        }
        return *s;
      };
      auto split_word = [&](Token const& t) -> std::vector<RhsItem> {
        std::vector<RhsItem>     out;
        std::vector<std::string> parts;
        bool has_space = t.text.find_first_of(" \t") != std::string::npos;
        bool all_single = std::all_of(
            sy.names(SymbolKind::terminal).begin(),
            sy.names(SymbolKind::terminal).end(),
            [](std::string const& s) { return s.size() == 1; });
        if (has_space) {
          std::size_t i = 0;
          while (i < t.text.size()) {
            while (i < t.text.size() && std::isspace(t.text[i])) {
              ++i;
            }
            std::size_t j = i;
            while (j < t.text.size() && !std::isspace(t.text[j])) {
              ++j;
            }
            if (j > i) {
              parts.push_back(t.text.substr(i, j - i));
            }
            i = j;
          }
        } else if (all_single) {
          for (char c : t.text) {
            parts.emplace_back(1, c);
          }
        } else if (!t.text.empty()) {
          parts.push_back(t.text);
        }
        for (auto const& p : parts) {
          auto s = sy.find(SymbolKind::terminal, p);
          if (!s) {
            fail(t, "undeclared terminal '" + p + "'");
          }
          out.push_back({true, *s});
        }
        return out;
      };

      // Nonterminal ids follow first appearance in the text.
      std::unordered_map<std::string, std::size_t> dfa_index;
      for (std::size_t i = 0; i < _dfas.size(); ++i) {
        if (!dfa_index.emplace(_dfas[i].name.text, i).second) {
          fail(_dfas[i].name,
               "duplicate DFA name '" + _dfas[i].name.text + "'");
        }
      }

      for (auto const& st : _stmts) {
        if (st.kind == Statement::Kind::nonterminals) {
          for (auto const& a : st.args) {
            nonterminal(a);
          }
          continue;
        }
        if (st.kind == Statement::Kind::start) {
          g.start = nonterminal(st.args[0]);
          continue;
        }
        if (st.kind == Statement::Kind::dfa) {
          auto const& raw = _dfas[st.dfa];
          PartialDfa  d;
          d.name = raw.name.text;
          std::unordered_map<std::string, std::size_t> state;
          for (auto const& s : raw.states) {
            if (!state.emplace(s.text, d.states.size()).second) {
              fail(s, "duplicate DFA state '" + s.text + "'");
            }
            d.states.push_back(s.text);
          }
          auto state_of = [&](Token const& t) {
            auto it = state.find(t.text);
            if (it == state.end()) {
              fail(t, "undeclared DFA state '" + t.text + "'");
            }
            return it->second;
          };
          d.initial = state_of(*raw.init);
          for (auto const& f : raw.finals) {
            d.finals.push_back(state_of(f));
          }
          for (auto const& [p, f, q] : raw.transitions) {
            stack_symbol(f);
            auto a = d.letter(f.text);
            if (!a) {
              a = d.alphabet.size();
              d.alphabet.push_back(f.text);
            }
            if (!d.delta.emplace(std::make_pair(state_of(p), *a), state_of(q))
                     .second) {
              fail(p, "nondeterministic transition in DFA '" + d.name + "'");
            }
          }
          g.dfas.push_back(std::move(d));
          continue;
        }
        if (st.kind != Statement::Kind::rule) {
          continue;
        }
        auto const& raw = st.rule;
        SugaredRule r;
        r.line = raw.lhs.line;
        r.lhs  = nonterminal(raw.lhs);
        auto const& rhs = raw.rhs;
        if (raw.pop) {
          r.kind = SugaredRule::Kind::pop;
          r.sym  = stack_symbol(*raw.pop);
        } else if (rhs.size() == 3 && rhs[1].is("+")) {
          r.kind = SugaredRule::Kind::push;
          r.rhs.push_back({false, nonterminal(rhs[0])});
          r.sym = stack_symbol(rhs[2]);
          g.rules.push_back(std::move(r));
          continue;
        } else if (rhs.size() >= 3 && rhs[1].is("check")) {
          r.kind = SugaredRule::Kind::check;
          r.rhs.push_back({false, nonterminal(rhs[0])});
          for (std::size_t i = 2; i < rhs.size(); ++i) {
            auto it = dfa_index.find(rhs[i].text);
            if (it == dfa_index.end()) {
              fail(rhs[i], "undeclared DFA '" + rhs[i].text + "'");
            }
            r.checks.push_back(it->second);
          }
          g.rules.push_back(std::move(r));
          continue;
        } else {
          r.kind = SugaredRule::Kind::plain;
        }
        for (auto const& t : rhs) {
          if (t.kind == Token::Kind::string) {
            auto w = split_word(t);
            r.rhs.insert(r.rhs.end(), w.begin(), w.end());
          } else if (auto k = sy.kind_of(t.text);
                     k && *k == SymbolKind::terminal) {
            r.rhs.push_back({true, *sy.find(SymbolKind::terminal, t.text)});
          } else if (k && *k == SymbolKind::stack) {
            fail(t, "stack symbol '" + t.text
                        + "' in a rule body (use 'A -> B + f')");
          } else {
            r.rhs.push_back({false, nonterminal(t)});
          }
        }
        g.rules.push_back(std::move(r));
      }
      return g;
    }

  }  // namespace

  SugaredGrammar parse_grammar(std::string_view text) {
    return Parser(tokenize(text)).run();
  }

}  // namespace dcl
