#ifndef DCL_GRAMMAR_HPP_
#define DCL_GRAMMAR_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "dcl/common.hpp"

namespace dcl {

  enum class SymbolKind { nonterminal, terminal, stack };

  // Interned names for N, T and I. The three name spaces are kept disjoint.
  class SymbolTable {
   public:
    Symbol add(SymbolKind kind, std::string const& name);
    std::optional<Symbol> find(SymbolKind kind, std::string_view name) const;
    std::optional<SymbolKind> kind_of(std::string_view name) const;

    std::string const& name(SymbolKind kind, Symbol s) const {
      return names(kind)[s];
    }
    std::vector<std::string> const& names(SymbolKind kind) const {
      return _names[static_cast<int>(kind)];
    }
    std::size_t count(SymbolKind kind) const {
      return names(kind).size();
    }

    std::string const& nonterminal(Symbol s) const {
      return name(SymbolKind::nonterminal, s);
    }
    std::string const& terminal(Symbol s) const {
      return name(SymbolKind::terminal, s);
    }
    std::string const& stack_symbol(Symbol s) const {
      return name(SymbolKind::stack, s);
    }
    std::size_t num_nonterminals() const {
      return count(SymbolKind::nonterminal);
    }
    std::size_t num_terminals() const {
      return count(SymbolKind::terminal);
    }
    std::size_t num_stack_symbols() const {
      return count(SymbolKind::stack);
    }

    // A name of the given kind that is not yet used by any kind; `base` is
    // returned when it is free, otherwise primes are appended.
    std::string fresh_name(std::string base) const;

    friend bool operator==(SymbolTable const&, SymbolTable const&) = default;

   private:
    std::vector<std::string>                     _names[3];
    std::unordered_map<std::string, std::pair<SymbolKind, Symbol>> _index;
  };

  struct TerminalRule {
    Symbol lhs;
    Word   word;
    friend bool operator==(TerminalRule const&, TerminalRule const&) = default;
  };

  struct BinaryRule {
    Symbol lhs, left, right;
    friend bool operator==(BinaryRule const&, BinaryRule const&) = default;
  };

  // A -> B f
  struct PushRule {
    Symbol lhs, rhs, sym;
    friend bool operator==(PushRule const&, PushRule const&) = default;
  };

  // A f -> B
  struct PopRule {
    Symbol lhs, sym, rhs;
    friend bool operator==(PopRule const&, PopRule const&) = default;
  };

  using Production = std::variant<TerminalRule, BinaryRule, PushRule, PopRule>;

  Symbol lhs_of(Production const& p);

  // alpha(f) is the unique nonterminal pushing f, beta(f) the one it pushes
  // into.
  struct PushLabel {
    Symbol alpha, beta;
    friend bool operator==(PushLabel const&, PushLabel const&) = default;
  };

  struct IndexedGrammar {
    SymbolTable                           symbols;
    Symbol                                start = 0;
    std::vector<Production>               productions;
    std::optional<std::vector<PushLabel>> push_labels;

    std::size_t num_nonterminals() const {
      return symbols.num_nonterminals();
    }

    // |N| + |P| + sum of terminal-rule lengths.
    std::size_t size() const;

    friend bool operator==(IndexedGrammar const&,
                           IndexedGrammar const&) = default;
  };

  // Productions of a grammar bucketed by kind, for the fixpoint engines.
  struct RuleIndex {
    explicit RuleIndex(IndexedGrammar const& g);

    std::vector<TerminalRule>                terminal;
    std::vector<BinaryRule>                  binary;
    std::vector<PushRule>                    push;
    std::vector<PopRule>                     pop;
    std::vector<std::vector<std::size_t>>    terminal_by_lhs;
    std::vector<std::vector<std::size_t>>    binary_by_lhs;
    std::vector<std::vector<std::size_t>>    push_by_lhs;
    std::vector<std::vector<std::size_t>>    pop_by_lhs;
  };

  // Deterministic automaton with a partial transition function. Letters are
  // names; for check rules they name stack symbols of the grammar.
  struct PartialDfa {
    std::string                                            name;
    std::vector<std::string>                               states;
    std::vector<std::string>                               alphabet;
    std::size_t                                            initial = 0;
    std::vector<std::size_t>                               finals;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> delta;

    std::optional<std::size_t> letter(std::string_view name) const;
    std::optional<std::size_t> step(std::size_t q, std::size_t a) const;
    bool is_final(std::size_t q) const;
    bool accepts(std::vector<std::string> const& word) const;

    friend bool operator==(PartialDfa const&, PartialDfa const&) = default;
  };

  struct RhsItem {
    bool   terminal;
    Symbol sym;
    friend bool operator==(RhsItem const&, RhsItem const&) = default;
  };

  struct SugaredRule {
    enum class Kind { plain, pop, push, check };

    Kind                     kind;
    Symbol                   lhs;
    Symbol                   sym = kNoSymbol;  // pop / push stack symbol
    std::vector<RhsItem>     rhs;  // push and check: a single nonterminal
    std::vector<std::size_t> checks;  // indices into SugaredGrammar::dfas
    std::size_t              line = 0;

    friend bool operator==(SugaredRule const& x, SugaredRule const& y) {
      return x.kind == y.kind && x.lhs == y.lhs && x.sym == y.sym
             && x.rhs == y.rhs && x.checks == y.checks;
    }
  };

  struct SugaredGrammar {
    SymbolTable              symbols;
    Symbol                   start = 0;
    std::vector<SugaredRule> rules;
    std::vector<PartialDfa>  dfas;

    friend bool operator==(SugaredGrammar const&,
                           SugaredGrammar const&) = default;
  };

  // Parses the line-oriented grammar format. Throws ParseError.
  SugaredGrammar parse_grammar(std::string_view text);

  // Rewrites every sugared rule into the four basic production kinds.
  IndexedGrammar desugar(SugaredGrammar const& g);

  // Gives every stack symbol a unique pushing rule and fills push_labels.
  IndexedGrammar label_pushes(IndexedGrammar const& g);

  // One human-readable diagnostic per invariant violation.
  std::vector<std::string> validate(IndexedGrammar const& g);

  // parse + desugar + label_pushes, throwing ValidationError on diagnostics.
  IndexedGrammar load_grammar(std::string_view text);

  std::string print_grammar(IndexedGrammar const& g);
  std::string print_grammar(SugaredGrammar const& g);
  std::string print_word(SymbolTable const& symbols, Word const& w);

  // Embeds a basic grammar into the sugared representation.
  SugaredGrammar to_sugared(IndexedGrammar const& g);

}  // namespace dcl

#endif  // DCL_GRAMMAR_HPP_
