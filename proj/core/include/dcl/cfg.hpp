#ifndef DCL_CFG_HPP_
#define DCL_CFG_HPP_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dcl/annotate.hpp"
#include "dcl/automata.hpp"
#include "dcl/summary.hpp"

namespace dcl {

  // Context-free grammar with arbitrary right-hand sides.
  struct Cfg {
    struct Item {
      bool   terminal = false;
      Symbol sym      = 0;
      friend bool operator==(Item const&, Item const&) = default;
      friend auto operator<=>(Item const&, Item const&) = default;
    };
    struct Rule {
      Symbol            lhs = 0;
      std::vector<Item> rhs;
      friend bool operator==(Rule const&, Rule const&) = default;
    };
    enum class Kind { terminal, binary, unary, other };

    std::vector<std::string> terminals;
    std::vector<std::string> nonterminals;
    Symbol                   start = 0;
    std::vector<Rule>        rules;

    static Kind kind(Rule const& r);
  };

  // Lines `A -> x y z | ...`; `eps` or nothing denotes the empty word.
  // Tokens listed in `terminals` are terminals, all others nonterminals;
  // the first left-hand side is the start symbol.
  Cfg parse_cfg(std::string_view text, std::vector<std::string> const& terminals);
  // In the syntax of parse_cfg, rules of the start symbol first.
  std::string print_cfg(Cfg const& c);

  // Keeps productive nonterminals reachable from the start. If the start is
  // unproductive the result has a single nonterminal and no rules.
  Cfg trim_cfg(Cfg const& c);

  // Words of length at most k generated by the start symbol.
  std::set<Word> cfg_words(Cfg const& c, std::size_t k);

  // An automaton for the downward closure of L(c); c must be trim. The
  // closure of each nonterminal is kept as a union of products of (a + eps)
  // and D* factors; the automaton is built for the start symbol only.
  // Throws CapExceeded("max-dfa-states") if it would exceed `cap` states.
  Nfa cfg_dcl_nfa(Cfg const& c, std::size_t cap = kDefaultDfaCap);

  inline constexpr std::size_t kDefaultTripleCap = 200'000;

  // The grammar over feasible triples (A, X, sigma).
  struct TripleCfg {
    struct Triple {
      Symbol      nonterminal;  // nonterminal of the annotated grammar
      std::size_t node;         // summary graph node
    };
    Cfg                 cfg;
    std::vector<Triple> triples;  // indexed like cfg.nonterminals
  };

  // Throws CapExceeded("max-triples").
  TripleCfg build_cfg(AnnotatedGrammar const& ag, SummaryGraph const& graph,
                      std::size_t cap = kDefaultTripleCap);

}  // namespace dcl

#endif  // DCL_CFG_HPP_
