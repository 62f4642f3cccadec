#ifndef DCL_ANNOTATE_HPP_
#define DCL_ANNOTATE_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dcl/analysis.hpp"
#include "dcl/grammar.hpp"
#include "dcl/oracle.hpp"

namespace dcl {

  // An annotated stack letter (f, X); X is an index into the universe.
  struct Letter {
    Symbol      f = 0;
    std::size_t x = 0;

    friend auto operator<=>(Letter const&, Letter const&) = default;
    friend bool operator==(Letter const&, Letter const&)  = default;
  };

  struct LetterHash {
    std::size_t operator()(Letter const& l) const noexcept {
      auto h = std::hash<std::size_t>{}(l.x);
      hash_combine(h, l.f);
      return h;
    }
  };

  using AnnotatedStack = std::vector<Letter>;  // index 0 is the top

  // The productive annotated grammar, restricted to its reachable part.
  struct AnnotatedGrammar {
    IndexedGrammar grammar;  // push-labeled
    // Origin of every nonterminal (A, X) and stack letter (f, X) of grammar.
    std::vector<std::pair<Symbol, std::size_t>> nonterminals;
    std::vector<Letter>                         letters;
    std::map<std::pair<Symbol, std::size_t>, Symbol> nonterminal_index;
    std::map<Letter, Symbol>                    letter_index;

    std::optional<Symbol> find_nonterminal(Symbol a, std::size_t x) const;
    std::optional<Symbol> find_letter(Letter const& l) const;
  };

  // Throws EmptyLanguage if the start symbol is not useful, CapExceeded if
  // the universe exceeds `universe_cap`. With `reachable_only` unset, every
  // (A, X) with A in X is materialized, reachable or not.
  AnnotatedGrammar build_annotated(Analysis&   an,
                                   std::size_t universe_cap = kDefaultUniverseCap,
                                   bool        reachable_only = true);

  // ann(z, X): the bottom letter carries X, each letter above carries the
  // action of the letters below it.
  AnnotatedStack annotate_stack(Analysis& an, Stack const& z, NtSet const& x);

  // Erases annotations from a sentential form of the annotated grammar.
  SententialForm project(AnnotatedGrammar const& ag, SententialForm const& u);
  Stack          project(AnnotatedStack const& z);

  struct ProductiveReport {
    std::uint64_t            seed       = 0;
    std::size_t              samples    = 0;
    std::size_t              terms      = 0;
    std::vector<std::string> violations;
  };

  // Samples sentential forms reachable from the start in at most `depth`
  // random steps and checks that every term derives a terminal word.
  ProductiveReport check_productive_sample(IndexedGrammar const& g,
                                           std::size_t           depth,
                                           std::size_t           samples,
                                           std::uint64_t         seed = 1);

}  // namespace dcl

#endif  // DCL_ANNOTATE_HPP_
