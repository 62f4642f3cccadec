#ifndef DCL_TESTS_ORACLES_HPP_
#define DCL_TESTS_ORACLES_HPP_

// Brute-force reference implementations. None of them calls into the
// library algorithm it is used to check.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dcl/cfg.hpp"
#include "dcl/grammar.hpp"

namespace dcl::test {

  // Every word over `letters` symbols of length at most k, shortlex.
  std::vector<Word> all_words(std::size_t letters, std::size_t k);

  // u is a scattered subword of v, by the LCS table.
  bool subword_dp(Word const& u, Word const& v);

  // All subwords of the given words.
  std::set<Word> downward(std::set<Word> const& words);

  // w in L(c), or in the downward closure of L(c) when `optional` is set,
  // by a span fixpoint over all positions of w.
  bool cfg_derives(Cfg const& c, Word const& w, bool optional = false);

  // Words of length at most k over the terminals of c accepted by
  // cfg_derives.
  std::set<Word> cfg_language(Cfg const& c, std::size_t k, bool optional = false);

  // A random CFG over {a, b} with at most `max_nt` nonterminals and
  // `max_rules` rules, right-hand sides of length at most 3.
  Cfg random_cfg(std::mt19937_64& rng, std::size_t max_nt, std::size_t max_rules);

  // Words over the union alphabet of the automata accepted by all of them,
  // up to length k.
  std::vector<std::vector<std::string>> common_words(
      std::vector<PartialDfa> const& dfas, std::size_t k);

  // A single term with its stack, index 0 the top.
  struct Term {
    Symbol nt;
    Stack  stack;
    friend auto operator<=>(Term const&, Term const&) = default;
  };

  // Some sentential form derivable from `from` contains `to`. Searches
  // ancestor chains with stacks of height at most `height`.
  bool term_path(IndexedGrammar const& g, Term const& from, Term const& to,
                 std::size_t height);

  // Terms A[z] with |z| <= height that derive a word over X and T in which
  // every nonterminal has an empty stack.
  class GenTable {
   public:
    GenTable(IndexedGrammar const& g, std::vector<bool> x, std::size_t height);

    bool operator()(Symbol a, Stack const& z) const;

    // A[z] derives u C v with u, v over X and T; C has an empty stack.
    bool focus(Symbol a, Stack const& z, Symbol c) const;

   private:
    IndexedGrammar const& _g;
    std::vector<bool>     _x;
    std::size_t           _height;
    std::set<Term>        _gen;
  };

  // Parses space-separated letters over the given alphabet.
  Word word_of(std::vector<std::string> const& alphabet, std::string const& s);

}  // namespace dcl::test

#endif  // DCL_TESTS_ORACLES_HPP_
