#ifndef DCL_ORACLE_HPP_
#define DCL_ORACLE_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dcl/grammar.hpp"

namespace dcl {

  // A terminal letter or a term A[z] of a sentential form.
  struct FormItem {
    bool   terminal = false;
    Symbol sym      = 0;
    Stack  stack;  // empty for terminals

    static FormItem letter(Symbol t) {
      return {true, t, {}};
    }
    static FormItem term(Symbol a, Stack z = {}) {
      return {false, a, std::move(z)};
    }

    friend auto operator<=>(FormItem const&, FormItem const&) = default;
    friend bool operator==(FormItem const&, FormItem const&)  = default;
  };

  using SententialForm = std::vector<FormItem>;

  std::string print_form(SymbolTable const& symbols, SententialForm const& u);

  struct OracleBudget {
    std::size_t max_word_len     = 6;
    std::size_t max_stack_height = 4;
    std::size_t max_steps        = 1'000'000;
  };

  // Set of words stored as a prefix tree.
  class WordTrie {
   public:
    WordTrie() : _nodes(1) {}

    // Returns true if w was not present.
    bool insert(Word const& w);
    bool contains(Word const& w) const;
    std::size_t size() const noexcept {
      return _size;
    }
    // Shortlex order.
    std::vector<Word> words() const;

   private:
    struct Node {
      std::map<Symbol, std::size_t> next;
      bool                          end = false;
    };
    std::vector<Node> _nodes;
    std::size_t       _size = 0;
  };

  // One-step successors, sorted and without duplicates.
  std::vector<SententialForm> derive_successors(SententialForm const& u,
                                                IndexedGrammar const& g);

  struct WordSet {
    std::vector<Word> words;  // shortlex
    bool              complete = true;
  };

  struct Enumeration {
    WordSet words;
    // witnesses[i] is a leftmost derivation of words.words[i], starting with
    // the start form and ending with the word.
    std::vector<std::vector<SententialForm>> witnesses;
  };

  // Leftmost breadth-first search for terminal words of length at most
  // budget.max_word_len. `complete` is false if a push above the height
  // bound or the step cap cut the search.
  Enumeration enumerate_words_traced(IndexedGrammar const& g,
                                     SententialForm const& start,
                                     OracleBudget const&   budget);
  WordSet     enumerate_words(IndexedGrammar const& g,
                              SententialForm const& start,
                              OracleBudget const&   budget);
  WordSet     enumerate_words(IndexedGrammar const& g, OracleBudget const& budget);

  // Returns true when the term A[z] is known to derive no terminal word. Used
  // to discharge pushes cut by the height bound.
  using UnproductiveCertifier = std::function<bool(Symbol, Stack const&)>;

  using TermKey = std::pair<Symbol, Stack>;

  struct TermLanguages {
    std::map<TermKey, std::set<Word>> table;
    // Keys whose value may miss words because of the height bound.
    std::set<TermKey> underapproximated;

    std::set<Word> const& at(Symbol a, Stack const& z) const;
    bool                  exact(Symbol a, Stack const& z) const {
      return underapproximated.count({a, z}) == 0;
    }
  };

  struct DpOptions {
    std::vector<TermKey>  roots;  // default: the start symbol, empty stack
    bool                  downward_closed = false;
    UnproductiveCertifier certifier;
  };

  // Least fixpoint of the per-term language equations over keys with stack
  // height at most budget.max_stack_height, words truncated to
  // budget.max_word_len. In downward-closed mode each value is the set of
  // subwords of the term language, truncated the same way.
  TermLanguages term_language_dp(IndexedGrammar const& g,
                                 OracleBudget const&   budget,
                                 DpOptions const&      options = {});

  struct LengthSet {
    std::set<std::uint64_t> lengths;
    bool                    complete = true;
  };

  // Same fixpoint with word sets replaced by length sets. Lengths above
  // max_length are dropped and clear `complete`.
  LengthSet term_length_dp(IndexedGrammar const&        g,
                           std::size_t                  max_stack_height,
                           std::uint64_t                max_length,
                           UnproductiveCertifier const& certifier = {});
  LengthSet term_length_dp(IndexedGrammar const&        g,
                           TermKey const&               root,
                           std::size_t                  max_stack_height,
                           std::uint64_t                max_length,
                           UnproductiveCertifier const& certifier = {});

  bool is_subword(Word const& u, Word const& v);

  struct DclAnswer {
    bool member   = false;
    bool complete = true;
  };

  // Membership in the downward closure of L(g). A positive answer is always
  // sound; `complete` is false only for a negative answer reached under
  // pruning.
  DclAnswer dcl_member_oracle(IndexedGrammar const&        g,
                              Word const&                  w,
                              OracleBudget const&          budget,
                              UnproductiveCertifier const& certifier = {});

  // The downward closure of L(g) restricted to words of length at most
  // budget.max_word_len.
  WordSet dcl_words(IndexedGrammar const&        g,
                    OracleBudget const&          budget,
                    UnproductiveCertifier const& certifier = {});

}  // namespace dcl

#endif  // DCL_ORACLE_HPP_
