#ifndef DCL_AUTOMATA_HPP_
#define DCL_AUTOMATA_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcl/common.hpp"

namespace dcl {

  inline constexpr Symbol kEpsilon = kNoSymbol;

  // Nondeterministic automaton with epsilon transitions. Letters index
  // `alphabet`.
  struct Nfa {
    struct Transition {
      Symbol      letter;  // kEpsilon for an epsilon transition
      std::size_t target;
      friend bool operator==(Transition const&, Transition const&) = default;
    };

    std::vector<std::string>             alphabet;
    std::vector<std::vector<Transition>> out;
    std::vector<std::size_t>             initial;
    std::vector<bool>                    final;

    Nfa() = default;
    explicit Nfa(std::vector<std::string> sigma) : alphabet(std::move(sigma)) {}

    std::size_t num_states() const noexcept {
      return out.size();
    }
    std::size_t num_transitions() const;
    std::size_t add_state(bool is_final = false);
    void        add_transition(std::size_t p, Symbol a, std::size_t q) {
      out[p].push_back({a, q});
    }
    // Appends a copy of `other` (same alphabet) and returns the state
    // offset; initial and final flags of the copy are not carried over.
    std::size_t embed(Nfa const& other);

    std::vector<std::size_t> finals() const;
  };

  // Deterministic automaton with a total transition function.
  struct Dfa {
    std::vector<std::string>              alphabet;
    std::vector<std::vector<std::size_t>> delta;  // [state][letter]
    std::size_t                           initial = 0;
    std::vector<bool>                     final;

    std::size_t num_states() const noexcept {
      return delta.size();
    }
    // States from which a final state is reachable.
    std::size_t num_live_states() const;
    bool        accepts(Word const& w) const;
    Nfa         to_nfa() const;
  };

  inline constexpr std::size_t kDefaultDfaCap = 100'000;

  // Subwords of w.
  Nfa word_subword_nfa(Word const& w, std::vector<std::string> alphabet);
  // An automaton for exactly {w}.
  Nfa word_nfa(Word const& w, std::vector<std::string> alphabet);
  // Gamma^* for the given letters.
  Nfa star_nfa(std::vector<Symbol> const& letters,
               std::vector<std::string>   alphabet);
  Nfa empty_nfa(std::vector<std::string> alphabet);

  // Adds an epsilon transition parallel to every letter transition.
  Nfa dcl_close(Nfa const& n);

  std::vector<std::size_t> epsilon_closure(Nfa const&               n,
                                           std::vector<std::size_t> states);
  bool nfa_member(Nfa const& n, Word const& w);

  // Rewrites n over `alphabet`, which must contain every letter of n.
  Nfa with_alphabet(Nfa const& n, std::vector<std::string> const& alphabet);
  // Sorted union of the two alphabets.
  std::vector<std::string> merge_alphabets(std::vector<std::string> const& a,
                                           std::vector<std::string> const& b);

  // Reachable subset construction; the empty subset is the dead state.
  // Throws CapExceeded("max-dfa-states").
  Dfa determinize(Nfa const& n, std::size_t cap = kDefaultDfaCap);
  // Moore refinement over the reachable part; keeps a dead state if needed.
  Dfa minimize(Dfa const& d);

  struct Inclusion {
    bool                holds = true;
    std::optional<Word> counterexample;  // shortest, then lexicographic
  };

  // L(a) subset of L(b), over the union of both alphabets.
  Inclusion nfa_inclusion(Nfa const& a, Nfa const& b,
                          std::size_t cap = kDefaultDfaCap);
  // Counterexample is in exactly one of the two languages.
  Inclusion nfa_equivalence(Nfa const& a, Nfa const& b,
                            std::size_t cap = kDefaultDfaCap);

  struct LongestWord {
    enum class Kind { empty, finite, infinite };
    Kind        kind   = Kind::empty;
    std::size_t length = 0;
  };

  // Length of the longest accepted word, or infinite if a cycle reading at
  // least one letter lies on an accepting path.
  LongestWord longest_word_or_infinite(Nfa const& n);

  // Removes states that are not both reachable and co-reachable.
  Nfa trim(Nfa const& n);

  std::string print_word(std::vector<std::string> const& alphabet,
                         Word const&                     w);
  // Letters as names; splits per character when every name has length 1,
  // otherwise on whitespace. Throws Error on an unknown letter.
  Word parse_word(std::vector<std::string> const& alphabet,
                  std::string const&              text);

}  // namespace dcl

#endif  // DCL_AUTOMATA_HPP_
