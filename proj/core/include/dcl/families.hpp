#ifndef DCL_FAMILIES_HPP_
#define DCL_FAMILIES_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "dcl/grammar.hpp"

namespace dcl {

  // Letter names of the counter alphabet: inc1 .. incn.
  std::string counter_letter(std::size_t j);

  // The two-state automaton tracking bit i (1-based) of an n-bit counter.
  PartialDfa counter_dfa(std::size_t n, std::size_t i);
  // Throws std::invalid_argument when n == 0.
  std::vector<PartialDfa> counter_dfas(std::size_t n);

  // Stack symbol names: "bot", "<letter>.<bit>" and "hash.<bit>".
  std::string bottom_symbol();
  std::string digit_symbol(std::string const& letter, int bit);

  // Automata over the stack alphabet that read the counter letters with an
  // arbitrary bit and then the bottom marker. With `padded`, an extra digit
  // over the letter "hash" must precede the bottom marker.
  std::vector<PartialDfa> bottom_marked_dfas(std::size_t n, bool padded = false);

  // The grammar family with L(G_n) = {a^(2^(2^(2^n)))}. The stack holds 2^n
  // digits above the bottom marker.
  std::string     grammar_gn_text(std::size_t n);
  SugaredGrammar  grammar_gn(std::size_t n);

  // {a^n b^(n*n) | n >= 0}.
  std::string     square_grammar_text();
  SugaredGrammar  example_grammar_square();

  // Small fixtures: {ab} and {a}.
  std::string g1_text();
  std::string loop_text();

}  // namespace dcl

#endif  // DCL_FAMILIES_HPP_
