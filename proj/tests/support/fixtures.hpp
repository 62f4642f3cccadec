#ifndef DCL_TESTS_FIXTURES_HPP_
#define DCL_TESTS_FIXTURES_HPP_

#include <string>
#include <vector>

#include "dcl/families.hpp"

namespace dcl::test {

  // {b, ba, baba}: two pops of the same letter with different arities.
  inline std::string g1_mut_text() {
    return "start S\n"
           "terminals a b\n"
           "stack f\n"
           "S -> A + f\n"
           "S -> \"b\"\n"
           "A - f -> B\n"
           "A - f -> B B\n"
           "B -> \"ba\"\n";
  }

  // a b^k c: the stack height counts the b's.
  inline std::string loop_mut_text() {
    return "start S\n"
           "terminals a b c\n"
           "stack f g\n"
           "S -> S + f\n"
           "S -> T + g\n"
           "T -> A B\n"
           "A - g -> A\n"
           "A - f -> A\n"
           "A -> \"a\"\n"
           "B - g -> C\n"
           "C - f -> \"b\" C\n"
           "C -> \"c\"\n";
  }

  inline std::string empty_text() {
    return "start S\n"
           "terminals a\n"
           "stack f\n"
           "S -> S + f\n";
  }

  struct Fixture {
    std::string name;
    std::string text;
    // Stack height bound for the oracles. Every subword of length <= 6 of
    // the language is reachable below it.
    std::size_t height;
  };

  // The oracle-equivalence corpus.
  inline std::vector<Fixture> corpus() {
    return {
        {"g1", g1_text(), 2},
        // a needs one push
        {"loop", loop_text(), 3},
        // a^6 b^36 covers every a^i b^j with i + j <= 6 and needs 7 pushes
        {"square", square_grammar_text(), 9},
        {"g1_mut", g1_mut_text(), 2},
        // a b^5 c needs 6 pushes
        {"loop_mut", loop_mut_text(), 8},
    };
  }

}  // namespace dcl::test

#endif  // DCL_TESTS_FIXTURES_HPP_
