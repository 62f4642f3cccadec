#include <doctest.h>

#include "dcl/families.hpp"
#include "dcl/oracle.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dcl;

namespace {

  using Names = std::vector<std::string>;

}  // namespace

TEST_CASE("counter automata") {
  // bit 1 flips on inc1 and resets on any higher letter
  auto a1 = counter_dfa(2, 1);
  CHECK(a1.accepts({"inc1"}));
  CHECK_FALSE(a1.accepts({"inc1", "inc1"}));
  CHECK_FALSE(a1.accepts({"inc2"}));
  CHECK_FALSE(a1.accepts({"inc1", "inc2"}));
  CHECK(a1.accepts({"inc1", "inc2", "inc1"}));
  // bit 2 ignores inc1 and may be set only once
  auto a2 = counter_dfa(2, 2);
  CHECK(a2.accepts({"inc2", "inc1"}));
  CHECK(a2.accepts({"inc1", "inc2", "inc1"}));
  CHECK_FALSE(a2.accepts({"inc2", "inc2"}));
  CHECK_FALSE(a2.accepts({"inc1"}));

  CHECK(test::common_words(counter_dfas(1), 4) == std::vector<Names>{{"inc1"}});
  CHECK(test::common_words(counter_dfas(2), 5) == std::vector<Names>{{"inc1", "inc2", "inc1"}});
  auto three = test::common_words(counter_dfas(3), 8);
  REQUIRE(three.size() == 1);
  CHECK(three[0] == Names{"inc1", "inc2", "inc1", "inc3", "inc1", "inc2", "inc1"});
  CHECK_THROWS_AS(counter_dfas(0), std::invalid_argument);
}

TEST_CASE("bottom marked automata") {
  auto bot = bottom_symbol();
  auto d   = [](std::string const& l, int b) { return digit_symbol(l, b); };
  auto b1  = bottom_marked_dfas(1);
  REQUIRE(b1.size() == 1);
  CHECK(b1[0].accepts({d("inc1", 0), bot}));
  CHECK(b1[0].accepts({d("inc1", 1), bot}));
  CHECK_FALSE(b1[0].accepts({bot}));
  CHECK_FALSE(b1[0].accepts({}));
  CHECK_FALSE(b1[0].accepts({d("inc1", 0)}));

  for (auto const& m : bottom_marked_dfas(2)) {
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        CHECK(m.accepts({d("inc1", x), d("inc2", y), d("inc1", 1 - x), bot}));
      }
    }
    CHECK_FALSE(m.accepts({}));
  }

  auto padded = bottom_marked_dfas(1, true);
  CHECK(padded[0].accepts({d("inc1", 1), d("hash", 0), bot}));
  CHECK_FALSE(padded[0].accepts({d("inc1", 1), bot}));
  CHECK_FALSE(padded[0].accepts({d("hash", 0), bot}));
}

TEST_CASE("grammar family") {
  CHECK(grammar_gn_text(1) == grammar_gn_text(1));
  CHECK(grammar_gn_text(2) != grammar_gn_text(1));
  CHECK_THROWS_AS(grammar_gn_text(0), std::invalid_argument);

  auto s = grammar_gn(1);
  CHECK(parse_grammar(grammar_gn_text(1)) == s);
  CHECK(s.dfas.size() == 1);

  auto g = load_grammar(grammar_gn_text(1));
  CHECK(validate(g).empty());
  // Pinned at the first verified build.
  CHECK(g.size() == 38);
  auto g2 = load_grammar(grammar_gn_text(2));
  CHECK(g2.size() > g.size());

  auto dp = term_language_dp(g, {16, 3, 5'000'000}, {{{g.start, {}}}});
  CHECK(dp.at(g.start, {}) == std::set<Word>{Word(16, 0)});
}

TEST_CASE("square example") {
  auto s = example_grammar_square();
  CHECK(parse_grammar(square_grammar_text()) == s);
  auto r = enumerate_words(load_grammar(square_grammar_text()), {6, 8, 1'000'000});
  CHECK(r.words == std::vector<Word>{{}, {0, 1}, {0, 0, 1, 1, 1, 1}});
}
