#include <doctest.h>

#include <random>

#include "dcl/analysis.hpp"
#include "dcl/cfg.hpp"
#include "dcl/summary.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace dcl;

namespace {

  std::vector<std::string> const ab{"a", "b"};

  struct Built {
    IndexedGrammar   g;
    Analysis         an;
    AnnotatedGrammar ag;
    StackMonoid      mon;
    SummaryStore     store;
    SummaryGraph     graph;
    TripleCfg        tc;

    explicit Built(std::string const& text)
        : g(load_grammar(text)),
          an(g),
          ag(build_annotated(an)),
          mon(an, ag.letters),
          store((mon.close(), mon)),
          graph(build_summary_graph(store)),
          tc(build_cfg(ag, graph)) {}
  };

  std::set<Word> nfa_language(Nfa const& n, std::size_t k) {
    std::set<Word> out;
    for (auto const& w : test::all_words(n.alphabet.size(), k)) {
      if (nfa_member(n, w)) {
        out.insert(w);
      }
    }
    return out;
  }

}  // namespace

TEST_CASE("G1 triple grammar") {
  Built b(g1_text());
  CHECK(b.tc.cfg.nonterminals.size() == 3);
  CHECK(b.tc.triples.size() == 3);
  CHECK(b.tc.cfg.rules.size() == 3);
  CHECK(cfg_words(b.tc.cfg, 6) == std::set<Word>{{0, 1}});
}

TEST_CASE("triple grammars sit between the language and its closure") {
  for (auto const& fx : test::corpus()) {
    CAPTURE(fx.name);
    Built        b(fx.text);
    OracleBudget budget{5, fx.height, 2'000'000};
    auto         plain = enumerate_words(b.g, budget).words;
    auto         dcl   = dcl_words(b.g, budget, b.an.certifier()).words;
    auto         words = cfg_words(b.tc.cfg, 5);
    for (auto const& w : plain) {
      CHECK(words.count(w) == 1);
    }
    std::set<Word> closure(dcl.begin(), dcl.end());
    for (auto const& w : words) {
      CHECK(closure.count(w) == 1);
    }
    CHECK(trim_cfg(b.tc.cfg).rules.size() == b.tc.cfg.rules.size());
  }
}

TEST_CASE("parse and print") {
  auto c = parse_cfg("S -> a S b | eps\nT -> T T | a |\n", ab);
  CHECK(c.nonterminals == std::vector<std::string>{"S", "T"});
  CHECK(c.rules.size() == 5);
  CHECK(cfg_words(c, 4) == std::set<Word>{{}, {0, 1}, {0, 0, 1, 1}});
  auto again = parse_cfg(print_cfg(c), ab);
  CHECK(again.nonterminals == c.nonterminals);
  CHECK(again.rules == c.rules);
  CHECK(Cfg::kind(c.rules[0]) == Cfg::Kind::other);
  CHECK(Cfg::kind(c.rules[1]) == Cfg::Kind::terminal);
  CHECK(Cfg::kind(c.rules[2]) == Cfg::Kind::binary);
}

TEST_CASE("trim") {
  auto c = parse_cfg("S -> a | S U | V\nU -> U b\nV -> b\nW -> a\n", ab);
  auto t = trim_cfg(c);
  CHECK(t.nonterminals == std::vector<std::string>{"S", "V"});
  CHECK(t.rules.size() == 3);
  CHECK(cfg_words(t, 4) == cfg_words(c, 4));

  auto dead = trim_cfg(parse_cfg("S -> S a\n", ab));
  CHECK(dead.nonterminals.size() == 1);
  CHECK(dead.rules.empty());
  CHECK(cfg_words(dead, 3).empty());
}

TEST_CASE("an unproductive triple is trimmed away") {
  Built b(g1_text());
  auto  c = b.tc.cfg;
  auto  x = static_cast<Symbol>(c.nonterminals.size());
  c.nonterminals.push_back("junk");
  c.rules.push_back({c.start, {{false, x}}});
  c.rules.push_back({x, {{false, x}, {true, 0}}});
  auto t = trim_cfg(c);
  CHECK(t.nonterminals.size() == b.tc.cfg.nonterminals.size());
  CHECK(t.rules.size() == b.tc.cfg.rules.size());
}

TEST_CASE("closure automata of canonical grammars") {
  struct Case {
    char const*    text;
    std::set<Word> expected;  // closure up to length 3
  };
  auto a_star_b_star = [] {
    std::set<Word> s;
    for (auto const& w : test::all_words(2, 3)) {
      if (std::is_sorted(w.begin(), w.end())) {
        s.insert(w);
      }
    }
    return s;
  }();
  std::vector<Case> cases{
      {"S -> a S b | eps\n", a_star_b_star},
      {"S -> S S | a\n", {{}, {0}, {0, 0}, {0, 0, 0}}},
      {"S -> a b | b a\n", {{}, {0}, {1}, {0, 1}, {1, 0}}},
      {"S -> a S | b S | eps\n", {}},
  };
  for (auto const& w : test::all_words(2, 3)) {
    cases.back().expected.insert(w);
  }
  for (auto const& c : cases) {
    CAPTURE(c.text);
    auto n = cfg_dcl_nfa(trim_cfg(parse_cfg(c.text, ab)));
    CHECK(nfa_language(n, 3) == c.expected);
  }
  auto a_n_b_n = cfg_dcl_nfa(trim_cfg(parse_cfg("S -> a S b | eps\n", ab)));
  CHECK(longest_word_or_infinite(a_n_b_n).kind == LongestWord::Kind::infinite);
  auto finite = cfg_dcl_nfa(trim_cfg(parse_cfg("S -> a b | b a\n", ab)));
  CHECK(longest_word_or_infinite(finite).length == 2);
  auto none = cfg_dcl_nfa(trim_cfg(parse_cfg("S -> S a\n", ab)));
  CHECK(longest_word_or_infinite(none).kind == LongestWord::Kind::empty);
}

TEST_CASE("closure automata of random grammars") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 80; ++t) {
    auto c = trim_cfg(test::random_cfg(rng, 4, 7));
    auto n = cfg_dcl_nfa(c);
    CHECK(nfa_language(n, 7) == test::cfg_language(c, 7, true));
    CHECK(nfa_equivalence(dcl_close(n), n).holds);
  }
}

TEST_CASE("triple cap") {
  Built b(test::loop_mut_text());
  CHECK_THROWS_AS(build_cfg(b.ag, b.graph, 2), CapExceeded);
}
