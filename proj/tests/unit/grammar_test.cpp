#include <doctest.h>

#include "dcl/families.hpp"
#include "dcl/grammar.hpp"
#include "dcl/oracle.hpp"
#include "fixtures.hpp"

using namespace dcl;

namespace {

  std::size_t count_kind(IndexedGrammar const& g, std::size_t kind) {
    std::size_t n = 0;
    for (auto const& p : g.productions) {
      n += p.index() == kind ? 1 : 0;
    }
    return n;
  }

  WordSet words(IndexedGrammar const& g, std::size_t len = 6, std::size_t h = 8) {
    return enumerate_words(g, {len, h, 2'000'000});
  }

}  // namespace

TEST_CASE("parse G1") {
  auto s = parse_grammar(g1_text());
  CHECK(s.symbols.names(SymbolKind::nonterminal) == std::vector<std::string>{"S", "A", "B"});
  CHECK(s.symbols.names(SymbolKind::terminal) == std::vector<std::string>{"a", "b"});
  CHECK(s.symbols.names(SymbolKind::stack) == std::vector<std::string>{"f"});
  CHECK(s.rules.size() == 3);
  CHECK(s.rules[0].kind == SugaredRule::Kind::push);
  CHECK(s.rules[1].kind == SugaredRule::Kind::pop);
  CHECK(s.rules[2].kind == SugaredRule::Kind::plain);
}

TEST_CASE("parse errors carry positions") {
  SUBCASE("undeclared nonterminal") {
    auto text = "start A\nterminals x\nnonterminals A\nA -> B\n";
    CHECK_THROWS_AS(parse_grammar(text), ParseError);
    try {
      parse_grammar(text);
    } catch (ParseError const& e) {
      CHECK(e.line() == 4);
      CHECK(std::string(e.what()).find("undeclared") != std::string::npos);
    }
  }
  SUBCASE("duplicate declaration") {
    CHECK_THROWS_AS(parse_grammar("start S\nterminals a a\nS -> \"a\"\n"), ParseError);
  }
  SUBCASE("syntax") {
    CHECK_THROWS_AS(parse_grammar("start S\nterminals a\nS -> \"a\n"), ParseError);
    CHECK_THROWS_AS(parse_grammar("start S\nterminals a\nS => a\n"), ParseError);
  }
  SUBCASE("undeclared stack symbol") {
    CHECK_THROWS_AS(parse_grammar("start S\nterminals a\nS -> S + g\n"), ParseError);
  }
}

TEST_CASE("square example has eight sugared rules") {
  auto s = example_grammar_square();
  CHECK(s.rules.size() == 8);
  CHECK(parse_grammar(square_grammar_text()) == s);
}

TEST_CASE("desugar: terminal-word chain") {
  auto g = desugar(parse_grammar(
      "start A\nterminals x y\nnonterminals A A1\nA -> \"x\" A1 \"y\"\nA1 -> \"x\"\n"));
  auto const& sy = g.symbols;
  auto nt = [&](char const* n) { return *sy.find(SymbolKind::nonterminal, n); };
  auto has = [&](Production const& p) {
    return std::find(g.productions.begin(), g.productions.end(), p) != g.productions.end();
  };
  CHECK(has(BinaryRule{nt("A"), nt("_r0_W0"), nt("_r0_B1")}));
  CHECK(has(BinaryRule{nt("_r0_B1"), nt("A1"), nt("_r0_W1")}));
  CHECK(has(TerminalRule{nt("_r0_W0"), {0}}));
  CHECK(has(TerminalRule{nt("_r0_W1"), {1}}));
  CHECK(g.productions.size() == 5);
}

TEST_CASE("desugar: unary rule gets an empty partner") {
  auto g  = desugar(parse_grammar("start A\nterminals x\nA -> B\nB -> \"x\"\n"));
  auto nt = [&](char const* n) { return *g.symbols.find(SymbolKind::nonterminal, n); };
  CHECK(g.productions.size() == 3);
  CHECK(std::find(g.productions.begin(), g.productions.end(),
                  Production{BinaryRule{nt("A"), nt("B"), nt("_r0_E")}})
        != g.productions.end());
  CHECK(std::find(g.productions.begin(), g.productions.end(),
                  Production{TerminalRule{nt("_r0_E"), {}}})
        != g.productions.end());
}

TEST_CASE("desugar: check rule gadget") {
  auto g = desugar(parse_grammar(
      "start A\nterminals x\nstack f g\nA -> B check M\nB -> \"x\"\n"
      "dfa M { states p q; init p; final q; p f q; }\n"));
  auto nt  = [&](char const* n) { return *g.symbols.find(SymbolKind::nonterminal, n); };
  auto has = [&](Production const& p) {
    return std::find(g.productions.begin(), g.productions.end(), p) != g.productions.end();
  };
  CHECK(has(BinaryRule{nt("A"), nt("_r0_D1"), nt("_r0_C1")}));
  CHECK(has(PopRule{nt("_M_p"), 0, nt("_M_q")}));
  CHECK(has(TerminalRule{nt("_M_q"), {}}));
  CHECK(count_kind(g, 3) == 1);

  // A[z] derives x exactly when some prefix of z is accepted by M.
  auto a = nt("A");
  OracleBudget b{4, 2, 100'000};
  std::vector<Word> x{{0}};
  CHECK(enumerate_words(g, {FormItem::term(a, {0})}, b).words == x);
  CHECK(enumerate_words(g, {FormItem::term(a, {0, 1})}, b).words == x);
  CHECK(enumerate_words(g, {FormItem::term(a, {})}, b).words.empty());
  CHECK(enumerate_words(g, {FormItem::term(a, {1, 0})}, b).words.empty());
}

TEST_CASE("desugar is deterministic and within the size bound") {
  for (auto const& text : {g1_text(), loop_text(), square_grammar_text(), grammar_gn_text(1)}) {
    auto s = parse_grammar(text);
    auto g = desugar(s);
    CHECK(g == desugar(parse_grammar(text)));
    std::size_t in = s.symbols.num_nonterminals() + s.rules.size();
    for (auto const& r : s.rules) {
      in += r.rhs.size();
    }
    CHECK(g.size() <= 8 * in + 8 * s.rules.size() + 8 * s.dfas.size() * 16);
    for (auto const& p : g.productions) {
      CHECK(p.index() < 4);
    }
  }
}

TEST_CASE("desugaring preserves the language") {
  // Sugared semantics is defined by desugaring; compare against known sets.
  CHECK(words(load_grammar(square_grammar_text())).words
        == std::vector<Word>{{}, {0, 1}, {0, 0, 1, 1, 1, 1}});
  CHECK(words(load_grammar(test::g1_mut_text())).words
        == std::vector<Word>{{1}, {1, 0}, {1, 0, 1, 0}});
  CHECK(words(load_grammar(test::loop_mut_text()), 5).words
        == std::vector<Word>{{0, 2}, {0, 1, 2}, {0, 1, 1, 2}, {0, 1, 1, 1, 2}});
}

TEST_CASE("label_pushes") {
  SUBCASE("G1 gets its unique labeling") {
    auto g = label_pushes(desugar(parse_grammar(g1_text())));
    REQUIRE(g.push_labels);
    REQUIRE(g.push_labels->size() == 1);
    CHECK((*g.push_labels)[0] == PushLabel{0, 1});
    CHECK(validate(g).empty());
  }
  SUBCASE("two pushers of one symbol are split") {
    auto text =
        "start S\nterminals a b\nstack f\nnonterminals S A C B D\n"
        "S -> A C\nA -> B + f\nC -> D + f\nB - f -> \"a\"\nD - f -> \"b\"\n"
        "B -> \"b\"\n";
    auto plain = desugar(parse_grammar(text));
    auto g     = label_pushes(plain);
    CHECK(g.symbols.num_stack_symbols() == 2);
    REQUIRE(g.push_labels);
    CHECK((*g.push_labels)[0].alpha != (*g.push_labels)[1].alpha);
    CHECK(count_kind(g, 3) == 4);
    CHECK(validate(g).empty());
    CHECK(words(g).words == words(plain).words);
  }
  SUBCASE("unpushed symbols are removed") {
    auto g = load_grammar("start S\nterminals a\nstack f g\nS -> \"a\"\nS - g -> S\n");
    CHECK(g.symbols.num_stack_symbols() == 0);
    CHECK(count_kind(g, 3) == 0);
  }
  SUBCASE("preserves languages of the fixtures") {
    for (auto const& fx : test::corpus()) {
      auto plain = desugar(parse_grammar(fx.text));
      auto g     = label_pushes(plain);
      CHECK(words(g, 6, fx.height).words == words(plain, 6, fx.height).words);
      std::vector<int> pushers(g.symbols.num_stack_symbols());
      for (auto const& p : g.productions) {
        if (auto const* r = std::get_if<PushRule>(&p)) {
          ++pushers[r->sym];
        }
      }
      for (auto k : pushers) {
        CHECK(k == 1);
      }
    }
  }
}

TEST_CASE("validate") {
  auto g = load_grammar(g1_text());
  CHECK(validate(g).empty());

  auto bad_start  = g;
  bad_start.start = 7;
  CHECK(validate(bad_start).size() == 1);

  auto bad_label = g;
  (*bad_label.push_labels)[0].beta = 2;
  auto d = validate(bad_label);
  REQUIRE(d.size() == 1);
  CHECK(d[0].find("'f'") != std::string::npos);
  CHECK(d[0].find("push label") != std::string::npos);
}

TEST_CASE("print and parse round trip") {
  for (auto const& text : {g1_text(), loop_text(), square_grammar_text(),
                           test::g1_mut_text(), test::loop_mut_text(), grammar_gn_text(1)}) {
    auto s = parse_grammar(text);
    CHECK(parse_grammar(print_grammar(s)) == s);
    auto g = desugar(s);
    CHECK(desugar(parse_grammar(print_grammar(g))) == g);
  }
}
