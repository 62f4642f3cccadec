#include <doctest.h>

#include <random>

#include "dcl/summary.hpp"
#include "fixtures.hpp"

using namespace dcl;

namespace {

  struct Setup {
    IndexedGrammar   g;
    Analysis         an;
    AnnotatedGrammar ag;
    StackMonoid      mon;
    SummaryStore     store;

    explicit Setup(std::string const& text)
        : g(load_grammar(text)),
          an(g),
          ag(build_annotated(an)),
          mon(an, ag.letters),
          store((mon.close(), mon)) {}
  };

  // A random stack built by pushing generators while the image stays non-zero.
  AnnotatedStack random_feasible(StackMonoid& mon, std::size_t len, std::mt19937_64& rng) {
    auto const&    gens = mon.generator_letters();
    AnnotatedStack z;
    for (std::size_t tries = 0; z.size() < len && tries < 20 * len; ++tries) {
      auto l = gens[rng() % gens.size()];
      AnnotatedStack y{l};
      y.insert(y.end(), z.begin(), z.end());
      if (mon.phi_word(y) != StackMonoid::kZero) {
        z = std::move(y);
      }
    }
    return z;
  }

}  // namespace

TEST_CASE("G1 summary graph") {
  Setup s(g1_text());
  auto  sb = s.an.universe_index(s.an.useful());
  auto  gr = build_summary_graph(s.store);
  REQUIRE(gr.nodes.size() == 2);
  CHECK(gr.nodes[0] == SummaryStore::kEmpty);
  auto one = s.store.push({0, sb}, SummaryStore::kEmpty);
  CHECK(gr.nodes[1] == one);
  CHECK(gr.push(0, {0, sb}) == std::optional<std::size_t>{1});
  CHECK_FALSE(gr.push(1, {0, sb}));
  CHECK(gr.pop({0, sb}, 1) == std::vector<std::size_t>{0});
  CHECK(gr.pop({0, sb}, 0).empty());
  CHECK(s.store.size(one) == 1);
  CHECK(s.store.depth(one) == 1);
  CHECK(s.store.leftmost(one) == std::optional<Letter>{Letter{0, sb}});
  CHECK_FALSE(s.store.leftmost(SummaryStore::kEmpty));
}

TEST_CASE("G_loop summaries are periodic") {
  Setup  s(loop_text());
  Letter l{0, 0};
  auto   e = s.mon.phi_letter(l);
  REQUIRE(s.store.group_count() == 3);

  std::vector<SummaryStore::Id> seq{SummaryStore::kEmpty};
  std::vector<std::vector<std::string>> traces{{}};
  for (int k = 1; k <= 40; ++k) {
    std::vector<std::string> tr;
    seq.push_back(s.store.push(l, seq.back(), &tr));
    traces.push_back(tr);
  }
  for (std::size_t k = 1; k <= 6; ++k) {
    CHECK(s.store.node(seq[k]).atoms.size() == k);
    CHECK(s.store.node(seq[k]).blocks.empty());
  }
  // The seventh letter closes 2|N| + 1 groups into a block.
  auto const& n7 = s.store.node(seq[7]);
  CHECK(n7.atoms.empty());
  REQUIRE(n7.blocks.size() == 1);
  auto const& b = s.store.block(n7.blocks[0]);
  CHECK(b.u.size() == 3);
  CHECK(b.v.size() == 3);
  CHECK(b.w.empty());
  CHECK(b.idem == e);
  for (auto const& g : b.u) {
    CHECK(g.size() == 1);
  }
  CHECK(traces[7] == std::vector<std::string>{"b.i.B"});
  CHECK(traces[14] == std::vector<std::string>{"b.i.A"});

  std::size_t max_size = 0;
  for (std::size_t k = 1; k < seq.size(); ++k) {
    CHECK(s.store.phi(seq[k]) == e);
    max_size = std::max(max_size, s.store.size(seq[k]));
    if (k >= 7 && k + 7 < seq.size()) {
      CHECK(seq[k + 7] == seq[k]);
    }
  }
  CHECK(max_size == 13);

  auto gr = build_summary_graph(s.store);
  CHECK(gr.nodes.size() == 14);
  CHECK(gr.pop(l, *gr.find(seq[7])).size() == 2);
}

TEST_CASE("summary graphs are consistent") {
  for (auto const& fx : test::corpus()) {
    CAPTURE(fx.name);
    Setup s(fx.text);
    auto  gr = build_summary_graph(s.store);
    CHECK(gr.nodes.size() == gr.level.size());
    for (std::size_t n = 0; n < gr.nodes.size(); ++n) {
      CHECK(s.store.validate(gr.nodes[n]).empty());
      for (auto const& e : gr.push_edges[n]) {
        CHECK(s.store.push(e.letter, gr.nodes[n]) == gr.nodes[e.target]);
        CHECK(s.store.leftmost(gr.nodes[e.target]) == std::optional<Letter>{e.letter});
        auto back = gr.pop(e.letter, e.target);
        CHECK(std::find(back.begin(), back.end(), n) != back.end());
        CHECK(gr.level[e.target] <= gr.level[n] + 1);
      }
      for (auto l : s.mon.generator_letters()) {
        auto t = s.store.push(l, gr.nodes[n]);
        CHECK((s.store.phi(t) != StackMonoid::kZero) == gr.push(n, l).has_value());
      }
    }
  }
}

TEST_CASE("summaries preserve the monoid image") {
  std::mt19937_64 rng(53);
  for (auto const& fx : test::corpus()) {
    CAPTURE(fx.name);
    Setup s(fx.text);
    for (int i = 0; i < 100; ++i) {
      auto z = random_feasible(s.mon, 1 + rng() % 20, rng);
      auto t = s.store.push_word(z);
      CHECK(s.store.phi(t) == s.mon.phi_word(z));
      CHECK(s.store.validate(t).empty());
      if (!z.empty()) {
        CHECK(s.store.leftmost(t) == std::optional<Letter>{z.front()});
        CHECK(s.store.depth(t) == s.mon.depth(s.mon.phi_word(z)));
      }
    }
  }
}

TEST_CASE("summaries do not depend on interning order") {
  std::mt19937_64 rng(59);
  Setup           a(test::loop_mut_text());
  Setup           b(test::loop_mut_text());
  build_summary_graph(b.store);
  for (int i = 0; i < 50; ++i) {
    auto z = random_feasible(a.mon, 1 + rng() % 15, rng);
    CHECK(a.store.print(a.store.push_word(z)) == b.store.print(b.store.push_word(z)));
  }
}

TEST_CASE("summary cap") {
  Setup s(loop_text());
  CHECK_THROWS_AS(build_summary_graph(s.store, 3), CapExceeded);
}
