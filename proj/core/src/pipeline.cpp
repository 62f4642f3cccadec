#include <algorithm>
#include <chrono>

#include "dcl/annotate.hpp"
#include "dcl/pipeline.hpp"

namespace dcl {

  namespace {

    class Stopwatch {
     public:
      explicit Stopwatch(PipelineReport& r) : _r(r) {}

      template <class F>
      decltype(auto) stage(char const* name, F&& f) {
        auto const t0 = std::chrono::steady_clock::now();
        struct Record {
          PipelineReport&                       r;
          char const*                           name;
          std::chrono::steady_clock::time_point t0;
          ~Record() {
            std::chrono::duration<double, std::milli> d =
                std::chrono::steady_clock::now() - t0;
            r.stages.push_back({name, d.count()});
          }
        } rec{_r, name, t0};
        return f();
      }

     private:
      PipelineReport& _r;
    };

  }  // namespace

  PipelineResult run_pipeline(IndexedGrammar const& g, Caps const& caps) {
    PipelineResult out;
    auto&          rep = out.report;
    auto const     terminals = g.symbols.names(SymbolKind::terminal);
    rep.grammar_size         = g.size();
    out.nfa                  = empty_nfa(terminals);
    Stopwatch sw(rep);

    try {
      Analysis an(g);
      if (an.is_empty()) {
        rep.empty_language = true;
        return out;
      }
      auto const ag = sw.stage("annotate", [&] { return build_annotated(an, caps.universe); });
      rep.universe_size          = an.universe().size();
      rep.annotated_nonterminals = ag.nonterminals.size();

      StackMonoid mon(an, ag.letters);
      sw.stage("monoid", [&] { mon.close(caps.monoid); });
      rep.monoid_size = mon.closed_size();
      rep.jlength     = mon.jlength();

      SummaryStore store(mon);
      auto const   graph = sw.stage("summaries", [&] {
        return build_summary_graph(store, caps.summaries);
      });
      rep.summary_nodes = graph.nodes.size();
      rep.summary_edges = graph.num_edges();
      for (auto s : graph.nodes) {
        rep.max_summary_size = std::max(rep.max_summary_size, store.size(s));
      }

      out.cfg = sw.stage("cfg", [&] {
        return trim_cfg(build_cfg(ag, graph, caps.triples).cfg);
      });
      rep.cfg_nonterminals = out.cfg.nonterminals.size();
      rep.cfg_rules        = out.cfg.rules.size();

      out.nfa = sw.stage("dcl-nfa", [&] {
        return with_alphabet(cfg_dcl_nfa(out.cfg, caps.dfa_states), terminals);
      });
      rep.nfa_states      = out.nfa.num_states();
      rep.nfa_transitions = out.nfa.num_transitions();
    } catch (CapExceeded const& e) {
      rep.cap_hit   = e.cap();
      rep.cap_limit = e.limit();
      out.nfa       = empty_nfa(terminals);
    } catch (EmptyLanguage const&) {
      rep.empty_language = true;
    }
    return out;
  }

  PipelineResult run_pipeline(std::string_view text, Caps const& caps) {
    return run_pipeline(load_grammar(text), caps);
  }

}  // namespace dcl
