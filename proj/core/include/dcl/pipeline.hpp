#ifndef DCL_PIPELINE_HPP_
#define DCL_PIPELINE_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcl/analysis.hpp"
#include "dcl/automata.hpp"
#include "dcl/cfg.hpp"
#include "dcl/monoid.hpp"
#include "dcl/summary.hpp"

namespace dcl {

  struct Caps {
    std::size_t universe   = kDefaultUniverseCap;
    std::size_t monoid     = kDefaultMonoidCap;
    std::size_t summaries  = kDefaultSummaryCap;
    std::size_t triples    = kDefaultTripleCap;
    std::size_t dfa_states = kDefaultDfaCap;
  };

  struct PipelineReport {
    struct Stage {
      std::string name;
      double      millis = 0;
    };
    std::vector<Stage> stages;

    std::size_t grammar_size          = 0;
    std::size_t universe_size         = 0;
    std::size_t annotated_nonterminals = 0;
    std::size_t monoid_size           = 0;
    std::size_t jlength               = 0;
    std::size_t summary_nodes         = 0;
    std::size_t summary_edges         = 0;
    std::size_t max_summary_size      = 0;
    std::size_t cfg_nonterminals      = 0;
    std::size_t cfg_rules             = 0;
    std::size_t nfa_states            = 0;
    std::size_t nfa_transitions       = 0;

    bool                       empty_language = false;  // short-circuited
    std::optional<std::string> cap_hit;                 // name of the cap
    std::optional<std::size_t> cap_limit;

    bool complete() const noexcept {
      return !cap_hit.has_value();
    }
  };

  struct PipelineResult {
    PipelineReport report;
    Cfg            cfg;  // trimmed triple grammar
    Nfa            nfa;  // valid when report.complete()
  };

  // Runs analysis through cfg_dcl_nfa on a push-labeled grammar. A cap that
  // fires stops the run and is recorded in the report instead of thrown.
  PipelineResult run_pipeline(IndexedGrammar const& g, Caps const& caps = {});
  // Parses, desugars and labels first; throws ParseError or ValidationError.
  PipelineResult run_pipeline(std::string_view text, Caps const& caps = {});

}  // namespace dcl

#endif  // DCL_PIPELINE_HPP_
