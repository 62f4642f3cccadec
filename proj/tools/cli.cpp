#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcl/annotate.hpp"
#include "dcl/families.hpp"
#include "dcl/pipeline.hpp"

namespace dcl::cli {

  namespace {

    using json = nlohmann::ordered_json;

    struct InputError : Error {
      using Error::Error;
    };

    struct Options {
      Caps          caps;
      std::uint64_t seed   = 1;
      std::string   format = "json";
    };

    std::string read_file(std::string const& path) {
      if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), {}};
      }
      std::ifstream in(path);
      if (!in) {
        throw InputError("cannot open '" + path + "'");
      }
      return {std::istreambuf_iterator<char>(in), {}};
    }

    IndexedGrammar load(std::string const& path) {
      return load_grammar(read_file(path));
    }

    json set_json(IndexedGrammar const& g, NtSet const& x) {
      json a = json::array();
      for (auto s : x.members()) {
        a.push_back(g.symbols.nonterminal(s));
      }
      return a;
    }

    json pairs_json(IndexedGrammar const& g, BoolMatrix const& m) {
      json a = json::array();
      for (auto [p, q] : m.entries()) {
        a.push_back({g.symbols.nonterminal(p), g.symbols.nonterminal(q)});
      }
      return a;
    }

    std::string letter_name(Analysis const& an, Letter const& l) {
      auto const& g = an.grammar();
      std::string s = "(" + g.symbols.stack_symbol(l.f) + ",{";
      bool first = true;
      for (auto a : an.universe()[l.x].members()) {
        s += (first ? "" : ",") + g.symbols.nonterminal(a);
        first = false;
      }
      return s + "})";
    }

    json nfa_json(Nfa const& n) {
      json t = json::array();
      for (std::size_t p = 0; p < n.num_states(); ++p) {
        for (auto const& e : n.out[p]) {
          t.push_back({p, e.letter == kEpsilon ? "" : n.alphabet[e.letter], e.target});
        }
      }
      return {{"alphabet", n.alphabet},
              {"states", n.num_states()},
              {"initial", n.initial},
              {"final", n.finals()},
              {"transitions", t}};
    }

    std::string nfa_dot(Nfa const& n) {
      std::ostringstream os;
      os << "digraph nfa {\n  rankdir=LR;\n  init [shape=point];\n";
      for (std::size_t p = 0; p < n.num_states(); ++p) {
        os << "  q" << p << " [shape=" << (n.final[p] ? "doublecircle" : "circle")
           << "];\n";
      }
      for (auto q : n.initial) {
        os << "  init -> q" << q << ";\n";
      }
      for (std::size_t p = 0; p < n.num_states(); ++p) {
        for (auto const& e : n.out[p]) {
          os << "  q" << p << " -> q" << e.target << " [label=\""
             << (e.letter == kEpsilon ? "eps" : n.alphabet[e.letter]) << "\"];\n";
        }
      }
      os << "}\n";
      return os.str();
    }

    json report_json(PipelineReport const& r) {
      json stages = json::array();
      for (auto const& s : r.stages) {
        stages.push_back({{"stage", s.name}, {"millis", s.millis}});
      }
      json j = {{"grammar_size", r.grammar_size},
                {"universe_size", r.universe_size},
                {"annotated_nonterminals", r.annotated_nonterminals},
                {"monoid_size", r.monoid_size},
                {"jlength", r.jlength},
                {"summary_nodes", r.summary_nodes},
                {"summary_edges", r.summary_edges},
                {"max_summary_size", r.max_summary_size},
                {"cfg_nonterminals", r.cfg_nonterminals},
                {"cfg_rules", r.cfg_rules},
                {"nfa_states", r.nfa_states},
                {"nfa_transitions", r.nfa_transitions},
                {"empty_language", r.empty_language},
                {"cap_hit", r.cap_hit ? json(*r.cap_hit) : json(nullptr)},
                {"stages", stages}};
      if (r.cap_limit) {
        j["cap_limit"] = *r.cap_limit;
      }
      return j;
    }

    // Runs the pipeline and converts a fired cap into CapExceeded.
    PipelineResult pipeline(std::string const& path, Options const& o) {
      auto r = run_pipeline(load(path), o.caps);
      if (!r.report.complete()) {
        throw CapExceeded(*r.report.cap_hit, r.report.cap_limit.value_or(0));
      }
      return r;
    }

    std::vector<std::string> word_list(IndexedGrammar const& g,
                                       std::vector<Word> const& ws) {
      std::vector<std::string> out;
      for (auto const& w : ws) {
        out.push_back(print_word(g.symbols, w));
      }
      return out;
    }

    ////////////////////////////////////////////////////////////////////////
    // Subcommands
    ////////////////////////////////////////////////////////////////////////

    void cmd_validate(std::string const& path, std::ostream& out) {
      auto sg    = parse_grammar(read_file(path));
      auto g     = label_pushes(desugar(sg));
      auto diags = validate(g);
      json j     = {{"valid", diags.empty()},
                    {"diagnostics", diags},
                    {"nonterminals", g.symbols.count(SymbolKind::nonterminal)},
                    {"terminals", g.symbols.count(SymbolKind::terminal)},
                    {"stack_symbols", g.symbols.count(SymbolKind::stack)},
                    {"productions", g.productions.size()},
                    {"size", g.size()}};
      out << j.dump(2) << '\n';
      if (!diags.empty()) {
        throw InputError("grammar failed validation");
      }
    }

    void cmd_analyze(std::string const& path, Options const& o, std::ostream& out) {
      auto     g = load(path);
      Analysis an(g);
      json     j = {{"empty", an.is_empty()}, {"useful", set_json(g, an.useful())}};
      auto const& universe = an.compute_universe(o.caps.universe);
      json        u = json::array(), acts = json::array(), mats = json::array(),
           reach = json::array();
      for (auto const& x : universe) {
        u.push_back(set_json(g, x));
        reach.push_back({{"X", set_json(g, x)}, {"pairs", pairs_json(g, an.reach(x))}});
        for (Symbol f = 0; f < g.symbols.count(SymbolKind::stack); ++f) {
          acts.push_back({{"f", g.symbols.stack_symbol(f)},
                          {"X", set_json(g, x)},
                          {"value", set_json(g, an.act(f, x))}});
          mats.push_back({{"f", g.symbols.stack_symbol(f)},
                          {"X", set_json(g, x)},
                          {"entries", pairs_json(g, an.matrix(f, x))}});
        }
      }
      j["universe"] = u;
      j["actions"]  = acts;
      j["matrices"] = mats;
      j["reach"]    = reach;
      out << j.dump(2) << '\n';
    }

    void cmd_annotate(std::string const& path, bool sample, Options const& o,
                      std::ostream& out) {
      auto     g = load(path);
      Analysis an(g);
      auto     ag = build_annotated(an, o.caps.universe);
      json     letters = json::array();
      for (auto const& l : ag.letters) {
        letters.push_back(letter_name(an, l));
      }
      json j = {{"nonterminals", ag.nonterminals.size()},
                {"letters", letters},
                {"productions", ag.grammar.productions.size()},
                {"grammar", print_grammar(ag.grammar)}};
      if (sample) {
        auto rep = check_productive_sample(ag.grammar, 8, 200, o.seed);
        j["productive"] = {{"seed", rep.seed},
                           {"samples", rep.samples},
                           {"terms", rep.terms},
                           {"violations", rep.violations}};
      }
      out << j.dump(2) << '\n';
    }

    void cmd_monoid(std::string const& path, Options const& o, std::ostream& out) {
      auto     g = load(path);
      Analysis an(g);
      auto     ag = build_annotated(an, o.caps.universe);
      StackMonoid m(an, ag.letters);
      m.close(o.caps.monoid);
      if (o.format == "dot") {
        out << "digraph jclasses {\n";
        for (std::size_t c = 0; c < m.num_jclasses(); ++c) {
          out << "  j" << c << " [label=\"";
          for (auto x : m.jclass_members(c)) {
            out << m.describe(x) << "\\n";
          }
          out << "\"" << (m.jclass_regular(c) ? ", peripheries=2" : "") << "];\n";
          for (auto d : m.jclass_below(c)) {
            out << "  j" << c << " -> j" << d << ";\n";
          }
        }
        out << "}\n";
        return;
      }
      json gens = json::array();
      for (auto const& l : m.generator_letters()) {
        gens.push_back(letter_name(an, l));
      }
      json elems = json::array(), classes = json::array();
      for (std::size_t c = 0; c < m.num_jclasses(); ++c) {
        json members = json::array();
        for (auto x : m.jclass_members(c)) {
          members.push_back(x);
          elems.push_back({{"id", x},
                           {"value", m.describe(x)},
                           {"idempotent", m.is_idempotent(x)},
                           {"jclass", c},
                           {"rclass", m.rclass(x)},
                           {"lclass", m.lclass(x)},
                           {"depth", m.depth(x)}});
        }
        classes.push_back({{"id", c},
                           {"members", members},
                           {"regular", m.jclass_regular(c)},
                           {"below", m.jclass_below(c)}});
      }
      json j = {{"size", m.closed_size()},
                {"jlength", m.jlength()},
                {"generators", gens},
                {"elements", elems},
                {"jclasses", classes}};
      out << j.dump(2) << '\n';
    }

    void cmd_summaries(std::string const& path, std::string const& trace,
                       Options const& o, std::ostream& out) {
      auto     g = load(path);
      Analysis an(g);
      auto     ag = build_annotated(an, o.caps.universe);
      StackMonoid m(an, ag.letters);
      m.close(o.caps.monoid);
      SummaryStore store(m);

      if (!trace.empty()) {
        Stack              z;
        std::istringstream in(trace);
        for (std::string s; in >> s;) {
          auto f = g.symbols.find(SymbolKind::stack, s);
          if (!f) {
            throw InputError("unknown stack symbol '" + s + "'");
          }
          z.push_back(*f);
        }
        auto const zbar  = annotate_stack(an, z, an.useful());
        json       steps = json::array();
        auto       sigma = SummaryStore::kEmpty;
        for (auto i = zbar.size(); i-- > 0;) {
          std::vector<std::string> cases;
          sigma = store.push(zbar[i], sigma, &cases);
          steps.push_back({{"letter", letter_name(an, zbar[i])},
                           {"cases", cases},
                           {"summary", store.print(sigma)},
                           {"size", store.size(sigma)},
                           {"depth", store.depth(sigma)}});
        }
        out << json{{"trace", steps}}.dump(2) << '\n';
        return;
      }

      auto const graph = build_summary_graph(store, o.caps.summaries);
      if (o.format == "dot") {
        out << "digraph summaries {\n";
        for (std::size_t k = 0; k < graph.nodes.size(); ++k) {
          out << "  s" << k << " [label=\"" << store.print(graph.nodes[k])
              << "\"];\n";
          for (auto const& e : graph.push_edges[k]) {
            out << "  s" << k << " -> s" << e.target << " [label=\""
                << letter_name(an, e.letter) << "\"];\n";
          }
        }
        out << "}\n";
        return;
      }
      json        nodes = json::array(), edges = json::array();
      std::size_t max_size = 0;
      for (std::size_t k = 0; k < graph.nodes.size(); ++k) {
        auto const s = graph.nodes[k];
        max_size     = std::max(max_size, store.size(s));
        nodes.push_back({{"id", k},
                         {"summary", store.print(s)},
                         {"size", store.size(s)},
                         {"depth", store.depth(s)},
                         {"level", graph.level[k]},
                         {"phi", m.describe(store.phi(s))}});
        for (auto const& e : graph.push_edges[k]) {
          edges.push_back({{"from", k},
                           {"letter", letter_name(an, e.letter)},
                           {"to", e.target}});
        }
      }
      json j = {{"nodes", nodes},
                {"edges", edges},
                {"max_size", max_size},
                {"groups", store.group_count()}};
      out << j.dump(2) << '\n';
    }

    void cmd_to_cfg(std::string const& path, Options const& o, std::ostream& out) {
      auto r = pipeline(path, o);
      out << "# terminals";
      for (auto const& t : r.cfg.terminals) {
        out << ' ' << t;
      }
      out << "\n# " << r.cfg.nonterminals.size() << " nonterminals, "
          << r.cfg.rules.size() << " rules\n"
          << print_cfg(r.cfg);
    }

    void cmd_dcl_nfa(std::string const& path, bool minimal, Options const& o,
                     std::ostream& out) {
      auto r = pipeline(path, o);
      if (minimal) {
        r.nfa = trim(minimize(determinize(r.nfa, o.caps.dfa_states)).to_nfa());
      }
      if (o.format == "dot") {
        out << nfa_dot(r.nfa);
        return;
      }
      out << json{{"nfa", nfa_json(r.nfa)}, {"report", report_json(r.report)}}.dump(2)
          << '\n';
    }

    void cmd_compare(std::string const& a, std::string const& b,
                     std::string const& mode, Options const& o, std::ostream& out) {
      auto ra = pipeline(a, o);
      auto rb = pipeline(b, o);
      auto v  = mode == "equal" ? nfa_equivalence(ra.nfa, rb.nfa, o.caps.dfa_states)
                                : nfa_inclusion(ra.nfa, rb.nfa, o.caps.dfa_states);
      auto const sigma = merge_alphabets(ra.nfa.alphabet, rb.nfa.alphabet);
      json       j     = {{"mode", mode},
                          {"holds", v.holds},
                          {"counterexample",
                           v.counterexample ? json(print_word(mode == "equal" ? sigma : ra.nfa.alphabet,
                                                              *v.counterexample))
                                            : json(nullptr)}};
      out << j.dump(2) << '\n';
    }

    void cmd_member(std::string const& path, std::string const& word,
                    Options const& o, std::ostream& out) {
      auto r = pipeline(path, o);
      auto w = parse_word(r.nfa.alphabet, word);
      out << json{{"word", word}, {"member", nfa_member(r.nfa, w)}}.dump(2) << '\n';
    }

    struct OracleArgs {
      std::size_t len    = 6;
      std::size_t height = 4;
      std::size_t steps  = 1'000'000;
      bool        bfs    = false;
      bool        dcl    = false;
    };

    void cmd_oracle(std::string const& path, OracleArgs const& a, std::ostream& out) {
      auto         g = load(path);
      OracleBudget budget{a.len, a.height, a.steps};
      Analysis     an(g);
      WordSet      ws;
      if (a.dcl) {
        ws = dcl_words(g, budget, an.certifier());
      } else if (a.bfs) {
        ws = enumerate_words(g, budget);
      } else {
        DpOptions opt;
        opt.certifier = an.certifier();
        auto t        = term_language_dp(g, budget, opt);
        auto const& v = t.at(g.start, {});
        ws.words.assign(v.begin(), v.end());
        std::stable_sort(ws.words.begin(), ws.words.end(),
                         [](Word const& x, Word const& y) { return x.size() < y.size(); });
        ws.complete = t.exact(g.start, {});
      }
      out << json{{"words", word_list(g, ws.words)}, {"complete", ws.complete}}.dump(2)
          << '\n';
    }

    void cmd_gen(std::string const& family, std::size_t n, std::ostream& out) {
      if (family == "gn") {
        if (n == 0) {
          throw InputError("gen gn needs n >= 1");
        }
        out << grammar_gn_text(n);
      } else if (family == "square") {
        out << square_grammar_text();
      } else if (family == "loop") {
        out << loop_text();
      } else if (family == "g1") {
        out << g1_text();
      } else {
        throw InputError("unknown family '" + family + "'");
      }
    }

    void cmd_stats(std::string const& path, Options const& o, std::ostream& out) {
      auto r = run_pipeline(load(path), o.caps);
      out << report_json(r.report).dump(2) << '\n';
      if (!r.report.complete()) {
        throw CapExceeded(*r.report.cap_hit, r.report.cap_limit.value_or(0));
      }
    }

  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Downward closures of indexed languages", "dclc"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--max-universe", o.caps.universe, "Annotation universe cap");
    app.add_option("--max-monoid", o.caps.monoid, "Monoid element cap");
    app.add_option("--max-summaries", o.caps.summaries, "Summary graph node cap");
    app.add_option("--max-triples", o.caps.triples, "Triple grammar cap");
    app.add_option("--max-dfa-states", o.caps.dfa_states, "Subset construction cap");
    app.add_option("--seed", o.seed, "Seed for sampling checks");
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "dot"}));

    std::string file, file2, word, trace, mode = "subset", family;
    std::size_t n       = 1;
    bool        sample  = false;
    bool        minimal = false;
    OracleArgs  oa;

    auto* validate_cmd = app.add_subcommand("validate", "Parse and check a grammar");
    validate_cmd->add_option("file", file)->required();
    auto* analyze_cmd = app.add_subcommand("analyze", "Action, universe, matrices");
    analyze_cmd->add_option("file", file)->required();
    auto* annotate_cmd = app.add_subcommand("annotate", "Annotated grammar");
    annotate_cmd->add_option("file", file)->required();
    annotate_cmd->add_flag("--check-productive", sample, "Sample productiveness");
    auto* monoid_cmd = app.add_subcommand("monoid", "Stack monoid and J-classes");
    monoid_cmd->add_option("file", file)->required();
    auto* summaries_cmd = app.add_subcommand("summaries", "Summary graph");
    summaries_cmd->add_option("file", file)->required();
    summaries_cmd->add_option("--trace", trace, "Stack word (top first) to trace");
    auto* cfg_cmd = app.add_subcommand("to-cfg", "Context-free grammar over triples");
    cfg_cmd->add_option("file", file)->required();
    auto* nfa_cmd = app.add_subcommand("dcl-nfa", "Automaton for the downward closure");
    nfa_cmd->add_option("file", file)->required();
    nfa_cmd->add_flag("--minimize", minimal, "Emit the minimal DFA");
    auto* compare_cmd = app.add_subcommand("compare", "Compare two downward closures");
    compare_cmd->add_option("file1", file)->required();
    compare_cmd->add_option("file2", file2)->required();
    compare_cmd->add_option("--mode", mode)->check(CLI::IsMember({"subset", "equal"}));
    auto* member_cmd = app.add_subcommand("member", "Downward-closure membership");
    member_cmd->add_option("file", file)->required();
    member_cmd->add_option("word", word)->required();
    auto* oracle_cmd = app.add_subcommand("oracle", "Bounded language enumeration");
    oracle_cmd->add_option("file", file)->required();
    oracle_cmd->add_option("--len", oa.len, "Maximal word length");
    oracle_cmd->add_option("--height", oa.height, "Maximal stack height");
    oracle_cmd->add_option("--steps", oa.steps, "Step cap");
    oracle_cmd->add_flag("--bfs", oa.bfs, "Use the derivation search");
    oracle_cmd->add_flag("--dcl", oa.dcl, "Enumerate the downward closure");
    auto* gen_cmd = app.add_subcommand("gen", "Emit a generated grammar");
    gen_cmd->add_option("family", family, "gn, square, loop or g1")->required();
    gen_cmd->add_option("n", n, "Family parameter");
    auto* stats_cmd = app.add_subcommand("stats", "Pipeline report");
    stats_cmd->add_option("file", file)->required();

    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (CLI::ParseError const& e) {
      if (e.get_exit_code() == 0) {
        out << app.help();
        return kOk;
      }
      err << "error: " << e.what() << '\n';
      return kInputError;
    }

    try {
      if (validate_cmd->parsed()) {
        cmd_validate(file, out);
      } else if (analyze_cmd->parsed()) {
        cmd_analyze(file, o, out);
      } else if (annotate_cmd->parsed()) {
        cmd_annotate(file, sample, o, out);
      } else if (monoid_cmd->parsed()) {
        cmd_monoid(file, o, out);
      } else if (summaries_cmd->parsed()) {
        cmd_summaries(file, trace, o, out);
      } else if (cfg_cmd->parsed()) {
        cmd_to_cfg(file, o, out);
      } else if (nfa_cmd->parsed()) {
        cmd_dcl_nfa(file, minimal, o, out);
      } else if (compare_cmd->parsed()) {
        cmd_compare(file, file2, mode, o, out);
      } else if (member_cmd->parsed()) {
        cmd_member(file, word, o, out);
      } else if (oracle_cmd->parsed()) {
        cmd_oracle(file, oa, out);
      } else if (gen_cmd->parsed()) {
        cmd_gen(family, n, out);
      } else if (stats_cmd->parsed()) {
        cmd_stats(file, o, out);
      }
    } catch (CapExceeded const& e) {
      err << "error: " << e.what() << '\n';
      return kCapExceeded;
    } catch (EmptyLanguage const& e) {
      err << "error: " << e.what() << '\n';
      return kInputError;
    } catch (Error const& e) {
      err << "error: " << e.what() << '\n';
      return kInputError;
    }
    return kOk;
  }

}  // namespace dcl::cli
