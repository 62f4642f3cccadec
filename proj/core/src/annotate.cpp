#include <deque>
#include <random>

#include "dcl/annotate.hpp"

namespace dcl {

  std::optional<Symbol> AnnotatedGrammar::find_nonterminal(
      Symbol a, std::size_t x) const {
    auto it = nonterminal_index.find({a, x});
    if (it == nonterminal_index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<Symbol> AnnotatedGrammar::find_letter(Letter const& l) const {
    auto it = letter_index.find(l);
    if (it == letter_index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  AnnotatedGrammar build_annotated(Analysis& an, std::size_t universe_cap,
                                   bool reachable_only) {
    auto const& g = an.grammar();
    if (an.is_empty()) {
      throw EmptyLanguage();
    }
    if (!g.push_labels) {
      throw ValidationError("the grammar is not push-labeled");
    }
    auto const& U   = an.compute_universe(universe_cap);
    auto const& idx = an.rules();
    auto const& sy  = g.symbols;
    auto const& lab = *g.push_labels;

    AnnotatedGrammar out;
    auto&            ag = out.grammar;
    for (auto const& t : sy.names(SymbolKind::terminal)) {
      ag.symbols.add(SymbolKind::terminal, t);
    }
    std::vector<PushLabel> labels;

    std::deque<Symbol> queue;
    // Pop rules are instantiated once per (nonterminal, letter) pair, by
    // whichever of the two is materialized last.
    std::map<std::pair<Symbol, std::size_t>, std::vector<std::size_t>>
        letters_into;  // (f, index of f.X) -> X

    auto succ = [&](Symbol f, std::size_t x) {
      return an.universe_index(an.act(f, U[x]));
    };

    std::function<Symbol(Symbol, std::size_t)> nonterminal;
    auto pops = [&](Symbol a, std::size_t y, Symbol f, std::size_t x) {
      auto self = out.nonterminal_index.at({a, y});
      auto lt   = out.letter_index.at({f, x});
      for (auto k : idx.pop_by_lhs[a]) {
        auto const& r = idx.pop[k];
        if (r.sym == f && U[x].contains(r.rhs)) {
          ag.productions.push_back(PopRule{self, lt, nonterminal(r.rhs, x)});
        }
      }
    };
    nonterminal = [&](Symbol a, std::size_t x) -> Symbol {
      if (auto it = out.nonterminal_index.find({a, x});
          it != out.nonterminal_index.end()) {
        return it->second;
      }
      auto id = ag.symbols.add(SymbolKind::nonterminal,
                               "(" + sy.nonterminal(a) + "|" + U[x].bits() + ")");
      out.nonterminals.emplace_back(a, x);
      out.nonterminal_index.emplace(std::make_pair(a, x), id);
      queue.push_back(id);
      for (Symbol f = 0; f < sy.num_stack_symbols(); ++f) {
        if (auto it = letters_into.find({f, x}); it != letters_into.end()) {
          for (auto lx : std::vector<std::size_t>(it->second)) {
            pops(a, x, f, lx);
          }
        }
      }
      return id;
    };
    auto letter = [&](Symbol f, std::size_t x) -> Symbol {
      if (auto it = out.letter_index.find({f, x});
          it != out.letter_index.end()) {
        return it->second;
      }
      auto id = ag.symbols.add(SymbolKind::stack,
                               "(" + sy.stack_symbol(f) + "|" + U[x].bits() + ")");
      out.letters.push_back({f, x});
      out.letter_index.emplace(Letter{f, x}, id);
      auto y = succ(f, x);
      labels.push_back({out.nonterminal_index.at({lab[f].alpha, x}), kNoSymbol});
      letters_into[{f, y}].push_back(x);
      for (Symbol a : U[y].members()) {
        if (out.nonterminal_index.count({a, y}) != 0) {
          pops(a, y, f, x);
        }
      }
      return id;
    };

    auto const root = an.universe_index(an.useful());
    ag.start        = nonterminal(g.start, root);
    if (!reachable_only) {
      for (std::size_t x = 0; x < U.size(); ++x) {
        for (auto a : U[x].members()) {
          nonterminal(a, x);
        }
      }
    }
    while (!queue.empty()) {
      auto const id = queue.front();
      queue.pop_front();
      auto const [a, x] = out.nonterminals[id];
      auto const& X     = U[x];
      for (auto k : idx.terminal_by_lhs[a]) {
        ag.productions.push_back(TerminalRule{id, idx.terminal[k].word});
      }
      for (auto k : idx.binary_by_lhs[a]) {
        auto const& r = idx.binary[k];
        if (X.contains(r.left) && X.contains(r.right)) {
          auto b = nonterminal(r.left, x);
          auto c = nonterminal(r.right, x);
          ag.productions.push_back(BinaryRule{id, b, c});
        }
      }
      for (auto k : idx.push_by_lhs[a]) {
        auto const& r = idx.push[k];
        auto        y = succ(r.sym, x);
        if (U[y].contains(r.rhs)) {
          auto b  = nonterminal(r.rhs, y);
          auto lt = letter(r.sym, x);
          labels[lt].beta = b;
          ag.productions.push_back(PushRule{id, b, lt});
        }
      }
    }
    ag.push_labels = std::move(labels);
    return out;
  }

  AnnotatedStack annotate_stack(Analysis& an, Stack const& z, NtSet const& x) {
    AnnotatedStack out(z.size());
    NtSet          cur = x;
    for (auto i = z.size(); i-- > 0;) {
      out[i] = {z[i], an.universe_index(cur)};
      cur    = an.act(z[i], cur);
    }
    return out;
  }

  Stack project(AnnotatedStack const& z) {
    Stack out;
    for (auto const& l : z) {
      out.push_back(l.f);
    }
    return out;
  }

  SententialForm project(AnnotatedGrammar const& ag, SententialForm const& u) {
    SententialForm out;
    for (auto const& item : u) {
      if (item.terminal) {
        out.push_back(item);
        continue;
      }
      Stack z;
      for (auto s : item.stack) {
        z.push_back(ag.letters.at(s).f);
      }
      out.push_back(FormItem::term(ag.nonterminals.at(item.sym).first, z));
    }
    return out;
  }

  ProductiveReport check_productive_sample(IndexedGrammar const& g,
                                           std::size_t           depth,
                                           std::size_t           samples,
                                           std::uint64_t         seed) {
    ProductiveReport report;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    std::map<TermKey, bool> verdicts;

    auto productive = [&](FormItem const& t) {
      TermKey key{t.sym, t.stack};
      if (auto it = verdicts.find(key); it != verdicts.end()) {
        return it->second;
      }
      bool ok = false;
      for (std::size_t slack : {4u, 8u}) {
        auto r = term_length_dp(g, key, t.stack.size() + slack,
                                std::uint64_t{1} << 20);
        if (!r.lengths.empty()) {
          ok = true;
          break;
        }
      }
      verdicts.emplace(key, ok);
      return ok;
    };

    for (std::size_t s = 0; s < samples; ++s) {
      SententialForm u{FormItem::term(g.start)};
      std::uniform_int_distribution<std::size_t> len(0, depth);
      auto steps = len(rng);
      for (std::size_t i = 0; i < steps; ++i) {
        auto next = derive_successors(u, g);
        if (next.empty()) {
          break;
        }
        std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
        u = std::move(next[pick(rng)]);
      }
      ++report.samples;
      for (auto const& t : u) {
        if (t.terminal) {
          continue;
        }
        ++report.terms;
        if (!productive(t)) {
          report.violations.push_back("sample " + std::to_string(s) + ": "
                                      + print_form(g.symbols, {t})
                                      + " derives no terminal word (in "
                                      + print_form(g.symbols, u) + ")");
        }
      }
    }
    return report;
  }

}  // namespace dcl
