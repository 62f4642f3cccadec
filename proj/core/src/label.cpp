#include "dcl/grammar.hpp"

namespace dcl {

  IndexedGrammar label_pushes(IndexedGrammar const& g) {
    auto const& sy = g.symbols;
    auto const  nI = sy.num_stack_symbols();

    std::vector<std::vector<std::size_t>> pushers(nI);
    for (std::size_t i = 0; i < g.productions.size(); ++i) {
      if (auto const* r = std::get_if<PushRule>(&g.productions[i])) {
        pushers[r->sym].push_back(i);
      }
    }

    IndexedGrammar out;
    for (auto const& n : sy.names(SymbolKind::nonterminal)) {
      out.symbols.add(SymbolKind::nonterminal, n);
    }
    for (auto const& t : sy.names(SymbolKind::terminal)) {
      out.symbols.add(SymbolKind::terminal, t);
    }
    out.start = g.start;

    // copies[f] lists the new stack symbols standing for f; copy_of maps a
    // push production to the copy it pushes.
    std::vector<std::vector<Symbol>>    copies(nI);
    std::unordered_map<std::size_t, Symbol> copy_of;
    std::vector<PushLabel>              labels;
    for (Symbol f = 0; f < nI; ++f) {
      auto const& name = sy.stack_symbol(f);
      for (std::size_t k = 0; k < pushers[f].size(); ++k) {
        auto const  i = pushers[f][k];
        auto const& r = std::get<PushRule>(g.productions[i]);
        std::string n = name;
        if (pushers[f].size() > 1) {
          n = name + "." + sy.nonterminal(r.lhs) + "." + sy.nonterminal(r.rhs)
              + "." + std::to_string(k + 1);
        }
        // Reserve against the original names so copies never shadow them.
        while (out.symbols.kind_of(n) || (n != name && sy.kind_of(n))) {
          n += '\'';
        }
        auto s = out.symbols.add(SymbolKind::stack, n);
        copies[f].push_back(s);
        copy_of.emplace(i, s);
        labels.push_back({r.lhs, r.rhs});
      }
    }

    for (std::size_t i = 0; i < g.productions.size(); ++i) {
      auto const& p = g.productions[i];
      if (auto const* r = std::get_if<PushRule>(&p)) {
        out.productions.push_back(PushRule{r->lhs, r->rhs, copy_of.at(i)});
      } else if (auto const* r = std::get_if<PopRule>(&p)) {
        for (auto s : copies[r->sym]) {
          out.productions.push_back(PopRule{r->lhs, s, r->rhs});
        }
      } else {
        out.productions.push_back(p);
      }
    }
    out.push_labels = std::move(labels);
    return out;
  }

}  // namespace dcl
