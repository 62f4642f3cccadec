#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "dcl/cfg.hpp"

namespace dcl {

  Cfg::Kind Cfg::kind(Rule const& r) {
    auto const nts = std::count_if(r.rhs.begin(), r.rhs.end(),
                                   [](Item const& i) { return !i.terminal; });
    if (nts == 0) {
      return Kind::terminal;
    }
    if (r.rhs.size() == 2 && nts == 2) {
      return Kind::binary;
    }
    if (r.rhs.size() == 1) {
      return Kind::unary;
    }
    return Kind::other;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text
  ////////////////////////////////////////////////////////////////////////

  Cfg parse_cfg(std::string_view text, std::vector<std::string> const& terminals) {
    Cfg c;
    c.terminals = terminals;
    std::map<std::string, Symbol> nts;
    auto nonterminal = [&](std::string const& name) {
      auto [it, fresh] = nts.emplace(name, c.nonterminals.size());
      if (fresh) {
        c.nonterminals.push_back(name);
      }
      return it->second;
    };
    std::istringstream in{std::string(text)};
    std::size_t        line_no = 0;
    for (std::string line; std::getline(in, line);) {
      ++line_no;
      if (auto h = line.find('#'); h != std::string::npos) {
        line.erase(h);
      }
      std::istringstream       toks(line);
      std::vector<std::string> t;
      for (std::string s; toks >> s;) {
        t.push_back(s);
      }
      if (t.empty()) {
        continue;
      }
      if (t.size() < 2 || t[1] != "->") {
        throw ParseError("expected '<A> -> ...'", line_no, 1);
      }
      auto const lhs = nonterminal(t[0]);
      Cfg::Rule  rule{lhs, {}};
      auto       flush = [&] {
        c.rules.push_back(rule);
        rule.rhs.clear();
      };
      for (std::size_t i = 2; i < t.size(); ++i) {
        if (t[i] == "|") {
          flush();
        } else if (t[i] == "eps") {
          continue;
        } else if (auto it = std::find(terminals.begin(), terminals.end(), t[i]);
                   it != terminals.end()) {
          rule.rhs.push_back({true, static_cast<Symbol>(it - terminals.begin())});
        } else {
          rule.rhs.push_back({false, nonterminal(t[i])});
        }
      }
      flush();
    }
    if (c.nonterminals.empty()) {
      throw ParseError("empty grammar", line_no, 1);
    }
    return c;
  }

  std::string print_cfg(Cfg const& c) {
    std::ostringstream out;
    auto rule = [&](Cfg::Rule const& r) {
      out << c.nonterminals[r.lhs] << " ->";
      if (r.rhs.empty()) {
        out << " eps";
      }
      for (auto const& i : r.rhs) {
        out << ' ' << (i.terminal ? c.terminals[i.sym] : c.nonterminals[i.sym]);
      }
      out << '\n';
    };
    // The first left-hand side is the start symbol.
    for (auto const& r : c.rules) {
      if (r.lhs == c.start) {
        rule(r);
      }
    }
    for (auto const& r : c.rules) {
      if (r.lhs != c.start) {
        rule(r);
      }
    }
    return out.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Trimming and bounded words
  ////////////////////////////////////////////////////////////////////////

  Cfg trim_cfg(Cfg const& c) {
    auto const        n = c.nonterminals.size();
    std::vector<bool> productive(n, false);
    auto rule_ok = [&](Cfg::Rule const& r, std::vector<bool> const& ok) {
      return std::all_of(r.rhs.begin(), r.rhs.end(), [&](Cfg::Item const& i) {
        return i.terminal || ok[i.sym];
      });
    };
    for (bool grew = true; grew;) {
      grew = false;
      for (auto const& r : c.rules) {
        if (!productive[r.lhs] && rule_ok(r, productive)) {
          productive[r.lhs] = true;
          grew              = true;
        }
      }
    }
    std::vector<std::vector<std::size_t>> by_lhs(n);
    for (std::size_t k = 0; k < c.rules.size(); ++k) {
      if (rule_ok(c.rules[k], productive)) {
        by_lhs[c.rules[k].lhs].push_back(k);
      }
    }
    std::vector<bool>       reached(n, false);
    std::deque<std::size_t> queue;
    if (productive[c.start]) {
      reached[c.start] = true;
      queue.push_back(c.start);
    }
    while (!queue.empty()) {
      auto a = queue.front();
      queue.pop_front();
      for (auto k : by_lhs[a]) {
        for (auto const& i : c.rules[k].rhs) {
          if (!i.terminal && !reached[i.sym]) {
            reached[i.sym] = true;
            queue.push_back(i.sym);
          }
        }
      }
    }
    Cfg r;
    r.terminals = c.terminals;
    std::vector<Symbol> rename(n, kNoSymbol);
    for (Symbol a = 0; a < n; ++a) {
      if (reached[a]) {
        rename[a] = static_cast<Symbol>(r.nonterminals.size());
        r.nonterminals.push_back(c.nonterminals[a]);
      }
    }
    if (!reached[c.start]) {
      r.nonterminals = {c.nonterminals[c.start]};
      r.start        = 0;
      return r;
    }
    r.start = rename[c.start];
    for (auto const& rule : c.rules) {
      if (!reached[rule.lhs] || !rule_ok(rule, productive)) {
        continue;
      }
      Cfg::Rule nr{rename[rule.lhs], rule.rhs};
      for (auto& i : nr.rhs) {
        if (!i.terminal) {
          i.sym = rename[i.sym];
        }
      }
      r.rules.push_back(std::move(nr));
    }
    return r;
  }

  std::set<Word> cfg_words(Cfg const& c, std::size_t k) {
    std::vector<std::set<Word>> lang(c.nonterminals.size());
    for (bool grew = true; grew;) {
      grew = false;
      for (auto const& r : c.rules) {
        std::set<Word> cur{Word{}};
        for (auto const& i : r.rhs) {
          std::set<Word> next;
          if (i.terminal) {
            for (auto const& w : cur) {
              if (w.size() < k) {
                auto v = w;
                v.push_back(i.sym);
                next.insert(std::move(v));
              }
            }
          } else {
            for (auto const& w : cur) {
              for (auto const& x : lang[i.sym]) {
                if (w.size() + x.size() <= k) {
                  auto v = w;
                  v.insert(v.end(), x.begin(), x.end());
                  next.insert(std::move(v));
                }
              }
            }
          }
          cur.swap(next);
          if (cur.empty()) {
            break;
          }
        }
        for (auto const& w : cur) {
          grew |= lang[r.lhs].insert(w).second;
        }
      }
    }
    return lang.at(c.start);
  }

  ////////////////////////////////////////////////////////////////////////
  // Triples
  ////////////////////////////////////////////////////////////////////////

  TripleCfg build_cfg(AnnotatedGrammar const& ag, SummaryGraph const& graph,
                      std::size_t cap) {
    auto const&      g   = ag.grammar;
    RuleIndex const  idx(g);
    TripleCfg        out;
    auto&            c = out.cfg;
    c.terminals        = g.symbols.names(SymbolKind::terminal);

    std::map<std::pair<Symbol, std::size_t>, Symbol> ids;
    std::deque<Symbol>                               queue;
    auto triple = [&](Symbol a, std::size_t node) {
      auto [it, fresh] = ids.emplace(std::make_pair(a, node),
                                     static_cast<Symbol>(out.triples.size()));
      if (fresh) {
        if (out.triples.size() >= cap) {
          throw CapExceeded("max-triples", cap);
        }
        out.triples.push_back({a, node});
        auto name = g.symbols.nonterminal(a);
        name.pop_back();
        c.nonterminals.push_back(name + "|s" + std::to_string(node) + ")");
        queue.push_back(it->second);
      }
      return it->second;
    };

    c.start = triple(g.start, 0);
    while (!queue.empty()) {
      auto const t = queue.front();
      queue.pop_front();
      auto const [a, node] = out.triples[t];
      for (auto k : idx.terminal_by_lhs[a]) {
        Cfg::Rule r{t, {}};
        for (auto x : idx.terminal[k].word) {
          r.rhs.push_back({true, x});
        }
        c.rules.push_back(std::move(r));
      }
      for (auto k : idx.binary_by_lhs[a]) {
        auto const& b = idx.binary[k];
        auto        l = triple(b.left, node);
        auto        r = triple(b.right, node);
        c.rules.push_back({t, {{false, l}, {false, r}}});
      }
      for (auto k : idx.push_by_lhs[a]) {
        auto const& p = idx.push[k];
        if (auto to = graph.push(node, ag.letters.at(p.sym))) {
          c.rules.push_back({t, {{false, triple(p.rhs, *to)}}});
        }
      }
      for (auto k : idx.pop_by_lhs[a]) {
        auto const& p = idx.pop[k];
        for (auto from : graph.pop(ag.letters.at(p.sym), node)) {
          c.rules.push_back({t, {{false, triple(p.rhs, from)}}});
        }
      }
    }
    return out;
  }

}  // namespace dcl
