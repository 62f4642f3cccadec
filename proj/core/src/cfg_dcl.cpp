#include <algorithm>
#include <cstdint>

#include "dcl/cfg.hpp"
#include "scc.hpp"

namespace dcl {

  namespace {

    // (a + eps)^count, or D* for a sorted nonempty letter set D.
    struct Atom {
      bool                star   = false;
      Symbol              letter = 0;
      std::uint64_t       count  = 0;
      std::vector<Symbol> letters;

      bool admits(Symbol a) const {
        return std::binary_search(letters.begin(), letters.end(), a);
      }
    };

    bool subset(std::vector<Symbol> const& x, std::vector<Symbol> const& y) {
      return std::includes(y.begin(), y.end(), x.begin(), x.end());
    }

    // The downward-closed language e1 e2 ... em.
    using Product = std::vector<Atom>;
    // A finite union of products, none included in another.
    using Ideal = std::vector<Product>;

    Atom letter_atom(Symbol a) {
      return {false, a, 1, {}};
    }

    Atom star_atom(std::vector<Symbol> letters) {
      return {true, 0, 0, std::move(letters)};
    }

    // Appends x and restores the normal form: no adjacent atoms where one
    // absorbs the other, and runs of one letter merged.
    void append(Product& p, Atom x) {
      if (!x.star) {
        if (x.count == 0) {
          return;
        }
        if (!p.empty() && !p.back().star && p.back().letter == x.letter) {
          p.back().count += x.count;
          return;
        }
        if (!p.empty() && p.back().star && p.back().admits(x.letter)) {
          return;
        }
        p.push_back(std::move(x));
        return;
      }
      if (x.letters.empty()) {
        return;
      }
      while (!p.empty()) {
        auto const& t = p.back();
        if (t.star ? subset(t.letters, x.letters) : x.admits(t.letter)) {
          p.pop_back();
          continue;
        }
        if (t.star && subset(x.letters, t.letters)) {
          return;
        }
        break;
      }
      p.push_back(std::move(x));
    }

    Product concat(Product p, Product const& q) {
      for (auto const& x : q) {
        append(p, x);
      }
      return p;
    }

    // L(p) subset of L(q), by greedy left-to-right embedding.
    bool included(Product const& p, Product const& q) {
      std::size_t   j    = 0;
      std::uint64_t used = 0;  // letters taken from q[j] when it is not a star
      auto advance = [&] {
        ++j;
        used = 0;
      };
      for (auto const& x : p) {
        if (x.star) {
          while (j < q.size() && !(q[j].star && subset(x.letters, q[j].letters))) {
            advance();
          }
          if (j == q.size()) {
            return false;
          }
          continue;
        }
        auto need = x.count;
        while (need > 0) {
          if (j == q.size()) {
            return false;
          }
          auto const& y = q[j];
          if (y.star && y.admits(x.letter)) {
            break;
          }
          if (!y.star && y.letter == x.letter) {
            auto const take = std::min(need, y.count - used);
            need -= take;
            used += take;
            if (used < y.count) {
              break;
            }
          }
          advance();
        }
      }
      return true;
    }

    void insert(Ideal& s, Product p) {
      for (auto const& q : s) {
        if (included(p, q)) {
          return;
        }
      }
      std::erase_if(s, [&](Product const& q) { return included(q, p); });
      s.push_back(std::move(p));
    }

    Ideal concat(Ideal const& x, Ideal const& y) {
      Ideal out;
      for (auto const& p : x) {
        for (auto const& q : y) {
          insert(out, concat(p, q));
        }
      }
      return out;
    }

    class DclBuilder {
     public:
      DclBuilder(Cfg const& c, std::size_t cap)
          : _c(c), _cap(cap), _ideal(c.nonterminals.size()) {}

      Nfa run() {
        auto const n = _c.nonterminals.size();
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (auto const& r : _c.rules) {
          for (auto const& i : r.rhs) {
            if (!i.terminal) {
              edges.emplace_back(r.lhs, i.sym);
            }
          }
        }
        _comp = detail::scc(n, edges);
        compute_alphabets();

        auto const num = n == 0 ? 0 : *std::max_element(_comp.begin(), _comp.end()) + 1;
        std::vector<std::vector<Symbol>> members(num);
        for (Symbol a = 0; a < n; ++a) {
          members[_comp[a]].push_back(a);
        }
        // Dependencies point to lower component numbers.
        for (std::size_t k = 0; k < num; ++k) {
          build_component(members[k]);
        }
        return to_nfa(_ideal.at(_c.start));
      }

     private:
      void compute_alphabets() {
        auto const n = _c.nonterminals.size();
        _gamma.assign(n, std::vector<bool>(_c.terminals.size(), false));
        for (bool grew = true; grew;) {
          grew = false;
          for (auto const& r : _c.rules) {
            for (auto const& i : r.rhs) {
              if (i.terminal) {
                if (!_gamma[r.lhs][i.sym]) {
                  _gamma[r.lhs][i.sym] = true;
                  grew                 = true;
                }
                continue;
              }
              for (std::size_t x = 0; x < _c.terminals.size(); ++x) {
                if (_gamma[i.sym][x] && !_gamma[r.lhs][x]) {
                  _gamma[r.lhs][x] = true;
                  grew             = true;
                }
              }
            }
          }
        }
      }

      void add_letters(Cfg::Item const& i, std::vector<bool>& out) const {
        if (i.terminal) {
          out[i.sym] = true;
          return;
        }
        for (std::size_t x = 0; x < out.size(); ++x) {
          out[x] = out[x] || _gamma[i.sym][x];
        }
      }

      static std::vector<Symbol> members_of(std::vector<bool> const& set) {
        std::vector<Symbol> out;
        for (std::size_t x = 0; x < set.size(); ++x) {
          if (set[x]) {
            out.push_back(static_cast<Symbol>(x));
          }
        }
        return out;
      }

      Ideal sequence(std::vector<Cfg::Item> const& items) const {
        Ideal cur{Product{}};
        for (auto const& i : items) {
          if (i.terminal) {
            for (auto& p : cur) {
              append(p, letter_atom(i.sym));
            }
          } else {
            cur = concat(cur, _ideal[i.sym]);
          }
        }
        return cur;
      }

      void build_component(std::vector<Symbol> const& s) {
        auto in = [&](Symbol a) { return _comp[a] == _comp[s.front()]; };
        bool recursive = s.size() > 1;
        bool expansive = false;
        for (auto const& r : _c.rules) {
          if (!in(r.lhs)) {
            continue;
          }
          auto const k = std::count_if(r.rhs.begin(), r.rhs.end(),
                                       [&](Cfg::Item const& i) {
                                         return !i.terminal && in(i.sym);
                                       });
          recursive |= k > 0;
          expansive |= k > 1;
        }

        if (!recursive) {
          auto const a = s.front();
          for (auto const& r : _c.rules) {
            if (r.lhs == a) {
              for (auto& p : sequence(r.rhs)) {
                insert(_ideal[a], std::move(p));
              }
            }
          }
          return;
        }

        if (expansive) {
          std::vector<bool> letters(_c.terminals.size(), false);
          for (auto a : s) {
            for (std::size_t x = 0; x < letters.size(); ++x) {
              letters[x] = letters[x] || _gamma[a][x];
            }
          }
          Product p;
          append(p, star_atom(members_of(letters)));
          for (auto a : s) {
            _ideal[a] = {p};
          }
          return;
        }

        // Linear component: left contexts over one alphabet, an exit rule,
        // right contexts over another. Every member has the same closure.
        std::vector<bool> left(_c.terminals.size(), false);
        std::vector<bool> right(_c.terminals.size(), false);
        Ideal             exits;
        for (auto const& r : _c.rules) {
          if (!in(r.lhs)) {
            continue;
          }
          auto it = std::find_if(r.rhs.begin(), r.rhs.end(),
                                 [&](Cfg::Item const& i) {
                                   return !i.terminal && in(i.sym);
                                 });
          if (it == r.rhs.end()) {
            for (auto& p : sequence(r.rhs)) {
              insert(exits, std::move(p));
            }
            continue;
          }
          for (auto j = r.rhs.begin(); j != it; ++j) {
            add_letters(*j, left);
          }
          for (auto j = it + 1; j != r.rhs.end(); ++j) {
            add_letters(*j, right);
          }
        }
        Ideal result;
        for (auto const& e : exits) {
          Product p;
          append(p, star_atom(members_of(left)));
          p = concat(std::move(p), e);
          append(p, star_atom(members_of(right)));
          insert(result, std::move(p));
        }
        for (auto a : s) {
          _ideal[a] = result;
        }
      }

      Nfa to_nfa(Ideal const& ideal) const {
        Nfa        n(_c.terminals);
        auto const init = n.add_state();
        auto const fin  = n.add_state(true);
        n.initial       = {init};
        auto grow       = [&]() {
          if (n.num_states() >= _cap) {
            throw CapExceeded("max-dfa-states", _cap);
          }
          return n.add_state();
        };
        for (auto const& p : ideal) {
          auto cur = grow();
          n.add_transition(init, kEpsilon, cur);
          for (auto const& x : p) {
            if (x.star) {
              auto next = grow();
              n.add_transition(cur, kEpsilon, next);
              for (auto a : x.letters) {
                n.add_transition(next, a, next);
              }
              cur = next;
              continue;
            }
            for (std::uint64_t k = 0; k < x.count; ++k) {
              auto next = grow();
              n.add_transition(cur, x.letter, next);
              n.add_transition(cur, kEpsilon, next);
              cur = next;
            }
          }
          n.add_transition(cur, kEpsilon, fin);
        }
        return trim(n);
      }

      Cfg const&                     _c;
      std::size_t                    _cap;
      std::vector<Ideal>             _ideal;
      std::vector<std::size_t>       _comp;
      std::vector<std::vector<bool>> _gamma;
    };

  }  // namespace

  Nfa cfg_dcl_nfa(Cfg const& c, std::size_t cap) {
    if (c.rules.empty()) {
      return empty_nfa(c.terminals);
    }
    return DclBuilder(c, cap).run();
  }

}  // namespace dcl
