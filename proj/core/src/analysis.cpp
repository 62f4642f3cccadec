#include <cassert>

#include "dcl/analysis.hpp"

namespace dcl {

  ////////////////////////////////////////////////////////////////////////
  // BoolMatrix
  ////////////////////////////////////////////////////////////////////////

  BoolMatrix BoolMatrix::identity(std::size_t n) {
    BoolMatrix m(n);
    for (Symbol i = 0; i < n; ++i) {
      m.set(i, i);
    }
    return m;
  }

  bool BoolMatrix::is_zero() const {
    for (auto const& r : _rows) {
      if (!r.empty()) {
        return false;
      }
    }
    return true;
  }

  std::vector<std::pair<Symbol, Symbol>> BoolMatrix::entries() const {
    std::vector<std::pair<Symbol, Symbol>> out;
    for (Symbol a = 0; a < _rows.size(); ++a) {
      for (auto b : _rows[a].members()) {
        out.emplace_back(a, b);
      }
    }
    return out;
  }

  std::size_t BoolMatrix::hash() const noexcept {
    std::size_t h = _rows.size();
    for (auto const& r : _rows) {
      hash_combine(h, r.hash());
    }
    return h;
  }

  BoolMatrix operator*(BoolMatrix const& x, BoolMatrix const& y) {
    auto const n = x.size();
    BoolMatrix out(n);
    for (Symbol i = 0; i < n; ++i) {
      for (auto k : x._rows[i].members()) {
        out._rows[i].merge(y._rows[k]);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Action
  ////////////////////////////////////////////////////////////////////////

  Analysis::Analysis(IndexedGrammar const& g)
      : _g(g), _idx(_g), _n(_g.num_nonterminals()) {
    _useful = act(kNoSymbol, NtSet(_n));
  }

  std::size_t Analysis::act_id(Symbol f, NtSet const& x) {
    auto [it, fresh] = _act_ids.emplace(Key{f, x}, _act_keys.size());
    if (fresh) {
      _act_keys.emplace_back(f, x);
      _act_values.emplace_back(_n);
      _act_rdeps.emplace_back();
      _act_queued.push_back(true);
      _act_queue.push_back(it->second);
    }
    return it->second;
  }

  void Analysis::solve_act() {
    while (!_act_queue.empty()) {
      auto id = _act_queue.front();
      _act_queue.pop_front();
      _act_queued[id] = false;
      if (!evaluate_act(id)) {
        continue;
      }
      auto wake = [&](std::size_t d) {
        if (!_act_queued[d]) {
          _act_queued[d] = true;
          _act_queue.push_back(d);
        }
      };
      for (auto d : _act_rdeps[id]) {
        wake(d);
      }
      // The push clause reads the key's own approximation.
      if (_act_keys[id].first != kNoSymbol) {
        wake(id);
      }
    }
  }

  bool Analysis::evaluate_act(std::size_t id) {
    auto const f = _act_keys[id].first;
    auto const x = _act_keys[id].second;
    auto       dep = [&](Symbol g, NtSet const& y) {
      auto d = act_id(g, y);
      _act_rdeps[d].insert(id);
      return _act_values[d];
    };

    NtSet s(_n);
    for (auto const& r : _idx.terminal) {
      s.insert(r.lhs);
    }
    if (f == kNoSymbol) {
      // A[] derives a form over X and T: A in X, or via empty-stack rules.
      s.merge(x);
      for (auto const& r : _idx.push) {
        if (dep(r.sym, x).contains(r.rhs)) {
          s.insert(r.lhs);
        }
      }
    } else {
      auto const cur  = _act_values[id];
      auto const xhat = dep(kNoSymbol, x);
      for (auto const& r : _idx.pop) {
        if (r.sym == f && xhat.contains(r.rhs)) {
          s.insert(r.lhs);
        }
      }
      for (auto const& r : _idx.push) {
        if (dep(r.sym, cur).contains(r.rhs)) {
          s.insert(r.lhs);
        }
      }
    }
    for (bool grew = true; grew;) {
      grew = false;
      for (auto const& r : _idx.binary) {
        if (!s.contains(r.lhs) && s.contains(r.left) && s.contains(r.right)) {
          s.insert(r.lhs);
          grew = true;
        }
      }
    }
    assert(_act_values[id].is_subset_of(s));
    return _act_values[id].merge(s);
  }

  NtSet Analysis::act(Symbol f, NtSet const& x) {
    auto id = act_id(f, x);
    solve_act();
    return _act_values[id];
  }

  NtSet Analysis::act_word(Stack const& z, NtSet const& x) {
    if (z.empty()) {
      return act(kNoSymbol, x);
    }
    NtSet y = x;
    for (auto i = z.size(); i-- > 0;) {
      y = act(z[i], y);
    }
    return y;
  }

  bool Analysis::term_productive(Symbol a, Stack const& z) {
    if (z.empty()) {
      return _useful.contains(a);
    }
    return act_word(z, NtSet(_n)).contains(a);
  }

  UnproductiveCertifier Analysis::certifier() {
    return [this](Symbol a, Stack const& z) { return !term_productive(a, z); };
  }

  ////////////////////////////////////////////////////////////////////////
  // Universe
  ////////////////////////////////////////////////////////////////////////

  std::vector<NtSet> const& Analysis::compute_universe(std::size_t cap) {
    if (_universe_done) {
      if (_universe.size() > cap) {
        throw CapExceeded("max-universe", cap);
      }
      return _universe;
    }
    auto const nI  = _g.symbols.num_stack_symbols();
    auto       add = [&](NtSet const& x) {
      if (_universe_index.emplace(x, _universe.size()).second) {
        if (_universe.size() >= cap) {
          _universe_index.erase(x);
          throw CapExceeded("max-universe", cap);
        }
        _universe.push_back(x);
      }
    };
    try {
      add(_useful);
      for (std::size_t i = 0; i < _universe.size(); ++i) {
        for (Symbol f = 0; f < nI; ++f) {
          add(act(f, _universe[i]));
        }
      }
    } catch (CapExceeded const&) {
      _universe.clear();
      _universe_index.clear();
      throw;
    }
    _universe_done = true;
    return _universe;
  }

  ////////////////////////////////////////////////////////////////////////
  // Matrices and reach relations
  ////////////////////////////////////////////////////////////////////////

  void Analysis::compute_matrices() {
    if (_matrices_done) {
      return;
    }
    if (!_universe_done) {
      compute_universe(kDefaultUniverseCap);
    }
    auto const  nI = _g.symbols.num_stack_symbols();
    auto const& U  = _universe;
    auto const  nU = U.size();

    _succ.assign(nU * nI, 0);
    _matrices.assign(nU * nI, BoolMatrix(_n));
    _reach.assign(nU, BoolMatrix(_n));
    for (std::size_t x = 0; x < nU; ++x) {
      for (Symbol f = 0; f < nI; ++f) {
        _succ[x * nI + f] = _universe_index.at(act(f, U[x]));
      }
      auto& r = _reach[x];
      for (auto a : U[x].members()) {
        r.set(a, a);
      }
      for (auto const& b : _idx.binary) {
        if (U[x].contains(b.lhs) && U[x].contains(b.left)
            && U[x].contains(b.right)) {
          r.set(b.lhs, b.left);
          r.set(b.lhs, b.right);
        }
      }
    }

    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t x = 0; x < nU; ++x) {
        for (Symbol f = 0; f < nI; ++f) {
          auto const  k = x * nI + f;
          auto const  y = _succ[k];
          auto&       m = _matrices[k];
          for (bool grew = true; grew;) {
            grew = false;
            for (auto const& p : _idx.pop) {
              if (p.sym == f && U[x].contains(p.rhs)) {
                grew |= m.merge_row(p.lhs, _reach[x].row(p.rhs));
              }
            }
            for (auto const& b : _idx.binary) {
              if (U[y].contains(b.right)) {
                grew |= m.merge_row(b.lhs, NtSet(m.row(b.left)));
              }
              if (U[y].contains(b.left)) {
                grew |= m.merge_row(b.lhs, NtSet(m.row(b.right)));
              }
            }
            for (auto const& p : _idx.push) {
              auto const via = _matrices[y * nI + p.sym].row(p.rhs).members();
              for (auto d : via) {
                grew |= m.merge_row(p.lhs, NtSet(m.row(d)));
              }
            }
            changed |= grew;
          }
        }
      }
      for (std::size_t x = 0; x < nU; ++x) {
        auto& r = _reach[x];
        for (auto const& p : _idx.push) {
          if (!U[x].contains(p.lhs)) {
            continue;
          }
          auto const k = x * nI + p.sym;
          auto const y = _succ[k];
          if (!U[y].contains(p.rhs)) {
            continue;
          }
          for (auto d : _reach[y].row(p.rhs).members()) {
            changed |= r.merge_row(p.lhs, _matrices[k].row(d));
          }
        }
        for (Symbol k = 0; k < _n; ++k) {
          for (Symbol i = 0; i < _n; ++i) {
            if (i != k && r.get(i, k)) {
              changed |= r.merge_row(i, NtSet(r.row(k)));
            }
          }
        }
      }
    }
    _matrices_done = true;
  }

  BoolMatrix const& Analysis::matrix(Symbol f, NtSet const& x) {
    compute_matrices();
    auto it = _universe_index.find(x);
    if (it == _universe_index.end()) {
      throw Error("matrix requested outside the annotation universe");
    }
    return _matrices[it->second * _g.symbols.num_stack_symbols() + f];
  }

  BoolMatrix const& Analysis::reach(NtSet const& x) {
    compute_matrices();
    auto it = _universe_index.find(x);
    if (it == _universe_index.end()) {
      throw Error("reach relation requested outside the annotation universe");
    }
    return _reach[it->second];
  }

  bool is_empty(IndexedGrammar const& g) {
    return Analysis(g).is_empty();
  }

}  // namespace dcl
