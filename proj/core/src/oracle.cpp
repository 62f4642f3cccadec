#include <algorithm>
#include <deque>
#include <unordered_map>

#include "dcl/oracle.hpp"

namespace dcl {

  std::string print_form(SymbolTable const& symbols, SententialForm const& u) {
    std::string out;
    for (auto const& x : u) {
      if (!out.empty()) {
        out += ' ';
      }
      if (x.terminal) {
        out += symbols.terminal(x.sym);
        continue;
      }
      out += symbols.nonterminal(x.sym) + "[";
      for (std::size_t i = 0; i < x.stack.size(); ++i) {
        out += (i > 0 ? "," : "") + symbols.stack_symbol(x.stack[i]);
      }
      out += "]";
    }
    return out.empty() ? "ε" : out;
  }

  ////////////////////////////////////////////////////////////////////////
  // WordTrie
  ////////////////////////////////////////////////////////////////////////

  bool WordTrie::insert(Word const& w) {
    std::size_t n = 0;
    for (auto a : w) {
      auto it = _nodes[n].next.find(a);
      if (it == _nodes[n].next.end()) {
        _nodes.emplace_back();
        it = _nodes[n].next.emplace(a, _nodes.size() - 1).first;
      }
      n = it->second;
    }
    if (_nodes[n].end) {
      return false;
    }
    _nodes[n].end = true;
    ++_size;
    return true;
  }

  bool WordTrie::contains(Word const& w) const {
    std::size_t n = 0;
    for (auto a : w) {
      auto it = _nodes[n].next.find(a);
      if (it == _nodes[n].next.end()) {
        return false;
      }
      n = it->second;
    }
    return _nodes[n].end;
  }

  std::vector<Word> WordTrie::words() const {
    std::vector<Word> out;
    // Breadth-first over the trie yields shortlex order directly.
    std::deque<std::pair<std::size_t, Word>> queue{{0, {}}};
    while (!queue.empty()) {
      auto [n, w] = std::move(queue.front());
      queue.pop_front();
      if (_nodes[n].end) {
        out.push_back(w);
      }
      for (auto const& [a, m] : _nodes[n].next) {
        auto v = w;
        v.push_back(a);
        queue.emplace_back(m, std::move(v));
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Derivation relation
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Applies every rule to the term at position i of u.
    template <typename F>
    void rewrite_term(SententialForm const& u, std::size_t i,
                      RuleIndex const& idx, F&& emit) {
      auto const& t    = u[i];
      auto        with = [&](std::vector<FormItem> mid) {
        SententialForm v(u.begin(), u.begin() + i);
        v.insert(v.end(), std::make_move_iterator(mid.begin()),
                 std::make_move_iterator(mid.end()));
        v.insert(v.end(), u.begin() + i + 1, u.end());
        emit(std::move(v));
      };
      for (auto k : idx.terminal_by_lhs[t.sym]) {
        std::vector<FormItem> mid;
        for (auto a : idx.terminal[k].word) {
          mid.push_back(FormItem::letter(a));
        }
        with(std::move(mid));
      }
      for (auto k : idx.binary_by_lhs[t.sym]) {
        auto const& r = idx.binary[k];
        with({FormItem::term(r.left, t.stack),
              FormItem::term(r.right, t.stack)});
      }
      for (auto k : idx.push_by_lhs[t.sym]) {
        auto const& r = idx.push[k];
        Stack       z{r.sym};
        z.insert(z.end(), t.stack.begin(), t.stack.end());
        with({FormItem::term(r.rhs, std::move(z))});
      }
      for (auto k : idx.pop_by_lhs[t.sym]) {
        auto const& r = idx.pop[k];
        if (!t.stack.empty() && t.stack.front() == r.sym) {
          with({FormItem::term(r.rhs,
                               Stack(t.stack.begin() + 1, t.stack.end()))});
        }
      }
    }

  }  // namespace

  std::vector<SententialForm> derive_successors(SententialForm const& u,
                                                IndexedGrammar const& g) {
    RuleIndex                   idx(g);
    std::vector<SententialForm> out;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (!u[i].terminal) {
        rewrite_term(u, i, idx,
                     [&](SententialForm v) { out.push_back(std::move(v)); });
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Enumeration
  ////////////////////////////////////////////////////////////////////////

  Enumeration enumerate_words_traced(IndexedGrammar const& g,
                                     SententialForm const& start,
                                     OracleBudget const&   budget) {
    RuleIndex idx(g);
    struct State {
      Word           prefix;
      SententialForm rest;
      std::size_t    parent;
    };
    std::vector<State> states;
    std::set<std::pair<Word, SententialForm>> seen;
    WordTrie                                  trie;
    std::vector<std::pair<Word, std::size_t>> found;
    bool                                      complete = true;

    auto terminals = [](SententialForm const& u) {
      return static_cast<std::size_t>(std::count_if(
          u.begin(), u.end(), [](FormItem const& x) { return x.terminal; }));
    };
    auto add = [&](Word prefix, SententialForm rest, std::size_t parent) {
      std::size_t lead = 0;
      while (lead < rest.size() && rest[lead].terminal) {
        prefix.push_back(rest[lead++].sym);
      }
      rest.erase(rest.begin(), rest.begin() + lead);
      if (prefix.size() + terminals(rest) > budget.max_word_len) {
        return;
      }
      if (seen.emplace(prefix, rest).second) {
        states.push_back({std::move(prefix), std::move(rest), parent});
      }
    };

    for (auto const& x : start) {
      if (!x.terminal && x.stack.size() > budget.max_stack_height) {
        complete = false;
      }
    }
    add({}, start, static_cast<std::size_t>(-1));
    std::size_t steps = 0;
    for (std::size_t cur = 0; cur < states.size(); ++cur) {
      if (states[cur].rest.empty()) {
        if (trie.insert(states[cur].prefix)) {
          found.emplace_back(states[cur].prefix, cur);
        }
        continue;
      }
      if (steps++ >= budget.max_steps) {
        complete = false;
        break;
      }
      auto const rest = states[cur].rest;
      rewrite_term(rest, 0, idx, [&](SententialForm v) {
        if (!v.empty() && v.front().stack.size() > budget.max_stack_height) {
          complete = false;
          return;
        }
        add(states[cur].prefix, std::move(v), cur);
      });
    }

    Enumeration out;
    out.words.complete = complete;
    out.words.words    = trie.words();
    std::map<Word, std::size_t> where;
    for (auto const& [w, s] : found) {
      where.emplace(w, s);
    }
    for (auto const& w : out.words.words) {
      std::vector<SententialForm> trace;
      for (auto s = where.at(w); s != static_cast<std::size_t>(-1);
           s      = states[s].parent) {
        SententialForm u;
        for (auto a : states[s].prefix) {
          u.push_back(FormItem::letter(a));
        }
        u.insert(u.end(), states[s].rest.begin(), states[s].rest.end());
        trace.push_back(std::move(u));
      }
      std::reverse(trace.begin(), trace.end());
      // The start form itself may carry leading terminals.
      if (trace.front() != start) {
        trace.insert(trace.begin(), start);
      }
      out.witnesses.push_back(std::move(trace));
    }
    return out;
  }

  WordSet enumerate_words(IndexedGrammar const& g, SententialForm const& start,
                          OracleBudget const& budget) {
    return enumerate_words_traced(g, start, budget).words;
  }

  WordSet enumerate_words(IndexedGrammar const& g,
                          OracleBudget const&   budget) {
    return enumerate_words(g, {FormItem::term(g.start)}, budget);
  }

  ////////////////////////////////////////////////////////////////////////
  // Per-term fixpoint
  ////////////////////////////////////////////////////////////////////////

  namespace {

    struct TermKeyHash {
      std::size_t operator()(TermKey const& k) const noexcept {
        auto h = VectorHash{}(k.second);
        hash_combine(h, k.first);
        return h;
      }
    };

    struct WordDomain {
      using Value = std::set<Word>;
      std::size_t max_len;
      bool        downward;

      Value word(Word const& w) const {
        Value out;
        if (!downward) {
          if (w.size() <= max_len) {
            out.insert(w);
          }
          return out;
        }
        out.insert(Word{});
        for (auto a : w) {
          Value next = out;
          for (auto const& u : out) {
            if (u.size() < max_len) {
              auto v = u;
              v.push_back(a);
              next.insert(std::move(v));
            }
          }
          out = std::move(next);
        }
        return out;
      }

      Value concat(Value const& x, Value const& y) const {
        Value out;
        for (auto const& u : x) {
          for (auto const& v : y) {
            if (u.size() + v.size() <= max_len) {
              auto w = u;
              w.insert(w.end(), v.begin(), v.end());
              out.insert(std::move(w));
            }
          }
        }
        return out;
      }

      bool join(Value& into, Value const& x) const {
        auto before = into.size();
        into.insert(x.begin(), x.end());
        return into.size() != before;
      }
    };

    struct LengthDomain {
      using Value = std::set<std::uint64_t>;
      std::uint64_t max_len;
      bool          overflow = false;

      Value word(Word const& w) {
        if (w.size() > max_len) {
          overflow = true;
          return {};
        }
        return {w.size()};
      }

      Value concat(Value const& x, Value const& y) {
        Value out;
        for (auto u : x) {
          for (auto v : y) {
            if (u + v > max_len) {
              overflow = true;
            } else {
              out.insert(u + v);
            }
          }
        }
        return out;
      }

      bool join(Value& into, Value const& x) const {
        auto before = into.size();
        into.insert(x.begin(), x.end());
        return into.size() != before;
      }
    };

    template <typename Domain>
    class TermDp {
     public:
      using Value = typename Domain::Value;

      TermDp(IndexedGrammar const& g, std::size_t height, Domain& dom,
             UnproductiveCertifier const& cert)
          : _idx(g), _height(height), _dom(dom), _cert(cert) {}

      std::size_t intern(Symbol a, Stack const& z) {
        auto [it, fresh] = _ids.emplace(TermKey{a, z}, _keys.size());
        if (fresh) {
          _keys.emplace_back(a, z);
          _values.emplace_back();
          _rdeps.emplace_back();
          _evaluated.push_back(false);
          _pruned.push_back(false);
          _queued.push_back(true);
          _queue.push_back(it->second);
        }
        return it->second;
      }

      void solve() {
        while (!_queue.empty()) {
          auto id = _queue.front();
          _queue.pop_front();
          _queued[id] = false;
          if (evaluate(id)) {
            for (auto d : _rdeps[id]) {
              if (!_queued[d]) {
                _queued[d] = true;
                _queue.push_back(d);
              }
            }
          }
        }
      }

      // Keys that pruned a push, closed under reverse dependencies.
      std::vector<bool> underapproximated() const {
        std::vector<bool>        bad = _pruned;
        std::vector<std::size_t> stack;
        for (std::size_t i = 0; i < bad.size(); ++i) {
          if (bad[i]) {
            stack.push_back(i);
          }
        }
        while (!stack.empty()) {
          auto i = stack.back();
          stack.pop_back();
          for (auto d : _rdeps[i]) {
            if (!bad[d]) {
              bad[d] = true;
              stack.push_back(d);
            }
          }
        }
        return bad;
      }

      std::vector<TermKey> const& keys() const {
        return _keys;
      }
      std::vector<Value> const& values() const {
        return _values;
      }

     private:
      std::size_t dep(std::size_t id, Symbol a, Stack const& z) {
        auto d = intern(a, z);
        if (!_evaluated[id]) {
          _rdeps[d].push_back(id);
        }
        return d;
      }

      bool evaluate(std::size_t id) {
        auto const a = _keys[id].first;
        auto const z = _keys[id].second;
        Value      v;
        for (auto k : _idx.terminal_by_lhs[a]) {
          _dom.join(v, _dom.word(_idx.terminal[k].word));
        }
        for (auto k : _idx.binary_by_lhs[a]) {
          auto const& r = _idx.binary[k];
          auto        b = dep(id, r.left, z);
          auto        c = dep(id, r.right, z);
          _dom.join(v, _dom.concat(_values[b], _values[c]));
        }
        for (auto k : _idx.push_by_lhs[a]) {
          auto const& r = _idx.push[k];
          Stack       fz{r.sym};
          fz.insert(fz.end(), z.begin(), z.end());
          if (fz.size() > _height) {
            if (!_cert || !_cert(r.rhs, fz)) {
              _pruned[id] = true;
            }
            continue;
          }
          _dom.join(v, _values[dep(id, r.rhs, fz)]);
        }
        for (auto k : _idx.pop_by_lhs[a]) {
          auto const& r = _idx.pop[k];
          if (!z.empty() && z.front() == r.sym) {
            _dom.join(v, _values[dep(id, r.rhs, Stack(z.begin() + 1, z.end()))]);
          }
        }
        _evaluated[id] = true;
        return _dom.join(_values[id], v);
      }

      RuleIndex                                        _idx;
      std::size_t                                      _height;
      Domain&                                          _dom;
      UnproductiveCertifier const&                     _cert;
      std::unordered_map<TermKey, std::size_t, TermKeyHash> _ids;
      std::vector<TermKey>                             _keys;
      std::vector<Value>                               _values;
      std::vector<std::vector<std::size_t>>            _rdeps;
      std::vector<bool>                                _evaluated;
      std::vector<bool>                                _pruned;
      std::vector<bool>                                _queued;
      std::deque<std::size_t>                          _queue;
    };

  }  // namespace

  std::set<Word> const& TermLanguages::at(Symbol a, Stack const& z) const {
    static std::set<Word> const none;
    auto it = table.find({a, z});
    return it == table.end() ? none : it->second;
  }

  TermLanguages term_language_dp(IndexedGrammar const& g,
                                 OracleBudget const&   budget,
                                 DpOptions const&      options) {
    WordDomain         dom{budget.max_word_len, options.downward_closed};
    TermDp<WordDomain> dp(g, budget.max_stack_height, dom, options.certifier);
    auto               roots = options.roots;
    if (roots.empty()) {
      roots.emplace_back(g.start, Stack{});
    }
    for (auto const& [a, z] : roots) {
      dp.intern(a, z);
    }
    dp.solve();
    TermLanguages out;
    auto          bad = dp.underapproximated();
    for (std::size_t i = 0; i < dp.keys().size(); ++i) {
      out.table.emplace(dp.keys()[i], dp.values()[i]);
      if (bad[i]) {
        out.underapproximated.insert(dp.keys()[i]);
      }
    }
    // A root above the height bound is never expanded.
    for (auto const& [a, z] : roots) {
      if (z.size() > budget.max_stack_height) {
        out.underapproximated.insert({a, z});
      }
    }
    return out;
  }

  LengthSet term_length_dp(IndexedGrammar const& g,
                           std::size_t max_stack_height, std::uint64_t max_length,
                           UnproductiveCertifier const& certifier) {
    return term_length_dp(g, {g.start, {}}, max_stack_height, max_length,
                          certifier);
  }

  LengthSet term_length_dp(IndexedGrammar const& g, TermKey const& key,
                           std::size_t max_stack_height, std::uint64_t max_length,
                           UnproductiveCertifier const& certifier) {
    LengthDomain         dom{max_length};
    TermDp<LengthDomain> dp(g, max_stack_height, dom, certifier);
    auto                 root = dp.intern(key.first, key.second);
    dp.solve();
    LengthSet out;
    out.lengths  = dp.values()[root];
    out.complete = !dp.underapproximated()[root] && !dom.overflow;
    return out;
  }

  bool is_subword(Word const& u, Word const& v) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < v.size() && i < u.size(); ++j) {
      if (u[i] == v[j]) {
        ++i;
      }
    }
    return i == u.size();
  }

  WordSet dcl_words(IndexedGrammar const& g, OracleBudget const& budget,
                    UnproductiveCertifier const& certifier) {
    DpOptions opts;
    opts.downward_closed = true;
    opts.certifier       = certifier;
    auto    dp           = term_language_dp(g, budget, opts);
    WordSet out;
    out.complete = dp.exact(g.start, {});
    WordTrie trie;
    for (auto const& w : dp.at(g.start, {})) {
      trie.insert(w);
    }
    out.words = trie.words();
    return out;
  }

  DclAnswer dcl_member_oracle(IndexedGrammar const& g, Word const& w,
                              OracleBudget const&          budget,
                              UnproductiveCertifier const& certifier) {
    auto b         = budget;
    b.max_word_len = w.size();
    auto words     = dcl_words(g, b, certifier);
    bool member = std::binary_search(
        words.words.begin(), words.words.end(), w,
        [](Word const& x, Word const& y) {
          return x.size() != y.size() ? x.size() < y.size() : x < y;
        });
    return {member, member || words.complete};
  }

}  // namespace dcl
