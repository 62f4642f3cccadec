#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "dcl/automata.hpp"
#include "scc.hpp"

namespace dcl {

  ////////////////////////////////////////////////////////////////////////
  // Nfa / Dfa basics
  ////////////////////////////////////////////////////////////////////////

  std::size_t Nfa::num_transitions() const {
    std::size_t n = 0;
    for (auto const& o : out) {
      n += o.size();
    }
    return n;
  }

  std::size_t Nfa::add_state(bool is_final) {
    out.emplace_back();
    final.push_back(is_final);
    return out.size() - 1;
  }

  std::size_t Nfa::embed(Nfa const& other) {
    auto const offset = out.size();
    for (std::size_t p = 0; p < other.num_states(); ++p) {
      add_state();
      for (auto const& t : other.out[p]) {
        out.back().push_back({t.letter, t.target + offset});
      }
    }
    return offset;
  }

  std::vector<std::size_t> Nfa::finals() const {
    std::vector<std::size_t> f;
    for (std::size_t p = 0; p < final.size(); ++p) {
      if (final[p]) {
        f.push_back(p);
      }
    }
    return f;
  }

  std::size_t Dfa::num_live_states() const {
    auto const               n = num_states();
    std::vector<std::vector<std::size_t>> rev(n);
    for (std::size_t p = 0; p < n; ++p) {
      for (auto q : delta[p]) {
        rev[q].push_back(p);
      }
    }
    std::vector<bool>       live(n, false);
    std::deque<std::size_t> queue;
    for (std::size_t p = 0; p < n; ++p) {
      if (final[p]) {
        live[p] = true;
        queue.push_back(p);
      }
    }
    while (!queue.empty()) {
      auto q = queue.front();
      queue.pop_front();
      for (auto p : rev[q]) {
        if (!live[p]) {
          live[p] = true;
          queue.push_back(p);
        }
      }
    }
    return static_cast<std::size_t>(std::count(live.begin(), live.end(), true));
  }

  bool Dfa::accepts(Word const& w) const {
    auto q = initial;
    for (auto a : w) {
      q = delta[q][a];
    }
    return final[q];
  }

  Nfa Dfa::to_nfa() const {
    Nfa n(alphabet);
    for (std::size_t p = 0; p < num_states(); ++p) {
      n.add_state(final[p]);
    }
    for (std::size_t p = 0; p < num_states(); ++p) {
      for (Symbol a = 0; a < delta[p].size(); ++a) {
        n.add_transition(p, a, delta[p][a]);
      }
    }
    n.initial = {initial};
    return n;
  }

  ////////////////////////////////////////////////////////////////////////
  // Constructions
  ////////////////////////////////////////////////////////////////////////

  Nfa word_subword_nfa(Word const& w, std::vector<std::string> alphabet) {
    Nfa n(std::move(alphabet));
    for (std::size_t i = 0; i <= w.size(); ++i) {
      n.add_state(i == w.size());
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      n.add_transition(i, w[i], i + 1);
      n.add_transition(i, kEpsilon, i + 1);
    }
    n.initial = {0};
    return n;
  }

  Nfa word_nfa(Word const& w, std::vector<std::string> alphabet) {
    Nfa n(std::move(alphabet));
    for (std::size_t i = 0; i <= w.size(); ++i) {
      n.add_state(i == w.size());
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      n.add_transition(i, w[i], i + 1);
    }
    n.initial = {0};
    return n;
  }

  Nfa star_nfa(std::vector<Symbol> const& letters,
               std::vector<std::string>   alphabet) {
    Nfa n(std::move(alphabet));
    n.add_state(true);
    for (auto a : letters) {
      n.add_transition(0, a, 0);
    }
    n.initial = {0};
    return n;
  }

  Nfa empty_nfa(std::vector<std::string> alphabet) {
    Nfa n(std::move(alphabet));
    n.add_state(false);
    n.initial = {0};
    return n;
  }

  Nfa dcl_close(Nfa const& n) {
    Nfa r = n;
    for (std::size_t p = 0; p < r.num_states(); ++p) {
      std::vector<std::size_t> targets;
      for (auto const& t : r.out[p]) {
        if (t.letter != kEpsilon) {
          targets.push_back(t.target);
        }
      }
      for (auto q : targets) {
        Nfa::Transition eps{kEpsilon, q};
        if (std::find(r.out[p].begin(), r.out[p].end(), eps) == r.out[p].end()) {
          r.out[p].push_back(eps);
        }
      }
    }
    return r;
  }

  std::vector<std::size_t> epsilon_closure(Nfa const&               n,
                                           std::vector<std::size_t> states) {
    std::vector<bool> seen(n.num_states(), false);
    std::vector<std::size_t> stack;
    for (auto s : states) {
      if (!seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
    }
    while (!stack.empty()) {
      auto p = stack.back();
      stack.pop_back();
      for (auto const& t : n.out[p]) {
        if (t.letter == kEpsilon && !seen[t.target]) {
          seen[t.target] = true;
          stack.push_back(t.target);
        }
      }
    }
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < seen.size(); ++p) {
      if (seen[p]) {
        out.push_back(p);
      }
    }
    return out;
  }

  namespace {
    std::vector<std::size_t> step(Nfa const&                      n,
                                  std::vector<std::size_t> const& s,
                                  Symbol                          a) {
      std::vector<std::size_t> next;
      for (auto p : s) {
        for (auto const& t : n.out[p]) {
          if (t.letter == a) {
            next.push_back(t.target);
          }
        }
      }
      return epsilon_closure(n, std::move(next));
    }

    bool any_final(Nfa const& n, std::vector<std::size_t> const& s) {
      return std::any_of(s.begin(), s.end(),
                         [&](std::size_t p) { return n.final[p]; });
    }
  }  // namespace

  bool nfa_member(Nfa const& n, Word const& w) {
    auto s = epsilon_closure(n, n.initial);
    for (auto a : w) {
      s = step(n, s, a);
    }
    return any_final(n, s);
  }

  std::vector<std::string> merge_alphabets(std::vector<std::string> const& a,
                                           std::vector<std::string> const& b) {
    std::vector<std::string> out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Nfa with_alphabet(Nfa const& n, std::vector<std::string> const& alphabet) {
    std::vector<Symbol> map(n.alphabet.size());
    for (Symbol a = 0; a < n.alphabet.size(); ++a) {
      auto it = std::find(alphabet.begin(), alphabet.end(), n.alphabet[a]);
      if (it == alphabet.end()) {
        throw Error("letter '" + n.alphabet[a] + "' missing from alphabet");
      }
      map[a] = static_cast<Symbol>(it - alphabet.begin());
    }
    Nfa r = n;
    r.alphabet = alphabet;
    for (auto& o : r.out) {
      for (auto& t : o) {
        if (t.letter != kEpsilon) {
          t.letter = map[t.letter];
        }
      }
    }
    return r;
  }

  Dfa determinize(Nfa const& n, std::size_t cap) {
    Dfa d;
    d.alphabet = n.alphabet;
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::vector<std::size_t>>           sets;
    auto id = [&](std::vector<std::size_t> s) {
      auto [it, fresh] = ids.emplace(s, sets.size());
      if (fresh) {
        if (sets.size() >= cap) {
          throw CapExceeded("max-dfa-states", cap);
        }
        sets.push_back(std::move(s));
      }
      return it->second;
    };
    d.initial = id(epsilon_closure(n, n.initial));
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::vector<std::size_t> row;
      for (Symbol a = 0; a < n.alphabet.size(); ++a) {
        row.push_back(id(step(n, sets[i], a)));
      }
      d.delta.push_back(std::move(row));
      d.final.push_back(any_final(n, sets[i]));
    }
    return d;
  }

  Dfa minimize(Dfa const& d) {
    // Reachable part in breadth-first order.
    std::vector<std::size_t> order{d.initial};
    std::vector<std::size_t> pos(d.num_states(), d.num_states());
    pos[d.initial] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (auto q : d.delta[order[i]]) {
        if (pos[q] == d.num_states()) {
          pos[q] = order.size();
          order.push_back(q);
        }
      }
    }
    auto const               n = order.size();
    auto const               k = d.alphabet.size();
    auto step = [&](std::size_t i, Symbol a) { return pos[d.delta[order[i]][a]]; };

    // Hopcroft refinement. Blocks are ranges of `elems`; the marked states
    // of a block sit at the front of its range.
    std::vector<std::vector<std::vector<std::size_t>>> inv(
        k, std::vector<std::vector<std::size_t>>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (Symbol a = 0; a < k; ++a) {
        inv[a][step(i, a)].push_back(i);
      }
    }
    std::vector<std::size_t> elems, loc(n), cls(n), first, last, marked;
    std::vector<char>        queued;
    std::deque<std::pair<std::size_t, Symbol>> work;
    auto make_block = [&](std::size_t b, std::size_t e) {
      first.push_back(b);
      last.push_back(e);
      marked.push_back(0);
      queued.resize(queued.size() + k, 0);
      return first.size() - 1;
    };
    auto enqueue = [&](std::size_t b, Symbol a) {
      if (!queued[b * k + a]) {
        queued[b * k + a] = 1;
        work.emplace_back(b, a);
      }
    };
    for (bool fin : {false, true}) {
      auto const b = elems.size();
      for (std::size_t i = 0; i < n; ++i) {
        if (d.final[order[i]] == fin) {
          loc[i] = elems.size();
          elems.push_back(i);
        }
      }
      if (elems.size() > b) {
        auto const id = make_block(b, elems.size());
        for (auto j = b; j < elems.size(); ++j) {
          cls[elems[j]] = id;
        }
        for (Symbol a = 0; a < k; ++a) {
          enqueue(id, a);
        }
      }
    }
    while (!work.empty()) {
      auto const [b, a] = work.front();
      work.pop_front();
      queued[b * k + a] = 0;
      // Marking may reorder block b itself, so read it first.
      std::vector<std::size_t> splitter(elems.begin() + first[b],
                                        elems.begin() + last[b]);
      std::vector<std::size_t> touched;
      for (auto q : splitter) {
        for (auto p : inv[a][q]) {
          auto const y = cls[p];
          auto const m = first[y] + marked[y];
          if (loc[p] < m) {
            continue;
          }
          if (marked[y] == 0) {
            touched.push_back(y);
          }
          auto const other = elems[m];
          std::swap(elems[loc[p]], elems[m]);
          loc[other] = loc[p];
          loc[p]     = m;
          ++marked[y];
        }
      }
      for (auto y : touched) {
        auto const m = marked[y];
        marked[y]    = 0;
        if (m == last[y] - first[y]) {
          continue;
        }
        auto const nb = make_block(first[y], first[y] + m);
        first[y] += m;
        for (auto j = first[nb]; j < last[nb]; ++j) {
          cls[elems[j]] = nb;
        }
        for (Symbol c = 0; c < k; ++c) {
          if (queued[y * k + c]) {
            enqueue(nb, c);
          } else if (last[nb] - first[nb] <= last[y] - first[y]) {
            enqueue(nb, c);
          } else {
            enqueue(y, c);
          }
        }
      }
    }
    // Renumber classes in breadth-first order from the initial state.
    std::vector<std::size_t> rename(n, n);
    std::vector<std::size_t> reps;
    auto visit = [&](std::size_t i) {
      if (rename[cls[i]] == n) {
        rename[cls[i]] = reps.size();
        reps.push_back(i);
      }
      return rename[cls[i]];
    };
    visit(0);
    Dfa m;
    m.alphabet = d.alphabet;
    m.initial  = 0;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      auto const               q = order[reps[r]];
      std::vector<std::size_t> row;
      for (Symbol a = 0; a < k; ++a) {
        row.push_back(visit(pos[d.delta[q][a]]));
      }
      m.delta.push_back(std::move(row));
      m.final.push_back(d.final[q]);
    }
    return m;
  }

  ////////////////////////////////////////////////////////////////////////
  // Inclusion and equivalence
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Breadth-first search of the subset product for a pair whose
    // acceptance flags satisfy `bad`.
    template <typename Bad>
    Inclusion product_search(Nfa const& a0, Nfa const& b0, std::size_t cap,
                             Bad bad) {
      auto const sigma = merge_alphabets(a0.alphabet, b0.alphabet);
      auto const a     = with_alphabet(a0, sigma);
      auto const b     = with_alphabet(b0, sigma);
      using Pair = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;
      std::map<Pair, std::size_t>                      ids;
      std::vector<Pair>                                pairs;
      std::vector<std::pair<std::size_t, Symbol>>      parent;
      auto add = [&](Pair p, std::size_t from, Symbol letter) {
        auto [it, fresh] = ids.emplace(p, pairs.size());
        if (fresh) {
          if (pairs.size() >= cap) {
            throw CapExceeded("max-dfa-states", cap);
          }
          pairs.push_back(std::move(p));
          parent.emplace_back(from, letter);
        }
        return fresh;
      };
      add({epsilon_closure(a, a.initial), epsilon_closure(b, b.initial)},
          0, kEpsilon);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (bad(any_final(a, pairs[i].first), any_final(b, pairs[i].second))) {
          Word w;
          for (auto j = i; j != 0; j = parent[j].first) {
            w.push_back(parent[j].second);
          }
          std::reverse(w.begin(), w.end());
          Inclusion r;
          r.holds          = false;
          r.counterexample = w;
          return r;
        }
        for (Symbol x = 0; x < sigma.size(); ++x) {
          add({step(a, pairs[i].first, x), step(b, pairs[i].second, x)}, i, x);
        }
      }
      return {};
    }

    // Counterexamples are reported over the first automaton's alphabet when
    // possible, otherwise over the merged one.
    Inclusion remap(Inclusion r, std::vector<std::string> const& sigma,
                    std::vector<std::string> const& target) {
      if (!r.counterexample) {
        return r;
      }
      Word out;
      for (auto x : *r.counterexample) {
        auto it = std::find(target.begin(), target.end(), sigma[x]);
        if (it == target.end()) {
          return r;
        }
        out.push_back(static_cast<Symbol>(it - target.begin()));
      }
      r.counterexample = out;
      return r;
    }
  }  // namespace

  Inclusion nfa_inclusion(Nfa const& a, Nfa const& b, std::size_t cap) {
    auto r = product_search(a, b, cap, [](bool fa, bool fb) { return fa && !fb; });
    return remap(std::move(r), merge_alphabets(a.alphabet, b.alphabet),
                 a.alphabet);
  }

  Inclusion nfa_equivalence(Nfa const& a, Nfa const& b, std::size_t cap) {
    auto r = product_search(a, b, cap, [](bool fa, bool fb) { return fa != fb; });
    return remap(std::move(r), merge_alphabets(a.alphabet, b.alphabet),
                 merge_alphabets(a.alphabet, b.alphabet));
  }

  ////////////////////////////////////////////////////////////////////////
  // Trimming and longest words
  ////////////////////////////////////////////////////////////////////////

  Nfa trim(Nfa const& n) {
    auto const                            k = n.num_states();
    std::vector<std::vector<std::size_t>> rev(k);
    for (std::size_t p = 0; p < k; ++p) {
      for (auto const& t : n.out[p]) {
        rev[t.target].push_back(p);
      }
    }
    auto reach = [&](std::vector<std::size_t> const& from, auto const& next) {
      std::vector<bool>        seen(k, false);
      std::vector<std::size_t> stack;
      for (auto s : from) {
        if (!seen[s]) {
          seen[s] = true;
          stack.push_back(s);
        }
      }
      while (!stack.empty()) {
        auto p = stack.back();
        stack.pop_back();
        next(p, [&](std::size_t q) {
          if (!seen[q]) {
            seen[q] = true;
            stack.push_back(q);
          }
        });
      }
      return seen;
    };
    auto fwd = reach(n.initial, [&](std::size_t p, auto const& f) {
      for (auto const& t : n.out[p]) {
        f(t.target);
      }
    });
    auto bwd = reach(n.finals(), [&](std::size_t p, auto const& f) {
      for (auto q : rev[p]) {
        f(q);
      }
    });
    Nfa                      r(n.alphabet);
    std::vector<std::size_t> rename(k, k);
    for (std::size_t p = 0; p < k; ++p) {
      if (fwd[p] && bwd[p]) {
        rename[p] = r.add_state(n.final[p]);
      }
    }
    for (std::size_t p = 0; p < k; ++p) {
      if (rename[p] == k) {
        continue;
      }
      for (auto const& t : n.out[p]) {
        if (rename[t.target] != k) {
          r.add_transition(rename[p], t.letter, rename[t.target]);
        }
      }
    }
    for (auto s : n.initial) {
      if (rename[s] != k) {
        r.initial.push_back(rename[s]);
      }
    }
    return r;
  }

  LongestWord longest_word_or_infinite(Nfa const& n0) {
    auto const n = trim(n0);
    if (n.initial.empty()) {
      return {};
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t p = 0; p < n.num_states(); ++p) {
      for (auto const& t : n.out[p]) {
        edges.emplace_back(p, t.target);
      }
    }
    auto const comp = detail::scc(n.num_states(), edges);
    for (std::size_t p = 0; p < n.num_states(); ++p) {
      for (auto const& t : n.out[p]) {
        if (t.letter != kEpsilon && comp[p] == comp[t.target]) {
          return {LongestWord::Kind::infinite, 0};
        }
      }
    }
    // Edges go from higher to lower or equal component numbers.
    auto const num = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> dag(num);
    for (std::size_t p = 0; p < n.num_states(); ++p) {
      for (auto const& t : n.out[p]) {
        if (comp[p] != comp[t.target]) {
          dag[comp[p]].emplace_back(comp[t.target],
                                    t.letter == kEpsilon ? 0 : 1);
        }
      }
    }
    constexpr auto           kUnset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best(num, kUnset);
    std::vector<bool>        accepting(num, false);
    for (std::size_t p = 0; p < n.num_states(); ++p) {
      accepting[comp[p]] = accepting[comp[p]] || n.final[p];
    }
    for (auto s : n.initial) {
      best[comp[s]] = 0;
    }
    std::size_t longest = 0;
    for (auto c = num; c-- > 0;) {
      if (best[c] == kUnset) {
        continue;
      }
      if (accepting[c]) {
        longest = std::max(longest, best[c]);
      }
      for (auto [d, w] : dag[c]) {
        if (best[d] == kUnset || best[d] < best[c] + w) {
          best[d] = best[c] + w;
        }
      }
    }
    return {LongestWord::Kind::finite, longest};
  }

  ////////////////////////////////////////////////////////////////////////
  // Words
  ////////////////////////////////////////////////////////////////////////

  std::string print_word(std::vector<std::string> const& alphabet,
                         Word const&                     w) {
    bool const  single = std::all_of(alphabet.begin(), alphabet.end(),
                                     [](auto const& s) { return s.size() == 1; });
    std::string out;
    for (auto a : w) {
      if (!single && !out.empty()) {
        out += ' ';
      }
      out += alphabet.at(a);
    }
    return out;
  }

  Word parse_word(std::vector<std::string> const& alphabet,
                  std::string const&              text) {
    bool const single = std::all_of(alphabet.begin(), alphabet.end(),
                                    [](auto const& s) { return s.size() == 1; });
    std::vector<std::string> tokens;
    if (single) {
      for (char c : text) {
        if (c != ' ') {
          tokens.emplace_back(1, c);
        }
      }
    } else {
      std::istringstream in(text);
      for (std::string t; in >> t;) {
        tokens.push_back(t);
      }
    }
    Word w;
    for (auto const& t : tokens) {
      auto it = std::find(alphabet.begin(), alphabet.end(), t);
      if (it == alphabet.end()) {
        throw Error("unknown letter '" + t + "'");
      }
      w.push_back(static_cast<Symbol>(it - alphabet.begin()));
    }
    return w;
  }

}  // namespace dcl
