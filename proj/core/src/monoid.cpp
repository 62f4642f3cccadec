#include <algorithm>
#include <deque>
#include <limits>

#include "dcl/monoid.hpp"
#include "scc.hpp"

namespace dcl {

  namespace {
    constexpr std::size_t kNoClass = std::numeric_limits<std::size_t>::max();

    std::string set_name(SymbolTable const& sy, NtSet const& s) {
      std::string out = "{";
      bool        first = true;
      for (auto a : s.members()) {
        out += (first ? "" : ",") + sy.nonterminal(a);
        first = false;
      }
      return out + "}";
    }
  }  // namespace

  std::size_t MonoidElement::hash() const noexcept {
    std::size_t h = static_cast<std::size_t>(kind);
    if (kind == Kind::tuple) {
      hash_combine(h, b);
      hash_combine(h, y);
      hash_combine(h, m.hash());
      hash_combine(h, a);
      hash_combine(h, x);
    }
    return h;
  }

  StackMonoid::StackMonoid(Analysis& an) : StackMonoid(an, all_letters(an)) {}

  StackMonoid::StackMonoid(Analysis& an, std::vector<Letter> letters)
      : _an(an) {
    intern(MonoidElement::one());
    intern(MonoidElement::zero());
    if (!an.grammar().push_labels) {
      throw ValidationError("the grammar is not push-labeled");
    }
    std::sort(letters.begin(), letters.end(), [](Letter const& a, Letter const& b) {
      return std::pair(a.x, a.f) < std::pair(b.x, b.f);
    });
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    for (auto const& l : letters) {
      if (is_feasible_letter(l)) {
        _gen_letters.push_back(l);
        _generators.push_back(phi_letter(l));
      }
    }
  }

  std::vector<Letter> StackMonoid::all_letters(Analysis const& an) {
    std::vector<Letter> out;
    for (std::size_t x = 0; x < an.universe().size(); ++x) {
      for (Symbol f = 0; f < an.grammar().symbols.num_stack_symbols(); ++f) {
        out.push_back({f, x});
      }
    }
    return out;
  }

  StackMonoid::Id StackMonoid::intern(MonoidElement const& e) {
    auto [it, fresh] = _ids.emplace(e, static_cast<Id>(_elements.size()));
    if (fresh) {
      _elements.push_back(e);
    }
    return it->second;
  }

  StackMonoid::Id StackMonoid::product(Id x, Id y) {
    if (x == kOne) {
      return y;
    }
    if (y == kOne) {
      return x;
    }
    if (x == kZero || y == kZero) {
      return kZero;
    }
    auto const key = (static_cast<std::uint64_t>(x) << 32) | y;
    if (auto it = _products.find(key); it != _products.end()) {
      return it->second;
    }
    auto const& u = _elements[x];
    auto const& l = _elements[y];
    Id          r = kZero;
    if (u.x == l.y
        && _an.reach(_an.universe()[u.x]).get(l.b, u.a)) {
      MonoidElement e;
      e.kind = MonoidElement::Kind::tuple;
      e.b    = u.b;
      e.y    = u.y;
      e.m    = u.m * l.m;
      e.a    = l.a;
      e.x    = l.x;
      r      = intern(e);
    }
    _products.emplace(key, r);
    return r;
  }

  MonoidElement StackMonoid::phi_element(Letter const& l) {
    auto const& lab = (*_an.grammar().push_labels)[l.f];
    auto const& X   = _an.universe().at(l.x);
    MonoidElement e;
    e.kind = MonoidElement::Kind::tuple;
    e.b    = lab.beta;
    e.y    = _an.universe_index(_an.act(l.f, X));
    e.m    = _an.matrix(l.f, X);
    e.a    = lab.alpha;
    e.x    = l.x;
    return e;
  }

  StackMonoid::Id StackMonoid::phi_letter(Letter const& l) {
    return intern(phi_element(l));
  }

  StackMonoid::Id StackMonoid::phi_word(AnnotatedStack const& z) {
    Id r = kOne;
    for (auto i = z.size(); i-- > 0;) {
      r = product(phi_letter(z[i]), r);
    }
    return r;
  }

  bool StackMonoid::is_feasible_letter(Letter const& l) {
    auto const& U   = _an.universe();
    auto const& lab = (*_an.grammar().push_labels)[l.f];
    return U.at(l.x).contains(lab.alpha)
           && _an.act(l.f, U[l.x]).contains(lab.beta);
  }

  bool StackMonoid::is_feasible_stack(AnnotatedStack const& z) {
    for (auto const& l : z) {
      if (!is_feasible_letter(l)) {
        return false;
      }
    }
    return phi_word(z) != kZero;
  }

  bool StackMonoid::is_feasible_term(Symbol a, std::size_t x,
                                     AnnotatedStack const& z) {
    auto const& U = _an.universe();
    if (z.empty()) {
      return U.at(x).contains(a);
    }
    if (!is_feasible_stack(z)) {
      return false;
    }
    auto const& top = z.front();
    if (_an.universe_index(_an.act(top.f, U[top.x])) != x) {
      return false;
    }
    auto const beta = (*_an.grammar().push_labels)[top.f].beta;
    return _an.reach(U[x]).get(beta, a);
  }

  bool StackMonoid::is_idempotent(Id x) {
    return product(x, x) == x;
  }

  ////////////////////////////////////////////////////////////////////////
  // Closure and Green's relations
  ////////////////////////////////////////////////////////////////////////

  void StackMonoid::close(std::size_t cap) {
    if (_closed) {
      return;
    }
    // Breadth-first closure of {One} under right multiplication.
    std::vector<Id>          order{kOne};
    std::vector<std::size_t> pos(_elements.size(), kNoClass);
    pos[kOne] = 0;
    auto visit = [&](Id y) {
      if (y >= pos.size()) {
        pos.resize(y + 1, kNoClass);
      }
      if (pos[y] == kNoClass) {
        if (order.size() >= cap) {
          throw CapExceeded("max-monoid", cap);
        }
        pos[y] = order.size();
        order.push_back(y);
      }
    };
    std::vector<std::pair<std::size_t, std::size_t>> right, left;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (auto gen : _generators) {
        auto y = product(order[i], gen);
        visit(y);
        right.emplace_back(i, pos[y]);
      }
    }
    auto const n = order.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (auto gen : _generators) {
        auto y = product(gen, order[i]);
        if (y >= pos.size() || pos[y] == kNoClass) {
          throw Error("stack monoid closure is not closed under products");
        }
        left.emplace_back(i, pos[y]);
      }
    }

    auto rc = detail::scc(n, right);
    auto lc = detail::scc(n, left);
    auto both = right;
    both.insert(both.end(), left.begin(), left.end());
    auto jc = detail::scc(n, both);

    auto const num = n == 0 ? 0 : *std::max_element(jc.begin(), jc.end()) + 1;
    _jclass.assign(_elements.size(), kNoClass);
    _rclass.assign(_elements.size(), kNoClass);
    _lclass.assign(_elements.size(), kNoClass);
    _jclass_members.assign(num, {});
    _jclass_below.assign(num, {});
    _jclass_regular.assign(num, false);
    for (std::size_t i = 0; i < n; ++i) {
      auto const id = order[i];
      _jclass[id]   = jc[i];
      _rclass[id]   = rc[i];
      _lclass[id]   = lc[i];
      _jclass_members[jc[i]].push_back(id);
      if (is_idempotent(id)) {
        _jclass_regular[jc[i]] = true;
      }
    }
    for (auto const& [u, v] : both) {
      if (jc[u] != jc[v]) {
        _jclass_below[jc[u]].push_back(jc[v]);
      }
    }
    for (auto& b : _jclass_below) {
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
    }

    // Every edge goes from a higher component number to a lower or equal
    // one, so decreasing numbers form a topological order of >_J.
    _jclass_depth.assign(num, 0);
    _jlength = 0;
    for (auto c = num; c-- > 0;) {
      auto const through = _jclass_depth[c] + (_jclass_regular[c] ? 1 : 0);
      _jlength           = std::max(_jlength, through);
      for (auto d : _jclass_below[c]) {
        _jclass_depth[d] = std::max(_jclass_depth[d], through);
      }
    }
    _closed      = true;
    _closed_size = n;
  }

  std::size_t StackMonoid::checked(Id x) const {
    if (!_closed) {
      throw Error("stack monoid is not closed");
    }
    if (x >= _jclass.size() || _jclass[x] == kNoClass) {
      throw Error("element outside the generated submonoid");
    }
    return _jclass[x];
  }

  std::size_t StackMonoid::jclass(Id x) const {
    return checked(x);
  }

  std::size_t StackMonoid::rclass(Id x) const {
    checked(x);
    return _rclass[x];
  }

  std::size_t StackMonoid::lclass(Id x) const {
    checked(x);
    return _lclass[x];
  }

  bool StackMonoid::j_leq(Id x, Id y) const {
    auto const cx = checked(x);
    auto const cy = checked(y);
    if (cx == cy) {
      return true;
    }
    if (cx > cy) {
      return false;
    }
    std::vector<bool>       seen(_jclass_members.size(), false);
    std::deque<std::size_t> queue{cy};
    seen[cy] = true;
    while (!queue.empty()) {
      auto c = queue.front();
      queue.pop_front();
      for (auto d : _jclass_below[c]) {
        if (d == cx) {
          return true;
        }
        if (d > cx && !seen[d]) {
          seen[d] = true;
          queue.push_back(d);
        }
      }
    }
    return false;
  }

  std::size_t StackMonoid::depth(Id x) const {
    return _jclass_depth[checked(x)];
  }

  std::string StackMonoid::describe(Id x) const {
    auto const& e = _elements.at(x);
    if (e.kind == MonoidElement::Kind::one) {
      return "1";
    }
    if (e.kind == MonoidElement::Kind::zero) {
      return "0";
    }
    auto const& sy = _an.grammar().symbols;
    auto const& U  = _an.universe();
    std::string m  = "{";
    bool        first = true;
    for (auto [p, q] : e.m.entries()) {
      m += (first ? "(" : ",(") + sy.nonterminal(p) + "," + sy.nonterminal(q)
           + ")";
      first = false;
    }
    m += "}";
    return "(" + sy.nonterminal(e.b) + "," + set_name(sy, U[e.y]) + "," + m
           + "," + sy.nonterminal(e.a) + "," + set_name(sy, U[e.x]) + ")";
  }

}  // namespace dcl
