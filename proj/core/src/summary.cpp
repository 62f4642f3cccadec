#include <algorithm>
#include <deque>
#include <functional>

#include "dcl/summary.hpp"

namespace dcl {

  std::size_t SummaryStore::VecHash::operator()(
      std::vector<Id> const& v) const noexcept {
    std::size_t h = v.size();
    for (auto x : v) {
      hash_combine(h, x);
    }
    return h;
  }

  std::size_t SummaryStore::AtomHash::operator()(Atom const& a) const noexcept {
    auto h = LetterHash{}(a.letter);
    hash_combine(h, a.tail);
    return h;
  }

  std::size_t SummaryStore::BlockHash::operator()(
      Block const& b) const noexcept {
    VecHash     vh;
    std::size_t h = b.idem;
    for (auto const& g : b.u) {
      hash_combine(h, vh(g));
    }
    for (auto const& g : b.v) {
      hash_combine(h, vh(g));
    }
    hash_combine(h, vh(b.w));
    return h;
  }

  std::size_t SummaryStore::NodeHash::operator()(Node const& n) const noexcept {
    VecHash     vh;
    std::size_t h = n.sub;
    hash_combine(h, vh(n.atoms));
    hash_combine(h, vh(n.blocks));
    return h;
  }

  SummaryStore::SummaryStore(StackMonoid& monoid)
      : _monoid(monoid), _groups(monoid.analysis().width()) {
    if (!monoid.closed()) {
      throw Error("the stack monoid must be closed before building summaries");
    }
    _nodes.emplace_back();
    _node_info.emplace_back();
    _node_ids.emplace(Node{}, kEmpty);
  }

  ////////////////////////////////////////////////////////////////////////
  // Interning
  ////////////////////////////////////////////////////////////////////////

  SummaryStore::MonoidId SummaryStore::seq_phi(AtomSeq const& s,
                                               std::size_t    from,
                                               std::size_t    to) {
    MonoidId r = StackMonoid::kOne;
    for (auto i = to; i-- > from;) {
      r = _monoid.product(_atom_info[s[i]].phi, r);
    }
    return r;
  }

  std::size_t SummaryStore::seq_size(AtomSeq const& s) const {
    std::size_t n = 0;
    for (auto a : s) {
      n += _atom_info[a].size;
    }
    return n;
  }

  SummaryStore::Id SummaryStore::intern_atom(Atom const& a) {
    auto [it, fresh] = _atom_ids.emplace(a, static_cast<Id>(_atoms.size()));
    if (fresh) {
      _atoms.push_back(a);
      Info info;
      info.phi   = _monoid.product(_monoid.phi_letter(a.letter),
                                   _node_info[a.tail].phi);
      info.size  = 1 + _node_info[a.tail].size;
      info.depth = _monoid.depth(info.phi);
      _atom_info.push_back(info);
    }
    return it->second;
  }

  SummaryStore::Id SummaryStore::intern_block(Block const& b) {
    auto [it, fresh] = _block_ids.emplace(b, static_cast<Id>(_blocks.size()));
    if (fresh) {
      _blocks.push_back(b);
      AtomSeq all;
      for (auto const& g : b.u) {
        all.insert(all.end(), g.begin(), g.end());
      }
      auto const split = all.size();
      for (auto const& g : b.v) {
        all.insert(all.end(), g.begin(), g.end());
      }
      all.insert(all.end(), b.w.begin(), b.w.end());
      Info info;
      info.phi = _monoid.product(
          seq_phi(all, 0, split),
          _monoid.product(b.idem, seq_phi(all, split, all.size())));
      info.size  = seq_size(all) + 1;
      info.depth = _monoid.depth(info.phi);
      _block_info.push_back(info);
    }
    return it->second;
  }

  SummaryStore::Id SummaryStore::intern_node(Node const& n) {
    auto [it, fresh] = _node_ids.emplace(n, static_cast<Id>(_nodes.size()));
    if (fresh) {
      _nodes.push_back(n);
      MonoidId    blocks = StackMonoid::kOne;
      std::size_t size   = _node_info[n.sub].size + seq_size(n.atoms);
      for (auto i = n.blocks.size(); i-- > 0;) {
        blocks = _monoid.product(_block_info[n.blocks[i]].phi, blocks);
        size += _block_info[n.blocks[i]].size;
      }
      Info info;
      info.phi = _monoid.product(
          _node_info[n.sub].phi,
          _monoid.product(seq_phi(n.atoms), blocks));
      info.size  = size;
      info.depth = _monoid.depth(info.phi);
      _node_info.push_back(info);
    }
    return it->second;
  }

  ////////////////////////////////////////////////////////////////////////
  // Push
  ////////////////////////////////////////////////////////////////////////

  std::optional<std::vector<std::size_t>> SummaryStore::decompose(
      AtomSeq const& seq, MonoidId& idem) {
    auto const len = seq.size();
    auto const k   = 2 * _groups + 1;
    if (len < k) {
      return std::nullopt;
    }
    // table[i][j - i - 1] = phi(seq[i, j)).
    std::vector<std::vector<MonoidId>> table(len);
    for (std::size_t i = 0; i < len; ++i) {
      MonoidId r = StackMonoid::kOne;
      for (std::size_t j = i; j < len; ++j) {
        r = _monoid.product(r, _atom_info[seq[j]].phi);
        table[i].push_back(r);
      }
    }
    for (std::size_t first = 1; first + (k - 1) <= len; ++first) {
      auto const e = table[0][first - 1];
      if (e == StackMonoid::kOne || !_monoid.is_idempotent(e)) {
        continue;
      }
      // failed[g][p]: no split of the remaining groups from g at position p.
      std::vector<std::vector<bool>> failed(k, std::vector<bool>(len + 1));
      std::vector<std::size_t>       cuts{first};
      // Depth-first search, shortest group first.
      std::function<bool(std::size_t, std::size_t)> search
          = [&](std::size_t g, std::size_t p) -> bool {
        if (g == k) {
          return true;
        }
        if (failed[g][p]) {
          return false;
        }
        for (auto q = p + 1; q + (k - 1 - g) <= len; ++q) {
          if (table[p][q - p - 1] == e) {
            cuts.push_back(q);
            if (search(g + 1, q)) {
              return true;
            }
            cuts.pop_back();
          }
        }
        failed[g][p] = true;
        return false;
      };
      if (search(1, first)) {
        idem = e;
        return cuts;
      }
    }
    return std::nullopt;
  }

  SummaryStore::Id SummaryStore::push(Letter const&             l,
                                      Id                        sigma,
                                      std::vector<std::string>* trace) {
    auto const key = std::make_tuple(l.f, l.x, sigma);
    if (trace == nullptr) {
      if (auto it = _push_memo.find(key); it != _push_memo.end()) {
        return it->second;
      }
    }
    auto note = [&](std::string s) {
      if (trace != nullptr) {
        trace->push_back(std::move(s));
      }
    };

    auto const letter = _monoid.phi_letter(l);
    auto const d      = depth(sigma);
    auto const whole  = _monoid.product(letter, phi(sigma));
    Id         result = kEmpty;

    if (sigma == kEmpty || _monoid.depth(whole) > d) {
      note("1");
      result = intern_node({kEmpty, {intern_atom({l, sigma})}, {}});
    } else {
      Node const cur = _nodes[sigma];
      auto const top = _monoid.product(letter, phi(cur.sub));
      if (_monoid.depth(top) < d) {
        note("a");
        auto sub = push(l, cur.sub, trace);
        result   = intern_node({sub, cur.atoms, cur.blocks});
      } else {
        AtomSeq seq{intern_atom({l, cur.sub})};
        seq.insert(seq.end(), cur.atoms.begin(), cur.atoms.end());
        MonoidId e    = StackMonoid::kOne;
        auto     cuts = decompose(seq, e);
        if (!cuts) {
          note("b.ii");
          result = intern_node({kEmpty, seq, cur.blocks});
        } else {
          auto const n = _groups;
          auto group   = [&](std::size_t g) {
            std::size_t from = g == 0 ? 0 : (*cuts)[g - 1];
            return AtomSeq(seq.begin() + from, seq.begin() + (*cuts)[g]);
          };
          Block b;
          b.idem = e;
          for (std::size_t g = 0; g < n; ++g) {
            b.u.push_back(group(g));
            b.v.push_back(group(n + 1 + g));
          }
          b.w.assign(seq.begin() + (*cuts)[2 * n], seq.end());

          // Largest j such that v_1..v_N w B_1..B_{j-1} u'_1..u'_N
          // evaluates to e, with B_j centered on e.
          std::optional<std::size_t> merge;
          AtomSeq between;
          for (auto const& g : b.v) {
            between.insert(between.end(), g.begin(), g.end());
          }
          between.insert(between.end(), b.w.begin(), b.w.end());
          MonoidId prefix = seq_phi(between);
          for (std::size_t j = 0; j < cur.blocks.size(); ++j) {
            auto const& bj = _blocks[cur.blocks[j]];
            if (bj.idem == e) {
              AtomSeq us;
              for (auto const& g : bj.u) {
                us.insert(us.end(), g.begin(), g.end());
              }
              if (_monoid.product(prefix, seq_phi(us)) == e) {
                merge = j;
              }
            }
            prefix = _monoid.product(prefix, _block_info[cur.blocks[j]].phi);
          }
          if (merge) {
            note("b.i.A");
            auto const& bj = _blocks[cur.blocks[*merge]];
            Block       merged{b.u, e, bj.v, bj.w};
            std::vector<Id> blocks{intern_block(merged)};
            blocks.insert(blocks.end(), cur.blocks.begin() + *merge + 1,
                          cur.blocks.end());
            result = intern_node({kEmpty, {}, blocks});
          } else {
            note("b.i.B");
            std::vector<Id> blocks{intern_block(b)};
            blocks.insert(blocks.end(), cur.blocks.begin(), cur.blocks.end());
            result = intern_node({kEmpty, {}, blocks});
          }
        }
      }
    }
    _push_memo.emplace(key, result);
    return result;
  }

  SummaryStore::Id SummaryStore::push_word(AnnotatedStack const& z, Id sigma) {
    for (auto i = z.size(); i-- > 0;) {
      sigma = push(z[i], sigma);
    }
    return sigma;
  }

  std::optional<Letter> SummaryStore::leftmost(Id s) const {
    while (s != kEmpty) {
      auto const& n = _nodes[s];
      if (n.sub != kEmpty) {
        s = n.sub;
      } else if (!n.atoms.empty()) {
        return _atoms[n.atoms.front()].letter;
      } else {
        return _atoms[_blocks[n.blocks.front()].u.front().front()].letter;
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  std::vector<std::string> SummaryStore::validate(Id s) {
    std::vector<std::string> out;
    std::vector<bool>        seen(_nodes.size(), false);
    validate_node(s, out, seen);
    return out;
  }

  void SummaryStore::validate_node(Id s, std::vector<std::string>& out,
                                   std::vector<bool>& seen) {
    if (seen[s]) {
      return;
    }
    seen[s]          = true;
    auto const& n    = _nodes[s];
    auto const  d    = depth(s);
    auto        fail = [&](std::string const& msg) {
      out.push_back("summary " + print(s) + ": " + msg);
    };
    if (s == kEmpty) {
      if (phi(s) != StackMonoid::kOne) {
        fail("the empty summary does not evaluate to 1");
      }
      return;
    }
    if (d == 0) {
      fail("non-empty summary of depth 0");
    }
    if (n.atoms.empty() && n.blocks.empty() && n.sub != kEmpty) {
      fail("summary consists of a lower-depth part only");
    }
    if (depth(n.sub) >= d) {
      fail("lower part has depth " + std::to_string(depth(n.sub)));
    }
    validate_node(n.sub, out, seen);

    auto check_atom = [&](Id a) {
      auto const& at = _atoms[a];
      if (_atom_info[a].depth != d) {
        fail("atom " + print_atom(a) + " has depth "
             + std::to_string(_atom_info[a].depth));
      }
      if (depth(at.tail) >= d) {
        fail("atom " + print_atom(a) + " has a tail of depth "
             + std::to_string(depth(at.tail)));
      }
      validate_node(at.tail, out, seen);
    };
    for (auto a : n.atoms) {
      check_atom(a);
    }

    AtomSeq all;
    for (auto bid : n.blocks) {
      auto const& b = _blocks[bid];
      if (b.u.size() != _groups || b.v.size() != _groups) {
        fail("block " + print_block(bid) + " does not have "
             + std::to_string(_groups) + " groups per side");
      }
      if (b.idem == StackMonoid::kOne || !_monoid.is_idempotent(b.idem)) {
        fail("block " + print_block(bid) + " is not centered on an idempotent");
      }
      for (auto const* side : {&b.u, &b.v}) {
        for (auto const& g : *side) {
          if (g.empty() || seq_phi(g) != b.idem) {
            fail("block " + print_block(bid)
                 + " has a group that does not evaluate to its idempotent");
          }
          for (auto a : g) {
            check_atom(a);
          }
        }
      }
      for (auto a : b.w) {
        check_atom(a);
      }
      if (_block_info[bid].depth != d) {
        fail("block " + print_block(bid) + " has depth "
             + std::to_string(_block_info[bid].depth));
      }
    }

    MonoidId blocks = StackMonoid::kOne;
    for (auto i = n.blocks.size(); i-- > 0;) {
      blocks = _monoid.product(_block_info[n.blocks[i]].phi, blocks);
    }
    auto const fold = _monoid.product(
        phi(n.sub), _monoid.product(seq_phi(n.atoms), blocks));
    if (fold != phi(s)) {
      fail("cached image differs from the image of its components");
    }
    if (_monoid.depth(phi(s)) != d) {
      fail("cached depth differs from the depth of its image");
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Printing
  ////////////////////////////////////////////////////////////////////////

  std::string SummaryStore::print_letter(Letter const& l) const {
    auto& an = _monoid.analysis();
    return "(" + an.grammar().symbols.stack_symbol(l.f) + "|"
           + an.universe()[l.x].bits() + ")";
  }

  std::string SummaryStore::print_atom(Id a) const {
    auto const& at  = _atoms[a];
    auto        out = print_letter(at.letter);
    if (at.tail != kEmpty) {
      out += "<" + print(at.tail) + ">";
    }
    return out;
  }

  std::string SummaryStore::print_seq(AtomSeq const& s) const {
    std::string out;
    for (auto a : s) {
      out += (out.empty() ? "" : " ") + print_atom(a);
    }
    return out;
  }

  std::string SummaryStore::print_block(Id b) const {
    auto const& bl  = _blocks[b];
    std::string out = "[";
    for (auto const& g : bl.u) {
      out += print_seq(g) + " | ";
    }
    out += _monoid.describe(bl.idem) + "+";
    for (auto const& g : bl.v) {
      out += " | " + print_seq(g);
    }
    out += " || " + print_seq(bl.w) + "]";
    return out;
  }

  std::string SummaryStore::print(Id s) const {
    if (s == kEmpty) {
      return "eps";
    }
    auto const&              n = _nodes[s];
    std::vector<std::string> parts;
    if (n.sub != kEmpty) {
      parts.push_back("{" + print(n.sub) + "}");
    }
    if (!n.atoms.empty()) {
      parts.push_back(print_seq(n.atoms));
    }
    for (auto b : n.blocks) {
      parts.push_back(print_block(b));
    }
    std::string out;
    for (auto const& p : parts) {
      out += (out.empty() ? "" : " ") + p;
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Graph
  ////////////////////////////////////////////////////////////////////////

  std::size_t SummaryGraph::num_edges() const {
    std::size_t n = 0;
    for (auto const& e : push_edges) {
      n += e.size();
    }
    return n;
  }

  std::optional<std::size_t> SummaryGraph::find(SummaryStore::Id s) const {
    auto it = index.find(s);
    if (it == index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<std::size_t> SummaryGraph::push(std::size_t   n,
                                                Letter const& l) const {
    for (auto const& e : push_edges.at(n)) {
      if (e.letter == l) {
        return e.target;
      }
    }
    return std::nullopt;
  }

  std::vector<std::size_t> SummaryGraph::pop(Letter const& l,
                                             std::size_t   n) const {
    std::vector<std::size_t> out;
    for (auto const& e : inverse.at(n)) {
      if (e.letter == l) {
        out.push_back(e.target);
      }
    }
    return out;
  }

  SummaryGraph build_summary_graph(SummaryStore& store, std::size_t cap) {
    auto&        monoid = store.monoid();
    SummaryGraph g;
    auto add = [&](SummaryStore::Id s, std::size_t lvl) {
      auto [it, fresh] = g.index.emplace(s, g.nodes.size());
      if (fresh) {
        if (g.nodes.size() >= cap) {
          throw CapExceeded("max-summaries", cap);
        }
        g.nodes.push_back(s);
        g.level.push_back(lvl);
        g.push_edges.emplace_back();
      }
      return it->second;
    };
    add(SummaryStore::kEmpty, 0);
    auto const& letters = monoid.generator_letters();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      auto const s = g.nodes[i];
      for (std::size_t k = 0; k < letters.size(); ++k) {
        auto const p = monoid.product(monoid.generators()[k], store.phi(s));
        if (p == StackMonoid::kZero) {
          continue;
        }
        auto const t = add(store.push(letters[k], s), g.level[i] + 1);
        g.push_edges[i].push_back({letters[k], t});
      }
    }
    g.inverse.assign(g.nodes.size(), {});
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      for (auto const& e : g.push_edges[i]) {
        g.inverse[e.target].push_back({e.letter, i});
      }
    }
    return g;
  }

}  // namespace dcl
