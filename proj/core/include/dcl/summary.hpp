#ifndef DCL_SUMMARY_HPP_
#define DCL_SUMMARY_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "dcl/annotate.hpp"
#include "dcl/monoid.hpp"

namespace dcl {

  // Hash-consed summaries of annotated stacks. Three node kinds are stored:
  //
  //   atom    (f, X) sigma             with sigma of smaller depth
  //   block   u_1 .. u_N e+ v_1 .. v_N w   over atoms of equal depth
  //   summary sigma' u B_1 .. B_k     with sigma' of smaller depth
  //
  // Every node caches its image in the stack monoid and its size. Summary
  // id 0 is the empty summary.
  class SummaryStore {
   public:
    using Id       = std::uint32_t;
    using AtomSeq  = std::vector<Id>;  // atom ids, leftmost is the top
    using MonoidId = StackMonoid::Id;

    static constexpr Id kEmpty = 0;

    struct Atom {
      Letter letter;
      Id     tail = kEmpty;
      friend bool operator==(Atom const&, Atom const&) = default;
    };

    struct Block {
      std::vector<AtomSeq> u;
      MonoidId             idem = StackMonoid::kOne;
      std::vector<AtomSeq> v;
      AtomSeq              w;
      friend bool operator==(Block const&, Block const&) = default;
    };

    struct Node {
      Id              sub = kEmpty;
      AtomSeq         atoms;
      std::vector<Id> blocks;
      friend bool operator==(Node const&, Node const&) = default;
    };

    // The monoid must be closed and must outlive the store.
    explicit SummaryStore(StackMonoid& monoid);

    SummaryStore(SummaryStore const&)            = delete;
    SummaryStore& operator=(SummaryStore const&) = delete;

    StackMonoid& monoid() noexcept {
      return _monoid;
    }
    // Number of groups on each side of a block: |N|.
    std::size_t group_count() const noexcept {
      return _groups;
    }

    // push((f, X), sigma). When `trace` is given, the case labels taken are
    // appended to it (1, a, b, i, ii, A, B), one string per level.
    Id push(Letter const& l, Id sigma, std::vector<std::string>* trace = nullptr);
    // Right-to-left fold: the last letter of z is pushed first.
    Id push_word(AnnotatedStack const& z, Id sigma = kEmpty);

    Node const& node(Id s) const {
      return _nodes.at(s);
    }
    Atom const& atom(Id a) const {
      return _atoms.at(a);
    }
    Block const& block(Id b) const {
      return _blocks.at(b);
    }
    std::size_t num_nodes() const noexcept {
      return _nodes.size();
    }

    MonoidId phi(Id s) const {
      return _node_info.at(s).phi;
    }
    std::size_t size(Id s) const {
      return _node_info.at(s).size;
    }
    std::size_t depth(Id s) const {
      return _node_info.at(s).depth;
    }
    MonoidId atom_phi(Id a) const {
      return _atom_info.at(a).phi;
    }
    MonoidId block_phi(Id b) const {
      return _block_info.at(b).phi;
    }

    // The topmost letter of a non-empty summary.
    std::optional<Letter> leftmost(Id s) const;

    // Invariant violations of s and everything below it; empty if none.
    std::vector<std::string> validate(Id s);

    // Canonical text, independent of interning order.
    std::string print(Id s) const;

    Id   intern_atom(Atom const& a);
    Id   intern_block(Block const& b);
    Id   intern_node(Node const& n);

   private:
    struct Info {
      MonoidId    phi   = StackMonoid::kOne;
      std::size_t size  = 0;
      std::size_t depth = 0;
    };
    struct VecHash {
      std::size_t operator()(std::vector<Id> const& v) const noexcept;
    };
    struct AtomHash {
      std::size_t operator()(Atom const& a) const noexcept;
    };
    struct BlockHash {
      std::size_t operator()(Block const& b) const noexcept;
    };
    struct NodeHash {
      std::size_t operator()(Node const& n) const noexcept;
    };

    MonoidId    seq_phi(AtomSeq const& s, std::size_t from, std::size_t to);
    MonoidId    seq_phi(AtomSeq const& s) {
      return seq_phi(s, 0, s.size());
    }
    std::size_t seq_size(AtomSeq const& s) const;
    std::string print_atom(Id a) const;
    std::string print_seq(AtomSeq const& s) const;
    std::string print_block(Id b) const;
    std::string print_letter(Letter const& l) const;

    // Lexicographically shortest split of seq into 2N+1 nonempty groups
    // that all evaluate to one idempotent; empty if none.
    std::optional<std::vector<std::size_t>> decompose(AtomSeq const& seq,
                                                      MonoidId&      idem);

    void validate_node(Id s, std::vector<std::string>& out,
                       std::vector<bool>& seen);

    StackMonoid&                                _monoid;
    std::size_t                                 _groups;
    std::vector<Atom>                           _atoms;
    std::vector<Info>                           _atom_info;
    std::unordered_map<Atom, Id, AtomHash>      _atom_ids;
    std::vector<Block>                          _blocks;
    std::vector<Info>                           _block_info;
    std::unordered_map<Block, Id, BlockHash>    _block_ids;
    std::vector<Node>                           _nodes;
    std::vector<Info>                           _node_info;
    std::unordered_map<Node, Id, NodeHash>      _node_ids;
    std::map<std::tuple<Symbol, std::size_t, Id>, Id> _push_memo;
  };

  inline constexpr std::size_t kDefaultSummaryCap = 100'000;

  // Summaries reachable from the empty summary by pushing letters that keep
  // the stack feasible.
  struct SummaryGraph {
    struct Edge {
      Letter      letter;
      std::size_t target = 0;  // node index
    };

    std::vector<SummaryStore::Id>                      nodes;
    std::unordered_map<SummaryStore::Id, std::size_t>  index;
    std::vector<std::size_t>                           level;  // BFS depth
    std::vector<std::vector<Edge>>                     push_edges;
    std::vector<std::vector<Edge>>                     inverse;  // preimages

    std::size_t num_edges() const;
    std::optional<std::size_t> find(SummaryStore::Id s) const;
    // The node reached by pushing l onto node n, if recorded.
    std::optional<std::size_t> push(std::size_t n, Letter const& l) const;
    // {m | push(l, m) = n}.
    std::vector<std::size_t> pop(Letter const& l, std::size_t n) const;
  };

  // Throws CapExceeded("max-summaries").
  SummaryGraph build_summary_graph(SummaryStore& store,
                                   std::size_t   cap = kDefaultSummaryCap);

}  // namespace dcl

#endif  // DCL_SUMMARY_HPP_
