#ifndef DCL_ANALYSIS_HPP_
#define DCL_ANALYSIS_HPP_

#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dcl/grammar.hpp"
#include "dcl/oracle.hpp"

namespace dcl {

  // Square matrix over the Boolean semiring, indexed by nonterminals.
  class BoolMatrix {
   public:
    BoolMatrix() = default;
    explicit BoolMatrix(std::size_t n) : _rows(n, NtSet(n)) {}

    static BoolMatrix identity(std::size_t n);

    std::size_t size() const noexcept {
      return _rows.size();
    }
    bool get(Symbol a, Symbol b) const {
      return _rows[a].contains(b);
    }
    void set(Symbol a, Symbol b) {
      _rows[a].insert(b);
    }
    NtSet const& row(Symbol a) const {
      return _rows[a];
    }
    bool merge_row(Symbol a, NtSet const& s) {
      return _rows[a].merge(s);
    }

    bool                                  is_zero() const;
    std::vector<std::pair<Symbol, Symbol>> entries() const;
    std::size_t                           hash() const noexcept;

    friend BoolMatrix operator*(BoolMatrix const& x, BoolMatrix const& y);
    friend bool operator==(BoolMatrix const& x, BoolMatrix const& y) {
      return x._rows == y._rows;
    }
    friend bool operator<(BoolMatrix const& x, BoolMatrix const& y) {
      return x._rows < y._rows;
    }

   private:
    std::vector<NtSet> _rows;
  };

  inline constexpr std::size_t kDefaultUniverseCap = 4096;

  // Fixpoint tables of a push-labeled grammar: the action z.X, Useful, the
  // annotation universe, the matrices M_{f,X} and the relations R_X. Tables
  // are filled on demand; queries therefore mutate the cache.
  class Analysis {
   public:
    explicit Analysis(IndexedGrammar const& g);

    Analysis(Analysis const&)            = delete;
    Analysis& operator=(Analysis const&) = delete;

    IndexedGrammar const& grammar() const noexcept {
      return _g;
    }
    RuleIndex const& rules() const noexcept {
      return _idx;
    }
    std::size_t width() const noexcept {
      return _n;
    }

    // f.X = {A | A[f] derives a word over X and T with empty stacks}.
    // f = kNoSymbol gives the empty-stack closure of X.
    NtSet act(Symbol f, NtSet const& x);
    // z.X with z[0] the top of the stack.
    NtSet act_word(Stack const& z, NtSet const& x);

    NtSet const& useful() const noexcept {
      return _useful;
    }
    bool is_empty() const {
      return !_useful.contains(_g.start);
    }
    // A[z] derives some terminal word.
    bool term_productive(Symbol a, Stack const& z);
    UnproductiveCertifier certifier();

    // Closure of {Useful} under every act(f, -). Throws CapExceeded.
    std::vector<NtSet> const& compute_universe(std::size_t cap);
    std::vector<NtSet> const& universe() const noexcept {
      return _universe;
    }
    bool in_universe(NtSet const& x) const {
      return _universe_index.count(x) != 0;
    }
    std::size_t universe_index(NtSet const& x) const {
      return _universe_index.at(x);
    }

    // M_{f,X}(A,C): C in X and A[f] derives uCv with u, v over X and T.
    // X must belong to the universe.
    BoolMatrix const& matrix(Symbol f, NtSet const& x);

    // R_X as a matrix; X must belong to the universe.
    BoolMatrix const& reach(NtSet const& x);
    bool              reaches(NtSet const& x, Symbol a, Symbol b) {
      return reach(x).get(a, b);
    }

    // Number of (f, X) pairs whose action has been materialized.
    std::size_t materialized_actions() const noexcept {
      return _act_keys.size();
    }
    std::vector<std::pair<Symbol, NtSet>> const& action_keys() const noexcept {
      return _act_keys;
    }

   private:
    using Key = std::pair<Symbol, NtSet>;
    struct KeyHash {
      std::size_t operator()(Key const& k) const noexcept {
        auto h = k.second.hash();
        hash_combine(h, k.first);
        return h;
      }
    };

    std::size_t act_id(Symbol f, NtSet const& x);
    void        solve_act();
    bool        evaluate_act(std::size_t id);

    // Matrices and reach relations over the universe, one joint fixpoint.
    void compute_matrices();

    IndexedGrammar        _g;
    RuleIndex             _idx;
    std::size_t           _n;
    NtSet                 _useful;

    std::unordered_map<Key, std::size_t, KeyHash> _act_ids;
    std::vector<Key>                              _act_keys;
    std::vector<NtSet>                            _act_values;
    std::vector<std::unordered_set<std::size_t>>  _act_rdeps;
    std::vector<bool>                             _act_queued;
    std::deque<std::size_t>                       _act_queue;

    std::vector<NtSet>                            _universe;
    std::unordered_map<NtSet, std::size_t, NtSetHash> _universe_index;
    bool                                          _universe_done = false;
    std::vector<std::size_t>                      _succ;  // [x * |I| + f]
    std::vector<BoolMatrix>                       _matrices;  // same index
    std::vector<BoolMatrix>                       _reach;
    bool                                          _matrices_done = false;
  };

  bool is_empty(IndexedGrammar const& g);

}  // namespace dcl

#endif  // DCL_ANALYSIS_HPP_
