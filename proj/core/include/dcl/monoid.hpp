#ifndef DCL_MONOID_HPP_
#define DCL_MONOID_HPP_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dcl/analysis.hpp"
#include "dcl/annotate.hpp"

namespace dcl {

  // An element of the stack monoid: One, Zero, or a tuple (B, Y, M, A, X)
  // whose sets are universe indices.
  struct MonoidElement {
    enum class Kind : std::uint8_t { one, zero, tuple };

    Kind        kind = Kind::one;
    Symbol      b    = 0;
    std::size_t y    = 0;
    BoolMatrix  m;
    Symbol      a = 0;
    std::size_t x = 0;

    static MonoidElement one() {
      return {};
    }
    static MonoidElement zero() {
      MonoidElement e;
      e.kind = Kind::zero;
      return e;
    }

    std::size_t hash() const noexcept;
    friend bool operator==(MonoidElement const&, MonoidElement const&)
        = default;
  };

  struct MonoidElementHash {
    std::size_t operator()(MonoidElement const& e) const noexcept {
      return e.hash();
    }
  };

  inline constexpr std::size_t kDefaultMonoidCap = 200'000;

  // The submonoid of the stack monoid generated by the images of feasible
  // letters, with One and Zero adjoined, together with its Green structure.
  // Elements are hash-consed; products are memoized.
  class StackMonoid {
   public:
    using Id = std::uint32_t;

    static constexpr Id kOne  = 0;
    static constexpr Id kZero = 1;

    // The analysis must outlive the monoid; its universe must be computed.
    explicit StackMonoid(Analysis& an);
    // Generated by the feasible members of `letters` only.
    StackMonoid(Analysis& an, std::vector<Letter> letters);

    // Every (f, X) over the universe.
    static std::vector<Letter> all_letters(Analysis const& an);

    StackMonoid(StackMonoid const&)            = delete;
    StackMonoid& operator=(StackMonoid const&) = delete;

    Analysis& analysis() noexcept {
      return _an;
    }

    MonoidElement const& element(Id x) const {
      return _elements.at(x);
    }
    std::size_t size() const noexcept {
      return _elements.size();
    }
    Id intern(MonoidElement const& e);

    // x . y, where x describes the upper part of the stack.
    Id product(Id x, Id y);

    MonoidElement phi_element(Letter const& l);
    Id            phi_letter(Letter const& l);
    // Topmost letter first; the empty word maps to One.
    Id phi_word(AnnotatedStack const& z);

    // (f, X) with alpha(f) in X and beta(f) in f.X.
    bool is_feasible_letter(Letter const& l);
    bool is_feasible_stack(AnnotatedStack const& z);
    // The term (A, X)[z] with X a universe index.
    bool is_feasible_term(Symbol a, std::size_t x, AnnotatedStack const& z);

    std::vector<Letter> const& generator_letters() const noexcept {
      return _gen_letters;
    }
    std::vector<Id> const& generators() const noexcept {
      return _generators;
    }

    // Closes the generated submonoid and computes Green's relations and
    // depths. Throws CapExceeded("max-monoid").
    void close(std::size_t cap = kDefaultMonoidCap);
    bool closed() const noexcept {
      return _closed;
    }
    // Number of elements of the closed submonoid.
    std::size_t closed_size() const noexcept {
      return _closed_size;
    }

    bool is_idempotent(Id x);

    // Green's relations; x and y must belong to the closed submonoid.
    std::size_t jclass(Id x) const;
    std::size_t rclass(Id x) const;
    std::size_t lclass(Id x) const;
    std::pair<std::size_t, std::size_t> hclass(Id x) const {
      return {rclass(x), lclass(x)};
    }
    std::size_t num_jclasses() const noexcept {
      return _jclass_members.size();
    }
    std::vector<Id> const& jclass_members(std::size_t c) const {
      return _jclass_members.at(c);
    }
    // Classes reached by one multiplication from class c (excluding c).
    std::vector<std::size_t> const& jclass_below(std::size_t c) const {
      return _jclass_below.at(c);
    }
    bool jclass_regular(std::size_t c) const {
      return _jclass_regular.at(c);
    }
    // x <=_J y.
    bool j_leq(Id x, Id y) const;

    // Maximal d with idempotents e1 >J ... >J ed >J x.
    std::size_t depth(Id x) const;
    std::size_t jlength() const noexcept {
      return _jlength;
    }

    std::string describe(Id x) const;

   private:
    std::size_t checked(Id x) const;

    Analysis&                                      _an;
    std::vector<MonoidElement>                     _elements;
    std::unordered_map<MonoidElement, Id, MonoidElementHash> _ids;
    std::unordered_map<std::uint64_t, Id>          _products;
    std::vector<Letter>                            _gen_letters;
    std::vector<Id>                                _generators;

    bool                                   _closed      = false;
    std::size_t                            _closed_size = 0;
    std::vector<std::size_t>               _jclass;
    std::vector<std::size_t>               _rclass;
    std::vector<std::size_t>               _lclass;
    std::vector<std::vector<Id>>           _jclass_members;
    std::vector<std::vector<std::size_t>>  _jclass_below;
    std::vector<bool>                      _jclass_regular;
    std::vector<std::size_t>               _jclass_depth;
    std::size_t                            _jlength = 0;
  };

}  // namespace dcl

#endif  // DCL_MONOID_HPP_
