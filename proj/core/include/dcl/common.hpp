#ifndef DCL_COMMON_HPP_
#define DCL_COMMON_HPP_

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcl {

  // Index into one of the symbol tables of a grammar. Nonterminals,
  // terminals and stack symbols each have their own dense index space.
  using Symbol = std::uint32_t;
  using Word   = std::vector<Symbol>;  // terminal word
  using Stack  = std::vector<Symbol>;  // stack word, index 0 is the top

  inline constexpr Symbol kNoSymbol = static_cast<Symbol>(-1);

  //! Base class of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! Malformed grammar text; carries a 1-based source position.
  class ParseError : public Error {
   public:
    ParseError(std::string const& msg, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column "
                + std::to_string(column) + ": " + msg),
          _line(line),
          _column(column) {}

    std::size_t line() const noexcept {
      return _line;
    }
    std::size_t column() const noexcept {
      return _column;
    }

   private:
    std::size_t _line;
    std::size_t _column;
  };

  //! A grammar that violates a structural invariant.
  class ValidationError : public Error {
   public:
    using Error::Error;
  };

  //! A configured resource cap was hit. `cap()` names the cap flag.
  class CapExceeded : public Error {
   public:
    CapExceeded(std::string cap, std::size_t limit)
        : Error("resource cap exceeded: " + cap + " (limit "
                + std::to_string(limit) + ")"),
          _cap(std::move(cap)),
          _limit(limit) {}

    std::string const& cap() const noexcept {
      return _cap;
    }
    std::size_t limit() const noexcept {
      return _limit;
    }

   private:
    std::string _cap;
    std::size_t _limit;
  };

  //! The grammar generates the empty language.
  class EmptyLanguage : public Error {
   public:
    EmptyLanguage() : Error("the grammar generates the empty language") {}
  };

  // A subset of the nonterminals of a fixed grammar.
  class NtSet {
   public:
    NtSet() = default;
    explicit NtSet(std::size_t width) : _bits(width) {}

    static NtSet full(std::size_t width) {
      NtSet s(width);
      s._bits.set();
      return s;
    }

    std::size_t width() const noexcept {
      return _bits.size();
    }
    bool contains(Symbol a) const {
      return _bits.test(a);
    }
    void insert(Symbol a) {
      _bits.set(a);
    }
    void erase(Symbol a) {
      _bits.reset(a);
    }
    bool empty() const {
      return _bits.none();
    }
    std::size_t count() const {
      return _bits.count();
    }
    bool is_subset_of(NtSet const& other) const {
      return _bits.is_subset_of(other._bits);
    }
    // Returns true if anything was added.
    bool merge(NtSet const& other) {
      auto before = _bits;
      _bits |= other._bits;
      return _bits != before;
    }

    std::vector<Symbol> members() const {
      std::vector<Symbol> out;
      for (auto i = _bits.find_first(); i != Bits::npos;
           i      = _bits.find_next(i)) {
        out.push_back(static_cast<Symbol>(i));
      }
      return out;
    }

    // Bit string with nonterminal 0 first.
    std::string bits() const {
      std::string s(_bits.size(), '0');
      for (std::size_t i = 0; i < _bits.size(); ++i) {
        if (_bits.test(i)) {
          s[i] = '1';
        }
      }
      return s;
    }

    std::size_t hash() const noexcept {
      std::size_t seed = _bits.size();
      boost::to_block_range(_bits, HashInto{seed});
      return seed;
    }

    friend bool operator==(NtSet const& x, NtSet const& y) {
      return x._bits == y._bits;
    }
    friend bool operator<(NtSet const& x, NtSet const& y) {
      return x._bits < y._bits;
    }

   private:
    using Bits = boost::dynamic_bitset<std::uint64_t>;

    struct HashInto {
      std::size_t& seed;
      HashInto&    operator*() {
        return *this;
      }
      HashInto& operator++() {
        return *this;
      }
      HashInto operator++(int) {
        return *this;
      }
      HashInto& operator=(std::uint64_t block) {
        seed ^= std::hash<std::uint64_t>{}(block) + 0x9e3779b97f4a7c15ULL
                + (seed << 6) + (seed >> 2);
        return *this;
      }
    };

    Bits _bits;
  };

  struct NtSetHash {
    std::size_t operator()(NtSet const& s) const noexcept {
      return s.hash();
    }
  };

  inline void hash_combine(std::size_t& seed, std::size_t v) noexcept {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }

  struct VectorHash {
    template <typename T>
    std::size_t operator()(std::vector<T> const& v) const noexcept {
      std::size_t seed = v.size();
      for (auto const& x : v) {
        hash_combine(seed, std::hash<T>{}(x));
      }
      return seed;
    }
  };

}  // namespace dcl

#endif  // DCL_COMMON_HPP_
