#include <sstream>
#include <stdexcept>

#include "dcl/families.hpp"

namespace dcl {

  namespace {

    void require_positive(std::size_t n) {
      if (n == 0) {
        throw std::invalid_argument("family parameter n must be at least 1");
      }
    }

    std::size_t letter_index(PartialDfa& d, std::string const& a) {
      if (auto k = d.letter(a)) {
        return *k;
      }
      d.alphabet.push_back(a);
      return d.alphabet.size() - 1;
    }

    void add(PartialDfa& d, std::size_t p, std::string const& a, std::size_t q) {
      d.delta[{p, letter_index(d, a)}] = q;
    }

    void print_dfa(std::ostream& os, PartialDfa const& d) {
      os << "dfa " << d.name << " {\n  states";
      for (auto const& s : d.states) {
        os << ' ' << s;
      }
      os << ";\n  init " << d.states[d.initial] << ";\n  final";
      for (auto q : d.finals) {
        os << ' ' << d.states[q];
      }
      os << ";\n";
      for (auto const& [key, q] : d.delta) {
        os << "  " << d.states[key.first] << ' ' << d.alphabet[key.second] << ' '
           << d.states[q] << ";\n";
      }
      os << "}\n";
    }

  }  // namespace

  std::string counter_letter(std::size_t j) {
    return "inc" + std::to_string(j);
  }

  PartialDfa counter_dfa(std::size_t n, std::size_t i) {
    PartialDfa d;
    d.name    = "A" + std::to_string(i);
    d.states  = {"zero" + std::to_string(i), "one" + std::to_string(i)};
    d.initial = 0;
    d.finals  = {1};
    for (std::size_t j = 1; j <= n; ++j) {
      d.alphabet.push_back(counter_letter(j));
    }
    for (std::size_t j = 1; j <= n; ++j) {
      auto const a = j - 1;
      if (j == i) {
        d.delta[{0, a}] = 1;
      } else if (j < i) {
        d.delta[{0, a}] = 0;
        d.delta[{1, a}] = 1;
      } else {
        d.delta[{1, a}] = 0;
      }
    }
    return d;
  }

  std::vector<PartialDfa> counter_dfas(std::size_t n) {
    require_positive(n);
    std::vector<PartialDfa> out;
    for (std::size_t i = 1; i <= n; ++i) {
      out.push_back(counter_dfa(n, i));
    }
    return out;
  }

  std::string bottom_symbol() {
    return "bot";
  }

  std::string digit_symbol(std::string const& letter, int bit) {
    return letter + "." + std::to_string(bit);
  }

  std::vector<PartialDfa> bottom_marked_dfas(std::size_t n, bool padded) {
    std::vector<PartialDfa> out;
    for (auto const& a : counter_dfas(n)) {
      auto const i = std::to_string(out.size() + 1);
      PartialDfa b;
      b.name    = "B" + i;
      b.states  = a.states;
      b.initial = a.initial;
      for (auto const& [key, q] : a.delta) {
        for (int bit : {0, 1}) {
          add(b, key.first, digit_symbol(a.alphabet[key.second], bit), q);
        }
      }
      auto last = a.finals.at(0);
      if (padded) {
        b.states.push_back("hash" + i);
        auto const h = b.states.size() - 1;
        for (int bit : {0, 1}) {
          add(b, last, digit_symbol("hash", bit), h);
        }
        last = h;
      }
      b.states.push_back("end" + i);
      auto const e = b.states.size() - 1;
      add(b, last, bottom_symbol(), e);
      b.finals = {e};
      out.push_back(std::move(b));
    }
    return out;
  }

  std::string grammar_gn_text(std::size_t n) {
    auto const dfas = bottom_marked_dfas(n, true);
    std::vector<std::string> letters;
    for (std::size_t j = 1; j <= n; ++j) {
      letters.push_back(counter_letter(j));
    }
    letters.emplace_back("hash");

    std::ostringstream os;
    os << "nonterminals S A B D F Z\nstart S\nterminals a\nstack "
       << bottom_symbol();
    for (auto const& l : letters) {
      os << ' ' << digit_symbol(l, 0) << ' ' << digit_symbol(l, 1);
    }
    os << '\n';
    for (auto const& d : dfas) {
      print_dfa(os, d);
    }
    os << "S -> Z + " << bottom_symbol() << '\n';
    os << "Z -> D check";
    for (auto const& d : dfas) {
      os << ' ' << d.name;
    }
    os << "\nD -> A A\n";
    for (auto const& l : letters) {
      os << "Z -> Z + " << digit_symbol(l, 0) << '\n';
      os << "A - " << digit_symbol(l, 1) << " -> A\n";
      os << "A - " << digit_symbol(l, 0) << " -> B\n";
      os << "B -> Z + " << digit_symbol(l, 1) << '\n';
    }
    os << "A - " << bottom_symbol() << " -> F\n";
    os << "F -> \"a\"\n";
    return os.str();
  }

  SugaredGrammar grammar_gn(std::size_t n) {
    return parse_grammar(grammar_gn_text(n));
  }

  std::string square_grammar_text() {
    return "nonterminals S T A B C\n"
           "start S\n"
           "terminals a b\n"
           "stack f g\n"
           "S -> T + g\n"
           "T -> T + f\n"
           "T -> A\n"
           "A - g -> \"\"\n"
           "A - f -> C\n"
           "C -> \"a\" A B\n"
           "B - f -> \"bb\" B\n"
           "B - g -> \"b\"\n";
  }

  SugaredGrammar example_grammar_square() {
    return parse_grammar(square_grammar_text());
  }

  std::string g1_text() {
    return "start S\n"
           "terminals a b\n"
           "stack f\n"
           "S -> A + f\n"
           "A - f -> B\n"
           "B -> \"ab\"\n";
  }

  std::string loop_text() {
    return "start S\n"
           "terminals a\n"
           "stack f\n"
           "S -> S + f\n"
           "S -> A\n"
           "A - f -> A\n"
           "A -> \"a\"\n";
  }

}  // namespace dcl
