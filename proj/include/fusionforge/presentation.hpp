#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fusionforge/perm.hpp"

namespace ff {

/// symbol^exp with exp != 0.
struct Letter {
  std::size_t symbol;
  int exp;
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

/// Merges adjacent powers of one symbol and drops zero exponents.
Word free_reduce(const Word& w);
Word word_inverse(const Word& w);
Word concat(const Word& a, const Word& b);
/// Cyclic conjugate of the free reduction with the least (symbol, exp)
/// sequence, used to dedupe relators.
Word cyclic_normal(const Word& w);

/// Finitely presented group:
///
///     gens: a b t1
///     rel: a^3
///     rel: t1^-1 a t1 a
///     degree: 3
///     sylow: (0 1 2) = a
///
/// `sylow` lines map generators of S (permutations of `degree` points) to words.
struct Presentation {
  std::vector<std::string> symbols;
  std::vector<Word> relators;
  std::vector<std::pair<Perm, Word>> sylow_embedding;

  std::size_t symbol_index(const std::string& name) const;  // throws ParseError
  std::string format(const Word& w) const;
  /// Whitespace separated `sym` or `sym^k` tokens; "1" and "" are the empty word.
  Word parse(const std::string& text) const;
};

Presentation parse_presentation_text(const std::string& text, const std::string& source = "<input>");
std::string serialize_presentation(const Presentation& p);

}  // namespace ff
