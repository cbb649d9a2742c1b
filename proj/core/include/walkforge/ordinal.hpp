#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace walkforge {

// An ordinal below epsilon_0 in Cantor normal form:
//
//   w^{e_1} * c_1 + ... + w^{e_k} * c_k,   e_1 > ... > e_k,  c_i >= 1,
//
// where the exponents are themselves ordinals of the same kind.  The empty
// term list is zero.  Values are immutable once built; every operation
// returns a fresh normal form.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;  // zero
  static Ordinal nat(std::uint64_t n);
  static Ordinal omega();
  // w^exponent * coefficient (coefficient 0 collapses to zero).
  static Ordinal omega_pow(const Ordinal& exponent, std::uint64_t coefficient = 1);
  // Builds directly from a term list; exponents must be strictly decreasing.
  static Ordinal from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_nat() const;
  std::uint64_t as_nat() const;  // throws unless is_nat()

  enum class Kind { Zero, Successor, Limit };
  Kind classify() const;

  const std::vector<Term>& terms() const { return terms_; }

  // Canonical rendering: "w^3*2+w+5", exponents descending, "*1" omitted,
  // "w^1" printed as "w", a pure natural printed as digits.
  std::string str() const;

  bool operator==(const Ordinal& other) const;
  bool operator!=(const Ordinal& other) const { return !(*this == other); }
  bool operator<(const Ordinal& other) const;
  bool operator<=(const Ordinal& other) const;
  bool operator>(const Ordinal& other) const { return other < *this; }
  bool operator>=(const Ordinal& other) const { return other <= *this; }

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coefficient = 0;
};

enum class Cmp { Less, Equal, Greater };

// Strict linear order on normal forms.
Cmp compare(const Ordinal& a, const Ordinal& b);

// Ordinal (non-commutative) addition: a + b absorbs the tail of a below the
// leading exponent of b.
Ordinal add(const Ordinal& a, const Ordinal& b);

Ordinal successor(const Ordinal& a);

// Predecessor of a successor ordinal; throws on zero and limits.
Ordinal predecessor(const Ordinal& a);

// The n-th member of the canonical fundamental sequence of a limit ordinal:
//   (b + w^{g+1})[n] = b + w^g * n,
//   (b + w^g)[n]     = b + w^{g[n]}   for g a limit.
// Strictly increasing in n with supremum a.  Throws unless a is a limit.
Ordinal fundamental_sequence(const Ordinal& a, std::uint64_t n);

// Parses the grammar
//   ordinal := term ("+" term)*
//   term    := "w" exp? mult? | nat
//   exp     := "^" ( digit | "(" ordinal ")" )
//   mult    := "*" nat
//   nat     := [1-9][0-9]* | "0"
// Terms are summed left to right with ordinal addition, so any expression the
// grammar admits normalizes; str() of the result round-trips.  Throws
// ParseError (with offset) on syntax errors and on zero coefficients.
Ordinal parse_ordinal(std::string_view text);

}  // namespace walkforge
