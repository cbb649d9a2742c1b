#include "walkforge/ordinal.hpp"

#include <utility>

#include "walkforge/errors.hpp"

namespace walkforge {

Ordinal Ordinal::nat(std::uint64_t n) {
  Ordinal o;
  if (n > 0) o.terms_.push_back(Term{Ordinal{}, n});
  return o;
}

Ordinal Ordinal::omega() { return omega_pow(nat(1), 1); }

Ordinal Ordinal::omega_pow(const Ordinal& exponent, std::uint64_t coefficient) {
  Ordinal o;
  if (coefficient > 0) o.terms_.push_back(Term{exponent, coefficient});
  return o;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) throw Error("ordinal term with zero coefficient");
    if (i + 1 < terms.size() &&
        compare(terms[i].exponent, terms[i + 1].exponent) != Cmp::Greater)
      throw Error("ordinal exponents not strictly decreasing");
  }
  Ordinal o;
  o.terms_ = std::move(terms);
  return o;
}

bool Ordinal::is_nat() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::uint64_t Ordinal::as_nat() const {
  if (terms_.empty()) return 0;
  if (!is_nat()) throw Error("not a finite ordinal: " + str());
  return terms_[0].coefficient;
}

Ordinal::Kind Ordinal::classify() const {
  if (terms_.empty()) return Kind::Zero;
  return terms_.back().exponent.is_zero() ? Kind::Successor : Kind::Limit;
}

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    if (i > 0) out += '+';
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (!(t.exponent.is_nat() && t.exponent.as_nat() == 1)) {
      out += '^';
      if (t.exponent.is_nat() && t.exponent.as_nat() <= 9) {
        out += static_cast<char>('0' + t.exponent.as_nat());
      } else {
        out += '(';
        out += t.exponent.str();
        out += ')';
      }
    }
    if (t.coefficient != 1) {
      out += '*';
      out += std::to_string(t.coefficient);
    }
  }
  return out;
}

Cmp compare(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    Cmp e = compare(x[i].exponent, y[i].exponent);
    if (e != Cmp::Equal) return e;
    if (x[i].coefficient != y[i].coefficient)
      return x[i].coefficient < y[i].coefficient ? Cmp::Less : Cmp::Greater;
  }
  if (x.size() != y.size()) return x.size() < y.size() ? Cmp::Less : Cmp::Greater;
  return Cmp::Equal;
}

bool Ordinal::operator==(const Ordinal& other) const {
  return compare(*this, other) == Cmp::Equal;
}
bool Ordinal::operator<(const Ordinal& other) const {
  return compare(*this, other) == Cmp::Less;
}
bool Ordinal::operator<=(const Ordinal& other) const {
  return compare(*this, other) != Cmp::Greater;
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& e = b.terms().front().exponent;
  std::vector<Ordinal::Term> out;
  std::size_t i = 0;
  while (i < a.terms().size() && compare(a.terms()[i].exponent, e) == Cmp::Greater)
    out.push_back(a.terms()[i++]);
  std::size_t lead = out.size();
  out.insert(out.end(), b.terms().begin(), b.terms().end());
  if (i < a.terms().size() && compare(a.terms()[i].exponent, e) == Cmp::Equal) {
    std::uint64_t c = 0;
    if (__builtin_add_overflow(a.terms()[i].coefficient, out[lead].coefficient, &c))
      throw Error("coefficient overflow in ordinal addition");
    out[lead].coefficient = c;
  }
  return Ordinal::from_terms(std::move(out));
}

Ordinal successor(const Ordinal& a) { return add(a, Ordinal::nat(1)); }

Ordinal predecessor(const Ordinal& a) {
  if (a.classify() != Ordinal::Kind::Successor)
    throw Error("predecessor of a non-successor: " + a.str());
  std::vector<Ordinal::Term> ts = a.terms();
  if (--ts.back().coefficient == 0) ts.pop_back();
  return Ordinal::from_terms(std::move(ts));
}

Ordinal fundamental_sequence(const Ordinal& a, std::uint64_t n) {
  if (a.classify() != Ordinal::Kind::Limit)
    throw Error("fundamental sequence of a non-limit: " + a.str());
  std::vector<Ordinal::Term> ts = a.terms();
  Ordinal::Term last = ts.back();
  ts.pop_back();
  if (last.coefficient > 1) ts.push_back(Ordinal::Term{last.exponent, last.coefficient - 1});
  Ordinal base = Ordinal::from_terms(std::move(ts));
  if (last.exponent.classify() == Ordinal::Kind::Limit)
    return add(base, Ordinal::omega_pow(fundamental_sequence(last.exponent, n)));
  return add(base, Ordinal::omega_pow(predecessor(last.exponent), n));
}

namespace {

struct OrdinalParser {
  std::string_view s;
  std::size_t pos = 0;

  char peek() const { return pos < s.size() ? s[pos] : '\0'; }
  bool is_digit(char c) const { return c >= '0' && c <= '9'; }

  std::uint64_t parse_nat() {
    if (!is_digit(peek())) throw ParseError("expected a number", pos);
    if (peek() == '0') {
      ++pos;
      return 0;  // "0" only; "00" trips the caller's end-of-term handling
    }
    std::uint64_t v = 0;
    while (is_digit(peek())) {
      std::uint64_t d = static_cast<std::uint64_t>(peek() - '0');
      if (v > (UINT64_MAX - d) / 10) throw ParseError("number out of range", pos);
      v = v * 10 + d;
      ++pos;
    }
    return v;
  }

  Ordinal parse_term() {
    if (peek() == 'w') {
      ++pos;
      Ordinal exponent = Ordinal::nat(1);
      if (peek() == '^') {
        ++pos;
        if (is_digit(peek())) {
          exponent = Ordinal::nat(static_cast<std::uint64_t>(peek() - '0'));
          ++pos;
        } else if (peek() == '(') {
          ++pos;
          exponent = parse_sum();
          if (peek() != ')') throw ParseError("expected ')'", pos);
          ++pos;
        } else {
          throw ParseError("expected a digit or '(' after '^'", pos);
        }
      }
      std::uint64_t coefficient = 1;
      if (peek() == '*') {
        ++pos;
        std::size_t at = pos;
        coefficient = parse_nat();
        if (coefficient == 0) throw ParseError("zero coefficient", at);
      }
      return Ordinal::omega_pow(exponent, coefficient);
    }
    if (is_digit(peek())) return Ordinal::nat(parse_nat());
    throw ParseError("expected 'w' or a number", pos);
  }

  Ordinal parse_sum() {
    Ordinal acc = parse_term();
    while (peek() == '+') {
      ++pos;
      acc = add(acc, parse_term());
    }
    return acc;
  }
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) {
  OrdinalParser p{text};
  Ordinal o = p.parse_sum();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return o;
}

}  // namespace walkforge
