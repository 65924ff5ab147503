#include "uknap/rat.hpp"

#include <cctype>
#include <stdexcept>

namespace uknap {

Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

Int parse_int(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rat: empty number");
  std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("parse_rat: sign without digits");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw std::invalid_argument("parse_rat: bad number '" + s + "'");
    }
  }
  // mpz rejects a leading '+'
  return Int(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

Rat parse_rat(const std::string& s) {
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  return make_rat(num, den);
}

std::string rat_to_string(const Rat& r) {
  // gmp prints "p" when den == 1 and "p/q" otherwise, which is exactly the
  // accepted input syntax.
  return r.get_str();
}

std::string rat_to_decimal(const Rat& r, int digits) {
  if (digits < 0) throw std::invalid_argument("rat_to_decimal: negative digits");
  Int num = r.get_num();
  Int den = r.get_den();
  bool negative = num < 0;
  if (negative) num = -num;
  Int pow10 = 1;
  for (int i = 0; i < digits; ++i) pow10 *= 10;
  Int scaled = num * pow10;
  Int q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  Int twice = 2 * rem;
  // Round half to even on the discarded remainder.
  if (twice > den || (twice == den && mpz_odd_p(q.get_mpz_t()))) q += 1;
  Int int_part = q / pow10;
  Int frac_part = q % pow10;
  std::string out = (negative && q != 0) ? "-" : "";
  out += int_part.get_str();
  if (digits > 0) {
    std::string f = frac_part.get_str();
    out += ".";
    out += std::string(static_cast<std::size_t>(digits) - f.size(), '0');
    out += f;
  }
  return out;
}

Int floor_rat(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

}  // namespace uknap
