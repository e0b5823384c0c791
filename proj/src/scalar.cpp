#include "theme/scalar.hpp"

#include <cctype>

#include "theme/errors.hpp"

namespace theme {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  auto digits = [](const std::string& t, std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  std::size_t slash = s.find('/');
  bool ok = slash == std::string::npos ? digits(s, start, s.size())
                                       : digits(s, start, slash) && digits(s, slash + 1, s.size());
  if (!ok) throw ParseError("not a rational: '" + text + "'", 0);
  if (s[0] == '+') s.erase(0, 1);
  Rational q(s);
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'", 0);
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

long floor_long(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}

long ceil_long(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}

Rational lambda_class(const Rational& q) {
  Rational r = q - ceil_long(q) + 1;
  return r;
}

Rational rising(const Rational& x, int n) {
  Rational r = 1;
  for (int i = 0; i < n; ++i) r *= x + i;
  return r;
}

Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

TPoly::TPoly(Rational c) {
  c_.push_back(std::move(c));
  trim();
}

TPoly TPoly::monomial(Rational c, int deg) {
  TPoly p;
  p.c_.assign(deg + 1, Rational(0));
  p.c_[deg] = std::move(c);
  p.trim();
  return p;
}

Rational TPoly::coeff(int n) const {
  return n >= 0 && n < static_cast<int>(c_.size()) ? c_[n] : Rational(0);
}

void TPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

TPoly TPoly::operator+(const TPoly& o) const {
  TPoly r;
  r.c_.assign(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
  r.trim();
  return r;
}

TPoly TPoly::operator-(const TPoly& o) const { return *this + o * Rational(-1); }

TPoly TPoly::operator*(const TPoly& o) const {
  TPoly r;
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  r.trim();
  return r;
}

TPoly TPoly::operator*(const Rational& s) const {
  TPoly r = *this;
  for (auto& x : r.c_) x *= s;
  r.trim();
  return r;
}

std::string TPoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    std::string coef = to_string(c_[i]);
    if (!out.empty()) out += coef[0] == '-' ? " - " : " + ";
    else if (coef[0] == '-') out += "-";
    if (coef[0] == '-') coef.erase(0, 1);
    if (i == 0) out += coef;
    else {
      if (coef != "1") out += "(" + coef + ")*";
      out += i == 1 ? "t" : "t^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace theme
