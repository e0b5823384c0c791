#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace theme {

using Rational = mpq_class;

std::string to_string(const Rational& q);
// Accepts "p", "-p", "p/q"; throws ParseError otherwise.
Rational parse_rational(const std::string& text);

bool is_integer(const Rational& q);
long floor_long(const Rational& q);
long ceil_long(const Rational& q);
// Representative of q modulo Z in (0,1].
Rational lambda_class(const Rational& q);
// x (x+1) ... (x+n-1); 1 for n = 0.
Rational rising(const Rational& x, int n);
Rational factorial(int n);

// Polynomial in the formal symbol t (standing for 2 i pi) over Q.
class TPoly {
 public:
  TPoly() = default;
  explicit TPoly(Rational c);
  static TPoly monomial(Rational c, int deg);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int n) const;

  TPoly operator+(const TPoly& o) const;
  TPoly operator-(const TPoly& o) const;
  TPoly operator*(const TPoly& o) const;
  TPoly operator*(const Rational& s) const;
  bool operator==(const TPoly& o) const { return c_ == o.c_; }

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace theme
