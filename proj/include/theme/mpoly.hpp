#pragma once

#include <map>
#include <string>
#include <vector>

#include "theme/scalar.hpp"

namespace theme {

// Polynomial over Q in variables x_0..x_{n-1} (names kept by the owner).
class MPoly {
 public:
  using Monomial = std::vector<int>;  // exponents, trailing zeros trimmed

  MPoly() = default;
  explicit MPoly(const Rational& c);
  static MPoly var(int i);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int total_degree() const;
  // Largest variable index used plus one.
  int num_vars() const;
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator-() const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator*(const Rational& s) const;
  bool operator==(const MPoly& o) const { return terms_ == o.terms_; }

  Rational eval(const std::vector<Rational>& point) const;
  std::string str(const std::vector<std::string>& names) const;

 private:
  void add_term(Monomial m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

// Series in b with polynomial coefficients: entry d multiplies b^d.
using PSeries = std::vector<MPoly>;

}  // namespace theme
