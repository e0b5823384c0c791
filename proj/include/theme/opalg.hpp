#pragma once

#include <string>
#include <utility>
#include <vector>

#include "theme/series.hpp"

namespace theme {

// Sum_j C_j(b) a^j with the b-series on the left of the powers of a.
class OpPoly {
 public:
  OpPoly() = default;
  explicit OpPoly(std::vector<BSeries> coeffs);

  static OpPoly series(const BSeries& s);
  static OpPoly a(int trunc);
  // a - mu b
  static OpPoly a_minus(const Rational& mu, int trunc);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  int trunc() const;
  const std::vector<BSeries>& coeffs() const { return c_; }
  BSeries coeff(int j) const;

  OpPoly operator+(const OpPoly& o) const;
  OpPoly operator-(const OpPoly& o) const;
  OpPoly operator*(const OpPoly& o) const;
  bool agrees_with(const OpPoly& o) const;

  // Weight-w part (a and b of weight 1): sum_j C_j[w-j] b^{w-j} a^j.
  OpPoly homogeneous_part(int w) const;

  std::string str() const;

 private:
  void trim();
  std::vector<BSeries> c_;
};

OpPoly op_normalize_mul(const OpPoly& x, const OpPoly& y);

struct RightDivision {
  OpPoly quotient;
  BSeries remainder;
};
// x = q (a - mu b) + r(b)
RightDivision op_divide_right(const OpPoly& x, const Rational& mu);

// (a - l_1 b) S_1^{-1} (a - l_2 b) ... S_{k-1}^{-1} (a - l_k b), kept factored.
struct StandardWord {
  std::vector<Rational> lambdas;
  std::vector<BSeries> S;
  int trunc() const;
  std::string str() const;
};

// Expanded word, left-multiplied by the inverse of its leading coefficient
// so that the result is monic in a (the left ideal is unchanged).
OpPoly word_expand(const StandardWord& w);
// Literal product without the monic normalization.
OpPoly word_product(const StandardWord& w);

}  // namespace theme
