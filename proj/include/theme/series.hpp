#pragma once

#include <optional>
#include <string>
#include <vector>

#include "theme/scalar.hpp"

namespace theme {

// Truncated power series in b: coefficients of b^0..b^trunc are meaningful.
class BSeries {
 public:
  BSeries() : c_(1) {}
  explicit BSeries(int trunc);
  BSeries(std::vector<Rational> coeffs, int trunc);

  static BSeries constant(const Rational& v, int trunc);
  static BSeries monomial(const Rational& v, int deg, int trunc);

  int trunc() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& operator[](int n) const;
  // Zero above trunc is NOT implied; reading past trunc throws.
  const Rational& at(int n) const { return (*this)[n]; }
  void set(int n, const Rational& v);
  const std::vector<Rational>& coeffs() const { return c_; }

  std::optional<int> valuation() const;
  // Highest index with a nonzero coefficient, -1 for zero.
  int degree() const;
  bool is_zero() const { return !valuation().has_value(); }

  BSeries truncated(int n) const;
  // Extends with zero coefficients; only meaningful for exact polynomials.
  BSeries padded(int n) const;

  BSeries operator+(const BSeries& o) const;
  BSeries operator-(const BSeries& o) const;
  BSeries operator-() const;
  BSeries operator*(const BSeries& o) const;
  BSeries operator*(const Rational& s) const;
  BSeries& operator+=(const BSeries& o);
  BSeries& operator-=(const BSeries& o);

  // Multiplication by b^m (exact, trunc grows by m).
  BSeries shift_up(int m) const;
  // Division by b^m; the first m coefficients must vanish (NotInSpan otherwise).
  BSeries shift_down(int m) const;
  // b^2 S'(b), kept at the same trunc.
  BSeries delta() const;

  // Coefficientwise equality on the common range.
  bool agrees_with(const BSeries& o) const;
  bool operator==(const BSeries& o) const { return c_ == o.c_; }

  std::string str() const;

 private:
  std::vector<Rational> c_;
};

inline BSeries operator*(const Rational& s, const BSeries& x) { return x * s; }

BSeries series_mul(const BSeries& x, const BSeries& y);
BSeries series_inverse(const BSeries& x);
BSeries series_derivative(const BSeries& x);
// (x / b^v) * (y / b^v)^{-1} with v = valuation(y); requires valuation(x) >= v.
BSeries series_divide(const BSeries& x, const BSeries& y);

struct EulerSolution {
  BSeries T;
  std::optional<int> free_slot;  // degree m of the free constant, when 0 <= m <= trunc
};

// Solves b T' - m T = rhs.  Throws ObstructionError when m is a natural
// number within trunc and the coefficient of b^m in rhs is nonzero.
EulerSolution solve_euler(const Rational& m, const BSeries& rhs);

}  // namespace theme
