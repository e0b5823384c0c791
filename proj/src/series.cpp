#include "theme/series.hpp"

#include <algorithm>

#include "theme/errors.hpp"

namespace theme {

BSeries::BSeries(int trunc) : c_(std::max(trunc, 0) + 1) {}

BSeries::BSeries(std::vector<Rational> coeffs, int trunc) : c_(std::move(coeffs)) {
  c_.resize(std::max(trunc, 0) + 1);
}

BSeries BSeries::constant(const Rational& v, int trunc) {
  BSeries s(trunc);
  s.c_[0] = v;
  return s;
}

BSeries BSeries::monomial(const Rational& v, int deg, int trunc) {
  BSeries s(trunc);
  if (deg <= trunc) s.c_[deg] = v;
  return s;
}

const Rational& BSeries::operator[](int n) const {
  if (n < 0 || n > trunc())
    throw Error(ErrorCode::PrecisionExhausted,
                "coefficient b^" + std::to_string(n) + " beyond trunc " + std::to_string(trunc()));
  return c_[n];
}

void BSeries::set(int n, const Rational& v) {
  if (n < 0 || n > trunc())
    throw Error(ErrorCode::PrecisionExhausted, "write beyond trunc");
  c_[n] = v;
}

std::optional<int> BSeries::valuation() const {
  for (int i = 0; i <= trunc(); ++i)
    if (c_[i] != 0) return i;
  return std::nullopt;
}

int BSeries::degree() const {
  for (int i = trunc(); i >= 0; --i)
    if (c_[i] != 0) return i;
  return -1;
}

BSeries BSeries::truncated(int n) const {
  if (n >= trunc()) return *this;
  return BSeries(std::vector<Rational>(c_.begin(), c_.begin() + std::max(n, 0) + 1), n);
}

BSeries BSeries::padded(int n) const {
  if (n <= trunc()) return truncated(n);
  return BSeries(c_, n);
}

BSeries BSeries::operator+(const BSeries& o) const {
  int t = std::min(trunc(), o.trunc());
  BSeries r(t);
  for (int i = 0; i <= t; ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

BSeries BSeries::operator-(const BSeries& o) const {
  int t = std::min(trunc(), o.trunc());
  BSeries r(t);
  for (int i = 0; i <= t; ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

BSeries BSeries::operator-() const {
  BSeries r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

BSeries BSeries::operator*(const BSeries& o) const { return series_mul(*this, o); }

BSeries BSeries::operator*(const Rational& s) const {
  BSeries r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

BSeries& BSeries::operator+=(const BSeries& o) { return *this = *this + o; }
BSeries& BSeries::operator-=(const BSeries& o) { return *this = *this - o; }

BSeries BSeries::shift_up(int m) const {
  BSeries r(trunc() + m);
  for (int i = 0; i <= trunc(); ++i) r.c_[i + m] = c_[i];
  return r;
}

BSeries BSeries::shift_down(int m) const {
  if (m == 0) return *this;
  for (int i = 0; i < m && i <= trunc(); ++i)
    if (c_[i] != 0)
      throw Error(ErrorCode::NotInSpan, "series not divisible by b^" + std::to_string(m));
  if (m > trunc()) throw Error(ErrorCode::PrecisionExhausted, "shift below trunc");
  return BSeries(std::vector<Rational>(c_.begin() + m, c_.end()), trunc() - m);
}

BSeries BSeries::delta() const {
  BSeries r(trunc());
  for (int n = 2; n <= trunc(); ++n) r.c_[n] = c_[n - 1] * (n - 1);
  return r;
}

bool BSeries::agrees_with(const BSeries& o) const {
  int t = std::min(trunc(), o.trunc());
  for (int i = 0; i <= t; ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

std::string BSeries::str() const {
  std::string out;
  for (int i = 0; i <= trunc(); ++i) {
    if (c_[i] == 0) continue;
    std::string coef = to_string(c_[i]);
    bool neg = coef[0] == '-';
    if (neg) coef.erase(0, 1);
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    if (i == 0) {
      out += coef;
      continue;
    }
    if (coef != "1") out += coef.find('/') != std::string::npos ? "(" + coef + ")*" : coef + "*";
    out += i == 1 ? "b" : "b^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

BSeries series_mul(const BSeries& x, const BSeries& y) {
  int t = std::min(x.trunc(), y.trunc());
  std::vector<Rational> r(t + 1);
  const auto& a = x.coeffs();
  const auto& b = y.coeffs();
  for (int i = 0; i <= t; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= t; ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return BSeries(std::move(r), t);
}

BSeries series_inverse(const BSeries& x) {
  if (x[0] == 0) throw Error(ErrorCode::NonInvertible, "constant term is zero");
  int t = x.trunc();
  const auto& a = x.coeffs();
  std::vector<Rational> y(t + 1);
  Rational inv0 = 1 / a[0];
  y[0] = inv0;
  for (int n = 1; n <= t; ++n) {
    Rational s = 0;
    for (int i = 1; i <= n; ++i)
      if (a[i] != 0) s += a[i] * y[n - i];
    y[n] = -s * inv0;
  }
  return BSeries(std::move(y), t);
}

BSeries series_derivative(const BSeries& x) {
  int t = x.trunc();
  if (t == 0) return BSeries(0);
  std::vector<Rational> r(t);
  for (int n = 1; n <= t; ++n) r[n - 1] = x[n] * n;
  return BSeries(std::move(r), t - 1);
}

BSeries series_divide(const BSeries& x, const BSeries& y) {
  auto v = y.valuation();
  if (!v) throw Error(ErrorCode::PrecisionExhausted, "division by a series that is zero through trunc");
  BSeries yy = y.shift_down(*v);
  BSeries xx = x.shift_down(*v);
  return xx * series_inverse(yy);
}

EulerSolution solve_euler(const Rational& m, const BSeries& rhs) {
  int t = rhs.trunc();
  EulerSolution out{BSeries(t), std::nullopt};
  bool natural = is_integer(m) && m >= 0 && m <= t;
  int slot = natural ? static_cast<int>(m.get_num().get_si()) : -1;
  if (natural && rhs[slot] != 0) throw ObstructionError(slot, rhs[slot]);
  for (int n = 0; n <= t; ++n) {
    if (n == slot) continue;
    out.T.set(n, rhs[n] / (n - m));
  }
  if (natural) out.free_slot = slot;
  return out;
}

}  // namespace theme
