#include "theme/opalg.hpp"

#include <algorithm>
#include <climits>

#include "theme/errors.hpp"

namespace theme {

OpPoly::OpPoly(std::vector<BSeries> coeffs) : c_(std::move(coeffs)) { trim(); }

OpPoly OpPoly::series(const BSeries& s) { return OpPoly({s}); }

OpPoly OpPoly::a(int trunc) { return OpPoly({BSeries(trunc), BSeries::constant(1, trunc)}); }

OpPoly OpPoly::a_minus(const Rational& mu, int trunc) {
  return OpPoly({BSeries::monomial(-mu, 1, trunc), BSeries::constant(1, trunc)});
}

int OpPoly::trunc() const {
  int t = INT_MAX;
  for (const auto& s : c_) t = std::min(t, s.trunc());
  return c_.empty() ? 0 : t;
}

BSeries OpPoly::coeff(int j) const {
  if (j >= 0 && j < static_cast<int>(c_.size())) return c_[j];
  return BSeries(trunc());
}

void OpPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

OpPoly OpPoly::operator+(const OpPoly& o) const {
  int t = std::min(trunc(), o.trunc());
  if (is_zero()) t = o.trunc();
  if (o.is_zero()) t = trunc();
  std::vector<BSeries> r(std::max(c_.size(), o.c_.size()), BSeries(t));
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (j < c_.size()) r[j] += c_[j];
    if (j < o.c_.size()) r[j] += o.c_[j];
    r[j] = r[j].truncated(t);
  }
  return OpPoly(std::move(r));
}

OpPoly OpPoly::operator-(const OpPoly& o) const {
  std::vector<BSeries> neg;
  for (const auto& s : o.c_) neg.push_back(-s);
  OpPoly m;
  m.c_ = std::move(neg);
  return *this + m;
}

OpPoly OpPoly::operator*(const OpPoly& o) const { return op_normalize_mul(*this, o); }

bool OpPoly::agrees_with(const OpPoly& o) const {
  int t = std::min(trunc(), o.trunc());
  std::size_t n = std::max(c_.size(), o.c_.size());
  for (std::size_t j = 0; j < n; ++j) {
    BSeries x = j < c_.size() ? c_[j].truncated(t) : BSeries(t);
    BSeries y = j < o.c_.size() ? o.c_[j].truncated(t) : BSeries(t);
    if (!x.agrees_with(y)) return false;
  }
  return true;
}

OpPoly OpPoly::homogeneous_part(int w) const {
  int t = trunc();
  std::vector<BSeries> r;
  for (int j = 0; j <= std::min(w, degree()); ++j) {
    BSeries s(std::max(t, w));
    if (w - j <= c_[j].trunc()) s.set(w - j, c_[j][w - j]);
    r.push_back(s);
  }
  return OpPoly(std::move(r));
}

std::string OpPoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (int j = degree(); j >= 0; --j) {
    if (c_[j].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c_[j].str() + ")";
    if (j >= 1) out += j == 1 ? "*a" : "*a^" + std::to_string(j);
  }
  return out;
}

OpPoly op_normalize_mul(const OpPoly& x, const OpPoly& y) {
  if (x.is_zero() || y.is_zero()) return OpPoly();
  int t = std::min(x.trunc(), y.trunc());
  int dx = x.degree(), dy = y.degree();
  std::vector<BSeries> r(dx + dy + 1, BSeries(t));
  // a^i Y(b) = sum_r binom(i,r) delta^r(Y) a^{i-r}, delta = b^2 d/db.
  for (int j = 0; j <= dy; ++j) {
    std::vector<BSeries> dpow{y.coeffs()[j].truncated(t)};
    for (int rr = 1; rr <= dx; ++rr) dpow.push_back(dpow.back().delta());
    for (int i = 0; i <= dx; ++i) {
      const BSeries& X = x.coeffs()[i];
      if (X.is_zero()) continue;
      Rational binom = 1;
      for (int rr = 0; rr <= i; ++rr) {
        if (rr > 0) binom = binom * (i - rr + 1) / rr;
        if (dpow[rr].is_zero()) continue;
        r[i - rr + j] += (X * dpow[rr]) * binom;
      }
    }
  }
  return OpPoly(std::move(r));
}

RightDivision op_divide_right(const OpPoly& x, const Rational& mu) {
  int t = x.is_zero() ? 0 : x.trunc();
  OpPoly rest = x;
  OpPoly q;
  OpPoly lin = OpPoly::a_minus(mu, t);
  while (rest.degree() >= 1) {
    int d = rest.degree();
    std::vector<BSeries> mono(d, BSeries(t));
    mono[d - 1] = rest.coeffs()[d];
    OpPoly term(std::move(mono));
    q = q + term;
    rest = rest - term * lin;
  }
  BSeries r = rest.is_zero() ? BSeries(t) : rest.coeffs()[0];
  return {q, r};
}

int StandardWord::trunc() const {
  int t = INT_MAX;
  for (const auto& s : S) t = std::min(t, s.trunc());
  return S.empty() ? 64 : t;
}

std::string StandardWord::str() const {
  std::string out;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    if (j > 0) out += " * inv(" + S[j - 1].str() + ") * ";
    out += "(a - " + to_string(lambdas[j]) + " b)";
  }
  return out;
}

OpPoly word_product(const StandardWord& w) {
  if (w.lambdas.empty()) throw Error(ErrorCode::InvalidInput, "empty word");
  if (w.S.size() + 1 != w.lambdas.size())
    throw Error(ErrorCode::InvalidInput, "word needs k-1 series for k factors");
  int t = w.trunc();
  OpPoly p = OpPoly::a_minus(w.lambdas[0], t);
  for (std::size_t j = 1; j < w.lambdas.size(); ++j) {
    p = p * OpPoly::series(series_inverse(w.S[j - 1].truncated(t)));
    p = p * OpPoly::a_minus(w.lambdas[j], t);
  }
  return p;
}

OpPoly word_expand(const StandardWord& w) {
  OpPoly p = word_product(w);
  BSeries inv = series_inverse(p.coeffs().back());
  std::vector<BSeries> c;
  for (const auto& s : p.coeffs()) c.push_back(inv * s);
  return OpPoly(std::move(c));
}

}  // namespace theme
