#include "theme/chain.hpp"

#include <algorithm>
#include <climits>

#include "theme/errors.hpp"

namespace theme {

Elem zero_elem(std::size_t n, int trunc) { return Elem(n, BSeries(trunc)); }

int elem_trunc(const Elem& x) {
  int t = INT_MAX;
  for (const auto& s : x) t = std::min(t, s.trunc());
  return x.empty() ? 0 : t;
}

Elem elem_truncated(const Elem& x, int trunc) {
  Elem r;
  for (const auto& s : x) r.push_back(s.truncated(trunc));
  return r;
}

Elem elem_add(const Elem& x, const Elem& y) {
  Elem r;
  for (std::size_t i = 0; i < x.size(); ++i) r.push_back(x[i] + y[i]);
  return r;
}

Elem elem_sub(const Elem& x, const Elem& y) {
  Elem r;
  for (std::size_t i = 0; i < x.size(); ++i) r.push_back(x[i] - y[i]);
  return r;
}

Elem elem_scale(const BSeries& s, const Elem& x) {
  Elem r;
  for (const auto& c : x) r.push_back(s * c);
  return r;
}

Elem elem_scale(const Rational& s, const Elem& x) {
  Elem r;
  for (const auto& c : x) r.push_back(c * s);
  return r;
}

bool elem_is_zero(const Elem& x) {
  return std::all_of(x.begin(), x.end(), [](const BSeries& s) { return s.is_zero(); });
}

bool elem_agrees(const Elem& x, const Elem& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].agrees_with(y[i])) return false;
  return true;
}

int elem_top(const Elem& x) {
  for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i)
    if (!x[i].is_zero()) return i;
  return -1;
}

Elem chain_apply_a(const ChainModule& M, const Elem& x) {
  std::size_t n = M.dim();
  int t = elem_trunc(x);
  Elem r(n, BSeries(t));
  for (std::size_t i = 0; i < n; ++i) {
    BSeries s = x[i].shift_up(1).truncated(t) * M.lam[i] + x[i].delta();
    if (i + 1 < n) s += M.conn[i] * x[i + 1];
    r[i] = s;
  }
  return r;
}

Elem chain_apply_a_minus(const ChainModule& M, const Rational& mu, const Elem& x) {
  Elem ax = chain_apply_a(M, x);
  int t = elem_trunc(ax);
  for (std::size_t i = 0; i < ax.size(); ++i) ax[i] -= x[i].shift_up(1).truncated(t) * mu;
  return ax;
}

Elem chain_apply_op(const ChainModule& M, const OpPoly& P, const Elem& x) {
  int t = std::min(elem_trunc(x), P.is_zero() ? INT_MAX : P.trunc());
  Elem acc = zero_elem(M.dim(), t);
  Elem pw = elem_truncated(x, t);
  for (int j = 0; j <= P.degree(); ++j) {
    if (j > 0) pw = chain_apply_a(M, pw);
    acc = elem_add(acc, elem_scale(P.coeffs()[j], pw));
  }
  return acc;
}

Elem chain_apply_word(const ChainModule& M, const StandardWord& w, const Elem& x) {
  std::size_t k = w.lambdas.size();
  Elem y = chain_apply_a_minus(M, w.lambdas[k - 1], x);
  for (std::size_t j = k - 1; j-- > 0;) {
    y = elem_scale(series_inverse(w.S[j]), y);
    y = chain_apply_a_minus(M, w.lambdas[j], y);
  }
  return y;
}

RVector AffSeries::form(int n) const {
  RVector f(terms.size());
  for (std::size_t p = 0; p < terms.size(); ++p) f[p] = terms[p][n];
  return f;
}

AffSeries AffSeries::operator+(const AffSeries& o) const {
  int t = std::min(trunc(), o.trunc());
  AffSeries r{std::vector<BSeries>(std::max(terms.size(), o.terms.size()), BSeries(t))};
  for (std::size_t p = 0; p < terms.size(); ++p) r.terms[p] += terms[p];
  for (std::size_t p = 0; p < o.terms.size(); ++p) r.terms[p] += o.terms[p];
  return r;
}

AffSeries AffSeries::operator-(const AffSeries& o) const {
  int t = std::min(trunc(), o.trunc());
  AffSeries r{std::vector<BSeries>(std::max(terms.size(), o.terms.size()), BSeries(t))};
  for (std::size_t p = 0; p < terms.size(); ++p) r.terms[p] += terms[p];
  for (std::size_t p = 0; p < o.terms.size(); ++p) r.terms[p] -= o.terms[p];
  return r;
}

AffSeries AffSeries::times(const BSeries& s) const {
  AffSeries r;
  for (const auto& x : terms) r.terms.push_back(s * x);
  return r;
}

BSeries AffSeries::eval(const RVector& params) const {
  BSeries r = terms[0];
  for (std::size_t p = 1; p < terms.size(); ++p) {
    const Rational& v = p - 1 < params.size() ? params[p - 1] : Rational(0);
    if (v != 0) r += terms[p] * v;
  }
  return r;
}

AffElem aff_zero(std::size_t n, int trunc) {
  return AffElem(n, AffSeries{{BSeries(trunc)}});
}

AffElem aff_from(const Elem& x) {
  AffElem r;
  for (const auto& s : x) r.push_back(AffSeries{{s}});
  return r;
}

Elem aff_eval(const AffElem& x, const RVector& params) {
  Elem r;
  for (const auto& s : x) r.push_back(s.eval(params));
  return r;
}

AffElem aff_scale(const BSeries& s, const AffElem& x) {
  AffElem r;
  for (const auto& c : x) r.push_back(c.times(s));
  return r;
}

AffElem chain_solve_a_minus(const ChainModule& M, const Rational& mu, const AffElem& z,
                            ConstraintSystem& sys, const std::string& tag) {
  std::size_t n = M.dim();
  AffElem y(n);
  for (std::size_t ii = n; ii-- > 0;) {
    AffSeries R = z[ii];
    if (ii + 1 < n) R = R - y[ii + 1].times(M.conn[ii].truncated(y[ii + 1].trunc()));
    int tR = R.trunc();
    if (tR < 1) throw Error(ErrorCode::PrecisionExhausted, "trunc exhausted in shift solve");
    std::string where = tag + " f" + std::to_string(ii + 1);
    // b^2 Y' + (lam - mu) b Y = R: constant term of R must vanish.
    sys.add(R.form(0), where + " b^0");
    Rational m = mu - M.lam[ii];
    bool natural = is_integer(m) && m >= 0 && m <= tR - 1;
    int slot = natural ? static_cast<int>(m.get_num().get_si()) : -1;
    if (natural) sys.add(R.form(slot + 1), where + " b^" + std::to_string(slot + 1));
    int np = sys.num_params();
    std::size_t nterms = std::max<std::size_t>(R.terms.size(), natural ? np + 2 : 1);
    AffSeries Y{std::vector<BSeries>(nterms, BSeries(tR - 1))};
    for (std::size_t p = 0; p < R.terms.size(); ++p) {
      const BSeries& Rp = R.terms[p];
      for (int d = 0; d <= tR - 1; ++d) {
        if (d == slot) continue;
        const Rational& c = Rp[d + 1];
        if (c != 0) Y.terms[p].set(d, c / (d - m));
      }
    }
    if (natural) {
      int p = sys.add_param();
      Y.terms.resize(std::max<std::size_t>(Y.terms.size(), p + 2), BSeries(tR - 1));
      Y.terms[p + 1].set(slot, 1);
    }
    y[ii] = std::move(Y);
  }
  return y;
}

AffElem chain_kernel_of_word(const ChainModule& M, const StandardWord& w, int trunc,
                             ConstraintSystem& sys) {
  std::size_t k = w.lambdas.size();
  AffElem y = chain_solve_a_minus(M, w.lambdas[0], aff_zero(M.dim(), trunc), sys, "level 1");
  for (std::size_t i = 1; i < k; ++i) {
    AffElem z = aff_scale(w.S[i - 1], y);
    y = chain_solve_a_minus(M, w.lambdas[i], z, sys, "level " + std::to_string(i + 1));
  }
  return y;
}

}  // namespace theme
