#include "theme/theme.hpp"

#include <algorithm>
#include <climits>
#include <map>

#include "theme/errors.hpp"

namespace theme {

std::vector<Rational> FundamentalInvariants::lambdas() const {
  std::vector<Rational> l{lambda1};
  for (int pj : p) l.push_back(l.back() + pj - 1);
  return l;
}

std::vector<Rational> ThemePresentation::lambdas() const { return invariants().lambdas(); }

Rational ThemePresentation::lambda(int j) const { return lambdas().at(j - 1); }

int ThemePresentation::trunc() const {
  int t = INT_MAX;
  for (const auto& s : S) t = std::min(t, s.trunc());
  return S.empty() ? INT_MAX : t;
}

ThemePresentation ThemePresentation::at_trunc(int n) const {
  ThemePresentation r = *this;
  for (auto& s : r.S) s = polynomial ? s.padded(n) : s.truncated(n);
  return r;
}

StandardWord ThemePresentation::word_from(int j) const {
  auto l = lambdas();
  StandardWord w;
  for (int i = j; i < k(); ++i) w.lambdas.push_back(l[i]);
  for (int i = j + 1; i < k(); ++i) w.S.push_back(S[i - 1]);
  return w;
}

ChainModule ThemePresentation::module() const { return ChainModule{lambdas(), S}; }

bool ThemePresentation::operator==(const ThemePresentation& o) const {
  if (lambda1 != o.lambda1 || p != o.p || S.size() != o.S.size()) return false;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (!S[i].agrees_with(o.S[i])) return false;
  return true;
}

std::string ThemePresentation::str() const {
  std::string out = "lambda1=" + to_string(lambda1) + " p=[";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + std::to_string(p[i]);
  out += "]";
  for (std::size_t i = 0; i < S.size(); ++i)
    out += " S" + std::to_string(i + 1) + "=" + S[i].str();
  return out;
}

ThemePresentation make_presentation(const Rational& lambda1, std::vector<int> p,
                                    std::vector<BSeries> S, bool polynomial) {
  ThemePresentation r;
  r.lambda1 = lambda1;
  r.p = std::move(p);
  r.S = std::move(S);
  r.polynomial = polynomial;
  return r;
}

int default_trunc(const FundamentalInvariants& inv) {
  auto l = inv.lambdas();
  int sum = 0;
  for (int pj : inv.p) sum += pj;
  return static_cast<int>(ceil_long(l.back() - l.front())) + sum + 2 * inv.k() + 8;
}

int working_trunc(const FundamentalInvariants& inv, int trunc) {
  int k = inv.k();
  int sum = 0;
  for (int pj : inv.p) sum += pj;
  return trunc + k * (k + 1) + sum;
}

Diagnostics validate(const ThemePresentation& pres) {
  Diagnostics d;
  int k = pres.k();
  auto l = pres.lambdas();
  for (int j = 1; j <= k; ++j)
    if (!(l[j - 1] > k - j))
      d.failures.push_back("lambda_" + std::to_string(j) + " = " + to_string(l[j - 1]) +
                           " must exceed " + std::to_string(k - j));
  for (std::size_t j = 0; j < pres.p.size(); ++j)
    if (pres.p[j] < 0) d.failures.push_back("p_" + std::to_string(j + 1) + " is negative");
  if (static_cast<int>(pres.S.size()) != k - 1) {
    d.failures.push_back("expected " + std::to_string(k - 1) + " series S_j");
    return d;
  }
  for (int j = 1; j < k; ++j) {
    const BSeries& s = pres.S[j - 1];
    std::string name = "S_" + std::to_string(j);
    if (s[0] != 1) d.failures.push_back(name + "(0) must be 1");
    int pj = pres.p[j - 1];
    if (pj >= 0) {
      if (pj > s.trunc())
        d.failures.push_back(name + " is truncated below b^" + std::to_string(pj));
      else if (s[pj] == 0)
        d.failures.push_back("coefficient of b^" + std::to_string(pj) + " in " + name +
                             " must be nonzero");
    }
  }
  return d;
}

PeeledForm peel_standard_form(const ChainModule& M, const Elem& g) {
  int top = elem_top(g);
  if (top < 0) throw Error(ErrorCode::InvalidInput, "zero generator");
  int k = top + 1;
  std::vector<Rational> lam(k);
  std::vector<BSeries> S(k > 1 ? k - 1 : 0);
  std::vector<Elem> basis(k);

  Elem x = g;
  x.resize(M.dim(), BSeries(elem_trunc(g)));
  int v = *x[top].valuation();
  BSeries unit = x[top].shift_down(v);
  x = elem_scale(series_inverse(unit), x);
  lam[top] = M.lam[top] + v;
  basis[top] = x;
  for (int i = top; i >= 1; --i) {
    Elem y = chain_apply_a_minus(M, lam[i], x);
    int ytop = elem_top(y);
    if (ytop >= i) throw Error(ErrorCode::NotATheme, "peeling did not lower the filtration");
    if (ytop < i - 1)
      throw Error(ErrorCode::PrecisionExhausted, "connecting series vanishes through trunc");
    int vv = *y[i - 1].valuation();
    BSeries w0 = y[i - 1].shift_down(vv);
    S[i - 1] = w0 * (1 / w0[0]);
    x = elem_scale(series_inverse(S[i - 1]), y);
    lam[i - 1] = M.lam[i - 1] + vv;
    basis[i - 1] = x;
  }
  if (!elem_is_zero(chain_apply_a_minus(M, lam[0], x)))
    throw Error(ErrorCode::NotATheme, "bottom element is not annihilated by (a - lambda_1 b)");
  std::vector<int> p;
  for (int i = 0; i + 1 < k; ++i) {
    Rational pj = lam[i + 1] - lam[i] + 1;
    if (!is_integer(pj) || pj < 0)
      throw Error(ErrorCode::NotATheme, "invariants are not of theme type");
    p.push_back(static_cast<int>(pj.get_num().get_si()));
  }
  return PeeledForm{make_presentation(lam[0], p, S, false), basis};
}

ThemePresentation from_generator(const GeneratedModule& M) {
  const XiElement& phi = M.generator;
  ChainModule X = xi_module(phi.lambda, phi.cap(), phi.trunc());
  return peel_standard_form(X, phi.comps).pres;
}

Embedding embed_in_xi_basis(const ThemePresentation& pres0, int trunc) {
  int k = pres0.k();
  ThemePresentation pres = pres0.at_trunc(trunc);
  Rational lam0 = pres.lambda_class();
  auto l = pres.lambdas();
  Rational n1 = l[0] - lam0;
  XiElement phi = XiElement::basis(lam0, 0, k - 1, trunc);
  phi.comps[0] = BSeries::monomial(1, static_cast<int>(n1.get_num().get_si()), trunc);
  Embedding e;
  e.basis.push_back(phi);
  for (int j = 1; j < k; ++j) {
    XiElement theta = pres.S[j - 1] * e.basis.back();
    Rational q = l[j] - lam0;
    XiElement next = solve_shift(j - 1, static_cast<int>(q.get_num().get_si()), theta);
    e.basis.push_back(next.with_cap(k - 1));
  }
  e.generator = e.basis.back();
  return e;
}

XiElement embed_in_xi(const ThemePresentation& pres, int trunc) {
  if (trunc < 0) trunc = working_trunc(pres.invariants(), default_trunc(pres.invariants()));
  return embed_in_xi_basis(pres, trunc).generator;
}

std::vector<Rational> rising_factorial_polynomial(const std::vector<Rational>& c) {
  std::vector<Rational> out(c.size(), Rational(0));
  std::vector<Rational> rf{Rational(1)};  // x(x+1)...(x+j-1)
  for (std::size_t j = 0; j < c.size(); ++j) {
    for (std::size_t i = 0; i < rf.size(); ++i) out[i] += c[j] * rf[i];
    std::vector<Rational> next(rf.size() + 1, Rational(0));
    for (std::size_t i = 0; i < rf.size(); ++i) {
      next[i + 1] += rf[i];
      next[i] += rf[i] * static_cast<long>(j);
    }
    rf = next;
  }
  return out;
}

Rational poly_eval(const std::vector<Rational>& c, const Rational& x) {
  Rational r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

namespace {

// Divides by (x - r); assumes r is a root.
std::vector<Rational> deflate(const std::vector<Rational>& c, const Rational& r) {
  std::size_t n = c.size() - 1;
  std::vector<Rational> q(n);
  Rational carry = 0;
  for (std::size_t i = n; i-- > 0;) {
    carry = c[i + 1] + carry * r;
    q[i] = carry;
  }
  return q;
}

}  // namespace

Bernstein bernstein_element(const ThemePresentation& pres, int trunc) {
  int k = pres.k();
  if (trunc < 0) trunc = working_trunc(pres.invariants(), default_trunc(pres.invariants()));
  GeneratedModule M = generate_module(embed_in_xi(pres, trunc));
  Bernstein B;
  B.trunc = M.trunc;
  int t = std::max(M.trunc, k);
  std::vector<BSeries> coeffs;
  for (int j = 0; j < k; ++j) {
    const BSeries& Sj = M.relation[j];
    Rational s = Sj[k - j];
    auto v = Sj.valuation();
    if (v && *v < k - j) B.initial_form_ok = false;
    B.sigma.push_back(s);
    coeffs.push_back(BSeries::monomial(-s, k - j, t));
  }
  coeffs.push_back(BSeries::constant(1, t));
  B.element = OpPoly(coeffs);
  std::vector<Rational> c;
  for (int j = 0; j < k; ++j) c.push_back(-B.sigma[j]);
  c.push_back(1);
  B.btilde = rising_factorial_polynomial(c);

  std::vector<Rational> poly = B.btilde;
  Rational bound = 1;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    Rational r = abs(poly[i] / poly.back());
    if (r + 1 > bound) bound = r + 1;
  }
  Rational lam0 = pres.lambda_class();
  for (long n = floor_long(-bound - lam0) - 1; n <= ceil_long(bound) + 1; ++n) {
    Rational mu = lam0 + n;
    while (poly.size() > 1 && poly_eval(poly, mu) == 0) {
      B.roots.push_back(mu);
      poly = deflate(poly, mu);
    }
  }
  B.remainder = poly;
  return B;
}

std::vector<Rational> bernstein_roots(const ThemePresentation& pres, int trunc) {
  return bernstein_element(pres, trunc).roots;
}

bool VSpace::contains(int e) const { return std::find(exps.begin(), exps.end(), e) != exps.end(); }

VSpace vspace(const FundamentalInvariants& inv, int j) {
  int k = inv.k();
  if (j < 1 || j > k - 1) throw Error(ErrorCode::InvalidInput, "vspace index out of range");
  VSpace v;
  v.j = j;
  for (int i = 0; i < k - j; ++i) v.exps.push_back(i);
  int q = 0;
  for (int i = j; i <= k - 1; ++i) {
    q += inv.p[i - 1];
    if (q >= k - j) {
      v.exps.push_back(q);
      break;
    }
  }
  return v;
}

Decomposition decompose_against(const StandardWord& Pj, const BSeries& T,
                                const FundamentalInvariants& inv, int j) {
  int k = inv.k();
  Rational lj = inv.lambdas()[j - 1];
  ChainModule E1{{lj}, {}};
  VSpace V = vspace(inv, j);
  int N = std::min(T.trunc(), Pj.trunc());
  int maxv = V.exps.back();
  if (N < maxv + 1) throw Error(ErrorCode::PrecisionExhausted, "trunc below the V_j support");
  // Column echelon of q -> P_j(b^q e); pivots keyed by leading degree.
  struct Pivot {
    RVector col;    // coefficients b^0..b^N
    RVector combo;  // in terms of z_0..z_N
  };
  std::map<int, Pivot> piv;
  for (int q = 0; q <= N; ++q) {
    Elem img = chain_apply_word(E1, Pj, {BSeries::monomial(1, q, N)});
    RVector col(img[0].coeffs().begin(), img[0].coeffs().begin() + N + 1);
    RVector combo(N + 1);
    combo[q] = 1;
    while (true) {
      int lead = -1;
      for (int d = 0; d <= N; ++d)
        if (col[d] != 0) {
          lead = d;
          break;
        }
      if (lead < 0) break;
      auto it = piv.find(lead);
      if (it == piv.end()) {
        Rational inv_lead = 1 / col[lead];
        for (auto& x : col) x *= inv_lead;
        for (auto& x : combo) x *= inv_lead;
        piv.emplace(lead, Pivot{col, combo});
        break;
      }
      Rational f = col[lead];
      for (int d = lead; d <= N; ++d) col[d] -= f * it->second.col[d];
      for (int d = 0; d <= N; ++d) combo[d] -= f * it->second.combo[d];
    }
  }
  Decomposition out;
  int D = N;
  for (int d = maxv + 1; d <= N; ++d)
    if (!piv.count(d)) {
      D = d - 1;
      break;
    }
  for (int d = 0; d <= D; ++d)
    if (!piv.count(d)) out.complement.push_back(d);
  if (out.complement != V.exps)
    throw Error(ErrorCode::PrecisionExhausted,
                "complement of P_j E does not match V_j at this trunc");
  RVector rest(T.coeffs().begin(), T.coeffs().begin() + N + 1);
  RVector zc(N + 1);
  BSeries S(D);
  for (int d = 0; d <= D; ++d) {
    if (rest[d] == 0) continue;
    auto it = piv.find(d);
    if (it == piv.end()) {
      S.set(d, rest[d]);
      rest[d] = 0;
      continue;
    }
    Rational f = rest[d];
    for (int e = d; e <= N; ++e) rest[e] -= f * it->second.col[e];
    for (int e = 0; e <= N; ++e) zc[e] += f * it->second.combo[e];
  }
  int zt = std::max(D - (k - j), 0);
  out.S = S;
  out.z = BSeries(RVector(zc.begin(), zc.begin() + zt + 1), zt);
  out.trunc = D;
  return out;
}

CanonicalResult canonical_form_with_witness(const ThemePresentation& pres0, int trunc) {
  auto inv = pres0.invariants();
  int k = pres0.k();
  if (trunc < 0) trunc = default_trunc(inv);
  int W = working_trunc(inv, trunc);
  ThemePresentation pres = pres0.at_trunc(W);
  ChainModule E = pres.module();
  auto l = pres.lambdas();
  Elem g = zero_elem(k, pres.polynomial ? W : std::min(W, pres.trunc()));
  g[k - 1].set(0, 1);
  std::vector<BSeries> St(k - 1);
  for (int j = k - 1; j >= 1; --j) {
    StandardWord Pj;
    for (int i = j; i < k; ++i) Pj.lambdas.push_back(l[i]);
    for (int i = j + 1; i < k; ++i) Pj.S.push_back(St[i - 1]);
    Elem y = chain_apply_word(E, Pj, g);
    for (int i = j; i < k; ++i)
      if (!y[i].is_zero())
        throw Error(ErrorCode::NotATheme, "word image left F_j during canonical reduction");
    BSeries T = y[j - 1];
    Rational c = T[0];
    if (c == 0) throw Error(ErrorCode::NotATheme, "connecting series is not a unit");
    Decomposition dec = decompose_against(Pj, T * (1 / c), inv, j);
    St[j - 1] = BSeries(dec.S.coeffs(), W);
    g[j - 1] = g[j - 1] - dec.z * c;
  }
  CanonicalResult out;
  std::vector<BSeries> Sx;
  for (const auto& s : St) Sx.push_back(s.truncated(s.degree() < 0 ? 0 : s.degree()).padded(trunc));
  out.pres = make_presentation(pres.lambda1, pres.p, Sx, true);
  out.generator = g;
  out.trunc = elem_trunc(g);
  if (!elem_is_zero(chain_apply_word(E, out.pres.at_trunc(W).word(), g)))
    throw Error(ErrorCode::PrecisionExhausted, "canonical generator check failed");
  return out;
}

ThemePresentation canonical_form(const ThemePresentation& pres, int trunc) {
  return canonical_form_with_witness(pres, trunc).pres;
}

bool is_canonical(const ThemePresentation& pres) {
  auto inv = pres.invariants();
  for (int j = 1; j < pres.k(); ++j) {
    VSpace V = vspace(inv, j);
    const BSeries& s = pres.S[j - 1];
    for (int d = 0; d <= s.trunc(); ++d)
      if (s[d] != 0 && !V.contains(d)) return false;
  }
  return true;
}

ThemePresentation quotient(const ThemePresentation& pres, int j) {
  int k = pres.k();
  if (j < 0 || j >= k) throw Error(ErrorCode::InvalidInput, "quotient index out of range");
  auto l = pres.lambdas();
  std::vector<int> p(pres.p.begin() + j, pres.p.end());
  std::vector<BSeries> S(pres.S.begin() + j, pres.S.end());
  return make_presentation(l[j], p, S, pres.polynomial);
}

ThemePresentation submodule(const ThemePresentation& pres, int j) {
  int k = pres.k();
  if (j < 1 || j > k) throw Error(ErrorCode::InvalidInput, "submodule index out of range");
  std::vector<int> p(pres.p.begin(), pres.p.begin() + (j - 1));
  std::vector<BSeries> S(pres.S.begin(), pres.S.begin() + (j - 1));
  return make_presentation(pres.lambda1, p, S, pres.polynomial);
}

ThemePresentation dual_twist(const ThemePresentation& pres, const Rational& delta) {
  int k = pres.k();
  auto l = pres.lambdas();
  if (!(delta > l.back() + k - 1))
    throw Error(ErrorCode::DeltaTooSmall,
                "delta must exceed lambda_k + k - 1 = " + to_string(l.back() + k - 1));
  std::vector<int> p(pres.p.rbegin(), pres.p.rend());
  std::vector<BSeries> S(pres.S.rbegin(), pres.S.rend());
  return make_presentation(delta - l.back(), p, S, pres.polynomial);
}

ThemePresentation tensor_rank1(const ThemePresentation& pres, const Rational& delta) {
  int k = pres.k();
  if (!(pres.lambda1 + delta > k - 1))
    throw Error(ErrorCode::ShiftTooNegative, "lambda_1 + delta must exceed k - 1");
  ThemePresentation r = pres;
  r.lambda1 = pres.lambda1 + delta;
  return r;
}

Rational rank2_parameter(const ThemePresentation& pres) {
  if (pres.k() != 2 || pres.p[0] < 1)
    throw Error(ErrorCode::WrongRank, "rank-2 parameter needs k = 2 and p_1 >= 1");
  return pres.S[0][pres.p[0]];
}

}  // namespace theme
