#include "theme/xi.hpp"

#include <algorithm>

#include "theme/errors.hpp"

namespace theme {

XiElement XiElement::basis(const Rational& lambda, int j, int cap, int trunc) {
  XiElement x{lambda, zero_elem(std::max(cap, j) + 1, trunc)};
  x.comps[j].set(0, 1);
  return x;
}

XiElement XiElement::truncated(int t) const { return {lambda, elem_truncated(comps, t)}; }

XiElement XiElement::with_cap(int c) const {
  XiElement x{lambda, comps};
  int t = trunc();
  if (c + 1 < static_cast<int>(x.comps.size())) {
    for (std::size_t i = c + 1; i < x.comps.size(); ++i)
      if (!x.comps[i].is_zero()) throw Error(ErrorCode::InvalidInput, "Log-degree exceeds cap");
    x.comps.resize(c + 1);
  } else {
    x.comps.resize(c + 1, BSeries(t));
  }
  return x;
}

XiElement XiElement::operator+(const XiElement& o) const {
  int c = std::max(cap(), o.cap());
  return {lambda, elem_add(with_cap(c).comps, o.with_cap(c).comps)};
}

XiElement XiElement::operator-(const XiElement& o) const {
  int c = std::max(cap(), o.cap());
  return {lambda, elem_sub(with_cap(c).comps, o.with_cap(c).comps)};
}

bool XiElement::agrees_with(const XiElement& o) const {
  if (lambda != o.lambda) return false;
  int c = std::max(cap(), o.cap());
  return elem_agrees(with_cap(c).comps, o.with_cap(c).comps);
}

std::string XiElement::str() const {
  std::string out;
  Rational e = lambda - 1;
  for (int j = 0; j <= cap(); ++j) {
    if (comps[j].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + comps[j].str() + ")*s^(" + to_string(e) + ")";
    if (j == 1) out += "*log(s)";
    if (j >= 2) out += "*log(s)^" + std::to_string(j) + "/" + std::to_string(j) + "!";
  }
  return out.empty() ? "0" : out;
}

XiElement operator*(const BSeries& s, const XiElement& x) {
  return {x.lambda, elem_scale(s, x.comps)};
}

ChainModule xi_module(const Rational& lambda, int cap, int trunc) {
  ChainModule M;
  M.lam.assign(cap + 1, lambda);
  M.conn.assign(cap, BSeries::monomial(1, 1, std::max(trunc, 1)));
  return M;
}

XiElement xi_apply_a(const XiElement& phi) {
  return {phi.lambda, chain_apply_a(xi_module(phi.lambda, phi.cap(), phi.trunc()), phi.comps)};
}

XiElement op_apply_xi(const OpPoly& P, const XiElement& phi) {
  return {phi.lambda, chain_apply_op(xi_module(phi.lambda, phi.cap(), phi.trunc()), P, phi.comps)};
}

XiElement xi_apply_word(const StandardWord& w, const XiElement& phi) {
  return {phi.lambda,
          chain_apply_word(xi_module(phi.lambda, phi.cap(), phi.trunc()), w, phi.comps)};
}

XiElement xi_s_power(const Rational& r, int j, int cap, int trunc) {
  Rational lambda = lambda_class(r + 1);
  Rational m = r + 1 - lambda;
  if (m < 0)
    throw Error(ErrorCode::InvalidInput, "exponent " + to_string(r) + " is below s^{lambda-1}");
  XiElement x = XiElement::basis(lambda, j, cap, trunc);
  for (long i = 0; i < m.get_num().get_si(); ++i) x = xi_apply_a(x);
  return x;
}

namespace {

SMatrix columns_to_matrix(const std::vector<XiElement>& cols, int rows_from, int rows_to) {
  SMatrix A;
  for (int r = rows_from; r < rows_to; ++r) {
    SVector row;
    for (const auto& c : cols) row.push_back(c.comps[r]);
    A.push_back(row);
  }
  return A;
}

}  // namespace

GeneratedModule generate_module(const XiElement& phi0) {
  int d = phi0.log_degree();
  if (d < 0) throw Error(ErrorCode::InvalidInput, "zero generator");
  XiElement phi = phi0.with_cap(d);
  GeneratedModule M;
  M.generator = phi;
  M.rank = d + 1;
  std::vector<XiElement> v{phi};
  for (int i = 1; i <= M.rank; ++i) v.push_back(xi_apply_a(v.back()));
  M.basis.assign(v.begin(), v.begin() + M.rank);
  SMatrix A = columns_to_matrix(M.basis, 0, M.rank);
  DvrSolve s = dvr_solve(A, v.back().comps);
  M.relation = s.x;
  M.det_valuation = s.det_valuation;
  M.det_leading = s.det_leading;
  M.trunc = elem_trunc(s.x);
  return M;
}

FiltrationBasis filtration_member(const GeneratedModule& M, int j) {
  int k = M.rank;
  if (j < 1 || j > k) throw Error(ErrorCode::InvalidInput, "filtration index out of range");
  if (j == k) {
    FiltrationBasis full{M.basis, 0, true};
    int minv = 1 << 30;
    for (const auto& x : M.basis)
      for (const auto& s : x.comps)
        if (auto v = s.valuation()) minv = std::min(minv, *v);
    full.min_valuation = minv;
    return full;
  }
  SMatrix B = columns_to_matrix(M.basis, j, k);
  DvrKernel ker = dvr_kernel(B, k);
  if (static_cast<int>(ker.basis.size()) != j)
    throw Error(ErrorCode::PrecisionExhausted, "kernel rank mismatch in filtration");
  FiltrationBasis out;
  int minv = 1 << 30;
  for (const auto& u : ker.basis) {
    XiElement x{M.generator.lambda, zero_elem(k, elem_trunc(u))};
    for (int c = 0; c < k; ++c) x = x + u[c] * M.basis[c];
    for (int r = j; r < k; ++r) x.comps[r] = BSeries(x.trunc());
    x = x.with_cap(j - 1);
    for (const auto& s : x.comps)
      if (auto v = s.valuation()) minv = std::min(minv, *v);
    out.basis.push_back(x);
  }
  out.min_valuation = minv;
  out.inside_b_power = minv >= k - j;
  return out;
}

XiElement solve_shift(int j, int q, const XiElement& theta0) {
  XiElement theta = theta0;
  if (theta.log_degree() > j)
    throw Error(ErrorCode::NotInImage, "theta has Log-degree above j");
  theta = theta.with_cap(j);
  for (const auto& c : theta.comps)
    if (c[0] != 0) throw Error(ErrorCode::NotInImage, "theta is not in b Xi");
  int t = theta.trunc();
  if (t < 1) throw Error(ErrorCode::PrecisionExhausted, "trunc too small for solve_shift");
  XiElement psi{theta.lambda, zero_elem(j + 2, t - 1)};
  auto th = [&](int h, int n) -> const Rational& { return theta.comps[h][n]; };
  for (int m = 0; m <= t - 1; ++m) {
    if (m == q) {
      for (int h = 1; h <= j + 1; ++h) psi.comps[h].set(m, th(h - 1, m + 1));
      continue;
    }
    Rational above = 0;
    for (int h = j; h >= 0; --h) {
      Rational v = (th(h, m + 1) - above) / (m - q);
      psi.comps[h].set(m, v);
      above = v;
    }
  }
  return psi;
}

std::map<Rational, GeneratedModule> component_split(const XiMultiElement& phi) {
  std::map<Rational, GeneratedModule> out;
  for (const auto& [lam, x] : phi.parts)
    if (!x.is_zero()) out.emplace(lam, generate_module(x));
  return out;
}

int multi_rank(const XiMultiElement& phi) {
  std::vector<XiElement> parts;
  int total = 0;
  for (const auto& [lam, x] : phi.parts) {
    if (x.is_zero()) continue;
    parts.push_back(x.with_cap(x.log_degree()));
    total += x.log_degree() + 1;
  }
  // Columns a^i phi for i < total, rows = all components of all parts.
  std::vector<std::vector<XiElement>> iter(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p) {
    iter[p].push_back(parts[p]);
    for (int i = 1; i < total; ++i) iter[p].push_back(xi_apply_a(iter[p].back()));
  }
  SMatrix M;
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (int r = 0; r <= parts[p].cap(); ++r) {
      SVector row;
      for (int i = 0; i < total; ++i) row.push_back(iter[p][i].comps[r]);
      M.push_back(row);
    }
  return static_cast<int>(dvr_kernel(M, total).pivot_valuations.size());
}

TPoly XiTElement::coefficient(int comp, int bdeg) const {
  TPoly r;
  for (std::size_t m = 1; m < by_t_power.size(); ++m) {
    const auto& x = by_t_power[m];
    if (comp <= x.cap()) r = r + TPoly::monomial(x.comps[comp][bdeg], static_cast<int>(m));
  }
  return r;
}

int XiTElement::log_degree() const {
  int d = -1;
  for (const auto& x : by_t_power) d = std::max(d, x.log_degree());
  return d;
}

XiTElement monodromy_defect(const XiElement& phi) {
  XiTElement out{phi.lambda, {}};
  int N = phi.cap();
  int t = phi.trunc();
  out.by_t_power.push_back(XiElement{phi.lambda, zero_elem(N + 1, t)});
  for (int m = 1; m <= N; ++m) {
    XiElement x{phi.lambda, zero_elem(N + 1, t)};
    Rational inv = 1 / factorial(m);
    for (int i = 0; i + m <= N; ++i) x.comps[i] = phi.comps[i + m] * inv;
    out.by_t_power.push_back(x);
  }
  return out;
}

}  // namespace theme
