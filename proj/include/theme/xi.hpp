#pragma once

#include <map>
#include <string>
#include <vector>

#include "theme/chain.hpp"
#include "theme/opalg.hpp"
#include "theme/series.hpp"

namespace theme {

// sum_j c_j(b) e_{lambda,j}, e_{lambda,j} = s^{lambda-1} (Log s)^j / j!.
struct XiElement {
  Rational lambda;          // in (0,1]
  std::vector<BSeries> comps;  // c_0..c_N

  int cap() const { return static_cast<int>(comps.size()) - 1; }
  int trunc() const { return elem_trunc(comps); }
  int log_degree() const { return elem_top(comps); }
  bool is_zero() const { return log_degree() < 0; }

  static XiElement basis(const Rational& lambda, int j, int cap, int trunc);
  XiElement truncated(int trunc) const;
  XiElement with_cap(int cap) const;  // zero-extends or drops (must be zero)
  XiElement operator+(const XiElement& o) const;
  XiElement operator-(const XiElement& o) const;
  bool agrees_with(const XiElement& o) const;
  std::string str() const;
};

XiElement operator*(const BSeries& s, const XiElement& x);

// Xi_lambda^(N) as a chain module.
ChainModule xi_module(const Rational& lambda, int cap, int trunc);

XiElement xi_apply_a(const XiElement& phi);
XiElement op_apply_xi(const OpPoly& P, const XiElement& phi);
XiElement xi_apply_word(const StandardWord& w, const XiElement& phi);

// s^{r} (Log s)^j / j! with a = multiplication by s: equals a^m e_{lambda,j}
// for r = lambda - 1 + m.  Requires m >= 0.
XiElement xi_s_power(const Rational& r, int j, int cap, int trunc);

struct XiMultiElement {
  std::map<Rational, XiElement> parts;
};

struct GeneratedModule {
  XiElement generator;
  int rank = 0;
  std::vector<XiElement> basis;   // phi, a phi, ..., a^{k-1} phi
  std::vector<BSeries> relation;  // a^k phi = sum_j relation[j] a^j phi
  int det_valuation = 0;          // certificate: det of the basis matrix
  Rational det_leading;           //   = det_leading b^det_valuation + ...
  int trunc = 0;
};

GeneratedModule generate_module(const XiElement& phi);

struct FiltrationBasis {
  std::vector<XiElement> basis;  // C[[b]]-basis of F_j
  int min_valuation = 0;         // of all coefficients
  bool inside_b_power = false;   // F_j in b^{k-j} Xi^{(j-1)}
};

FiltrationBasis filtration_member(const GeneratedModule& M, int j);

// psi with (a - (lambda+q) b) psi = theta for theta in b Xi^{(j)}; psi lies in
// Xi^{(j+1)} with only b^q on e_{j+1}, and no b^q e_0 term.
XiElement solve_shift(int j, int q, const XiElement& theta);

std::map<Rational, GeneratedModule> component_split(const XiMultiElement& phi);
// Rank over C[[b]] of the submodule generated by phi in the sum of the Xi_lambda.
int multi_rank(const XiMultiElement& phi);

// (e^{-2 i pi lambda} T - id) phi as a polynomial in t = 2 i pi with
// Xi-coefficients: by_t_power[m] is the t^m coefficient (m >= 1).
struct XiTElement {
  Rational lambda;
  std::vector<XiElement> by_t_power;
  TPoly coefficient(int comp, int bdeg) const;
  int log_degree() const;
};

XiTElement monodromy_defect(const XiElement& phi);

}  // namespace theme
