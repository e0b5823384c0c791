#pragma once

#include <string>
#include <vector>

#include "theme/chain.hpp"
#include "theme/opalg.hpp"
#include "theme/xi.hpp"

namespace theme {

struct FundamentalInvariants {
  Rational lambda1;
  std::vector<int> p;  // p_1..p_{k-1}
  int k() const { return static_cast<int>(p.size()) + 1; }
  std::vector<Rational> lambdas() const;
  bool operator==(const FundamentalInvariants& o) const {
    return lambda1 == o.lambda1 && p == o.p;
  }
};

// Standard basis e_1..e_k with (a - lambda_{j+1} b) e_{j+1} = S_j e_j and
// (a - lambda_1 b) e_1 = 0.  S[j-1] holds S_j.
struct ThemePresentation {
  Rational lambda1;
  std::vector<int> p;
  std::vector<BSeries> S;
  bool polynomial = true;  // S_j are exact polynomials (zero-padded on demand)

  int k() const { return static_cast<int>(p.size()) + 1; }
  FundamentalInvariants invariants() const { return {lambda1, p}; }
  std::vector<Rational> lambdas() const;
  Rational lambda(int j) const;  // 1-based
  Rational lambda_class() const { return theme::lambda_class(lambda1); }
  int trunc() const;
  ThemePresentation at_trunc(int n) const;
  // (a - lambda_{j+1} b) S_{j+1}^{-1} ... (a - lambda_k b); word_from(0) = P.
  StandardWord word_from(int j) const;
  StandardWord word() const { return word_from(0); }
  ChainModule module() const;
  bool operator==(const ThemePresentation& o) const;
  std::string str() const;
};

ThemePresentation make_presentation(const Rational& lambda1, std::vector<int> p,
                                    std::vector<BSeries> S, bool polynomial = true);

// Precision used when none is given: ceil(lambda_k - lambda_1) + sum p + 2k + 8.
int default_trunc(const FundamentalInvariants& inv);
// Extra working precision absorbed by the cascaded solves.
int working_trunc(const FundamentalInvariants& inv, int trunc);

struct Diagnostics {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
Diagnostics validate(const ThemePresentation& pres);

struct PeeledForm {
  ThemePresentation pres;
  std::vector<Elem> basis;  // standard basis e_1..e_k in the ambient coordinates
};
// Standard form of the submodule generated by g in a chain module whose
// graded pieces are rank one (Xi_lambda or a presentation module).
PeeledForm peel_standard_form(const ChainModule& M, const Elem& g);

ThemePresentation from_generator(const GeneratedModule& M);

struct Embedding {
  XiElement generator;            // image of e_k
  std::vector<XiElement> basis;   // images of e_1..e_k
};
Embedding embed_in_xi_basis(const ThemePresentation& pres, int trunc);
XiElement embed_in_xi(const ThemePresentation& pres, int trunc = -1);

struct Bernstein {
  OpPoly element;                   // a^k - sum sigma_j b^{k-j} a^j
  std::vector<Rational> sigma;      // sigma_0..sigma_{k-1}
  std::vector<Rational> btilde;     // B~(x) in the monomial basis, low to high
  std::vector<Rational> roots;      // roots of B~ lying in lambda + Z, sorted
  std::vector<Rational> remainder;  // cofactor without roots in lambda + Z
  bool initial_form_ok = true;      // relation S_j has valuation >= k-j
  int trunc = 0;
};
Bernstein bernstein_element(const ThemePresentation& pres, int trunc = -1);
std::vector<Rational> bernstein_roots(const ThemePresentation& pres, int trunc = -1);
// Monomial coefficients of sum_j c_j x(x+1)...(x+j-1).
std::vector<Rational> rising_factorial_polynomial(const std::vector<Rational>& c);
Rational poly_eval(const std::vector<Rational>& c, const Rational& x);

struct VSpace {
  int j = 0;
  std::vector<int> exps;  // sorted
  bool contains(int e) const;
};
VSpace vspace(const FundamentalInvariants& inv, int j);

struct Decomposition {
  BSeries S;  // supported on the V_j exponents, exact
  BSeries z;  // T = S + P_j z through `trunc`
  int trunc = 0;
  std::vector<int> complement;  // degrees outside P_j E_{lambda_j} found below trunc
};
// T e = S e + P_j (z e) in E_{lambda_j}; Pj must be word_from(j) of a
// presentation with invariants inv.
Decomposition decompose_against(const StandardWord& Pj, const BSeries& T,
                                const FundamentalInvariants& inv, int j);

struct CanonicalResult {
  ThemePresentation pres;  // canonical, exact polynomials
  Elem generator;          // new standard generator in the input basis
  int trunc = 0;
};
CanonicalResult canonical_form_with_witness(const ThemePresentation& pres, int trunc = -1);
ThemePresentation canonical_form(const ThemePresentation& pres, int trunc = -1);
bool is_canonical(const ThemePresentation& pres);

ThemePresentation quotient(const ThemePresentation& pres, int j);   // E / F_j
ThemePresentation submodule(const ThemePresentation& pres, int j);  // F_j
ThemePresentation dual_twist(const ThemePresentation& pres, const Rational& delta);
ThemePresentation tensor_rank1(const ThemePresentation& pres, const Rational& delta);
Rational rank2_parameter(const ThemePresentation& pres);

}  // namespace theme
