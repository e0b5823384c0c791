#pragma once

#include <string>
#include <vector>

#include "theme/linalg.hpp"
#include "theme/opalg.hpp"
#include "theme/series.hpp"

namespace theme {

// Free C[[b]]-module with basis f_0..f_{n-1} and
//   a f_i = lam[i] b f_i + conn[i-1] f_{i-1}.
// A theme presentation (conn = S) and Xi_lambda^(N) (lam const, conn = b)
// are both of this shape.
struct ChainModule {
  std::vector<Rational> lam;
  std::vector<BSeries> conn;  // size n-1; conn[i] links f_{i+1} to f_i
  std::size_t dim() const { return lam.size(); }
};

using Elem = std::vector<BSeries>;

Elem zero_elem(std::size_t n, int trunc);
int elem_trunc(const Elem& x);
Elem elem_truncated(const Elem& x, int trunc);
Elem elem_add(const Elem& x, const Elem& y);
Elem elem_sub(const Elem& x, const Elem& y);
Elem elem_scale(const BSeries& s, const Elem& x);
Elem elem_scale(const Rational& s, const Elem& x);
bool elem_is_zero(const Elem& x);
bool elem_agrees(const Elem& x, const Elem& y);
// Highest index with a nonzero component, -1 for zero.
int elem_top(const Elem& x);

Elem chain_apply_a(const ChainModule& M, const Elem& x);
Elem chain_apply_a_minus(const ChainModule& M, const Rational& mu, const Elem& x);
Elem chain_apply_op(const ChainModule& M, const OpPoly& P, const Elem& x);
// Applies the factored word right to left.
Elem chain_apply_word(const ChainModule& M, const StandardWord& w, const Elem& x);

// Series whose coefficients are affine forms in the parameters of a
// ConstraintSystem: terms[0] is the constant part, terms[p+1] the
// coefficient series of parameter p.
struct AffSeries {
  std::vector<BSeries> terms;
  int trunc() const { return terms.front().trunc(); }
  RVector form(int n) const;
  AffSeries operator+(const AffSeries& o) const;
  AffSeries operator-(const AffSeries& o) const;
  AffSeries times(const BSeries& s) const;
  BSeries eval(const RVector& params) const;
};
using AffElem = std::vector<AffSeries>;

AffElem aff_zero(std::size_t n, int trunc);
AffElem aff_from(const Elem& x);
Elem aff_eval(const AffElem& x, const RVector& params);
AffElem aff_scale(const BSeries& s, const AffElem& x);

// All y with (a - mu b) y = z; new parameters for free slots and
// constraints for obstructions are recorded in sys, tagged with `tag`.
AffElem chain_solve_a_minus(const ChainModule& M, const Rational& mu, const AffElem& z,
                            ConstraintSystem& sys, const std::string& tag);

// General element x of M with w x = 0, as an affine family constrained by sys.
AffElem chain_kernel_of_word(const ChainModule& M, const StandardWord& w, int trunc,
                             ConstraintSystem& sys);

}  // namespace theme
