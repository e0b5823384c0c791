#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "theme/series.hpp"

namespace theme {

using RVector = std::vector<Rational>;
using RMatrix = std::vector<RVector>;  // row-major

std::size_t rank(RMatrix m);

// Linear constraints c_0 + sum_i c_{i+1} p_i = 0 over a growing set of
// parameters p_i, kept in reduced row echelon form.
class ConstraintSystem {
 public:
  struct Conflict {
    std::string tag;
    Rational residual;  // the constraint reduces to residual = 0
  };

  int num_params() const { return nparams_; }
  int add_param() { return nparams_++; }

  // form[0] is the constant, form[i+1] multiplies p_i.  Returns false (and
  // records the first conflict) if the system becomes inconsistent.
  bool add(RVector form, const std::string& tag);
  bool consistent() const { return !conflict_.has_value(); }
  const std::optional<Conflict>& conflict() const { return conflict_; }

  // Solution with all free parameters set to zero.
  RVector particular() const;
  // Basis of solutions of the homogeneous system.
  std::vector<RVector> nullspace() const;
  std::size_t rank() const { return rows_.size(); }
  // Every constraint in the order it was added, before reduction.
  const std::vector<std::pair<RVector, std::string>>& log() const { return log_; }

 private:
  int nparams_ = 0;
  std::vector<RVector> rows_;  // padded lazily
  std::vector<int> pivots_;
  std::optional<Conflict> conflict_;
  std::vector<std::pair<RVector, std::string>> log_;
};

// Matrices over C[[b]] (truncated).  Row-major.
using SVector = std::vector<BSeries>;
using SMatrix = std::vector<SVector>;

struct DvrSolve {
  SVector x;
  int det_valuation;
  Rational det_leading;  // coefficient of b^det_valuation in det A
};

// Solves A x = v for square A over C[[b]].  Throws NotInSpan when the
// solution is not integral and PrecisionExhausted when A is singular
// through trunc.
DvrSolve dvr_solve(const SMatrix& A, const SVector& v);
// Valuation and leading coefficient of det A (nullopt if zero through trunc).
std::optional<std::pair<int, Rational>> dvr_det(const SMatrix& A);

struct DvrKernel {
  std::vector<SVector> basis;      // columns spanning the kernel
  std::vector<int> pivot_valuations;  // one per pivot (rank = size)
};

// Kernel of B : C[[b]]^n -> C[[b]]^m (B has m rows, n columns) by unimodular
// column reduction with minimal-valuation pivots.  n must be given when m=0.
DvrKernel dvr_kernel(const SMatrix& B, std::size_t ncols);

}  // namespace theme
