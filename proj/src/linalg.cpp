#include "theme/linalg.hpp"

#include <algorithm>

#include "theme/errors.hpp"

namespace theme {

std::size_t rank(RMatrix m) {
  std::size_t r = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

bool ConstraintSystem::add(RVector form, const std::string& tag) {
  form.resize(nparams_ + 1);
  log_.emplace_back(form, tag);
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    auto& row = rows_[k];
    row.resize(nparams_ + 1);
    int p = pivots_[k];
    if (form[p] == 0) continue;
    Rational f = form[p];
    for (int j = 0; j <= nparams_; ++j)
      if (row[j] != 0) form[j] -= f * row[j];
  }
  int piv = -1;
  for (int j = 1; j <= nparams_; ++j)
    if (form[j] != 0) {
      piv = j;
      break;
    }
  if (piv < 0) {
    if (form[0] != 0) {
      if (!conflict_) conflict_ = Conflict{tag, form[0]};
      return false;
    }
    return true;
  }
  Rational inv = 1 / form[piv];
  for (auto& x : form) x *= inv;
  for (auto& row : rows_) {
    if (row[piv] == 0) continue;
    Rational f = row[piv];
    for (int j = 0; j <= nparams_; ++j)
      if (form[j] != 0) row[j] -= f * form[j];
  }
  rows_.push_back(std::move(form));
  pivots_.push_back(piv);
  return true;
}

RVector ConstraintSystem::particular() const {
  RVector sol(nparams_);
  for (std::size_t k = 0; k < rows_.size(); ++k) sol[pivots_[k] - 1] = -rows_[k][0];
  return sol;
}

std::vector<RVector> ConstraintSystem::nullspace() const {
  std::vector<bool> is_pivot(nparams_ + 1, false);
  for (int p : pivots_) is_pivot[p] = true;
  std::vector<RVector> out;
  for (int f = 1; f <= nparams_; ++f) {
    if (is_pivot[f]) continue;
    RVector v(nparams_);
    v[f - 1] = 1;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const auto& row = rows_[k];
      Rational c = f < static_cast<int>(row.size()) ? row[f] : Rational(0);
      v[pivots_[k] - 1] = -c;
    }
    out.push_back(std::move(v));
  }
  return out;
}

namespace {

std::optional<int> val(const BSeries& s) { return s.valuation(); }

// Gaussian elimination with minimal-valuation row pivots; returns the
// pivot valuations and the sign of the permutation.
struct Triangular {
  SMatrix U;
  SVector rhs;
  int det_val = 0;
  Rational det_lead = 1;
  bool singular = false;
};

Triangular triangulate(SMatrix A, SVector v) {
  Triangular t;
  std::size_t n = A.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    int bv = 0;
    for (std::size_t r = c; r < n; ++r) {
      auto vr = val(A[r][c]);
      if (vr && (best == n || *vr < bv)) {
        best = r;
        bv = *vr;
      }
    }
    if (best == n) {
      t.singular = true;
      return t;
    }
    if (best != c) {
      std::swap(A[best], A[c]);
      if (!v.empty()) std::swap(v[best], v[c]);
      t.det_lead = -t.det_lead;
    }
    t.det_val += bv;
    t.det_lead *= A[c][c][bv];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (A[r][c].is_zero()) continue;
      BSeries f = series_divide(A[r][c], A[c][c]);
      for (std::size_t j = c; j < n; ++j) A[r][j] -= f * A[c][j];
      if (!v.empty()) v[r] -= f * v[c];
    }
  }
  t.U = std::move(A);
  t.rhs = std::move(v);
  return t;
}

}  // namespace

DvrSolve dvr_solve(const SMatrix& A, const SVector& v) {
  Triangular t = triangulate(A, v);
  if (t.singular) throw Error(ErrorCode::PrecisionExhausted, "matrix singular through trunc");
  std::size_t n = A.size();
  SVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    BSeries acc = t.rhs[ii];
    for (std::size_t l = ii + 1; l < n; ++l) acc -= t.U[ii][l] * x[l];
    x[ii] = series_divide(acc, t.U[ii][ii]);
  }
  return DvrSolve{std::move(x), t.det_val, t.det_lead};
}

std::optional<std::pair<int, Rational>> dvr_det(const SMatrix& A) {
  Triangular t = triangulate(A, {});
  if (t.singular) return std::nullopt;
  return std::make_pair(t.det_val, t.det_lead);
}

DvrKernel dvr_kernel(const SMatrix& B0, std::size_t n) {
  SMatrix B = B0;
  std::size_t m = B.size();
  int tr = 1 << 30;
  for (auto& row : B)
    for (auto& s : row) tr = std::min(tr, s.trunc());
  if (m == 0) tr = 0;
  // U starts as identity; columns stored as vectors.
  std::vector<SVector> U(n, SVector(n, BSeries(m == 0 ? 0 : tr)));
  for (std::size_t i = 0; i < n; ++i) U[i][i] = BSeries::constant(1, m == 0 ? 0 : tr);
  std::vector<bool> pivot(n, false);
  DvrKernel out;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t best = n;
    int bv = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (pivot[c]) continue;
      auto v = val(B[i][c]);
      if (v && (best == n || *v < bv)) {
        best = c;
        bv = *v;
      }
    }
    if (best == n) continue;
    pivot[best] = true;
    out.pivot_valuations.push_back(bv);
    for (std::size_t c = 0; c < n; ++c) {
      if (pivot[c] || B[i][c].is_zero()) continue;
      BSeries f = series_divide(B[i][c], B[i][best]);
      for (std::size_t r = 0; r < m; ++r) B[r][c] -= f * B[r][best];
      for (std::size_t r = 0; r < n; ++r) U[c][r] -= f * U[best][r];
    }
  }
  for (std::size_t c = 0; c < n; ++c)
    if (!pivot[c]) out.basis.push_back(U[c]);
  return out;
}

}  // namespace theme
