#include "theme/hom.hpp"

#include <algorithm>

#include "theme/errors.hpp"

namespace theme {

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Yes: return "yes";
    case Decision::No: return "no";
    case Decision::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

constexpr int kStabilizationMargin = 8;

struct KernelSolve {
  AffElem x;
  ConstraintSystem sys;
  ChainModule M;
  StandardWord w;
};

KernelSolve solve_kernel(const ThemePresentation& src, const ThemePresentation& dst, int N) {
  KernelSolve s;
  s.M = dst.at_trunc(N).module();
  s.w = src.at_trunc(N).word();
  s.x = chain_kernel_of_word(s.M, s.w, N, s.sys);
  return s;
}

long as_long(const Rational& q) { return q.get_num().get_si(); }

struct InjectionCore {
  Decision decision = Decision::Unknown;
  Elem image;
  std::optional<ObstructionCert> obstruction;
  int trunc = 0;
};

InjectionCore injection_at(const ThemePresentation& src, const ThemePresentation& dst, int N) {
  int k = src.k();
  KernelSolve s = solve_kernel(src, dst, N);
  int d = static_cast<int>(as_long(src.lambdas().back() - dst.lambdas().back()));
  const AffSeries& top = s.x[k - 1];
  if (d > top.trunc()) throw Error(ErrorCode::PrecisionExhausted, "sigma degree beyond trunc");
  RVector sigma = top.form(d);
  sigma.resize(s.sys.num_params() + 1);
  InjectionCore out;
  out.trunc = elem_trunc(aff_eval(s.x, {}));
  ConstraintSystem pinned;
  while (pinned.num_params() < s.sys.num_params()) pinned.add_param();
  RVector sigma_one = sigma;
  sigma_one[0] = -1;
  pinned.add(sigma_one, "sigma = 1");
  for (const auto& [form, tag] : s.sys.log()) pinned.add(form, tag);
  if (!pinned.consistent()) {
    out.decision = Decision::No;
    out.obstruction = ObstructionCert{pinned.conflict()->tag, pinned.conflict()->residual};
    return out;
  }
  out.decision = Decision::Yes;
  out.image = aff_eval(s.x, pinned.particular());
  if (!elem_is_zero(chain_apply_word(s.M, s.w, out.image)))
    throw Error(ErrorCode::PrecisionExhausted, "injection witness fails the annihilator check");
  out.trunc = elem_trunc(out.image);
  return out;
}

bool same_core(const InjectionCore& a, const InjectionCore& b) {
  if (a.decision != b.decision) return false;
  if (a.decision == Decision::Yes) return elem_agrees(a.image, b.image);
  return a.obstruction->where == b.obstruction->where &&
         a.obstruction->residual == b.obstruction->residual;
}

std::optional<int> image_codimension(const ThemePresentation& dst, const Elem& x) {
  int k = static_cast<int>(x.size());
  ChainModule M = dst.at_trunc(elem_trunc(x)).module();
  std::vector<Elem> cols{x};
  for (int i = 1; i < k; ++i) cols.push_back(chain_apply_a(M, cols.back()));
  SMatrix A(k, SVector(k));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) A[r][c] = cols[c][r];
  auto det = dvr_det(A);
  if (!det) return std::nullopt;
  return det->first;
}

}  // namespace

int hom_trunc(const ThemePresentation& src, const ThemePresentation& dst) {
  int base = std::max(default_trunc(src.invariants()), default_trunc(dst.invariants()));
  Rational span = 0;
  for (Rational l : src.lambdas())
    for (Rational m : dst.lambdas()) span = std::max(span, Rational(abs(l - m)));
  base += static_cast<int>(ceil_long(span));
  return working_trunc(dst.invariants(), base) + src.k() * dst.k();
}

HomSpace hom_space(const ThemePresentation& src, const ThemePresentation& dst, int trunc) {
  if (trunc < 0) trunc = hom_trunc(src, dst);
  KernelSolve s = solve_kernel(src, dst, trunc);
  HomSpace h;
  for (const auto& v : s.sys.nullspace()) h.basis.push_back(aff_eval(s.x, v));
  h.trunc = elem_trunc(aff_eval(s.x, {}));
  return h;
}

int hom_dimension(const ThemePresentation& src, const ThemePresentation& dst, int trunc) {
  return static_cast<int>(hom_space(src, dst, trunc).basis.size());
}

InjectionResult find_injection(const ThemePresentation& src, const ThemePresentation& dst,
                               int trunc) {
  int k = src.k();
  if (dst.k() != k) throw Error(ErrorCode::InvalidInput, "injection needs equal ranks");
  InjectionResult r;
  if (src.lambda_class() != dst.lambda_class()) {
    r.decision = Decision::No;
    r.obstruction = ObstructionCert{"lambda classes differ",
                                    src.lambda_class() - dst.lambda_class()};
    r.stabilized = true;
    return r;
  }
  auto mu = src.lambdas();
  auto la = dst.lambdas();
  for (int j = 0; j < k; ++j)
    if (mu[j] < la[j]) {
      r.decision = Decision::No;
      r.obstruction =
          ObstructionCert{"invariant " + std::to_string(j + 1) + ": mu_j < lambda_j", mu[j] - la[j]};
      r.stabilized = true;
      return r;
    }
  if (trunc < 0) trunc = hom_trunc(src, dst);
  InjectionCore a = injection_at(src, dst, trunc);
  InjectionCore b = injection_at(src, dst, trunc + kStabilizationMargin);
  r.trunc_used = a.trunc;
  r.stabilized = same_core(a, b);
  r.decision = r.stabilized ? a.decision : Decision::Unknown;
  r.obstruction = a.obstruction;
  if (a.decision == Decision::Yes) {
    HomSolution sol{src, dst, a.image, elem_top(a.image) + 1, a.trunc};
    r.solution = sol;
    r.codimension = image_codimension(dst, a.image);
  }
  return r;
}

EndInfo end_analysis(const ThemePresentation& pres, int trunc) {
  int k = pres.k();
  EndInfo e;
  e.trunc_used = trunc < 0 ? hom_trunc(pres, pres) : trunc;
  for (int j = 1; j < k; ++j) {
    InjectionResult r = find_injection(quotient(pres, k - j), submodule(pres, j), trunc);
    e.stabilized = e.stabilized && r.stabilized;
    if (r.decision == Decision::Yes) {
      e.flag.push_back(j);
      e.witnesses.push_back(*r.solution);
    }
  }
  e.flag.push_back(k);
  e.dimension = static_cast<int>(e.flag.size());
  e.direct_dimension = hom_dimension(pres, pres, trunc);
  return e;
}

int end_dimension(const ThemePresentation& pres, int trunc) {
  return end_analysis(pres, trunc).dimension;
}

std::vector<int> end_flag(const ThemePresentation& pres, int trunc) {
  return end_analysis(pres, trunc).flag;
}

InvarianceResult is_invariant(const ThemePresentation& pres, int trunc) {
  InvarianceResult out;
  int k = pres.k();
  if (k == 1) {
    out.decision = Decision::Yes;
    out.witness = Elem{};
    out.stabilized = true;
    return out;
  }
  InjectionResult r = find_injection(quotient(pres, 1), submodule(pres, k - 1), trunc);
  out.decision = r.decision;
  out.obstruction = r.obstruction;
  out.trunc_used = r.trunc_used;
  out.stabilized = r.stabilized;
  if (r.solution) out.witness = r.solution->image;
  return out;
}

IsoResult isomorphic(const ThemePresentation& A, const ThemePresentation& B, int trunc) {
  IsoResult out;
  if (!(A.invariants() == B.invariants())) {
    out.decision = Decision::No;
    out.method = "fundamental invariants differ";
    out.stabilized = true;
    return out;
  }
  int k = A.k();
  InjectionResult r = find_injection(B, A, trunc);
  out.decision = r.decision;
  out.obstruction = r.obstruction;
  out.trunc_used = r.trunc_used;
  out.stabilized = r.stabilized;
  out.method = "generator change";
  if (r.solution) {
    out.witness = r.solution->image;
    if (k >= 2) out.U = r.solution->image[k - 2][0];
  }
  if (r.decision != Decision::Unknown && k >= 2 &&
      is_invariant(A, trunc).decision == Decision::Yes &&
      is_invariant(B, trunc).decision == Decision::Yes) {
    bool same = canonical_form(A) == canonical_form(B);
    out.method = "canonical forms and generator change";
    if (same != (r.decision == Decision::Yes)) {
      out.decision = Decision::Unknown;
      out.method = "canonical forms disagree with generator change";
    }
  }
  return out;
}

int ext1_truncated(const ThemePresentation& E, const ThemePresentation& F, int N) {
  int kf = F.k();
  ChainModule M = F.at_trunc(N).module();
  StandardWord w = E.at_trunc(N).word();
  int n = kf * (N + 1);
  RMatrix A(n, RVector(n));
  for (int i = 0; i < kf; ++i)
    for (int d = 0; d <= N; ++d) {
      Elem x = zero_elem(kf, N);
      x[i].set(d, 1);
      Elem y = chain_apply_word(M, w, x);
      int col = i * (N + 1) + d;
      for (int r = 0; r < kf; ++r)
        for (int e = 0; e <= N; ++e) A[r * (N + 1) + e][col] = y[r][e];
    }
  return n - static_cast<int>(rank(A));
}

ExtResult ext_dimensions(const ThemePresentation& E, const ThemePresentation& F, int trunc) {
  ExtResult r;
  if (trunc < 0) trunc = hom_trunc(E, F);
  r.ext0 = hom_dimension(E, F, trunc);
  int n0 = trunc;
  for (int attempt = 0; attempt < 4; ++attempt, n0 += 16) {
    int a = ext1_truncated(E, F, n0);
    int b = ext1_truncated(E, F, n0 + 16);
    if (a == b) {
      r.ext1 = a;
      r.trunc_used = n0;
      r.stabilized = hom_dimension(E, F, n0 + 16) == r.ext0;
      return r;
    }
  }
  throw Error(ErrorCode::PrecisionExhausted, "Ext^1 dimension did not stabilize");
}

PropertyU property_u(const ThemePresentation& pres, int trunc) {
  int k = pres.k();
  if (k <= 2) return {Decision::Yes, "rank at most 2"};
  InvarianceResult inv = is_invariant(pres, trunc);
  if (inv.decision == Decision::Yes) return {Decision::Yes, "invariant theme"};
  if (inv.decision == Decision::Unknown) return {Decision::Unknown, "invariance undecided"};
  if (pres.p[k - 2] != 0) return {Decision::No, "not invariant and p_{k-1} != 0"};
  for (int j = 1; j <= k - 2; ++j) {
    Decision q = is_invariant(quotient(pres, j), trunc).decision;
    if (q == Decision::Yes)
      return {Decision::No, "E/F_" + std::to_string(j) + " is invariant"};
  }
  for (int j = 2; j <= k - 2; ++j)
    if (property_u(quotient(pres, j), trunc).decision == Decision::No)
      return {Decision::No, "E/F_" + std::to_string(j) + " lacks property U"};
  ThemePresentation q1 = quotient(pres, 1);
  PropertyU u1 = property_u(q1, trunc);
  if (u1.decision == Decision::No) return {Decision::No, "E/F_1 lacks property U"};
  if (u1.decision == Decision::Yes && end_dimension(q1, trunc) == 1)
    return {Decision::Yes, "E/F_1 has property U and only scalar endomorphisms"};
  return {Decision::Unknown, "outside the decidable cases"};
}

}  // namespace theme
