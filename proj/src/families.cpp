#include "theme/families.hpp"

#include <algorithm>
#include <cstdio>
#include <future>
#include <random>
#include <thread>

#include "theme/errors.hpp"

namespace theme {

bool ParamPresentation::admissible(const ParamPoint& x) const {
  for (const auto& q : nonvanishing)
    if (q.eval(x) == 0) return false;
  return true;
}

ThemePresentation ParamPresentation::instantiate(const ParamPoint& x) const {
  std::vector<BSeries> S;
  for (const auto& ps : this->S) {
    std::vector<Rational> c;
    for (const auto& q : ps) c.push_back(q.eval(x));
    S.emplace_back(c, static_cast<int>(c.size()) - 1);
  }
  return make_presentation(inv.lambda1, inv.p, S, true);
}

int ParamPresentation::param_index(const std::string& name) const {
  auto it = std::find(params.begin(), params.end(), name);
  return it == params.end() ? -1 : static_cast<int>(it - params.begin());
}

ParamPresentation canonical_family(const FundamentalInvariants& inv) {
  int k = inv.k();
  if (!(inv.lambda1 > k - 1))
    throw Error(ErrorCode::InvalidPresentation, "lambda_1 must exceed k - 1");
  ParamPresentation fam;
  fam.inv = inv;
  for (int j = 1; j < k; ++j) {
    VSpace V = vspace(inv, j);
    PSeries s(V.exps.back() + 1);
    s[0] = MPoly(Rational(1));
    for (int d : V.exps) {
      if (d == 0) continue;
      int idx = static_cast<int>(fam.params.size());
      fam.params.push_back("s" + std::to_string(j) + "_" + std::to_string(d));
      s[d] = MPoly::var(idx);
      if (d == inv.p[j - 1]) fam.nonvanishing.push_back(s[d]);
    }
    fam.S.push_back(s);
  }
  return fam;
}

std::vector<ParamPoint> Grid::points() const {
  std::vector<ParamPoint> out{{}};
  for (const auto& vals : values) {
    std::vector<ParamPoint> next;
    for (const auto& p : out)
      for (const auto& v : vals) {
        ParamPoint q = p;
        q.push_back(v);
        next.push_back(q);
      }
    out = std::move(next);
  }
  return out;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string canonical_hash(const ThemePresentation& canonical) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical.str())));
  return buf;
}

std::string LinearRelation::str(const std::vector<std::string>& names) const {
  std::string out;
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    const Rational& c = coeffs[i];
    if (c == 0) continue;
    Rational a = abs(c);
    std::string term = (a == 1 ? "" : to_string(a) + "*") + names.at(i - 1);
    if (out.empty()) out = (c < 0 ? "-" : "") + term;
    else out += (c < 0 ? " - " : " + ") + term;
  }
  if (coeffs[0] != 0) out += (coeffs[0] < 0 ? " - " : " + ") + to_string(abs(coeffs[0]));
  return (out.empty() ? "0" : out) + " = 0";
}

namespace {

// Scales to coprime integers with a positive first nonzero entry.
std::vector<Rational> primitive(std::vector<Rational> v) {
  mpz_class l = 1, g = 0;
  for (const auto& c : v) l = lcm(l, c.get_den());
  for (auto& c : v) {
    c *= l;
    g = gcd(g, c.get_num());
  }
  if (g != 0)
    for (auto& c : v) c /= g;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] != 0) {
      if (v[i] < 0)
        for (auto& c : v) c = -c;
      break;
    }
  return v;
}

bool satisfies(const LinearRelation& r, const ParamPoint& x) {
  Rational s = r.coeffs[0];
  for (std::size_t i = 1; i < r.coeffs.size(); ++i) s += r.coeffs[i] * x[i - 1];
  return s == 0;
}

}  // namespace

LocusReport fit_linear_locus(const std::vector<ParamPoint>& on,
                             const std::vector<ParamPoint>& off, int nvars) {
  LocusReport rep;
  if (on.empty()) {
    rep.kind = "nowhere";
    rep.exact_on_grid = true;
    return rep;
  }
  if (off.empty()) {
    rep.kind = "everywhere";
    rep.exact_on_grid = true;
    return rep;
  }
  ConstraintSystem sys;
  for (int i = 0; i <= nvars; ++i) sys.add_param();
  for (const auto& x : on) {
    RVector form{Rational(0), Rational(1)};
    form.insert(form.end(), x.begin(), x.end());
    sys.add(form, "point");
  }
  for (const auto& v : sys.nullspace()) rep.relations.push_back({primitive(v)});
  if (rep.relations.empty()) {
    rep.kind = "nonlinear";
    return rep;
  }
  rep.kind = "linear";
  rep.exact_on_grid = std::all_of(off.begin(), off.end(), [&](const ParamPoint& x) {
    return std::any_of(rep.relations.begin(), rep.relations.end(),
                       [&](const LinearRelation& r) { return !satisfies(r, x); });
  });
  return rep;
}

namespace {

PointRecord classify(const ParamPresentation& fam, const ParamPoint& x, const SweepOptions& opt) {
  PointRecord r;
  r.point = x;
  if (!fam.admissible(x)) {
    r.admissible = false;
    return r;
  }
  try {
    ThemePresentation pres = fam.instantiate(x);
    InvarianceResult inv = is_invariant(pres, opt.trunc);
    r.invariant = inv.decision;
    r.stabilized = inv.stabilized;
    if (opt.end_and_u) {
      EndInfo e = end_analysis(pres, opt.trunc);
      r.end_dimension = e.dimension;
      r.stabilized = r.stabilized && e.stabilized;
      r.property_u = property_u(pres, opt.trunc).decision;
    }
    r.canonical_hash = canonical_hash(canonical_form(pres, opt.trunc));
  } catch (const Error& e) {
    r.error = std::string(code_name(e.code())) + ": " + e.what();
  }
  return r;
}

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-7, 7), den(1, 3);
  int n = 0;
  while (n == 0) n = num(rng);
  return Rational(n, den(rng));
}

void assign_iso_classes(const ParamPresentation& fam, std::vector<PointRecord>& recs, int trunc) {
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    PointRecord& r = recs[i];
    if (!r.admissible || !r.error.empty()) continue;
    ThemePresentation pres = fam.instantiate(r.point);
    for (std::size_t rep : reps) {
      const PointRecord& q = recs[rep];
      if (q.invariant != r.invariant) continue;
      bool same;
      if (r.invariant == Decision::Yes) {
        same = q.canonical_hash == r.canonical_hash;
      } else {
        same = isomorphic(fam.instantiate(q.point), pres, trunc).decision == Decision::Yes;
      }
      if (same) {
        r.iso_class = static_cast<int>(rep);
        break;
      }
    }
    if (r.iso_class < 0) {
      r.iso_class = static_cast<int>(i);
      reps.push_back(i);
    }
  }
}

}  // namespace

SweepReport sweep_invariance(const ParamPresentation& fam, const Grid& grid,
                             const SweepOptions& opt) {
  if (grid.values.size() != fam.params.size())
    throw Error(ErrorCode::InvalidInput, "grid dimension does not match the family");
  SweepReport rep;
  rep.params = fam.params;
  auto pts = grid.points();
  rep.records.resize(pts.size());
  unsigned nthreads = opt.threads > 0 ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < nthreads; ++t)
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t i = t; i < pts.size(); i += nthreads)
        rep.records[i] = classify(fam, pts[i], opt);
    }));
  for (auto& j : jobs) j.get();
  if (opt.iso_classes) assign_iso_classes(fam, rep.records, opt.trunc);

  // Locus over the parameters that vary on the grid; fixed ones are held.
  std::vector<int> varying;
  for (std::size_t i = 0; i < grid.values.size(); ++i)
    if (grid.values[i].size() > 1) varying.push_back(static_cast<int>(i));
  auto project = [&](const ParamPoint& x) {
    ParamPoint y;
    for (int i : varying) y.push_back(x[i]);
    return y;
  };
  std::vector<ParamPoint> on, off;
  for (const auto& r : rep.records) {
    if (!r.admissible || !r.error.empty()) continue;
    if (r.invariant == Decision::Yes) on.push_back(project(r.point));
    if (r.invariant == Decision::No) off.push_back(project(r.point));
  }
  LocusReport loc = fit_linear_locus(on, off, static_cast<int>(varying.size()));
  for (auto& rel : loc.relations) {
    std::vector<Rational> full(fam.params.size() + 1, Rational(0));
    full[0] = rel.coeffs[0];
    for (std::size_t i = 0; i < varying.size(); ++i) full[varying[i] + 1] = rel.coeffs[i + 1];
    rel.coeffs = full;
  }

  // Off-grid re-verification at random rational points.
  std::mt19937 rng(opt.seed);
  auto base = [&] {
    ParamPoint x;
    for (const auto& vals : grid.values) x.push_back(vals.front());
    return x;
  };
  auto check = [&](const ParamPoint& x, Decision expected) {
    if (!fam.admissible(x)) return;
    ++loc.offgrid_checked;
    try {
      if (is_invariant(fam.instantiate(x), opt.trunc).decision != expected) ++loc.offgrid_failures;
    } catch (const Error&) {
      ++loc.offgrid_failures;
    }
  };
  bool have_claim = loc.kind != "nonlinear";
  for (int s = 0; have_claim && s < opt.offgrid_samples; ++s) {
    ParamPoint x = base();
    for (int i : varying) x[i] = random_rational(rng);
    if (loc.kind == "everywhere") {
      check(x, Decision::Yes);
    } else if (loc.kind == "nowhere") {
      check(x, Decision::No);
    } else {
      bool inside = std::all_of(loc.relations.begin(), loc.relations.end(),
                                [&](const LinearRelation& r) { return satisfies(r, x); });
      if (!inside) check(x, Decision::No);
      // A point on the locus: pin free coordinates one at a time.
      ConstraintSystem sys;
      for (std::size_t i = 0; i < fam.params.size(); ++i) sys.add_param();
      for (const auto& r : loc.relations) sys.add(r.coeffs, "relation");
      for (std::size_t i = 0; i < fam.params.size(); ++i) {
        bool vary = std::find(varying.begin(), varying.end(), static_cast<int>(i)) != varying.end();
        RVector form(fam.params.size() + 1, Rational(0));
        form[i + 1] = 1;
        form[0] = -(vary ? random_rational(rng) : x[i]);
        ConstraintSystem trial = sys;
        trial.add(form, "pin");
        if (trial.consistent()) sys = trial;
      }
      check(sys.particular(), Decision::Yes);
    }
  }
  loc.verified = have_claim && loc.exact_on_grid && loc.offgrid_failures == 0;
  rep.locus = loc;
  return rep;
}

XiElement ParamXi::instantiate(const ParamPoint& x, int trunc) const {
  XiElement out{lambda, zero_elem(comps.size(), trunc)};
  for (std::size_t j = 0; j < comps.size(); ++j)
    for (std::size_t d = 0; d < comps[j].size(); ++d) {
      if (static_cast<int>(d) > trunc) break;
      out.comps[j].set(static_cast<int>(d), comps[j][d].eval(x));
    }
  return out;
}

std::vector<StratumPoint> rank_stratify(const ParamXi& phi, const std::vector<ParamPoint>& points,
                                        int trunc) {
  std::vector<StratumPoint> out;
  for (const auto& x : points) {
    StratumPoint sp;
    sp.point = x;
    XiElement f = phi.instantiate(x, trunc);
    sp.log_degree = f.log_degree();
    if (sp.log_degree < 0) {
      out.push_back(sp);
      continue;
    }
    XiMultiElement m;
    m.parts.emplace(f.lambda, f);
    sp.rank = multi_rank(m);
    if (sp.rank == sp.log_degree + 1) {
      GeneratedModule M = generate_module(f);
      sp.det_valuation = M.det_valuation;
      int k = M.rank;
      for (int j = 0; j < k; ++j) sp.bernstein_sigma.push_back(M.relation[j][k - j]);
      try {
        sp.invariants = from_generator(M).invariants();
      } catch (const Error&) {
      }
    }
    out.push_back(sp);
  }
  return out;
}

Rational rank2_constant(const Rational& lambda1, int p) {
  return -rising(lambda1 - 1, p) / p;
}

Rank2Point rank2_normal_form_at(const XiElement& phi0) {
  GeneratedModule M = generate_module(phi0);
  if (M.rank != 2) throw Error(ErrorCode::RankJump, "generated module is not of rank 2");
  ThemePresentation pres = from_generator(M);
  if (pres.p[0] < 1) throw Error(ErrorCode::WrongRank, "rank-2 normal form needs p_1 >= 1");
  Rank2Point r;
  r.lambda1 = pres.lambda1;
  r.p = pres.p[0];
  int p = r.p;
  XiElement phi = M.generator;
  int t = phi.trunc();
  int v = *phi.comps[1].valuation();
  phi = series_inverse(phi.comps[1].shift_down(v)) * phi;
  Rational lam0 = phi.lambda;
  Rational lam2 = lam0 + v;
  XiElement y = xi_apply_a(phi) - BSeries::monomial(lam2, 1, t) * phi;
  if (!y.comps[1].is_zero()) throw Error(ErrorCode::NotATheme, "top component did not cancel");
  int n1 = static_cast<int>(Rational(r.lambda1 - lam0).get_num().get_si());
  BSeries S = y.comps[0].shift_down(n1);
  Rational S0 = S[0], Sp = S[p];
  BSeries rest = S - BSeries::constant(S0, S.trunc()) - BSeries::monomial(Sp, p, S.trunc());
  BSeries T = solve_euler(p - 1, rest.shift_down(1)).T;
  // Certificate: (a - lambda_2 b)(phi - T f) = (S0 + Sp b^p) f with f = b^{n1} e_0.
  XiElement f = XiElement::basis(lam0, 0, 1, t);
  f.comps[0] = BSeries::monomial(1, n1, t);
  XiElement psi = phi - T * f;
  XiElement lhs = xi_apply_a(psi) - BSeries::monomial(lam2, 1, psi.trunc()) * psi;
  BSeries target = BSeries::constant(S0, t) + BSeries::monomial(Sp, p, t);
  if (!lhs.agrees_with(target * f))
    throw Error(ErrorCode::PrecisionExhausted, "rank-2 reduction certificate failed");
  r.alpha = Sp / S0;
  int nt = std::max(t, 8);
  XiElement log_term = xi_s_power(r.lambda1 + p - 2, 1, 1, nt);
  XiElement const_term = xi_s_power(r.lambda1 - 2, 0, 1, nt);
  r.normal_form = BSeries::constant(r.alpha, nt) * log_term +
                  BSeries::constant(rank2_constant(r.lambda1, p), nt) * const_term;
  return r;
}

std::vector<Rank2Point> rank2_normal_form(const ParamXi& phi, const std::vector<ParamPoint>& points,
                                          int trunc) {
  std::vector<Rank2Point> out;
  for (const auto& x : points) out.push_back(rank2_normal_form_at(phi.instantiate(x, trunc)));
  return out;
}

}  // namespace theme
