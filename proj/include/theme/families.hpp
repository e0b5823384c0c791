#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "theme/hom.hpp"
#include "theme/mpoly.hpp"
#include "theme/theme.hpp"
#include "theme/xi.hpp"

namespace theme {

using ParamPoint = std::vector<Rational>;

struct ParamPresentation {
  FundamentalInvariants inv;
  std::vector<std::string> params;
  std::vector<PSeries> S;            // S[j-1][d]: coefficient of b^d in S_j
  std::vector<MPoly> nonvanishing;   // must be nonzero at admissible points

  bool admissible(const ParamPoint& x) const;
  ThemePresentation instantiate(const ParamPoint& x) const;
  int param_index(const std::string& name) const;  // -1 if absent
};

// Free coefficients of the V_j spaces, named s<j>_<d> for the b^d term of S_j.
ParamPresentation canonical_family(const FundamentalInvariants& inv);

struct Grid {
  std::vector<std::vector<Rational>> values;  // per parameter, in family order
  std::vector<ParamPoint> points() const;     // lexicographic, first parameter slowest
};

struct PointRecord {
  ParamPoint point;
  bool admissible = true;
  Decision invariant = Decision::Unknown;
  int end_dimension = 0;
  Decision property_u = Decision::Unknown;
  std::string canonical_hash;  // FNV-1a of the canonical form
  int iso_class = -1;          // index of the first point found isomorphic
  bool stabilized = true;
  std::string error;           // set when the point could not be classified
};

struct LinearRelation {
  std::vector<Rational> coeffs;  // c_0 + sum c_i x_i = 0
  std::string str(const std::vector<std::string>& names) const;
};

struct LocusReport {
  std::string kind;  // "everywhere", "nowhere", "linear"
  std::vector<LinearRelation> relations;
  bool exact_on_grid = false;     // non-invariant grid points all violate some relation
  int offgrid_checked = 0;
  int offgrid_failures = 0;
  bool verified = false;
};

struct SweepOptions {
  int trunc = -1;
  int threads = 0;  // 0: hardware concurrency
  bool iso_classes = true;
  bool end_and_u = true;
  int offgrid_samples = 6;
  unsigned seed = 12345;
};

struct SweepReport {
  std::vector<std::string> params;
  std::vector<PointRecord> records;
  LocusReport locus;
};

SweepReport sweep_invariance(const ParamPresentation& fam, const Grid& grid,
                             const SweepOptions& opt = {});

std::string canonical_hash(const ThemePresentation& canonical);
std::uint64_t fnv1a(const std::string& s);

// Exact linear relations holding on every point in `on`, checked against `off`.
LocusReport fit_linear_locus(const std::vector<ParamPoint>& on,
                             const std::vector<ParamPoint>& off, int nvars);

// Xi element whose b-coefficients are polynomials in named parameters.
struct ParamXi {
  Rational lambda;
  std::vector<std::string> params;
  std::vector<PSeries> comps;  // comps[j][d]: coefficient of b^d e_{lambda,j}
  XiElement instantiate(const ParamPoint& x, int trunc) const;
};

struct StratumPoint {
  ParamPoint point;
  int rank = 0;
  int log_degree = -1;
  std::optional<int> det_valuation;        // when rank = log_degree + 1
  std::vector<Rational> bernstein_sigma;   // sigma_0..sigma_{k-1}
  std::optional<FundamentalInvariants> invariants;
};

std::vector<StratumPoint> rank_stratify(const ParamXi& phi, const std::vector<ParamPoint>& points,
                                        int trunc = 32);

struct Rank2Point {
  ParamPoint point;
  Rational lambda1;
  int p = 0;
  Rational alpha;
  XiElement normal_form;  // alpha s^{lambda1+p-2} Log s + c s^{lambda1-2}
};

// c(lambda1, p) = -(lambda1-1) lambda1 ... (lambda1+p-2) / p
Rational rank2_constant(const Rational& lambda1, int p);
Rank2Point rank2_normal_form_at(const XiElement& phi);
std::vector<Rank2Point> rank2_normal_form(const ParamXi& phi, const std::vector<ParamPoint>& points,
                                          int trunc = 32);

}  // namespace theme
