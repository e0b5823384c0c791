#pragma once

#include <optional>
#include <string>
#include <vector>

#include "theme/theme.hpp"

namespace theme {

enum class Decision { Yes, No, Unknown };
const char* decision_name(Decision d);

// First constraint that cannot be met, with the value it reduces to.
struct ObstructionCert {
  std::string where;
  Rational residual;
};

struct HomSolution {
  ThemePresentation src, dst;
  Elem image;  // W_1..W_k: image of the source generator in the target basis
  int rank = 0;
  int trunc = 0;
};

// All x in dst with P_src x = 0, as a C-basis.
struct HomSpace {
  std::vector<Elem> basis;
  int trunc = 0;
};
HomSpace hom_space(const ThemePresentation& src, const ThemePresentation& dst, int trunc = -1);
int hom_dimension(const ThemePresentation& src, const ThemePresentation& dst, int trunc = -1);

// Precision for a Hom computation between the two themes.
int hom_trunc(const ThemePresentation& src, const ThemePresentation& dst);

struct InjectionResult {
  Decision decision = Decision::Unknown;
  std::optional<HomSolution> solution;
  std::optional<ObstructionCert> obstruction;
  std::optional<int> codimension;  // dim_C of dst / image, from det valuation
  int trunc_used = 0;
  bool stabilized = false;
};
// Injection src -> dst between equal-rank themes, normalized so the
// coefficient of b^{mu_k - lambda_k} e_k in the image is 1.
InjectionResult find_injection(const ThemePresentation& src, const ThemePresentation& dst,
                               int trunc = -1);

struct EndInfo {
  int dimension = 0;                 // 1 + number of realized proper ranks
  int direct_dimension = 0;          // dim Hom(E,E) from the kernel solve
  std::vector<int> flag;             // ranks of endomorphisms realized, ascending
  std::vector<HomSolution> witnesses;  // one per proper rank in flag
  int trunc_used = 0;
  bool stabilized = true;
};
EndInfo end_analysis(const ThemePresentation& pres, int trunc = -1);
int end_dimension(const ThemePresentation& pres, int trunc = -1);
std::vector<int> end_flag(const ThemePresentation& pres, int trunc = -1);

struct InvarianceResult {
  Decision decision = Decision::Unknown;
  std::optional<Elem> witness;  // in e_1..e_{k-1}
  std::optional<ObstructionCert> obstruction;
  int trunc_used = 0;
  bool stabilized = false;
};
InvarianceResult is_invariant(const ThemePresentation& pres, int trunc = -1);

struct IsoResult {
  Decision decision = Decision::Unknown;
  std::string method;
  std::optional<Elem> witness;  // x in A with P_B x = 0
  std::optional<Rational> U;    // constant term of the e_{k-1} coordinate of x
  std::optional<ObstructionCert> obstruction;
  int trunc_used = 0;
  bool stabilized = false;
};
IsoResult isomorphic(const ThemePresentation& A, const ThemePresentation& B, int trunc = -1);

struct ExtResult {
  int ext0 = 0;
  int ext1 = 0;
  int trunc_used = 0;
  bool stabilized = false;
};
// Kernel and cokernel dimensions of P_E acting on F.
ExtResult ext_dimensions(const ThemePresentation& E, const ThemePresentation& F, int trunc = -1);
// Cokernel dimension of P_E on F / b^{N+1} F.
int ext1_truncated(const ThemePresentation& E, const ThemePresentation& F, int N);

struct PropertyU {
  Decision decision = Decision::Unknown;
  std::string reason;
};
PropertyU property_u(const ThemePresentation& pres, int trunc = -1);

}  // namespace theme
