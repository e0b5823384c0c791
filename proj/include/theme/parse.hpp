#pragma once

#include <string>
#include <vector>

#include "theme/families.hpp"
#include "theme/mpoly.hpp"
#include "theme/opalg.hpp"
#include "theme/theme.hpp"
#include "theme/xi.hpp"

namespace theme {

// Echoed in reports: how s-exponents are read into Xi coordinates.
extern const char* const kSConvention;

// Polynomial expression in b with coefficients in the named parameters,
// e.g. "1 + 3*b + (5/2)*b^2" or "1 + z*b".  Unknown identifiers are added
// to `vars` when `allow_new` is set, otherwise they are a ParseError.
PSeries parse_pseries(const std::string& text, std::vector<std::string>& vars, bool allow_new);
// Constant-coefficient series, zero-padded to trunc (default: its degree).
BSeries parse_series(const std::string& text, int trunc = -1);

// "(a - 5/2 b) * inv(1 + b^2) * (a - 7/2 b)"
StandardWord parse_word(const std::string& text, int trunc);
ThemePresentation presentation_from_word(const StandardWord& w);

// Sum of terms "[coeff *] s^(r) [* log(s)[^j][/j!]]" with coeff a rational or a
// parenthesized series; s^(lambda-1+m) (Log s)^j/j! is read as a^m e_{lambda,j}.
XiMultiElement parse_xi(const std::string& text, int trunc);
// Same grammar with parameters allowed in the coefficients (single lambda class).
ParamXi parse_param_xi(const std::string& text, int trunc);

}  // namespace theme
