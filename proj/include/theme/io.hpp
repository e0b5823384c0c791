#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "theme/families.hpp"
#include "theme/hom.hpp"
#include "theme/theme.hpp"
#include "theme/xi.hpp"

namespace theme {

using Json = nlohmann::ordered_json;

// {"lambda1":"5/2","p":[3,2,2],"S":[["1","0","0","7"],...],"trunc":64}
struct PresentationFile {
  ThemePresentation pres;
  std::optional<int> trunc;
};
Json presentation_to_json(const ThemePresentation& pres, std::optional<int> trunc = {});
PresentationFile presentation_from_json(const Json& j);
PresentationFile read_presentation_file(const std::string& path);

// Coefficient strings up to the last nonzero one (at least one entry).
Json series_to_json(const BSeries& s);
Json elem_to_json(const Elem& x);  // one series string per component
Json cert_to_json(const ObstructionCert& c);
Json rationals_to_json(const std::vector<Rational>& v);
Json point_record_to_json(const PointRecord& r, const std::vector<std::string>& names);

// {"lambda1":"7/2","p":[1,1],"S":["1 + u*b",...]?,"params":{"s1_1":["1","2"]},
//  "trunc":40,"output":"sweep.jsonl","iso_classes":true,"end_and_u":true,"seed":1}
struct SweepConfig {
  ParamPresentation family;
  Grid grid;
  SweepOptions options;
  std::string output;
};
SweepConfig sweep_config_from_json(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace theme
