#include "theme/io.hpp"

#include <fstream>
#include <sstream>

#include "theme/errors.hpp"
#include "theme/parse.hpp"

namespace theme {

namespace {

Rational json_rational(const Json& v, const std::string& what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw Error(ErrorCode::InvalidInput, what + " must be a rational string");
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorCode::InvalidInput, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<int> json_p(const Json& j) {
  const Json& p = require(j, "p");
  if (!p.is_array()) throw Error(ErrorCode::InvalidInput, "\"p\" must be an array");
  std::vector<int> out;
  for (const auto& v : p) {
    if (!v.is_number_integer() || v.get<long>() < 0)
      throw Error(ErrorCode::InvalidInput, "\"p\" entries must be natural numbers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

Json series_to_json(const BSeries& s) {
  Json a = Json::array();
  int deg = std::max(s.degree(), 0);
  for (int d = 0; d <= deg; ++d) a.push_back(to_string(s[d]));
  return a;
}

Json elem_to_json(const Elem& x) {
  Json a = Json::array();
  for (const auto& s : x) a.push_back(s.str());
  return a;
}

Json cert_to_json(const ObstructionCert& c) {
  return Json{{"where", c.where}, {"residual", to_string(c.residual)}};
}

Json rationals_to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

Json presentation_to_json(const ThemePresentation& pres, std::optional<int> trunc) {
  Json j;
  j["lambda1"] = to_string(pres.lambda1);
  j["p"] = pres.p;
  Json S = Json::array();
  for (const auto& s : pres.S) S.push_back(series_to_json(s));
  j["S"] = S;
  if (trunc) j["trunc"] = *trunc;
  return j;
}

PresentationFile presentation_from_json(const Json& j) {
  PresentationFile f;
  Rational l1 = json_rational(require(j, "lambda1"), "lambda1");
  std::vector<int> p = json_p(j);
  const Json& Sj = require(j, "S");
  if (!Sj.is_array() || Sj.size() != p.size())
    throw Error(ErrorCode::InvalidPresentation, "\"S\" must hold one series per entry of \"p\"");
  std::vector<BSeries> S;
  for (const auto& s : Sj) {
    if (s.is_string()) {
      S.push_back(parse_series(s.get<std::string>()));
      continue;
    }
    if (!s.is_array() || s.empty())
      throw Error(ErrorCode::InvalidPresentation, "each S_j must be a nonempty coefficient list");
    std::vector<Rational> c;
    for (const auto& v : s) c.push_back(json_rational(v, "series coefficient"));
    S.emplace_back(c, static_cast<int>(c.size()) - 1);
  }
  if (j.contains("trunc")) f.trunc = j.at("trunc").get<int>();
  f.pres = make_presentation(l1, p, S, true);
  return f;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
}

PresentationFile read_presentation_file(const std::string& path) {
  return presentation_from_json(read_json_file(path));
}

Json point_record_to_json(const PointRecord& r, const std::vector<std::string>& names) {
  Json j;
  Json pt;
  for (std::size_t i = 0; i < r.point.size(); ++i)
    pt[i < names.size() ? names[i] : "x" + std::to_string(i)] = to_string(r.point[i]);
  j["point"] = pt;
  j["admissible"] = r.admissible;
  if (!r.error.empty()) {
    j["error"] = r.error;
    return j;
  }
  if (!r.admissible) return j;
  j["invariant"] = decision_name(r.invariant);
  j["end_dimension"] = r.end_dimension;
  j["property_u"] = decision_name(r.property_u);
  if (!r.canonical_hash.empty()) j["canonical_hash"] = r.canonical_hash;
  if (r.iso_class >= 0) j["iso_class"] = r.iso_class;
  j["stabilized"] = r.stabilized;
  return j;
}

SweepConfig sweep_config_from_json(const Json& j) {
  SweepConfig c;
  FundamentalInvariants inv{json_rational(require(j, "lambda1"), "lambda1"), json_p(j)};
  if (j.contains("S")) {
    const Json& Sj = j.at("S");
    if (!Sj.is_array() || Sj.size() != inv.p.size())
      throw Error(ErrorCode::InvalidInput, "\"S\" must hold one series per entry of \"p\"");
    ParamPresentation fam;
    fam.inv = inv;
    for (std::size_t i = 0; i < Sj.size(); ++i) {
      PSeries s = parse_pseries(Sj[i].get<std::string>(), fam.params, true);
      if (s.empty() || !(s[0] == MPoly(Rational(1))))
        throw Error(ErrorCode::InvalidPresentation, "each S_j must have constant term 1");
      int pj = inv.p[i];
      if (pj >= 1) fam.nonvanishing.push_back(pj < static_cast<int>(s.size()) ? s[pj] : MPoly());
      fam.S.push_back(s);
    }
    c.family = fam;
  } else {
    c.family = canonical_family(inv);
  }
  const Json& params = require(j, "params");
  if (!params.is_object()) throw Error(ErrorCode::InvalidInput, "\"params\" must be an object");
  for (const auto& [name, vals] : params.items())
    if (c.family.param_index(name) < 0)
      throw Error(ErrorCode::InvalidInput, "unknown parameter " + name);
  for (const auto& name : c.family.params) {
    if (!params.contains(name))
      throw Error(ErrorCode::InvalidInput, "no values given for parameter " + name);
    std::vector<Rational> vals;
    for (const auto& v : params.at(name)) vals.push_back(json_rational(v, name));
    if (vals.empty()) throw Error(ErrorCode::InvalidInput, "empty value list for " + name);
    c.grid.values.push_back(vals);
  }
  if (j.contains("trunc")) c.options.trunc = j.at("trunc").get<int>();
  if (j.contains("threads")) c.options.threads = j.at("threads").get<int>();
  if (j.contains("iso_classes")) c.options.iso_classes = j.at("iso_classes").get<bool>();
  if (j.contains("end_and_u")) c.options.end_and_u = j.at("end_and_u").get<bool>();
  if (j.contains("offgrid_samples")) c.options.offgrid_samples = j.at("offgrid_samples").get<int>();
  if (j.contains("seed")) c.options.seed = j.at("seed").get<unsigned>();
  if (j.contains("output")) c.output = j.at("output").get<std::string>();
  return c;
}

}  // namespace theme
