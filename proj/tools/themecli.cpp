#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "theme/errors.hpp"
#include "theme/families.hpp"
#include "theme/hom.hpp"
#include "theme/io.hpp"
#include "theme/parse.hpp"
#include "theme/theme.hpp"

using namespace theme;

namespace {

struct Inputs {
  std::string pres_file, word, xi;
  std::string pres_file2, word2;
  std::string config;
  std::string delta;
  int trunc = -1;
  std::string format = "json";
};

constexpr int kXiDefaultTrunc = 32;

struct Loaded {
  ThemePresentation pres;
  int trunc = -1;  // engine precision, -1 for automatic
};

Loaded load_presentation(const std::string& file, const std::string& word, const std::string& xi,
                         int trunc_override) {
  int given = (!file.empty()) + (!word.empty()) + (!xi.empty());
  if (given != 1)
    throw Error(ErrorCode::InvalidInput, "exactly one of --pres, --word, --xi is required");
  Loaded L;
  L.trunc = trunc_override;
  if (!file.empty()) {
    PresentationFile f = read_presentation_file(file);
    L.pres = f.pres;
    if (L.trunc < 0 && f.trunc) L.trunc = *f.trunc;
  } else if (!word.empty()) {
    int t = trunc_override >= 0 ? trunc_override : 64;
    L.pres = presentation_from_word(parse_word(word, t));
  } else {
    int t = trunc_override >= 0 ? trunc_override : kXiDefaultTrunc;
    XiMultiElement x = parse_xi(xi, t);
    auto comps = component_split(x);
    if (comps.size() != 1)
      throw Error(ErrorCode::InvalidInput, "expression must live in a single lambda class");
    L.pres = from_generator(comps.begin()->second);
  }
  Diagnostics d = validate(L.pres);
  if (!d.ok()) {
    std::string msg;
    for (const auto& f : d.failures) msg += (msg.empty() ? "" : "; ") + f;
    throw Error(ErrorCode::InvalidPresentation, msg);
  }
  return L;
}

Loaded load_first(const Inputs& in) { return load_presentation(in.pres_file, in.word, in.xi, in.trunc); }

void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << "\t" << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Json& j, const std::string& format) {
  if (format == "table") flatten(j, "", std::cout);
  else std::cout << j.dump(2) << "\n";
}

Json with_convention(Json j) {
  j["convention"] = kSConvention;
  return j;
}

int exit_for(Decision d) { return d == Decision::Unknown ? 2 : 0; }

Json bernstein_json(const Bernstein& B) {
  Json j;
  j["element"] = B.element.str();
  j["sigma"] = rationals_to_json(B.sigma);
  j["btilde"] = rationals_to_json(B.btilde);
  j["roots"] = rationals_to_json(B.roots);
  Json neg = Json::array();
  for (const auto& r : B.roots) neg.push_back(to_string(Rational(-r)));
  j["bernstein_polynomial_roots"] = neg;
  j["initial_form_ok"] = B.initial_form_ok;
  return j;
}

int cmd_analyze(const Inputs& in) {
  Json out;
  Decision overall = Decision::Yes;
  if (!in.xi.empty()) {
    int t = in.trunc >= 0 ? in.trunc : kXiDefaultTrunc;
    XiMultiElement x = parse_xi(in.xi, t);
    out["rank"] = multi_rank(x);
    Json comps = Json::array();
    auto split = component_split(x);
    for (const auto& [lam, M] : split) {
      Json c;
      c["lambda"] = to_string(lam);
      c["rank"] = M.rank;
      try {
        ThemePresentation p = from_generator(M);
        c["lambda1"] = to_string(p.lambda1);
        c["p"] = p.p;
        c["presentation"] = presentation_to_json(p);
        if (split.size() == 1) out["lambda1"] = to_string(p.lambda1);
      } catch (const Error& e) {
        c["error"] = Json{{"code", code_name(e.code())}, {"message", e.what()}};
      }
      comps.push_back(c);
    }
    out["components"] = comps;
    out["trunc_used"] = t;
    out["stabilized"] = true;
  } else {
    Loaded L = load_first(in);
    const ThemePresentation& P = L.pres;
    out["rank"] = P.k();
    out["lambda1"] = to_string(P.lambda1);
    out["p"] = P.p;
    out["lambdas"] = rationals_to_json(P.lambdas());
    out["canonical"] = presentation_to_json(canonical_form(P, L.trunc));
    InvarianceResult inv = is_invariant(P, L.trunc);
    out["invariant"] = decision_name(inv.decision);
    EndInfo end = end_analysis(P, L.trunc);
    out["end_dimension"] = end.dimension;
    PropertyU u = property_u(P, L.trunc);
    out["property_u"] = decision_name(u.decision);
    out["bernstein_roots"] = rationals_to_json(bernstein_roots(P, L.trunc));
    out["trunc_used"] = std::max(inv.trunc_used, end.trunc_used);
    out["stabilized"] = inv.stabilized && end.stabilized;
    overall = inv.decision;
  }
  emit(with_convention(out), in.format);
  return exit_for(overall);
}

int cmd_canonical(const Inputs& in) {
  Loaded L = load_first(in);
  CanonicalResult c = canonical_form_with_witness(L.pres, L.trunc);
  Json out;
  out["presentation"] = presentation_to_json(c.pres, c.trunc);
  out["generator"] = elem_to_json(c.generator);
  out["is_canonical_input"] = is_canonical(L.pres);
  out["trunc_used"] = c.trunc;
  out["stabilized"] = true;
  emit(with_convention(out), in.format);
  return 0;
}

int cmd_bernstein(const Inputs& in) {
  Loaded L = load_first(in);
  Bernstein B = bernstein_element(L.pres, L.trunc);
  Json out = bernstein_json(B);
  out["trunc_used"] = B.trunc;
  out["stabilized"] = true;
  emit(with_convention(out), in.format);
  return 0;
}

int cmd_invariant(const Inputs& in) {
  Loaded L = load_first(in);
  InvarianceResult r = is_invariant(L.pres, L.trunc);
  Json out;
  out["decision"] = decision_name(r.decision);
  if (r.decision != Decision::Unknown) out["invariant"] = r.decision == Decision::Yes;
  if (r.witness) out["witness"] = elem_to_json(*r.witness);
  if (r.obstruction) out["obstruction"] = cert_to_json(*r.obstruction);
  out["trunc_used"] = r.trunc_used;
  out["stabilized"] = r.stabilized;
  emit(with_convention(out), in.format);
  return exit_for(r.decision);
}

int cmd_enddim(const Inputs& in) {
  Loaded L = load_first(in);
  EndInfo e = end_analysis(L.pres, L.trunc);
  Json out;
  out["end_dimension"] = e.dimension;
  out["direct_dimension"] = e.direct_dimension;
  out["flag"] = e.flag;
  PropertyU u = property_u(L.pres, L.trunc);
  out["property_u"] = decision_name(u.decision);
  out["property_u_reason"] = u.reason;
  out["trunc_used"] = e.trunc_used;
  out["stabilized"] = e.stabilized;
  emit(with_convention(out), in.format);
  return e.stabilized ? 0 : 2;
}

int cmd_iso(const Inputs& in) {
  Loaded A = load_first(in);
  Loaded B = load_presentation(in.pres_file2, in.word2, "", in.trunc);
  int t = in.trunc >= 0 ? in.trunc : std::max(A.trunc, B.trunc);
  IsoResult r = isomorphic(A.pres, B.pres, t);
  Json out;
  out["decision"] = decision_name(r.decision);
  if (r.decision != Decision::Unknown) out["isomorphic"] = r.decision == Decision::Yes;
  out["method"] = r.method;
  if (r.U) out["U"] = to_string(*r.U);
  if (r.witness) out["witness"] = elem_to_json(*r.witness);
  if (r.obstruction) out["obstruction"] = cert_to_json(*r.obstruction);
  out["trunc_used"] = r.trunc_used;
  out["stabilized"] = r.stabilized;
  emit(with_convention(out), in.format);
  return exit_for(r.decision);
}

int cmd_ext(const Inputs& in) {
  Loaded E = load_first(in);
  Loaded F = load_presentation(in.pres_file2, in.word2, "", in.trunc);
  int t = in.trunc >= 0 ? in.trunc : std::max(E.trunc, F.trunc);
  ExtResult r = ext_dimensions(E.pres, F.pres, t);
  Json out;
  out["ext0"] = r.ext0;
  out["ext1"] = r.ext1;
  out["difference"] = r.ext1 - r.ext0;
  out["rank_product"] = E.pres.k() * F.pres.k();
  out["trunc_used"] = r.trunc_used;
  out["stabilized"] = r.stabilized;
  emit(with_convention(out), in.format);
  return r.stabilized ? 0 : 2;
}

int cmd_dualtwist(const Inputs& in) {
  if (in.delta.empty()) throw Error(ErrorCode::InvalidInput, "--delta is required");
  Loaded L = load_first(in);
  ThemePresentation D = dual_twist(L.pres, parse_rational(in.delta));
  Json out;
  out["presentation"] = presentation_to_json(D);
  out["lambdas"] = rationals_to_json(D.lambdas());
  out["trunc_used"] = D.trunc();
  out["stabilized"] = true;
  emit(with_convention(out), in.format);
  return 0;
}

int cmd_embed(const Inputs& in) {
  Loaded L = load_first(in);
  XiElement phi = embed_in_xi(L.pres, L.trunc);
  Json out;
  out["lambda"] = to_string(phi.lambda);
  out["generator"] = phi.str();
  out["comps"] = elem_to_json(phi.comps);
  out["trunc_used"] = phi.trunc();
  out["stabilized"] = true;
  emit(with_convention(out), in.format);
  return 0;
}

int cmd_sweep(const Inputs& in) {
  if (in.config.empty()) throw Error(ErrorCode::InvalidInput, "--config is required");
  SweepConfig cfg = sweep_config_from_json(read_json_file(in.config));
  if (in.trunc >= 0) cfg.options.trunc = in.trunc;
  SweepReport rep = sweep_invariance(cfg.family, cfg.grid, cfg.options);
  std::ofstream file;
  std::ostream* lines = &std::cout;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) throw Error(ErrorCode::InvalidInput, "cannot write " + cfg.output);
    lines = &file;
  }
  bool all_stable = true;
  for (const auto& r : rep.records) {
    *lines << point_record_to_json(r, rep.params).dump() << "\n";
    all_stable = all_stable && r.stabilized && r.error.empty();
  }
  Json out;
  out["params"] = rep.params;
  out["points"] = rep.records.size();
  Json loc;
  loc["kind"] = rep.locus.kind;
  Json rels = Json::array();
  for (const auto& rel : rep.locus.relations) rels.push_back(rel.str(rep.params));
  loc["relations"] = rels;
  loc["exact_on_grid"] = rep.locus.exact_on_grid;
  loc["offgrid_checked"] = rep.locus.offgrid_checked;
  loc["offgrid_failures"] = rep.locus.offgrid_failures;
  loc["verified"] = rep.locus.verified;
  out["locus"] = loc;
  if (!cfg.output.empty()) out["output"] = cfg.output;
  out["trunc_used"] = cfg.options.trunc;
  out["stabilized"] = all_stable;
  if (cfg.output.empty() && in.format == "json") std::cout << with_convention(out).dump() << "\n";
  else emit(with_convention(out), in.format);
  return all_stable ? 0 : 2;
}

// {"xi":"(1+z*b)*s^(-1/2) + ...","params":{"z":["0","1"]},"trunc":32,"rank2":false}
int cmd_stratify(const Inputs& in) {
  if (in.config.empty()) throw Error(ErrorCode::InvalidInput, "--config is required");
  Json cfg = read_json_file(in.config);
  int t = in.trunc >= 0 ? in.trunc : cfg.value("trunc", kXiDefaultTrunc);
  if (!cfg.contains("xi")) throw Error(ErrorCode::InvalidInput, "missing field \"xi\"");
  ParamXi phi = parse_param_xi(cfg.at("xi").get<std::string>(), t);
  Grid grid;
  for (const auto& name : phi.params) {
    if (!cfg.contains("params") || !cfg.at("params").contains(name))
      throw Error(ErrorCode::InvalidInput, "no values given for parameter " + name);
    std::vector<Rational> vals;
    for (const auto& v : cfg.at("params").at(name)) vals.push_back(parse_rational(v.get<std::string>()));
    grid.values.push_back(vals);
  }
  auto points = grid.points();
  Json out;
  out["lambda"] = to_string(phi.lambda);
  out["params"] = phi.params;
  Json rows = Json::array();
  auto point_json = [&](const ParamPoint& x) {
    Json pt;
    for (std::size_t i = 0; i < x.size(); ++i) pt[phi.params[i]] = to_string(x[i]);
    return pt;
  };
  for (const auto& s : rank_stratify(phi, points, t)) {
    Json r;
    r["point"] = point_json(s.point);
    r["rank"] = s.rank;
    r["log_degree"] = s.log_degree;
    if (s.det_valuation) r["det_valuation"] = *s.det_valuation;
    r["bernstein_sigma"] = rationals_to_json(s.bernstein_sigma);
    if (s.invariants) {
      r["lambda1"] = to_string(s.invariants->lambda1);
      r["p"] = s.invariants->p;
    }
    rows.push_back(r);
  }
  out["strata"] = rows;
  if (cfg.value("rank2", false)) {
    Json nf = Json::array();
    for (const auto& x : points) {
      Json r;
      r["point"] = point_json(x);
      try {
        Rank2Point q = rank2_normal_form_at(phi.instantiate(x, t));
        r["lambda1"] = to_string(q.lambda1);
        r["p"] = q.p;
        r["alpha"] = to_string(q.alpha);
        r["normal_form"] = q.normal_form.str();
      } catch (const Error& e) {
        r["error"] = Json{{"code", code_name(e.code())}, {"message", e.what()}};
      }
      nf.push_back(r);
    }
    out["rank2_normal_forms"] = nf;
  }
  out["trunc_used"] = t;
  out["stabilized"] = true;
  emit(with_convention(out), in.format);
  return 0;
}

void add_single(CLI::App* sc, Inputs& in) {
  sc->add_option("--pres", in.pres_file, "presentation JSON file");
  sc->add_option("--word", in.word, "operator word, e.g. \"(a - 5/2 b) * inv(1 + b) * (a - 5/2 b)\"");
  sc->add_option("--xi", in.xi, "Xi expression, e.g. \"(1+3*b)*s^(-1/2)\"");
  sc->add_option("--trunc", in.trunc, "b-adic precision override");
  sc->add_option("--format", in.format, "json or table")->check(CLI::IsMember({"json", "table"}));
}

void add_pair(CLI::App* sc, Inputs& in) {
  add_single(sc, in);
  sc->add_option("--pres2", in.pres_file2, "second presentation JSON file");
  sc->add_option("--word2", in.word2, "second operator word");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"themecli: (a,b)-module theme analysis"};
  app.require_subcommand(1);
  Inputs in;
  struct Cmd {
    const char* name;
    const char* help;
    bool pair;
    int (*run)(const Inputs&);
  };
  const Cmd cmds[] = {
      {"analyze", "rank, invariants and summary data", false, cmd_analyze},
      {"canonical", "canonical standard form", false, cmd_canonical},
      {"bernstein", "Bernstein element and roots", false, cmd_bernstein},
      {"invariant", "decide invariance (F_{k-1} isomorphic to E/F_1)", false, cmd_invariant},
      {"enddim", "dimension of End and property U", false, cmd_enddim},
      {"iso", "decide isomorphism of two presentations", true, cmd_iso},
      {"ext", "dimensions of Ext^0 and Ext^1", true, cmd_ext},
      {"dualtwist", "twisted dual", false, cmd_dualtwist},
      {"embed", "generator in Xi", false, cmd_embed},
      {"sweep", "invariance sweep over a parameter grid", false, cmd_sweep},
      {"stratify", "rank stratification of a parametric Xi element", false, cmd_stratify},
  };
  int (*selected)(const Inputs&) = nullptr;
  for (const auto& c : cmds) {
    CLI::App* sc = app.add_subcommand(c.name, c.help);
    if (c.pair) add_pair(sc, in);
    else add_single(sc, in);
    if (std::string(c.name) == "dualtwist") sc->add_option("--delta", in.delta, "twist parameter");
    if (std::string(c.name) == "sweep" || std::string(c.name) == "stratify")
      sc->add_option("--config", in.config, "JSON configuration file");
    sc->callback([&selected, &c] { selected = c.run; });
  }
  CLI11_PARSE(app, argc, argv);
  try {
    return selected(in);
  } catch (const Error& e) {
    Json err;
    err["error"] = Json{{"code", code_name(e.code())}, {"message", e.what()}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) err["error"]["position"] = pe->position();
    std::cout << with_convention(err).dump(2) << "\n";
    std::cerr << code_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = Json{{"code", "InternalError"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    std::cerr << e.what() << "\n";
    return 1;
  }
}
