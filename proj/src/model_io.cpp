#include "ifn/model_io.hpp"

#include <json.hpp>

#include <set>

#include "ifn/errors.hpp"

namespace ifn {

namespace {

using nlohmann::json;

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items())
    if (!ok.count(item.key())) throw SchemaError(child(path, item.key()), "unknown field");
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw SchemaError(child(path, key), "missing required field");
  return j.at(key);
}

double real_of(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

int int_of(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

bool bool_of(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw SchemaError(path, "expected true or false");
  return j.get<bool>();
}

std::string string_of(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

// Complex numbers are [re, im]; a bare number is read as real.
Complex complex_of(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [re, im]");
  return {real_of(j[0], child(path, 0)), real_of(j[1], child(path, 1))};
}

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

GammaTriple triple_of(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(path, "expected [[re, im], scale, exponent]");
  GammaTriple t;
  t.param = complex_of(j[0], child(path, 0));
  t.scale = real_of(j[1], child(path, 1));
  t.exponent = real_of(j[2], child(path, 2));
  if (!(t.scale > 0.0)) throw SchemaError(child(path, 1), "scale > 0");
  if (!(t.exponent > 0.0)) throw SchemaError(child(path, 2), "exponent > 0");
  return t;
}

std::vector<GammaTriple> triples_of(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of triples");
  std::vector<GammaTriple> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(triple_of(j[i], child(path, i)));
  return out;
}

IFunction ifunction_of(const json& j, const std::string& path) {
  only_keys(j, path, {"m", "n", "p", "q", "upper", "lower", "coeff"});
  IFunction f;
  f.m = int_of(field(j, path, "m"), child(path, "m"));
  f.n = int_of(field(j, path, "n"), child(path, "n"));
  f.p = int_of(field(j, path, "p"), child(path, "p"));
  f.q = int_of(field(j, path, "q"), child(path, "q"));
  if (j.contains("upper")) f.upper = triples_of(j["upper"], child(path, "upper"));
  if (j.contains("lower")) f.lower = triples_of(j["lower"], child(path, "lower"));
  if (j.contains("coeff")) f.coeff = complex_of(j["coeff"], child(path, "coeff"));
  try {
    f.validate();
  } catch (const InvariantError& e) {
    throw SchemaError(path, e.what());
  }
  return f;
}

WeightSpec weight_of(const json& j, const std::string& path) {
  only_keys(j, path, {"rho", "orientation", "exponent_override", "exponent"});
  WeightSpec w;
  w.rho = complex_of(field(j, path, "rho"), child(path, "rho"));
  try {
    w.orientation = side_from_string(string_of(field(j, path, "orientation"), child(path, "orientation")));
  } catch (const InvariantError& e) {
    throw SchemaError(child(path, "orientation"), e.what());
  }
  if (j.contains("exponent_override")) w.exponent_override = bool_of(j["exponent_override"], child(path, "exponent_override"));
  if (j.contains("exponent")) w.exponent = real_of(j["exponent"], child(path, "exponent"));
  if (w.exponent_override && !j.contains("exponent"))
    throw SchemaError(child(path, "exponent"), "required when exponent_override is true");
  if (!(w.exponent > 0.0)) throw SchemaError(child(path, "exponent"), "exponent > 0");
  return w;
}

OperatorSpec operator_of(const json& j, const std::string& path) {
  only_keys(j, path, {"family", "side", "params"});
  OperatorSpec s;
  try {
    s.family = family_from_string(string_of(field(j, path, "family"), child(path, "family")));
  } catch (const InvariantError& e) {
    throw SchemaError(child(path, "family"), e.what());
  }
  try {
    s.side = side_from_string(string_of(field(j, path, "side"), child(path, "side")));
  } catch (const InvariantError& e) {
    throw SchemaError(child(path, "side"), e.what());
  }
  const json& params = field(j, path, "params");
  const std::string ppath = child(path, "params");
  if (!params.is_array()) throw SchemaError(ppath, "expected an array");
  for (std::size_t i = 0; i < params.size(); ++i) s.params.push_back(complex_of(params[i], child(ppath, i)));
  try {
    s.validate();
  } catch (const InvariantError& e) {
    throw SchemaError(ppath, e.what());
  }
  return s;
}

ContourConfig contour_of(const json& j, const std::string& path) {
  only_keys(j, path, {"offset", "auto_offset", "half_height", "nodes", "tol", "max_refinements"});
  ContourConfig c;
  if (j.contains("offset")) c.offset = real_of(j["offset"], child(path, "offset"));
  if (j.contains("auto_offset")) c.auto_offset = bool_of(j["auto_offset"], child(path, "auto_offset"));
  if (j.contains("half_height")) c.half_height = real_of(j["half_height"], child(path, "half_height"));
  if (j.contains("nodes")) c.nodes = int_of(j["nodes"], child(path, "nodes"));
  if (j.contains("tol")) c.tol = real_of(j["tol"], child(path, "tol"));
  if (j.contains("max_refinements")) c.max_refinements = int_of(j["max_refinements"], child(path, "max_refinements"));
  try {
    c.validate();
  } catch (const InvariantError& e) {
    throw SchemaError(path, e.what());
  }
  return c;
}

QuadraturePolicy quadrature_of(const json& j, const std::string& path) {
  only_keys(j, path, {"nodes", "endpoint_clearance", "tol", "max_refinements"});
  QuadraturePolicy q;
  if (j.contains("nodes")) q.nodes = int_of(j["nodes"], child(path, "nodes"));
  if (j.contains("endpoint_clearance"))
    q.endpoint_clearance = real_of(j["endpoint_clearance"], child(path, "endpoint_clearance"));
  if (j.contains("tol")) q.tol = real_of(j["tol"], child(path, "tol"));
  if (j.contains("max_refinements")) q.max_refinements = int_of(j["max_refinements"], child(path, "max_refinements"));
  try {
    q.validate();
  } catch (const InvariantError& e) {
    throw SchemaError(path, e.what());
  }
  return q;
}

json triples_json(const std::vector<GammaTriple>& ts) {
  json out = json::array();
  for (const GammaTriple& t : ts) out.push_back(json::array({to_json(t.param), t.scale, t.exponent}));
  return out;
}

ModelDocument base_document(const IFunction& f) {
  ModelDocument d;
  d.ifunction = f;
  return d;
}

ModelDocument operator_fixture(const IFunction& base, Family family, Side side, std::vector<Complex> params,
                               Complex rho) {
  ModelDocument d = base_document(base);
  d.weight = WeightSpec{rho, side, false, 1.0};
  d.op = OperatorSpec{family, side, std::move(params)};
  return d;
}

}  // namespace

ModelDocument parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("/", std::string("malformed document: ") + e.what());
  }
  only_keys(j, "", {"schema_version", "ifunction", "weight", "operator", "contour", "quadrature"});
  ModelDocument d;
  d.schema_version = int_of(field(j, "", "schema_version"), "/schema_version");
  if (d.schema_version != 1) throw SchemaError("/schema_version", "schema_version == 1");
  d.ifunction = ifunction_of(field(j, "", "ifunction"), "/ifunction");
  if (j.contains("weight")) d.weight = weight_of(j["weight"], "/weight");
  if (j.contains("operator")) d.op = operator_of(j["operator"], "/operator");
  if (j.contains("contour")) d.contour = contour_of(j["contour"], "/contour");
  if (j.contains("quadrature")) d.quadrature = quadrature_of(j["quadrature"], "/quadrature");
  return d;
}

std::string serialize_model(const ModelDocument& doc) {
  const IFunction& f = doc.ifunction;
  json j;
  j["schema_version"] = doc.schema_version;
  j["ifunction"] = {{"m", f.m}, {"n", f.n}, {"p", f.p}, {"q", f.q}, {"upper", triples_json(f.upper)},
                    {"lower", triples_json(f.lower)}, {"coeff", to_json(f.coeff)}};
  if (doc.weight) {
    const WeightSpec& w = *doc.weight;
    j["weight"] = {{"rho", to_json(w.rho)},
                   {"orientation", to_string(w.orientation)},
                   {"exponent_override", w.exponent_override},
                   {"exponent", w.exponent}};
  }
  if (doc.op) {
    json params = json::array();
    for (Complex z : doc.op->params) params.push_back(to_json(z));
    j["operator"] = {{"family", to_string(doc.op->family)}, {"side", to_string(doc.op->side)}, {"params", params}};
  }
  if (doc.contour) {
    const ContourConfig& c = *doc.contour;
    j["contour"] = {{"offset", c.offset}, {"auto_offset", c.auto_offset}, {"half_height", c.half_height},
                    {"nodes", c.nodes},   {"tol", c.tol},                 {"max_refinements", c.max_refinements}};
  }
  if (doc.quadrature) {
    const QuadraturePolicy& q = *doc.quadrature;
    j["quadrature"] = {{"nodes", q.nodes},
                       {"endpoint_clearance", q.endpoint_clearance},
                       {"tol", q.tol},
                       {"max_refinements", q.max_refinements}};
  }
  return j.dump(2) + "\n";
}

PowerWeightedIFunction weighted_function(const ModelDocument& doc) {
  if (!doc.weight) throw SchemaError("/weight", "missing required field");
  PowerWeightedIFunction w = make_weighted(doc.ifunction, doc.weight->rho, doc.weight->orientation);
  if (doc.weight->exponent_override) {
    w.exponent = doc.weight->exponent;
    w.exponent_override = true;
  }
  return w;
}

std::vector<std::string> fixture_names() {
  return {"exp",       "gauss2f1",    "mittag-leffler", "saigo-cor31",  "msm-thm31",
          "msm-thm32", "msm-d-thm41", "msm-d-thm42",    "msm-cd-thm51", "msm-cd-thm52"};
}

ModelDocument fixture(const std::string& name) {
  const IFunction e = make_exp_instance();
  if (name == "exp") return base_document(e);
  if (name == "gauss2f1") return base_document(make_gauss2f1_instance(0.5, 0.75, 1.6));
  if (name == "mittag-leffler") return base_document(make_mittag_leffler_instance(0.7));
  if (name == "saigo-cor31") return operator_fixture(e, Family::SAIGO_I, Side::Left, {0.7, 0.2, 0.4}, 1.5);
  if (name == "msm-thm31")
    return operator_fixture(e, Family::MSM_I, Side::Left, {0.3, 0.2, 0.1, 0.4, 0.9}, 1.5);
  if (name == "msm-thm32")
    return operator_fixture(e, Family::MSM_I, Side::Right, {0.3, 0.2, 0.1, 0.4, 0.9}, 1.5);
  if (name == "msm-d-thm41")
    return operator_fixture(e, Family::MSM_D, Side::Left, {-0.3, -0.2, 0.1, 0.4, 0.5}, 2.2);
  if (name == "msm-d-thm42")
    return operator_fixture(e, Family::MSM_D, Side::Right, {-0.3, -0.2, 0.1, 0.4, 0.5}, 1.8);
  if (name == "msm-cd-thm51")
    return operator_fixture(e, Family::MSM_CD, Side::Left, {-0.3, -0.2, 0.1, 0.4, 0.5}, 2.4);
  if (name == "msm-cd-thm52")
    return operator_fixture(e, Family::MSM_CD, Side::Right, {-0.3, -0.2, 0.1, 0.4, 0.5}, 1.6);
  throw SchemaError("/fixture", "unknown fixture '" + name + "'");
}

}  // namespace ifn
