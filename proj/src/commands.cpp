#include "ifn/commands.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ifn/errors.hpp"

namespace ifn {

namespace {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

// nlohmann prints the shortest round-trip form; command output pins 17 digits.
void write(const json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& item : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(item.key()).dump() + ": ";
        write(item.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(j[i], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    default: out += j.dump();
  }
}

std::string render(const json& j) {
  std::string out;
  write(j, out, 0);
  return out + "\n";
}

ContourConfig contour_config(const ModelDocument& doc, const CommandFlags& flags) {
  ContourConfig c = doc.contour.value_or(ContourConfig{});
  if (!doc.contour)
    if (auto t = env_tolerance()) c.tol = *t;
  if (flags.offset) {
    c.offset = *flags.offset;
    c.auto_offset = false;
  }
  if (flags.half_height) c.half_height = *flags.half_height;
  if (flags.tol) c.tol = *flags.tol;
  if (flags.nodes) c.nodes = *flags.nodes;
  try {
    c.validate();
  } catch (const InvariantError& e) {
    throw SchemaError("/contour", e.what());
  }
  return c;
}

QuadraturePolicy quadrature_policy(const ModelDocument& doc, const CommandFlags& flags) {
  QuadraturePolicy q = doc.quadrature.value_or(QuadraturePolicy{});
  if (!doc.quadrature)
    if (auto t = env_tolerance()) q.tol = *t;
  if (flags.tol) q.tol = *flags.tol;
  try {
    q.validate();
  } catch (const InvariantError& e) {
    throw SchemaError("/quadrature", e.what());
  }
  return q;
}

PowerWeightedIFunction weight(const ModelDocument& doc, const CommandFlags& flags) {
  PowerWeightedIFunction w = weighted_function(doc);
  if (flags.exponent_override) {
    if (!(*flags.exponent_override > 0.0)) throw SchemaError("/weight/exponent", "exponent > 0");
    w.exponent = *flags.exponent_override;
    w.exponent_override = true;
  }
  return w;
}

const OperatorSpec& operator_of(const ModelDocument& doc) {
  if (!doc.op) throw SchemaError("/operator", "missing required field");
  return *doc.op;
}

json hypotheses_json(const std::vector<HypothesisCheck>& checks) {
  json out = json::array();
  for (const HypothesisCheck& h : checks)
    out.push_back({{"name", h.name}, {"passed", h.passed}, {"margin", h.margin}});
  return out;
}

json eval_command(const ModelDocument& doc, const CommandFlags& flags) {
  const ContourConfig cfg = contour_config(doc, flags);
  const ContourResult r = evaluate_detailed(doc.ifunction, flags.z, cfg);
  json out = {{"command", "eval"},
              {"z", complex_json(flags.z)},
              {"value", complex_json(r.value)},
              {"offset", r.offset},
              {"half_height", r.half_height},
              {"evaluations", r.evaluations},
              {"error_estimate", r.error_estimate}};
  if (!flags.x.empty() && doc.weight) {
    const PowerWeightedIFunction w = weight(doc, flags);
    json points = json::array();
    for (double x : flags.x) points.push_back({{"x", x}, {"value", complex_json(weighted_value(w, x, cfg))}});
    out["weighted"] = points;
  }
  return out;
}

json apply_command(const ModelDocument& doc, const CommandFlags& flags, bool& rejected) {
  const OperatorSpec& spec = operator_of(doc);
  const PowerWeightedIFunction w = weight(doc, flags);
  const std::vector<HypothesisCheck> checks = check_hypotheses(spec, w);
  json out = {{"command", "apply"}, {"hypotheses", hypotheses_json(checks)}};
  for (const HypothesisCheck& h : checks)
    if (!h.passed) {
      rejected = true;
      out["rejected"] = h.name;
      return out;
    }
  const ApplyResult r = apply(spec, w);
  ModelDocument result;
  result.ifunction = r.output.base;
  const bool overridden = r.output.exponent_override || r.output.exponent != convergence_report(r.output.base).mu;
  result.weight = WeightSpec{r.output.rho, r.output.orientation, overridden, r.output.exponent};
  result.contour = doc.contour;
  result.quadrature = doc.quadrature;
  out["prefactor_exponent"] = complex_json(r.prefactor_exponent);
  out["output"] = json::parse(serialize_model(result));
  return out;
}

json verify_command(const ModelDocument& doc, const CommandFlags& flags) {
  const OperatorSpec& spec = operator_of(doc);
  const PowerWeightedIFunction w = weight(doc, flags);
  const ContourConfig cfg = contour_config(doc, flags);
  const QuadraturePolicy policy = quadrature_policy(doc, flags);
  const std::vector<double> xs = flags.x.empty() ? std::vector<double>{1.0} : flags.x;
  json records = json::array();
  for (double x : xs) {
    const ComparisonRecord r = brute_check(spec, w, x, policy, cfg);
    records.push_back({{"x", x},
                       {"symbolic_value", complex_json(r.symbolic_value)},
                       {"oracle_value", complex_json(r.oracle_value)},
                       {"rel_error", r.rel_error},
                       {"regime_notes", r.regime_notes}});
  }
  return {{"command", "verify"}, {"records", records}};
}

json reduce_command(const ModelDocument& doc) {
  json out = {{"command", "reduce"}};
  if (doc.op) {
    const OperatorSpec r = reduce_operator(*doc.op);
    json params = json::array();
    for (Complex z : r.params) params.push_back(complex_json(z));
    out["operator"] = {{"family", to_string(r.family)}, {"side", to_string(r.side)}, {"params", params}};
  }
  const KnownForm k = known_forms(doc.ifunction);
  json params = json::array();
  for (Complex z : k.parameters) params.push_back(complex_json(z));
  out["known_form"] = {{"tag", to_string(k.tag)}, {"parameters", params}};
  return out;
}

json report_command(const ModelDocument& doc) {
  const ConvergenceReport r = convergence_report(doc.ifunction);
  const PoleBounds b = pole_bounds(doc.ifunction);
  json poles = json::object();
  if (std::isfinite(b.left_max)) poles["left_max"] = b.left_max;
  if (std::isfinite(b.right_min)) poles["right_min"] = b.right_min;
  return {{"command", "report"},
          {"mu", r.mu},
          {"omega", r.omega},
          {"delta", r.delta},
          {"analytic", r.analytic},
          {"abs_convergent_sector", r.abs_convergent_sector},
          {"poles", poles}};
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::optional<double> env_tolerance() {
  const char* raw = std::getenv("IFN_TOL");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (*end != '\0' || !(v > 0.0 && v < 1.0)) return std::nullopt;
  return v;
}

CommandResult run(const std::string& command, const ModelDocument& doc, const CommandFlags& flags) {
  CommandResult result;
  try {
    bool rejected = false;
    json out;
    if (command == "eval")
      out = eval_command(doc, flags);
    else if (command == "apply")
      out = apply_command(doc, flags, rejected);
    else if (command == "verify")
      out = verify_command(doc, flags);
    else if (command == "reduce")
      out = reduce_command(doc);
    else if (command == "report")
      out = report_command(doc);
    else
      throw SchemaError("/command", "unknown command '" + command + "'");
    result.out = render(out);
    if (rejected) {
      result.exit_code = kExitHypothesis;
      result.err = "hypothesis failed: " + out["rejected"].get<std::string>() + "\n";
    }
  } catch (const HypothesisError& e) {
    result.exit_code = kExitHypothesis;
    result.err = std::string("hypothesis failed: ") + e.what() + "\n";
  } catch (const SchemaError& e) {
    result.exit_code = kExitSchema;
    result.err = std::string("schema error: ") + e.what() + "\n";
  } catch (const InvariantError& e) {
    result.exit_code = kExitSchema;
    result.err = std::string("invariant violated: ") + e.what() + "\n";
  } catch (const Error& e) {
    result.exit_code = kExitNumerical;
    result.err = std::string("numerical failure: ") + e.what() + "\n";
  }
  return result;
}

}  // namespace ifn
