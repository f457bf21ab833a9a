#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ifn/frac_ops.hpp"
#include "ifn/ifunction.hpp"
#include "ifn/oracle.hpp"

namespace ifn {

/// Power weight applied to the document's I-function.
struct WeightSpec {
  Complex rho = 1.0;
  Side orientation = Side::Left;
  /// When false the exponent follows mu of the I-function.
  bool exponent_override = false;
  double exponent = 1.0;
};

struct ModelDocument {
  int schema_version = 1;
  IFunction ifunction;
  std::optional<WeightSpec> weight;
  std::optional<OperatorSpec> op;
  std::optional<ContourConfig> contour;
  std::optional<QuadraturePolicy> quadrature;
};

/// Parses and validates a JSON model document. Throws SchemaError whose
/// path is the JSON pointer of the offending field.
ModelDocument parse_model(const std::string& text);

/// Canonical form: sorted keys, two-space indent, shortest round-trip floats,
/// every optional section that is present written out in full.
std::string serialize_model(const ModelDocument& doc);

/// Weighted function described by the document; throws SchemaError when the
/// document has no weight section.
PowerWeightedIFunction weighted_function(const ModelDocument& doc);

/// Built-in fixtures: exp, gauss2f1, mittag-leffler, saigo-cor31, msm-thm31,
/// msm-thm32, msm-d-thm41, msm-d-thm42, msm-cd-thm51, msm-cd-thm52.
ModelDocument fixture(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace ifn
