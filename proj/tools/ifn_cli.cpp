#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ifn/commands.hpp"
#include "ifn/errors.hpp"

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw ifn::SchemaError("/", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"I-function evaluation and fractional operator rules"};
  std::string command, model_path, fixture_name;
  double z_re = 1.0, z_im = 0.0;
  ifn::CommandFlags flags;

  app.add_option("command", command, "eval | apply | verify | reduce | report")
      ->required()
      ->check(CLI::IsMember({"eval", "apply", "verify", "reduce", "report"}));
  app.add_option("model", model_path, "model document (JSON), '-' for stdin");
  app.add_option("--fixture", fixture_name, "built-in fixture instead of a model file");
  app.add_option("--z", z_re, "argument of eval (real part)");
  app.add_option("--z-im", z_im, "argument of eval (imaginary part)");
  app.add_option("--x", flags.x, "evaluation points for verify and weighted eval");
  app.add_option("--offset", flags.offset, "fixed contour offset (disables automatic placement)");
  app.add_option("--half-height", flags.half_height, "contour truncation |Im s|");
  app.add_option("--tol", flags.tol, "contour and quadrature tolerance (default from IFN_TOL)");
  app.add_option("--nodes", flags.nodes, "initial contour node count");
  app.add_option("--exponent-override", flags.exponent_override, "weight exponent in place of mu");
  app.add_flag_callback("--list-fixtures", [] {
    for (const std::string& n : ifn::fixture_names()) std::cout << n << "\n";
    std::exit(0);
  }, "print fixture names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : ifn::kExitSchema;
  }
  flags.z = ifn::Complex(z_re, z_im);

  ifn::ModelDocument doc;
  try {
    if (!fixture_name.empty() == !model_path.empty())
      throw ifn::SchemaError("/", "give exactly one of a model file or --fixture");
    doc = fixture_name.empty() ? ifn::parse_model(slurp(model_path)) : ifn::fixture(fixture_name);
  } catch (const ifn::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return ifn::kExitSchema;
  }

  const ifn::CommandResult r = ifn::run(command, doc, flags);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
