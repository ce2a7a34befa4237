#ifndef QSEMI_CLI_HPP
#define QSEMI_CLI_HPP

#include "qsemi/domzub.hpp"
#include "qsemi/quiver.hpp"
#include "qsemi/routes.hpp"
#include "qsemi/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsemi::cli {

enum ExitCode { Pass = 0, Failure = 1, Usage = 2 };

// Input problems; reported with exit code 2.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline QuiverFile load_quiver(const std::string& path)
{
  try {
    return parse_quiver_file(read_file(path));
  }
  catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline void require_dims_two(const QuiverFile& f, const char* cmd)
{
  for (const auto& [v, n] : f.dims)
    if (n != 2)
      throw InputError(std::string(cmd) + ": vertex \"" + v + "\" has dimension " + std::to_string(n) +
                       "; simple-route traces generate the semi-invariants only for dimension vector (2,...,2)");
}

inline int cmd_routes(const std::string& path, std::ostream& out)
{
  const QuiverFile f = load_quiver(path);
  for (const auto& rc : enumerate_simple_routes(f.quiver))
    out << route_str(f.quiver, rc.canonical) << "  " << weight_str(route_weight(rc.canonical, f.quiver)) << "\n";
  return Pass;
}

inline int cmd_gens(const std::string& path, std::ostream& out)
{
  const QuiverFile f = load_quiver(path);
  require_dims_two(f, "gens");
  const Representation rep = generic_representation(f.quiver, f.dims);
  for (const auto& rc : generator_routes(f.quiver))
    out << "tr" << route_str(f.quiver, rc.canonical) << " = " << route_trace(rc.canonical, rep).str() << "\n";
  return Pass;
}

inline int cmd_dz(const std::string& quiver_path, const std::string& spec_path, std::ostream& out)
{
  const QuiverFile f = load_quiver(quiver_path);
  DZSpec spec;
  try {
    spec = parse_dz_spec(read_file(spec_path));
    validate_dz_spec(spec, f.quiver, f.dims);
  }
  catch (const ParseError& e) {
    throw InputError(spec_path + ": " + e.what());
  }
  catch (const DZSpecError& e) {
    throw InputError(spec_path + ": " + e.what());
  }
  const Representation rep = generic_representation(f.quiver, f.dims);
  for (const auto& si : extract_semiinvariants(spec, rep)) out << si.multidegree.str() << ": " << si.value.str() << "\n";
  return Pass;
}

inline int cmd_reduce(const std::string& path, const std::string& route_text, std::ostream& out)
{
  const QuiverFile f = load_quiver(path);
  require_dims_two(f, "reduce");
  Route r;
  try {
    r = parse_route(f.quiver, route_text);
    validate_route(f.quiver, r);
  }
  catch (const RouteError& e) {
    throw InputError(e.what());
  }
  if (!is_simple(r)) {
    out << reduce_repeated(r, f.quiver).str(f.quiver) << "\n";
    return Pass;
  }
  try {
    out << eliminate_adjoint_pair(r, f.quiver).str(f.quiver) << "\n";
  }
  catch (const RouteError&) {
    out << route_str(f.quiver, canonicalize(r).canonical) << " is simple with no reverse pair to eliminate\n";
  }
  return Pass;
}

inline int cmd_verify(const std::string& suite, const VerifyOptions& opt, bool json, bool timing, std::ostream& out)
{
  if (!is_suite(suite))
    throw InputError("verify: unknown suite \"" + suite +
                     "\" (expected lemma1, prop1, invariance, reduction, dz, counterexample or all)");
  Report rep;
  try {
    rep = run_suite(suite, opt);
  }
  catch (const std::out_of_range& e) {
    throw InputError(std::string("verify: ") + e.what());
  }
  if (json) out << rep.json(timing).dump(2) << "\n";
  else out << rep.text(timing);
  return rep.pass() ? Pass : Failure;
}

// Arguments exclude the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Semi-invariants of 2-representations of quivers", "qsemi"};
  app.require_subcommand(1);

  std::string file, file2, route, suite;
  VerifyOptions opt;
  bool json = false, timing = false;

  auto* routes = app.add_subcommand("routes", "List simple routes of the doubled quiver with their weights");
  routes->add_option("file", file, "Quiver JSON file")->required();
  auto* gens = app.add_subcommand("gens", "Print the generating traces on the generic representation");
  gens->add_option("file", file, "Quiver JSON file")->required();
  auto* dz = app.add_subcommand("dz", "Coefficients of the y-monomials in a Domokos-Zubkov determinant");
  dz->add_option("quiver", file, "Quiver JSON file")->required();
  dz->add_option("spec", file2, "DZ spec JSON file")->required();
  auto* reduce = app.add_subcommand("reduce", "Rewrite a route trace in terms of simpler routes");
  reduce->add_option("file", file, "Quiver JSON file")->required();
  reduce->add_option("route", route, "Route such as (a,~b,b,~a)")->required();
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "lemma1 | prop1 | invariance | reduction | dz | counterexample | all")->required();
  verify->add_option("--k", opt.k, "Largest block count for prop1")->capture_default_str();
  verify->add_option("--trials", opt.trials, "Random trials per check")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--seed", opt.seed, "Master seed")->capture_default_str();
  verify->add_flag("--json", json, "Emit the report as JSON");
  verify->add_flag("--timing", timing, "Include wall-clock time in the report");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  }
  catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Pass : Usage;
  }

  try {
    if (routes->parsed()) return cmd_routes(file, out);
    if (gens->parsed()) return cmd_gens(file, out);
    if (dz->parsed()) return cmd_dz(file, file2, out);
    if (reduce->parsed()) return cmd_reduce(file, route, out);
    return cmd_verify(suite, opt, json, timing, out);
  }
  catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  }
  catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  }
}

} // namespace qsemi::cli

#endif
