#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lampk/errors.hpp"
#include "lampk/findim.hpp"
#include "lampk/intmatrix.hpp"
#include "lampk/oracle.hpp"
#include "lampk/report.hpp"

namespace {

using lampk::Caps;
using lampk::ErrorKind;
using lampk::fail;
using nlohmann::ordered_json;

long long parse_ll(const std::string& s, const std::string& what) {
  try {
    return std::stoll(s);
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "bad integer in " + what + ": '" + s + "'");
  }
}

Caps caps_from_flags(const std::vector<std::string>& overrides) {
  Caps caps;
  for (const std::string& o : overrides) {
    size_t eq = o.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::Parse, "--cap expects name=value, got '" + o + "'");
    caps.set(o.substr(0, eq), parse_ll(o.substr(eq + 1), "--cap"));
  }
  return caps;
}

std::chrono::steady_clock::time_point g_start;

void emit(const ordered_json& env_in, const std::optional<std::string>& json_path) {
  ordered_json env = env_in;
  env["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - g_start)
                         .count();
  if (auto err = lampk::validate_envelope(env))
    fail(ErrorKind::Internal, "report failed schema validation: " + *err);
  std::cout << lampk::render_text(env);
  if (json_path) {
    std::ofstream out(*json_path);
    if (!out) fail(ErrorKind::Parse, "cannot write '" + *json_path + "'");
    out << env.dump(2) << "\n";
  }
}

int run_selftest() {
  bool ok = true;
  auto expect = [&](bool cond, const std::string& what) {
    std::cout << (cond ? "ok   " : "FAIL ") << what << "\n";
    ok = ok && cond;
  };
  Caps caps;
  auto c2 = lampk::GroupModel::make("cyclic(2)", caps);
  auto c3 = lampk::GroupModel::make("cyclic(3)", caps);
  for (auto& v : lampk::cross_check(1, c2, c2, caps))
    expect(v.equal, v.name + " [" + v.context + "]");
  auto v32 = lampk::cross_check(2, c2, c3, caps);
  for (auto& v : v32)
    expect(v.must_match ? v.equal : !v.equal,
           v.name + " [" + v.context + "]" +
               (v.must_match ? "" : " (expected discrepancy)"));
  expect(lampk::m_matrix(lampk::validate_algebra({1, 2})) ==
             lampk::IntMatrix{{1, 0}, {2, 1}},
         "m_matrix(1,2) display");
  auto z = lampk::GroupModel::make("lattice(1)", caps);
  expect(lampk::census(z, 2, 5, caps)[2] == 5, "census(Z, k=2, r=5) = 5");
  std::cout << (ok ? "selftest passed\n" : "selftest FAILED\n");
  return ok ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  g_start = std::chrono::steady_clock::now();
  CLI::App app{"K-theory calculator for generalized lamplighter C*-algebras"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the global flags after a subcommand too
  std::optional<std::string> json_path;
  std::vector<std::string> cap_flags;
  std::vector<std::string> table_flags;
  app.add_option("--json", json_path, "write the JSON report to this path");
  app.add_option("--cap", cap_flags, "override an enumeration cap, name=value");
  app.add_option("--table", table_flags,
                 "override a base-K entry, descriptor=k0,k1");

  auto* compute = app.add_subcommand("compute", "run a problem spec file");
  std::string spec_path;
  std::optional<std::string> variant;
  compute->add_option("spec", spec_path, "problem spec file")->required();
  compute->add_option("--variant", variant, "literal | orbit | torsionfree | all");

  auto* verify = app.add_subcommand("verify", "run the verification grid");
  std::optional<std::string> grid_path;
  verify->add_option("grid", grid_path, "optional grid JSON file");

  auto* census_cmd = app.add_subcommand("census", "orbit census for a torsion-free model");
  std::string census_gamma;
  int census_k = 0, census_r = 0;
  std::optional<std::string> census_sigma;
  std::optional<int> census_n;
  census_cmd->add_option("gamma", census_gamma)->required();
  census_cmd->add_option("k", census_k, "maximal subset size")->required();
  census_cmd->add_option("r", census_r, "ball radius")->required();
  census_cmd->add_option("--sigma", census_sigma, "weight classes by |con sigma|-1");
  census_cmd->add_option("--n", census_n, "weight classes by n");

  app.add_subcommand("selftest", "quick internal consistency run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(compute)) {
      lampk::ProblemSpec spec = lampk::ProblemSpec::parse_file(spec_path);
      if (variant) spec.variant = *variant;
      for (const std::string& o : cap_flags) {
        size_t eq = o.find('=');
        if (eq == std::string::npos)
          fail(ErrorKind::Parse, "--cap expects name=value, got '" + o + "'");
        spec.cap_overrides[o.substr(0, eq)] = parse_ll(o.substr(eq + 1), "--cap");
      }
      for (const std::string& o : table_flags) {
        size_t eq = o.find('=');
        size_t comma = o.find(',', eq);
        if (eq == std::string::npos || comma == std::string::npos)
          fail(ErrorKind::Parse, "--table expects descriptor=k0,k1");
        spec.table_overrides[o.substr(0, eq)] = {
            parse_ll(o.substr(eq + 1, comma - eq - 1), "--table"),
            parse_ll(o.substr(comma + 1), "--table")};
      }
      // re-validate merged flags
      spec = lampk::ProblemSpec::parse_text(spec.echo().dump());
      emit(lampk::cmd_compute(spec), json_path);
      return 0;
    }
    if (app.got_subcommand(verify)) {
      Caps caps = caps_from_flags(cap_flags);
      ordered_json env = lampk::cmd_verify(grid_path, caps, lampk::BaseKTable{});
      emit(env, json_path);
      return lampk::envelope_ok(env) ? 0 : 5;
    }
    if (app.got_subcommand(census_cmd)) {
      Caps caps = caps_from_flags(cap_flags);
      emit(lampk::cmd_census(census_gamma, census_k, census_r, census_sigma,
                             census_n, caps),
           json_path);
      return 0;
    }
    return run_selftest();
  } catch (const lampk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
}
