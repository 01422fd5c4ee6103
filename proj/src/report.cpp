#include "lampk/report.hpp"

#include <fstream>
#include <sstream>

#include "lampk/errors.hpp"
#include "lampk/findim.hpp"
#include "lampk/intmatrix.hpp"
#include "lampk/oracle.hpp"

namespace lampk {

using nlohmann::ordered_json;

namespace {

const char* kFlagOnlyVerdict = "assemble_literal vs point_orbit_k";

long long to_ll(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "bad integer for " + what + ": '" + s + "'");
  }
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void spec_validate(const ProblemSpec& p) {
  if (p.gamma.empty()) fail(ErrorKind::Parse, "missing gamma descriptor");
  if (p.sigma.has_value() == p.n.has_value())
    fail(ErrorKind::Parse, "exactly one of sigma / n must be given");
  if (p.n && *p.n < 0) fail(ErrorKind::Parse, "n must be nonnegative");
  if (p.variant != "literal" && p.variant != "orbit" &&
      p.variant != "torsionfree" && p.variant != "all")
    fail(ErrorKind::Parse, "unknown variant '" + p.variant + "'");
  if (p.window.max_size < 1 || p.window.radius < 1)
    fail(ErrorKind::Parse, "truncation fields must be positive");
}

ProblemSpec parse_json_spec(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::Parse, std::string("bad JSON spec: ") + e.what());
  }
  ProblemSpec p;
  try {
    if (j.contains("sigma")) p.sigma = j["sigma"].get<std::string>();
    if (j.contains("gamma")) p.gamma = j["gamma"].get<std::string>();
    if (j.contains("n")) p.n = j["n"].get<int>();
    if (j.contains("variant")) p.variant = j["variant"].get<std::string>();
    if (j.contains("window")) {
      if (j["window"].contains("max_size"))
        p.window.max_size = j["window"]["max_size"].get<int>();
      if (j["window"].contains("radius"))
        p.window.radius = j["window"]["radius"].get<int>();
    }
    if (j.contains("caps"))
      for (auto& [k, v] : j["caps"].items())
        p.cap_overrides[k] = v.get<long long>();
    if (j.contains("table"))
      for (auto& [k, v] : j["table"].items())
        p.table_overrides[k] = {v.at(0).get<long long>(), v.at(1).get<long long>()};
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorKind::Parse, std::string("bad spec field: ") + e.what());
  }
  return p;
}

}  // namespace

ProblemSpec ProblemSpec::parse_text(const std::string& text) {
  ProblemSpec p;
  std::string body = trim(text);
  if (!body.empty() && body[0] == '{') {
    p = parse_json_spec(body);
  } else {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      size_t eq = line.find('=');
      if (eq == std::string::npos)
        fail(ErrorKind::Parse, "expected key=value, got '" + line + "'");
      std::string key = trim(line.substr(0, eq));
      std::string val = trim(line.substr(eq + 1));
      if (key == "sigma") p.sigma = val;
      else if (key == "gamma") p.gamma = val;
      else if (key == "n") p.n = static_cast<int>(to_ll(val, key));
      else if (key == "variant") p.variant = val;
      else if (key == "max_size") p.window.max_size = static_cast<int>(to_ll(val, key));
      else if (key == "radius") p.window.radius = static_cast<int>(to_ll(val, key));
      else if (key.rfind("cap.", 0) == 0) p.cap_overrides[key.substr(4)] = to_ll(val, key);
      else if (key.rfind("table.", 0) == 0) {
        size_t comma = val.find(',');
        if (comma == std::string::npos)
          fail(ErrorKind::Parse, "table override needs 'k0,k1' ranks");
        p.table_overrides[key.substr(6)] = {to_ll(trim(val.substr(0, comma)), key),
                                            to_ll(trim(val.substr(comma + 1)), key)};
      } else {
        fail(ErrorKind::Parse, "unknown spec key '" + key + "'");
      }
    }
  }
  spec_validate(p);
  return p;
}

ProblemSpec ProblemSpec::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open spec file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

Caps ProblemSpec::make_caps() const {
  Caps caps;
  for (const auto& [k, v] : cap_overrides) caps.set(k, v);
  return caps;
}

BaseKTable ProblemSpec::make_table() const {
  BaseKTable t;
  if (!table_overrides.empty()) {
    t.overrides = table_overrides;
    t.version = "builtin-1+overrides";
  }
  return t;
}

ordered_json ProblemSpec::echo() const {
  ordered_json j;
  if (sigma) j["sigma"] = *sigma;
  j["gamma"] = gamma;
  if (n) j["n"] = *n;
  j["variant"] = variant;
  j["window"] = {{"max_size", window.max_size}, {"radius", window.radius}};
  if (!cap_overrides.empty()) j["caps"] = cap_overrides;
  if (!table_overrides.empty()) {
    ordered_json t;
    for (const auto& [k, v] : table_overrides) t[k] = {v.first, v.second};
    j["table"] = t;
  }
  return j;
}

ordered_json report_to_json(const KReport& report) {
  ordered_json j;
  j["variant"] = report.variant;
  j["base"] = {{"k0", report.base.k0.finite_rank}, {"k1", report.base.k1.finite_rank}};
  ordered_json summands = ordered_json::array();
  for (const KSummand& s : report.summands) {
    ordered_json row;
    row["C"] = s.c_label;
    row["X"] = s.x_label;
    if (s.phi_label) row["phi"] = *s.phi_label;
    row["stab_order"] = s.stab_order;
    row["k0"] = s.k0;
    row["k1"] = s.k1;
    if (s.count != 1) row["count"] = s.count;
    summands.push_back(std::move(row));
  }
  j["summands"] = std::move(summands);
  auto comp = [](const KComponent& c) {
    return ordered_json{{"finite", c.finite_rank},
                        {"countably_infinite", c.countably_infinite}};
  };
  j["totals"] = {{"k0", comp(report.totals.k0)}, {"k1", comp(report.totals.k1)}};
  j["window"] = {{"max_size", report.window.max_size},
                 {"radius", report.window.radius},
                 {"truncated", report.truncated}};
  j["table_version"] = report.table_version;
  return j;
}

namespace {

ordered_json verdict_to_json(const ComparisonVerdict& v) {
  return ordered_json{{"name", v.name},
                      {"lhs", v.lhs},
                      {"rhs", v.rhs},
                      {"equal", v.equal},
                      {"context", v.context}};
}

ordered_json make_envelope(ordered_json input) {
  ordered_json env;
  env["version"] = kToolVersion;
  env["input"] = std::move(input);
  env["results"] = ordered_json::array();
  env["oracle"] = ordered_json::array();
  env["discrepancies"] = ordered_json::array();
  env["caveats"] = ordered_json::array();
  return env;
}

void attach_oracle(ordered_json& env, const std::vector<ComparisonVerdict>& verdicts) {
  for (const ComparisonVerdict& v : verdicts) {
    env["oracle"].push_back(verdict_to_json(v));
    if (!v.equal && !v.must_match)
      env["discrepancies"].push_back(
          {{"name", v.name}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"context", v.context}});
  }
}

void attach_caveat(ordered_json& env, const std::string& caveat) {
  for (const auto& c : env["caveats"])
    if (c.get<std::string>() == caveat) return;
  env["caveats"].push_back(caveat);
}

}  // namespace

ordered_json cmd_compute(const ProblemSpec& spec) {
  Caps caps = spec.make_caps();
  BaseKTable table = spec.make_table();
  GroupPtr gamma = GroupModel::make(spec.gamma, caps);
  GroupPtr sigma;
  int m;
  if (spec.sigma) {
    sigma = GroupModel::make(*spec.sigma, caps);
    m = algebra_from_group(sigma).n();
  } else {
    m = *spec.n;
  }

  ordered_json env = make_envelope(spec.echo());
  bool infinite = !gamma->is_finite();
  std::vector<KReport> reports;
  auto want = [&](const std::string& v) {
    return spec.variant == v || spec.variant == "all";
  };
  if (want("literal"))
    reports.push_back(assemble_literal(m, gamma, spec.window, table, caps));
  if (want("orbit"))
    reports.push_back(assemble_orbit(m, gamma, spec.window, table, caps));
  if (want("torsionfree")) {
    if (spec.variant == "torsionfree" || infinite)
      reports.push_back(assemble_torsionfree(m, gamma, spec.window, table, caps));
  }

  for (const KReport& r : reports) {
    if (!totals_recomputable(r))
      fail(ErrorKind::Internal, "report totals do not match summand list");
    env["results"].push_back(report_to_json(r));
    attach_caveat(env, r.caveat);
  }

  // literal vs orbit discrepancy, machine-readable
  const KReport* lit = nullptr;
  const KReport* orb = nullptr;
  for (const KReport& r : reports) {
    if (r.variant == "literal") lit = &r;
    if (r.variant == "orbit") orb = &r;
  }
  if (lit && orb && !(lit->totals == orb->totals))
    env["discrepancies"].push_back(
        {{"name", "literal vs orbit totals"},
         {"lhs", lit->totals.k0.finite_rank},
         {"rhs", orb->totals.k0.finite_rank},
         {"context", "gamma=" + gamma->descriptor() + ",n=" + std::to_string(m)}});

  if (gamma->is_finite()) attach_oracle(env, cross_check(m, gamma, sigma, caps));
  return env;
}

ordered_json cmd_census(const std::string& gamma_desc, int k_max, int radius,
                        std::optional<std::string> sigma_desc, std::optional<int> n,
                        const Caps& caps) {
  if (k_max < 1 || radius < 0) fail(ErrorKind::Parse, "census bounds must be positive");
  GroupPtr gamma = GroupModel::make(gamma_desc, caps);
  if (gamma->kind() != GroupModel::Kind::Lattice &&
      gamma->kind() != GroupModel::Kind::Free)
    fail(ErrorKind::Unsupported, "census needs a torsion-free lattice/free model");
  int m = 1;
  if (sigma_desc) m = algebra_from_group(GroupModel::make(*sigma_desc, caps)).n();
  else if (n) m = *n;

  ordered_json input;
  input["gamma"] = gamma_desc;
  input["max_size"] = k_max;
  input["radius"] = radius;
  if (sigma_desc) input["sigma"] = *sigma_desc;
  if (n) input["n"] = *n;
  ordered_json env = make_envelope(std::move(input));

  std::vector<long long> counts = census(gamma, k_max, radius, caps);
  ordered_json result;
  result["variant"] = "census";
  result["base"] = {{"k0", 0}, {"k1", 0}};
  ordered_json rows = ordered_json::array();
  long long total = 0;
  for (int k = 1; k <= k_max; ++k) {
    long long w = 1;
    for (int i = 0; i < k; ++i) w *= m;
    rows.push_back({{"C", "{" + gamma->name(gamma->identity()) + "}"},
                    {"X", "|X|=" + std::to_string(k)},
                    {"stab_order", 1},
                    {"k0", w},
                    {"k1", 0},
                    {"count", counts[k]}});
    total += counts[k] * w;
  }
  result["summands"] = std::move(rows);
  result["totals"] = {{"k0", {{"finite", total}, {"countably_infinite", true}}},
                      {"k1", {{"finite", 0}, {"countably_infinite", false}}}};
  result["window"] = {{"max_size", k_max}, {"radius", radius}, {"truncated", true}};
  env["results"].push_back(std::move(result));
  return env;
}

namespace {

// Default verification grid per the oracle module contract.
struct GridPair {
  std::string sigma, gamma;
};

std::vector<GridPair> default_grid() {
  std::vector<GridPair> out;
  for (const char* s : {"cyclic(2)", "cyclic(3)", "symmetric(3)"})
    for (const char* g : {"cyclic(2)", "cyclic(3)", "cyclic(4)",
                          "cyclic(2)xcyclic(2)", "symmetric(3)"})
      out.push_back({s, g});
  return out;
}

std::vector<GridPair> load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open grid file '" + path + "'");
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const std::exception& e) {
    fail(ErrorKind::Parse, std::string("bad grid JSON: ") + e.what());
  }
  std::vector<GridPair> out;
  try {
    for (const auto& row : j)
      out.push_back({row.at("sigma").get<std::string>(),
                     row.at("gamma").get<std::string>()});
  } catch (const std::exception& e) {
    fail(ErrorKind::Parse, std::string("bad grid entry: ") + e.what());
  }
  if (out.empty()) fail(ErrorKind::Parse, "empty verification grid");
  return out;
}

void add_check(ordered_json& env, const std::string& name, long long lhs,
               long long rhs, const std::string& ctx) {
  env["oracle"].push_back(ordered_json{{"name", name},
                                       {"lhs", lhs},
                                       {"rhs", rhs},
                                       {"equal", lhs == rhs},
                                       {"context", ctx}});
}

// Sorted block-size lists (1, k_1 <= ... <= k_n), n <= 3, sizes <= 4.
std::vector<std::vector<int>> algebra_grid() {
  std::vector<std::vector<int>> out{{1}};
  for (int a = 1; a <= 4; ++a) {
    out.push_back({1, a});
    for (int b = a; b <= 4; ++b) {
      out.push_back({1, a, b});
      for (int c = b; c <= 4; ++c) out.push_back({1, a, b, c});
    }
  }
  return out;
}

}  // namespace

ordered_json cmd_verify(const std::optional<std::string>& grid_path,
                        const Caps& caps, const BaseKTable& table) {
  (void)table;
  std::vector<GridPair> grid = grid_path ? load_grid(*grid_path) : default_grid();
  ordered_json input;
  input["grid"] = ordered_json::array();
  for (const GridPair& p : grid)
    input["grid"].push_back({{"sigma", p.sigma}, {"gamma", p.gamma}});
  ordered_json env = make_envelope(std::move(input));

  std::vector<std::string> bijection_done;
  for (const GridPair& p : grid) {
    GroupPtr sigma = GroupModel::make(p.sigma, caps);
    GroupPtr gamma = GroupModel::make(p.gamma, caps);
    // skip pairs whose wreath product exceeds the group-order cap
    long long wreath = gamma->order();
    bool fits = true;
    for (long long i = 0; i < gamma->order(); ++i) {
      wreath *= sigma->order();
      if (wreath > caps.group_order) { fits = false; break; }
    }
    if (!fits) continue;
    int m = algebra_from_group(sigma).n();
    attach_oracle(env, cross_check(m, gamma, sigma, caps));
    if (std::find(bijection_done.begin(), bijection_done.end(), p.gamma) ==
        bijection_done.end()) {
      bijection_done.push_back(p.gamma);
      ComparisonVerdict v = verify_bijection(gamma, caps);
      env["oracle"].push_back(verdict_to_json(v));
    }
  }

  // matrix and finite-dimensional algebra suites
  Caps fdcaps = caps;
  long long grid_pass[5] = {0, 0, 0, 0, 0};
  long long grid_total[5] = {0, 0, 0, 0, 0};
  for (const std::vector<int>& sizes : algebra_grid()) {
    FinDimAlgebra a = validate_algebra(sizes);
    for (int t = 0; t <= 3; ++t) {
      IntMatrix mf = m_tensor(a, t, fdcaps);
      ++grid_total[0];
      if (mf.det() == 1 && smith_normal_form(mf).s.is_identity() &&
          mf.mul(unimodular_inverse(mf)).is_identity())
        ++grid_pass[0];
      ++grid_total[1];
      if (verify_k0_diagram(a, t, fdcaps).ok) ++grid_pass[1];
      ++grid_total[2];
      if (verify_function_algebra_iso(a, t, fdcaps).ok) ++grid_pass[2];
    }
    ++grid_total[3];
    if (verify_family(a, 3, fdcaps).ok) ++grid_pass[3];
  }
  // the paper's displayed n = 1, k1 = 2 matrix, bit-exact
  ++grid_total[4];
  if (m_matrix(validate_algebra({1, 2})) == IntMatrix{{1, 0}, {2, 1}}) ++grid_pass[4];

  add_check(env, "matrix suite: det/SNF/inverse", grid_pass[0], grid_total[0], "algebra grid");
  add_check(env, "verify_k0_diagram grid", grid_pass[1], grid_total[1], "algebra grid");
  add_check(env, "verify_function_algebra_iso grid", grid_pass[2], grid_total[2], "algebra grid");
  add_check(env, "verify_family grid", grid_pass[3], grid_total[3], "algebra grid");
  add_check(env, "m_matrix(1,2) display", grid_pass[4], grid_total[4], "n=1,k1=2");
  return env;
}

bool envelope_ok(const ordered_json& envelope) {
  if (!envelope.contains("oracle")) return true;
  for (const auto& v : envelope["oracle"]) {
    if (v.value("equal", false)) continue;
    if (v.value("name", "") == kFlagOnlyVerdict) continue;
    return false;
  }
  return true;
}

std::optional<std::string> validate_envelope(const ordered_json& env) {
  auto need = [&](const char* key, ordered_json::value_t type) -> std::optional<std::string> {
    if (!env.contains(key)) return std::string("missing field '") + key + "'";
    if (env[key].type() != type) return std::string("field '") + key + "' has wrong type";
    return std::nullopt;
  };
  if (auto e = need("version", ordered_json::value_t::string)) return e;
  if (!env.contains("input")) return std::string("missing field 'input'");
  for (const char* key : {"results", "oracle", "discrepancies", "caveats"})
    if (auto e = need(key, ordered_json::value_t::array)) return e;
  for (const auto& r : env["results"]) {
    for (const char* key : {"variant", "base", "summands", "totals", "window"})
      if (!r.contains(key))
        return std::string("result missing field '") + key + "'";
    for (const char* deg : {"k0", "k1"}) {
      if (!r["totals"].contains(deg)) return std::string("totals missing ") + deg;
      const auto& c = r["totals"][deg];
      if (!c.contains("finite") || !c.contains("countably_infinite"))
        return std::string("malformed totals component");
    }
    for (const auto& s : r["summands"])
      for (const char* key : {"C", "X", "stab_order", "k0", "k1"})
        if (!s.contains(key))
          return std::string("summand missing field '") + key + "'";
  }
  for (const auto& v : env["oracle"])
    for (const char* key : {"name", "lhs", "rhs", "equal"})
      if (!v.contains(key))
        return std::string("oracle verdict missing field '") + key + "'";
  return std::nullopt;
}

std::string render_text(const ordered_json& env) {
  std::ostringstream out;
  out << env.value("version", "") << "\n";
  for (const auto& r : env["results"]) {
    out << "[" << r.value("variant", "") << "] base k0=" << r["base"]["k0"]
        << " k1=" << r["base"]["k1"] << "; totals k0="
        << r["totals"]["k0"]["finite"].get<long long>()
        << (r["totals"]["k0"]["countably_infinite"].get<bool>() ? " (+countably infinite)" : "")
        << " k1=" << r["totals"]["k1"]["finite"].get<long long>()
        << (r["totals"]["k1"]["countably_infinite"].get<bool>() ? " (+countably infinite)" : "")
        << "; summand rows: " << r["summands"].size() << "\n";
  }
  if (env.contains("oracle")) {
    long long pass = 0, total = 0;
    for (const auto& v : env["oracle"]) {
      ++total;
      if (v.value("equal", false)) ++pass;
      else
        out << "  check failed: " << v.value("name", "") << " (" << v["lhs"]
            << " vs " << v["rhs"] << ") [" << v.value("context", "") << "]\n";
    }
    if (total) out << "checks: " << pass << "/" << total << " passed\n";
  }
  for (const auto& d : env["discrepancies"])
    out << "discrepancy: " << d.value("name", "") << " (" << d["lhs"] << " vs "
        << d["rhs"] << ")\n";
  for (const auto& c : env["caveats"]) out << "caveat: " << c.get<std::string>() << "\n";
  return out.str();
}

}  // namespace lampk
