#include "polyverify/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "polyverify/polygon.hpp"

namespace polyverify::cli {

namespace {

constexpr u128 kMaxSafeInteger = static_cast<u128>(1) << 53;

// Input problems that map to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json pairs_json(const std::vector<sieve::OrderPair>& pairs) {
  Json arr = Json::array();
  for (const auto& [s, t] : pairs) arr.push_back(Json::array({s, t}));
  return arr;
}

std::vector<sieve::OrderPair> pairs_from_json(const Json& j) {
  std::vector<sieve::OrderPair> out;
  for (const auto& p : j) out.emplace_back(p.at(0).get<std::uint64_t>(), p.at(1).get<std::uint64_t>());
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::uint64_t env_budget(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  u128 v;
  try {
    v = parse_u128(raw);
  } catch (const std::exception&) {
    throw UsageError(std::string(name) + " must be a positive integer");
  }
  if (v == 0 || v > UINT64_MAX) throw UsageError(std::string(name) + " must be a positive integer");
  return static_cast<std::uint64_t>(v);
}

struct Output {
  std::string format = "json";
  std::string path;
};

void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.path);
  if (!file) throw UsageError("cannot write " + o.path);
  file << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

struct SieveArgs {
  std::string kind;
  std::string n;
  bool builtin = false;
  std::string table;
  Output output;
};

int cmd_sieve(const SieveArgs& a, std::ostream& out) {
  const int modes = (!a.n.empty() || !a.kind.empty()) + a.builtin + !a.table.empty();
  if (modes != 1) throw UsageError("sieve needs exactly one of --kind/--n, --builtin-table, --table");
  if (!a.kind.empty() || !a.n.empty()) {
    if (a.kind.empty() || a.n.empty()) throw UsageError("sieve needs both --kind and --n");
    sieve::PolygonKind kind;
    u128 n;
    try {
      kind = sieve::parse_kind(a.kind);
      n = parse_u128(a.n);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    if (n == 0) throw UsageError("--n must be at least 1");
    const auto solutions = sieve::solve_order_equation(kind, n);
    if (a.output.format == "text") {
      std::string line;
      for (const auto& [s, t] : solutions)
        line += (line.empty() ? "" : " ") + ("(" + std::to_string(s) + "," + std::to_string(t) + ")");
      emit(a.output, (line.empty() ? "-" : line) + "\n", out);
    } else {
      Json j;
      j["kind"] = sieve::to_string(kind);
      j["n"] = exact(n);
      j["solutions"] = pairs_json(solutions);
      emit(a.output, dump(j), out);
    }
    return kExitOk;
  }

  std::vector<sieve::CandidateAction> table;
  if (a.builtin) {
    table = sieve::default_table();
  } else {
    try {
      table = parse_table(read_json_file(a.table));
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(a.table + ": " + e.what());
    }
  }
  std::vector<sieve::ExclusionRow> rows;
  try {
    rows = sieve::exclusion_report(table);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.output.format == "text") {
    emit(a.output, sieve::format_report_text(rows), out);
  } else {
    Json arr = Json::array();
    for (const auto& row : rows) arr.push_back(to_json(row));
    emit(a.output, dump(arr), out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct GeometryArgs {
  std::string file;
  std::string fixture;
  bool allow_repeated = false;
  std::uint64_t vertex_budget = polygon::kDefaultVertexBudget;
  Output output;
};

polygon::IncidenceGeometry load_geometry(const GeometryArgs& a, const claims::Budgets& budgets) {
  if (a.file.empty() == a.fixture.empty()) throw UsageError("geometry needs exactly one of FILE or --fixture");
  if (!a.fixture.empty()) {
    const auto colon = a.fixture.find(':');
    if (colon == std::string::npos) throw UsageError("fixture must look like pg2:q or w:q");
    const std::string name = a.fixture.substr(0, colon);
    gf::FieldPtr field;
    try {
      const u128 q = parse_u128(a.fixture.substr(colon + 1));
      if (q > gf::kMaxFieldOrder) throw std::invalid_argument("field order too large");
      field = gf::Field::of_order(static_cast<unsigned>(q));
    } catch (const std::exception& e) {
      throw UsageError("fixture " + a.fixture + ": " + e.what());
    }
    if (name == "pg2") return polygon::build_pg2(field, budgets.enumeration);
    if (name == "w") return polygon::build_symplectic_quadrangle(field, budgets.enumeration);
    throw UsageError("unknown fixture '" + name + "' (expected pg2 or w)");
  }
  std::ifstream in(a.file);
  if (!in) throw UsageError("cannot open " + a.file);
  try {
    return polygon::read_incidence(in, a.allow_repeated);
  } catch (const std::exception& e) {
    throw UsageError(a.file + ": " + e.what());
  }
}

int cmd_geometry(const GeometryArgs& a, const claims::Budgets& budgets, std::ostream& out) {
  const polygon::IncidenceGeometry geometry = load_geometry(a, budgets);
  const polygon::Classification c = polygon::classify_generalized_ngon(geometry, a.vertex_budget);
  if (a.output.format == "text") {
    std::ostringstream s;
    if (c.accepted())
      s << "n=" << c.params->n << " (s,t)=(" << c.params->s << "," << c.params->t << ")\n";
    else
      s << "rejected: " << polygon::to_string(*c.rejection) << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    emit(a.output, s.str(), out);
    return kExitOk;
  }
  Json j;
  j["points"] = geometry.point_count();
  j["lines"] = geometry.line_count();
  j["accepted"] = c.accepted();
  if (c.accepted()) {
    j["n"] = c.params->n;
    j["s"] = c.params->s;
    j["t"] = c.params->t;
  } else {
    j["rejection"] = polygon::to_string(*c.rejection);
    j["detail"] = c.detail;
  }
  emit(a.output, dump(j), out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  bool all_defaults = false;
  std::string claim;
  std::string spec;
  std::map<std::string, std::uint64_t> params;
  Output output;
};

std::string report_line(const claims::WitnessReport& r) {
  std::string line = std::string(r.pass ? "PASS " : "FAIL ") + r.claim;
  for (const auto& [name, value] : r.params) line += " " + name + "=" + std::to_string(value);
  if (r.error) line += " error: " + *r.error;
  for (const auto& c : r.checks)
    if (!c.ok()) line += " [" + c.name + ": got " + (c.observed ? "true" : "false") + "]";
  if (r.order) line += " order=" + to_string(*r.order);
  if (!r.orbit_sizes.empty()) {
    line += " sizes=";
    for (std::size_t i = 0; i < r.orbit_sizes.size(); ++i) line += (i ? "," : "") + std::to_string(r.orbit_sizes[i]);
  }
  for (const auto& note : r.notes) line += " note: " + note;
  return line + "\n";
}

int cmd_verify(const VerifyArgs& a, const claims::Budgets& budgets, std::ostream& out) {
  const int modes = a.all_defaults + !a.claim.empty() + !a.spec.empty();
  if (modes != 1) throw UsageError("verify needs exactly one of --all-defaults, --claim, --spec");
  std::vector<claims::ClaimRequest> requests;
  if (a.all_defaults) {
    requests = claims::default_suite();
  } else if (!a.claim.empty()) {
    requests.push_back({a.claim, a.params});
  } else {
    try {
      requests = parse_claims_spec(read_json_file(a.spec));
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(a.spec + ": " + e.what());
    }
  }
  const auto reports = claims::run_batch(requests, budgets);
  bool all_pass = true;
  for (const auto& r : reports) all_pass = all_pass && r.pass;
  if (a.output.format == "text") {
    std::string text;
    for (const auto& r : reports) text += report_line(r);
    emit(a.output, text, out);
  } else {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    emit(a.output, dump(arr), out);
  }
  return all_pass ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------

struct OrderArgs {
  std::vector<std::string> words;
  bool bsgs_check = false;
  Output output{"text", ""};
};

// Order of the linear group behind `spec` by stabilizer chain, if supported.
std::optional<u128> bsgs_order(const mgroup::GroupSpec& spec, const claims::Budgets& budgets, std::string& note) {
  const std::string& f = spec.family;
  if ((f != "GL" && f != "SL" && f != "PSL" && f != "PGL") || spec.params.size() != 2) {
    note = "no stabilizer-chain check for " + spec.to_string();
    return std::nullopt;
  }
  const std::uint64_t n = spec.params[0], q = spec.params[1];
  const u128 domain = checked_pow(q, static_cast<unsigned>(n));
  if (domain > budgets.orbit) {
    note = "q^n = " + to_string(domain) + " exceeds the orbit budget";
    return std::nullopt;
  }
  const gf::FieldPtr field = gf::Field::of_order(static_cast<unsigned>(q));
  const bool general = f == "GL" || f == "PGL";
  const mgroup::MatrixGroup group(n, field, general ? mgroup::gl_generators(n, field) : mgroup::sl_generators(n, field));
  u128 order = mgroup::group_order_bsgs(group, budgets.orbit);
  // Centres: scalars of GL, and the scalars of determinant 1 in SL.
  if (f == "PGL") order /= q - 1;
  if (f == "PSL") order /= std::gcd(n, q - 1);
  return order;
}

int cmd_order(const OrderArgs& a, const claims::Budgets& budgets, std::ostream& out) {
  if (a.words.empty()) throw UsageError("order needs a group family");
  mgroup::GroupSpec spec;
  u128 order;
  try {
    if (a.words.size() == 1) {
      spec = mgroup::GroupSpec::parse(a.words[0]);
    } else {
      spec = mgroup::GroupSpec::parse(a.words[0]);
      if (!spec.params.empty()) throw std::invalid_argument("give parameters either inline or as words");
      for (std::size_t i = 1; i < a.words.size(); ++i) {
        const u128 v = parse_u128(a.words[i]);
        if (v > UINT64_MAX) throw std::invalid_argument("parameter too large");
        spec.params.push_back(static_cast<std::uint64_t>(v));
      }
    }
    order = mgroup::order_formula(spec);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }

  std::optional<u128> checked;
  std::string note;
  if (a.bsgs_check) checked = bsgs_order(spec, budgets, note);
  const bool agree = !checked || *checked == order;

  if (a.output.format == "text") {
    std::string text = to_string(order) + "\n";
    if (checked) text += "bsgs " + to_string(*checked) + (agree ? " (agrees)" : " (MISMATCH)") + "\n";
    if (!note.empty()) text += "note: " + note + "\n";
    emit(a.output, text, out);
  } else {
    Json j;
    j["group"] = spec.to_string();
    j["order"] = exact(order);
    if (checked) j["bsgs_order"] = exact(*checked);
    if (!note.empty()) j["note"] = note;
    emit(a.output, dump(j), out);
  }
  return agree ? kExitOk : kExitFailure;
}

void add_format(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  cmd->add_option("-o,--output", o.path, "Write output to this file");
}

}  // namespace

Json exact(u128 v) {
  if (v <= kMaxSafeInteger) return Json(static_cast<std::uint64_t>(v));
  return Json(to_string(v));
}

u128 read_exact(const Json& j) {
  if (j.is_string()) return parse_u128(j.get<std::string>());
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<u128>(j.get<std::int64_t>());
  throw std::invalid_argument("expected a non-negative integer, got " + j.dump());
}

Json to_json(const sieve::ExclusionRow& row) {
  Json j;
  j["group"] = row.action.group.to_string();
  j["stabilizer"] = row.action.stabilizer.to_string();
  j["group_order"] = exact(row.group_order);
  j["stabilizer_order"] = exact(row.stabilizer_order);
  j["index"] = exact(row.index);
  j["large"] = row.large;
  j["hexagon_solutions"] = pairs_json(row.hexagon_solutions);
  j["octagon_solutions"] = pairs_json(row.octagon_solutions);
  j["excluded"] = row.excluded;
  return j;
}

sieve::ExclusionRow row_from_json(const Json& j) {
  sieve::ExclusionRow row;
  row.action.group = mgroup::GroupSpec::parse(j.at("group").get<std::string>());
  row.action.stabilizer = mgroup::GroupSpec::parse(j.at("stabilizer").get<std::string>());
  row.group_order = read_exact(j.at("group_order"));
  row.stabilizer_order = read_exact(j.at("stabilizer_order"));
  row.index = read_exact(j.at("index"));
  row.large = j.at("large").get<bool>();
  row.hexagon_solutions = pairs_from_json(j.at("hexagon_solutions"));
  row.octagon_solutions = pairs_from_json(j.at("octagon_solutions"));
  row.excluded = j.at("excluded").get<bool>();
  return row;
}

Json to_json(const claims::WitnessReport& r) {
  Json j;
  j["claim"] = r.claim;
  Json params = Json::object();
  for (const auto& [name, value] : r.params) params[name] = value;
  j["params"] = params;
  if (!r.subspaces.empty()) {
    Json s = Json::object();
    for (const auto& [name, text] : r.subspaces) s[name] = text;
    j["subspaces"] = s;
  }
  if (!r.permutation.empty()) j["permutation"] = r.permutation;
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name}, {"observed", c.observed}, {"expected", c.expected}});
  j["checks"] = checks;
  if (!r.values.empty()) {
    Json v = Json::object();
    for (const auto& [name, value] : r.values) v[name] = value;
    j["values"] = v;
  }
  if (!r.orbit_sizes.empty()) j["orbit_sizes"] = r.orbit_sizes;
  if (r.order) j["order"] = exact(*r.order);
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (r.error) j["error"] = *r.error;
  j["pass"] = r.pass;
  return j;
}

claims::WitnessReport report_from_json(const Json& j) {
  claims::WitnessReport r;
  r.claim = j.at("claim").get<std::string>();
  for (const auto& [name, value] : j.at("params").items()) r.params.emplace_back(name, value.get<std::uint64_t>());
  if (j.contains("subspaces"))
    for (const auto& [name, text] : j["subspaces"].items()) r.subspaces.emplace_back(name, text.get<std::string>());
  if (j.contains("permutation")) r.permutation = j["permutation"].get<std::string>();
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("name").get<std::string>(), c.at("observed").get<bool>(), c.at("expected").get<bool>()});
  if (j.contains("values"))
    for (const auto& [name, value] : j["values"].items()) r.values.emplace_back(name, value.get<std::string>());
  if (j.contains("orbit_sizes")) r.orbit_sizes = j["orbit_sizes"].get<std::vector<std::size_t>>();
  if (j.contains("order")) r.order = read_exact(j["order"]);
  if (j.contains("notes")) r.notes = j["notes"].get<std::vector<std::string>>();
  if (j.contains("error")) r.error = j["error"].get<std::string>();
  r.pass = j.at("pass").get<bool>();
  return r;
}

std::vector<sieve::CandidateAction> parse_table(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("table must be a JSON array");
  std::vector<sieve::CandidateAction> table;
  for (const auto& row : j) {
    table.push_back({mgroup::GroupSpec::parse(row.at("group").get<std::string>()),
                     mgroup::GroupSpec::parse(row.at("stabilizer").get<std::string>())});
  }
  return table;
}

std::vector<claims::ClaimRequest> parse_claims_spec(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("claims spec must be a JSON array");
  std::vector<claims::ClaimRequest> out;
  for (const auto& item : j) {
    claims::ClaimRequest req;
    req.claim = item.at("claim").get<std::string>();
    if (item.contains("params"))
      for (const auto& [name, value] : item["params"].items()) req.params[name] = value.get<std::uint64_t>();
    out.push_back(std::move(req));
  }
  return out;
}

claims::Budgets budgets_from_env() {
  claims::Budgets b;
  b.enumeration = env_budget("POLYVERIFY_ENUM_BUDGET", b.enumeration);
  b.orbit = env_budget("POLYVERIFY_ORBIT_BUDGET", b.orbit);
  b.closure_cap = env_budget("POLYVERIFY_CLOSURE_CAP", b.closure_cap);
  return b;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for point-primitive generalised polygons"};
  app.name("polyverify");
  app.require_subcommand(1);

  std::optional<std::uint64_t> enum_budget, orbit_budget, closure_cap;
  app.add_option("--enum-budget", enum_budget, "Subspace enumeration budget")->check(CLI::PositiveNumber);
  app.add_option("--orbit-budget", orbit_budget, "Orbit size budget for stabilizer chains")->check(CLI::PositiveNumber);
  app.add_option("--closure-cap", closure_cap, "Element cap for brute-force closure")->check(CLI::PositiveNumber);

  SieveArgs sieve_args;
  auto* sieve_cmd = app.add_subcommand("sieve", "Solve |P| = f(s,t) or evaluate an exclusion table");
  sieve_cmd->add_option("--kind", sieve_args.kind, "hexagon or octagon");
  sieve_cmd->add_option("--n", sieve_args.n, "Number of points");
  sieve_cmd->add_flag("--builtin-table", sieve_args.builtin, "Evaluate the built-in table");
  sieve_cmd->add_option("--table", sieve_args.table, "JSON table of {group, stabilizer}");
  add_format(sieve_cmd, sieve_args.output);

  GeometryArgs geometry_args;
  auto* geometry_cmd = app.add_subcommand("geometry", "Classify an incidence structure");
  geometry_cmd->add_option("file", geometry_args.file, "Incidence file");
  geometry_cmd->add_option("--fixture", geometry_args.fixture, "pg2:q or w:q");
  geometry_cmd->add_flag("--allow-repeated-lines", geometry_args.allow_repeated);
  geometry_cmd->add_option("--vertex-budget", geometry_args.vertex_budget)->check(CLI::PositiveNumber);
  add_format(geometry_cmd, geometry_args.output);

  VerifyArgs verify_args;
  std::map<std::string, std::optional<std::uint64_t>> verify_params{
      {"n", {}}, {"k", {}}, {"k1", {}}, {"q", {}}, {"i", {}}, {"trials", {}}, {"seed", {}}};
  auto* verify_cmd = app.add_subcommand("verify", "Run claim verifications");
  verify_cmd->add_flag("--all-defaults", verify_args.all_defaults, "Run the default suite");
  verify_cmd->add_option("--claim", verify_args.claim, "Claim id");
  verify_cmd->add_option("--spec", verify_args.spec, "JSON list of {claim, params}");
  for (auto& [name, slot] : verify_params) verify_cmd->add_option("--" + name, slot);
  add_format(verify_cmd, verify_args.output);

  OrderArgs order_args;
  auto* order_cmd = app.add_subcommand("order", "Group order by formula");
  order_cmd->add_option("family", order_args.words, "Family and parameters, e.g. SL 4 2")->required();
  order_cmd->add_flag("--bsgs-check", order_args.bsgs_check, "Cross-check with a stabilizer chain");
  add_format(order_cmd, order_args.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    claims::Budgets budgets = budgets_from_env();
    if (enum_budget) budgets.enumeration = *enum_budget;
    if (orbit_budget) budgets.orbit = *orbit_budget;
    if (closure_cap) budgets.closure_cap = *closure_cap;

    if (sieve_cmd->parsed()) return cmd_sieve(sieve_args, out);
    if (geometry_cmd->parsed()) return cmd_geometry(geometry_args, budgets, out);
    if (verify_cmd->parsed()) {
      for (const auto& [name, slot] : verify_params)
        if (slot) verify_args.params[name] = *slot;
      return cmd_verify(verify_args, budgets, out);
    }
    if (order_cmd->parsed()) return cmd_order(order_args, budgets, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace polyverify::cli
