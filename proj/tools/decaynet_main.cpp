// decaynet command-line front end. Every command writes one JSON report
// (to --out or stdout) and exits 0 when no violation was found, 1 when one
// was, 2 on usage or I/O errors.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "decaynet/capacity.hpp"
#include "decaynet/generators.hpp"
#include "decaynet/io.hpp"
#include "decaynet/space_analysis.hpp"
#include "decaynet/verify.hpp"

namespace {

using namespace decaynet;
using io::json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

// Tolerance used when --tol is not given; DECAYNET_TOL overrides it.
double default_tolerance() {
  if (const char* env = std::getenv("DECAYNET_TOL")) {
    try {
      std::size_t used = 0;
      const double tol = std::stod(env, &used);
      if (used == std::string(env).size() && tol > 0.0) return tol;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid DECAYNET_TOL=\"" << env << "\"\n";
  }
  return kDefaultZetaTol;
}

struct Outcome {
  json result;
  bool violation = false;
};

struct Config {
  std::string space;
  std::string system;
  std::string out;
  double tol = kDefaultZetaTol;
  std::string zeta = "auto";
  std::string oracle = "auto";
  std::string mode = "signal";
  std::string set;
  double p = 1.0;
  double q = 3.0;
  std::optional<double> tau;
  std::optional<double> eta;
  double r = 0.0;
  std::string C = "1";
  std::size_t exact_limit = kDefaultExactLimit;
  bool quasi_units = false;
  std::string family;
  std::string params = "{}";
  std::optional<std::uint64_t> seed;
  std::string corpus = "builtin";
  std::vector<std::string> files;
};

LinkSet parse_set(const std::string& text) {
  LinkSet s;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw io::FormatError("--set", "expected comma-separated link indices, got \"" + tok + "\"");
    s.push_back(v);
  }
  return s;
}

double parse_real(const std::string& text, const std::string& flag) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw io::FormatError(flag, "expected a real number, got \"" + text + "\"");
  return x;
}

// Quasi-metric for a link system: the metricity exponent, or an override.
QuasiMetric system_quasi(const LinkSystem& sys, const std::string& zeta, double tol, json& echo) {
  if (zeta == "auto") {
    const auto z = compute_zeta(sys.space(), tol);
    echo["zeta_used"] = z.zeta;
    return quasi_distances(sys.space(), z.zeta, 10 * tol);
  }
  const double value = parse_real(zeta, "--zeta");
  echo["zeta_used"] = value;
  return quasi_distances(sys.space(), value, 10 * tol);
}

Outcome cmd_validate(const Config& c) {
  const auto space = io::load_space(c.space);
  const auto val = validate_space(space);
  return {{{"space", io::to_json(val)}, {"n", space.size()}, {"mode", to_string(space.mode())}}, !val.ok()};
}

Outcome cmd_analyze(const Config& c) {
  const auto space = io::load_space(c.space);
  const auto val = validate_space(space);
  json result{{"validation", io::to_json(val)}, {"n", space.size()}, {"mode", to_string(space.mode())}};
  if (!val.ok()) return {result, true};
  result["metricity"] = io::to_json(analyze_metricity(space, c.tol));
  result["symmetric"] = space.is_symmetric();
  return {result, false};
}

Outcome cmd_capacity(const Config& c) {
  const auto sys = io::load_system(c.system);
  json result;
  const auto quasi = system_quasi(sys, c.zeta, c.tol, result);
  std::size_t limit = 0;
  if (c.oracle == "on") limit = sys.size();
  else if (c.oracle == "auto") limit = kDefaultOracleLimit;
  if (c.oracle == "on" && sys.size() > kDefaultOracleLimit)
    std::cerr << "warning: exhaustive oracle over " << sys.size() << " links may take very long\n";
  const auto cap = limit > 0 ? capacity_with_oracle(sys, quasi, limit) : capacity_uniform(sys, quasi);
  result["capacity"] = io::to_json(cap);
  result["selected_size"] = cap.selected.size();
  result["intermediate_size"] = cap.intermediate.size();
  result["selected_feasible"] = is_feasible(sys, cap.selected);
  result["affectance_audit"] = io::affectance_audit(sys, cap);
  return {result, !is_feasible(sys, cap.selected)};
}

Outcome cmd_partition(const Config& c) {
  const auto sys = io::load_system(c.system);
  json result;
  const auto quasi = system_quasi(sys, c.zeta, c.tol, result);
  const LinkSet set = c.set.empty() ? capacity_uniform(sys, quasi).selected : parse_set(c.set);
  for (LinkId v : set)
    if (v >= sys.size()) throw io::FormatError("--set", "link " + std::to_string(v) + " out of range");
  result["input_set"] = set;
  if (c.mode == "signal") {
    const auto part = signal_strengthen(sys, set, c.p, c.q);
    result["partition"] = io::to_json(part);
    return {result, !part.verified || part.classes.size() > part.bound};
  }
  if (c.mode == "separation") {
    const double tau = c.tau.value_or(1.0 / quasi.zeta());
    const double eta = c.eta.value_or(quasi.zeta());
    const auto part = separation_strengthen(sys, quasi, set, tau, eta);
    result["partition"] = io::to_json(part);
    return {result, !part.verified};
  }
  if (c.mode == "onezetasep") {
    const auto check = check_onezetasep(sys, quasi, set);
    result["status"] = to_string(check.status);
    result["witness"] = check.witness ? json::array({check.witness->first, check.witness->second}) : json(nullptr);
    return {result, check.status == OneZetaSepStatus::violation};
  }
  const auto am = amicable_subset(sys, quasi, set);
  result["amicable"] = io::to_json(am);
  return {result, false};
}

Outcome cmd_fading(const Config& c) {
  const auto space = io::load_space(c.space);
  require_valid(space);
  std::optional<double> C;
  if (c.C != "auto") C = parse_real(c.C, "--C");
  const auto est = assouad_estimate(space, C, default_q_grid(), c.exact_limit);
  std::optional<QuasiMetric> quasi;
  if (c.quasi_units) quasi = metric_quasi_distances(space, c.tol);
  const auto fade = fading_parameter(space, c.r, c.exact_limit, quasi ? &*quasi : nullptr);
  json result{{"dimension", io::to_json(est)}, {"fading", io::to_json(fade)}, {"separation_units", c.quasi_units ? "quasi-distance" : "decay"}};
  bool violation = false;
  if (est.assouad < 1.0) {
    const double bound = fading_bound(est.C, est.assouad);
    result["fading_bound"] = bound;
    result["gamma_within_bound"] = fade.gamma <= bound * (1 + 1e-12);
    violation = !(fade.gamma <= bound * (1 + 1e-12));
  } else {
    result["fading_bound"] = nullptr;
    result["note"] = "estimated dimension is not below 1; the fading bound does not apply";
  }
  return {result, violation};
}

Outcome cmd_generate(const Config& c) {
  json params;
  try {
    params = json::parse(c.params);
  } catch (const json::parse_error& e) {
    throw io::FormatError("--params", e.what());
  }
  const auto spec = io::generator_spec_from_json(c.family, params, c.seed);
  const auto generated = generate(spec);
  if (const auto* space = std::get_if<DecaySpace>(&generated)) return {io::to_json(*space), false};
  return {io::to_json(std::get<LinkSystem>(generated)), false};
}

Outcome cmd_verify(const Config& c, double& seconds) {
  VerifyOptions opts;
  opts.seed = c.seed.value_or(1);
  if (c.corpus == "files") {
    if (c.files.empty()) throw io::FormatError("--files", "the files corpus needs at least one file");
    for (const auto& f : c.files) opts.files.emplace_back(f);
  }
  const auto report = run_verify(opts);
  seconds = report.seconds;
  for (const auto& v : report.verdicts)
    if (!v.passed)
      std::cerr << "violation: " << v.suite << "/" << v.invariant << " on " << v.item << ": " << v.witness << "\n";
  return {to_json(report), !report.all_passed()};
}

json config_echo(const std::string& command, const Config& c) {
  json e{{"command", command}, {"tol", c.tol}};
  if (!c.space.empty()) e["space"] = c.space;
  if (!c.system.empty()) e["system"] = c.system;
  if (command == "capacity" || command == "partition") e["zeta"] = c.zeta;
  if (command == "capacity") e["oracle"] = c.oracle;
  if (command == "partition") {
    e["mode"] = c.mode;
    e["set"] = c.set;
    e["p"] = c.p;
    e["q"] = c.q;
    e["tau"] = c.tau ? json(*c.tau) : json(nullptr);
    e["eta"] = c.eta ? json(*c.eta) : json(nullptr);
  }
  if (command == "fading") {
    e["r"] = c.r;
    e["C"] = c.C;
    e["exact_limit"] = c.exact_limit;
    e["quasi_units"] = c.quasi_units;
  }
  if (command == "generate") {
    e["family"] = c.family;
    e["params"] = json::parse(c.params, nullptr, false);
  }
  if (command == "generate" || command == "verify") e["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  if (command == "verify") {
    e["corpus"] = c.corpus;
    e["files"] = c.files;
  }
  if (!c.out.empty()) e["out"] = c.out;
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decay-space SINR analysis: metricity, capacity, partitions, fading and dimension diagnostics."};
  app.set_version_flag("--version", DECAYNET_VERSION);
  app.require_subcommand(1);

  Config c;
  c.tol = default_tolerance();
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", c.tol, "Bisection tolerance for the metricity exponent (env DECAYNET_TOL)")
        ->check(CLI::PositiveNumber);
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", c.out, "Write the JSON report here instead of stdout"); };

  auto* validate = app.add_subcommand("validate", "Check the decay-space axioms (non-negativity, indiscernibles, diagonal).");
  validate->add_option("--space", c.space, "Decay space file (.json or .csv)")->required();
  add_out(validate);

  auto* analyze = app.add_subcommand(
      "analyze", "Metricity zeta (smallest exponent making f^(1/zeta) a metric), phi and the ratio bound zeta0.");
  analyze->add_option("--space", c.space, "Decay space file (.json or .csv)")->required();
  add_tol(analyze);
  add_out(analyze);

  auto* capacity = app.add_subcommand(
      "capacity", "Uniform-power capacity approximation: greedy (zeta/2)-separated low-affectance set, optional exact optimum.");
  capacity->add_option("--system", c.system, "Link system file (.json)")->required();
  capacity->add_option("--zeta", c.zeta, "Exponent for quasi-distances: auto or a real >= metricity")->default_str("auto");
  capacity->add_option("--oracle", c.oracle, "Exhaustive optimum: on, off, or auto (at most 20 links)")
      ->check(CLI::IsMember({"on", "off", "auto"}))
      ->default_str("auto");
  add_tol(capacity);
  add_out(capacity);

  auto* partition = app.add_subcommand(
      "partition", "Split a link set: signal strengthening (p- to q-feasible), separation strengthening (tau to eta), the "
                   "1/zeta-separation check of e^2/beta-feasible sets, or the amicable subset.");
  partition->add_option("--system", c.system, "Link system file (.json)")->required();
  partition->add_option("--mode", c.mode, "signal, separation, onezetasep or amicable")
      ->check(CLI::IsMember({"signal", "separation", "onezetasep", "amicable"}))
      ->default_str("signal");
  partition->add_option("--set", c.set, "Comma-separated link indices (default: the capacity selection)");
  partition->add_option("--p", c.p, "Input feasibility level")->check(CLI::PositiveNumber)->default_str("1");
  partition->add_option("--q", c.q, "Target feasibility level")->check(CLI::PositiveNumber)->default_str("3");
  partition->add_option("--tau", c.tau, "Input separation (default 1/zeta)")->check(CLI::PositiveNumber);
  partition->add_option("--eta", c.eta, "Target separation (default zeta)")->check(CLI::PositiveNumber);
  partition->add_option("--zeta", c.zeta, "Exponent for quasi-distances: auto or a real")->default_str("auto");
  add_tol(partition);
  add_out(partition);

  auto* fading = app.add_subcommand(
      "fading", "Fading parameter gamma(r), Assouad dimension estimate, and the annulus bound C 2^(A+1)(zeta(2-A)-1).");
  fading->add_option("--space", c.space, "Decay space file (.json or .csv)")->required();
  fading->add_option("--r", c.r, "Separation radius r")->required()->check(CLI::PositiveNumber);
  fading->add_option("--C", c.C, "Doubling constant C, or auto to fit it")->default_str("1");
  fading->add_option("--exact-limit", c.exact_limit, "Largest subproblem solved exactly")->default_str("24");
  fading->add_flag("--quasi-units", c.quasi_units, "Measure r-separation in quasi-distance instead of decay");
  add_tol(fading);
  add_out(fading);

  auto* gen = app.add_subcommand(
      "generate", "Build an instance: euclidean, star, welzl, equidecay-graph, twoline or threepoint.");
  gen->add_option("--family", c.family, "Instance family")
      ->required()
      ->check(CLI::IsMember({"euclidean", "star", "welzl", "equidecay-graph", "twoline", "threepoint"}));
  gen->add_option("--params", c.params, "Family parameters as JSON, or @file")->default_str("{}");
  gen->add_option("--seed", c.seed, "Seed for random point placement");
  add_out(gen);

  auto* verify = app.add_subcommand("verify", "Run every invariant suite over a corpus and list violations.");
  verify->add_option("--corpus", c.corpus, "builtin or files")->check(CLI::IsMember({"builtin", "files"}))->default_str("builtin");
  verify->add_option("--files", c.files, "Space or system files for the files corpus");
  verify->add_option("--seed", c.seed, "Seed for the built-in corpus (default 1)");
  add_out(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    if (command == "generate" && !c.params.empty() && c.params.front() == '@')
      c.params = io::read_json_file(c.params.substr(1)).dump();
    Outcome outcome;
    double verify_seconds = -1.0;
    if (command == "validate") outcome = cmd_validate(c);
    else if (command == "analyze") outcome = cmd_analyze(c);
    else if (command == "capacity") outcome = cmd_capacity(c);
    else if (command == "partition") outcome = cmd_partition(c);
    else if (command == "fading") outcome = cmd_fading(c);
    else if (command == "generate") outcome = cmd_generate(c);
    else outcome = cmd_verify(c, verify_seconds);

    json doc;
    if (command == "generate") {
      // The instance itself is the output so it can be fed back in.
      doc = std::move(outcome.result);
    } else {
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      doc = {{"command", command},
             {"config", config_echo(command, c)},
             {"version", DECAYNET_VERSION},
             {"result", std::move(outcome.result)},
             {"violation", outcome.violation},
             {"timing", {{"seconds", verify_seconds >= 0 ? verify_seconds : seconds}}}};
    }
    if (c.out.empty())
      std::cout << io::dump(doc);
    else
      io::write_json_file(c.out, doc);
    return outcome.violation ? kViolation : kOk;
  } catch (const io::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const TriangleViolationError& e) {
    std::cerr << "violation: " << e.what() << " (triple " << e.witness().from << "," << e.witness().to << ","
              << e.witness().via << ")\n";
    return kViolation;
  } catch (const ValidationError& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kViolation;
  } catch (const DrownedLinkError& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kViolation;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
