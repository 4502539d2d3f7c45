#include "p3p/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "p3p/experiments.hpp"
#include "p3p/oracle.hpp"
#include "p3p/scene.hpp"
#include "p3p/serialize.hpp"
#include "p3p/solver.hpp"

namespace p3p {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::DegenerateTriangle:
    case ErrorKind::DomainError:
    case ErrorKind::PlanarCenter:
    case ErrorKind::VertexCoincidence:
    case ErrorKind::OnChordLine: return kExitValidation;
    case ErrorKind::OnToroidPair: return kExitOnToroid;
    case ErrorKind::PathDegenerate: return kExitDegeneratePath;
    default: return kExitUnexpected;
  }
}

namespace {

struct Globals {
  std::string scene;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
};

struct Output {
  std::string text;
  int code = kExitOk;
};

Scene need_scene(const Globals& g) {
  if (g.scene.empty()) throw Error(ErrorKind::InvalidInput, "--scene is required");
  return load_scene(g.scene);
}

Scene need_view(const Globals& g) {
  Scene s = need_scene(g);
  if (!s.has_view()) throw Error(ErrorKind::InvalidInput, "scene: missing field 'view'");
  return s;
}

// Quartic without real roots: an empty, but well-formed, report.
SolveReport solve_or_empty(const ControlTriangle& tri, const ViewAngles& ang, double tol) {
  SolveOptions opts;
  opts.residualTol = tol;
  try {
    return solve_p3p(tri, ang, opts);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoRealRoots) throw;
  }
  SolveReport rep;
  rep.quartic = grunert_coefficients(tri, ang);
  rep.nonRealizable = !ang.realizable();
  rep.rootSet.complexPairCount = 2;
  return rep;
}

std::string csv_join(std::initializer_list<std::string> cells) {
  std::string s;
  for (const auto& c : cells) {
    if (!s.empty()) s += ',';
    s += c;
  }
  return s + '\n';
}

Output cmd_solve(const Globals& g) {
  const Scene s = need_view(g);
  SolveReport rep = solve_or_empty(s.tri, s.angles, g.tol);
  if (s.viewMode == ViewMode::Center) rep.region = classify_region(s.center, s.tri);
  if (g.format == "csv") {
    std::string text = "s1,s2,s3,u,v,class,residual,root_multiplicity\n";
    for (const auto& t : rep.triplets) {
      text += csv_join({format_double(t.s1), format_double(t.s2), format_double(t.s3), format_double(t.u),
                        format_double(t.v), std::string(to_string(t.tag.cls)), format_double(t.residual),
                        std::to_string(t.rootMultiplicity)});
    }
    return {text};
  }
  return {dump_json(to_json(rep, s.tri, s.frame))};
}

Output cmd_region(const Globals& g) {
  const Scene s = need_view(g);
  if (s.viewMode != ViewMode::Center) {
    throw Error(ErrorKind::InvalidInput, "region needs view mode \"center\"; angles give no position");
  }
  const RegionReport r = classify_region(s.center, s.tri);
  if (g.format == "csv") {
    std::string text = "toroid,status,excess_rad\n";
    for (const auto& t : r.perToroid) {
      text += csv_join({std::string(short_name(t.label)), std::string(to_string(t.status)), format_double(t.excess)});
    }
    return {text};
  }
  Json j = {{"center", to_json(s.frame.to_world(s.center))}, {"angles", to_json(s.angles)}};
  const Json body = to_json(r);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return {dump_json(j)};
}

Output cmd_sweep(const Globals& g, int steps, double delta, const std::string& eventsPath) {
  const Scene s = need_scene(g);
  if (!s.path) throw Error(ErrorKind::InvalidInput, "scene: missing field 'path'");
  SweepConfig cfg;
  cfg.tri = s.tri;
  cfg.start = s.path->first;
  cfg.end = s.path->second;
  cfg.steps = steps;
  cfg.delta = delta;
  cfg.seed = g.seed;
  const SweepResult res = sweep_path(cfg);
  const bool violated = std::any_of(res.events.begin(), res.events.end(),
                                    [](const CrossingEvent& e) { return e.verdict == Verdict::Violation; });
  const int code = violated ? kExitViolation : kExitOk;
  if (g.format == "csv") {
    std::string events = sweep_events_csv(res);
    std::string path = eventsPath;
    if (path.empty() && !g.out.empty()) path = g.out + ".events.csv";
    if (path.empty()) return {sweep_samples_csv(res) + "\n" + events, code};
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
    f << events;
    return {sweep_samples_csv(res), code};
  }
  return {dump_json(to_json(res, s.frame)), code};
}

std::optional<TriangleKind> triangle_kind(const std::string& name) {
  if (name == "equilateral") return TriangleKind::Equilateral;
  if (name == "345" || name == "pythagorean") return TriangleKind::Pythagorean345;
  if (name == "acute") return TriangleKind::RandomAcute;
  if (name == "obtuse") return TriangleKind::RandomObtuse;
  if (name == "any") return TriangleKind::RandomAny;
  return std::nullopt;
}

Output cmd_verify(const Globals& g, const std::string& theorem, int trials, const std::string& triangle,
                  std::ostream& err) {
  if (trials < 1) throw Error(ErrorKind::InvalidInput, "--trials must be at least 1");
  ControlTriangle tri;
  if (!triangle.empty() || g.scene.empty()) {
    const auto kind = triangle_kind(triangle.empty() ? "equilateral" : triangle);
    if (!kind) throw Error(ErrorKind::InvalidInput, "unknown --triangle '" + triangle + "'");
    tri = make_triangle(*kind, g.seed);
  } else {
    tri = need_scene(g).tri;
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<TheoremReport> reports;
  if (theorem == "1" || theorem == "2") {
    OutsideReport o = verify_outside_theorems(tri, trials, g.seed);
    if (theorem == "1") {
      reports = {o.theorem1};
    } else {
      reports = {o.theorem2, o.lemma2};
    }
  } else if (theorem == "3") {
    reports = {verify_crossing_theorem(tri, CrossingTheorem::Theorem3, trials, g.seed)};
  } else if (theorem == "4") {
    reports = {verify_crossing_theorem(tri, CrossingTheorem::Theorem4, trials, g.seed)};
  } else if (theorem == "5") {
    reports = {verify_crossing_theorem(tri, CrossingTheorem::Theorem5, trials, g.seed)};
  } else if (theorem == "lemmas") {
    reports = {verify_lemma_suite(tri, trials, g.seed)};
  } else if (theorem == "signlaw") {
    reports = {verify_sign_law(tri, trials, g.seed)};
  } else if (theorem == "roundtrip") {
    reports = {verify_ground_truth(trials, g.seed)};
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown theorem id '" + theorem + "'");
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool violated = false;
  for (const auto& r : reports) {
    violated |= !r.passed();
    err << "theorem " << r.theoremId << ": " << r.trials << " trials, " << r.violations << " violations, "
        << r.exceptional << " exceptional (" << wall << " s)\n";
  }
  const int code = violated ? kExitViolation : kExitOk;
  if (g.format == "csv") {
    std::string text = "theorem,seed,trials,consistent,violations,exceptional\n";
    for (const auto& r : reports) {
      text += csv_join({r.theoremId, std::to_string(r.seed), std::to_string(r.trials), std::to_string(r.consistent),
                        std::to_string(r.violations), std::to_string(r.exceptional)});
    }
    return {text, code};
  }
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return {dump_json({{"triangle", to_json(tri)}, {"reports", arr}}), code};
}

Output cmd_oracle(const Globals& g, int grid) {
  if (grid < kMinOracleGrid) throw Error(ErrorKind::InvalidInput, "--grid must be at least 64");
  const Scene s = need_view(g);
  const SolveReport rep = solve_or_empty(s.tri, s.angles, g.tol);
  const OracleResult oracle = brute_force_solve(s.tri, s.angles, grid, grid);
  const MatchReport m = compare(rep, s.tri, oracle, 1e-4 * s.tri.diameter());
  const Json j = to_json(m, oracle, rep.solution_count(), s.frame);
  if (g.format == "csv") {
    std::string text = "grid,solver_count,oracle_count,match,max_distance,grid_too_coarse\n";
    text += csv_join({std::to_string(grid), std::to_string(j["solver_count"].get<int>()),
                      std::to_string(j["oracle_count"].get<int>()), m.perfect ? "true" : "false",
                      format_double(m.maxDistance), oracle.gridTooCoarse ? "true" : "false"});
    return {text};
  }
  return {dump_json(j)};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perspective-three-point solution counting on inscribed-angle toroids", "p3p"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--scene", g.scene, "Scene JSON file");
  app.add_option("--tol", g.tol, "Residual tolerance for accepted triplets")->capture_default_str();
  app.add_option("--seed", g.seed, "Campaign seed")->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "Write the report to FILE instead of stdout");

  auto* solve = app.add_subcommand("solve", "Solve the P3P instance of a scene");
  auto* region = app.add_subcommand("region", "Classify the optical center against the six toroids");

  auto* sweep = app.add_subcommand("sweep", "Walk the scene path and report toroid crossings");
  int steps = 1000;
  double delta = 1e-4;
  std::string eventsPath;
  sweep->add_option("--steps", steps, "Samples along the path (at least 100)")->capture_default_str();
  sweep->add_option("--delta", delta, "Offset of the before/after solves, fraction of the path")
      ->capture_default_str();
  sweep->add_option("--events", eventsPath, "CSV file for crossing events (csv format)");

  auto* verify = app.add_subcommand("verify", "Run a Monte Carlo campaign for one theorem");
  std::string theorem;
  int trials = 1000;
  std::string triangle;
  verify->add_option("--theorem", theorem, "1, 2, 3, 4, 5, lemmas, signlaw or roundtrip")->required();
  verify->add_option("--trials", trials, "Samples (per target toroid for 3 and 5)")->capture_default_str();
  verify->add_option("--triangle", triangle, "equilateral, 345, acute, obtuse or any");

  auto* oracle = app.add_subcommand("oracle", "Cross-check the solver against the brute-force oracle");
  int grid = 512;
  oracle->add_option("--grid", grid, "Grid resolution per toroid parameter (at least 64)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  Output result;
  try {
    if (*solve) {
      result = cmd_solve(g);
    } else if (*region) {
      result = cmd_region(g);
    } else if (*sweep) {
      result = cmd_sweep(g, steps, delta, eventsPath);
    } else if (*verify) {
      result = cmd_verify(g, theorem, trials, triangle, err);
    } else {
      result = cmd_oracle(g, grid);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnexpected;
  }

  if (g.out.empty()) {
    out << result.text;
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << g.out << "'\n";
      return kExitValidation;
    }
    f << result.text;
  }
  return result.code;
}

}  // namespace p3p
