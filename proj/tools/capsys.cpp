// capsys: capacities, systoles, and the systolic S^1-index of convex bodies.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include "capsys/capacities.hpp"
#include "capsys/geometry.hpp"
#include "capsys/io.hpp"
#include "capsys/john.hpp"
#include "capsys/reference_loops.hpp"
#include "capsys/solver.hpp"
#include "capsys/version.hpp"
#include "capsys/zoll.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;
using namespace capsys;

namespace {

struct Options {
  std::string body_path;
  std::vector<double> ellipsoid_axes;
  std::vector<double> polydisc;  // a, n
  std::string loop_path;         // check
  double action_override = 0.0;
  bool have_action = false;
  bool numeric = false;
  std::string inject;  // zoll: name of an analytic family set
  std::string demo_name;

  SolveConfig cfg;
  int threads = 0;
  double john_tol = 1e-6;
  std::string out_dir = "capsys_out";
  std::string config_path;

  std::string command;
  std::vector<std::string> artifacts;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
};

void add_common(CLI::App* cmd, Options& opt, bool with_solver_flags = true) {
  cmd->add_option("--body", opt.body_path, "Body specification JSON file");
  cmd->add_option("--ellipsoid", opt.ellipsoid_axes,
                  "Normal-form ellipsoid parameters a1,a2,...")
      ->delimiter(',');
  cmd->add_option("--polydisc", opt.polydisc, "Polydisc parameters a,n")
      ->delimiter(',')
      ->expected(2);
  if (with_solver_flags) {
    cmd->add_option("--modes", opt.cfg.modes, "Fourier truncation N");
    cmd->add_option("--grid", opt.cfg.quadrature, "Quadrature samples M (default 8N)");
    cmd->add_option("--starts", opt.cfg.starts, "Multistart run count");
    cmd->add_option("--seed", opt.cfg.seed, "RNG seed");
    cmd->add_option("--tol", opt.cfg.tol, "Relative stop tolerance");
    cmd->add_option("--threads", opt.threads, "Worker count (default: logical cores)");
  }
  cmd->add_option("--out", opt.out_dir, "Output directory");
  cmd->add_option("--config", opt.config_path, "JSON config file (flags win)");
}

// Config precedence: flags > config file > CAPSYS_SEED env > defaults.
void apply_config(CLI::App* cmd, Options& opt) {
  if (!opt.config_path.empty()) {
    nlohmann::json j = nlohmann::json::parse(read_text_file(opt.config_path));
    auto maybe = [&](const char* flag, const char* key, auto& target) {
      const auto* o = cmd->get_option_no_throw(flag);
      if (j.contains(key) && (o == nullptr || o->count() == 0))
        target = j.at(key).get<std::decay_t<decltype(target)>>();
    };
    maybe("--modes", "modes", opt.cfg.modes);
    maybe("--grid", "grid", opt.cfg.quadrature);
    maybe("--starts", "starts", opt.cfg.starts);
    maybe("--seed", "seed", opt.cfg.seed);
    maybe("--tol", "tol", opt.cfg.tol);
    maybe("--threads", "threads", opt.threads);
  }
  const auto* seed_opt = cmd->get_option_no_throw("--seed");
  const bool seed_given =
      (seed_opt && seed_opt->count() > 0) ||
      (!opt.config_path.empty() &&
       nlohmann::json::parse(read_text_file(opt.config_path)).contains("seed"));
  if (!seed_given) {
    if (const char* env = std::getenv("CAPSYS_SEED"))
      opt.cfg.seed = std::strtoull(env, nullptr, 10);
  }
  const auto* grid_opt = cmd->get_option_no_throw("--grid");
  const bool grid_given = grid_opt && grid_opt->count() > 0;
  if (!grid_given && opt.cfg.quadrature < 4 * opt.cfg.modes)
    opt.cfg.quadrature = 8 * opt.cfg.modes;
}

Body resolve_body(const Options& opt) {
  const int given = (!opt.body_path.empty()) + (!opt.ellipsoid_axes.empty()) +
                    (!opt.polydisc.empty());
  if (given != 1)
    throw std::invalid_argument(
        "exactly one of --body, --ellipsoid, --polydisc is required");
  if (!opt.body_path.empty()) return load_body(opt.body_path);
  if (!opt.ellipsoid_axes.empty()) return make_ellipsoid(opt.ellipsoid_axes);
  throw std::invalid_argument(
      "polydiscs have closed-form capacities only and cannot be solved as bodies");
}

bool is_polydisc(const Options& opt) { return !opt.polydisc.empty(); }

std::string out_path(Options& opt, const std::string& name) {
  fs::create_directories(opt.out_dir);
  const std::string p = (fs::path(opt.out_dir) / name).string();
  opt.artifacts.push_back(p);
  return p;
}

void write_manifest(Options& opt) {
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - opt.t0).count();
  auto m = JsonValue::object();
  m->set("command", JsonValue::string(opt.command));
  m->set("body", JsonValue::string(opt.body_path));
  auto cfg = JsonValue::object();
  cfg->set("modes", JsonValue::integer(opt.cfg.modes));
  cfg->set("grid", JsonValue::integer(opt.cfg.quadrature));
  cfg->set("starts", JsonValue::integer(opt.cfg.starts));
  cfg->set("seed", JsonValue::integer(static_cast<long long>(opt.cfg.seed)));
  cfg->set("tol", JsonValue::number(opt.cfg.tol));
  cfg->set("threads", JsonValue::integer(opt.threads));
  m->set("config", cfg);
  m->set("out_dir", JsonValue::string(opt.out_dir));
  auto arts = JsonValue::array();
  for (const auto& a : opt.artifacts) arts->push(JsonValue::string(a));
  m->set("artifacts", arts);
  m->set("wall_time_s", JsonValue::number(wall));
  m->set("version", JsonValue::string(kVersion));
  m->set("seed", JsonValue::integer(static_cast<long long>(opt.cfg.seed)));
  // The manifest is the completion marker and records timing, so it is the
  // one artifact excluded from byte-identity comparisons.
  write_text_file((fs::path(opt.out_dir) / "manifest.json").string(), m->dump());
}

int sequence_entries(int n) { return std::max(8, 3 * n + 2); }

JsonPtr closed_form_report(const CapacitySequence& seq, int n,
                           std::optional<double> volume) {
  const IndexResult idx = sys_index(seq);
  auto root = capacity_sequence_json(seq, idx);
  root->set("generalized_zoll", JsonValue::boolean(is_generalized_zoll(seq, n)));
  root->set("n", JsonValue::integer(n));
  if (volume) {
    root->set("volume", JsonValue::number(*volume));
    root->set("systolic_ratio",
              JsonValue::number(systolic_ratio(seq.values[0], *volume, n)));
  }
  return root;
}

// ---------------------------------------------------------------------------

int cmd_capacity(Options& opt) {
  if (is_polydisc(opt)) {
    const double a = opt.polydisc[0];
    const int n = static_cast<int>(opt.polydisc[1]);
    auto seq = polydisc_sequence(a, n, sequence_entries(n));
    const double vol = std::pow(a, n);
    write_text_file(out_path(opt, "capacity.json"),
                    closed_form_report(seq, n, vol)->dump());
    std::printf("c1 = %.17g (closed form, polydisc)\n", seq.values[0]);
    write_manifest(opt);
    return 0;
  }
  const Body body = resolve_body(opt);
  const int n = body.dim() / 2;
  const auto axes = body.normal_form_axes();
  if (axes && !opt.numeric) {
    auto seq = ellipsoid_sequence(*axes, sequence_entries(n));
    write_text_file(out_path(opt, "capacity.json"),
                    closed_form_report(seq, n, body.volume())->dump());
    std::printf("c1 = %.17g (closed form, ellipsoid)\n", seq.values[0]);
    write_manifest(opt);
    return 0;
  }

  auto runs = minimize(body, opt.cfg, opt.threads);
  const RunResult* best = nullptr;
  for (const auto& r : runs)
    if (r.converged) {
      best = &r;
      break;
    }
  if (!best) {
    std::fprintf(stderr, "capacity: no multistart run converged\n");
    return 3;
  }
  CapacitySequence seq;
  seq.values = {best->value};
  seq.provenance = {Provenance::Numeric};
  seq.rel_tol = 2.0 * opt.cfg.tol;
  const IndexResult idx{1, true};
  auto root = capacity_sequence_json(seq, idx);

  const Vec beta = recover_beta(body, best->x, best->value, opt.cfg.quadrature);
  auto sys = reconstruct(body, best->x, best->value, beta, opt.cfg.quadrature);
  sys.converged = best->converged;
  const std::string csv = out_path(opt, "systole_loop.csv");
  save_loop_csv(sys.loop, csv);
  root->set("systole", systole_result_json(sys, csv));
  if (auto vol = body.volume())
    root->set("systolic_ratio",
              JsonValue::number(systolic_ratio(best->value, *vol, n)));
  write_text_file(out_path(opt, "capacity.json"), root->dump());
  write_loops_svg(out_path(opt, "systole.svg"), body, {&sys.loop}, {"systole"});
  std::printf("c1 = %.17g (numeric, %d starts)\n", best->value, opt.cfg.starts);
  write_manifest(opt);
  return 0;
}

int cmd_systole(Options& opt) {
  const Body body = resolve_body(opt);
  auto runs = minimize(body, opt.cfg, opt.threads);
  const RunResult* best = nullptr;
  for (const auto& r : runs)
    if (r.converged) {
      best = &r;
      break;
    }
  if (!best) {
    std::fprintf(stderr, "systole: no multistart run converged\n");
    return 3;
  }
  const Vec beta = recover_beta(body, best->x, best->value, opt.cfg.quadrature);
  auto sys = reconstruct(body, best->x, best->value, beta, opt.cfg.quadrature);
  const std::string csv = out_path(opt, "systole_loop.csv");
  save_loop_csv(sys.loop, csv);
  write_text_file(out_path(opt, "systole.json"),
                  systole_result_json(sys, csv)->dump());
  write_loops_svg(out_path(opt, "systole.svg"), body, {&sys.loop}, {"systole"});
  std::printf("T = %.17g  boundary_residual = %.3g  inclusion_residual = %.3g\n",
              sys.T, sys.boundary_residual, sys.inclusion_residual);
  write_manifest(opt);
  return 0;
}

int cmd_index(Options& opt) {
  CapacitySequence seq;
  int n = 0;
  if (is_polydisc(opt)) {
    n = static_cast<int>(opt.polydisc[1]);
    seq = polydisc_sequence(opt.polydisc[0], n, sequence_entries(n));
  } else {
    const Body body = resolve_body(opt);
    const auto axes = body.normal_form_axes();
    if (!axes)
      throw std::invalid_argument(
          "index: exact index needs a closed-form capacity sequence "
          "(ellipsoid or polydisc); numeric bodies only yield c1");
    n = body.dim() / 2;
    seq = ellipsoid_sequence(*axes, sequence_entries(n));
  }
  const IndexResult idx = sys_index(seq);
  auto root = closed_form_report(seq, n, std::nullopt);
  write_text_file(out_path(opt, "index.json"), root->dump());
  std::printf("index = %d%s  generalized_zoll = %s\n", idx.index,
              idx.is_lower_bound ? " (lower bound)" : "",
              is_generalized_zoll(seq, n) ? "true" : "false");
  write_manifest(opt);
  return 0;
}

int cmd_zoll(Options& opt) {
  if (is_polydisc(opt)) return cmd_index(opt);
  const Body body = resolve_body(opt);
  const int n = body.dim() / 2;
  const double diam = body.diameter();

  auto runs = minimize(body, opt.cfg, opt.threads);
  std::vector<SystoleResult> results;
  for (const auto& r : runs) {
    if (!r.converged) continue;
    const Vec beta = recover_beta(body, r.x, r.value, opt.cfg.quadrature);
    auto sys = reconstruct(body, r.x, r.value, beta, opt.cfg.quadrature);
    results.push_back(std::move(sys));
  }
  if (!opt.inject.empty()) {
    if (opt.inject == "bxb1") {
      for (auto& s : bxb1_injected_families(body)) results.push_back(std::move(s));
    } else {
      throw std::invalid_argument("zoll: unknown --inject set \"" + opt.inject +
                                  "\" (available: bxb1)");
    }
  }
  if (results.empty()) {
    std::fprintf(stderr, "zoll: no converged runs\n");
    return 3;
  }

  auto clusters = cluster(results, 0.1 * diam);
  auto coverage = ev0_coverage(results, body, 0.1 * diam, 1000, opt.cfg.seed + 1);
  const bool unique = results.size() >= 2
                          ? uniqueness_probe(results, 0.05 * diam, 0.2 * diam)
                          : true;

  std::vector<std::string> csvs;
  std::vector<const TimeLoop*> reps;
  std::vector<std::string> labels;
  for (size_t i = 0; i < clusters.size(); ++i) {
    const std::string p = out_path(opt, "cluster_" + std::to_string(i) + ".csv");
    save_loop_csv(clusters[i].representative.loop, p);
    csvs.push_back(p);
    if (i < 8) {
      reps.push_back(&clusters[i].representative.loop);
      labels.push_back("cluster " + std::to_string(i));
    }
  }
  auto root = zoll_report_json(clusters, csvs, coverage, unique);
  if (auto axes = body.normal_form_axes()) {
    auto seq = ellipsoid_sequence(*axes, sequence_entries(n));
    root->set("generalized_zoll", JsonValue::boolean(is_generalized_zoll(seq, n)));
  }
  write_text_file(out_path(opt, "zoll.json"), root->dump());
  write_loops_svg(out_path(opt, "zoll.svg"), body, reps, labels);
  std::printf("clusters = %zu  coverage = %.3f  uniqueness = %s\n", clusters.size(),
              coverage.fraction, unique ? "true" : "false");
  write_manifest(opt);
  return 0;
}

int cmd_john(Options& opt) {
  const Body body = resolve_body(opt);
  auto rep = capacity_bound_report(body, opt.cfg, opt.john_tol, opt.threads);
  bool sandwich_ok = true;
  double max_vertex_form = 0.0;
  if (body.vertices()) {
    auto check = verify_sandwich(body, rep.john);
    sandwich_ok = check.ok;
    max_vertex_form = check.max_vertex_form;
  }
  auto root = john_result_json(rep.john, rep.c1_ellipsoid);
  root->set("c1_numeric", JsonValue::number(rep.c1_numeric_value));
  root->set("bound_holds", JsonValue::boolean(rep.bound_holds));
  root->set("index_bound", JsonValue::integer(rep.index_bound_value));
  root->set("index_bound_flavor",
            JsonValue::string(rep.flavor == BoundFlavor::CentrallySymmetric
                                  ? "centrally_symmetric"
                                  : "general"));
  root->set("sandwich_ok", JsonValue::boolean(sandwich_ok));
  root->set("max_vertex_form", JsonValue::number(max_vertex_form));
  write_text_file(out_path(opt, "john.json"), root->dump());
  std::printf("c1 bound = %.17g  numeric c1 = %.17g  bound holds = %s\n",
              rep.c1_ellipsoid, rep.c1_numeric_value,
              rep.bound_holds ? "true" : "false");
  write_manifest(opt);
  return rep.bound_holds && sandwich_ok ? 0 : 3;
}

int cmd_check(Options& opt) {
  const Body body = resolve_body(opt);
  if (opt.loop_path.empty())
    throw std::invalid_argument("check: --loop FILE is required");
  const TimeLoop loop = load_loop_csv(opt.loop_path);
  require_dim(loop.samples.front(), body.dim(), "check");
  const double T = opt.have_action ? opt.action_override : action(loop);
  if (!(T > 0.0))
    throw std::invalid_argument("check: loop action must be positive");
  auto rep = inclusion_residual(body, loop, T);
  double bres = 0.0;
  for (const auto& s : loop.samples)
    bres = std::max(bres, std::abs(body.gauge2(s) - 1.0));

  auto root = JsonValue::object();
  root->set("T", JsonValue::number(T));
  root->set("inclusion_residual", JsonValue::number(rep.residual));
  root->set("boundary_residual", JsonValue::number(bres));
  root->set("excluded_samples", JsonValue::integer(rep.excluded));
  auto windows = JsonValue::array();
  for (const auto& w : rep.windows) {
    auto pair = JsonValue::array();
    pair->push(JsonValue::integer(w.first));
    pair->push(JsonValue::integer(w.second));
    windows->push(pair);
  }
  root->set("corner_windows", windows);
  write_text_file(out_path(opt, "check.json"), root->dump());
  write_loops_svg(out_path(opt, "check.svg"), body, {&loop}, {"loop"});
  std::printf("T = %.17g  inclusion_residual = %.3g  boundary_residual = %.3g  "
              "(%d samples excluded)\n",
              T, rep.residual, bres, rep.excluded);
  write_manifest(opt);
  return 0;
}

int cmd_demo(Options& opt) {
  if (opt.demo_name == "bxb1-w11") {
    const Body k = make_bxb1();
    auto g = bxb1_gamma();
    auto root = JsonValue::object();
    auto rows = JsonValue::array();
    for (int n : {2, 4, 8}) {
      auto gn = bxb1_gamma_n(n);
      double sup = 0.0;
      for (int j = 0; j < 10000; ++j) {
        const double t = j / 10000.0;
        sup = std::max(sup, (g.eval(t) - gn.eval(t)).lpNorm<Eigen::Infinity>());
      }
      double w11 = 0.0;
      const int steps = 4000;
      for (int j = 0; j < steps; ++j) {
        const double t = (j + 0.5) * 0.25 / steps;
        w11 += (g.deriv(t) - gn.deriv(t)).norm() * 0.25 / steps;
      }
      auto row = JsonValue::object();
      row->set("n", JsonValue::integer(n));
      row->set("sup_distance", JsonValue::number(sup));
      row->set("sup_bound", JsonValue::number(1.0 / n));
      row->set("w11_gap", JsonValue::number(w11));
      row->set("w11_lower_bound", JsonValue::number(2.0));
      rows->push(row);
      std::printf("n=%d  sup|gamma-gamma_n| = %.6f (<= %.4f)   W11 gap = %.6f (>= 2)\n",
                  n, sup, 1.0 / n, w11);
    }
    root->set("convergence", rows);
    write_text_file(out_path(opt, "bxb1_w11.json"), root->dump());
    const TimeLoop lg = g.sample(1024);
    const TimeLoop l4 = bxb1_gamma_n(4).sample(1024);
    write_loops_svg(out_path(opt, "bxb1_w11.svg"), k, {&lg, &l4},
                    {"gamma", "gamma_4"});
    write_manifest(opt);
    return 0;
  }
  if (opt.demo_name == "regressions") {
    RegressionOptions ro;
    ro.modes = opt.cfg.modes;
    ro.seed = opt.cfg.seed;
    auto rep = run_regressions(ro);
    auto root = JsonValue::object();
    auto checks = JsonValue::array();
    for (const auto& c : rep.checks) {
      auto row = JsonValue::object();
      row->set("example", JsonValue::string(c.example));
      row->set("check", JsonValue::string(c.name));
      row->set("value", JsonValue::number(c.value));
      row->set("bound", JsonValue::number(c.bound));
      row->set("kind", JsonValue::string(c.upper_bound ? "<=" : ">="));
      row->set("pass", JsonValue::boolean(c.pass));
      checks->push(row);
      std::printf("%-4s %-28s %-32s %12.6g %s %g\n", c.pass ? "ok" : "FAIL",
                  c.example.c_str(), c.name.c_str(), c.value,
                  c.upper_bound ? "<=" : ">=", c.bound);
    }
    root->set("checks", checks);
    root->set("all_pass", JsonValue::boolean(rep.all_pass));
    write_text_file(out_path(opt, "regressions.json"), root->dump());

    auto manifest = JsonValue::array();
    for (const auto& e : named_examples()) {
      auto row = JsonValue::object();
      row->set("name", JsonValue::string(e.name));
      row->set("body", JsonValue::string(e.body));
      row->set("expected_action", JsonValue::number(e.expected_action));
      row->set("generalized_zoll", JsonValue::boolean(e.zoll));
      row->set("uniqueness_of_systoles", JsonValue::boolean(e.uniqueness));
      row->set("expected_coverage", JsonValue::number(e.expected_coverage));
      manifest->push(row);
    }
    auto mroot = JsonValue::object();
    mroot->set("examples", manifest);
    write_text_file(out_path(opt, "examples.json"), mroot->dump());
    write_manifest(opt);
    return rep.all_pass ? 0 : 3;
  }
  throw std::invalid_argument("demo: unknown demo \"" + opt.demo_name +
                              "\" (available: bxb1-w11, regressions)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacities, systoles, and the systolic S^1-index of convex bodies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Options opt;
  opt.threads = static_cast<int>(std::thread::hardware_concurrency());

  auto* capacity = app.add_subcommand("capacity", "First capacity c1 (closed form or numeric)");
  add_common(capacity, opt);
  capacity->add_flag("--numeric", opt.numeric,
                     "Force the numeric route even when a closed form exists");

  auto* systole = app.add_subcommand("systole", "Minimize the dual functional and reconstruct the systole");
  add_common(systole, opt);

  auto* index = app.add_subcommand("index", "Closed-form capacity sequence, plateau index, Zoll flag");
  add_common(index, opt, false);

  auto* zoll = app.add_subcommand("zoll", "Multistart systole exploration: clusters, coverage, uniqueness");
  add_common(zoll, opt);
  zoll->add_option("--inject", opt.inject,
                   "Add a named analytic loop family to the results (bxb1)");

  auto* john = app.add_subcommand("john", "Minimal enclosing ellipsoid and capacity/index bounds");
  add_common(john, opt);
  john->add_option("--john-tol", opt.john_tol, "Ellipsoid duality-gap tolerance");

  auto* check = app.add_subcommand("check", "Certify a loop CSV against a body");
  add_common(check, opt, false);
  check->add_option("--loop", opt.loop_path, "Loop CSV (t,x1,y1,...)");
  check->add_option("--action", opt.action_override, "Expected action T")
      ->each([&](const std::string&) { opt.have_action = true; });

  auto* demo = app.add_subcommand("demo", "Built-in demonstrations");
  demo->add_option("name", opt.demo_name, "bxb1-w11 | regressions")->required();
  add_common(demo, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    opt.command = sub->get_name();
    apply_config(sub, opt);
    opt.cfg.validate();
    if (sub == capacity) return cmd_capacity(opt);
    if (sub == systole) return cmd_systole(opt);
    if (sub == index) return cmd_index(opt);
    if (sub == zoll) return cmd_zoll(opt);
    if (sub == john) return cmd_john(opt);
    if (sub == check) return cmd_check(opt);
    if (sub == demo) return cmd_demo(opt);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
