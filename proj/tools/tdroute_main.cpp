#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "tdroute/io.hpp"

namespace {

using namespace tdroute;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << text;
}

Window parse_window(const std::string& text) {
  Window w;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf%c", &w.xmin, &w.ymin, &w.xmax, &w.ymax,
                  &tail) != 4) {
    throw ParseError("window must be x0,y0,x1,y1");
  }
  if (!std::isfinite(w.xmin) || !std::isfinite(w.ymin) || !std::isfinite(w.xmax) ||
      !std::isfinite(w.ymax) || !(w.xmax > w.xmin) || !(w.ymax > w.ymin)) {
    throw ParseError("window must be finite with positive width and height");
  }
  return w;
}

Algorithm algo_of(const std::string& name) {
  Algorithm a;
  if (!algorithm_from_name(name, a)) throw ParseError("unknown algorithm '" + name + "'");
  return a;
}

GraphKind kind_of(const std::string& name) {
  if (name == "theta") return GraphKind::theta;
  if (name == "half-even") return GraphKind::half_even;
  if (name == "half-odd") return GraphKind::half_odd;
  throw ParseError("kind must be theta, half-even, or half-odd");
}

void check_endpoint(const ThetaGraph& g, int32_t v, const char* flag) {
  if (v < 0 || v >= g.n()) {
    throw ParseError(std::string(flag) + " must name a vertex, 0.." +
                     std::to_string(g.n() - 1));
  }
}

// Command-line angles arrive rounded to a few decimals; values that close
// to an endpoint snap onto it so pi/2 typed as 1.5708 stays in range.
double snap_phi(double phi) {
  const double lo = kPi / 3.0, hi = kPi / 2.0;
  if (phi < lo && lo - phi < 1e-4) return lo;
  if (phi > hi && phi - hi < 1e-4) return hi;
  return phi;
}

double default_bound(Algorithm alg) {
  switch (alg) {
    case Algorithm::positive:
    case Algorithm::theta6_auto:
      return 2.0;
    case Algorithm::memoryless_negative:
    case Algorithm::constmem_negative:
    case Algorithm::bose_negative:
      return 5.0 / kSqrt3;
    case Algorithm::theta_k:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

int run_gen(double lambda, const std::string& window, uint64_t seed, const std::string& out) {
  if (!std::isfinite(lambda)) throw ParseError("lambda must be finite");
  const Window w = parse_window(window);
  const std::vector<Point> pts = sample_poisson(w, lambda, seed);
  std::ostringstream ss;
  ss << "# poisson sample: lambda=" << format_exact(lambda) << " window="
     << format_exact(w.xmin) << ',' << format_exact(w.ymin) << ',' << format_exact(w.xmax)
     << ',' << format_exact(w.ymax) << " seed=" << seed << " n=" << pts.size() << '\n';
  write_points(ss, pts);
  write_output(out, ss.str());
  return 0;
}

int run_build(const std::string& points, const std::string& kind, int k,
              const std::string& out) {
  std::ifstream in(points);
  if (!in) throw ParseError("cannot open " + points);
  GraphSpec spec;
  spec.kind = kind_of(kind);
  spec.k = k;
  const ThetaGraph g = build_theta_graph(read_points(in), spec);
  write_output(out, graph_to_json(g) + "\n");
  return 0;
}

int status_exit(RouteStatus status) {
  switch (status) {
    case RouteStatus::arrived: return 0;
    case RouteStatus::loop_detected: return 3;
    case RouteStatus::dead_end: return 4;
    case RouteStatus::step_limit: return 5;
    case RouteStatus::left_window: return 4;
  }
  return 2;
}

int run_route(const std::string& graph, const std::string& algo, int32_t s, int32_t t,
              int max_steps) {
  const ThetaGraph g = graph_from_json(read_file(graph));
  const Algorithm alg = algo_of(algo);
  check_endpoint(g, s, "--s");
  check_endpoint(g, t, "--t");
  RouteOptions opts;
  opts.max_steps = max_steps;
  const RouteTrace trace = route(alg, g, s, t, opts);
  write_output("", trace_to_json(trace) + "\n");
  return status_exit(trace.status);
}

int run_certify(const std::string& graph, const std::string& algo, int32_t s, int32_t t,
                double bound, int max_steps) {
  const ThetaGraph g = graph_from_json(read_file(graph));
  std::vector<TraceCheck> checks;
  {
    const ThetaGraph rebuilt = build_theta_graph(g.pts, g.spec);
    const bool same = rebuilt.successor == g.successor;
    std::string detail = "table matches a fresh cone search";
    if (!same) {
      for (size_t i = 0; i < g.successor.size(); ++i) {
        if (g.successor[i] != rebuilt.successor[i]) {
          detail = "vertex " + std::to_string(i / g.spec.k) + " cone " +
                   std::to_string(i % g.spec.k) + ": stored " + std::to_string(g.successor[i]) +
                   ", derived " + std::to_string(rebuilt.successor[i]);
          break;
        }
      }
    }
    checks.push_back({"successor-table", same, std::move(detail)});
  }
  {
    const auto viol = certify_empty_triangle(g);
    std::string detail = "every successor triangle is empty";
    if (viol) {
      detail = "site " + std::to_string(viol->witness) + " sits inside the triangle of vertex " +
               std::to_string(viol->vertex) + " cone " + std::to_string(viol->cone);
    }
    checks.push_back({"empty-triangle", !viol, std::move(detail)});
  }
  if (!algo.empty()) {
    const Algorithm alg = algo_of(algo);
    check_endpoint(g, s, "--s");
    check_endpoint(g, t, "--t");
    RouteOptions opts;
    opts.max_steps = max_steps;
    const RouteTrace trace = route(alg, g, s, t, opts);
    checks.push_back({"route-arrived", trace.status == RouteStatus::arrived,
                      to_string(trace.status)});
    if (trace.status == RouteStatus::arrived) {
      const double b = std::isnan(bound) ? default_bound(alg) : bound;
      TraceReport rep = certify_trace(trace, g, b);
      for (TraceCheck& c : rep.checks) checks.push_back(std::move(c));
    }
  }
  write_output("", report_to_json(checks) + "\n");
  for (const TraceCheck& c : checks) {
    if (!c.pass) return 6;
  }
  return 0;
}

int run_experiment(const std::string& config, const std::string& out) {
  const ExperimentConfig cfg = config_from_json(read_file(config));
  write_output(out, stats_to_csv(ratio_experiment(cfg)));
  return 0;
}

int run_predict(const std::string& algo, double phi, bool average) {
  const Algorithm alg = algo_of(algo);
  const double v = average ? predicted_average(alg) : predicted_ratio(alg, snap_phi(phi));
  write_output("", format_display(v) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"theta graph toolkit: point generation, graph construction, online routing, "
               "certification, Poisson experiments"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "sample a Poisson point set into a point file");
  double gen_lambda = 0.0;
  std::string gen_window, gen_out;
  uint64_t gen_seed = 1;
  gen->add_option("--lambda", gen_lambda, "expected points per unit area")->required();
  gen->add_option("--window", gen_window, "sampling window x0,y0,x1,y1")->required();
  gen->add_option("--seed", gen_seed, "random seed, default 1");
  gen->add_option("--out", gen_out, "output file, default standard output");

  auto* build = app.add_subcommand("build", "construct a graph dump from a point file");
  std::string build_points, build_kind = "half-even", build_out;
  int build_k = 6;
  build->add_option("--points", build_points, "input point file")->required();
  build->add_option("--kind", build_kind, "theta, half-even, or half-odd, default half-even");
  build->add_option("--k", build_k, "cone count, must stay 6 for half kinds");
  build->add_option("--out", build_out, "output file, default standard output");

  auto* rt = app.add_subcommand("route", "run one routing walk and print its trace");
  std::string rt_graph, rt_algo;
  int32_t rt_s = -1, rt_t = -1;
  int rt_max = 0;
  rt->add_option("--graph", rt_graph, "graph dump file")->required();
  rt->add_option("--algo", rt_algo,
                 "theta, positive, memoryless, constmem, bose, or auto")
      ->required();
  rt->add_option("--s", rt_s, "start vertex index")->required();
  rt->add_option("--t", rt_t, "goal vertex index")->required();
  rt->add_option("--max-steps", rt_max, "step budget, 0 picks 100 + 10n");

  auto* cert = app.add_subcommand("certify", "audit a graph dump and optionally one walk");
  std::string cert_graph, cert_algo;
  int32_t cert_s = -1, cert_t = -1;
  double cert_bound = std::numeric_limits<double>::quiet_NaN();
  int cert_max = 0;
  cert->add_option("--graph", cert_graph, "graph dump file")->required();
  auto* cert_algo_opt =
      cert->add_option("--algo", cert_algo, "also route s to t and audit the trace");
  auto* cert_s_opt = cert->add_option("--s", cert_s, "start vertex index");
  auto* cert_t_opt = cert->add_option("--t", cert_t, "goal vertex index");
  cert_algo_opt->needs(cert_s_opt, cert_t_opt);
  cert_s_opt->needs(cert_algo_opt);
  cert_t_opt->needs(cert_algo_opt);
  cert->add_option("--bound", cert_bound, "ratio ceiling for the audit, default by algorithm")
      ->needs(cert_algo_opt);
  cert->add_option("--max-steps", cert_max, "step budget, 0 picks 100 + 10n")
      ->needs(cert_algo_opt);

  auto* exp = app.add_subcommand(
      "experiment", "run the routing ratio experiment from a JSON config and emit CSV; "
                    "TDROUTE_THREADS sets the worker count");
  std::string exp_config, exp_out;
  exp->add_option("--config", exp_config, "JSON config file")->required();
  exp->add_option("--out", exp_out, "output file, default standard output");

  auto* pred = app.add_subcommand("predict", "print an expected routing ratio");
  std::string pred_algo;
  double pred_phi = std::numeric_limits<double>::quiet_NaN();
  bool pred_avg = false;
  pred->add_option("--algo", pred_algo, "positive, memoryless, constmem, or auto")->required();
  auto* pred_phi_opt =
      pred->add_option("--phi", pred_phi, "angle of the goal direction, in [pi/3, pi/2]");
  auto* pred_avg_opt = pred->add_flag("--average", pred_avg, "average over the angle range");
  pred_phi_opt->excludes(pred_avg_opt);
  pred_avg_opt->excludes(pred_phi_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_lambda, gen_window, gen_seed, gen_out);
    if (build->parsed()) return run_build(build_points, build_kind, build_k, build_out);
    if (rt->parsed()) return run_route(rt_graph, rt_algo, rt_s, rt_t, rt_max);
    if (cert->parsed()) {
      return run_certify(cert_graph, cert_algo, cert_s, cert_t, cert_bound, cert_max);
    }
    if (exp->parsed()) return run_experiment(exp_config, exp_out);
    if (pred->parsed()) {
      if (!pred_avg && std::isnan(pred_phi)) {
        std::cerr << "tdroute: predict needs --phi or --average\n";
        return 2;
      }
      return run_predict(pred_algo, pred_phi, pred_avg);
    }
  } catch (const std::exception& e) {
    std::cerr << "tdroute: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
