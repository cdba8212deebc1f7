#include "tdroute/poisson_lab.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

#include "tdroute/theta_graph.hpp"

namespace tdroute {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool triangle_inside(const CanonicalTriangle& tri, const Window& w) {
  return w.contains(tri.apex, 1e-9) && w.contains(tri.corner_cw(), 1e-9) &&
         w.contains(tri.corner_ccw(), 1e-9);
}

// The smallest triangle circumscribing the face with sides normal to the
// parity's bisectors: the face stays a face exactly while that region
// holds no other point, so it must fit inside the sampled window.
bool face_support_inside(const ThetaGraph& g, const std::array<int32_t, 3>& face, int parity,
                         const Window& w) {
  Vec2 n[3];
  double s[3];
  for (int i = 0; i < 3; ++i) {
    n[i] = cone_bisector(2 * i + parity, 6);
    s[i] = -std::numeric_limits<double>::infinity();
    for (int32_t v : face) s[i] = std::max(s[i], dot(Vec2{g.pts[v].x, g.pts[v].y}, n[i]));
  }
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const double det = n[i].x * n[j].y - n[i].y * n[j].x;
    const Point corner{(s[i] * n[j].y - s[j] * n[i].y) / det,
                       (n[i].x * s[j] - n[j].x * s[i]) / det};
    if (!w.contains(corner, 1e-9)) return false;
  }
  return true;
}

double predicted_or_nan(Algorithm alg, double phi) {
  switch (alg) {
    case Algorithm::positive:
    case Algorithm::theta6_auto:
    case Algorithm::memoryless_negative:
    case Algorithm::constmem_negative:
      return predicted_ratio(alg, phi);
    default:
      return kNan;
  }
}

// flag: 0 valid, 1 boundary effect, 2 other failure
struct TrialResult {
  double ratio = 0.0;
  int flag = 0;
};

TrialResult run_trial(const ExperimentConfig& cfg, double phi, uint64_t seed) {
  const bool positive_side = cfg.algorithm == Algorithm::positive ||
                             cfg.algorithm == Algorithm::theta6_auto ||
                             cfg.algorithm == Algorithm::theta_k;
  const Point unit{std::cos(phi), std::sin(phi)};
  const Point sp = positive_side ? Point{0.0, 0.0} : unit;
  const Point tp = positive_side ? unit : Point{0.0, 0.0};
  Window w;
  w.xmin = std::min(sp.x, tp.x) - cfg.margin;
  w.xmax = std::max(sp.x, tp.x) + cfg.margin;
  w.ymin = std::min(sp.y, tp.y) - cfg.margin;
  w.ymax = std::max(sp.y, tp.y) + cfg.margin;

  std::vector<Point> pts = sample_poisson(w, cfg.lambda, seed);
  const int32_t si = static_cast<int32_t>(pts.size());
  pts.push_back(sp);
  const int32_t ti = static_cast<int32_t>(pts.size());
  pts.push_back(tp);

  const bool needs_full =
      cfg.algorithm == Algorithm::theta6_auto || cfg.algorithm == Algorithm::theta_k;
  ThetaGraph g = build_theta_graph(
      std::move(pts), GraphSpec{needs_full ? GraphKind::theta : GraphKind::half_even, 6});

  RouteOptions opts;
  opts.max_steps = cfg.max_steps;
  const RouteTrace tr = route(cfg.algorithm, g, si, ti, opts);

  TrialResult out;
  if (tr.status != RouteStatus::arrived) {
    out.flag = tr.status == RouteStatus::left_window ? 1 : 2;
    return out;
  }
  int parity = 0;
  if (cfg.algorithm == Algorithm::theta6_auto) parity = cone_index(g.pts[si], g.pts[ti], 6) % 2;
  for (const StepRecord& rec : tr.steps) {
    // A decision that leaned on an absent successor, or on emptiness of a
    // region poking out of the window, could differ from the unbounded
    // process; such a trial only biases the estimate, so drop it.
    if (rec.consulted_absent) {
      out.flag = 1;
      return out;
    }
    for (const CanonicalTriangle& tri : rec.consulted) {
      if (!triangle_inside(tri, w)) {
        out.flag = 1;
        return out;
      }
    }
    if (rec.tag == StepTag::side && rec.corridor_face[0] >= 0 &&
        !face_support_inside(g, rec.corridor_face, parity, w)) {
      out.flag = 1;
      return out;
    }
  }
  out.ratio = tr.ratio;
  return out;
}

}  // namespace

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t mix_seed(uint64_t master, uint64_t outer, uint64_t inner) {
  return splitmix64(splitmix64(splitmix64(master) ^ outer) ^ inner);
}

std::vector<Point> sample_poisson(const Window& w, double lambda, uint64_t seed) {
  if (!(w.area() > 0.0)) throw ContractViolation("sample_poisson: window must have positive area");
  if (!(lambda >= 0.0)) {
    throw ContractViolation("sample_poisson: intensity must be nonnegative");
  }
  std::mt19937_64 rng(seed);
  const double mean = lambda * w.area();
  long count = 0;
  if (mean > 0.0) {
    std::poisson_distribution<long> pois(mean);
    count = pois(rng);
  }
  std::vector<Point> pts;
  pts.reserve(static_cast<size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double x = w.xmin + u01(rng) * w.width();
    const double y = w.ymin + u01(rng) * w.height();
    pts.push_back({x, y});
  }
  return pts;
}

MomentEstimates forward_moments(double lambda, long samples, uint64_t seed) {
  if (samples < 1) throw ContractViolation("forward_moments: needs at least one sample");
  if (!(lambda > 0.0)) throw ContractViolation("forward_moments: intensity must be positive");
  // Radial cutoff: the chance that every point within distance R of the
  // apex misses the cone's thinnest angular slice is exp(-lambda R^2
  // (3/4)/sqrt(3)) and R makes that under 1e-12.
  const double R2 = kSqrt3 * 27.7 / (lambda * 0.75);
  const double R = std::sqrt(R2);
  const double mean_count = lambda * (kPi / 6.0) * R2;
  std::mt19937_64 rng(seed);
  std::poisson_distribution<long> pois(mean_count);

  const double root = std::sqrt(lambda);
  double sum[9] = {0};
  double sumsq[9] = {0};
  for (long i = 0; i < samples; ++i) {
    double bx = 0.0, by = std::numeric_limits<double>::infinity();
    while (by == std::numeric_limits<double>::infinity()) {
      const long m = pois(rng);
      for (long j = 0; j < m; ++j) {
        const double r = R * std::sqrt(u01(rng));
        const double a = kPi / 3.0 + u01(rng) * (kPi / 3.0);
        const double x = r * std::cos(a), y = r * std::sin(a);
        if (y < by) {
          bx = x;
          by = y;
        }
      }
    }
    const double qx = root * bx, qy = root * by;
    const double ql = std::hypot(qx, qy);
    const double q[9] = {ql,           qx,      qy,
                         ql * ql,      qx * qx, qy * qy,
                         ql * ql * ql, std::abs(qx * qx * qx), qy * qy * qy};
    for (int k = 0; k < 9; ++k) {
      sum[k] += q[k];
      sumsq[k] += q[k] * q[k];
    }
  }
  double est[9], se[9];
  for (int k = 0; k < 9; ++k) {
    est[k] = sum[k] / static_cast<double>(samples);
    if (samples < 2) {
      se[k] = kNan;
    } else {
      const double var =
          std::max(0.0, sumsq[k] / static_cast<double>(samples) - est[k] * est[k]);
      se[k] = std::sqrt(var / static_cast<double>(samples - 1));
    }
  }
  MomentEstimates out;
  out.len = est[0];
  out.len_x = est[1];
  out.len_y = est[2];
  out.len2 = est[3];
  out.len_x2 = est[4];
  out.len_y2 = est[5];
  out.len3 = est[6];
  out.abs_x3 = est[7];
  out.abs_y3 = est[8];
  out.len_se = se[0];
  out.len_x_se = se[1];
  out.len_y_se = se[2];
  out.len2_se = se[3];
  out.len_x2_se = se[4];
  out.len_y2_se = se[5];
  out.len3_se = se[6];
  out.abs_x3_se = se[7];
  out.abs_y3_se = se[8];
  out.samples = samples;
  return out;
}

double predicted_ratio(Algorithm alg, double phi) {
  if (!(phi >= kPi / 3.0 - 1e-12 && phi <= kPi / 2.0 + 1e-12)) {
    throw ContractViolation("predicted_ratio: angle outside [pi/3, pi/2]");
  }
  const double tau1 = (3.0 * std::log(3.0) + 4.0) / (4.0 * kSqrt3);
  switch (alg) {
    case Algorithm::positive:
    case Algorithm::theta6_auto:
      return tau1 * (std::sin(phi) + std::cos(phi) / kSqrt3);
    case Algorithm::constmem_negative:
      return (4.0 / 3.0) * tau1 * std::sin(phi);
    case Algorithm::memoryless_negative:
      return tau1 * (1.5 * std::sin(phi) - kSqrt3 / 6.0 * std::cos(phi));
    default:
      throw ContractViolation("predicted_ratio: no closed form for this algorithm");
  }
}

double predicted_average(Algorithm alg) {
  const double tau1 = (3.0 * std::log(3.0) + 4.0) / (4.0 * kSqrt3);
  switch (alg) {
    case Algorithm::positive:
    case Algorithm::theta6_auto:
      return 2.0 * kSqrt3 / kPi * tau1;
    case Algorithm::constmem_negative:
      return 4.0 / kPi * tau1;
    case Algorithm::memoryless_negative:
      return (6.0 - kSqrt3) / kPi * tau1;
    default:
      throw ContractViolation("predicted_average: no closed form for this algorithm");
  }
}

std::vector<double> default_phi_grid() {
  std::vector<double> phis(13);
  for (int i = 0; i < 13; ++i) {
    phis[i] = kPi / 3.0 + (kPi / 2.0 - kPi / 3.0) * static_cast<double>(i) / 12.0;
  }
  return phis;
}

RatioStats ratio_experiment(const ExperimentConfig& cfg) {
  if (!(cfg.lambda > 0.0)) throw ContractViolation("ratio_experiment: intensity must be positive");
  if (cfg.trials < 1) throw ContractViolation("ratio_experiment: needs at least one trial");
  if (!(cfg.margin > 0.0)) throw ContractViolation("ratio_experiment: margin must be positive");
  if (cfg.max_steps < 0) throw ContractViolation("ratio_experiment: negative step limit");
  const std::vector<double> phis = cfg.phis.empty() ? default_phi_grid() : cfg.phis;
  for (double phi : phis) {
    if (!(phi >= kPi / 3.0 - 1e-12 && phi <= kPi / 2.0 + 1e-12)) {
      throw ContractViolation("ratio_experiment: angle outside [pi/3, pi/2]");
    }
  }

  const int P = static_cast<int>(phis.size());
  const int T = cfg.trials;
  std::vector<TrialResult> slots(static_cast<size_t>(P) * T);

  int threads = 0;
  if (const char* env = std::getenv("TDROUTE_THREADS")) threads = std::atoi(env);
  if (threads < 1) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<int>(threads, P * T);

  std::atomic<int> cursor{0};
  auto work = [&] {
    for (int i; (i = cursor.fetch_add(1)) < P * T;) {
      const int p = i / T, trial = i % T;
      slots[i] = run_trial(cfg, phis[p],
                           mix_seed(cfg.master_seed, static_cast<uint64_t>(p),
                                    static_cast<uint64_t>(trial)));
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }

  RatioStats out;
  out.algorithm = cfg.algorithm;
  long invalid_total = 0;
  for (int p = 0; p < P; ++p) {
    PhiStats row;
    row.phi = phis[p];
    row.lambda = cfg.lambda;
    row.trials = T;
    row.predicted = predicted_or_nan(cfg.algorithm, phis[p]);
    double sum = 0.0, sumsq = 0.0;
    for (int trial = 0; trial < T; ++trial) {
      const TrialResult& r = slots[static_cast<size_t>(p) * T + trial];
      if (r.flag == 1) {
        ++row.invalid_boundary;
      } else if (r.flag == 2) {
        ++row.invalid_other;
      } else {
        ++row.valid_trials;
        sum += r.ratio;
        sumsq += r.ratio * r.ratio;
      }
    }
    invalid_total += row.invalid_boundary + row.invalid_other;
    if (row.valid_trials > 0) row.mean_ratio = sum / row.valid_trials;
    if (row.valid_trials > 1) {
      const double var = std::max(0.0, sumsq / row.valid_trials - row.mean_ratio * row.mean_ratio);
      row.std_err = std::sqrt(var / (row.valid_trials - 1));
    } else {
      row.std_err = kNan;
    }
    out.rows.push_back(row);
  }
  out.reliable = invalid_total <= 0.01 * static_cast<double>(P) * T;
  return out;
}

}  // namespace tdroute
