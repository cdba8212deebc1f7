#pragma once

#include <cstdint>
#include <vector>

#include "tdroute/geometry.hpp"
#include "tdroute/routing.hpp"

namespace tdroute {

struct Window {
  double xmin = 0.0, ymin = 0.0, xmax = 1.0, ymax = 1.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool contains(Point p, double eps = 0.0) const {
    return p.x >= xmin - eps && p.x <= xmax + eps && p.y >= ymin - eps && p.y <= ymax + eps;
  }
};

// One term of the seed chain; statistically independent streams for
// nearby inputs.
uint64_t splitmix64(uint64_t x);

// Seed for (master, outer index, inner index).
uint64_t mix_seed(uint64_t master, uint64_t outer, uint64_t inner);

// Point count drawn Poisson(lambda * area), positions independent
// uniforms. Deterministic under seed.
std::vector<Point> sample_poisson(const Window& w, double lambda, uint64_t seed);

// Moments of a single successor step from the origin and of its axis
// projections, estimated by simulation and scaled to unit intensity:
// first moments carry a sqrt(intensity) factor, second moments a full
// one, third moments the 3/2 power.
struct MomentEstimates {
  double len = 0.0, len_x = 0.0, len_y = 0.0;
  double len2 = 0.0, len_x2 = 0.0, len_y2 = 0.0;
  double len3 = 0.0, abs_x3 = 0.0, abs_y3 = 0.0;
  double len_se = 0.0, len_x_se = 0.0, len_y_se = 0.0;
  double len2_se = 0.0, len_x2_se = 0.0, len_y2_se = 0.0;
  double len3_se = 0.0, abs_x3_se = 0.0, abs_y3_se = 0.0;
  long samples = 0;
};

MomentEstimates forward_moments(double lambda, long samples, uint64_t seed);

// Closed-form expected routing ratio for a sink at angle phi, valid on
// [pi/3, pi/2]; defined for positive, theta6-auto, memoryless-negative
// and constmem-negative.
double predicted_ratio(Algorithm alg, double phi);

// Average of predicted_ratio over the angle range, in closed form.
double predicted_average(Algorithm alg);

struct ExperimentConfig {
  double lambda = 1e4;
  std::vector<double> phis;  // empty: use default_phi_grid()
  Algorithm algorithm = Algorithm::positive;
  int trials = 300;
  double margin = 1.5;  // window padding around the unit segment
  uint64_t master_seed = 1;
  int max_steps = 0;  // 0: routing default
};

struct PhiStats {
  double phi = 0.0;
  double lambda = 0.0;
  int trials = 0;
  int valid_trials = 0;
  double mean_ratio = 0.0;  // over valid trials
  double std_err = 0.0;     // sample std / sqrt(valid); NaN under 2 valid
  double predicted = 0.0;   // NaN when no closed form exists
  int invalid_boundary = 0;  // clipped certificate or walk left the window
  int invalid_other = 0;     // any other non-arrival
};

struct RatioStats {
  Algorithm algorithm = Algorithm::positive;
  std::vector<PhiStats> rows;
  bool reliable = true;  // invalid fraction stayed within 1%
};

// Monte Carlo routing ratios for a unit pair at each angle: per trial,
// Poisson points fill the padded window around the pair, the matching
// graph is built, the route runs, and the trace only counts when it
// arrived with every decision certificate fully inside the window.
// Honors TDROUTE_THREADS; results are identical at any thread count.
RatioStats ratio_experiment(const ExperimentConfig& cfg);

// 13 angles evenly spaced over the analyzed sixth of directions.
std::vector<double> default_phi_grid();

}  // namespace tdroute
