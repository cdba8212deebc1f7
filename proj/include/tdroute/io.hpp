#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdroute/geometry.hpp"
#include "tdroute/oracle.hpp"
#include "tdroute/poisson_lab.hpp"
#include "tdroute/routing.hpp"
#include "tdroute/theta_graph.hpp"

namespace tdroute {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Shortest decimal form that parses back to exactly the same double, so
// files round-trip without drift.
std::string format_exact(double v);

// Display form: six significant digits, '.' as the decimal separator
// regardless of locale.
std::string format_display(double v);

// Accepts the canonical algorithm names plus the short command-line
// forms theta, memoryless, constmem, bose, auto.
bool algorithm_from_name(const std::string& name, Algorithm& out);

// Point files hold one point per line as two decimal reals separated by
// whitespace; '#' starts a comment line. Blank lines are skipped.
// Anything else is a ParseError.
std::vector<Point> read_points(std::istream& in);
void write_points(std::ostream& out, std::span<const Point> pts);

// Graph dumps are JSON objects {"points", "k", "parity", "successors"}:
// parity is null for a full graph, 0 or 1 for a half; successors holds
// one k-length array per vertex with null where a cone has no successor.
std::string graph_to_json(const ThetaGraph& g);
ThetaGraph graph_from_json(const std::string& text);

// {"vertices", "tags", "length", "ratio", "split_point", "status"} with
// one tag per step and split_point null when no side walk happened.
std::string trace_to_json(const RouteTrace& trace);

// JSON list of {"check", "pass", "detail"}.
std::string report_to_json(std::span<const TraceCheck> checks);

// One row per phi under the fixed header; numeric cells use the display
// form, blank where a value is undefined. An unreliable run gains a
// trailing comment row.
std::string stats_to_csv(const RatioStats& stats);

// Mirrors ExperimentConfig: {"algorithm", "lambda", "phis", "trials",
// "margin", "master_seed", "max_steps"}, each optional. Unknown keys are
// a ParseError so typos cannot silently fall back to defaults.
ExperimentConfig config_from_json(const std::string& text);

}  // namespace tdroute
