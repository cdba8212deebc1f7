#include "tdroute/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace tdroute {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kCsvHeader =
    "algorithm,phi,lambda,trials,valid_trials,mean_ratio,std_err,predicted,"
    "invalid_boundary,invalid_other";

std::string chars_of(double v, int precision) {
  char buf[64];
  std::to_chars_result r =
      precision < 0 ? std::to_chars(buf, buf + sizeof buf, v)
                    : std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general,
                                    precision);
  return std::string(buf, r.ptr);
}

[[noreturn]] void bad_graph(const std::string& what) {
  throw ParseError("graph dump: " + what);
}

double json_number(const ordered_json& j, const char* where) {
  if (!j.is_number()) throw ParseError(std::string(where) + ": expected a number");
  return j.get<double>();
}

}  // namespace

std::string format_exact(double v) { return chars_of(v, -1); }

std::string format_display(double v) { return chars_of(v, 6); }

bool algorithm_from_name(const std::string& name, Algorithm& out) {
  if (parse_algorithm(name, out)) return true;
  static constexpr std::pair<const char*, Algorithm> aliases[] = {
      {"theta", Algorithm::theta_k},
      {"memoryless", Algorithm::memoryless_negative},
      {"constmem", Algorithm::constmem_negative},
      {"bose", Algorithm::bose_negative},
      {"auto", Algorithm::theta6_auto},
  };
  for (const auto& [alias, a] : aliases) {
    if (name == alias) {
      out = a;
      return true;
    }
  }
  return false;
}

std::vector<Point> read_points(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream iss(line);
    double x = 0.0, y = 0.0;
    std::string extra;
    if (!(iss >> x >> y) || (iss >> extra)) {
      throw ParseError("point file line " + std::to_string(lineno) +
                       ": expected two reals");
    }
    pts.push_back({x, y});
  }
  return pts;
}

void write_points(std::ostream& out, std::span<const Point> pts) {
  for (const Point& p : pts) {
    out << format_exact(p.x) << ' ' << format_exact(p.y) << '\n';
  }
}

std::string graph_to_json(const ThetaGraph& g) {
  ordered_json j;
  ordered_json pts = ordered_json::array();
  for (const Point& p : g.pts) pts.push_back(ordered_json::array({p.x, p.y}));
  j["points"] = std::move(pts);
  j["k"] = g.spec.k;
  if (g.spec.kind == GraphKind::theta) {
    j["parity"] = nullptr;
  } else {
    j["parity"] = g.spec.kind == GraphKind::half_even ? 0 : 1;
  }
  ordered_json succ = ordered_json::array();
  for (int v = 0; v < g.n(); ++v) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < g.spec.k; ++c) {
      const int32_t s = g.successor_of(v, c);
      if (s < 0) {
        row.push_back(nullptr);
      } else {
        row.push_back(s);
      }
    }
    succ.push_back(std::move(row));
  }
  j["successors"] = std::move(succ);
  return j.dump();
}

ThetaGraph graph_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad_graph(e.what());
  }
  if (!j.is_object()) bad_graph("top level must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "points" && key != "k" && key != "parity" && key != "successors") {
      bad_graph("unknown key '" + key + "'");
    }
  }
  if (!j.contains("points") || !j.contains("k") || !j.contains("parity") ||
      !j.contains("successors")) {
    bad_graph("needs points, k, parity, successors");
  }
  if (!j["k"].is_number_integer()) bad_graph("k must be an integer");
  GraphSpec spec;
  spec.k = j["k"].get<int>();
  const ordered_json& par = j["parity"];
  if (par.is_null()) {
    spec.kind = GraphKind::theta;
  } else if (par.is_number_integer() && (par.get<int>() == 0 || par.get<int>() == 1)) {
    spec.kind = par.get<int>() == 0 ? GraphKind::half_even : GraphKind::half_odd;
  } else {
    bad_graph("parity must be null, 0, or 1");
  }
  if (!j["points"].is_array()) bad_graph("points must be an array");
  std::vector<Point> pts;
  pts.reserve(j["points"].size());
  for (const ordered_json& entry : j["points"]) {
    if (!entry.is_array() || entry.size() != 2) bad_graph("each point must be [x, y]");
    pts.push_back({json_number(entry[0], "graph dump: point"),
                   json_number(entry[1], "graph dump: point")});
  }
  const ordered_json& succ = j["successors"];
  if (!succ.is_array() || succ.size() != pts.size()) {
    bad_graph("successors must hold one row per point");
  }
  std::vector<int32_t> table;
  table.reserve(pts.size() * static_cast<size_t>(spec.k > 0 ? spec.k : 0));
  for (const ordered_json& row : succ) {
    if (!row.is_array() || static_cast<int>(row.size()) != spec.k) {
      bad_graph("each successor row must have k entries");
    }
    for (const ordered_json& entry : row) {
      if (entry.is_null()) {
        table.push_back(-1);
        continue;
      }
      if (!entry.is_number_integer()) bad_graph("successor entries must be null or an index");
      const int64_t v = entry.get<int64_t>();
      if (v < 0 || v > std::numeric_limits<int32_t>::max()) {
        bad_graph("successor index out of range");
      }
      table.push_back(static_cast<int32_t>(v));
    }
  }
  return graph_from_successors(std::move(pts), spec, std::move(table));
}

std::string trace_to_json(const RouteTrace& trace) {
  ordered_json j;
  j["vertices"] = trace.vertices;
  ordered_json tags = ordered_json::array();
  for (const StepRecord& step : trace.steps) tags.push_back(to_string(step.tag));
  j["tags"] = std::move(tags);
  j["length"] = trace.length;
  j["ratio"] = trace.ratio;
  if (trace.split_point < 0) {
    j["split_point"] = nullptr;
  } else {
    j["split_point"] = trace.split_point;
  }
  j["status"] = to_string(trace.status);
  return j.dump();
}

std::string report_to_json(std::span<const TraceCheck> checks) {
  ordered_json j = ordered_json::array();
  for (const TraceCheck& c : checks) {
    ordered_json entry;
    entry["check"] = c.name;
    entry["pass"] = c.pass;
    entry["detail"] = c.detail;
    j.push_back(std::move(entry));
  }
  return j.dump(2);
}

std::string stats_to_csv(const RatioStats& stats) {
  std::string out = kCsvHeader;
  out += '\n';
  auto cell = [](double v) { return std::isnan(v) ? std::string() : format_display(v); };
  long trials_total = 0;
  long invalid_total = 0;
  for (const PhiStats& row : stats.rows) {
    out += to_string(stats.algorithm);
    out += ',';
    out += format_display(row.phi);
    out += ',';
    out += format_display(row.lambda);
    out += ',';
    out += std::to_string(row.trials);
    out += ',';
    out += std::to_string(row.valid_trials);
    out += ',';
    out += cell(row.mean_ratio);
    out += ',';
    out += cell(row.std_err);
    out += ',';
    out += cell(row.predicted);
    out += ',';
    out += std::to_string(row.invalid_boundary);
    out += ',';
    out += std::to_string(row.invalid_other);
    out += '\n';
    trials_total += row.trials;
    invalid_total += row.invalid_boundary + row.invalid_other;
  }
  if (!stats.reliable) {
    out += "# unreliable: " + std::to_string(invalid_total) + " of " +
           std::to_string(trials_total) + " trials were invalid\n";
  }
  return out;
}

ExperimentConfig config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: top level must be an object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "algorithm") {
      if (!value.is_string() || !algorithm_from_name(value.get<std::string>(), cfg.algorithm)) {
        throw ParseError("config: unknown algorithm");
      }
    } else if (key == "lambda") {
      cfg.lambda = json_number(value, "config: lambda");
    } else if (key == "phis") {
      if (!value.is_array()) throw ParseError("config: phis must be an array");
      cfg.phis.clear();
      for (const ordered_json& phi : value) {
        cfg.phis.push_back(json_number(phi, "config: phis"));
      }
    } else if (key == "trials") {
      if (!value.is_number_integer()) throw ParseError("config: trials must be an integer");
      cfg.trials = value.get<int>();
    } else if (key == "margin") {
      cfg.margin = json_number(value, "config: margin");
    } else if (key == "master_seed") {
      if (!value.is_number_integer()) {
        throw ParseError("config: master_seed must be an integer");
      }
      cfg.master_seed = value.get<uint64_t>();
    } else if (key == "max_steps") {
      if (!value.is_number_integer()) throw ParseError("config: max_steps must be an integer");
      cfg.max_steps = value.get<int>();
    } else {
      throw ParseError("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace tdroute
