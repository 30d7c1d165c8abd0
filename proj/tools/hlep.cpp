// Copyright 2026 The hlep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: ep-map, evolve, sweep, validate.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlep/ep_atlas.hpp"
#include "hlep/evolution.hpp"
#include "hlep/io.hpp"
#include "hlep/validation.hpp"

namespace {

using nlohmann::json;
using namespace hlep;

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kValidation = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct RunConfig {
  std::string out = "-";
  std::string format = "csv";
  int steps_per_unit_time = 1000;
  double tol = 1e-8;
  std::uint64_t seed = 20260101;
  unsigned threads = 0;

  std::string kind = "hopping";
  double q0 = 1.0;
  std::string q0_grid;
  int chi = 1;
  double total_time = kUnset;
  double t1 = kUnset;
  double t2 = kUnset;
  double alpha_i = 1e-5;
  double alpha_ii = 10.0;
  double alpha_max = 3.0;
  double omega = 1.0;
  std::string initial = "mixed";
  std::string history;

  std::string alpha_grid = "0.1:3:50";
  std::string theta_grid = "0.05:3.09159265358979:50";
  std::string q_grid = "0:1:41";
  std::string orders = "2,3,4";
  int line_samples = 25;
};

// One config key, its flag, and how to move the value around.
struct Field {
  std::string key;
  std::string flag;
  std::function<void(RunConfig&, const json&)> load;
  std::function<void(RunConfig&, const RunConfig&)> copy;
};

template <class T>
Field field(std::string key, std::string flag, T RunConfig::*member) {
  return Field{
      key, flag,
      [key, member](RunConfig& c, const json& j) {
        try {
          c.*member = j.get<T>();
        } catch (const json::exception&) {
          throw UsageError("config key '" + key + "' has the wrong type");
        }
      },
      [member](RunConfig& dst, const RunConfig& src) { dst.*member = src.*member; }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      field("out", "--out", &RunConfig::out),
      field("format", "--format", &RunConfig::format),
      field("steps_per_unit_time", "--steps-per-unit-time",
            &RunConfig::steps_per_unit_time),
      field("tol", "--tol", &RunConfig::tol),
      field("seed", "--seed", &RunConfig::seed),
      field("threads", "--threads", &RunConfig::threads),
      field("kind", "--kind", &RunConfig::kind),
      field("q0", "--q0", &RunConfig::q0),
      field("q0_grid", "--q0-grid", &RunConfig::q0_grid),
      field("chi", "--chi", &RunConfig::chi),
      field("T", "--T", &RunConfig::total_time),
      field("T1", "--T1", &RunConfig::t1),
      field("T2", "--T2", &RunConfig::t2),
      field("alpha_i", "--alpha-i", &RunConfig::alpha_i),
      field("alpha_ii", "--alpha-ii", &RunConfig::alpha_ii),
      field("alpha_max", "--alpha-max", &RunConfig::alpha_max),
      field("omega", "--omega", &RunConfig::omega),
      field("initial", "--initial", &RunConfig::initial),
      field("history", "--history", &RunConfig::history),
      field("alpha_grid", "--alpha-grid", &RunConfig::alpha_grid),
      field("theta_grid", "--theta-grid", &RunConfig::theta_grid),
      field("q_grid", "--q-grid", &RunConfig::q_grid),
      field("orders", "--orders", &RunConfig::orders),
      field("line_samples", "--line-samples", &RunConfig::line_samples),
  };
  return f;
}

std::string num(double v) { return format_number(v); }

void require(bool ok, const std::string& name, double value,
             const std::string& range) {
  if (!ok) {
    throw UsageError(name + " = " + num(value) + " is outside the valid range " +
                     range);
  }
}

GridAxis parse_axis(const std::string& flag, const std::string& text,
                    double lo, double hi, const std::string& range) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  GridAxis axis;
  try {
    if (parts.size() != 3) throw std::invalid_argument("shape");
    std::size_t used = 0;
    axis.min = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("start");
    axis.max = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("stop");
    axis.count = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw UsageError(flag + " = '" + text +
                     "' is not of the form start:stop:count with start, stop in " +
                     range + " and count >= 0");
  }
  require(axis.count >= 0, flag + " count", axis.count, "[0, inf)");
  require(axis.min >= lo && axis.min <= hi, flag + " start", axis.min, range);
  require(axis.max >= lo && axis.max <= hi, flag + " stop", axis.max, range);
  require(axis.max >= axis.min, flag + " stop", axis.max,
          "[start, " + (hi == INFINITY ? std::string("inf") : num(hi)) + "]");
  return axis;
}

void check_common(const RunConfig& c) {
  if (c.format != "csv" && c.format != "json") {
    throw UsageError("--format = '" + c.format + "' is not one of csv|json");
  }
  require(c.steps_per_unit_time >= 100, "--steps-per-unit-time",
          c.steps_per_unit_time, "[100, inf)");
  require(c.tol > 0.0 && std::isfinite(c.tol), "--tol", c.tol, "(0, inf)");
}

// Output sink: a file, or stdout for "-".
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw UsageError("--out = '" + path + "' cannot be opened for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool is_stdout() const { return !file_; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

ProtocolParams protocol(const RunConfig& c, TrajectoryKind kind) {
  ProtocolParams p;
  const bool has_t = !std::isnan(c.total_time);
  const bool has_t1 = !std::isnan(c.t1);
  const bool has_t2 = !std::isnan(c.t2);
  if (has_t) {
    p.total_time = c.total_time;
    p.t1 = has_t1 ? c.t1 : 0.2 * c.total_time;
    p.t2 = has_t2 ? c.t2 : 0.6 * c.total_time;
  } else {
    if (has_t1) p.t1 = c.t1;
    if (has_t2) p.t2 = c.t2;
    if (has_t1 || has_t2) p.total_time = 2.0 * p.t1 + p.t2;
  }
  p.alpha_i = c.alpha_i;
  p.alpha_ii = c.alpha_ii;
  p.alpha_max = c.alpha_max;
  p.omega = c.omega;

  require(p.total_time > 0.0 && std::isfinite(p.total_time), "--T", p.total_time,
          "(0, inf)");
  require(p.omega > 0.0 && std::isfinite(p.omega), "--omega", p.omega, "(0, inf)");
  require(p.alpha_max >= 0.0, "--alpha-max", p.alpha_max, "[0, inf)");
  if (kind == TrajectoryKind::hopping) {
    require(p.t1 > 0.0 && std::isfinite(p.t1), "--T1", p.t1, "(0, inf)");
    require(p.t2 > 0.0 && std::isfinite(p.t2), "--T2", p.t2, "(0, inf)");
    require(p.alpha_i >= 0.0, "--alpha-i", p.alpha_i, "[0, inf)");
    require(p.alpha_ii >= 0.0, "--alpha-ii", p.alpha_ii, "[0, inf)");
    const double expected = 2.0 * p.t1 + p.t2;
    if (std::abs(p.total_time - expected) > 1e-9 * expected) {
      throw UsageError("--T = " + num(p.total_time) +
                       " must equal 2*T1 + T2 = " + num(expected) +
                       " for the hopping trajectory");
    }
  }
  return p;
}

Chirality chirality(const RunConfig& c) {
  if (c.chi != 1 && c.chi != -1) {
    throw UsageError("--chi = " + std::to_string(c.chi) + " is not one of +1|-1");
  }
  return chirality_from_int(c.chi);
}

TrajectoryKind kind_of(const std::string& name) {
  if (name == "tilted") return TrajectoryKind::tilted;
  if (name == "flat") return TrajectoryKind::flat;
  if (name == "hopping") return TrajectoryKind::hopping;
  throw UsageError("--kind = '" + name + "' is not one of tilted|flat|hopping");
}

DensityMatrix initial_state(const RunConfig& c) {
  if (c.initial == "mixed") return maximally_mixed();
  try {
    return projector(basis_state_from_string(c.initial));
  } catch (const DomainError&) {
    throw UsageError("--initial = '" + c.initial +
                     "' is not one of mixed|plus|minus|up|down");
  }
}

IntegrateOptions integrate_options(const RunConfig& c) {
  IntegrateOptions o;
  o.steps_per_unit_time = c.steps_per_unit_time;
  return o;
}

// ---------------------------------------------------------------- ep-map

std::vector<int> parse_orders(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok != "2" && tok != "3" && tok != "4") {
      throw UsageError("--orders = '" + text +
                       "' must be a comma-separated subset of {2, 3, 4}");
    }
    out.push_back(tok[0] - '0');
  }
  return out;
}

int cmd_ep_map(const RunConfig& c) {
  check_common(c);
  const ScanGrid grid{parse_axis("--alpha-grid", c.alpha_grid, 0.0, INFINITY, "[0, inf)"),
                      parse_axis("--theta-grid", c.theta_grid, 0.0, pi, "[0, pi]"),
                      parse_axis("--q-grid", c.q_grid, 0.0, 1.0, "[0, 1]")};
  const auto orders = parse_orders(c.orders);
  require(c.line_samples >= 0, "--line-samples", c.line_samples, "[0, inf)");
  const bool empty = grid.alpha.count == 0 || grid.theta.count == 0 || grid.q.count == 0;

  std::vector<AtlasRow> rows;
  std::map<std::string, int> counts;
  double max_dev = 0.0;
  int warnings = 0;
  std::ostringstream scans;

  if (!empty) {
    auto add = [&](const AtlasPoint& p) {
      rows.push_back(atlas_row(p, c.tol));
      ++counts[rows.back().branch];
    };
    add(fourth_order_point());
    for (int i = 0; i < c.line_samples; ++i) {
      const double a = c.line_samples == 1
                           ? third_order_alpha_min
                           : third_order_alpha_min + (third_order_alpha_max -
                                                      third_order_alpha_min) *
                                                         i / (c.line_samples - 1.0);
      const auto [l1, l2] = third_order_line(a);
      add(l1);
      add(l2);
    }
    for (double a : grid.alpha.values()) {
      for (double t : grid.theta.values()) {
        for (const auto& p : second_order_surfaces(a, t)) {
          if (p.valid) add(p);
        }
      }
      if (a > 1.0) add(AtlasPoint{a, pi / 2.0, 0.0, Branch::trivial_line, true});
    }

    ScanOptions opt;
    opt.rank_tol = c.tol;
    opt.threads = c.threads;
    for (int order : orders) {
      // Order 4 frees all three parameters, so the nodes only seed Newton
      // and a coarse version of the grid is enough.
      ScanGrid g = grid;
      if (order == 4) {
        for (GridAxis* axis : {&g.alpha, &g.theta, &g.q}) {
          axis->count = std::min(axis->count, 10);
        }
      }
      const ScanResult res = scan_numeric(g, order, opt);
      const CrossValidation cv = cross_validate(g, order, res);
      const std::string label = "numeric-order-" + std::to_string(order);
      int flagged = 0;
      for (const auto& r : res.records) {
        rows.push_back(atlas_row(r, label));
        if (r.ill_conditioned) ++flagged;
      }
      counts[label] += static_cast<int>(res.records.size());
      max_dev = std::max({max_dev, cv.max_numeric_deviation, cv.max_analytic_deviation});
      warnings += (cv.numeric - cv.numeric_matched) +
                  (cv.analytic - cv.analytic_matched) + flagged;
      scans << "  " << label << ": " << res.records.size() << " records, "
            << res.cells << " cells, " << res.not_converged << " skipped, "
            << res.out_of_range << " out of range, " << cv.numeric_matched << '/'
            << cv.numeric << " numeric matched, " << cv.analytic_matched << '/'
            << cv.analytic << " analytic matched, " << flagged << " flagged\n";
    }
  }

  Sink sink(c.out);
  if (c.format == "csv") {
    write_atlas_csv(sink.stream(), rows);
  } else {
    write_atlas_json(sink.stream(), rows);
  }
  std::ostream& log = sink.is_stdout() ? std::cerr : std::cout;
  log << "ep-map summary\n";
  for (const char* b : {"fourth-order-point", "third-order-line-1", "third-order-line-2",
                        "surface-q1", "surface-q2", "trivial-line", "numeric-order-2",
                        "numeric-order-3", "numeric-order-4"}) {
    log << "  " << b << ": " << counts[b] << '\n';
  }
  log << scans.str();
  log << "  max analytic-numeric deviation: " << num(max_dev) << '\n';
  log << "  warnings: " << warnings << '\n';
  return kOk;
}

// ---------------------------------------------------------------- evolve

int cmd_evolve(const RunConfig& c) {
  check_common(c);
  const TrajectoryKind kind = kind_of(c.kind);
  if (!c.q0_grid.empty()) {
    throw UsageError("--q0-grid is only valid for sweep; use --q0 with evolve");
  }
  require(c.q0 >= 0.0 && c.q0 <= 1.0, "--q0", c.q0, "[0, 1]");
  const Chirality chi = chirality(c);
  const ProtocolParams pp = protocol(c, kind);
  const DensityMatrix rho_i = initial_state(c);

  const Trajectory traj = make_protocol(kind, c.q0, chi, pp);
  const EvolutionResult res = integrate(traj, rho_i, integrate_options(c));
  EvolveSummary s{SweepRow{kind, c.q0, chi, traj.total_time(), fidelity(res, chi, true),
                           fidelity(res, chi, false), res.probability(), {}},
                  res.final_state.matrix(), res.diagnostics};

  Sink sink(c.out);
  if (c.format == "csv") {
    write_evolve_csv(sink.stream(), s);
  } else {
    write_evolve_json(sink.stream(), s);
  }
  if (!c.history.empty()) {
    Sink hist(c.history);
    if (c.format == "csv") {
      write_history_csv(hist.stream(), res.history);
    } else {
      write_history_json(hist.stream(), res.history);
    }
  }
  return kOk;
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(const RunConfig& c) {
  check_common(c);
  std::vector<TrajectoryKind> kinds;
  if (c.kind == "all") {
    kinds = {TrajectoryKind::tilted, TrajectoryKind::flat, TrajectoryKind::hopping};
  } else if (c.kind == "tilted" || c.kind == "flat" || c.kind == "hopping") {
    kinds = {kind_of(c.kind)};
  } else {
    throw UsageError("--kind = '" + c.kind + "' is not one of tilted|flat|hopping|all");
  }
  std::vector<double> grid;
  if (c.q0_grid.empty()) {
    grid = GridAxis{0.0, 1.0, 11}.values();
  } else {
    grid = parse_axis("--q0-grid", c.q0_grid, 0.0, 1.0, "[0, 1]").values();
  }
  const Chirality chi = chirality(c);
  const DensityMatrix rho_i = initial_state(c);

  std::vector<SweepRow> rows;
  for (auto k : kinds) {
    const auto part = sweep_q0(k, grid, chi, protocol(c, k), integrate_options(c),
                               rho_i, c.threads, true);
    rows.insert(rows.end(), part.begin(), part.end());
  }

  Sink sink(c.out);
  if (c.format == "csv") {
    write_sweep_csv(sink.stream(), rows);
  } else {
    write_sweep_json(sink.stream(), rows);
  }
  int failed = 0;
  for (const auto& r : rows) {
    if (r.error.empty()) continue;
    ++failed;
    std::cerr << "error: " << to_string(r.kind) << " q0 = " << num(r.q0) << ": "
              << r.error << '\n';
  }
  return failed ? kNumerical : kOk;
}

// ---------------------------------------------------------------- validate

int cmd_validate(const RunConfig& c) {
  check_common(c);
  ValidationOptions opt;
  opt.seed = c.seed;
  opt.rank_tol = c.tol;
  opt.steps_per_unit_time = c.steps_per_unit_time;
  const ValidationReport rep = run_validation(opt);

  Sink sink(c.out);
  std::ostream& os = sink.stream();
  if (c.format == "csv") {
    os << "suite,passed,detail\n";
    for (const auto& s : rep.suites) {
      os << s.name << ',' << (s.passed ? "true" : "false") << ",\"" << s.detail
         << "\"\n";
    }
  } else {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& s : rep.suites) {
      arr.push_back({{"suite", s.name}, {"passed", s.passed}, {"detail", s.detail}});
    }
    os << arr.dump(2) << '\n';
  }
  std::ostream& log = sink.is_stdout() ? std::cerr : std::cout;
  for (const auto& s : rep.suites) {
    log << (s.passed ? "PASS " : "FAIL ") << s.name << '\n';
  }
  return rep.passed() ? kOk : kValidation;
}

// ---------------------------------------------------------------- wiring

void add_common(CLI::App* sub, RunConfig& c, std::string& config_path) {
  sub->add_option("--config", config_path, "JSON config file; flags override it");
  sub->add_option("--out", c.out, "Output path, '-' for stdout");
  sub->add_option("--format", c.format, "csv|json");
  sub->add_option("--steps-per-unit-time", c.steps_per_unit_time,
                  "RK4 steps per unit time (>= 100)");
  sub->add_option("--tol", c.tol, "Rank tolerance for the Jordan classification");
  sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

void add_protocol(CLI::App* sub, RunConfig& c) {
  sub->add_option("--kind", c.kind, "tilted|flat|hopping");
  sub->add_option("--q0", c.q0, "Postselection amplitude q0 in [0, 1]");
  sub->add_option("--q0-grid", c.q0_grid, "start:stop:count");
  sub->add_option("--chi", c.chi, "+1|-1");
  sub->add_option("--T", c.total_time, "Total time (hopping: 2*T1 + T2)");
  sub->add_option("--T1", c.t1, "Hopping rotation time (default 0.2 T)");
  sub->add_option("--T2", c.t2, "Hopping dwell time (default 0.6 T)");
  sub->add_option("--alpha-i", c.alpha_i, "Hopping alpha during rotations");
  sub->add_option("--alpha-ii", c.alpha_ii, "Hopping alpha at the fixed point");
  sub->add_option("--alpha-max", c.alpha_max, "Peak alpha of tilted/flat loops");
  sub->add_option("--omega", c.omega, "Qubit frequency (> 0)");
  sub->add_option("--initial", c.initial, "mixed|plus|minus|up|down");
}

RunConfig merge(const RunConfig& from_flags, const std::string& config_path,
                const CLI::App& sub) {
  if (config_path.empty()) return from_flags;
  std::ifstream in(config_path);
  if (!in) throw UsageError("--config = '" + config_path + "' cannot be opened");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("--config = '" + config_path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw UsageError("--config must hold a JSON object");

  RunConfig merged;
  for (const auto& [key, value] : j.items()) {
    const Field* f = nullptr;
    for (const auto& cand : fields()) {
      if (cand.key == key) f = &cand;
    }
    if (!f) throw UsageError("config key '" + key + "' is not recognised");
    f->load(merged, value);
  }
  for (const auto& f : fields()) {
    const CLI::Option* opt = nullptr;
    try {
      opt = sub.get_option(f.flag);
    } catch (const CLI::OptionNotFound&) {
      continue;
    }
    if (opt->count() > 0) f.copy(merged, from_flags);
  }
  return merged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid-Liouvillian exceptional points and chiral state conversion"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hlep 0.1.0");

  RunConfig cfg;
  std::string config_path;

  auto* ep = app.add_subcommand("ep-map", "Export closed-form and numeric degeneracies");
  add_common(ep, cfg, config_path);
  ep->add_option("--alpha-grid", cfg.alpha_grid, "start:stop:count");
  ep->add_option("--theta-grid", cfg.theta_grid, "start:stop:count");
  ep->add_option("--q-grid", cfg.q_grid, "start:stop:count (Newton seeds)");
  ep->add_option("--orders", cfg.orders, "Target orders, e.g. 2,3,4");
  ep->add_option("--line-samples", cfg.line_samples, "Samples per third-order line");

  auto* ev = app.add_subcommand("evolve", "Integrate one protocol");
  add_common(ev, cfg, config_path);
  add_protocol(ev, cfg);
  ev->add_option("--history", cfg.history, "Write the trace history to this path");

  auto* sw = app.add_subcommand("sweep", "Sweep q0 for one or all families");
  add_common(sw, cfg, config_path);
  add_protocol(sw, cfg);

  auto* va = app.add_subcommand("validate", "Run the invariant suites");
  add_common(va, cfg, config_path);
  va->add_option("--seed", cfg.seed, "Seed for the random-input checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const RunConfig c = merge(cfg, config_path, *sub);
    if (sub == ep) return cmd_ep_map(c);
    if (sub == ev) return cmd_evolve(c);
    if (sub == sw) return cmd_sweep(c);
    return cmd_validate(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IntegrationFault& e) {
    std::cerr << "numerical fault at t = " << format_number(e.time()) << ": "
              << e.what() << '\n';
    return kNumerical;
  } catch (const UndefinedFidelity& e) {
    std::cerr << "numerical fault: " << e.what() << '\n';
    return kNumerical;
  } catch (const SweepError& e) {
    std::cerr << "numerical fault: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical fault: " << e.what() << '\n';
    return kNumerical;
  }
}
