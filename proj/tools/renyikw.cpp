// Copyright 2026 The renyikw Authors
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


// renyikw command-line driver. Every report is a JSON document (the sweep
// command writes CSV) carrying a "manifest" object with the command, flags,
// seed, tool version, input digests and wall-clock duration; re-running a
// manifest reproduces every other byte of the report.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "renyikw/correlations.hpp"
#include "renyikw/io.hpp"
#include "renyikw/robustness.hpp"

#ifndef RENYIKW_VERSION
#define RENYIKW_VERSION "dev"
#endif

namespace {

using namespace renyikw;
using io::Json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUsage = 64;

struct Options {
  double alpha = std::numeric_limits<double>::quiet_NaN();
  std::string state, ensemble, dims, side, out, grid, quantity = "c_alpha", kind = "haar_pure";
  std::size_t outcomes = 0, rank = 0, instances = 0;
  std::optional<std::uint64_t> seed;
  OptimizerConfig opt;
};

struct Input {
  std::string path;
  Json doc;
};

class Run {
 public:
  Run(std::string command, const CLI::App& sub, const Options& o) : command_(std::move(command)), options_(o) {
    for (const CLI::Option* opt : sub.get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help") continue;
      const auto& results = opt->results();
      flags_[opt->get_name()] = results.size() == 1 ? Json(results.front()) : Json(results);
    }
    options_.opt.master_seed = resolve_seed(o.seed);
    started_ = std::chrono::steady_clock::now();
  }

  const Options& options() const { return options_; }
  const OptimizerConfig& config() const { return options_.opt; }

  Input load(const std::string& path) {
    const std::string text = io::read_file(path);
    inputs_.push_back(Json{{"path", path}, {"sha256", io::sha256_hex(text)}});
    try {
      return {path, Json::parse(text)};
    } catch (const Json::parse_error& e) {
      throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
    }
  }

  Json manifest() const {
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
    return Json{{"command", command_},
                {"flags", flags_},
                {"master_seed", options_.opt.master_seed},
                {"version", RENYIKW_VERSION},
                {"inputs", inputs_.empty() ? Json::array() : inputs_},
                {"duration_seconds", seconds}};
  }

  void emit(Json report) const {
    report["manifest"] = manifest();
    write(report.dump(2) + "\n", options_.out);
  }

  static void write(const std::string& text, const std::string& path) {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    file << text;
  }

 private:
  static std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    const char* env = std::getenv("RENYIKW_SEED");
    if (env == nullptr || *env == '\0') return 0;
    std::uint64_t seed = 0;
    std::istringstream in(env);
    if (!(in >> seed) || !in.eof()) throw Error(ErrorKind::InvalidInput, "RENYIKW_SEED is not an unsigned integer");
    return seed;
  }

  std::string command_;
  Options options_;
  Json flags_ = Json::object();
  Json inputs_ = Json::array();
  std::chrono::steady_clock::time_point started_;
};

// ---------------------------------------------------------------------------
// Argument helpers

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidInput, what);
}

double alpha_of(const Options& o) {
  require(!std::isnan(o.alpha), "--alpha is required");
  return o.alpha;
}

Dims parse_dims(const std::string& text) {
  Dims dims;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    std::size_t pos = 0;
    unsigned long long d = 0;
    try {
      d = std::stoull(token, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    require(pos == token.size() && pos > 0 && d > 0, "--dims must be a comma list of positive integers");
    dims.push_back(static_cast<std::size_t>(d));
  }
  require(!dims.empty(), "--dims is empty");
  return dims;
}

Side bipartite_side(const Options& o) {
  if (o.side.empty() || o.side == "B") return Side::B;
  if (o.side == "A") return Side::A;
  throw Error(ErrorKind::InvalidInput, "--measure-side must be A or B for a bipartite state");
}

std::string side_name(Side s) { return s == Side::A ? "A" : "B"; }

DensityMatrix state_of(Run& run) {
  const Options& o = run.options();
  require(!o.state.empty(), "--state is required");
  DensityMatrix rho = io::density_from_json(run.load(o.state).doc);
  return o.dims.empty() ? rho : rho.with_dims(parse_dims(o.dims));
}

QEnsemble ensemble_of(Run& run) {
  require(!run.options().ensemble.empty(), "--ensemble is required");
  return io::ensemble_from_json(run.load(run.options().ensemble).doc);
}

bool is_pure_density(const DensityMatrix& rho) {
  const RealVector ev = rho.spectrum();
  return ev.size() < 2 || ev(1) <= tol::kRank;
}

Json ensemble_json(const std::vector<WeightedPureState>& members) {
  Json out = Json::array();
  for (const auto& m : members) out.push_back(Json{{"p", m.p}, {"state", io::to_json(m.state)}});
  return out;
}

Json kw_json(const KwReport& r) {
  return Json{{"alpha", r.alpha},
              {"measure_side", "E"},
              {"c_alpha_AE", r.c_alpha_AE},
              {"s_alpha_A", r.s_alpha_A},
              {"eof_alpha_AB", r.eof_alpha_AB},
              {"gap", r.gap},
              {"s_von_neumann_A", r.s_von_neumann_A},
              {"c_alpha_report", io::to_json(r.c_alpha_report)},
              {"eof_report", io::to_json(r.eof_report)}};
}

// A tripartite pure state, or a bipartite state purified with E appended.
PureState tripartite_of(Run& run) {
  const Options& o = run.options();
  require(!o.state.empty(), "--state is required");
  const Input in = run.load(o.state);
  if (io::is_pure(in.doc)) {
    PureState psi = io::pure_from_json(in.doc);
    if (!o.dims.empty()) psi = PureState::from_vector(psi.amplitudes(), parse_dims(o.dims));
    if (psi.dims().size() == 3) return psi;
    if (psi.dims().size() == 2) return purify(psi.density());
    throw Error(ErrorKind::DimMismatch, "state must declare dims (A, B, E) or (A, B)");
  }
  DensityMatrix rho = io::density_from_json(in.doc);
  if (!o.dims.empty()) rho = rho.with_dims(parse_dims(o.dims));
  check_bipartite(rho.dims());
  return purify(rho);
}

// ---------------------------------------------------------------------------
// Commands

void cmd_entropy(Run& run) {
  const double alpha = alpha_of(run.options());
  check_entropy_alpha(alpha);
  const DensityMatrix rho = state_of(run);
  run.emit(Json{{"alpha", alpha}, {"dims", rho.dims()}, {"value", renyi_quantum(rho, alpha)}});
}

void cmd_qjsd(Run& run) {
  const double alpha = alpha_of(run.options());
  check_correlation_alpha(alpha);
  const QEnsemble xi = ensemble_of(run);
  run.emit(Json{{"alpha", alpha}, {"members", xi.size()}, {"value", qjsd(xi, alpha)}});
}

void cmd_calpha(Run& run) {
  const Options& o = run.options();
  const double alpha = alpha_of(o);
  check_correlation_alpha(alpha);
  const Side side = bipartite_side(o);
  const DensityMatrix rho = state_of(run);
  check_bipartite(rho.dims());
  const CorrelationValue c = c_alpha(rho, side, alpha, run.config(), o.outcomes);
  const DensityMatrix unmeasured = partial_trace(rho, {side == Side::A ? std::size_t{1} : std::size_t{0}});
  // pure inputs: both readings of the pure-state value are reported
  run.emit(Json{{"alpha", alpha},
                {"measure_side", side_name(side)},
                {"value", c.value},
                {"input_pure", is_pure_density(rho)},
                {"s_alpha_unmeasured", renyi_quantum(unmeasured, alpha)},
                {"s_von_neumann_unmeasured", renyi_quantum(unmeasured, 1.0)},
                {"povm", io::to_json(*c.povm)},
                {"opt_report", io::to_json(c.opt_report)}});
}

void cmd_eof(Run& run) {
  const Options& o = run.options();
  const double alpha = alpha_of(o);
  check_correlation_alpha(alpha);
  const DensityMatrix rho = state_of(run);
  check_bipartite(rho.dims());
  const CorrelationValue e = eof_alpha(rho, alpha, run.config(), o.outcomes);
  run.emit(Json{{"alpha", alpha},
                {"value", e.value},
                {"input_pure", is_pure_density(rho)},
                {"s_alpha_A", renyi_quantum(partial_trace(rho, {0}), alpha)},
                {"ensemble", ensemble_json(e.ensemble)},
                {"opt_report", io::to_json(e.opt_report)}});
}

void cmd_discord(Run& run) {
  const Options& o = run.options();
  const Side side = bipartite_side(o);
  const DensityMatrix rho = state_of(run);
  check_bipartite(rho.dims());
  const CorrelationValue j = c_alpha(rho, side, 1.0, run.config(), o.outcomes);
  const double mi = mutual_information(rho);
  run.emit(Json{{"measure_side", side_name(side)},
                {"mutual_information", mi},
                {"classical_correlation", j.value},
                {"discord", mi - j.value},
                {"povm", io::to_json(*j.povm)},
                {"opt_report", io::to_json(j.opt_report)}});
}

void cmd_kw_verify(Run& run) {
  const Options& o = run.options();
  const double alpha = alpha_of(o);
  check_correlation_alpha(alpha);
  require(o.side.empty() || o.side == "E", "kw-verify measures E; --measure-side must be E");
  const PureState psi = tripartite_of(run);
  run.emit(kw_json(kw_verify(psi, alpha, run.config(), o.outcomes)));
}

void cmd_discriminate(Run& run) {
  const QEnsemble xi = ensemble_of(run);
  const DiscriminationResult r = p_success(xi, run.config());
  Json report{{"p_success", r.p_success}};
  report["helstrom_value"] = r.helstrom_value ? Json(*r.helstrom_value) : Json();
  report["optimal_povm"] = io::to_json(r.optimal_povm);
  report["opt_report"] = io::to_json(r.opt_report);
  run.emit(std::move(report));
}

void cmd_robustness(Run& run) {
  const Options& o = run.options();
  require(!o.state.empty(), "--state is required");
  const Input in = run.load(o.state);
  if (io::is_pure(in.doc)) {
    PureState psi = io::pure_from_json(in.doc);
    if (!o.dims.empty()) psi = PureState::from_vector(psi.amplitudes(), parse_dims(o.dims));
    const RobustnessValue r = robustness_pure(psi);
    const HalfLemmaCheck h = check_half_lemma(psi);
    run.emit(Json{{"r_g", r.r_g}, {"lr_g", r.lr_g}, {"s_half_A", h.s_half}, {"diff", h.diff}});
    return;
  }
  // mixed inputs: the alpha = 1/2 roof against the roof of LR_g
  DensityMatrix rho = io::density_from_json(in.doc);
  if (!o.dims.empty()) rho = rho.with_dims(parse_dims(o.dims));
  check_bipartite(rho.dims());
  const RoofCheck r = eof_half_roof_check(rho, run.config(), o.outcomes);
  run.emit(Json{{"eof_half", r.eof_half}, {"lgr_roof", r.lgr_roof}, {"diff", r.diff}});
}

void cmd_psuc_bound(Run& run) {
  const Options& o = run.options();
  require(o.state.empty() != o.ensemble.empty(), "psuc-bound takes exactly one of --ensemble or --state");
  if (!o.ensemble.empty()) {
    const PsucBoundCheck c = check_psuc_bound(ensemble_of(run), run.config());
    run.emit(Json{{"s_half_avg", c.s_half_avg},
                  {"neg_log_psuc", c.neg_log_psuc},
                  {"slack", c.slack},
                  {"bound_holds", c.slack >= -1e-5},
                  {"s_half_joint", c.s_half_joint},
                  {"joint_slack", c.joint_slack},
                  {"p_success", c.discrimination.p_success},
                  {"opt_report", io::to_json(c.discrimination.opt_report)}});
    return;
  }
  const CapacityBoundCheck c = check_single_copy_capacity_bound(tripartite_of(run), run.config(), o.outcomes);
  run.emit(Json{{"c_half", c.c_half},
                {"neg_log_psuc", c.neg_log_psuc},
                {"eof_half", c.eof_half},
                {"rhs", c.rhs},
                {"slack", c.slack},
                {"bound_holds", c.slack >= -2e-3},
                {"s_half_A", c.s_half_a}});
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ':')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    require(pos == token.size() && pos > 0, "--grid must be start:stop:step");
    parts.push_back(v);
  }
  require(parts.size() == 3, "--grid must be start:stop:step");
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(start > 0.0 && start <= stop && stop < 1.0 && step > 0.0)) {
    throw Error(ErrorKind::InvalidAlpha, "grid must satisfy 0 < start <= stop < 1 and step > 0");
  }
  std::vector<double> alphas;
  for (std::size_t k = 0;; ++k) {
    const double a = std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12;
    if (a > stop + 1e-12) break;
    alphas.push_back(a);
  }
  return alphas;
}

void cmd_sweep(Run& run) {
  const Options& o = run.options();
  const std::vector<double> alphas = parse_grid(o.grid);
  const std::string& q = o.quantity;
  require(q == "c_alpha" || q == "eof" || q == "kw", "--quantity must be c_alpha, eof or kw");
  require(o.state.empty() != (o.instances == 0), "sweep takes either --state or --instances");

  // instances: (seed, state); random instances are Haar pure states on --dims
  std::vector<std::pair<std::uint64_t, DensityMatrix>> bipartite;
  std::vector<std::pair<std::uint64_t, PureState>> tripartite;
  const std::uint64_t master = run.config().master_seed;
  if (q == "kw") {
    if (!o.state.empty()) {
      tripartite.emplace_back(master, tripartite_of(run));
    } else {
      require(!o.dims.empty(), "--instances needs --dims");
      for (std::size_t i = 0; i < o.instances; ++i) tripartite.emplace_back(master + i, random_pure<double>(parse_dims(o.dims), master + i));
    }
  } else {
    if (!o.state.empty()) {
      bipartite.emplace_back(master, state_of(run));
    } else {
      require(!o.dims.empty(), "--instances needs --dims");
      for (std::size_t i = 0; i < o.instances; ++i) {
        bipartite.emplace_back(master + i, random_pure<double>(parse_dims(o.dims), master + i).density());
      }
    }
    for (const auto& inst : bipartite) check_bipartite(inst.second.dims());
  }

  std::ostringstream csv;
  csv << "alpha,instance_seed,quantity,value,gap,converged\n";
  auto row = [&](double alpha, std::uint64_t seed, double value, std::optional<double> gap, bool converged) {
    csv << io::format_double(alpha) << ',' << seed << ',' << q << ',' << io::format_double(value) << ','
        << (gap ? io::format_double(*gap) : std::string()) << ',' << (converged ? "true" : "false") << '\n';
  };
  for (const double alpha : alphas) {
    for (const auto& [seed, psi] : tripartite) {
      const KwReport r = kw_verify(psi, alpha, run.config(), o.outcomes);
      row(alpha, seed, r.c_alpha_AE, r.gap, r.c_alpha_report.converged && r.eof_report.converged);
    }
    for (const auto& [seed, rho] : bipartite) {
      const CorrelationValue v = q == "c_alpha" ? c_alpha(rho, Side::B, alpha, run.config(), o.outcomes)
                                                : eof_alpha(rho, alpha, run.config(), o.outcomes);
      // pure inputs have the closed form S_alpha(rho_A) for both quantities
      std::optional<double> gap;
      if (is_pure_density(rho)) gap = v.value - renyi_quantum(partial_trace(rho, {0}), alpha);
      row(alpha, seed, v.value, gap, v.opt_report.converged);
    }
  }
  Run::write(csv.str(), o.out);
  const std::string manifest = Json{{"manifest", run.manifest()}}.dump(2) + "\n";
  if (o.out.empty()) {
    std::cerr << manifest;
  } else {
    Run::write(manifest, o.out + ".manifest.json");
  }
}

void cmd_random(Run& run) {
  const Options& o = run.options();
  require(!o.dims.empty(), "--dims is required");
  const Dims dims = parse_dims(o.dims);
  require(o.kind == "haar_pure" || o.kind == "ginibre_mixed", "--kind must be haar_pure or ginibre_mixed");
  const RandomKind kind = o.kind == "haar_pure" ? RandomKind::HaarPure : RandomKind::GinibreMixed;
  const std::size_t rank = o.rank == 0 ? product(dims) : o.rank;
  Json state = std::visit([](const auto& s) { return io::to_json(s); },
                          random_state<double>(kind, dims, rank, run.config().master_seed));
  state["kind"] = o.kind;
  run.emit(std::move(state));
}

// ---------------------------------------------------------------------------

struct Command {
  const char* name;
  const char* help;
  void (*run)(Run&);
  bool alpha, state, ensemble, side, optimizer;
};

constexpr Command kCommands[] = {
    {"entropy", "Renyi entropy S_alpha of a state", cmd_entropy, true, true, false, false, false},
    {"qjsd", "Renyi Jensen-Shannon divergence of an ensemble", cmd_qjsd, true, false, true, false, false},
    {"calpha", "measurement-induced classical correlation C_alpha", cmd_calpha, true, true, false, true, true},
    {"eof", "Renyi entanglement of formation", cmd_eof, true, true, false, false, true},
    {"discord", "mutual information, J(A:B) and quantum discord", cmd_discord, false, true, false, true, true},
    {"kw-verify", "both sides of the Renyi Koashi-Winter relation", cmd_kw_verify, true, true, false, true, true},
    {"discriminate", "optimal success probability of state discrimination", cmd_discriminate, false, false, true,
     false, true},
    {"robustness", "generalized robustness (pure) or the LR_g roof check (mixed)", cmd_robustness, false, true,
     false, false, true},
    {"psuc-bound", "S_1/2 discrimination bound (ensemble) or its capacity form (tripartite state)", cmd_psuc_bound,
     false, true, true, false, true},
    {"sweep", "CSV sweep of a quantity over an alpha grid", cmd_sweep, false, true, false, false, true},
    {"random", "write a seeded random state as JSON", cmd_random, false, false, false, false, false},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renyi entropic correlations of finite-dimensional quantum states", "renyikw"};
  app.set_version_flag("--version", RENYIKW_VERSION);
  app.require_subcommand(1);

  Options o;
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& c : kCommands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    if (c.alpha) sub->add_option("--alpha", o.alpha, "Renyi order");
    if (c.state) sub->add_option("--state", o.state, "state JSON file");
    if (c.ensemble) sub->add_option("--ensemble", o.ensemble, "ensemble JSON file");
    if (c.state || std::string(c.name) == "random") sub->add_option("--dims", o.dims, "subsystem dims, e.g. 2,2,4");
    if (c.side) sub->add_option("--measure-side", o.side, "measured factor: A, B or E")->check(CLI::IsMember({"A", "B", "E"}));
    if (c.optimizer || std::string(c.name) == "random") sub->add_option("--seed", o.seed, "master seed (default: $RENYIKW_SEED or 0)");
    if (c.optimizer) {
      sub->add_option("--outcomes", o.outcomes, "POVM outcomes / ensemble members (0 = d^2)");
      sub->add_option("--restarts", o.opt.restarts, "optimizer restarts");
      sub->add_option("--max-iters", o.opt.max_iters, "simplex iterations per restart and stage");
      sub->add_option("--tol", o.opt.objective_tol, "objective tolerance");
      sub->add_flag("--parallel", o.opt.parallel, "run restarts on all hardware threads");
    }
    sub->add_option("--out", o.out, "output path (default: stdout)");
    subs.emplace_back(sub, &c);
  }
  for (auto& [sub, c] : subs) {
    if (std::string(c->name) == "sweep") {
      sub->add_option("--grid", o.grid, "alpha grid start:stop:step inside (0,1)")->required();
      sub->add_option("--quantity", o.quantity, "c_alpha, eof or kw");
      sub->add_option("--instances", o.instances, "number of seeded Haar pure instances on --dims");
    }
    if (std::string(c->name) == "random") {
      sub->add_option("--kind", o.kind, "haar_pure or ginibre_mixed");
      sub->add_option("--rank", o.rank, "rank of ginibre_mixed states (default: full)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    for (auto& [sub, c] : subs) {
      if (!sub->parsed()) continue;
      Run run(c->name, *sub, o);
      c->run(run);
    }
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_validation_error(e.kind()) ? kExitValidation : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
