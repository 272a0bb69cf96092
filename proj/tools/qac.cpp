// Command-line front end. Talks to the library only through qacurve.h.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qacurve/qacurve.h"

namespace {

struct CliError {
  int code;
  std::string message;
};

void check(qac_status status) {
  if (status != QAC_OK) throw CliError{static_cast<int>(status), qac_last_error()};
}

struct GridArg {
  double lo, hi;
  size_t points;
};

GridArg parse_grid(const std::string& text, const char* flag) {
  GridArg g{};
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%zu%c", &g.lo, &g.hi, &g.points, &tail) != 3) {
    throw CliError{static_cast<int>(QAC_ERR_INVALID_ARGUMENT),
                   std::string(flag) + " expects lo:hi:points, got '" + text + "'"};
  }
  return g;
}

// Owning wrappers for the C handles.
template <class T, void (*Destroy)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};
using Graph = Handle<qac_graph, qac_graph_destroy>;
using Curve = Handle<qac_curve, qac_curve_destroy>;
using Stats = Handle<qac_stats, qac_stats_destroy>;
using Model = Handle<qac_model, qac_model_destroy>;
using Samples = Handle<qac_samples, qac_samples_destroy>;

struct Options {
  std::string model = "ising";
  std::string backend;
  std::string metric = "mean";
  std::string entity;
  std::string sweep = "cq";
  size_t chain_length = 12;
  size_t entities = 0;
  std::string cq, cc;
  std::optional<size_t> reads;
  std::optional<double> temp, k;
  double qubit_sigma = 0.0, drift_sigma = 0.0;
  size_t partitions = 10;
  uint64_t seed = 0;
  std::string dead;
  std::string out = "-";
  size_t rows = 12, cols = 12, shore = 4;
  size_t threads = 0;
  bool mcmc = false;
  size_t mcmc_sweeps = 100;
  std::string model_file;
  std::string curve_file;
};

void make_graph(const Options& o, Graph& g) {
  check(qac_graph_create_from_mask(o.rows, o.cols, o.shore, o.dead.empty() ? nullptr : o.dead.c_str(),
                                   g.out()));
}

qac_sweep_spec build_spec(const Options& o, qac_target target, qac_backend default_backend) {
  qac_sweep_spec spec;
  qac_sweep_spec_init(&spec, target);
  spec.model = o.model == "qubo" ? QAC_MODEL_QUBO : QAC_MODEL_ISING;
  spec.backend = default_backend;
  if (!o.backend.empty()) spec.backend = o.backend == "sampled" ? QAC_BACKEND_SAMPLED : QAC_BACKEND_EXACT;
  spec.metric = o.metric == "vote" ? QAC_METRIC_VOTE : QAC_METRIC_MEAN;
  spec.axis = o.sweep == "cc" ? QAC_AXIS_CC : QAC_AXIS_CQ;
  spec.chain_length = o.chain_length;
  spec.entity_count = o.entities;
  if (spec.axis == QAC_AXIS_CC && target != QAC_TARGET_QUBIT) {
    // C_c becomes the dense axis, C_q the 17-curve family.
    spec.cc_points = spec.cq_points;
    spec.cq_points = 17;
  }
  if (!o.cq.empty()) {
    const GridArg g = parse_grid(o.cq, "--cq");
    spec.cq_lo = g.lo, spec.cq_hi = g.hi, spec.cq_points = g.points;
  }
  if (!o.cc.empty()) {
    const GridArg g = parse_grid(o.cc, "--cc");
    spec.cc_lo = g.lo, spec.cc_hi = g.hi, spec.cc_points = g.points;
  }
  if (o.reads) spec.reads = *o.reads;
  std::optional<double> temperature = o.temp;
  if (o.k) temperature = 2.0 / *o.k;
  if (spec.backend == QAC_BACKEND_EXACT) {
    if (temperature) spec.exact_temperature = *temperature;
  } else if (temperature) {
    spec.device.temperature = *temperature;
  }
  spec.device.qubit_sigma = o.qubit_sigma;
  spec.device.drift_sigma = o.drift_sigma;
  spec.device.seed = o.seed;
  spec.device.allow_mcmc = o.mcmc ? 1 : 0;
  spec.device.mcmc_sweeps = o.mcmc_sweeps;
  spec.seed = o.seed;
  spec.threads = o.threads;
  return spec;
}

void run_qubit_sweep(const Options& o) {
  Graph g;
  make_graph(o, g);
  const qac_sweep_spec spec = build_spec(o, QAC_TARGET_QUBIT, QAC_BACKEND_EXACT);
  Curve c;
  check(qac_run_qubit_sweep(&spec, g.get(), c.out()));
  check(qac_curve_save(c.get(), o.out.c_str()));
}

void run_entity_sweep(const Options& o) {
  Graph g;
  make_graph(o, g);
  const qac_sweep_spec spec =
      build_spec(o, o.entity == "cell" ? QAC_TARGET_CELL : QAC_TARGET_CHAIN, QAC_BACKEND_EXACT);
  Curve c;
  check(qac_run_entity_sweep(&spec, g.get(), c.out()));
  check(qac_curve_save(c.get(), o.out.c_str()));
}

void run_stats(const Options& o) {
  Graph g;
  make_graph(o, g);
  const qac_sweep_spec spec = build_spec(o, QAC_TARGET_QUBIT, QAC_BACKEND_SAMPLED);
  Stats s;
  check(qac_run_stats(&spec, g.get(), o.partitions, s.out()));
  check(qac_stats_save(s.get(), o.out.c_str()));
}

void run_fit(const Options& o) {
  Curve c;
  check(qac_curve_load(o.curve_file.c_str(), c.out()));
  qac_fit_result fit{};
  check(qac_fit_curve(c.get(), &fit));
  if (fit.at_bound) {
    std::cerr << "qac: warning: fitted slope is at the edge of the search interval "
                 "(the curve is steeper than any sigmoid in range)\n";
  }
  std::cout << "k=" << fit.k << " rms=" << fit.rms << '\n';
}

void run_topology(const Options& o) {
  Graph g;
  make_graph(o, g);
  qac_graph_info info{};
  check(qac_graph_info_get(g.get(), &info));
  std::cout << "# rows=" << info.rows << " cols=" << info.cols << " shore=" << info.shore
            << " qubits=" << info.qubits << " working=" << info.working << " edges=" << info.edges
            << " complete_cells=" << info.complete_cells << std::endl;
  if (o.entity == "chain") {
    check(qac_graph_dump_entities(g.get(), QAC_TARGET_CHAIN, o.entities ? o.entities : 30, o.chain_length,
                                  o.seed, o.out.c_str()));
  } else if (o.entity == "cell") {
    check(qac_graph_dump_entities(g.get(), QAC_TARGET_CELL, o.entities, 0, o.seed, o.out.c_str()));
  }
}

void run_solve(const Options& o) {
  if (o.model_file.empty()) throw CliError{static_cast<int>(QAC_ERR_INVALID_ARGUMENT), "solve needs --model-file"};
  Model m;
  check(qac_model_load(o.model_file.c_str(), m.out()));
  size_t n = 0;
  check(qac_model_num_variables(m.get(), &n));
  std::optional<double> temperature = o.temp;
  if (o.k) temperature = 2.0 / *o.k;

  if (o.backend == "sampled") {
    qac_device dev;
    qac_device_init(&dev);
    if (temperature) dev.temperature = *temperature;
    dev.qubit_sigma = o.qubit_sigma;
    dev.drift_sigma = o.drift_sigma;
    dev.seed = o.seed;
    dev.allow_mcmc = o.mcmc ? 1 : 0;
    dev.mcmc_sweeps = o.mcmc_sweeps;
    Samples s;
    check(qac_sample(m.get(), &dev, o.reads.value_or(1000), s.out()));
    check(qac_samples_save(s.get(), o.out.c_str()));
    return;
  }
  std::vector<double> p(n);
  if (temperature) {
    check(qac_boltzmann_marginals(m.get(), *temperature, p.data(), n));
    std::cout << "temperature=" << *temperature << '\n';
  } else {
    double e = 0.0;
    size_t degeneracy = 0;
    check(qac_ground_states(m.get(), &e, &degeneracy, nullptr, 0));
    std::vector<int8_t> states(degeneracy * n);
    check(qac_ground_states(m.get(), nullptr, nullptr, states.data(), degeneracy));
    std::cout << "energy=" << e << " degeneracy=" << degeneracy << '\n';
    for (size_t s = 0; s < degeneracy; ++s) {
      std::cout << "state";
      for (size_t i = 0; i < n; ++i) std::cout << ' ' << static_cast<int>(states[s * n + i]);
      std::cout << '\n';
    }
    check(qac_t0_marginals(m.get(), p.data(), n));
  }
  std::cout << "p_one";
  for (double v : p) std::cout << ' ' << v;
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum annealer characterization curves: exact zero-temperature machine and emulated device"};
  app.set_config("--config", "", "key=value file supplying any flag; the command line takes precedence");
  app.require_subcommand(1);

  Options o;
  app.add_option("--model", o.model, "ising|qubo")->check(CLI::IsMember({"ising", "qubo"}));
  app.add_option("--backend", o.backend, "exact|sampled")->check(CLI::IsMember({"exact", "sampled"}));
  app.add_option("--metric", o.metric, "mean|vote")->check(CLI::IsMember({"mean", "vote"}));
  app.add_option("--entity", o.entity, "chain|cell")->check(CLI::IsMember({"chain", "cell"}));
  app.add_option("--sweep", o.sweep, "dense axis of entity sweeps: cq|cc")->check(CLI::IsMember({"cq", "cc"}));
  app.add_option("--chain-length", o.chain_length, "qubits per chain");
  app.add_option("--entities", o.entities, "number of qubits/chains/cells (0: protocol default)");
  app.add_option("--cq", o.cq, "C_q grid lo:hi:points");
  app.add_option("--cc", o.cc, "C_c grid lo:hi:points");
  app.add_option("--reads", o.reads, "reads per grid point");
  auto* temp = app.add_option("--temp", o.temp, "effective temperature");
  auto* slope = app.add_option("--k", o.k, "sigmoid slope, temperature = 2/k");
  temp->excludes(slope);
  app.add_option("--qubit-sigma", o.qubit_sigma, "per-qubit heterogeneity spread");
  app.add_option("--drift-sigma", o.drift_sigma, "per-block drift amplitude");
  app.add_option("--partitions", o.partitions, "temporal partitions for stats");
  app.add_option("--seed", o.seed, "seed for chain placement and the device");
  app.add_option("--dead", o.dead, "dead-qubit mask file");
  app.add_option("--out", o.out, "output file ('-' for stdout)");
  app.add_option("--rows", o.rows, "chimera cell rows");
  app.add_option("--cols", o.cols, "chimera cell columns");
  app.add_option("--shore", o.shore, "qubits per cell shore");
  app.add_option("--threads", o.threads, "worker threads (0: all cores)");
  app.add_flag("--mcmc", o.mcmc, "allow Metropolis sampling beyond the exact cap");
  app.add_option("--mcmc-sweeps", o.mcmc_sweeps, "Metropolis sweeps per read");
  app.add_option("--model-file", o.model_file, "model file for solve");

  auto* qubit = app.add_subcommand("qubit-sweep", "P(q=1) vs C_q for uncoupled qubits")->fallthrough();
  auto* entity = app.add_subcommand("entity-sweep", "chain or cell curve families")->fallthrough();
  auto* stats = app.add_subcommand("stats", "temporal and spatial standard deviation vs C_q")->fallthrough();
  auto* fit = app.add_subcommand("fit", "fit the sigmoid slope k to a single-column curve")->fallthrough();
  fit->add_option("curve-file", o.curve_file, "curve table")->required();
  auto* topo = app.add_subcommand("topology", "graph summary and entity dump")->fallthrough();
  auto* solve = app.add_subcommand("solve", "ground states, marginals or samples of a model file")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "qac: error: " << e.what() << '\n';
    return e.get_exit_code() ? e.get_exit_code() : 1;
  }

  try {
    if (*qubit) run_qubit_sweep(o);
    if (*entity) run_entity_sweep(o);
    if (*stats) run_stats(o);
    if (*fit) run_fit(o);
    if (*topo) run_topology(o);
    if (*solve) run_solve(o);
  } catch (const CliError& e) {
    std::cerr << "qac: error: " << e.message << '\n';
    return e.code ? e.code : 1;
  }
  return 0;
}
