#include "qacurve/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "qacurve/error.hpp"
#include "text_util.hpp"

namespace qacurve {

const char* to_string(ModelKind m) noexcept { return m == ModelKind::Ising ? "ising" : "qubo"; }

const char* to_string(TargetKind t) noexcept {
  switch (t) {
    case TargetKind::Qubit: return "qubit";
    case TargetKind::Chain: return "chain";
    case TargetKind::Cell: return "cell";
  }
  return "?";
}

double Grid::value(std::size_t i) const {
  if (points < 2) return lo;
  if (i + 1 == points) return hi;
  // Exact for the dyadic grids (step 1/64, 1/32, 1/8) used by the protocols.
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

std::vector<double> Grid::values() const {
  std::vector<double> v(points);
  for (std::size_t i = 0; i < points; ++i) v[i] = value(i);
  return v;
}

Grid parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    fail(ErrorCode::InvalidArgument, "grid '" + text + "' is not lo:hi:points");
  }
  try {
    Grid g;
    g.lo = detail::parse_real(std::string_view(text).substr(0, first), 0);
    g.hi = detail::parse_real(std::string_view(text).substr(first + 1, second - first - 1), 0);
    g.points = detail::parse_index(std::string_view(text).substr(second + 1), 0);
    return g;
  } catch (const Error&) {
    fail(ErrorCode::InvalidArgument, "grid '" + text + "' is not lo:hi:points");
  }
}

SweepSpec SweepSpec::qubit_defaults() {
  SweepSpec s;
  s.target = TargetKind::Qubit;
  s.cq = {-1.0, 1.0, 129};
  s.cc = {0.0, 0.0, 1};
  s.reads = 10000;
  return s;
}

SweepSpec SweepSpec::chain_defaults() {
  SweepSpec s;
  s.target = TargetKind::Chain;
  s.cq = {-2.0, 2.0, 129};
  s.cc = {-1.0, 1.0, 17};
  s.reads = 1000;
  return s;
}

SweepSpec SweepSpec::cell_defaults() {
  SweepSpec s = chain_defaults();
  s.target = TargetKind::Cell;
  return s;
}

namespace {

void check_grid(const Grid& g, const char* name) {
  if (g.points < 2) fail(ErrorCode::InvalidArgument, std::string(name) + " grid needs at least 2 points");
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || !(g.lo < g.hi)) {
    fail(ErrorCode::InvalidArgument, std::string(name) + " grid needs finite lo < hi");
  }
}

template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

VarKind var_kind(ModelKind m) { return m == ModelKind::Ising ? VarKind::Spin : VarKind::Binary; }

// Entities relabeled onto consecutive variables in list order.
std::vector<EntityGroup> consecutive(std::span<const EntityGroup> entities) {
  std::vector<EntityGroup> out;
  out.reserve(entities.size());
  std::size_t offset = 0;
  for (const auto& e : entities) {
    EntityGroup local = localize(e);
    for (auto& q : local.qubits) q += offset;
    for (auto& c : local.couplers) c = Coupler(c.first + offset, c.second + offset);
    offset += e.size();
    out.push_back(std::move(local));
  }
  return out;
}

double exact_metric(const SweepSpec& spec, const QuadraticModel& model, const EntityGroup& entity) {
  if (spec.metric == Metric::Vote) {
    return spec.exact_temperature ? boltzmann_vote(model, entity, *spec.exact_temperature, spec.oracle)
                                  : t0_vote(model, entity, spec.oracle);
  }
  const MarginalVector p = spec.exact_temperature
                               ? boltzmann_marginals(model, *spec.exact_temperature, spec.oracle)
                               : t0_marginals(model, spec.oracle);
  double sum = 0.0;
  for (Qubit q : entity.qubits) sum += p[q];
  return sum / static_cast<double>(entity.size());
}

double sampled_metric(const SweepSpec& spec, const SampleSet& samples,
                      std::span<const EntityGroup> entities) {
  return spec.metric == Metric::Vote ? vote_metric(samples, entities) : mean_metric(samples, entities);
}

void stamp(CurveTable& t, const SweepSpec& spec, std::size_t entity_count) {
  t.metric = spec.metric;
  t.backend = spec.backend;
  t.provenance = {{"model", to_string(spec.model)},
                  {"entity", to_string(spec.target)},
                  {"entities", std::to_string(entity_count)}};
  if (spec.target == TargetKind::Chain) t.provenance.emplace_back("chain_length", std::to_string(spec.chain_length));
  if (spec.backend == Backend::Exact) {
    t.provenance.emplace_back("temperature", spec.exact_temperature ? format_number(*spec.exact_temperature) : "0");
  } else {
    t.provenance.emplace_back("reads", std::to_string(spec.reads));
    t.provenance.emplace_back("temperature", format_number(spec.device.temperature));
    t.provenance.emplace_back("qubit_sigma", format_number(spec.device.qubit_sigma));
    t.provenance.emplace_back("drift_sigma", format_number(spec.device.drift_sigma));
    t.provenance.emplace_back("device_seed", std::to_string(spec.device.seed));
  }
  t.provenance.emplace_back("seed", std::to_string(spec.seed));
}

QuadraticModel qubit_model(ModelKind kind, std::size_t n, double cq) {
  QuadraticModel m(var_kind(kind), n);
  for (std::size_t i = 0; i < n; ++i) m.set_linear(i, cq);
  return m;
}

}  // namespace

void validate(const SweepSpec& spec) {
  check_grid(spec.cq, "C_q");
  if (spec.target != TargetKind::Qubit) check_grid(spec.cc, "C_c");
  if (spec.target == TargetKind::Chain && spec.chain_length == 0) {
    fail(ErrorCode::InvalidArgument, "chain length must be at least 1");
  }
  if (spec.backend == Backend::Sampled) {
    if (spec.reads == 0) fail(ErrorCode::InvalidArgument, "sampled backend needs reads >= 1");
    validate(spec.device);
  } else if (spec.exact_temperature) {
    const double t = *spec.exact_temperature;
    if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorCode::InvalidArgument, "temperature must be positive");
  }
}

std::vector<EntityGroup> select_entities(const SweepSpec& spec, const ChimeraGraph& graph) {
  std::vector<EntityGroup> out;
  switch (spec.target) {
    case TargetKind::Qubit: {
      for (Qubit q = 0; q < graph.num_qubits(); ++q) {
        if (!graph.is_dead(q)) out.push_back({EntityKind::Chain, {q}, {}});
      }
      break;
    }
    case TargetKind::Chain:
      return disjoint_chains(graph, spec.entity_count ? spec.entity_count : 30, spec.chain_length, spec.seed);
    case TargetKind::Cell:
      out = complete_cells(graph);
      break;
  }
  if (out.empty()) fail(ErrorCode::Infeasible, "graph has no usable entities");
  if (spec.entity_count) {
    if (spec.entity_count > out.size()) {
      fail(ErrorCode::Infeasible, "requested " + std::to_string(spec.entity_count) + " entities, only " +
                                      std::to_string(out.size()) + " available");
    }
    out.resize(spec.entity_count);
  }
  return out;
}

QuadraticModel entity_model(ModelKind kind, std::span<const EntityGroup> entities, double cq, double cc) {
  const auto local = consecutive(entities);
  std::size_t n = 0;
  for (const auto& e : local) n += e.size();
  QuadraticModel m(var_kind(kind), n);
  for (const auto& e : local) {
    for (Qubit q : e.qubits) m.set_linear(q, cq);
    for (const auto& c : e.couplers) m.set_quadratic(c.first, c.second, cc);
  }
  return m;
}

CurveTable run_qubit_sweep(const SweepSpec& spec, const ChimeraGraph& graph) {
  if (spec.target != TargetKind::Qubit) fail(ErrorCode::InvalidArgument, "qubit sweep needs qubit entities");
  validate(spec);
  const std::size_t n = select_entities(spec, graph).size();
  std::vector<EntityGroup> singles(n);
  for (std::size_t i = 0; i < n; ++i) singles[i] = {EntityKind::Chain, {i}, {}};

  CurveTable t(spec.cq.values(), {0.0});
  t.sweep_name = "C_q";
  t.family_name = "C_c";
  stamp(t, spec, n);
  parallel_for(t.rows(), spec.threads, [&](std::size_t i) {
    const double cq = t.sweep_values[i];
    if (spec.backend == Backend::Exact) {
      // Uncoupled qubits are independent and identical: one suffices.
      t.at(i, 0) = exact_metric(spec, qubit_model(spec.model, 1, cq), singles.front());
    } else {
      DeviceParams dev = spec.device;
      dev.run = i;
      // Mean and vote coincide on single-qubit entities.
      t.at(i, 0) = one_fraction(sample(qubit_model(spec.model, n, cq), dev, spec.reads));
    }
  });
  return t;
}

CurveTable run_entity_sweep(const SweepSpec& spec, const ChimeraGraph& graph) {
  if (spec.target == TargetKind::Qubit) fail(ErrorCode::InvalidArgument, "entity sweep needs chain or cell entities");
  validate(spec);
  const std::vector<EntityGroup> entities = select_entities(spec, graph);
  const std::vector<EntityGroup> local = consecutive(entities);
  const bool by_cq = spec.axis == SweepAxis::Cq;

  CurveTable t(by_cq ? spec.cq.values() : spec.cc.values(), by_cq ? spec.cc.values() : spec.cq.values());
  t.sweep_name = by_cq ? "C_q" : "C_c";
  t.family_name = by_cq ? "C_c" : "C_q";
  stamp(t, spec, entities.size());

  // Entities are disjoint and share one shape, so the exact machine solves a
  // single entity and the result holds for all of them.
  const EntityGroup shape = localize(entities.front());
  parallel_for(t.rows() * t.cols(), spec.threads, [&](std::size_t idx) {
    const std::size_t i = idx / t.cols(), j = idx % t.cols();
    const double cq = by_cq ? t.sweep_values[i] : t.family_values[j];
    const double cc = by_cq ? t.family_values[j] : t.sweep_values[i];
    if (spec.backend == Backend::Exact) {
      t.at(i, j) = exact_metric(spec, entity_model(spec.model, {&shape, 1}, cq, cc), shape);
    } else {
      DeviceParams dev = spec.device;
      dev.run = idx;
      const SampleSet s = sample(entity_model(spec.model, entities, cq, cc), dev, spec.reads);
      t.at(i, j) = sampled_metric(spec, s, local);
    }
  });
  return t;
}

std::vector<StatsRow> run_stats(const SweepSpec& spec, const ChimeraGraph& graph, std::size_t partitions) {
  if (spec.target != TargetKind::Qubit) fail(ErrorCode::InvalidArgument, "stats run on qubit sweeps");
  if (spec.backend != Backend::Sampled) fail(ErrorCode::InvalidArgument, "stats need the sampled backend");
  if (partitions < 2) fail(ErrorCode::InvalidArgument, "stats need at least 2 partitions");
  validate(spec);
  if (spec.reads % partitions != 0) {
    fail(ErrorCode::InvalidArgument, std::to_string(spec.reads) + " reads do not split into " +
                                         std::to_string(partitions) + " partitions");
  }
  const std::size_t n = select_entities(spec, graph).size();
  const std::vector<double> grid = spec.cq.values();
  std::vector<StatsRow> rows(grid.size());
  parallel_for(grid.size(), spec.threads, [&](std::size_t i) {
    DeviceParams dev = spec.device;
    dev.run = i;
    dev.block_size = spec.reads / partitions;
    const SampleSet s = sample(qubit_model(spec.model, n, grid[i]), dev, spec.reads);
    rows[i] = {grid[i], temporal_std(s, partitions), spatial_std(s, partitions)};
  });
  return rows;
}

void write_stats(std::ostream& out, const std::vector<StatsRow>& rows) {
  out << "# C_q temporal_std spatial_std\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << i << ' ' << format_number(rows[i].cq) << ' ' << format_number(rows[i].temporal_std) << ' '
        << format_number(rows[i].spatial_std) << '\n';
  }
}

SigmoidFit run_fit(const CurveTable& curve) {
  if (curve.cols() != 1) {
    fail(ErrorCode::InvalidArgument, "fit expects a single-column curve, found " + std::to_string(curve.cols()));
  }
  return fit_sigmoid(curve.sweep_values, curve.column(0));
}

}  // namespace qacurve
