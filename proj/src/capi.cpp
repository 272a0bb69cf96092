#include "qacurve/qacurve.h"

#include <atomic>
#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "qacurve/error.hpp"
#include "qacurve/harness.hpp"
#include "qacurve/metrics.hpp"
#include "qacurve/model.hpp"
#include "qacurve/oracle.hpp"
#include "qacurve/sampler.hpp"
#include "qacurve/topology.hpp"

struct qac_model {
  qacurve::QuadraticModel m;
};
struct qac_graph {
  qacurve::ChimeraGraph g;
};
struct qac_samples {
  qacurve::SampleSet s;
};
struct qac_curve {
  qacurve::CurveTable t;
};
struct qac_stats {
  std::vector<qacurve::StatsRow> rows;
};

namespace {

using namespace qacurve;

thread_local std::string last_error;
std::atomic<std::size_t> enumeration_cap{OracleOptions{}.max_variables};

qac_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return QAC_ERR_INVALID_ARGUMENT;
    case ErrorCode::DomainError: return QAC_ERR_DOMAIN;
    case ErrorCode::CapExceeded: return QAC_ERR_CAP_EXCEEDED;
    case ErrorCode::Infeasible: return QAC_ERR_INFEASIBLE;
    case ErrorCode::DegenerateFit: return QAC_ERR_DEGENERATE_FIT;
    case ErrorCode::ParseError: return QAC_ERR_PARSE;
    case ErrorCode::IoError: return QAC_ERR_IO;
  }
  return QAC_ERR_INTERNAL;
}

template <class Fn>
qac_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    last_error.clear();
    return QAC_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown exception";
  }
  return QAC_ERR_INTERNAL;
}

template <class... Ptrs>
void require(const Ptrs*... ptrs) {
  if (((ptrs == nullptr) || ...)) fail(ErrorCode::InvalidArgument, "null pointer argument");
}

OracleOptions oracle_options() {
  OracleOptions o;
  o.max_variables = enumeration_cap.load();
  return o;
}

template <class Writer>
void write_to(const char* path, Writer&& write) {
  require(path);
  const std::string p(path);
  if (p == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(p);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + p + "' for writing");
  write(out);
  if (!out) fail(ErrorCode::IoError, "write to '" + p + "' failed");
}

DeviceParams from_c(const qac_device& d) {
  DeviceParams p;
  p.temperature = d.temperature;
  p.qubit_sigma = d.qubit_sigma;
  p.drift_sigma = d.drift_sigma;
  p.seed = d.seed;
  p.run = d.run;
  p.block_size = d.block_size;
  p.exact_cap = d.exact_cap;
  p.allow_mcmc = d.allow_mcmc != 0;
  p.mcmc_sweeps = d.mcmc_sweeps;
  return p;
}

SweepSpec from_c(const qac_sweep_spec& c) {
  SweepSpec s;
  s.model = c.model == QAC_MODEL_QUBO ? ModelKind::Qubo : ModelKind::Ising;
  switch (c.target) {
    case QAC_TARGET_QUBIT: s.target = TargetKind::Qubit; break;
    case QAC_TARGET_CHAIN: s.target = TargetKind::Chain; break;
    case QAC_TARGET_CELL: s.target = TargetKind::Cell; break;
    default: fail(ErrorCode::InvalidArgument, "unknown target kind");
  }
  s.chain_length = c.chain_length;
  s.entity_count = c.entity_count;
  s.backend = c.backend == QAC_BACKEND_SAMPLED ? Backend::Sampled : Backend::Exact;
  s.metric = c.metric == QAC_METRIC_VOTE ? Metric::Vote : Metric::Mean;
  s.axis = c.axis == QAC_AXIS_CC ? SweepAxis::Cc : SweepAxis::Cq;
  s.cq = {c.cq_lo, c.cq_hi, c.cq_points};
  s.cc = {c.cc_lo, c.cc_hi, c.cc_points};
  s.reads = c.reads;
  if (c.exact_temperature < 0.0) fail(ErrorCode::InvalidArgument, "exact temperature must be >= 0");
  if (c.exact_temperature > 0.0) s.exact_temperature = c.exact_temperature;
  s.device = from_c(c.device);
  s.seed = c.seed;
  s.threads = c.threads;
  s.oracle = oracle_options();
  return s;
}

std::vector<EntityGroup> entities_from_c(const size_t* qubits, const size_t* sizes, size_t count) {
  require(qubits, sizes);
  std::vector<EntityGroup> out(count);
  std::size_t k = 0;
  for (std::size_t e = 0; e < count; ++e) {
    out[e].qubits.assign(qubits + k, qubits + k + sizes[e]);
    k += sizes[e];
  }
  return out;
}

}  // namespace

extern "C" {

const char* qac_last_error(void) { return last_error.c_str(); }

const char* qac_status_string(qac_status status) {
  switch (status) {
    case QAC_OK: return "ok";
    case QAC_ERR_INVALID_ARGUMENT: return to_string(ErrorCode::InvalidArgument);
    case QAC_ERR_DOMAIN: return to_string(ErrorCode::DomainError);
    case QAC_ERR_CAP_EXCEEDED: return to_string(ErrorCode::CapExceeded);
    case QAC_ERR_INFEASIBLE: return to_string(ErrorCode::Infeasible);
    case QAC_ERR_DEGENERATE_FIT: return to_string(ErrorCode::DegenerateFit);
    case QAC_ERR_PARSE: return to_string(ErrorCode::ParseError);
    case QAC_ERR_IO: return to_string(ErrorCode::IoError);
    case QAC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

qac_status qac_model_create(qac_var_kind kind, size_t n, qac_model** out) {
  return guarded([&] {
    require(out);
    *out = new qac_model{QuadraticModel(kind == QAC_BINARY ? VarKind::Binary : VarKind::Spin, n)};
  });
}

qac_status qac_model_load(const char* path, qac_model** out) {
  return guarded([&] {
    require(path, out);
    *out = new qac_model{load_model(path)};
  });
}

qac_status qac_model_save(const qac_model* model, const char* path) {
  return guarded([&] {
    require(model);
    write_to(path, [&](std::ostream& os) { write_model(os, model->m); });
  });
}

void qac_model_destroy(qac_model* model) { delete model; }

qac_status qac_model_num_variables(const qac_model* model, size_t* out) {
  return guarded([&] {
    require(model, out);
    *out = model->m.num_variables();
  });
}

qac_status qac_model_var_kind(const qac_model* model, qac_var_kind* out) {
  return guarded([&] {
    require(model, out);
    *out = model->m.kind() == VarKind::Binary ? QAC_BINARY : QAC_SPIN;
  });
}

qac_status qac_model_set_linear(qac_model* model, size_t i, double value) {
  return guarded([&] {
    require(model);
    model->m.set_linear(i, value);
  });
}

qac_status qac_model_set_quadratic(qac_model* model, size_t i, size_t j, double value) {
  return guarded([&] {
    require(model);
    model->m.set_quadratic(i, j, value);
  });
}

qac_status qac_model_set_offset(qac_model* model, double value) {
  return guarded([&] {
    require(model);
    model->m.set_offset(value);
  });
}

qac_status qac_model_linear(const qac_model* model, size_t i, double* out) {
  return guarded([&] {
    require(model, out);
    *out = model->m.linear(i);
  });
}

qac_status qac_model_quadratic(const qac_model* model, size_t i, size_t j, double* out) {
  return guarded([&] {
    require(model, out);
    *out = model->m.quadratic(i, j);
  });
}

qac_status qac_model_offset(const qac_model* model, double* out) {
  return guarded([&] {
    require(model, out);
    *out = model->m.offset();
  });
}

qac_status qac_model_energy(const qac_model* model, const int8_t* values, size_t n, double* out) {
  return guarded([&] {
    require(model, out);
    if (n > 0) require(values);
    *out = energy(model->m, Assignment(std::vector<std::int8_t>(values, values + n)));
  });
}

qac_status qac_model_to_qubo(const qac_model* spin_model, qac_model** out) {
  return guarded([&] {
    require(spin_model, out);
    *out = new qac_model{to_qubo(spin_model->m)};
  });
}

qac_status qac_model_to_ising(const qac_model* binary_model, qac_model** out) {
  return guarded([&] {
    require(binary_model, out);
    *out = new qac_model{to_ising(binary_model->m)};
  });
}

qac_status qac_set_enumeration_cap(size_t max_variables) {
  return guarded([&] {
    if (max_variables > 40) fail(ErrorCode::InvalidArgument, "enumeration cap above 40");
    enumeration_cap = max_variables ? max_variables : OracleOptions{}.max_variables;
  });
}

qac_status qac_ground_states(const qac_model* model, double* energy_out, size_t* degeneracy,
                             int8_t* states, size_t max_states) {
  return guarded([&] {
    require(model);
    const GroundStateSet gs = ground_states(model->m, oracle_options());
    if (energy_out) *energy_out = gs.energy;
    if (degeneracy) *degeneracy = gs.degeneracy();
    if (states) {
      const std::size_t n = model->m.num_variables();
      for (std::size_t s = 0; s < std::min(max_states, gs.degeneracy()); ++s) {
        for (std::size_t i = 0; i < n; ++i) states[s * n + i] = gs.states[s][i];
      }
    }
  });
}

qac_status qac_t0_marginals(const qac_model* model, double* p_one, size_t n) {
  return guarded([&] {
    require(model, p_one);
    if (n != model->m.num_variables()) fail(ErrorCode::InvalidArgument, "output length mismatch");
    const MarginalVector p = t0_marginals(model->m, oracle_options());
    std::copy(p.p_one.begin(), p.p_one.end(), p_one);
  });
}

qac_status qac_boltzmann_marginals(const qac_model* model, double temperature, double* p_one, size_t n) {
  return guarded([&] {
    require(model, p_one);
    if (n != model->m.num_variables()) fail(ErrorCode::InvalidArgument, "output length mismatch");
    const MarginalVector p = boltzmann_marginals(model->m, temperature, oracle_options());
    std::copy(p.p_one.begin(), p.p_one.end(), p_one);
  });
}

qac_status qac_t0_vote(const qac_model* model, const size_t* entity, size_t size, double* out) {
  return guarded([&] {
    require(model, entity, out);
    EntityGroup e;
    e.qubits.assign(entity, entity + size);
    *out = t0_vote(model->m, e, oracle_options());
  });
}

void qac_device_init(qac_device* device) {
  if (!device) return;
  const DeviceParams p;
  device->temperature = p.temperature;
  device->qubit_sigma = p.qubit_sigma;
  device->drift_sigma = p.drift_sigma;
  device->seed = p.seed;
  device->run = p.run;
  device->block_size = p.block_size;
  device->exact_cap = p.exact_cap;
  device->allow_mcmc = p.allow_mcmc ? 1 : 0;
  device->mcmc_sweeps = p.mcmc_sweeps;
}

qac_status qac_sample(const qac_model* model, const qac_device* device, size_t reads, qac_samples** out) {
  return guarded([&] {
    require(model, device, out);
    *out = new qac_samples{sample(model->m, from_c(*device), reads)};
  });
}

qac_status qac_sample_mcmc(const qac_model* model, const qac_device* device, size_t reads, size_t sweeps,
                           qac_samples** out) {
  return guarded([&] {
    require(model, device, out);
    *out = new qac_samples{sample_mcmc(model->m, from_c(*device), reads, sweeps)};
  });
}

void qac_samples_destroy(qac_samples* samples) { delete samples; }

qac_status qac_samples_shape(const qac_samples* samples, size_t* reads, size_t* num_variables) {
  return guarded([&] {
    require(samples);
    if (reads) *reads = samples->s.num_reads();
    if (num_variables) *num_variables = samples->s.num_variables();
  });
}

qac_status qac_samples_read(const qac_samples* samples, size_t read, uint8_t* bits, size_t n) {
  return guarded([&] {
    require(samples, bits);
    if (read >= samples->s.num_reads()) fail(ErrorCode::InvalidArgument, "read index out of range");
    if (n != samples->s.num_variables()) fail(ErrorCode::InvalidArgument, "output length mismatch");
    for (std::size_t i = 0; i < n; ++i) bits[i] = samples->s.is_one(read, i) ? 1 : 0;
  });
}

qac_status qac_samples_save(const qac_samples* samples, const char* path) {
  return guarded([&] {
    require(samples);
    write_to(path, [&](std::ostream& os) { write_samples(os, samples->s); });
  });
}

qac_status qac_samples_metric(const qac_samples* samples, qac_metric metric, const size_t* qubits,
                              const size_t* entity_sizes, size_t num_entities, double* out) {
  return guarded([&] {
    require(samples, out);
    const auto entities = entities_from_c(qubits, entity_sizes, num_entities);
    *out = metric == QAC_METRIC_VOTE ? vote_metric(samples->s, entities) : mean_metric(samples->s, entities);
  });
}

qac_status qac_samples_temporal_std(const qac_samples* samples, size_t partitions, double* out) {
  return guarded([&] {
    require(samples, out);
    *out = temporal_std(samples->s, partitions);
  });
}

qac_status qac_samples_spatial_std(const qac_samples* samples, size_t partitions, double* out) {
  return guarded([&] {
    require(samples, out);
    *out = spatial_std(samples->s, partitions);
  });
}

qac_status qac_graph_create(size_t rows, size_t cols, size_t shore, const size_t* dead, size_t num_dead,
                            qac_graph** out) {
  return guarded([&] {
    require(out);
    if (num_dead > 0) require(dead);
    std::set<Qubit> mask(dead, dead + num_dead);
    *out = new qac_graph{chimera(rows, cols, shore, mask)};
  });
}

qac_status qac_graph_create_from_mask(size_t rows, size_t cols, size_t shore, const char* mask_path,
                                      qac_graph** out) {
  return guarded([&] {
    require(out);
    const std::set<Qubit> mask = mask_path ? load_dead_mask(mask_path) : std::set<Qubit>{};
    *out = new qac_graph{chimera(rows, cols, shore, mask)};
  });
}

void qac_graph_destroy(qac_graph* graph) { delete graph; }

qac_status qac_graph_info_get(const qac_graph* graph, qac_graph_info* out) {
  return guarded([&] {
    require(graph, out);
    const ChimeraGraph& g = graph->g;
    *out = {g.rows(), g.cols(), g.shore(), g.num_qubits(), g.num_working(), g.edges().size(),
            complete_cells(g).size()};
  });
}

qac_status qac_graph_dump_entities(const qac_graph* graph, qac_target kind, size_t count, size_t length,
                                   uint64_t seed, const char* path) {
  return guarded([&] {
    require(graph);
    std::vector<EntityGroup> entities;
    if (kind == QAC_TARGET_CHAIN) {
      entities = disjoint_chains(graph->g, count, length, seed);
    } else if (kind == QAC_TARGET_CELL) {
      entities = complete_cells(graph->g);
      if (count > entities.size()) fail(ErrorCode::Infeasible, "not enough complete cells");
      if (count) entities.resize(count);
    } else {
      fail(ErrorCode::InvalidArgument, "entity dump needs chain or cell");
    }
    write_to(path, [&](std::ostream& os) { write_entities(os, entities); });
  });
}

void qac_sweep_spec_init(qac_sweep_spec* spec, qac_target target) {
  if (!spec) return;
  const SweepSpec s = target == QAC_TARGET_QUBIT   ? SweepSpec::qubit_defaults()
                      : target == QAC_TARGET_CELL ? SweepSpec::cell_defaults()
                                                  : SweepSpec::chain_defaults();
  spec->model = QAC_MODEL_ISING;
  spec->target = target;
  spec->chain_length = s.chain_length;
  spec->entity_count = s.entity_count;
  spec->backend = QAC_BACKEND_EXACT;
  spec->metric = QAC_METRIC_MEAN;
  spec->axis = QAC_AXIS_CQ;
  spec->cq_lo = s.cq.lo;
  spec->cq_hi = s.cq.hi;
  spec->cq_points = s.cq.points;
  spec->cc_lo = s.cc.lo;
  spec->cc_hi = s.cc.hi;
  spec->cc_points = s.cc.points;
  spec->reads = s.reads;
  spec->exact_temperature = 0.0;
  qac_device_init(&spec->device);
  spec->seed = s.seed;
  spec->threads = s.threads;
}

qac_status qac_run_qubit_sweep(const qac_sweep_spec* spec, const qac_graph* graph, qac_curve** out) {
  return guarded([&] {
    require(spec, graph, out);
    *out = new qac_curve{run_qubit_sweep(from_c(*spec), graph->g)};
  });
}

qac_status qac_run_entity_sweep(const qac_sweep_spec* spec, const qac_graph* graph, qac_curve** out) {
  return guarded([&] {
    require(spec, graph, out);
    *out = new qac_curve{run_entity_sweep(from_c(*spec), graph->g)};
  });
}

qac_status qac_run_stats(const qac_sweep_spec* spec, const qac_graph* graph, size_t partitions,
                         qac_stats** out) {
  return guarded([&] {
    require(spec, graph, out);
    *out = new qac_stats{run_stats(from_c(*spec), graph->g, partitions)};
  });
}

qac_status qac_curve_load(const char* path, qac_curve** out) {
  return guarded([&] {
    require(path, out);
    *out = new qac_curve{load_curve(path)};
  });
}

qac_status qac_curve_save(const qac_curve* curve, const char* path) {
  return guarded([&] {
    require(curve);
    write_to(path, [&](std::ostream& os) { write_curve(os, curve->t); });
  });
}

void qac_curve_destroy(qac_curve* curve) { delete curve; }

qac_status qac_curve_shape(const qac_curve* curve, size_t* rows, size_t* cols) {
  return guarded([&] {
    require(curve);
    if (rows) *rows = curve->t.rows();
    if (cols) *cols = curve->t.cols();
  });
}

qac_status qac_curve_value(const qac_curve* curve, size_t row, size_t col, double* out) {
  return guarded([&] {
    require(curve, out);
    if (row >= curve->t.rows() || col >= curve->t.cols()) fail(ErrorCode::InvalidArgument, "cell out of range");
    *out = curve->t.at(row, col);
  });
}

qac_status qac_curve_sweep_value(const qac_curve* curve, size_t row, double* out) {
  return guarded([&] {
    require(curve, out);
    if (row >= curve->t.rows()) fail(ErrorCode::InvalidArgument, "row out of range");
    *out = curve->t.sweep_values[row];
  });
}

qac_status qac_curve_family_value(const qac_curve* curve, size_t col, double* out) {
  return guarded([&] {
    require(curve, out);
    if (col >= curve->t.cols()) fail(ErrorCode::InvalidArgument, "column out of range");
    *out = curve->t.family_values[col];
  });
}

qac_status qac_fit_curve(const qac_curve* curve, qac_fit_result* out) {
  return guarded([&] {
    require(curve, out);
    const SigmoidFit fit = run_fit(curve->t);
    *out = {fit.k, fit.rms, fit.at_bound ? 1 : 0};
  });
}

qac_status qac_stats_save(const qac_stats* stats, const char* path) {
  return guarded([&] {
    require(stats);
    write_to(path, [&](std::ostream& os) { write_stats(os, stats->rows); });
  });
}

void qac_stats_destroy(qac_stats* stats) { delete stats; }

qac_status qac_stats_size(const qac_stats* stats, size_t* rows) {
  return guarded([&] {
    require(stats, rows);
    *rows = stats->rows.size();
  });
}

qac_status qac_stats_row(const qac_stats* stats, size_t row, double* cq, double* temporal, double* spatial) {
  return guarded([&] {
    require(stats);
    if (row >= stats->rows.size()) fail(ErrorCode::InvalidArgument, "row out of range");
    if (cq) *cq = stats->rows[row].cq;
    if (temporal) *temporal = stats->rows[row].temporal_std;
    if (spatial) *spatial = stats->rows[row].spatial_std;
  });
}

}  // extern "C"
