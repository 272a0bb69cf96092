/*
 * C interface to the qacurve annealer characterization library.
 *
 * Every object is an opaque handle released with its *_destroy function.
 * Every fallible call returns a qac_status; on failure qac_last_error()
 * gives a one-line message for the calling thread. Output paths accept "-"
 * for standard output.
 */
#ifndef QACURVE_H
#define QACURVE_H

#include <stddef.h>
#include <stdint.h>

#if defined(QAC_BUILDING_LIBRARY)
#define QAC_API __attribute__((visibility("default")))
#else
#define QAC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qac_status {
  QAC_OK = 0,
  QAC_ERR_INVALID_ARGUMENT = 1,
  QAC_ERR_DOMAIN = 2,
  QAC_ERR_CAP_EXCEEDED = 3,
  QAC_ERR_INFEASIBLE = 4,
  QAC_ERR_DEGENERATE_FIT = 5,
  QAC_ERR_PARSE = 6,
  QAC_ERR_IO = 7,
  QAC_ERR_INTERNAL = 8
} qac_status;

typedef enum qac_var_kind { QAC_SPIN = 0, QAC_BINARY = 1 } qac_var_kind;
typedef enum qac_model_kind { QAC_MODEL_ISING = 0, QAC_MODEL_QUBO = 1 } qac_model_kind;
typedef enum qac_target { QAC_TARGET_QUBIT = 0, QAC_TARGET_CHAIN = 1, QAC_TARGET_CELL = 2 } qac_target;
typedef enum qac_backend { QAC_BACKEND_EXACT = 0, QAC_BACKEND_SAMPLED = 1 } qac_backend;
typedef enum qac_metric { QAC_METRIC_MEAN = 0, QAC_METRIC_VOTE = 1 } qac_metric;
typedef enum qac_axis { QAC_AXIS_CQ = 0, QAC_AXIS_CC = 1 } qac_axis;

typedef struct qac_model qac_model;
typedef struct qac_graph qac_graph;
typedef struct qac_samples qac_samples;
typedef struct qac_curve qac_curve;
typedef struct qac_stats qac_stats;

QAC_API const char* qac_last_error(void);
QAC_API const char* qac_status_string(qac_status status);

/* Quadratic models. values passed to qac_model_energy are -1/+1 (spin) or 0/1 (binary). */
QAC_API qac_status qac_model_create(qac_var_kind kind, size_t num_variables, qac_model** out);
QAC_API qac_status qac_model_load(const char* path, qac_model** out);
QAC_API qac_status qac_model_save(const qac_model* model, const char* path);
QAC_API void qac_model_destroy(qac_model* model);
QAC_API qac_status qac_model_num_variables(const qac_model* model, size_t* out);
QAC_API qac_status qac_model_var_kind(const qac_model* model, qac_var_kind* out);
QAC_API qac_status qac_model_set_linear(qac_model* model, size_t i, double value);
QAC_API qac_status qac_model_set_quadratic(qac_model* model, size_t i, size_t j, double value);
QAC_API qac_status qac_model_set_offset(qac_model* model, double value);
QAC_API qac_status qac_model_linear(const qac_model* model, size_t i, double* out);
QAC_API qac_status qac_model_quadratic(const qac_model* model, size_t i, size_t j, double* out);
QAC_API qac_status qac_model_offset(const qac_model* model, double* out);
QAC_API qac_status qac_model_energy(const qac_model* model, const int8_t* values, size_t n, double* out);
QAC_API qac_status qac_model_to_qubo(const qac_model* spin_model, qac_model** out);
QAC_API qac_status qac_model_to_ising(const qac_model* binary_model, qac_model** out);

/* Exhaustive oracle. max_variables = 0 selects the default cap (24). */
QAC_API qac_status qac_set_enumeration_cap(size_t max_variables);
/* states may be NULL; otherwise up to max_states ground states are written,
 * num_variables values each, in lexicographic order. */
QAC_API qac_status qac_ground_states(const qac_model* model, double* energy, size_t* degeneracy,
                                     int8_t* states, size_t max_states);
QAC_API qac_status qac_t0_marginals(const qac_model* model, double* p_one, size_t n);
QAC_API qac_status qac_boltzmann_marginals(const qac_model* model, double temperature,
                                           double* p_one, size_t n);
/* Entity given as variable indices of the model. */
QAC_API qac_status qac_t0_vote(const qac_model* model, const size_t* entity, size_t size, double* out);

/* Emulated device. */
typedef struct qac_device {
  double temperature; /* effective temperature, k = 2 / temperature */
  double qubit_sigma;
  double drift_sigma;
  uint64_t seed;
  uint64_t run;
  size_t block_size;  /* 0: reads / 10 */
  size_t exact_cap;   /* largest component sampled exactly */
  int allow_mcmc;
  size_t mcmc_sweeps;
} qac_device;

QAC_API void qac_device_init(qac_device* device);
QAC_API qac_status qac_sample(const qac_model* model, const qac_device* device, size_t reads,
                              qac_samples** out);
QAC_API qac_status qac_sample_mcmc(const qac_model* model, const qac_device* device, size_t reads,
                                   size_t sweeps, qac_samples** out);
QAC_API void qac_samples_destroy(qac_samples* samples);
QAC_API qac_status qac_samples_shape(const qac_samples* samples, size_t* reads, size_t* num_variables);
/* bits receives num_variables values, 1 for the "one" state. */
QAC_API qac_status qac_samples_read(const qac_samples* samples, size_t read, uint8_t* bits, size_t n);
QAC_API qac_status qac_samples_save(const qac_samples* samples, const char* path);
/* Metrics over entities given as a flat index array split by entity_sizes. */
QAC_API qac_status qac_samples_metric(const qac_samples* samples, qac_metric metric, const size_t* qubits,
                                      const size_t* entity_sizes, size_t num_entities, double* out);
QAC_API qac_status qac_samples_temporal_std(const qac_samples* samples, size_t partitions, double* out);
QAC_API qac_status qac_samples_spatial_std(const qac_samples* samples, size_t partitions, double* out);

/* Chimera topology. */
typedef struct qac_graph_info {
  size_t rows, cols, shore;
  size_t qubits, working, edges, complete_cells;
} qac_graph_info;

QAC_API qac_status qac_graph_create(size_t rows, size_t cols, size_t shore, const size_t* dead,
                                    size_t num_dead, qac_graph** out);
/* mask_path may be NULL for no dead qubits. */
QAC_API qac_status qac_graph_create_from_mask(size_t rows, size_t cols, size_t shore,
                                              const char* mask_path, qac_graph** out);
QAC_API void qac_graph_destroy(qac_graph* graph);
QAC_API qac_status qac_graph_info_get(const qac_graph* graph, qac_graph_info* out);
/* Writes "chain|cell q0 ... qk" lines. QAC_TARGET_CHAIN places count chains
 * of the given length; QAC_TARGET_CELL lists complete cells (count 0: all). */
QAC_API qac_status qac_graph_dump_entities(const qac_graph* graph, qac_target kind, size_t count,
                                           size_t length, uint64_t seed, const char* path);

/* Experiment sweeps. */
typedef struct qac_sweep_spec {
  qac_model_kind model;
  qac_target target;
  size_t chain_length;
  size_t entity_count; /* 0: protocol default */
  qac_backend backend;
  qac_metric metric;
  qac_axis axis;
  double cq_lo, cq_hi;
  size_t cq_points;
  double cc_lo, cc_hi;
  size_t cc_points;
  size_t reads;
  double exact_temperature; /* exact backend only; 0 is the zero-temperature machine */
  qac_device device;        /* sampled backend */
  uint64_t seed;            /* chain placement */
  size_t threads;           /* 0: hardware concurrency */
} qac_sweep_spec;

typedef struct qac_fit_result {
  double k;
  double rms;
  int at_bound;
} qac_fit_result;

/* Protocol defaults for the target: 129 points on [-1,1] and 10000 reads for
 * qubits; 129 x 17 points on [-2,2] x [-1,1] and 1000 reads for chains and
 * cells; 12-qubit chains; exact backend, Ising, mean metric. */
QAC_API void qac_sweep_spec_init(qac_sweep_spec* spec, qac_target target);
QAC_API qac_status qac_run_qubit_sweep(const qac_sweep_spec* spec, const qac_graph* graph, qac_curve** out);
QAC_API qac_status qac_run_entity_sweep(const qac_sweep_spec* spec, const qac_graph* graph, qac_curve** out);
QAC_API qac_status qac_run_stats(const qac_sweep_spec* spec, const qac_graph* graph, size_t partitions,
                                 qac_stats** out);

QAC_API qac_status qac_curve_load(const char* path, qac_curve** out);
QAC_API qac_status qac_curve_save(const qac_curve* curve, const char* path);
QAC_API void qac_curve_destroy(qac_curve* curve);
QAC_API qac_status qac_curve_shape(const qac_curve* curve, size_t* rows, size_t* cols);
QAC_API qac_status qac_curve_value(const qac_curve* curve, size_t row, size_t col, double* out);
QAC_API qac_status qac_curve_sweep_value(const qac_curve* curve, size_t row, double* out);
QAC_API qac_status qac_curve_family_value(const qac_curve* curve, size_t col, double* out);
QAC_API qac_status qac_fit_curve(const qac_curve* curve, qac_fit_result* out);

QAC_API qac_status qac_stats_save(const qac_stats* stats, const char* path);
QAC_API void qac_stats_destroy(qac_stats* stats);
QAC_API qac_status qac_stats_size(const qac_stats* stats, size_t* rows);
QAC_API qac_status qac_stats_row(const qac_stats* stats, size_t row, double* cq, double* temporal_std,
                                 double* spatial_std);

#ifdef __cplusplus
}
#endif

#endif /* QACURVE_H */
