#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qacurve/metrics.hpp"
#include "qacurve/model.hpp"
#include "qacurve/oracle.hpp"
#include "qacurve/sampler.hpp"
#include "qacurve/topology.hpp"

namespace qacurve {

enum class ModelKind { Ising, Qubo };
enum class TargetKind { Qubit, Chain, Cell };
enum class SweepAxis { Cq, Cc };

const char* to_string(ModelKind m) noexcept;
const char* to_string(TargetKind t) noexcept;

// points values from lo to hi inclusive, evenly spaced.
struct Grid {
  double lo = -1.0;
  double hi = 1.0;
  std::size_t points = 129;

  double value(std::size_t i) const;
  std::vector<double> values() const;
};

// "lo:hi:points"
Grid parse_grid(const std::string& text);

struct SweepSpec {
  ModelKind model = ModelKind::Ising;
  TargetKind target = TargetKind::Qubit;
  std::size_t chain_length = 12;
  std::size_t entity_count = 0;  // 0: 30 chains, every complete cell, every working qubit
  Backend backend = Backend::Exact;
  // Exact backend: nullopt is the zero-temperature machine, a value gives
  // exact Gibbs curves at that temperature.
  std::optional<double> exact_temperature;
  DeviceParams device;
  std::size_t reads = 1000;
  Metric metric = Metric::Mean;
  SweepAxis axis = SweepAxis::Cq;
  Grid cq{-1.0, 1.0, 129};
  Grid cc{-1.0, 1.0, 17};
  std::uint64_t seed = 0;  // chain placement
  std::size_t threads = 0;  // 0: hardware concurrency
  OracleOptions oracle;

  static SweepSpec qubit_defaults();
  static SweepSpec chain_defaults();
  static SweepSpec cell_defaults();
};

void validate(const SweepSpec& spec);

// Qubits (or entities) the sweep runs on, after applying entity_count.
std::vector<EntityGroup> select_entities(const SweepSpec& spec, const ChimeraGraph& graph);

// Model over `entities` relabeled onto consecutive variables, every entity
// qubit biased cq and every internal coupler cc.
QuadraticModel entity_model(ModelKind kind, std::span<const EntityGroup> entities,
                            double cq, double cc);

CurveTable run_qubit_sweep(const SweepSpec& spec, const ChimeraGraph& graph);
CurveTable run_entity_sweep(const SweepSpec& spec, const ChimeraGraph& graph);

struct StatsRow {
  double cq = 0.0;
  double temporal_std = 0.0;
  double spatial_std = 0.0;
};

std::vector<StatsRow> run_stats(const SweepSpec& spec, const ChimeraGraph& graph,
                                std::size_t partitions);
// "# C_q temporal_std spatial_std" then "<index> <C_q> <temporal> <spatial>".
void write_stats(std::ostream& out, const std::vector<StatsRow>& rows);

// Fits the single column of a curve file.
SigmoidFit run_fit(const CurveTable& curve);

}  // namespace qacurve
