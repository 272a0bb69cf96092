#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qacurve/sampler.hpp"
#include "qacurve/topology.hpp"

namespace qacurve {

enum class Metric { Mean, Vote };
enum class Backend { Exact, Sampled };

const char* to_string(Metric m) noexcept;
const char* to_string(Backend b) noexcept;

// values is row-major: one row per sweep point, one column per family value.
struct CurveTable {
  std::string sweep_name = "C_q";
  std::string family_name = "C_c";
  std::vector<double> sweep_values;
  std::vector<double> family_values;
  std::vector<double> values;
  Metric metric = Metric::Mean;
  Backend backend = Backend::Exact;
  // Extra key=value pairs written on the provenance line.
  std::vector<std::pair<std::string, std::string>> provenance;

  CurveTable() = default;
  CurveTable(std::vector<double> sweep, std::vector<double> family);

  std::size_t rows() const noexcept { return sweep_values.size(); }
  std::size_t cols() const noexcept { return family_values.size(); }
  double& at(std::size_t row, std::size_t col) { return values[row * cols() + col]; }
  double at(std::size_t row, std::size_t col) const { return values[row * cols() + col]; }
  std::vector<double> column(std::size_t col) const;

  bool operator==(const CurveTable&) const = default;
};

// Whitespace table:
//   # <sweep_name> <family_1> ... <family_F>
//   # family=<name> metric=<mean|vote> backend=<exact|sampled> [key=value...]
//   <index> <sweep value> <F values>
// Numbers use the shortest representation that round-trips.
void write_curve(std::ostream& out, const CurveTable& table);
CurveTable read_curve(std::istream& in);
CurveTable load_curve(const std::string& path);

std::string format_number(double v);

// Fraction of all (read, variable) values that are one. Equals mean_metric
// and vote_metric with every variable as its own entity.
double one_fraction(const SampleSet& samples);
// Per-variable count of reads in the one state.
std::vector<std::size_t> variable_counts(const SampleSet& samples);

// Equal weight per (read, entity) pair.
double mean_metric(const SampleSet& samples, std::span<const EntityGroup> entities);
double vote_metric(const SampleSet& samples, std::span<const EntityGroup> entities);

// Population standard deviation of the per-partition mean one-fraction,
// partitions being consecutive equal blocks of reads.
double temporal_std(const SampleSet& samples, std::size_t partitions);
// Population standard deviation across variables of each variable's mean
// one-fraction over all reads.
double spatial_std(const SampleSet& samples, std::size_t partitions);

struct SigmoidFit {
  double k = 0.0;
  double rms = 0.0;  // root-mean-square residual
  bool at_bound = false;
};

// Least-squares fit of 1 / (1 + exp(k x)) by golden-section search over k in
// [lo, hi] (searched in log k).
SigmoidFit fit_sigmoid(std::span<const double> x, std::span<const double> p,
                       double lo = 0.1, double hi = 1000.0, double rel_tol = 1e-6);

double population_std(std::span<const double> v);

}  // namespace qacurve
