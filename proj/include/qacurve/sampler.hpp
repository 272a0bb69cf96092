#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qacurve/model.hpp"

namespace qacurve {

// Emulated device. Per-qubit heterogeneity scales qubit i's linear
// coefficient by exp(qubit_sigma * z_i), z_i ~ N(0,1) frozen by `seed`.
// Temporal drift adds one N(0, drift_sigma) offset to every linear term per
// block of `block_size` consecutive reads. `run` selects independent read and
// drift streams for the same device (the harness uses one run per grid point).
struct DeviceParams {
  double temperature = 2.0 / 24.0;
  double qubit_sigma = 0.0;
  double drift_sigma = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t run = 0;
  std::size_t block_size = 0;  // 0: num_reads / 10
  std::size_t exact_cap = 20;  // largest connected component sampled exactly
  bool allow_mcmc = false;     // Metropolis fallback for larger components
  std::size_t mcmc_sweeps = 100;

  static DeviceParams from_slope(double k) {
    DeviceParams p;
    p.temperature = 2.0 / k;
    return p;
  }
  double slope() const noexcept { return 2.0 / temperature; }
};

void validate(const DeviceParams& params);

// Reads in draw order, bit-packed. Order matters: temporal statistics split
// the reads into consecutive partitions.
class SampleSet {
 public:
  SampleSet(VarKind kind, std::size_t num_variables, std::size_t num_reads,
            std::uint64_t seed = 0, std::size_t block_size = 0);

  VarKind kind() const noexcept { return kind_; }
  std::size_t num_variables() const noexcept { return n_; }
  std::size_t num_reads() const noexcept { return reads_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t block_size() const noexcept { return block_size_; }

  bool is_one(std::size_t read, std::size_t var) const {
    return (bits_[read * words_ + var / 64] >> (var % 64)) & 1U;
  }
  void set_one(std::size_t read, std::size_t var, bool one) {
    std::uint64_t& w = bits_[read * words_ + var / 64];
    const std::uint64_t mask = std::uint64_t{1} << (var % 64);
    w = one ? (w | mask) : (w & ~mask);
  }

  // Packed bits of variables [64 * w, 64 * w + 64) for one read.
  std::uint64_t word(std::size_t read, std::size_t w) const { return bits_[read * words_ + w]; }

  // Branch-free set for freshly zeroed reads.
  void or_bit(std::size_t read, std::size_t var, bool one) {
    bits_[read * words_ + var / 64] |= std::uint64_t{one} << (var % 64);
  }

  std::size_t count_ones(std::size_t read) const;
  Assignment assignment(std::size_t read) const;
  std::string bitstring(std::size_t read) const;

  // Distinct reads with multiplicities, ordered by bitstring.
  std::vector<std::pair<std::string, std::size_t>> distinct_reads() const;

  bool operator==(const SampleSet&) const = default;

 private:
  VarKind kind_;
  std::size_t n_;
  std::size_t reads_;
  std::uint64_t seed_;
  std::size_t block_size_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

// Draws num_reads independent reads. The model is split into connected
// components; each component with at most exact_cap variables is sampled by
// inverse CDF over its enumerated Gibbs distribution, larger ones by
// Metropolis when allow_mcmc is set (CapExceeded otherwise).
SampleSet sample(const QuadraticModel& model, const DeviceParams& params,
                 std::size_t num_reads);

// Single-variable Metropolis over the whole model: one independent chain per
// read, random start, `sweeps` full sweeps, final state recorded.
SampleSet sample_mcmc(const QuadraticModel& model, const DeviceParams& params,
                      std::size_t num_reads, std::size_t sweeps);

// "# n=<n> reads=<r> seed=<s>" then "<count> <bitstring>" per distinct read.
void write_samples(std::ostream& out, const SampleSet& samples);

}  // namespace qacurve
