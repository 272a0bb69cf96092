#pragma once

#include <cstddef>
#include <vector>

#include "qacurve/model.hpp"
#include "qacurve/topology.hpp"

namespace qacurve {

// Exhaustive enumeration over all 2^n assignments. States are visited in
// lexicographic order of the assignment vector with zero < one, variable 0
// being the most significant position.
struct OracleOptions {
  std::size_t max_variables = 24;
  double tolerance = 1e-9;  // absolute degeneracy tolerance
};

struct GroundStateSet {
  double energy = 0.0;
  std::vector<Assignment> states;

  std::size_t degeneracy() const noexcept { return states.size(); }
};

struct MarginalVector {
  std::vector<double> p_one;
  double temperature = 0.0;  // 0 means the ground-state average

  std::size_t size() const noexcept { return p_one.size(); }
  double operator[](std::size_t i) const { return p_one[i]; }
};

GroundStateSet ground_states(const QuadraticModel& model, const OracleOptions& opts = {});

// Fraction of ground states in which each variable is one.
MarginalVector t0_marginals(const QuadraticModel& model, const OracleOptions& opts = {});

// Exact Gibbs marginals with weights exp(-(E - E_min) / temperature).
MarginalVector boltzmann_marginals(const QuadraticModel& model, double temperature,
                                   const OracleOptions& opts = {});

// Majority vote with even splits counted as wins: an entity is "one" when
// 2 * ones >= size. Entity qubits index model variables.
double t0_vote(const QuadraticModel& model, const EntityGroup& entity,
               const OracleOptions& opts = {});
double boltzmann_vote(const QuadraticModel& model, const EntityGroup& entity,
                      double temperature, const OracleOptions& opts = {});

constexpr bool wins_vote(std::size_t ones, std::size_t size) noexcept {
  return 2 * ones >= size;
}

}  // namespace qacurve
