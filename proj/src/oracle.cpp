#include "qacurve/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "enumerate.hpp"
#include "qacurve/error.hpp"

namespace qacurve {

namespace detail {

StateSpace::StateSpace(const QuadraticModel& model)
    : n_(model.num_variables()),
      spin_(model.kind() == VarKind::Spin),
      offset_(model.offset()),
      linear_(model.linear_terms().begin(), model.linear_terms().end()) {
  if (n_ >= 63) fail(ErrorCode::CapExceeded, "state space too large to index");
  for (const auto& [pair, b] : model.quadratic_terms()) quads_.push_back({pair.first, pair.second, b});
}

Assignment StateSpace::assignment(std::uint64_t t) const {
  std::vector<std::int8_t> v(n_);
  for (std::size_t i = 0; i < n_; ++i) v[i] = static_cast<std::int8_t>(value(t, i));
  return Assignment(std::move(v));
}

}  // namespace detail

namespace {

void check_cap(const QuadraticModel& model, const OracleOptions& opts) {
  if (model.num_variables() > opts.max_variables) {
    fail(ErrorCode::CapExceeded, "model has " + std::to_string(model.num_variables()) +
                                     " variables, enumeration cap is " +
                                     std::to_string(opts.max_variables));
  }
}

void check_temperature(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    fail(ErrorCode::InvalidArgument, "temperature must be positive and finite");
  }
}

double min_energy(const detail::StateSpace& space) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 0; t < space.num_states(); ++t) best = std::min(best, space.energy(t));
  return best;
}

// Calls fn(t) for every state within tolerance of the minimum, in order.
template <class Fn>
double for_each_ground_state(const detail::StateSpace& space, double tolerance, Fn&& fn) {
  const double emin = min_energy(space);
  for (std::uint64_t t = 0; t < space.num_states(); ++t) {
    if (space.energy(t) <= emin + tolerance) fn(t);
  }
  return emin;
}

// Calls fn(t, w) with the min-shifted Boltzmann weight of every state and
// returns the partition function.
template <class Fn>
double for_each_weight(const detail::StateSpace& space, double temperature, Fn&& fn) {
  const double emin = min_energy(space);
  double z = 0.0;
  for (std::uint64_t t = 0; t < space.num_states(); ++t) {
    const double w = std::exp(-(space.energy(t) - emin) / temperature);
    z += w;
    fn(t, w);
  }
  return z;
}

void check_entity(const QuadraticModel& model, const EntityGroup& entity) {
  if (entity.qubits.empty()) fail(ErrorCode::InvalidArgument, "empty entity");
  for (Qubit q : entity.qubits) {
    if (q >= model.num_variables()) fail(ErrorCode::InvalidArgument, "entity qubit outside model");
  }
}

std::size_t entity_ones(const detail::StateSpace& space, std::uint64_t t, const EntityGroup& e) {
  std::size_t ones = 0;
  for (Qubit q : e.qubits) ones += space.is_one(t, q);
  return ones;
}

}  // namespace

GroundStateSet ground_states(const QuadraticModel& model, const OracleOptions& opts) {
  check_cap(model, opts);
  const detail::StateSpace space(model);
  GroundStateSet out;
  out.energy = for_each_ground_state(space, opts.tolerance,
                                     [&](std::uint64_t t) { out.states.push_back(space.assignment(t)); });
  return out;
}

MarginalVector t0_marginals(const QuadraticModel& model, const OracleOptions& opts) {
  check_cap(model, opts);
  const detail::StateSpace space(model);
  const std::size_t n = model.num_variables();
  std::vector<std::uint64_t> ones(n, 0);
  std::uint64_t degeneracy = 0;
  for_each_ground_state(space, opts.tolerance, [&](std::uint64_t t) {
    ++degeneracy;
    for (std::size_t i = 0; i < n; ++i) ones[i] += space.is_one(t, i);
  });
  MarginalVector out;
  out.temperature = 0.0;
  out.p_one.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.p_one[i] = static_cast<double>(ones[i]) / static_cast<double>(degeneracy);
  }
  return out;
}

MarginalVector boltzmann_marginals(const QuadraticModel& model, double temperature,
                                   const OracleOptions& opts) {
  check_cap(model, opts);
  check_temperature(temperature);
  const detail::StateSpace space(model);
  const std::size_t n = model.num_variables();
  std::vector<double> mass(n, 0.0);
  const double z = for_each_weight(space, temperature, [&](std::uint64_t t, double w) {
    for (std::size_t i = 0; i < n; ++i) {
      if (space.is_one(t, i)) mass[i] += w;
    }
  });
  MarginalVector out;
  out.temperature = temperature;
  out.p_one.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.p_one[i] = mass[i] / z;
  return out;
}

double t0_vote(const QuadraticModel& model, const EntityGroup& entity, const OracleOptions& opts) {
  check_cap(model, opts);
  check_entity(model, entity);
  const detail::StateSpace space(model);
  std::uint64_t wins = 0, degeneracy = 0;
  for_each_ground_state(space, opts.tolerance, [&](std::uint64_t t) {
    ++degeneracy;
    wins += wins_vote(entity_ones(space, t, entity), entity.size());
  });
  return static_cast<double>(wins) / static_cast<double>(degeneracy);
}

double boltzmann_vote(const QuadraticModel& model, const EntityGroup& entity, double temperature,
                      const OracleOptions& opts) {
  check_cap(model, opts);
  check_entity(model, entity);
  check_temperature(temperature);
  const detail::StateSpace space(model);
  double won = 0.0;
  const double z = for_each_weight(space, temperature, [&](std::uint64_t t, double w) {
    if (wins_vote(entity_ones(space, t, entity), entity.size())) won += w;
  });
  return won / z;
}

}  // namespace qacurve
