#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qacurve/model.hpp"

namespace qacurve::detail {

// Energy evaluation over packed states. State index t encodes variable i in
// bit (n - 1 - i), so increasing t walks assignments in lexicographic order.
// Terms are summed in the same order as qacurve::energy, so both give
// bitwise-identical results.
class StateSpace {
 public:
  explicit StateSpace(const QuadraticModel& model);

  std::size_t num_variables() const noexcept { return n_; }
  std::uint64_t num_states() const noexcept { return std::uint64_t{1} << n_; }

  bool is_one(std::uint64_t t, std::size_t i) const noexcept { return (t >> (n_ - 1 - i)) & 1U; }

  double energy(std::uint64_t t) const noexcept {
    double e = offset_;
    for (std::size_t i = 0; i < n_; ++i) e += linear_[i] * value(t, i);
    for (const auto& q : quads_) e += q.b * value(t, q.i) * value(t, q.j);
    return e;
  }

  Assignment assignment(std::uint64_t t) const;

 private:
  int value(std::uint64_t t, std::size_t i) const noexcept {
    const int bit = static_cast<int>(is_one(t, i));
    return spin_ ? 2 * bit - 1 : bit;
  }

  struct Quad {
    std::size_t i, j;
    double b;
  };
  std::size_t n_;
  bool spin_;
  double offset_;
  std::vector<double> linear_;
  std::vector<Quad> quads_;
};

}  // namespace qacurve::detail
