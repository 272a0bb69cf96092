#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qacurve {

// SPIN variables take -1/+1, BINARY variables take 0/1. In both domains the
// value 1 is the "one" state that readout probabilities refer to.
enum class VarKind { Spin, Binary };

constexpr std::int8_t zero_value(VarKind kind) noexcept {
  return kind == VarKind::Spin ? -1 : 0;
}
constexpr std::int8_t one_value(VarKind) noexcept { return 1; }

const char* to_string(VarKind kind) noexcept;

// Unordered index pair, always stored with first < second.
struct VarPair {
  std::size_t first = 0;
  std::size_t second = 0;

  VarPair() = default;
  VarPair(std::size_t a, std::size_t b)
      : first(a < b ? a : b), second(a < b ? b : a) {}

  auto operator<=>(const VarPair&) const = default;
};

class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<std::int8_t> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  std::int8_t operator[](std::size_t i) const { return values_[i]; }
  std::span<const std::int8_t> values() const noexcept { return values_; }

  bool operator==(const Assignment&) const = default;

 private:
  std::vector<std::int8_t> values_;
};

// Objective offset + sum_i a_i x_i + sum_{i<j} b_ij x_i x_j over SPIN or BINARY
// variables. Quadratic terms with a zero coefficient are not stored.
class QuadraticModel {
 public:
  QuadraticModel(VarKind kind, std::size_t num_variables);

  VarKind kind() const noexcept { return kind_; }
  std::size_t num_variables() const noexcept { return linear_.size(); }

  double linear(std::size_t i) const;
  std::span<const double> linear_terms() const noexcept { return linear_; }
  void set_linear(std::size_t i, double value);
  void add_linear(std::size_t i, double value);

  double quadratic(std::size_t i, std::size_t j) const;
  const std::map<VarPair, double>& quadratic_terms() const noexcept { return quadratic_; }
  void set_quadratic(std::size_t i, std::size_t j, double value);
  void add_quadratic(std::size_t i, std::size_t j, double value);

  double offset() const noexcept { return offset_; }
  void set_offset(double value);

  bool operator==(const QuadraticModel&) const = default;

 private:
  void check_index(std::size_t i) const;
  VarPair check_pair(std::size_t i, std::size_t j) const;

  VarKind kind_;
  std::vector<double> linear_;
  std::map<VarPair, double> quadratic_;
  double offset_ = 0.0;
};

// Throws DomainError when x has the wrong length or a value outside the
// model's domain.
void validate(const QuadraticModel& model, const Assignment& x);

double energy(const QuadraticModel& model, const Assignment& x);

// s = 2q - 1. Offsets are carried so energies (not only minimizers) agree.
QuadraticModel to_qubo(const QuadraticModel& spin_model);
// q = (s + 1) / 2, the inverse of to_qubo.
QuadraticModel to_ising(const QuadraticModel& binary_model);

// Maps an assignment between domains under s = 2q - 1.
Assignment spin_to_binary(const Assignment& spins);
Assignment binary_to_spin(const Assignment& bits);

// Line-oriented text format:
//   kind spin|binary
//   vars <n>            (optional; n also grows to cover every index used)
//   offset <real>
//   lin <i> <real>
//   quad <i> <j> <real>
// Blank lines and '#' comments are ignored.
QuadraticModel read_model(std::istream& in);
QuadraticModel load_model(const std::string& path);
void write_model(std::ostream& out, const QuadraticModel& model);

}  // namespace qacurve
