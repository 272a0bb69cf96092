#include "qacurve/model.hpp"

#include <cmath>
#include <istream>
#include <optional>
#include <algorithm>
#include <ostream>
#include <string>

#include "qacurve/error.hpp"
#include "qacurve/metrics.hpp"
#include "text_util.hpp"

namespace qacurve {

namespace {

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, std::string(what) + " must be finite");
}

void require_kind(const QuadraticModel& m, VarKind kind, const char* op) {
  if (m.kind() != kind) {
    fail(ErrorCode::DomainError, std::string(op) + " expects a " + to_string(kind) + " model");
  }
}

}  // namespace

const char* to_string(VarKind kind) noexcept {
  return kind == VarKind::Spin ? "spin" : "binary";
}

QuadraticModel::QuadraticModel(VarKind kind, std::size_t num_variables)
    : kind_(kind), linear_(num_variables, 0.0) {}

void QuadraticModel::check_index(std::size_t i) const {
  if (i >= linear_.size()) {
    fail(ErrorCode::InvalidArgument, "variable " + std::to_string(i) + " out of range (n=" +
                                         std::to_string(linear_.size()) + ")");
  }
}

VarPair QuadraticModel::check_pair(std::size_t i, std::size_t j) const {
  check_index(i);
  check_index(j);
  if (i == j) fail(ErrorCode::InvalidArgument, "self-coupler on variable " + std::to_string(i));
  return VarPair(i, j);
}

double QuadraticModel::linear(std::size_t i) const {
  check_index(i);
  return linear_[i];
}

void QuadraticModel::set_linear(std::size_t i, double value) {
  check_index(i);
  check_finite(value, "linear coefficient");
  linear_[i] = value;
}

void QuadraticModel::add_linear(std::size_t i, double value) {
  set_linear(i, linear(i) + value);
}

double QuadraticModel::quadratic(std::size_t i, std::size_t j) const {
  auto it = quadratic_.find(check_pair(i, j));
  return it == quadratic_.end() ? 0.0 : it->second;
}

void QuadraticModel::set_quadratic(std::size_t i, std::size_t j, double value) {
  const VarPair key = check_pair(i, j);
  check_finite(value, "quadratic coefficient");
  if (value == 0.0) {
    quadratic_.erase(key);
  } else {
    quadratic_[key] = value;
  }
}

void QuadraticModel::add_quadratic(std::size_t i, std::size_t j, double value) {
  set_quadratic(i, j, quadratic(i, j) + value);
}

void QuadraticModel::set_offset(double value) {
  check_finite(value, "offset");
  offset_ = value;
}

void validate(const QuadraticModel& model, const Assignment& x) {
  if (x.size() != model.num_variables()) {
    fail(ErrorCode::DomainError, "assignment has " + std::to_string(x.size()) +
                                     " values, model has " +
                                     std::to_string(model.num_variables()));
  }
  const std::int8_t zero = zero_value(model.kind());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != zero && x[i] != one_value(model.kind())) {
      fail(ErrorCode::DomainError, "value " + std::to_string(x[i]) + " of variable " +
                                       std::to_string(i) + " outside " +
                                       to_string(model.kind()) + " domain");
    }
  }
}

double energy(const QuadraticModel& model, const Assignment& x) {
  validate(model, x);
  double e = model.offset();
  const auto lin = model.linear_terms();
  for (std::size_t i = 0; i < lin.size(); ++i) e += lin[i] * x[i];
  for (const auto& [pair, b] : model.quadratic_terms()) e += b * x[pair.first] * x[pair.second];
  return e;
}

QuadraticModel to_qubo(const QuadraticModel& spin_model) {
  require_kind(spin_model, VarKind::Spin, "to_qubo");
  QuadraticModel out(VarKind::Binary, spin_model.num_variables());
  double offset = spin_model.offset();
  const auto h = spin_model.linear_terms();
  std::vector<double> lin(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    lin[i] = 2.0 * h[i];
    offset -= h[i];
  }
  for (const auto& [pair, j] : spin_model.quadratic_terms()) {
    out.set_quadratic(pair.first, pair.second, 4.0 * j);
    lin[pair.first] -= 2.0 * j;
    lin[pair.second] -= 2.0 * j;
    offset += j;
  }
  for (std::size_t i = 0; i < lin.size(); ++i) out.set_linear(i, lin[i]);
  out.set_offset(offset);
  return out;
}

QuadraticModel to_ising(const QuadraticModel& binary_model) {
  require_kind(binary_model, VarKind::Binary, "to_ising");
  QuadraticModel out(VarKind::Spin, binary_model.num_variables());
  double offset = binary_model.offset();
  const auto a = binary_model.linear_terms();
  std::vector<double> lin(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    lin[i] = 0.5 * a[i];
    offset += 0.5 * a[i];
  }
  for (const auto& [pair, b] : binary_model.quadratic_terms()) {
    out.set_quadratic(pair.first, pair.second, 0.25 * b);
    lin[pair.first] += 0.25 * b;
    lin[pair.second] += 0.25 * b;
    offset += 0.25 * b;
  }
  for (std::size_t i = 0; i < lin.size(); ++i) out.set_linear(i, lin[i]);
  out.set_offset(offset);
  return out;
}

Assignment spin_to_binary(const Assignment& spins) {
  std::vector<std::int8_t> v(spins.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (spins[i] != 1 && spins[i] != -1) fail(ErrorCode::DomainError, "not a spin value");
    v[i] = static_cast<std::int8_t>((spins[i] + 1) / 2);
  }
  return Assignment(std::move(v));
}

Assignment binary_to_spin(const Assignment& bits) {
  std::vector<std::int8_t> v(bits.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) fail(ErrorCode::DomainError, "not a binary value");
    v[i] = static_cast<std::int8_t>(2 * bits[i] - 1);
  }
  return Assignment(std::move(v));
}

QuadraticModel read_model(std::istream& in) {
  struct Quad {
    std::size_t i, j;
    double v;
    std::size_t line;
  };
  std::optional<VarKind> kind;
  std::size_t n = 0;
  double offset = 0.0;
  std::vector<std::pair<std::size_t, double>> lins;
  std::vector<Quad> quads;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = detail::tokens(line);
    if (tok.empty()) continue;
    const auto bad = [&](const char* what) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + what);
    };
    if (tok[0] == "kind") {
      if (tok.size() != 2) bad("expected 'kind spin|binary'");
      if (kind) bad("duplicate kind");
      if (tok[1] == "spin") {
        kind = VarKind::Spin;
      } else if (tok[1] == "binary") {
        kind = VarKind::Binary;
      } else {
        bad("kind must be spin or binary");
      }
    } else if (tok[0] == "vars") {
      if (tok.size() != 2) bad("expected 'vars <n>'");
      n = std::max(n, detail::parse_index(tok[1], line_no));
    } else if (tok[0] == "offset") {
      if (tok.size() != 2) bad("expected 'offset <real>'");
      offset = detail::parse_real(tok[1], line_no);
    } else if (tok[0] == "lin") {
      if (tok.size() != 3) bad("expected 'lin <i> <real>'");
      const std::size_t i = detail::parse_index(tok[1], line_no);
      lins.emplace_back(i, detail::parse_real(tok[2], line_no));
      n = std::max(n, i + 1);
    } else if (tok[0] == "quad") {
      if (tok.size() != 4) bad("expected 'quad <i> <j> <real>'");
      Quad q{detail::parse_index(tok[1], line_no), detail::parse_index(tok[2], line_no),
             detail::parse_real(tok[3], line_no), line_no};
      if (q.i == q.j) bad("self-coupler");
      n = std::max({n, q.i + 1, q.j + 1});
      quads.push_back(q);
    } else {
      bad("unknown directive");
    }
  }
  if (!kind) fail(ErrorCode::ParseError, "model file has no 'kind' line");

  QuadraticModel m(*kind, n);
  m.set_offset(offset);
  for (auto [i, v] : lins) m.add_linear(i, v);
  std::map<VarPair, std::size_t> seen;
  for (const auto& q : quads) {
    if (auto [it, fresh] = seen.emplace(VarPair(q.i, q.j), q.line); !fresh) {
      fail(ErrorCode::ParseError, "line " + std::to_string(q.line) +
                                      ": duplicate coupler (first on line " +
                                      std::to_string(it->second) + ")");
    }
    m.set_quadratic(q.i, q.j, q.v);
  }
  return m;
}

QuadraticModel load_model(const std::string& path) {
  auto in = detail::open_input(path);
  return read_model(in);
}

void write_model(std::ostream& out, const QuadraticModel& model) {
  out << "kind " << to_string(model.kind()) << '\n';
  out << "vars " << model.num_variables() << '\n';
  out << "offset " << format_number(model.offset()) << '\n';
  const auto lin = model.linear_terms();
  for (std::size_t i = 0; i < lin.size(); ++i) {
    if (lin[i] != 0.0) out << "lin " << i << ' ' << format_number(lin[i]) << '\n';
  }
  for (const auto& [pair, b] : model.quadratic_terms()) {
    out << "quad " << pair.first << ' ' << pair.second << ' ' << format_number(b) << '\n';
  }
}

}  // namespace qacurve
