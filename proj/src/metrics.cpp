#include "qacurve/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "qacurve/error.hpp"
#include "qacurve/oracle.hpp"
#include "text_util.hpp"

namespace qacurve {

const char* to_string(Metric m) noexcept { return m == Metric::Mean ? "mean" : "vote"; }
const char* to_string(Backend b) noexcept { return b == Backend::Exact ? "exact" : "sampled"; }

CurveTable::CurveTable(std::vector<double> sweep, std::vector<double> family)
    : sweep_values(std::move(sweep)),
      family_values(std::move(family)),
      values(sweep_values.size() * family_values.size(), 0.0) {}

std::vector<double> CurveTable::column(std::size_t col) const {
  if (col >= cols()) fail(ErrorCode::InvalidArgument, "column out of range");
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, col);
  return out;
}

void write_curve(std::ostream& out, const CurveTable& t) {
  out << "# " << t.sweep_name;
  for (double f : t.family_values) out << ' ' << format_number(f);
  out << "\n# family=" << t.family_name << " metric=" << to_string(t.metric)
      << " backend=" << to_string(t.backend);
  for (const auto& [k, v] : t.provenance) out << ' ' << k << '=' << v;
  out << '\n';
  for (std::size_t r = 0; r < t.rows(); ++r) {
    out << r << ' ' << format_number(t.sweep_values[r]);
    for (std::size_t c = 0; c < t.cols(); ++c) out << ' ' << format_number(t.at(r, c));
    out << '\n';
  }
}

CurveTable read_curve(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  CurveTable t;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto tok = detail::tokens(line, false);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok[0] != "#" || tok.size() < 3) {
        fail(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                        ": expected '# <sweep_name> <family values...>'");
      }
      t.sweep_name = std::string(tok[1]);
      for (std::size_t i = 2; i < tok.size(); ++i) t.family_values.push_back(detail::parse_real(tok[i], line_no));
      have_header = true;
      continue;
    }
    if (tok[0].front() == '#') {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const auto eq = tok[i].find('=');
        if (eq == std::string_view::npos) continue;
        const std::string key(tok[i].substr(0, eq)), value(tok[i].substr(eq + 1));
        if (key == "family") {
          t.family_name = value;
        } else if (key == "metric") {
          if (value != "mean" && value != "vote") {
            fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown metric '" + value + "'");
          }
          t.metric = value == "vote" ? Metric::Vote : Metric::Mean;
        } else if (key == "backend") {
          if (value != "exact" && value != "sampled") {
            fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": unknown backend '" + value + "'");
          }
          t.backend = value == "sampled" ? Backend::Sampled : Backend::Exact;
        } else {
          t.provenance.emplace_back(key, value);
        }
      }
      continue;
    }
    if (tok.size() != 2 + t.cols()) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                      std::to_string(2 + t.cols()) + " columns, found " +
                                      std::to_string(tok.size()));
    }
    if (detail::parse_index(tok[0], line_no) != t.rows()) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": row index out of sequence");
    }
    t.sweep_values.push_back(detail::parse_real(tok[1], line_no));
    for (std::size_t c = 0; c < t.cols(); ++c) {
      const double v = detail::parse_real(tok[2 + c], line_no);
      if (v < 0.0 || v > 1.0) {
        fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": value outside [0, 1]");
      }
      t.values.push_back(v);
    }
  }
  if (!have_header) fail(ErrorCode::ParseError, "curve file is empty");
  if (t.rows() == 0) fail(ErrorCode::ParseError, "curve file has no data rows");
  return t;
}

CurveTable load_curve(const std::string& path) {
  auto in = detail::open_input(path);
  return read_curve(in);
}

namespace {

void check_entities(const SampleSet& s, std::span<const EntityGroup> entities) {
  if (entities.empty()) fail(ErrorCode::InvalidArgument, "entity list is empty");
  if (s.num_reads() == 0) fail(ErrorCode::InvalidArgument, "sample set is empty");
  for (const auto& e : entities) {
    if (e.qubits.empty()) fail(ErrorCode::InvalidArgument, "entity has no qubits");
    for (Qubit q : e.qubits) {
      if (q >= s.num_variables()) fail(ErrorCode::InvalidArgument, "entity qubit outside sample width");
    }
  }
}

std::size_t ones_in(const SampleSet& s, std::size_t read, const EntityGroup& e) {
  std::size_t ones = 0;
  for (Qubit q : e.qubits) ones += s.is_one(read, q);
  return ones;
}

void check_partitions(const SampleSet& s, std::size_t partitions) {
  if (partitions == 0) fail(ErrorCode::InvalidArgument, "partitions must be at least 1");
  if (s.num_reads() == 0 || s.num_variables() == 0) fail(ErrorCode::InvalidArgument, "sample set is empty");
  if (s.num_reads() % partitions != 0) {
    fail(ErrorCode::InvalidArgument, std::to_string(s.num_reads()) + " reads do not split into " +
                                         std::to_string(partitions) + " equal partitions");
  }
}

}  // namespace

double one_fraction(const SampleSet& s) {
  if (s.num_reads() == 0 || s.num_variables() == 0) fail(ErrorCode::InvalidArgument, "sample set is empty");
  std::size_t ones = 0;
  for (std::size_t r = 0; r < s.num_reads(); ++r) ones += s.count_ones(r);
  return static_cast<double>(ones) /
         (static_cast<double>(s.num_reads()) * static_cast<double>(s.num_variables()));
}

std::vector<std::size_t> variable_counts(const SampleSet& s) {
  std::vector<std::size_t> counts(s.num_variables(), 0);
  for (std::size_t r = 0; r < s.num_reads(); ++r) {
    for (std::size_t base = 0; base < s.num_variables(); base += 64) {
      for (std::uint64_t w = s.word(r, base / 64); w != 0; w &= w - 1) {
        ++counts[base + static_cast<std::size_t>(std::countr_zero(w))];
      }
    }
  }
  return counts;
}

double mean_metric(const SampleSet& s, std::span<const EntityGroup> entities) {
  check_entities(s, entities);
  std::vector<std::size_t> ones(entities.size(), 0);
  for (std::size_t r = 0; r < s.num_reads(); ++r) {
    for (std::size_t e = 0; e < entities.size(); ++e) ones[e] += ones_in(s, r, entities[e]);
  }
  double total = 0.0;
  for (std::size_t e = 0; e < entities.size(); ++e) {
    total += static_cast<double>(ones[e]) / static_cast<double>(entities[e].size());
  }
  return total / (static_cast<double>(s.num_reads()) * static_cast<double>(entities.size()));
}

double vote_metric(const SampleSet& s, std::span<const EntityGroup> entities) {
  check_entities(s, entities);
  std::size_t wins = 0;
  for (std::size_t r = 0; r < s.num_reads(); ++r) {
    for (const auto& e : entities) wins += wins_vote(ones_in(s, r, e), e.size());
  }
  return static_cast<double>(wins) /
         (static_cast<double>(s.num_reads()) * static_cast<double>(entities.size()));
}

double population_std(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

double temporal_std(const SampleSet& s, std::size_t partitions) {
  check_partitions(s, partitions);
  const std::size_t per = s.num_reads() / partitions;
  std::vector<double> means(partitions);
  for (std::size_t p = 0; p < partitions; ++p) {
    std::size_t ones = 0;
    for (std::size_t r = p * per; r < (p + 1) * per; ++r) ones += s.count_ones(r);
    means[p] = static_cast<double>(ones) / (static_cast<double>(per) * static_cast<double>(s.num_variables()));
  }
  return population_std(means);
}

double spatial_std(const SampleSet& s, std::size_t partitions) {
  check_partitions(s, partitions);
  const std::vector<std::size_t> ones = variable_counts(s);
  std::vector<double> means(ones.size());
  for (std::size_t i = 0; i < ones.size(); ++i) {
    means[i] = static_cast<double>(ones[i]) / static_cast<double>(s.num_reads());
  }
  return population_std(means);
}

namespace {

double sigmoid(double k, double x) { return 1.0 / (1.0 + std::exp(k * x)); }

double sse(std::span<const double> x, std::span<const double> p, double k) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = p[i] - sigmoid(k, x[i]);
    s += r * r;
  }
  return s;
}

}  // namespace

SigmoidFit fit_sigmoid(std::span<const double> x, std::span<const double> p, double lo, double hi,
                       double rel_tol) {
  if (x.size() != p.size() || x.size() < 2) {
    fail(ErrorCode::InvalidArgument, "sigmoid fit needs at least two matched points");
  }
  if (!(lo > 0.0) || !(hi > lo) || !(rel_tol > 0.0)) {
    fail(ErrorCode::InvalidArgument, "bad sigmoid search interval");
  }
  const auto [pmin, pmax] = std::minmax_element(p.begin(), p.end());
  if (*pmax - *pmin < 1e-12) fail(ErrorCode::DegenerateFit, "curve is constant; slope is undetermined");

  // Golden-section search on log k; a bracket of width log(1 + rel_tol) in
  // log space is a relative tolerance on k.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(lo), b = std::log(hi);
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = sse(x, p, std::exp(c)), fd = sse(x, p, std::exp(d));
  const double width = std::log1p(rel_tol);
  while (b - a > width) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = sse(x, p, std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = sse(x, p, std::exp(d));
    }
  }
  SigmoidFit fit;
  fit.k = std::exp(0.5 * (a + b));
  fit.rms = std::sqrt(sse(x, p, fit.k) / static_cast<double>(x.size()));
  fit.at_bound = std::log(hi) - std::log(fit.k) < 10 * width || std::log(fit.k) - std::log(lo) < 10 * width;
  return fit;
}

}  // namespace qacurve
