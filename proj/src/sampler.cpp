#include "qacurve/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>

#include "enumerate.hpp"
#include "qacurve/error.hpp"
#include "qacurve/random.hpp"

namespace qacurve {

namespace {

// Stream tags. Changing these changes every sampled output.
enum : std::uint64_t { kTagQubit = 1, kTagDrift = 2, kTagExact = 3, kTagMcmc = 4 };

struct Component {
  std::vector<std::size_t> vars;  // ascending
};

std::vector<Component> components(const QuadraticModel& model) {
  const std::size_t n = model.num_variables();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [pair, b] : model.quadratic_terms()) {
    const std::size_t a = find(pair.first), c = find(pair.second);
    if (a != c) parent[std::max(a, c)] = std::min(a, c);
  }
  std::map<std::size_t, Component> by_root;
  for (std::size_t i = 0; i < n; ++i) by_root[find(i)].vars.push_back(i);
  std::vector<Component> out;
  out.reserve(by_root.size());
  for (auto& [root, comp] : by_root) out.push_back(std::move(comp));
  return out;
}

// Linear coefficients after the frozen per-qubit heterogeneity.
std::vector<double> device_linear(const QuadraticModel& model, const DeviceParams& p) {
  std::vector<double> lin(model.linear_terms().begin(), model.linear_terms().end());
  if (p.qubit_sigma > 0.0) {
    for (std::size_t i = 0; i < lin.size(); ++i) {
      RandomStream s(stream_key({p.seed, kTagQubit, i}));
      lin[i] *= std::exp(p.qubit_sigma * s.normal());
    }
  }
  return lin;
}

std::size_t effective_block(const DeviceParams& p, std::size_t reads) {
  return p.block_size ? p.block_size : std::max<std::size_t>(1, reads / 10);
}

std::vector<double> block_drift(const DeviceParams& p, std::size_t blocks) {
  std::vector<double> d(blocks, 0.0);
  if (p.drift_sigma > 0.0) {
    for (std::size_t b = 0; b < blocks; ++b) {
      RandomStream s(stream_key({p.seed, p.run, kTagDrift, b}));
      d[b] = p.drift_sigma * s.normal();
    }
  }
  return d;
}

QuadraticModel component_model(const QuadraticModel& model, const Component& comp,
                               const std::vector<double>& lin, double drift) {
  QuadraticModel local(model.kind(), comp.vars.size());
  std::vector<std::size_t> pos(model.num_variables(), 0);
  for (std::size_t k = 0; k < comp.vars.size(); ++k) {
    pos[comp.vars[k]] = k;
    local.set_linear(k, lin[comp.vars[k]] + drift);
  }
  for (const auto& [pair, b] : model.quadratic_terms()) {
    if (std::binary_search(comp.vars.begin(), comp.vars.end(), pair.first)) {
      local.set_quadratic(pos[pair.first], pos[pair.second], b);
    }
  }
  return local;
}

// Cumulative unnormalized Gibbs weights over the component's states.
class ExactDistribution {
 public:
  ExactDistribution(const QuadraticModel& local, double temperature) : space_(local) {
    const std::uint64_t states = space_.num_states();
    std::vector<double> e(states);
    double emin = std::numeric_limits<double>::infinity();
    for (std::uint64_t t = 0; t < states; ++t) emin = std::min(emin, e[t] = space_.energy(t));
    cdf_.resize(states);
    double acc = 0.0;
    for (std::uint64_t t = 0; t < states; ++t) cdf_[t] = acc += std::exp(-(e[t] - emin) / temperature);
  }

  std::uint64_t draw(RandomStream& s) const {
    const double u = s.uniform() * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<std::uint64_t>(it - cdf_.begin());
  }

  // For two states: the smallest 53-bit draw m for which draw() returns the
  // "one" state, i.e. m * 2^-53 * total >= cdf[0].
  std::uint64_t one_threshold() const {
    constexpr std::uint64_t top = std::uint64_t{1} << 53;
    const auto picks_one = [&](std::uint64_t m) {
      return static_cast<double>(m) * 0x1.0p-53 * cdf_[1] >= cdf_[0];
    };
    std::uint64_t m = static_cast<std::uint64_t>(std::min(std::ceil(cdf_[0] / cdf_[1] * 0x1.0p53), 0x1.0p53));
    while (m > 0 && picks_one(m - 1)) --m;
    while (m < top && !picks_one(m)) ++m;
    return m;
  }

  const detail::StateSpace& space() const noexcept { return space_; }

 private:
  detail::StateSpace space_;
  std::vector<double> cdf_;
};

class Metropolis {
 public:
  Metropolis(const QuadraticModel& local, double temperature)
      : spin_(local.kind() == VarKind::Spin),
        temperature_(temperature),
        linear_(local.linear_terms().begin(), local.linear_terms().end()),
        adj_(local.num_variables()) {
    for (const auto& [pair, b] : local.quadratic_terms()) {
      adj_[pair.first].push_back({pair.second, b});
      adj_[pair.second].push_back({pair.first, b});
    }
  }

  std::vector<std::int8_t> run(RandomStream& s, std::size_t sweeps) const {
    const std::size_t n = linear_.size();
    const std::int8_t zero = spin_ ? -1 : 0;
    std::vector<std::int8_t> x(n);
    for (auto& v : x) v = (s.next() >> 63) ? 1 : zero;
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
      for (std::size_t i = 0; i < n; ++i) {
        double field = linear_[i];
        for (const auto& [j, b] : adj_[i]) field += b * x[j];
        const double delta = spin_ ? -2.0 * x[i] * field : (1 - 2 * x[i]) * field;
        if (delta <= 0.0 || s.uniform() < std::exp(-delta / temperature_)) {
          x[i] = spin_ ? static_cast<std::int8_t>(-x[i]) : static_cast<std::int8_t>(1 - x[i]);
        }
      }
    }
    return x;
  }

 private:
  struct Neighbor {
    std::size_t var;
    double b;
  };
  bool spin_;
  double temperature_;
  std::vector<double> linear_;
  std::vector<std::vector<Neighbor>> adj_;
};

void check_reads(std::size_t reads) {
  if (reads == 0) fail(ErrorCode::InvalidArgument, "num_reads must be at least 1");
}

}  // namespace

void validate(const DeviceParams& p) {
  if (!(p.temperature > 0.0) || !std::isfinite(p.temperature)) {
    fail(ErrorCode::InvalidArgument, "device temperature must be positive and finite");
  }
  if (!(p.qubit_sigma >= 0.0) || !std::isfinite(p.qubit_sigma) || !(p.drift_sigma >= 0.0) ||
      !std::isfinite(p.drift_sigma)) {
    fail(ErrorCode::InvalidArgument, "device sigmas must be finite and non-negative");
  }
  if (p.exact_cap > 30) fail(ErrorCode::InvalidArgument, "exact_cap above 30");
}

SampleSet::SampleSet(VarKind kind, std::size_t num_variables, std::size_t num_reads,
                     std::uint64_t seed, std::size_t block_size)
    : kind_(kind),
      n_(num_variables),
      reads_(num_reads),
      seed_(seed),
      block_size_(block_size),
      words_((num_variables + 63) / 64),
      bits_(words_ * num_reads, 0) {}

std::size_t SampleSet::count_ones(std::size_t read) const {
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(std::popcount(bits_[read * words_ + w]));
  return c;
}

Assignment SampleSet::assignment(std::size_t read) const {
  std::vector<std::int8_t> v(n_);
  for (std::size_t i = 0; i < n_; ++i) v[i] = is_one(read, i) ? one_value(kind_) : zero_value(kind_);
  return Assignment(std::move(v));
}

std::string SampleSet::bitstring(std::size_t read) const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (is_one(read, i)) s[i] = '1';
  }
  return s;
}

std::vector<std::pair<std::string, std::size_t>> SampleSet::distinct_reads() const {
  std::map<std::string, std::size_t> counts;
  for (std::size_t r = 0; r < reads_; ++r) ++counts[bitstring(r)];
  return {counts.begin(), counts.end()};
}

SampleSet sample(const QuadraticModel& model, const DeviceParams& params, std::size_t num_reads) {
  validate(params);
  check_reads(num_reads);
  const std::size_t block = effective_block(params, num_reads);
  const std::size_t blocks = (num_reads + block - 1) / block;
  SampleSet out(model.kind(), model.num_variables(), num_reads, params.seed, block);

  const std::vector<double> lin = device_linear(model, params);
  const std::vector<double> drift = block_drift(params, blocks);
  const bool drifting = params.drift_sigma > 0.0;

  struct Part {
    Component comp;
    std::optional<ExactDistribution> dist;
  };
  std::vector<Part> exact;
  std::vector<Component> large;
  for (Component& comp : components(model)) {
    if (comp.vars.size() <= params.exact_cap) {
      exact.push_back({std::move(comp), std::nullopt});
    } else if (params.allow_mcmc) {
      large.push_back(std::move(comp));
    } else {
      fail(ErrorCode::CapExceeded, "connected component of " + std::to_string(comp.vars.size()) +
                                       " variables exceeds the exact sampling cap of " +
                                       std::to_string(params.exact_cap) + " and MCMC is disabled");
    }
  }

  // Each component draws from its own (component, block) stream, so the
  // interleaving below does not affect the values drawn. Single-variable
  // components are flattened into one contiguous array for the inner loop.
  struct Single {
    std::size_t var;
    std::uint64_t threshold;
    RandomStream stream;
  };
  std::vector<Single> singles;
  std::vector<RandomStream> streams;
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t first = b * block, last = std::min(num_reads, first + block);
    singles.clear();
    streams.clear();
    for (Part& part : exact) {
      if (!part.dist || drifting) {
        part.dist.emplace(component_model(model, part.comp, lin, drift[b]), params.temperature);
      }
      const RandomStream stream(stream_key({params.seed, params.run, kTagExact, part.comp.vars.front(), b}));
      if (part.comp.vars.size() == 1) {
        singles.push_back({part.comp.vars.front(), part.dist->one_threshold(), stream});
      } else {
        streams.push_back(stream);
      }
    }
    for (std::size_t r = first; r < last; ++r) {
      for (Single& one : singles) {
        out.or_bit(r, one.var, (one.stream.next() >> 11) >= one.threshold);
      }
      std::size_t c = 0;
      for (const Part& part : exact) {
        if (part.comp.vars.size() == 1) continue;
        const std::uint64_t t = part.dist->draw(streams[c++]);
        for (std::size_t k = 0; k < part.comp.vars.size(); ++k) {
          if (part.dist->space().is_one(t, k)) out.set_one(r, part.comp.vars[k], true);
        }
      }
    }
    for (const Component& comp : large) {
      const Metropolis chain(component_model(model, comp, lin, drift[b]), params.temperature);
      for (std::size_t r = first; r < last; ++r) {
        RandomStream s(stream_key({params.seed, params.run, kTagMcmc, comp.vars.front(), r}));
        const auto x = chain.run(s, params.mcmc_sweeps);
        for (std::size_t k = 0; k < comp.vars.size(); ++k) {
          if (x[k] == 1) out.set_one(r, comp.vars[k], true);
        }
      }
    }
  }
  return out;
}

SampleSet sample_mcmc(const QuadraticModel& model, const DeviceParams& params,
                      std::size_t num_reads, std::size_t sweeps) {
  validate(params);
  check_reads(num_reads);
  if (sweeps == 0) fail(ErrorCode::InvalidArgument, "sweeps must be at least 1");
  const std::size_t block = effective_block(params, num_reads);
  const std::size_t blocks = (num_reads + block - 1) / block;
  SampleSet out(model.kind(), model.num_variables(), num_reads, params.seed, block);

  const std::vector<double> lin = device_linear(model, params);
  const std::vector<double> drift = block_drift(params, blocks);
  Component all;
  all.vars.resize(model.num_variables());
  std::iota(all.vars.begin(), all.vars.end(), std::size_t{0});

  for (std::size_t b = 0; b < blocks; ++b) {
    const Metropolis chain(component_model(model, all, lin, drift[b]), params.temperature);
    for (std::size_t r = b * block; r < std::min(num_reads, (b + 1) * block); ++r) {
      RandomStream s(stream_key({params.seed, params.run, kTagMcmc, ~std::uint64_t{0}, r}));
      const auto x = chain.run(s, sweeps);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 1) out.set_one(r, i, true);
      }
    }
  }
  return out;
}

void write_samples(std::ostream& out, const SampleSet& samples) {
  out << "# n=" << samples.num_variables() << " reads=" << samples.num_reads()
      << " seed=" << samples.seed() << '\n';
  for (const auto& [bits, count] : samples.distinct_reads()) out << count << ' ' << bits << '\n';
}

}  // namespace qacurve
