#include "qacurve/topology.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "qacurve/error.hpp"
#include "qacurve/random.hpp"
#include "text_util.hpp"

namespace qacurve {

const char* to_string(EntityKind kind) noexcept {
  return kind == EntityKind::Chain ? "chain" : "cell";
}

ChimeraGraph::ChimeraGraph(std::size_t rows, std::size_t cols, std::size_t shore,
                           std::set<Qubit> dead)
    : rows_(rows), cols_(cols), shore_(shore), dead_(std::move(dead)) {
  if (rows == 0 || cols == 0 || shore == 0) {
    fail(ErrorCode::InvalidArgument, "chimera dimensions must be at least 1");
  }
  const std::size_t n = num_qubits();
  if (!dead_.empty() && *dead_.rbegin() >= n) {
    fail(ErrorCode::InvalidArgument, "dead qubit " + std::to_string(*dead_.rbegin()) +
                                         " out of range (" + std::to_string(n) + " qubits)");
  }

  std::vector<std::vector<Qubit>> inter(n), intra(n);
  const auto link = [&](std::vector<std::vector<Qubit>>& adj, Qubit a, Qubit b) {
    edges_.emplace_back(a, b);
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t i = 0; i < shore; ++i) {
        const Qubit left = qubit({r, c, 0, i});
        for (std::size_t j = 0; j < shore; ++j) link(intra, left, qubit({r, c, 1, j}));
        if (r + 1 < rows) link(inter, left, qubit({r + 1, c, 0, i}));
        if (c + 1 < cols) link(inter, qubit({r, c, 1, i}), qubit({r, c + 1, 1, i}));
      }
    }
  }
  std::sort(edges_.begin(), edges_.end());

  adjacency_.resize(n);
  for (Qubit q = 0; q < n; ++q) {
    std::sort(inter[q].begin(), inter[q].end());
    std::sort(intra[q].begin(), intra[q].end());
    adjacency_[q] = std::move(inter[q]);
    adjacency_[q].insert(adjacency_[q].end(), intra[q].begin(), intra[q].end());
  }
}

Qubit ChimeraGraph::qubit(const ChimeraCoord& c) const {
  if (c.row >= rows_ || c.col >= cols_ || c.side > 1 || c.index >= shore_) {
    fail(ErrorCode::InvalidArgument, "chimera coordinate out of range");
  }
  return ((c.row * cols_ + c.col) * 2 + c.side) * shore_ + c.index;
}

ChimeraCoord ChimeraGraph::coord(Qubit q) const {
  if (q >= num_qubits()) fail(ErrorCode::InvalidArgument, "qubit out of range");
  ChimeraCoord c;
  c.index = q % shore_;
  q /= shore_;
  c.side = q % 2;
  q /= 2;
  c.col = q % cols_;
  c.row = q / cols_;
  return c;
}

bool ChimeraGraph::has_edge(Qubit a, Qubit b) const {
  if (a == b) return false;
  return std::binary_search(edges_.begin(), edges_.end(), Coupler(a, b));
}

ChimeraGraph chimera(std::size_t rows, std::size_t cols, std::size_t shore,
                     const std::set<Qubit>& dead) {
  return ChimeraGraph(rows, cols, shore, dead);
}

std::vector<EntityGroup> complete_cells(const ChimeraGraph& g) {
  std::vector<EntityGroup> cells;
  const std::size_t s = g.shore();
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      EntityGroup cell;
      cell.kind = EntityKind::Cell;
      for (std::size_t side = 0; side < 2; ++side) {
        for (std::size_t i = 0; i < s; ++i) cell.qubits.push_back(g.qubit({r, c, side, i}));
      }
      if (std::any_of(cell.qubits.begin(), cell.qubits.end(),
                      [&](Qubit q) { return g.is_dead(q); })) {
        continue;
      }
      for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < s; ++j) cell.couplers.emplace_back(cell.qubits[i], cell.qubits[s + j]);
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

namespace {

// Backtracking placement. Chain k starts at a scan position after chain k-1's
// start, which loses no solutions: any placement can be listed in order of
// its chains' earliest endpoints.
class ChainRouter {
 public:
  ChainRouter(const ChimeraGraph& g, std::size_t count, std::size_t length,
              std::vector<Qubit> order)
      : g_(g), count_(count), length_(length), order_(std::move(order)),
        used_(g.num_qubits(), false) {}

  std::vector<EntityGroup> route() {
    if (!place(0)) {
      fail(ErrorCode::Infeasible, "cannot place " + std::to_string(count_) +
                                      " disjoint chains of length " + std::to_string(length_));
    }
    return std::move(chains_);
  }

 private:
  static constexpr std::size_t kBudget = 20'000'000;

  bool place(std::size_t first) {
    if (chains_.size() == count_) return true;
    for (std::size_t p = first; p < order_.size(); ++p) {
      const Qubit q = order_[p];
      if (used_[q]) continue;
      path_.assign(1, q);
      used_[q] = true;
      if (extend(p)) return true;
      used_[q] = false;
    }
    return false;
  }

  bool extend(std::size_t start_pos) {
    if (++steps_ > kBudget) {
      fail(ErrorCode::Infeasible, "chain placement search exhausted its step budget");
    }
    if (path_.size() == length_) {
      EntityGroup chain;
      chain.kind = EntityKind::Chain;
      chain.qubits = path_;
      for (std::size_t i = 1; i < path_.size(); ++i) chain.couplers.emplace_back(path_[i - 1], path_[i]);
      chains_.push_back(std::move(chain));
      const std::vector<Qubit> saved = path_;
      if (place(start_pos + 1)) return true;
      path_ = saved;
      chains_.pop_back();
      return false;
    }
    for (Qubit nb : g_.neighbors(path_.back())) {
      if (used_[nb] || g_.is_dead(nb)) continue;
      used_[nb] = true;
      path_.push_back(nb);
      if (extend(start_pos)) return true;
      path_.pop_back();
      used_[nb] = false;
    }
    return false;
  }

  const ChimeraGraph& g_;
  std::size_t count_, length_;
  std::vector<Qubit> order_;
  std::vector<bool> used_;
  std::vector<Qubit> path_;
  std::vector<EntityGroup> chains_;
  std::size_t steps_ = 0;
};

}  // namespace

std::vector<EntityGroup> disjoint_chains(const ChimeraGraph& g, std::size_t count,
                                         std::size_t length, std::uint64_t seed) {
  if (count == 0 || length == 0) {
    fail(ErrorCode::InvalidArgument, "chain count and length must be at least 1");
  }
  if (count > g.num_working() / length) {
    fail(ErrorCode::Infeasible, std::to_string(count) + " chains of length " +
                                    std::to_string(length) + " need more than the " +
                                    std::to_string(g.num_working()) + " working qubits");
  }
  std::vector<Qubit> working;
  working.reserve(g.num_working());
  for (Qubit q = 0; q < g.num_qubits(); ++q) {
    if (!g.is_dead(q)) working.push_back(q);
  }
  const std::size_t offset = static_cast<std::size_t>(mix64(seed) % working.size());
  std::rotate(working.begin(), working.begin() + static_cast<std::ptrdiff_t>(offset), working.end());
  return ChainRouter(g, count, length, std::move(working)).route();
}

std::set<Qubit> read_dead_mask(std::istream& in) {
  std::set<Qubit> dead;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = detail::tokens(line);
    if (tok.empty()) continue;
    if (tok.size() != 1) {
      fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected one qubit index");
    }
    dead.insert(detail::parse_index(tok[0], line_no));
  }
  return dead;
}

std::set<Qubit> load_dead_mask(const std::string& path) {
  auto in = detail::open_input(path);
  return read_dead_mask(in);
}

void write_entities(std::ostream& out, std::span<const EntityGroup> entities) {
  for (const auto& e : entities) {
    out << to_string(e.kind);
    for (Qubit q : e.qubits) out << ' ' << q;
    out << '\n';
  }
}

EntityGroup localize(const EntityGroup& entity) {
  EntityGroup local;
  local.kind = entity.kind;
  local.qubits.resize(entity.size());
  for (std::size_t i = 0; i < entity.size(); ++i) local.qubits[i] = i;
  const auto pos = [&](Qubit q) {
    auto it = std::find(entity.qubits.begin(), entity.qubits.end(), q);
    if (it == entity.qubits.end()) fail(ErrorCode::InvalidArgument, "coupler leaves its entity");
    return static_cast<std::size_t>(it - entity.qubits.begin());
  };
  for (const auto& c : entity.couplers) local.couplers.emplace_back(pos(c.first), pos(c.second));
  return local;
}

}  // namespace qacurve
