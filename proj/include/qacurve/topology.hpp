#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qacurve/model.hpp"

namespace qacurve {

using Qubit = std::size_t;
using Coupler = VarPair;

// Position of a qubit inside the chimera lattice. side 0 is the left shore,
// whose qubits couple vertically to the same position in the cells above and
// below; side 1 is the right shore, coupled horizontally to the cells left and
// right.
struct ChimeraCoord {
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t side = 0;
  std::size_t index = 0;

  bool operator==(const ChimeraCoord&) const = default;
};

// Qubit q = ((row * cols + col) * 2 + side) * shore + index. Dead qubits stay
// indexed and keep their edges; they are only excluded when entities are
// built.
class ChimeraGraph {
 public:
  ChimeraGraph(std::size_t rows, std::size_t cols, std::size_t shore,
               std::set<Qubit> dead = {});

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t shore() const noexcept { return shore_; }
  std::size_t num_qubits() const noexcept { return rows_ * cols_ * 2 * shore_; }
  std::size_t num_cells() const noexcept { return rows_ * cols_; }
  std::size_t num_working() const noexcept { return num_qubits() - dead_.size(); }

  Qubit qubit(const ChimeraCoord& c) const;
  ChimeraCoord coord(Qubit q) const;

  const std::set<Qubit>& dead() const noexcept { return dead_; }
  bool is_dead(Qubit q) const { return dead_.contains(q); }

  // Sorted, duplicate free.
  const std::vector<Coupler>& edges() const noexcept { return edges_; }
  bool has_edge(Qubit a, Qubit b) const;
  // Inter-cell neighbours first (ascending), then intra-cell (ascending).
  std::span<const Qubit> neighbors(Qubit q) const { return adjacency_.at(q); }

 private:
  std::size_t rows_, cols_, shore_;
  std::set<Qubit> dead_;
  std::vector<Coupler> edges_;
  std::vector<std::vector<Qubit>> adjacency_;
};

ChimeraGraph chimera(std::size_t rows, std::size_t cols, std::size_t shore,
                     const std::set<Qubit>& dead = {});

enum class EntityKind { Chain, Cell };

const char* to_string(EntityKind kind) noexcept;

struct EntityGroup {
  EntityKind kind = EntityKind::Chain;
  std::vector<Qubit> qubits;
  std::vector<Coupler> couplers;

  std::size_t size() const noexcept { return qubits.size(); }
};

// Cells with all 2*shore qubits working, row-major. Qubits are listed left
// shore then right shore; couplers are the shore*shore bipartite edges.
std::vector<EntityGroup> complete_cells(const ChimeraGraph& g);

// Pairwise qubit-disjoint chains of working qubits. Routing is a
// deterministic depth-first search that prefers inter-cell links over
// intra-cell edges, which produces the snake pattern down a left shore and
// across right shores; the seed only rotates the starting scan position.
// Throws InvalidArgument for zero count/length and Infeasible when the
// chains cannot be placed.
std::vector<EntityGroup> disjoint_chains(const ChimeraGraph& g, std::size_t count,
                                         std::size_t length, std::uint64_t seed);

// One qubit index per line, '#' starts a comment.
std::set<Qubit> read_dead_mask(std::istream& in);
std::set<Qubit> load_dead_mask(const std::string& path);

// "chain|cell q0 q1 ... qk", one entity per line.
void write_entities(std::ostream& out, std::span<const EntityGroup> entities);

// Relabels an entity onto variables 0..size-1 (qubit order preserved).
EntityGroup localize(const EntityGroup& entity);

}  // namespace qacurve
