#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "qacurve/error.hpp"
#include "qacurve/topology.hpp"

using namespace qacurve;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

// Chain paths follow graph edges, repeat no qubit and avoid dead qubits.
void check_chain(const ChimeraGraph& g, const EntityGroup& c, std::size_t length) {
  CHECK(c.kind == EntityKind::Chain);
  REQUIRE(c.qubits.size() == length);
  REQUIRE(c.couplers.size() == length - 1);
  CHECK(std::set<Qubit>(c.qubits.begin(), c.qubits.end()).size() == length);
  for (std::size_t i = 0; i + 1 < length; ++i) {
    CHECK(c.couplers[i] == Coupler(c.qubits[i], c.qubits[i + 1]));
    CHECK(g.has_edge(c.qubits[i], c.qubits[i + 1]));
  }
  for (Qubit q : c.qubits) CHECK_FALSE(g.is_dead(q));
}

}  // namespace

TEST_CASE("chimera sizes") {
  const ChimeraGraph one = chimera(1, 1, 4);
  CHECK(one.num_qubits() == 8);
  CHECK(one.edges().size() == 16);

  const ChimeraGraph full = chimera(12, 12, 4);
  CHECK(full.num_qubits() == 1152);
  std::size_t intra = 0, inter = 0;
  for (const Coupler& e : full.edges()) {
    const ChimeraCoord a = full.coord(e.first), b = full.coord(e.second);
    (a.row == b.row && a.col == b.col ? intra : inter) += 1;
  }
  CHECK(intra == 2304);
  CHECK(inter == 1056);
  // rows*cols*shore^2 + shore*(rows*(cols-1) + cols*(rows-1)), evaluated for
  // a handful of shapes.
  for (auto [r, c, s] : {std::tuple{12, 12, 4}, {3, 5, 2}, {1, 7, 3}, {4, 1, 1}}) {
    const std::size_t expected = r * c * s * s + s * (r * (c - 1) + c * (r - 1));
    CHECK(chimera(r, c, s).edges().size() == expected);
  }
}

TEST_CASE("chimera orientation: left shore vertical, right shore horizontal") {
  const ChimeraGraph g = chimera(3, 3, 4);
  const Qubit left = g.qubit({1, 1, 0, 2});
  const Qubit right = g.qubit({1, 1, 1, 2});
  CHECK(g.has_edge(left, g.qubit({0, 1, 0, 2})));
  CHECK(g.has_edge(left, g.qubit({2, 1, 0, 2})));
  CHECK_FALSE(g.has_edge(left, g.qubit({1, 0, 0, 2})));
  CHECK(g.has_edge(right, g.qubit({1, 0, 1, 2})));
  CHECK(g.has_edge(right, g.qubit({1, 2, 1, 2})));
  CHECK_FALSE(g.has_edge(right, g.qubit({0, 1, 1, 2})));
  CHECK_FALSE(g.has_edge(left, g.qubit({0, 1, 0, 1})));
  for (std::size_t i = 0; i < 4; ++i) CHECK(g.has_edge(left, g.qubit({1, 1, 1, i})));
  CHECK_FALSE(g.has_edge(left, g.qubit({1, 1, 0, 3})));

  for (Qubit q = 0; q < g.num_qubits(); ++q) CHECK(g.qubit(g.coord(q)) == q);
  const auto nb = g.neighbors(left);
  CHECK(nb.size() == 6);
  CHECK(g.coord(nb[0]).row != 1);
  CHECK(g.coord(nb[2]).row == 1);
}

TEST_CASE("chimera validation") {
  CHECK(code_of([] { chimera(0, 1, 4); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { chimera(1, 1, 4, {8}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { chimera(2, 2, 4).qubit({2, 0, 0, 0}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("complete cells") {
  const auto all = complete_cells(chimera(12, 12, 4));
  CHECK(all.size() == 144);
  const ChimeraGraph g = chimera(12, 12, 4);
  for (const auto& cell : all) {
    CHECK(cell.kind == EntityKind::Cell);
    CHECK(cell.qubits.size() == 8);
    CHECK(cell.couplers.size() == 16);
    for (const auto& c : cell.couplers) CHECK(g.has_edge(c.first, c.second));
  }
  CHECK(all[1].qubits.front() == 8);
  CHECK(all[12].qubits.front() == g.qubit({1, 0, 0, 0}));

  CHECK(complete_cells(chimera(12, 12, 4, {100})).size() == 143);

  std::set<Qubit> mask;
  for (std::size_t cell = 0; cell < 36; ++cell) mask.insert(cell * 8 + cell % 8);
  const ChimeraGraph holes = chimera(12, 12, 4, mask);
  CHECK(holes.num_working() == 1116);
  const auto left = complete_cells(holes);
  CHECK(left.size() == 108);
  for (const auto& cell : left) {
    for (Qubit q : cell.qubits) CHECK_FALSE(holes.is_dead(q));
  }

  // Two dead qubits in one cell remove a single cell.
  CHECK(complete_cells(chimera(2, 2, 4, {0, 7})).size() == 3);
}

TEST_CASE("thirty 12-qubit chains on the full graph") {
  const ChimeraGraph g = chimera(12, 12, 4);
  const auto chains = disjoint_chains(g, 30, 12, 0);
  REQUIRE(chains.size() == 30);
  std::set<Qubit> qubits;
  std::set<Coupler> couplers;
  for (const auto& c : chains) {
    check_chain(g, c, 12);
    qubits.insert(c.qubits.begin(), c.qubits.end());
    couplers.insert(c.couplers.begin(), c.couplers.end());
  }
  CHECK(qubits.size() == 360);
  CHECK(couplers.size() == 330);

  CHECK(disjoint_chains(g, 30, 12, 0).front().qubits == chains.front().qubits);
  const auto other = disjoint_chains(g, 30, 12, 5);
  CHECK(other.front().qubits != chains.front().qubits);
}

TEST_CASE("smallest chain and exhaustive disjointness on a 1x2 graph") {
  const ChimeraGraph g = chimera(12, 12, 4);
  const auto pair = disjoint_chains(g, 1, 2, 0);
  REQUIRE(pair.size() == 1);
  check_chain(g, pair[0], 2);

  const ChimeraGraph small = chimera(1, 2, 4);
  const auto two = disjoint_chains(small, 2, 8, 0);
  REQUIRE(two.size() == 2);
  for (const auto& c : two) check_chain(small, c, 8);
  for (Qubit a : two[0].qubits) {
    for (Qubit b : two[1].qubits) CHECK(a != b);
  }
  for (const auto& a : two[0].couplers) {
    for (const auto& b : two[1].couplers) CHECK(a != b);
  }
}

TEST_CASE("chains avoid dead qubits and report infeasibility") {
  std::set<Qubit> mask;
  for (Qubit q = 0; q < 1152; q += 7) mask.insert(q);
  const ChimeraGraph g = chimera(12, 12, 4, mask);
  for (const auto& c : disjoint_chains(g, 30, 12, 3)) check_chain(g, c, 12);

  const ChimeraGraph full = chimera(12, 12, 4);
  CHECK(code_of([&] { disjoint_chains(full, 0, 12, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { disjoint_chains(full, 30, 0, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { disjoint_chains(full, 97, 12, 0); }) == ErrorCode::Infeasible);
  // Nine qubits cannot form a path inside one cell (bipartite, 4+4).
  CHECK(code_of([] { disjoint_chains(chimera(1, 1, 4), 1, 9, 0); }) == ErrorCode::Infeasible);
  // Alternating shores can use at most 2*4 - 1 + 1 = 8 qubits per cell.
  CHECK(disjoint_chains(chimera(1, 1, 4), 1, 8, 0).size() == 1);
}

TEST_CASE("dead mask and entity text formats") {
  std::istringstream in("# comment\n3\n\n17  # trailing\n3\n");
  CHECK(read_dead_mask(in) == std::set<Qubit>{3, 17});
  std::istringstream bad("3 4\n");
  CHECK(code_of([&] { read_dead_mask(bad); }) == ErrorCode::ParseError);
  std::istringstream word("x\n");
  CHECK(code_of([&] { read_dead_mask(word); }) == ErrorCode::ParseError);
  CHECK(code_of([] { load_dead_mask("/nonexistent/mask"); }) == ErrorCode::IoError);

  const ChimeraGraph g = chimera(1, 1, 4);
  std::ostringstream out;
  const auto cells = complete_cells(g);
  write_entities(out, cells);
  CHECK(out.str() == "cell 0 1 2 3 4 5 6 7\n");

  const EntityGroup c{EntityKind::Chain, {5, 2, 9}, {Coupler(5, 2), Coupler(2, 9)}};
  const EntityGroup local = localize(c);
  CHECK(local.qubits == std::vector<Qubit>{0, 1, 2});
  CHECK(local.couplers == std::vector<Coupler>{Coupler(0, 1), Coupler(1, 2)});
}
