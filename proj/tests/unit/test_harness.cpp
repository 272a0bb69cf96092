#include <cmath>
#include <sstream>

#include "doctest.h"
#include "qacurve/error.hpp"
#include "qacurve/harness.hpp"
#include "support/reference_oracle.hpp"

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

const ChimeraGraph& full_graph() {
  static const ChimeraGraph g = chimera(12, 12, 4);
  return g;
}

}  // namespace

TEST_CASE("grids") {
  const Grid g{-2.0, 2.0, 129};
  for (std::size_t i = 0; i < 129; ++i) CHECK(g.value(i) == -2.0 + i / 32.0);
  const Grid c{-1.0, 1.0, 17};
  CHECK(c.value(8) == 0.0);
  CHECK(c.value(1) == -0.875);

  const Grid p = parse_grid("-1:1:129");
  CHECK(p.lo == -1.0);
  CHECK(p.hi == 1.0);
  CHECK(p.points == 129);
  CHECK(code_of([] { parse_grid("1:2"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_grid("a:2:3"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_grid("0:1:2:3"); }) == ErrorCode::InvalidArgument);

  SweepSpec s = SweepSpec::qubit_defaults();
  s.cq.points = 1;
  CHECK(code_of([&] { validate(s); }) == ErrorCode::InvalidArgument);
  s.cq = {1.0, -1.0, 5};
  CHECK(code_of([&] { validate(s); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("protocol defaults") {
  const SweepSpec q = SweepSpec::qubit_defaults();
  CHECK(q.cq.points == 129);
  CHECK(q.cq.lo == -1.0);
  CHECK(q.reads == 10000);
  const SweepSpec c = SweepSpec::chain_defaults();
  CHECK(c.cq.points == 129);
  CHECK(c.cq.lo == -2.0);
  CHECK(c.cc.points == 17);
  CHECK(c.reads == 1000);
  CHECK(c.chain_length == 12);
  CHECK(select_entities(c, full_graph()).size() == 30);
  CHECK(select_entities(SweepSpec::cell_defaults(), full_graph()).size() == 144);
  CHECK(select_entities(q, full_graph()).size() == 1152);
}

TEST_CASE("exact Ising qubit sweep is the step") {
  const CurveTable t = run_qubit_sweep(SweepSpec::qubit_defaults(), full_graph());
  REQUIRE(t.rows() == 129);
  REQUIRE(t.cols() == 1);
  for (std::size_t i = 0; i < 129; ++i) {
    const double cq = t.sweep_values[i];
    CHECK(t.at(i, 0) == (cq < 0 ? 1.0 : (cq == 0 ? 0.5 : 0.0)));
  }
  CHECK(t == run_qubit_sweep(SweepSpec::qubit_defaults(), full_graph()));
}

TEST_CASE("QUBO qubit curve at bias a equals the Ising curve at a/2") {
  for (bool hot : {false, true}) {
    SweepSpec ising = SweepSpec::qubit_defaults();
    if (hot) ising.exact_temperature = 0.25;
    SweepSpec qubo = ising;
    qubo.model = ModelKind::Qubo;
    const CurveTable i = run_qubit_sweep(ising, full_graph());
    const CurveTable q = run_qubit_sweep(qubo, full_graph());
    // Ising grid index 32 + j/2 holds bias (-1 + j/64) / 2.
    for (std::size_t j = 0; j < 129; j += 2) CHECK(q.at(j, 0) == i.at(32 + j / 2, 0));
  }
}

TEST_CASE("exact chain sweep values") {
  SweepSpec s = SweepSpec::chain_defaults();
  s.cq = {-2.0, 2.0, 33};
  s.cc = {-1.0, 1.0, 9};
  const CurveTable ising = run_entity_sweep(s, full_graph());
  REQUIRE(ising.rows() == 33);
  REQUIRE(ising.cols() == 9);
  for (std::size_t j = 0; j < 9; ++j) CHECK(ising.at(16, j) == 0.5);

  s.model = ModelKind::Qubo;
  const CurveTable qubo = run_entity_sweep(s, full_graph());
  for (std::size_t i = 0; i < 33; ++i) {
    for (std::size_t j = 0; j < 9; ++j) {
      const double expected = ref::t0_mean(ref::chain(false, 12, qubo.sweep_values[i], qubo.family_values[j]));
      CHECK(qubo.at(i, j) == expected);
    }
  }

  s.axis = SweepAxis::Cc;
  const CurveTable flipped = run_entity_sweep(s, full_graph());
  CHECK(flipped.sweep_name == "C_c");
  REQUIRE(flipped.rows() == 9);
  REQUIRE(flipped.cols() == 33);
  for (std::size_t i = 0; i < 33; ++i) {
    for (std::size_t j = 0; j < 9; ++j) CHECK(flipped.at(j, i) == qubo.at(i, j));
  }
}

TEST_CASE("QUBO chain minimizers are uniform for C_q in (0,1], C_c in [-1,0)") {
  SweepSpec s = SweepSpec::chain_defaults();
  s.model = ModelKind::Qubo;
  s.cq = {0.0, 1.0, 9};
  s.cc = {-1.0, 0.0, 9};
  const CurveTable t = run_entity_sweep(s, full_graph());
  for (std::size_t i = 1; i < 9; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const double v = t.at(i, j);
      CHECK((v == 0.0 || v == 0.5 || v == 1.0));
    }
  }
}

TEST_CASE("exact cell sweep at C_q=0, C_c=-1") {
  SweepSpec s = SweepSpec::cell_defaults();
  s.cq = {-1.0, 1.0, 3};
  s.cc = {-1.0, 1.0, 3};
  const CurveTable mean = run_entity_sweep(s, full_graph());
  CHECK(mean.at(1, 0) == 0.5);
  s.metric = Metric::Vote;
  const CurveTable vote = run_entity_sweep(s, full_graph());
  CHECK(vote.at(1, 0) == 0.5);
  for (const auto& [k, v] : vote.provenance) {
    if (k == "entities") CHECK(v == "144");
  }
}

TEST_CASE("sampled sweeps are deterministic and parallel-safe") {
  SweepSpec s = SweepSpec::chain_defaults();
  s.backend = Backend::Sampled;
  s.cq = {-2.0, 2.0, 9};
  s.cc = {-1.0, 1.0, 3};
  s.reads = 100;
  s.entity_count = 5;
  s.device.seed = 3;
  s.threads = 1;
  const CurveTable serial = run_entity_sweep(s, full_graph());
  s.threads = 4;
  CHECK(run_entity_sweep(s, full_graph()) == serial);
  for (double v : serial.values) CHECK((v >= 0.0 && v <= 1.0));

  SweepSpec q = SweepSpec::qubit_defaults();
  q.backend = Backend::Sampled;
  q.cq = {-1.0, 1.0, 17};
  q.reads = 200;
  q.entity_count = 50;
  q.threads = 1;
  const CurveTable a = run_qubit_sweep(q, full_graph());
  q.threads = 3;
  CHECK(run_qubit_sweep(q, full_graph()) == a);
}

TEST_CASE("sweep argument checks") {
  SweepSpec q = SweepSpec::qubit_defaults();
  q.backend = Backend::Sampled;
  q.reads = 0;
  CHECK(code_of([&] { run_qubit_sweep(q, full_graph()); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { run_entity_sweep(SweepSpec::qubit_defaults(), full_graph()); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { run_qubit_sweep(SweepSpec::chain_defaults(), full_graph()); }) == ErrorCode::InvalidArgument);

  SweepSpec c = SweepSpec::chain_defaults();
  c.entity_count = 97;
  CHECK(code_of([&] { run_entity_sweep(c, full_graph()); }) == ErrorCode::Infeasible);
  SweepSpec cells = SweepSpec::cell_defaults();
  cells.entity_count = 145;
  CHECK(code_of([&] { run_entity_sweep(cells, full_graph()); }) == ErrorCode::Infeasible);
  std::set<Qubit> dead;
  for (std::size_t cell = 0; cell < 4; ++cell) dead.insert(cell * 8);
  CHECK(code_of([&] { run_entity_sweep(SweepSpec::cell_defaults(), chimera(2, 2, 4, dead)); }) ==
        ErrorCode::Infeasible);

  SweepSpec hot = SweepSpec::qubit_defaults();
  hot.exact_temperature = 0.0;
  CHECK(code_of([&] { validate(hot); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("stats") {
  SweepSpec s = SweepSpec::qubit_defaults();
  s.backend = Backend::Sampled;
  s.cq = {-1.0, 1.0, 33};
  s.reads = 2000;
  s.entity_count = 64;
  s.device.seed = 1;
  const auto rows = run_stats(s, full_graph(), 10);
  REQUIRE(rows.size() == 33);
  // Without heterogeneity or drift both peak near zero and vanish at the ends.
  std::size_t peak_t = 0, peak_s = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].temporal_std > rows[peak_t].temporal_std) peak_t = i;
    if (rows[i].spatial_std > rows[peak_s].spatial_std) peak_s = i;
  }
  CHECK(std::abs(rows[peak_t].cq) <= 0.25);
  CHECK(std::abs(rows[peak_s].cq) <= 0.25);
  CHECK(rows.front().temporal_std < 1e-3);
  CHECK(rows.back().spatial_std < 1e-3);

  std::ostringstream out;
  write_stats(out, {{0.5, 0.25, 0.125}});
  CHECK(out.str() == "# C_q temporal_std spatial_std\n0 0.5 0.25 0.125\n");

  CHECK(code_of([&] { run_stats(s, full_graph(), 1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { run_stats(s, full_graph(), 3); }) == ErrorCode::InvalidArgument);
  SweepSpec exact = s;
  exact.backend = Backend::Exact;
  CHECK(code_of([&] { run_stats(exact, full_graph(), 10); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("fit of generated curves") {
  SweepSpec s = SweepSpec::qubit_defaults();
  s.exact_temperature = 2.0 / 7.0;
  const SigmoidFit seven = run_fit(run_qubit_sweep(s, full_graph()));
  CHECK(seven.k == doctest::Approx(7.0).epsilon(1e-5));

  const SigmoidFit step = run_fit(run_qubit_sweep(SweepSpec::qubit_defaults(), full_graph()));
  CHECK(step.at_bound);

  SweepSpec c = SweepSpec::chain_defaults();
  c.cq = {-2.0, 2.0, 5};
  c.cc = {-1.0, 1.0, 3};
  CHECK(code_of([&] { run_fit(run_entity_sweep(c, full_graph())); }) == ErrorCode::InvalidArgument);
}
