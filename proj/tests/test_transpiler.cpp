#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "helpers.hpp"

using namespace fiveq;
using testing::oracle_unitary;

namespace {

std::vector<int> distinct_qubits(std::mt19937_64& rng, int n, int k) {
  std::vector<int> q(static_cast<std::size_t>(n));
  std::iota(q.begin(), q.end(), 0);
  std::shuffle(q.begin(), q.end(), rng);
  q.resize(static_cast<std::size_t>(k));
  return q;
}

// Born distribution of the oracle state over cbits, bit k of the index being
// the qubit that cbit k reads.
std::vector<double> oracle_distribution(const Circuit& c) {
  const auto lowered = lower_measurements(c);
  const auto psi = oracle::apply(oracle_unitary(lowered.circuit), oracle::basis(c.num_qubits(), 0));
  std::vector<double> d(std::size_t{1} << lowered.measured.size(), 0.0);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    std::size_t key = 0;
    for (std::size_t k = 0; k < lowered.measured.size(); ++k) key |= ((i >> lowered.measured[k]) & 1) << k;
    d[key] += std::norm(psi[i]);
  }
  return d;
}

}  // namespace

TEST_CASE("builtin coupling maps", "[transpiler]") {
  const auto x2 = builtin_map("ibmqx2");
  const auto x4 = builtin_map("ibmqx4");
  CHECK(x2.num_qubits() == 5);
  CHECK(x2.edges() == std::set<CouplingMap::Edge>{{0, 1}, {0, 2}, {1, 2}, {3, 2}, {3, 4}, {4, 2}});
  CHECK(x4.edges() == std::set<CouplingMap::Edge>{{1, 0}, {2, 0}, {2, 1}, {3, 2}, {3, 4}, {2, 4}});
  CHECK(x2.is_connected());
  CHECK(x4.is_connected());
  CHECK(x4.has_edge(1, 0));
  CHECK_FALSE(x4.has_edge(0, 1));
  CHECK(x4.adjacent(0, 1));
  CHECK(x4.neighbors(2) == std::vector<int>{0, 1, 3, 4});
  CHECK(*x4.shortest_path(0, 3) == std::vector<int>{0, 2, 3});
  CHECK(*x2.shortest_path(1, 4) == std::vector<int>{1, 2, 4});
  CHECK_THROWS_AS(builtin_map("ibmqx9"), std::invalid_argument);
  CHECK_THROWS(resolve_backend("no-such-backend"));
  CHECK(parse_coupling_map(serialize_coupling_map(x4)) == x4);
}

TEST_CASE("coupling map parsing rejects malformed files", "[transpiler]") {
  CHECK_THROWS(parse_coupling_map("edge 0 1\n"));
  CHECK_THROWS(parse_coupling_map("qubits 3\nedge 0 0\n"));
  CHECK_THROWS(parse_coupling_map("qubits 3\nedge 0 3\n"));
  CHECK_THROWS(parse_coupling_map("qubits 3\nlink 0 1\n"));
  CHECK(CouplingMap(3).shortest_path(0, 2) == std::nullopt);
  CHECK_FALSE(CouplingMap(3).is_connected());
}

TEST_CASE("rewrite identities hold at random placements", "[transpiler]") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  const int n = 5;
  for (int trial = 0; trial < 50; ++trial) {
    const auto q = distinct_qubits(rng, n, 3);
    const int a = q[0], b = q[1], c = q[2];
    const double lambda = angle(rng);

    CHECK(oracle::phase_fidelity(oracle_unitary(n, reverse_cx(a, b)), oracle::cx(n, a, b)) ==
          Catch::Approx(1.0).epsilon(1e-12));
    const auto zc = oracle::mul(oracle::single(n, a, oracle::X()),
                                oracle::mul(oracle::cx(n, a, b), oracle::single(n, a, oracle::X())));
    CHECK(oracle::phase_fidelity(oracle_unitary(n, zero_controlled_cx(a, b)), zc) ==
          Catch::Approx(1.0).epsilon(1e-12));
    CHECK(oracle::phase_fidelity(oracle_unitary(n, swap_decomposition(a, b)), oracle::swap(n, a, b)) ==
          Catch::Approx(1.0).epsilon(1e-12));
    CHECK(oracle::phase_fidelity(oracle_unitary(n, cz_decomposition(a, b)), oracle::cz(n, a, b)) ==
          Catch::Approx(1.0).epsilon(1e-12));
    CHECK(oracle::phase_fidelity(oracle_unitary(n, toffoli_decomposition(a, b, c)), oracle::toffoli(n, a, b, c)) ==
          Catch::Approx(1.0).epsilon(1e-12));
    auto flip = oracle::mul(oracle::single(n, a, oracle::X()), oracle::single(n, b, oracle::X()));
    const auto zt = oracle::mul(flip, oracle::mul(oracle::toffoli(n, a, b, c), flip));
    CHECK(oracle::phase_fidelity(oracle_unitary(n, zero_controlled_toffoli(a, b, c)), zt) ==
          Catch::Approx(1.0).epsilon(1e-12));
    CHECK(oracle::phase_fidelity(oracle_unitary(n, decompose_crz(a, b, lambda)), oracle::cphase(n, a, b, lambda)) ==
          Catch::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("rewrites use only native gates and reject shared operands", "[transpiler]") {
  const auto toffoli = toffoli_decomposition(0, 1, 2);
  CHECK(toffoli.size() == 15);
  CHECK(std::count_if(toffoli.begin(), toffoli.end(), [](const GateInstance& g) { return g.kind == GateKind::CX; }) == 6);
  CHECK_THROWS(toffoli_decomposition(0, 0, 2));
  CHECK_THROWS(toffoli_decomposition(0, 1, 1));
  CHECK_THROWS(decompose_crz(1, 1, 0.3));
  CHECK_THROWS(swap_decomposition(2, 2));
}

TEST_CASE("routing fixes directions and distances on both maps", "[transpiler]") {
  const auto x4 = builtin_map("ibmqx4");
  Circuit c(5);
  c.add(gates::cx(0, 1));  // reversed edge
  c.add(gates::cx(0, 3));  // distance two
  const auto r = route(c, x4);
  CHECK(validate(r.circuit, x4).empty());
  CHECK_FALSE(validate(c, x4).empty());
  CHECK(validate(c, x4)[0] == Violation{0, 0, 1});
  CHECK(validate(c, x4)[0].describe().find("cx 0 -> 1") != std::string::npos);
  CHECK_FALSE(r.identity_layout());

  Circuit native(5);
  native.add(gates::cx(3, 4));
  CHECK(route(native, x4).circuit == native);
  CHECK(route(native, x4).identity_layout());
  CHECK_THROWS_AS(route(Circuit(6), x4), RoutingError);
  CouplingMap split(4);
  split.add_edge(0, 1).add_edge(2, 3);
  Circuit far(4);
  far.add(gates::cx(0, 3));
  CHECK_THROWS_AS(route(far, split), RoutingError);
}

TEST_CASE("routed circuits implement the same operation up to the final layout", "[transpiler]") {
  std::mt19937_64 rng(32);
  for (const auto& name : builtin_map_names()) {
    const auto map = builtin_map(name);
    for (int trial = 0; trial < 25; ++trial) {
      auto c = testing::random_circuit(rng, 5, 20);
      const auto r = route(c, map);
      REQUIRE(validate(r.circuit, map).empty());
      // Prepare a random product input, compare output amplitudes after
      // moving logical qubit l to physical r.layout[l].
      Circuit prep(5);
      for (int q = 0; q < 5; ++q) prep.add({gates::h(q), gates::rz(q, 0.3 + q)});
      const auto want = oracle::apply(oracle_unitary(compose(prep, c)), oracle::basis(5, 0));
      const auto got = oracle::apply(oracle_unitary(compose(prep, r.circuit)), oracle::basis(5, 0));
      std::vector<oracle::C> moved(want.size());
      for (std::size_t i = 0; i < want.size(); ++i) {
        std::size_t j = 0;
        for (int l = 0; l < 5; ++l) j |= ((i >> l) & 1) << r.layout[static_cast<std::size_t>(l)];
        moved[j] = want[i];
      }
      CHECK(testing::overlap(moved, got) == Catch::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("routed 4-qubit circuits keep their measurement distribution", "[transpiler]") {
  std::mt19937_64 rng(33);
  for (const auto& name : builtin_map_names()) {
    const auto map = builtin_map(name);
    for (int trial = 0; trial < 40; ++trial) {
      auto c = testing::random_circuit(rng, 4, 25);
      const auto order = distinct_qubits(rng, 4, 4);
      for (int k = 0; k < 4; ++k) c.measure(order[static_cast<std::size_t>(k)], k);
      const auto r = route(c, map);
      const auto want = oracle_distribution(c);
      const auto got = oracle_distribution(r.circuit);
      CHECK(total_variation(want, got) < 1e-10);
    }
  }
}

TEST_CASE("simplify cancels inverse pairs and merges rotations", "[transpiler]") {
  Circuit c(3);
  c.add({gates::h(0), gates::h(0), gates::s(1), gates::sdg(1), gates::cx(0, 2), gates::cx(0, 2), gates::t(2),
         gates::tdg(2)});
  CHECK(simplify(c).empty());

  Circuit cascade(2);
  cascade.add({gates::h(0), gates::x(0), gates::x(0), gates::h(0)});
  CHECK(simplify(cascade).empty());

  Circuit blocked(2);
  blocked.add({gates::h(0), gates::cx(0, 1), gates::h(0)});
  CHECK(simplify(blocked).size() == 3);

  Circuit rz(1);
  rz.add({gates::rz(0, 0.5), gates::rz(0, 0.25)});
  REQUIRE(simplify(rz).size() == 1);
  CHECK(simplify(rz).gates()[0].angle == 0.75);
  Circuit full(1);
  full.add({gates::rz(0, std::numbers::pi), gates::rz(0, std::numbers::pi)});
  CHECK(simplify(full).empty());

  Circuit reversed(2);
  reversed.add({gates::cx(0, 1), gates::cx(1, 0)});
  CHECK(simplify(reversed).size() == 2);

  Circuit measured(1);
  measured.add({gates::h(0), gates::h(0)});
  measured.measure(0, 0, Basis::X);
  CHECK(simplify(measured).measurements() == measured.measurements());
}

TEST_CASE("simplify is idempotent and preserves the unitary", "[transpiler]") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    Circuit c(3);
    // Small alphabet so that cancellations actually occur.
    std::uniform_int_distribution<int> pick(0, 6), q(0, 2);
    for (int i = 0; i < 40; ++i) {
      const int a = q(rng);
      switch (pick(rng)) {
        case 0: c.add(gates::h(a)); break;
        case 1: c.add(gates::x(a)); break;
        case 2: c.add(gates::s(a)); break;
        case 3: c.add(gates::sdg(a)); break;
        case 4: c.add(gates::rz(a, std::numbers::pi / 2)); break;
        default: c.add(gates::cx(a, (a + 1) % 3)); break;
      }
    }
    const auto s = simplify(c);
    CHECK(s.size() <= c.size());
    CHECK(simplify(s) == s);
    CHECK(oracle::phase_fidelity(oracle_unitary(c), oracle_unitary(s)) == Catch::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("route after simplify stays valid on random circuits", "[transpiler]") {
  std::mt19937_64 rng(35);
  for (const auto& name : builtin_map_names()) {
    const auto map = builtin_map(name);
    for (int trial = 0; trial < 100; ++trial) {
      const auto c = simplify(testing::random_circuit(rng, 4, 20));
      const auto r = route(c, map);
      CHECK(validate(r.circuit, map).empty());
      CHECK(validate(simplify(r.circuit), map).empty());
    }
  }
}
