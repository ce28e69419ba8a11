#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>
#include <set>

#include "helpers.hpp"

using namespace fiveq;
using Catch::Approx;

namespace {

std::vector<oracle::C> oracle_ghz(int n, double phi) {
  std::vector<oracle::C> v(std::size_t{1} << n);
  v.front() = 1.0 / std::sqrt(2.0);
  v.back() = std::exp(oracle::kI * phi) / std::sqrt(2.0);
  return v;
}

}  // namespace

TEST_CASE("Pauli strings print the highest qubit first", "[observables]") {
  const auto p = PauliString::parse("yXi", -2.0);
  CHECK(p.letters() == "YXI");
  CHECK(p.at(2) == 'Y');
  CHECK(p.at(0) == 'I');
  CHECK(p.support() == std::vector<int>{1, 2});
  CHECK(p.count('X') == 1);
  CHECK(p.coefficient == -2.0);
  CHECK_THROWS(PauliString::parse("XQ"));
  CHECK_THROWS(PauliString::parse(""));
  CHECK_THROWS(PauliString::parse("X", 0.0));
}

TEST_CASE("parity expectation from counts", "[observables]") {
  CountsHistogram h(3);
  h.add("000", 5);
  h.add("011", 3);
  h.add("100", 2);
  CHECK(expectation(h) == Approx(0.6));
  CHECK(expectation(h, {0}) == Approx(0.4));
  CHECK(expectation(h, {2}) == Approx(0.6));
  CHECK(expectation(h, {0, 1}) == Approx(1.0));
  CHECK(expectation(h, {}) == 1.0);
  CHECK_THROWS(expectation(h, {3}));
  CHECK_THROWS(expectation(CountsHistogram(2)));
  CHECK(parity_standard_error(1.0, 100) == 0.0);
  CHECK(parity_standard_error(0.0, 100) == Approx(0.1));
}

TEST_CASE("exact Pauli expectations match the dense oracle", "[observables]") {
  std::mt19937_64 rng(41);
  const char letters[] = {'I', 'X', 'Y', 'Z'};
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 4;
    const auto c = testing::random_circuit(rng, n, 30);
    const auto psi = oracle::apply(testing::oracle_unitary(c), oracle::basis(n, 0));
    std::string s;
    for (int k = 0; k < n; ++k) s += letters[rng() % 4];
    const double want = oracle::pauli_expectation(psi, s);
    CHECK(expectation_exact(run_circuit(c), PauliString::parse(s, 1.5)) == Approx(1.5 * want).margin(1e-12));
  }
  CHECK_THROWS(expectation_exact(StateVector(2), PauliString::parse("XXX")));
}

TEST_CASE("sampled Pauli expectations agree with exact ones", "[observables]") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = testing::random_circuit(rng, 3, 20);
    for (const char* s : {"XYZ", "ZIX", "YYI"}) {
      const auto p = PauliString::parse(s);
      const double exact = expectation_exact(run_circuit(c), p);
      const auto est = measure_pauli(c, p, 20000, 100 + trial);
      CHECK(std::abs(est.value - exact) <= 5 * std::max(est.std_error, 1e-3));
    }
  }
  CHECK(measure_pauli(Circuit(2), PauliString::parse("II", 3.0), 10, 1).value == 3.0);
  Circuit measured(1);
  measured.measure(0, 0);
  CHECK_THROWS(measure_pauli(measured, PauliString::parse("Z"), 10, 1));
  CHECK_THROWS(measure_pauli(Circuit(2), PauliString::parse("Z"), 10, 1));
}

TEST_CASE("Mermin polynomials have distinct signed terms", "[observables]") {
  const std::map<int, std::size_t> sizes{{3, 4}, {4, 16}, {5, 16}};
  for (auto [n, size] : sizes) {
    const auto m = mermin_polynomial(n);
    REQUIRE(m.terms.size() == size);
    std::set<std::string> seen;
    for (const auto& t : m.terms) {
      seen.insert(t.letters());
      CHECK(std::abs(t.coefficient) == 1.0);
      CHECK(t.count('I') == 0);
      CHECK(t.count('Z') == 0);
    }
    CHECK(seen.size() == size);
  }
  const auto m3 = mermin_polynomial(3);
  CHECK(m3.terms[0].letters() == "YXX");
  CHECK(m3.terms[3].letters() == "YYY");
  CHECK(m3.terms[3].coefficient == -1.0);
  CHECK_THROWS(mermin_polynomial(2));
  CHECK_THROWS(mermin_polynomial(6));
}

TEST_CASE("Mermin values on GHZ states", "[observables]") {
  // Oracle: sum of dense-matrix expectations over the polynomial's terms.
  for (int n = 3; n <= 5; ++n) {
    const auto m = mermin_polynomial(n);
    auto oracle_value = [&](double phi) {
      const auto psi = oracle_ghz(n, phi);
      double acc = 0.0;
      for (const auto& t : m.terms) acc += t.coefficient * oracle::pauli_expectation(psi, t.letters());
      return acc;
    };
    const double phi = n == 4 ? std::numbers::pi / 4 : std::numbers::pi / 2;
    CHECK(oracle_value(phi) == Approx(m.qm_value).epsilon(1e-12));
    CHECK(mermin_exact(m, run_circuit(mermin_state_prep(n))) == Approx(m.qm_value).epsilon(1e-12));
    CHECK(mermin_exact(m, ghz_state(n, phi)) == Approx(m.qm_value).epsilon(1e-12));
    // The prepared phase is the maximum over a fine scan.
    for (int k = 0; k < 64; ++k) CHECK(oracle_value(2 * std::numbers::pi * k / 64) <= m.qm_value + 1e-9);
  }
  CHECK(mermin_polynomial(4).qm_value == Approx(8 * std::sqrt(2.0)));
}

TEST_CASE("local-realistic assignments respect the LR bound", "[observables]") {
  // Each qubit carries predetermined values x_q, y_q in {+1, -1}; a term's
  // value is the product of the chosen letters. Brute force all assignments.
  for (int n = 3; n <= 5; ++n) {
    const auto m = mermin_polynomial(n);
    double best = -1e9;
    for (unsigned xs = 0; xs < (1u << n); ++xs)
      for (unsigned ys = 0; ys < (1u << n); ++ys) {
        double acc = 0.0;
        for (const auto& t : m.terms) {
          double v = t.coefficient;
          for (int q = 0; q < n; ++q) {
            const unsigned bits = t.at(q) == 'X' ? xs : ys;
            v *= ((bits >> q) & 1) ? -1.0 : 1.0;
          }
          acc += v;
        }
        best = std::max(best, acc);
      }
    CHECK(best == m.lr_bound);
  }
}

TEST_CASE("sampled Mermin evaluation", "[observables]") {
  for (int n = 3; n <= 5; ++n) {
    const auto m = mermin_polynomial(n);
    const auto prep = mermin_state_prep(n);
    const auto per_term = evaluate_mermin(m, prep, MerminMode::PerTerm, 4096, 7);
    const auto sym = evaluate_mermin(m, prep, MerminMode::Symmetric, 4096, 7);
    CHECK(per_term.measured.size() == m.terms.size());
    CHECK(std::abs(per_term.value - m.qm_value) <= 5 * std::max(per_term.std_error, 1e-9));
    CHECK(std::abs(sym.value - m.qm_value) <= 5 * std::max(sym.std_error, 1e-9));
    if (n != 4) CHECK(per_term.value == Approx(m.qm_value));  // every term is deterministic
  }
  CHECK_THROWS(evaluate_mermin(mermin_polynomial(3), mermin_state_prep(4), MerminMode::PerTerm, 10, 1));
  CHECK_THROWS(mermin_state_prep(2));
}
