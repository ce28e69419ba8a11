#pragma once

#include "fiveq/gate.hpp"
#include "fiveq/circuit.hpp"
#include "fiveq/circuit_text.hpp"
#include "fiveq/state.hpp"
#include "fiveq/unitary.hpp"
#include "fiveq/rng.hpp"
#include "fiveq/sampling.hpp"
#include "fiveq/transpiler/coupling_map.hpp"
#include "fiveq/transpiler/rewrites.hpp"
#include "fiveq/transpiler/route.hpp"
#include "fiveq/transpiler/simplify.hpp"
#include "fiveq/noise.hpp"
#include "fiveq/fit.hpp"
#include "fiveq/observables.hpp"
#include "fiveq/report.hpp"
#include "fiveq/experiments/bell.hpp"
#include "fiveq/experiments/dense_coding.hpp"
#include "fiveq/experiments/mermin.hpp"
#include "fiveq/experiments/prime_state.hpp"
#include "fiveq/experiments/primes.hpp"
#include "fiveq/experiments/qft.hpp"
#include "fiveq/runner.hpp"
