#pragma once

#include "lssd/game.hpp"

#include <cstdint>

namespace lssd {

// Exact winning probability of a fixed deterministic strategy:
// sum of P(x, a_1..a_r) over entries with f_1(a_1) = ... = f_r(a_r) = x.
Rational strategy_value(const JointDistribution& dist, const DeterministicStrategy& strat);

struct ClassicalOptimum {
    Rational value;
    DeterministicStrategy strategy;
};

inline constexpr std::uint64_t kDefaultStrategyBudget = 100'000'000;

// Exhaustive maximum over deterministic strategy tuples. Per-input outputs are
// pruned to values with positive P_{XA_i} marginal (lossless), the enumeration
// is lexicographic over the pruned tuple space and ties keep the first
// maximizer. Sharded across worker threads; result independent of thread count.
ClassicalOptimum pc_bruteforce(const JointDistribution& dist,
                               std::uint64_t budget = kDefaultStrategyBudget);

// Closed form for two parties with binary inputs:
// max over s != t of max{P_X(s), P(s,0,0)+P(t,1,1), P(s,0,1)+P(t,1,0)}.
Rational pc_binary_closed_form(const JointDistribution& dist);

// Piecewise value of the noisy-bit game: (1-alpha)^2 while 2(1-alpha)^2 >= 1,
// else 1/2; the branch is decided by exact rational comparison.
Rational example1_pc(const Rational& alpha);

// Pruned per-input output options (shared with the optimizers):
// values x with P_{XA_i}(x, a) > 0, or {0} when P_{A_i}(a) = 0.
std::vector<std::vector<std::vector<std::size_t>>> pruned_outputs(const JointDistribution& dist);

} // namespace lssd
