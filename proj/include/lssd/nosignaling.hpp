#pragma once

#include "lssd/game.hpp"
#include "lssd/lp.hpp"

#include <cstdint>
#include <optional>

namespace lssd {

// Conditional distribution Q(x_1..x_r | a_1..a_r) with the same output
// alphabet on every port. Table layout: output tuple slowest, input tuple
// fastest, both mixed-radix row-major.
struct NoSignalingBox {
    std::size_t x_size = 0;
    std::vector<std::size_t> input_sizes;
    std::vector<Rational> table;

    std::size_t num_parties() const { return input_sizes.size(); }
    std::size_t inputs_total() const;
    std::size_t outputs_total() const;
    std::size_t index(const std::vector<std::size_t>& xs, const std::vector<std::size_t>& as) const;
    const Rational& at(const std::vector<std::size_t>& xs, const std::vector<std::size_t>& as) const;

    // exact checks: nonnegativity, per-input normalization, and marginal
    // no-signaling for every proper subset of parties
    void validate() const;
};

// LP over all box entries: nonnegativity, per-input normalization, marginal
// conditions for every proper subset of parties, objective sum P(x,a)Q(x..x|a).
ExactLp build_ns_lp(const JointDistribution& dist);

struct NsOptimum {
    Rational value;
    NoSignalingBox box;
};

// Exact no-signaling value. Small instances go through build_ns_lp +
// simplex_max verbatim; instances whose full LP would be large are solved on
// an equivalent LP with per-input output alphabets pruned to the support of
// P_{XA_i} plus one absorbing symbol, and the witness box is lifted back to
// the full alphabet. Both paths return exact optima of the same polytope.
NsOptimum pns_exact(const JointDistribution& dist, std::size_t full_lp_var_limit = 4096);

// Extremal two-input box: Q = 1/k iff x_A, x_B in [k] and (x_A - x_B) mod k = ab.
NoSignalingBox qk_box(std::size_t k, std::size_t d);

struct NsBinaryResult {
    Rational value;
    std::size_t k = 0;                          // 0 means the classical branch won
    std::vector<std::vector<std::size_t>> f, g; // per-input output permutations, [a][x]
};

// Evaluates max{p_c, max over k and per-input output permutations of the Q^k
// objective} by exhaustive enumeration; requires two parties with binary
// inputs and d! <= perm_budget.
NsBinaryResult pns_binary_inputs(const JointDistribution& dist, std::uint64_t perm_budget = 120);

} // namespace lssd
