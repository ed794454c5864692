#pragma once

#include "lssd/game.hpp"
#include "lssd/matrix.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

namespace lssd {

// One POVM (with |X| outcomes, shared local dimension) per classical input.
struct MeasurementFamily {
    std::vector<Povm> povms; // indexed by the party's input

    std::size_t inputs() const { return povms.size(); }
    std::size_t dim() const { return povms.empty() ? 0 : povms[0].dim(); }
    std::size_t outcomes() const { return povms.empty() ? 0 : povms[0].outcomes(); }
    void validate(double tol = 1e-10) const;
};

// Omega = sum P(x,a,b) M_x(a) (x) N_x(b); Hermitian for valid inputs.
Mat omega(const JointDistribution& dist, const MeasurementFamily& alice,
          const MeasurementFamily& bob);

// Two-qubit ansatz in the separating game's form: per party-input one
// projector pair {Pi(theta), 1 - Pi(theta)} placed on two outcomes, all other
// outcomes the zero operator.
struct QubitStrategy {
    // angles[party][input], radians
    std::array<std::array<double, 2>, 2> angles{};
    // pattern[party][input] = (p, m): outcome p gets Pi(theta), m the complement
    std::array<std::array<std::pair<std::size_t, std::size_t>, 2>, 2> pattern{};
    // explicit shared state on C^4 (unit within 1e-12); principal eigenvector
    // of Omega when absent
    std::optional<std::vector<cplx>> state;
};

// 2x2 projector onto (cos t, sin t).
Mat qubit_projector(double theta);

// The published optimum for the separating game (angles of Eq. form
// (-t1, t2, pi/2 - t2, t1) with the fixed zero pattern).
QubitStrategy paper_strategy();

MeasurementFamily strategy_family(const QubitStrategy& strat, std::size_t party,
                                  std::size_t x_size);

// Builds the measurement families and returns lambda_max(Omega), or
// <sigma|Omega|sigma> when an explicit state is set.
double eval_strategy(const JointDistribution& dist, const QubitStrategy& strat);

struct QubitOptimum {
    double value = 0;
    QubitStrategy strategy;
};

// Nelder-Mead over the four angles for every prune-consistent zero pattern,
// restarted from `seeds` random starting points (fixed PRNG). `budget` caps
// function evaluations per restart. Returns the best feasible strategy found;
// the value is a certified-feasible lower bound on the entangled value.
QubitOptimum optimize_qubit(const JointDistribution& dist, int seeds, int budget = 4000,
                            std::uint64_t prng_seed = 20240613);

struct NaimarkDilation {
    Mat isometry;    // (d*n) x d, U = sum_i sqrt(M_i) (x) |i>
    Povm projective; // Pi_i = 1 (x) |i><i|
};
NaimarkDilation naimark_dilate(const Povm& m);

// Absorbs measurement operators of outcomes with zero P_{XA_i} marginal into
// the smallest positive-marginal outcome of the same input.
MeasurementFamily prune(const JointDistribution& dist, std::size_t party,
                        const MeasurementFamily& family);

struct SeesawResult {
    double value = 0;
    Povm alice, bob;
    std::vector<double> trace; // objective after every half-step of the best restart
};

// Alternating maximization for cqq instances: each party's half-step is
// projected gradient ascent over M_x = S^{-1/2} A_x^dag A_x S^{-1/2} with
// backtracking, so the objective is monotone. Best value over restarts.
SeesawResult cqq_seesaw(const CqqState& state, int restarts, int iters,
                        std::uint64_t prng_seed = 20240613);

} // namespace lssd
