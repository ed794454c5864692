#pragma once

#include "lssd/rational.hpp"

#include <iosfwd>
#include <vector>

namespace lssd {

// Dense exact-rational LP: maximize objective . x subject to the rows and
// x >= 0. Relations are <= or =.
struct LpRow {
    enum class Rel { le, eq };
    std::vector<Rational> coeffs;
    Rel rel = Rel::le;
    Rational rhs;
};

struct ExactLp {
    std::size_t num_vars = 0;
    std::vector<Rational> objective;
    std::vector<LpRow> rows;

    explicit ExactLp(std::size_t n) : num_vars(n), objective(n) {}

    void add_row(std::vector<Rational> coeffs, LpRow::Rel rel, Rational rhs);
    // one line per row: "<coeffs...> <rel> <rhs>" with exact rationals
    void dump(std::ostream& out) const;
};

struct LpSolution {
    Rational value;
    std::vector<Rational> x; // length num_vars, satisfies all rows exactly
};

// Two-phase dense tableau simplex over exact rationals. Pricing is Dantzig
// with a switch to Bland's rule during degenerate stretches, which keeps the
// method anti-cycling. Throws Infeasible / Unbounded.
LpSolution simplex_max(const ExactLp& lp);

} // namespace lssd
