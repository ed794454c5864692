#include "lssd/lp.hpp"

#include <algorithm>
#include <ostream>

namespace lssd {

void ExactLp::add_row(std::vector<Rational> coeffs, LpRow::Rel rel, Rational rhs) {
    if (coeffs.size() != num_vars)
        throw lssd_error(errc::shape_mismatch, "LP row width mismatch");
    rows.push_back({std::move(coeffs), rel, std::move(rhs)});
}

void ExactLp::dump(std::ostream& out) const {
    out << "lssd-lp v1 vars " << num_vars << "\n";
    out << "max";
    for (const auto& c : objective) out << " " << c.str();
    out << "\n";
    for (const auto& row : rows) {
        for (const auto& c : row.coeffs) out << c.str() << " ";
        out << (row.rel == LpRow::Rel::le ? "<=" : "=") << " " << row.rhs.str() << "\n";
    }
}

namespace {

// Dense tableau state. Column layout: [structural | slack | artificial | rhs].
struct Tableau {
    std::size_t m, cols;          // rows, columns excluding rhs
    std::size_t art_begin;        // first artificial column
    std::vector<std::vector<Rational>> t; // m rows, cols+1 wide
    std::vector<Rational> obj;            // reduced-cost row, cols+1 wide (min form)
    std::vector<std::size_t> basis;       // basis[r] = column basic in row r

    void pivot(std::size_t r, std::size_t c) {
        auto& pr = t[r];
        Rational p = pr[c];
        if (p != Rational(1))
            for (auto& v : pr) v /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || t[i][c].is_zero()) continue;
            Rational f = t[i][c];
            auto& ri = t[i];
            for (std::size_t j = 0; j <= cols; ++j)
                if (!pr[j].is_zero()) ri[j] -= f * pr[j];
        }
        if (!obj[c].is_zero()) {
            Rational f = obj[c];
            for (std::size_t j = 0; j <= cols; ++j)
                if (!pr[j].is_zero()) obj[j] -= f * pr[j];
        }
        basis[r] = c;
    }

    // price out basic columns of a fresh objective row
    void install_objective(const std::vector<Rational>& costs) {
        obj.assign(cols + 1, Rational());
        std::copy(costs.begin(), costs.end(), obj.begin());
        for (std::size_t r = 0; r < m; ++r) {
            std::size_t b = basis[r];
            if (obj[b].is_zero()) continue;
            Rational f = obj[b];
            for (std::size_t j = 0; j <= cols; ++j)
                if (!t[r][j].is_zero()) obj[j] -= f * t[r][j];
        }
    }

    // run to optimality of the installed (min-form) objective
    void optimize(std::size_t allowed_cols) {
        int stagnant = 0;
        bool bland = false;
        Rational last = obj[cols];
        while (true) {
            std::size_t enter = cols;
            if (bland) {
                for (std::size_t j = 0; j < allowed_cols; ++j)
                    if (obj[j].sign() < 0) { enter = j; break; }
            } else {
                const Rational* best = nullptr;
                for (std::size_t j = 0; j < allowed_cols; ++j)
                    if (obj[j].sign() < 0 && (!best || obj[j] < *best)) { best = &obj[j]; enter = j; }
            }
            if (enter == cols) return; // optimal
            std::size_t leave = m;
            Rational ratio;
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][enter].sign() <= 0) continue;
                Rational r = t[i][cols] / t[i][enter];
                if (leave == m || r < ratio || (r == ratio && basis[i] < basis[leave])) {
                    leave = i;
                    ratio = r;
                }
            }
            if (leave == m) throw lssd_error(errc::unbounded, "Unbounded LP");
            pivot(leave, enter);
            if (obj[cols] == last) {
                if (++stagnant > 16) bland = true;
            } else {
                stagnant = 0;
                bland = false;
                last = obj[cols];
            }
        }
    }
};

} // namespace

LpSolution simplex_max(const ExactLp& lp) {
    const std::size_t n = lp.num_vars;
    const std::size_t m = lp.rows.size();
    std::size_t nslack = 0;
    for (const auto& row : lp.rows)
        if (row.rel == LpRow::Rel::le) ++nslack;

    Tableau tb;
    tb.m = m;
    tb.basis.assign(m, 0);

    // first pass: place structural + slack coefficients, normalize rhs >= 0
    std::vector<std::vector<Rational>> rows(m);
    std::vector<std::size_t> slack_col(m, SIZE_MAX);
    std::size_t si = 0;
    std::vector<bool> needs_art(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = lp.rows[i];
        rows[i].assign(n + nslack + 1, Rational());
        std::copy(row.coeffs.begin(), row.coeffs.end(), rows[i].begin());
        bool neg = row.rhs.sign() < 0;
        if (row.rel == LpRow::Rel::le) {
            slack_col[i] = n + si;
            rows[i][n + si] = Rational(1);
            ++si;
        }
        rows[i][n + nslack] = row.rhs;
        if (neg)
            for (auto& v : rows[i]) v = -v;
        // slack usable as initial basis only if its coefficient stayed +1
        needs_art[i] = !(slack_col[i] != SIZE_MAX && !neg);
    }
    std::size_t nart = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (needs_art[i]) ++nart;

    tb.art_begin = n + nslack;
    tb.cols = n + nslack + nart;
    tb.t.assign(m, {});
    std::size_t ai = 0;
    for (std::size_t i = 0; i < m; ++i) {
        auto& dst = tb.t[i];
        dst.assign(tb.cols + 1, Rational());
        std::copy(rows[i].begin(), rows[i].begin() + n + nslack, dst.begin());
        dst[tb.cols] = rows[i][n + nslack];
        if (needs_art[i]) {
            dst[tb.art_begin + ai] = Rational(1);
            tb.basis[i] = tb.art_begin + ai;
            ++ai;
        } else {
            tb.basis[i] = slack_col[i];
        }
    }

    if (nart > 0) {
        std::vector<Rational> phase1(tb.cols);
        for (std::size_t j = tb.art_begin; j < tb.cols; ++j) phase1[j] = Rational(1);
        tb.install_objective(phase1);
        tb.optimize(tb.cols);
        // min-form objective row rhs holds -current value
        if (!tb.obj[tb.cols].is_zero())
            throw lssd_error(errc::infeasible, "Infeasible LP (phase 1 residual " +
                                                   (-tb.obj[tb.cols]).str() + ")");
        // drive artificials out of the basis; drop redundant rows
        for (std::size_t i = 0; i < tb.m;) {
            if (tb.basis[i] < tb.art_begin) { ++i; continue; }
            std::size_t c = tb.art_begin;
            for (std::size_t j = 0; j < tb.art_begin; ++j)
                if (!tb.t[i][j].is_zero()) { c = j; break; }
            if (c < tb.art_begin) {
                tb.pivot(i, c);
                ++i;
            } else {
                // redundant constraint
                std::swap(tb.t[i], tb.t[tb.m - 1]);
                std::swap(tb.basis[i], tb.basis[tb.m - 1]);
                tb.t.pop_back();
                tb.basis.pop_back();
                --tb.m;
            }
        }
    }

    std::vector<Rational> costs(tb.cols);
    for (std::size_t j = 0; j < n; ++j) costs[j] = -lp.objective[j]; // max -> min form
    tb.install_objective(costs);
    tb.optimize(tb.art_begin); // artificials blocked from re-entering

    LpSolution sol;
    sol.x.assign(n, Rational());
    for (std::size_t i = 0; i < tb.m; ++i)
        if (tb.basis[i] < n) sol.x[tb.basis[i]] = tb.t[i][tb.cols];
    for (std::size_t j = 0; j < n; ++j) sol.value += lp.objective[j] * sol.x[j];
    return sol;
}

} // namespace lssd
