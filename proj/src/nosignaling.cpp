#include "lssd/nosignaling.hpp"
#include "lssd/classical.hpp"

#include <algorithm>
#include <numeric>

namespace lssd {

namespace {

std::size_t product_of(const std::vector<std::size_t>& v) {
    std::size_t n = 1;
    for (std::size_t s : v) n *= s;
    return n;
}

// mixed-radix iteration: advance returns false after the last tuple
bool advance(std::vector<std::size_t>& idx, const std::vector<std::size_t>& sizes) {
    std::size_t k = idx.size();
    while (k > 0 && ++idx[k - 1] == sizes[k - 1]) idx[--k] = 0;
    return k != 0;
}

std::size_t flatten(const std::vector<std::size_t>& idx, const std::vector<std::size_t>& sizes) {
    std::size_t f = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) f = f * sizes[i] + idx[i];
    return f;
}

} // namespace

std::size_t NoSignalingBox::inputs_total() const { return product_of(input_sizes); }

std::size_t NoSignalingBox::outputs_total() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < input_sizes.size(); ++i) n *= x_size;
    return n;
}

std::size_t NoSignalingBox::index(const std::vector<std::size_t>& xs,
                                  const std::vector<std::size_t>& as) const {
    std::size_t xf = 0;
    for (std::size_t v : xs) {
        if (v >= x_size) throw lssd_error(errc::shape_mismatch, "box output out of range");
        xf = xf * x_size + v;
    }
    return xf * inputs_total() + flatten(as, input_sizes);
}

const Rational& NoSignalingBox::at(const std::vector<std::size_t>& xs,
                                   const std::vector<std::size_t>& as) const {
    return table[index(xs, as)];
}

void NoSignalingBox::validate() const {
    std::size_t r = num_parties();
    std::size_t at = inputs_total(), xt = outputs_total();
    if (table.size() != at * xt)
        throw lssd_error(errc::shape_mismatch, "box table size mismatch");
    for (const auto& q : table)
        if (q.sign() < 0) throw lssd_error(errc::negative_entry, "box entry negative");
    for (std::size_t a = 0; a < at; ++a) {
        Rational s;
        for (std::size_t x = 0; x < xt; ++x) s += table[x * at + a];
        if (s != Rational(1))
            throw lssd_error(errc::not_normalized, "box outputs sum to " + s.str());
    }
    // no-signaling: every proper subset's output marginal is independent of
    // the complementary inputs
    std::vector<std::size_t> out_sizes(r, x_size);
    for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << r); ++mask) {
        std::vector<std::size_t> S, T;
        for (std::size_t i = 0; i < r; ++i) (mask >> i & 1 ? S : T).push_back(i);
        std::vector<std::size_t> s_in_sizes, t_in_sizes;
        for (std::size_t i : S) s_in_sizes.push_back(input_sizes[i]);
        for (std::size_t i : T) t_in_sizes.push_back(input_sizes[i]);
        std::size_t marg_len = 1;
        for (std::size_t i = 0; i < S.size(); ++i) marg_len *= x_size;

        std::vector<std::size_t> aS(S.size(), 0);
        do {
            std::vector<Rational> ref;
            std::vector<std::size_t> aT(T.size(), 0);
            do {
                std::vector<std::size_t> a(r);
                for (std::size_t i = 0; i < S.size(); ++i) a[S[i]] = aS[i];
                for (std::size_t i = 0; i < T.size(); ++i) a[T[i]] = aT[i];
                std::size_t aflat = flatten(a, input_sizes);
                std::vector<Rational> marg(marg_len);
                std::vector<std::size_t> xs(r, 0);
                do {
                    std::size_t mi = 0;
                    for (std::size_t i = 0; i < S.size(); ++i) mi = mi * x_size + xs[S[i]];
                    marg[mi] += table[flatten(xs, out_sizes) * at + aflat];
                } while (advance(xs, out_sizes));
                if (ref.empty())
                    ref = std::move(marg);
                else if (marg != ref)
                    throw lssd_error(errc::check_failed, "no-signaling marginal mismatch");
            } while (advance(aT, t_in_sizes));
        } while (advance(aS, s_in_sizes));
    }
}

ExactLp build_ns_lp(const JointDistribution& dist) {
    std::size_t r = dist.num_parties();
    if (r < 2) throw lssd_error(errc::shape_mismatch, "no-signaling LP needs r >= 2");
    std::size_t X = dist.x_size();
    std::vector<std::size_t> out_sizes(r, X);
    const auto& in_sizes = dist.party_sizes();
    std::size_t at = product_of(in_sizes);
    std::size_t xt = product_of(out_sizes);
    ExactLp lp(xt * at);

    auto var = [&](const std::vector<std::size_t>& xs, const std::vector<std::size_t>& as) {
        return flatten(xs, out_sizes) * at + flatten(as, in_sizes);
    };

    // objective
    std::vector<std::size_t> a(r, 0);
    std::vector<std::size_t> diag(r, 0);
    for (std::size_t x = 0; x < X; ++x) {
        std::fill(a.begin(), a.end(), 0);
        std::fill(diag.begin(), diag.end(), x);
        do {
            const Rational& p = dist.at(x, a);
            if (!p.is_zero()) lp.objective[var(diag, a)] += p;
        } while (advance(a, in_sizes));
    }

    // per-input normalization
    std::fill(a.begin(), a.end(), 0);
    do {
        std::vector<Rational> row(lp.num_vars);
        std::vector<std::size_t> xs(r, 0);
        do {
            row[var(xs, a)] = Rational(1);
        } while (advance(xs, out_sizes));
        lp.add_row(std::move(row), LpRow::Rel::eq, Rational(1));
    } while (advance(a, in_sizes));

    // no-signaling equalities for every proper subset
    for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << r); ++mask) {
        std::vector<std::size_t> S, T;
        for (std::size_t i = 0; i < r; ++i) (mask >> i & 1 ? S : T).push_back(i);
        std::vector<std::size_t> s_in_sizes, t_in_sizes;
        for (std::size_t i : S) s_in_sizes.push_back(in_sizes[i]);
        for (std::size_t i : T) t_in_sizes.push_back(in_sizes[i]);

        std::vector<std::size_t> aS(S.size(), 0);
        do {
            std::vector<std::size_t> xS(S.size(), 0);
            do {
                // marginal at (xS | aS) equal for every completion of inputs
                std::vector<std::size_t> aT0(T.size(), 0);
                std::vector<std::size_t> aT(T.size(), 0);
                bool first = true;
                do {
                    if (first) {
                        aT0 = aT;
                        first = false;
                        continue;
                    }
                    std::vector<Rational> row(lp.num_vars);
                    for (int pass = 0; pass < 2; ++pass) {
                        const auto& aTx = pass == 0 ? aT0 : aT;
                        Rational sign(pass == 0 ? 1 : -1);
                        std::vector<std::size_t> full_a(r);
                        for (std::size_t i = 0; i < S.size(); ++i) full_a[S[i]] = aS[i];
                        for (std::size_t i = 0; i < T.size(); ++i) full_a[T[i]] = aTx[i];
                        std::vector<std::size_t> xs(r, 0);
                        do {
                            bool match = true;
                            for (std::size_t i = 0; i < S.size() && match; ++i)
                                match = xs[S[i]] == xS[i];
                            if (match) row[var(xs, full_a)] += sign;
                        } while (advance(xs, out_sizes));
                    }
                    lp.add_row(std::move(row), LpRow::Rel::eq, Rational());
                } while (advance(aT, t_in_sizes));
            } while (advance(xS, s_in_sizes));
        } while (advance(aS, s_in_sizes));
    }
    return lp;
}

namespace {

// Reduced-alphabet formulation used for large instances: party i on input a
// may only output a value in the support of P_{XA_i}(., a) or one absorbing
// symbol. Exactly value-preserving (local deterministic post-processing maps
// either polytope into the other without losing the objective).
struct ReducedNs {
    const JointDistribution& dist;
    std::size_t r, X;
    std::vector<std::vector<std::vector<std::size_t>>> outs; // outs[i][a]: values, X = bottom
    std::vector<std::size_t> var_offset;                     // per flat input tuple
    std::size_t nvars = 0;

    explicit ReducedNs(const JointDistribution& d) : dist(d), r(d.num_parties()), X(d.x_size()) {
        outs.resize(r);
        for (std::size_t i = 0; i < r; ++i) {
            outs[i].resize(dist.party_size(i));
            for (std::size_t a2 = 0; a2 < dist.party_size(i); ++a2) {
                for (std::size_t x = 0; x < X; ++x)
                    if (dist.xa_marginal(i, x, a2).sign() > 0) outs[i][a2].push_back(x);
                outs[i][a2].push_back(X); // bottom
            }
        }
        std::size_t at = product_of(dist.party_sizes());
        var_offset.assign(at + 1, 0);
        std::vector<std::size_t> a(r, 0);
        std::size_t flat = 0;
        do {
            std::size_t cnt = 1;
            for (std::size_t i = 0; i < r; ++i) cnt *= outs[i][a[i]].size();
            var_offset[flat + 1] = var_offset[flat] + cnt;
            ++flat;
        } while (advance(a, dist.party_sizes()));
        nvars = var_offset[at];
    }

    // variable id for output-choice indices (positions within outs[i][a_i])
    std::size_t var(const std::vector<std::size_t>& choice, const std::vector<std::size_t>& a,
                    std::size_t aflat) const {
        std::size_t f = 0;
        for (std::size_t i = 0; i < r; ++i) f = f * outs[i][a[i]].size() + choice[i];
        return var_offset[aflat] + f;
    }

    ExactLp build() const {
        ExactLp lp(nvars);
        const auto& in_sizes = dist.party_sizes();
        std::vector<std::size_t> a(r, 0);
        std::size_t aflat = 0;
        do {
            std::vector<std::size_t> osz(r);
            for (std::size_t i = 0; i < r; ++i) osz[i] = outs[i][a[i]].size();
            // normalization
            {
                std::vector<Rational> row(nvars);
                for (std::size_t v = var_offset[aflat]; v < var_offset[aflat + 1]; ++v)
                    row[v] = Rational(1);
                lp.add_row(std::move(row), LpRow::Rel::eq, Rational(1));
            }
            // objective: winning entries have all parties outputting x
            for (std::size_t x = 0; x < X; ++x) {
                const Rational& p = dist.at(x, a);
                if (p.is_zero()) continue;
                std::vector<std::size_t> choice(r);
                bool ok = true;
                for (std::size_t i = 0; i < r && ok; ++i) {
                    auto it = std::find(outs[i][a[i]].begin(), outs[i][a[i]].end(), x);
                    ok = it != outs[i][a[i]].end();
                    choice[i] = static_cast<std::size_t>(it - outs[i][a[i]].begin());
                }
                if (ok) lp.objective[var(choice, a, aflat)] += p;
            }
            ++aflat;
        } while (advance(a, in_sizes));

        // (r-1)-subset no-signaling: dropping any single party's input leaves
        // the marginal of the others fixed; this implies all smaller subsets.
        for (std::size_t j = 0; j < r; ++j) {
            std::vector<std::size_t> others;
            for (std::size_t i = 0; i < r; ++i)
                if (i != j) others.push_back(i);
            std::vector<std::size_t> o_in_sizes;
            for (std::size_t i : others) o_in_sizes.push_back(in_sizes[i]);

            std::vector<std::size_t> aO(others.size(), 0);
            do {
                std::vector<std::size_t> osz(others.size());
                for (std::size_t i = 0; i < others.size(); ++i)
                    osz[i] = outs[others[i]][aO[i]].size();
                std::vector<std::size_t> yO(others.size(), 0);
                do {
                    for (std::size_t aj = 1; aj < in_sizes[j]; ++aj) {
                        std::vector<Rational> row(nvars);
                        for (int pass = 0; pass < 2; ++pass) {
                            std::size_t ajx = pass == 0 ? 0 : aj;
                            Rational sign(pass == 0 ? 1 : -1);
                            std::vector<std::size_t> full_a(r);
                            for (std::size_t i = 0; i < others.size(); ++i)
                                full_a[others[i]] = aO[i];
                            full_a[j] = ajx;
                            std::size_t af = flatten(full_a, in_sizes);
                            std::vector<std::size_t> choice(r);
                            for (std::size_t i = 0; i < others.size(); ++i)
                                choice[others[i]] = yO[i];
                            for (std::size_t cj = 0; cj < outs[j][ajx].size(); ++cj) {
                                choice[j] = cj;
                                row[var(choice, full_a, af)] += sign;
                            }
                        }
                        lp.add_row(std::move(row), LpRow::Rel::eq, Rational());
                    }
                } while (advance(yO, osz));
            } while (advance(aO, o_in_sizes));
        }
        return lp;
    }

    // lift a reduced witness to a full-alphabet box (bottom -> output 0)
    NoSignalingBox lift(const std::vector<Rational>& x) const {
        NoSignalingBox box;
        box.x_size = X;
        box.input_sizes = dist.party_sizes();
        std::size_t at = product_of(box.input_sizes);
        box.table.assign(box.outputs_total() * at, Rational());
        std::vector<std::size_t> a(r, 0);
        std::size_t aflat = 0;
        std::vector<std::size_t> out_sizes(r, X);
        do {
            std::vector<std::size_t> osz(r);
            for (std::size_t i = 0; i < r; ++i) osz[i] = outs[i][a[i]].size();
            std::vector<std::size_t> choice(r, 0);
            do {
                const Rational& q = x[var(choice, a, aflat)];
                if (!q.is_zero()) {
                    std::vector<std::size_t> xs(r);
                    for (std::size_t i = 0; i < r; ++i) {
                        std::size_t y = outs[i][a[i]][choice[i]];
                        xs[i] = y == X ? 0 : y;
                    }
                    box.table[flatten(xs, out_sizes) * at + aflat] += q;
                }
            } while (advance(choice, osz));
            ++aflat;
        } while (advance(a, dist.party_sizes()));
        return box;
    }
};

NoSignalingBox box_from_full_witness(const JointDistribution& dist,
                                     const std::vector<Rational>& x) {
    NoSignalingBox box;
    box.x_size = dist.x_size();
    box.input_sizes = dist.party_sizes();
    box.table = x;
    return box;
}

} // namespace

NsOptimum pns_exact(const JointDistribution& dist, std::size_t full_lp_var_limit) {
    std::size_t r = dist.num_parties();
    std::size_t full_vars = product_of(dist.party_sizes());
    for (std::size_t i = 0; i < r; ++i) full_vars *= dist.x_size();

    ReducedNs reduced(dist);
    if (full_vars <= full_lp_var_limit || reduced.nvars >= full_vars) {
        ExactLp lp = build_ns_lp(dist);
        LpSolution sol = simplex_max(lp);
        return {sol.value, box_from_full_witness(dist, sol.x)};
    }
    ExactLp lp = reduced.build();
    LpSolution sol = simplex_max(lp);
    return {sol.value, reduced.lift(sol.x)};
}

NoSignalingBox qk_box(std::size_t k, std::size_t d) {
    if (k < 2 || k > d)
        throw lssd_error(errc::k_out_of_range,
                         "KOutOfRange: k=" + std::to_string(k) + ", d=" + std::to_string(d));
    NoSignalingBox box;
    box.x_size = d;
    box.input_sizes = {2, 2};
    box.table.assign(d * d * 4, Rational());
    Rational inv(1, static_cast<long>(k));
    for (std::size_t xa = 0; xa < k; ++xa)
        for (std::size_t xb = 0; xb < k; ++xb)
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b)
                    if ((xa + k - xb) % k == a * b)
                        box.table[(xa * d + xb) * 4 + a * 2 + b] = inv;
    return box;
}

NsBinaryResult pns_binary_inputs(const JointDistribution& dist, std::uint64_t perm_budget) {
    if (dist.num_parties() != 2 || dist.party_size(0) != 2 || dist.party_size(1) != 2)
        throw lssd_error(errc::shape_mismatch, "pns_binary_inputs needs two binary-input parties");
    std::size_t d = dist.x_size();
    if (d < 2) throw lssd_error(errc::shape_mismatch, "pns_binary_inputs needs |X| >= 2");

    std::uint64_t fact = 1;
    for (std::size_t i = 2; i <= d; ++i) {
        fact *= i;
        if (fact > perm_budget)
            throw lssd_error(errc::budget_exceeded, "BudgetExceeded: needs " + std::to_string(i) +
                                                        "! permutations, budget " +
                                                        std::to_string(perm_budget));
    }

    std::vector<std::vector<std::size_t>> perms;
    {
        std::vector<std::size_t> p(d);
        std::iota(p.begin(), p.end(), 0);
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
    }
    std::size_t P = perms.size();

    NsBinaryResult best;
    best.value = pc_binary_closed_form(dist);
    best.k = 0;

    std::vector<Rational> U00(P * P), U01(P * P), U10(P * P), U11(P * P);
    for (std::size_t k = 2; k <= d; ++k) {
        Rational invk(1, static_cast<long>(k));
        auto fill = [&](std::vector<Rational>& U, std::size_t a, std::size_t b) {
            std::size_t ab = a * b;
            for (std::size_t fi = 0; fi < P; ++fi)
                for (std::size_t gi = 0; gi < P; ++gi) {
                    Rational s;
                    for (std::size_t x = 0; x < d; ++x) {
                        std::size_t xa = perms[fi][x], xb = perms[gi][x];
                        if (xa < k && xb < k && (xa + k - xb) % k == ab) s += dist.at2(x, a, b);
                    }
                    U[fi * P + gi] = s * invk;
                }
        };
        fill(U00, 0, 0);
        fill(U01, 0, 1);
        fill(U10, 1, 0);
        fill(U11, 1, 1);

        for (std::size_t f0 = 0; f0 < P; ++f0)
            for (std::size_t f1 = 0; f1 < P; ++f1) {
                // inner maxima decouple: g0 sees U00[f0]+U10[f1], g1 sees U01[f0]+U11[f1]
                std::size_t bg0 = 0, bg1 = 0;
                Rational v0 = U00[f0 * P] + U10[f1 * P];
                for (std::size_t g = 1; g < P; ++g) {
                    Rational v = U00[f0 * P + g] + U10[f1 * P + g];
                    if (v > v0) { v0 = v; bg0 = g; }
                }
                Rational v1 = U01[f0 * P] + U11[f1 * P];
                for (std::size_t g = 1; g < P; ++g) {
                    Rational v = U01[f0 * P + g] + U11[f1 * P + g];
                    if (v > v1) { v1 = v; bg1 = g; }
                }
                Rational val = v0 + v1;
                if (val > best.value) {
                    best.value = val;
                    best.k = k;
                    best.f = {perms[f0], perms[f1]};
                    best.g = {perms[bg0], perms[bg1]};
                }
            }
    }
    return best;
}

} // namespace lssd
