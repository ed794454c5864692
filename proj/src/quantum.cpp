#include "lssd/quantum.hpp"
#include "lssd/classical.hpp"
#include "lssd/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lssd {

void MeasurementFamily::validate(double tol) const {
    if (povms.empty()) throw lssd_error(errc::shape_mismatch, "empty measurement family");
    for (const auto& p : povms) {
        p.validate(tol);
        if (p.dim() != dim() || p.outcomes() != outcomes())
            throw lssd_error(errc::shape_mismatch, "measurement family shape mismatch");
    }
}

Mat omega(const JointDistribution& dist, const MeasurementFamily& alice,
          const MeasurementFamily& bob) {
    if (dist.num_parties() != 2)
        throw lssd_error(errc::shape_mismatch, "omega needs a two-party game");
    if (alice.inputs() != dist.party_size(0) || bob.inputs() != dist.party_size(1) ||
        alice.outcomes() != dist.x_size() || bob.outcomes() != dist.x_size())
        throw lssd_error(errc::shape_mismatch, "measurement family does not match game");
    std::size_t d = alice.dim() * bob.dim();
    Mat om(d, d);
    for (std::size_t x = 0; x < dist.x_size(); ++x)
        for (std::size_t a = 0; a < dist.party_size(0); ++a)
            for (std::size_t b = 0; b < dist.party_size(1); ++b) {
                double p = dist.at2(x, a, b).to_double();
                if (p == 0.0) continue;
                om += p * kron(alice.povms[a].elements[x], bob.povms[b].elements[x]);
            }
    return om;
}

Mat qubit_projector(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    Mat m(2, 2);
    m(0, 0) = c * c;
    m(0, 1) = c * s;
    m(1, 0) = s * c;
    m(1, 1) = s * s;
    return m;
}

QubitStrategy paper_strategy() {
    double s13 = std::sqrt(13.0);
    double t1 = 0.25 * std::acos((121.0 + 52.0 * s13) / 477.0);
    double t2 = 0.25 * std::acos((-431.0 + 4.0 * s13) / 477.0);
    QubitStrategy st;
    st.angles = {{{-t1, t2}, {M_PI / 2 - t2, t1}}};
    // Alice: input 0 guesses only 1 or 2, input 1 only 0 or 1;
    // Bob:   input 0 guesses only 0 or 1, input 1 only 0 or 2.
    st.pattern = {{{{{1, 2}, {0, 1}}}, {{{0, 1}, {0, 2}}}}};
    return st;
}

MeasurementFamily strategy_family(const QubitStrategy& strat, std::size_t party,
                                  std::size_t x_size) {
    MeasurementFamily fam;
    for (std::size_t input = 0; input < 2; ++input) {
        auto [p, m] = strat.pattern[party][input];
        if (p >= x_size || m >= x_size || p == m)
            throw lssd_error(errc::shape_mismatch, "zero pattern outcome out of range");
        Povm povm;
        povm.elements.assign(x_size, Mat(2, 2));
        Mat pi = qubit_projector(strat.angles[party][input]);
        povm.elements[p] = pi;
        povm.elements[m] = Mat::identity(2) - pi;
        fam.povms.push_back(std::move(povm));
    }
    return fam;
}

double eval_strategy(const JointDistribution& dist, const QubitStrategy& strat) {
    if (dist.num_parties() != 2 || dist.party_size(0) != 2 || dist.party_size(1) != 2)
        throw lssd_error(errc::shape_mismatch, "qubit ansatz needs two binary-input parties");
    Mat om = omega(dist, strategy_family(strat, 0, dist.x_size()),
                   strategy_family(strat, 1, dist.x_size()));
    if (strat.state) {
        const auto& v = *strat.state;
        if (v.size() != om.rows())
            throw lssd_error(errc::shape_mismatch, "explicit state dimension mismatch");
        double nrm = 0;
        for (const auto& z : v) nrm += std::norm(z);
        if (std::abs(nrm - 1.0) > 1e-12)
            throw lssd_error(errc::check_failed, "explicit state not normalized");
        cplx val = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) val += std::conj(v[i]) * om(i, j) * v[j];
        return val.real();
    }
    return principal_eigenvalue(om).value;
}

namespace {

// Nelder-Mead maximization with the fixed hyperparameters: reflection 1,
// expansion 2, contraction 1/2, shrink 1/2; stops when the simplex diameter
// drops below 1e-10 or the evaluation budget runs out.
template <typename F>
std::pair<double, std::array<double, 4>> nelder_mead4(F&& f, std::array<double, 4> start,
                                                      double step, int budget) {
    constexpr std::size_t n = 4;
    struct Pt {
        std::array<double, 4> x;
        double val;
    };
    int evals = 0;
    auto eval = [&](const std::array<double, 4>& x) {
        ++evals;
        return f(x);
    };
    std::vector<Pt> simplex;
    simplex.push_back({start, eval(start)});
    for (std::size_t i = 0; i < n; ++i) {
        auto x = start;
        x[i] += step;
        simplex.push_back({x, eval(x)});
    }
    auto by_val = [](const Pt& a, const Pt& b) { return a.val > b.val; };
    std::sort(simplex.begin(), simplex.end(), by_val);
    while (evals < budget) {
        double diam = 0;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                diam = std::max(diam, std::abs(simplex[i].x[k] - simplex[0].x[k]));
        if (diam < 1e-10) break;
        std::array<double, 4> centroid{};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i].x[k] / n;
        auto mix = [&](double t) {
            std::array<double, 4> x;
            for (std::size_t k = 0; k < n; ++k)
                x[k] = centroid[k] + t * (centroid[k] - simplex[n].x[k]);
            return x;
        };
        auto xr = mix(1.0);
        double fr = eval(xr);
        if (fr > simplex[0].val) {
            auto xe = mix(2.0);
            double fe = eval(xe);
            if (fe > fr)
                simplex[n] = {xe, fe};
            else
                simplex[n] = {xr, fr};
        } else if (fr > simplex[n - 1].val) {
            simplex[n] = {xr, fr};
        } else {
            auto xc = mix(-0.5);
            double fc = eval(xc);
            if (fc > simplex[n].val) {
                simplex[n] = {xc, fc};
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t k = 0; k < n; ++k)
                        simplex[i].x[k] = simplex[0].x[k] + 0.5 * (simplex[i].x[k] - simplex[0].x[k]);
                    simplex[i].val = eval(simplex[i].x);
                }
            }
        }
        std::sort(simplex.begin(), simplex.end(), by_val);
    }
    return {simplex[0].val, simplex[0].x};
}

using Pattern = std::array<std::array<std::pair<std::size_t, std::size_t>, 2>, 2>;

std::vector<Pattern> prune_consistent_patterns(const JointDistribution& dist) {
    auto opts = pruned_outputs(dist);
    // per party-input candidate (p, m) pairs
    std::array<std::array<std::vector<std::pair<std::size_t, std::size_t>>, 2>, 2> cand;
    for (std::size_t party = 0; party < 2; ++party)
        for (std::size_t input = 0; input < 2; ++input) {
            const auto& o = opts[party][input];
            auto& c = cand[party][input];
            if (o.size() >= 2) {
                for (std::size_t i = 0; i < o.size(); ++i)
                    for (std::size_t j = i + 1; j < o.size(); ++j) c.push_back({o[i], o[j]});
            } else {
                // single allowed outcome: partner slot is value-irrelevant
                std::size_t x0 = o[0];
                std::size_t other = x0 == 0 ? 1 : 0;
                c.push_back({x0, other});
            }
        }
    std::vector<Pattern> out;
    for (const auto& a0 : cand[0][0])
        for (const auto& a1 : cand[0][1])
            for (const auto& b0 : cand[1][0])
                for (const auto& b1 : cand[1][1])
                    out.push_back({{{{a0, a1}}, {{b0, b1}}}});
    return out;
}

} // namespace

QubitOptimum optimize_qubit(const JointDistribution& dist, int seeds, int budget,
                            std::uint64_t prng_seed) {
    if (dist.num_parties() != 2 || dist.party_size(0) != 2 || dist.party_size(1) != 2)
        throw lssd_error(errc::shape_mismatch, "optimize_qubit needs two binary-input parties");
    if (seeds < 1) seeds = 1;
    auto patterns = prune_consistent_patterns(dist);

    // deterministic start points, shared across patterns
    std::mt19937_64 rng(prng_seed);
    std::uniform_real_distribution<double> uni(-M_PI / 2, M_PI / 2);
    std::vector<std::array<double, 4>> starts(seeds);
    for (auto& s : starts)
        for (auto& v : s) v = uni(rng);

    struct Best {
        double value = -1;
        std::size_t order = SIZE_MAX; // pattern * seeds + seed, for deterministic ties
        std::array<double, 4> angles{};
        std::size_t pattern = 0;
    };
    std::size_t jobs = patterns.size() * static_cast<std::size_t>(seeds);
    std::vector<Best> best(std::max<std::size_t>(1, std::min<std::size_t>(num_threads(), jobs)));

    parallel_shards(jobs, [&](std::size_t w, std::size_t lo, std::size_t hi) {
        for (std::size_t job = lo; job < hi; ++job) {
            std::size_t pat = job / seeds, seed = job % seeds;
            QubitStrategy st;
            st.pattern = patterns[pat];
            auto f = [&](const std::array<double, 4>& x) {
                QubitStrategy probe = st;
                probe.angles = {{{x[0], x[1]}, {x[2], x[3]}}};
                return eval_strategy(dist, probe);
            };
            auto [val, ang] = nelder_mead4(f, starts[seed], 0.4, budget);
            Best& b = best[w];
            if (val > b.value || (val == b.value && job < b.order)) {
                b.value = val;
                b.order = job;
                b.angles = ang;
                b.pattern = pat;
            }
        }
    });

    const Best* win = &best[0];
    for (const auto& b : best)
        if (b.value > win->value || (b.value == win->value && b.order < win->order)) win = &b;

    QubitOptimum out;
    out.strategy.pattern = patterns[win->pattern];
    out.strategy.angles = {{{win->angles[0], win->angles[1]}, {win->angles[2], win->angles[3]}}};
    out.value = eval_strategy(dist, out.strategy);
    return out;
}

NaimarkDilation naimark_dilate(const Povm& m) {
    m.validate(1e-10);
    std::size_t d = m.dim(), n = m.outcomes();
    Mat u(d * n, d);
    for (std::size_t i = 0; i < n; ++i) {
        Mat root = mat_sqrt_psd(m.elements[i]);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) u(r * n + i, c) = root(r, c);
    }
    NaimarkDilation out;
    out.isometry = std::move(u);
    out.projective.elements.assign(n, Mat(d * n, d * n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < d; ++r) out.projective.elements[i](r * n + i, r * n + i) = 1.0;
    return out;
}

MeasurementFamily prune(const JointDistribution& dist, std::size_t party,
                        const MeasurementFamily& family) {
    if (dist.num_parties() != 2)
        throw lssd_error(errc::shape_mismatch, "prune needs a two-party game");
    if (family.inputs() != dist.party_size(party))
        throw lssd_error(errc::shape_mismatch, "family does not match party alphabet");
    MeasurementFamily out = family;
    for (std::size_t a = 0; a < family.inputs(); ++a) {
        if (dist.a_marginal(party, a).sign() <= 0) continue;
        std::size_t absorb = dist.x_size();
        for (std::size_t x = 0; x < dist.x_size(); ++x)
            if (dist.xa_marginal(party, x, a).sign() > 0) { absorb = x; break; }
        Mat extra(family.dim(), family.dim());
        for (std::size_t x = 0; x < dist.x_size(); ++x) {
            if (dist.xa_marginal(party, x, a).sign() > 0) continue;
            extra += out.povms[a].elements[x];
            out.povms[a].elements[x] = Mat(family.dim(), family.dim());
        }
        out.povms[a].elements[absorb] += extra;
    }
    return out;
}

namespace {

// One party's discrimination subproblem: maximize sum_x Re tr(R_x M_x) over
// POVMs via gradient ascent on the stacked parameterization. Z holds n blocks
// of d x d; M_x = S^{-1/2} Z_x^dag Z_x S^{-1/2}, S = sum Z_x^dag Z_x.
struct AscentProblem {
    const std::vector<Mat>& r;
    std::size_t d, n;

    std::vector<Mat> povm_of(const std::vector<Mat>& z) const {
        Mat s(d, d);
        for (const auto& zx : z) s += matmul(zx.dagger(), zx);
        Mat si = mat_inv_sqrt_psd(s, 1e-12);
        std::vector<Mat> m;
        m.reserve(n);
        for (const auto& zx : z) {
            Mat g = matmul(zx, si);
            m.push_back(matmul(g.dagger(), g));
        }
        return m;
    }

    double objective(const std::vector<Mat>& z) const {
        auto m = povm_of(z);
        double v = 0;
        for (std::size_t x = 0; x < n; ++x) v += matmul(r[x], m[x]).trace().real();
        return v;
    }

    // forward-difference gradient in the 2*d*d*n real coordinates of Z
    std::vector<Mat> gradient(std::vector<Mat> z, double f0) const {
        const double h = 1e-6;
        std::vector<Mat> g(n, Mat(d, d));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    cplx orig = z[x](i, j);
                    z[x](i, j) = orig + h;
                    double fre = objective(z);
                    z[x](i, j) = orig + cplx(0, h);
                    double fim = objective(z);
                    z[x](i, j) = orig;
                    g[x](i, j) = cplx((fre - f0) / h, (fim - f0) / h);
                }
        return g;
    }

    // ascent with backtracking; only improving steps are accepted so the
    // returned objective never falls below the starting one
    std::pair<double, std::vector<Mat>> ascend(std::vector<Mat> z, int max_steps) const {
        double f0 = objective(z);
        double step = 0.5;
        for (int it = 0; it < max_steps; ++it) {
            auto g = gradient(z, f0);
            double gn = 0;
            for (const auto& gx : g) gn += gx.frobenius() * gx.frobenius();
            gn = std::sqrt(gn);
            if (gn < 1e-10) break;
            bool improved = false;
            for (int bt = 0; bt < 30; ++bt) {
                std::vector<Mat> zn = z;
                for (std::size_t x = 0; x < n; ++x) zn[x] += (step / gn) * g[x];
                double fn = objective(zn);
                if (fn > f0) {
                    z = std::move(zn);
                    f0 = fn;
                    improved = true;
                    step *= 1.5;
                    break;
                }
                step *= 0.5;
            }
            if (!improved) break;
        }
        return {f0, std::move(z)};
    }
};

std::vector<Mat> sqrt_blocks(const std::vector<Mat>& povm) {
    std::vector<Mat> z;
    z.reserve(povm.size());
    for (const auto& m : povm) z.push_back(mat_sqrt_psd(m));
    return z;
}

} // namespace

SeesawResult cqq_seesaw(const CqqState& state, int restarts, int iters, std::uint64_t prng_seed) {
    state.validate();
    std::size_t da = state.dim_a, db = state.dim_b, n = state.px.size();
    if (da > 8 || db > 8)
        throw lssd_error(errc::dimension_too_large, "DimensionTooLarge: local dims must be <= 8");
    if (restarts < 1) restarts = 1;
    if (iters < 1) iters = 1;

    auto value_of = [&](const std::vector<Mat>& m, const std::vector<Mat>& nb) {
        double v = 0;
        for (std::size_t x = 0; x < n; ++x)
            v += state.px[x].to_double() * matmul(state.states[x], kron(m[x], nb[x])).trace().real();
        return v;
    };
    auto hermitize = [](Mat m) {
        Mat d = m.dagger();
        m += d;
        m *= 0.5;
        return m;
    };

    std::mt19937_64 master(prng_seed);
    std::vector<std::uint64_t> restart_seeds(restarts);
    for (auto& s : restart_seeds) s = master();

    SeesawResult best;
    best.value = -1;
    for (int rs = 0; rs < restarts; ++rs) {
        std::mt19937_64 rng(restart_seeds[rs]);
        std::normal_distribution<double> normal;
        auto random_povm = [&](std::size_t d) {
            std::vector<Mat> z(n, Mat(d, d));
            for (auto& zx : z)
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) zx(i, j) = cplx(normal(rng), normal(rng));
            AscentProblem dummy{{}, d, n};
            return dummy.povm_of(z);
        };
        std::vector<Mat> m = random_povm(da), nb = random_povm(db);
        std::vector<double> trace;
        double cur = value_of(m, nb);
        trace.push_back(cur);
        for (int it = 0; it < iters; ++it) {
            // Alice half-step
            std::vector<Mat> ra(n);
            for (std::size_t x = 0; x < n; ++x)
                ra[x] = hermitize(state.px[x].to_double() *
                                  partial_trace_b(matmul(state.states[x],
                                                         kron(Mat::identity(da), nb[x])),
                                                  da, db));
            AscentProblem pa{ra, da, n};
            auto [fa, za] = pa.ascend(sqrt_blocks(m), 60);
            (void)fa;
            m = pa.povm_of(za);
            double after_a = value_of(m, nb);
            trace.push_back(after_a);
            // Bob half-step
            std::vector<Mat> rb(n);
            for (std::size_t x = 0; x < n; ++x)
                rb[x] = hermitize(state.px[x].to_double() *
                                  partial_trace_a(matmul(kron(m[x], Mat::identity(db)),
                                                         state.states[x]),
                                                  da, db));
            AscentProblem pb{rb, db, n};
            auto [fb, zb] = pb.ascend(sqrt_blocks(nb), 60);
            (void)fb;
            nb = pb.povm_of(zb);
            double after_b = value_of(m, nb);
            trace.push_back(after_b);
            if (after_b - cur < 1e-12 && it > 2) { cur = after_b; break; }
            cur = after_b;
        }
        if (cur > best.value) {
            best.value = cur;
            best.alice.elements = m;
            best.bob.elements = nb;
            best.trace = std::move(trace);
        }
    }
    return best;
}

} // namespace lssd
