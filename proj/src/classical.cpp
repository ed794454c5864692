#include "lssd/classical.hpp"
#include "lssd/parallel.hpp"

#include <algorithm>
#include <mutex>

namespace lssd {

Rational strategy_value(const JointDistribution& dist, const DeterministicStrategy& strat) {
    strat.check_shape(dist);
    std::size_t r = dist.num_parties();
    Rational total;
    std::vector<std::size_t> a(r, 0);
    for (std::size_t x = 0; x < dist.x_size(); ++x) {
        std::fill(a.begin(), a.end(), 0);
        while (true) {
            bool win = true;
            for (std::size_t i = 0; i < r && win; ++i) win = strat.outputs[i][a[i]] == x;
            if (win) total += dist.at(x, a);
            std::size_t k = r;
            while (k > 0 && ++a[k - 1] == dist.party_size(k - 1)) a[--k] = 0;
            if (k == 0) break;
        }
    }
    return total;
}

std::vector<std::vector<std::vector<std::size_t>>> pruned_outputs(const JointDistribution& dist) {
    std::size_t r = dist.num_parties();
    std::vector<std::vector<std::vector<std::size_t>>> opts(r);
    for (std::size_t i = 0; i < r; ++i) {
        opts[i].resize(dist.party_size(i));
        for (std::size_t a = 0; a < dist.party_size(i); ++a) {
            for (std::size_t x = 0; x < dist.x_size(); ++x)
                if (dist.xa_marginal(i, x, a).sign() > 0) opts[i][a].push_back(x);
            if (opts[i][a].empty()) opts[i][a].push_back(0); // input never occurs
        }
    }
    return opts;
}

namespace {

// Decodes a mixed-radix index into per-(party,input) option choices for the
// first r-1 parties; digit 0 is the most significant so increasing index
// walks the tuples in lexicographic order.
struct PrefixSpace {
    const std::vector<std::vector<std::vector<std::size_t>>>& opts;
    std::size_t parties; // r - 1
    std::vector<std::size_t> radix;

    explicit PrefixSpace(const std::vector<std::vector<std::vector<std::size_t>>>& o,
                         std::size_t parties_)
        : opts(o), parties(parties_) {
        for (std::size_t i = 0; i < parties; ++i)
            for (const auto& v : opts[i]) radix.push_back(v.size());
    }

    std::uint64_t size() const {
        std::uint64_t n = 1;
        for (std::size_t d : radix) {
            if (n > UINT64_MAX / d) return UINT64_MAX;
            n *= d;
        }
        return n;
    }

    void decode(std::uint64_t idx, std::vector<std::vector<std::size_t>>& f) const {
        for (std::size_t pos = radix.size(); pos-- > 0;) {
            std::size_t digit = idx % radix[pos];
            idx /= radix[pos];
            // map flat digit position back to (party, input)
            std::size_t i = 0, rem = pos;
            while (rem >= opts[i].size()) rem -= opts[i++].size();
            f[i][rem] = opts[i][rem][digit];
        }
    }
};

} // namespace

ClassicalOptimum pc_bruteforce(const JointDistribution& dist, std::uint64_t budget) {
    auto opts = pruned_outputs(dist);
    std::size_t r = dist.num_parties();

    // effective enumeration cost: full pruned tuple space
    unsigned __int128 total = 1;
    const unsigned __int128 cap = static_cast<unsigned __int128>(1) << 100;
    for (std::size_t i = 0; i < r; ++i)
        for (const auto& v : opts[i]) {
            total *= v.size();
            if (total > cap) total = cap;
        }
    if (total > budget) {
        std::string req = total >= cap ? ">=2^100" : std::to_string(static_cast<std::uint64_t>(total));
        throw lssd_error(errc::budget_exceeded, "BudgetExceeded: pruned strategy space needs " + req +
                                                    " tuples, budget " + std::to_string(budget));
    }

    PrefixSpace prefix(opts, r - 1);
    std::uint64_t K = prefix.size();
    const auto& last_opts = opts[r - 1];
    std::size_t last_inputs = dist.party_size(r - 1);

    struct ShardBest {
        Rational value;
        std::uint64_t index = UINT64_MAX;
        std::vector<std::size_t> last; // best response of the last party
        bool set = false;
    };
    std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(num_threads(), K));
    std::vector<ShardBest> best(workers);

    parallel_shards(K, [&](std::size_t w, std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::vector<std::size_t>> f(r);
        for (std::size_t i = 0; i < r; ++i) f[i].assign(dist.party_size(i), 0);
        std::vector<std::size_t> a(r, 0);
        std::vector<Rational> weight(last_inputs * dist.x_size());
        std::vector<std::size_t> choice(last_inputs);
        ShardBest& out = best[w];
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            prefix.decode(idx, f);
            // best response of the last party: value decomposes over its inputs
            for (auto& wv : weight) wv = Rational();
            for (std::size_t x = 0; x < dist.x_size(); ++x) {
                std::fill(a.begin(), a.end() - 1, 0);
                while (true) {
                    bool match = true;
                    for (std::size_t i = 0; i + 1 < r && match; ++i) match = f[i][a[i]] == x;
                    if (match) {
                        for (std::size_t al = 0; al < last_inputs; ++al) {
                            a[r - 1] = al;
                            weight[al * dist.x_size() + x] += dist.at(x, a);
                        }
                    }
                    std::size_t k = r - 1;
                    while (k > 0 && ++a[k - 1] == dist.party_size(k - 1)) a[--k] = 0;
                    if (k == 0) break;
                }
            }
            Rational val;
            for (std::size_t al = 0; al < last_inputs; ++al) {
                const Rational* bw = nullptr;
                std::size_t bx = 0;
                for (std::size_t x : last_opts[al]) {
                    const Rational& wv = weight[al * dist.x_size() + x];
                    if (!bw || wv > *bw) { bw = &wv; bx = x; }
                }
                val += *bw;
                choice[al] = bx;
            }
            if (!out.set || val > out.value) {
                out.set = true;
                out.value = val;
                out.index = idx;
                out.last = choice;
            }
        }
    });

    const ShardBest* winner = nullptr;
    for (const auto& sb : best) {
        if (!sb.set) continue;
        if (!winner || sb.value > winner->value ||
            (sb.value == winner->value && sb.index < winner->index))
            winner = &sb;
    }

    ClassicalOptimum result;
    result.value = winner->value;
    result.strategy.outputs.resize(r);
    for (std::size_t i = 0; i < r; ++i) result.strategy.outputs[i].assign(dist.party_size(i), 0);
    prefix.decode(winner->index, result.strategy.outputs);
    result.strategy.outputs[r - 1] = winner->last;
    return result;
}

Rational pc_binary_closed_form(const JointDistribution& dist) {
    if (dist.num_parties() != 2 || dist.party_size(0) != 2 || dist.party_size(1) != 2)
        throw lssd_error(errc::shape_mismatch, "closed form needs two parties with binary inputs");
    if (dist.x_size() < 2)
        throw lssd_error(errc::shape_mismatch, "closed form needs |X| >= 2");
    Rational best;
    for (std::size_t s = 0; s < dist.x_size(); ++s) {
        best = std::max(best, dist.x_marginal(s));
        for (std::size_t t = 0; t < dist.x_size(); ++t) {
            if (s == t) continue;
            best = std::max(best, dist.at2(s, 0, 0) + dist.at2(t, 1, 1));
            best = std::max(best, dist.at2(s, 0, 1) + dist.at2(t, 1, 0));
        }
    }
    return best;
}

Rational example1_pc(const Rational& alpha) {
    if (alpha.sign() < 0 || alpha > Rational(1, 2))
        throw lssd_error(errc::alpha_out_of_range, "AlphaOutOfRange: " + alpha.str());
    Rational bar = Rational(1) - alpha;
    Rational sq = bar * bar;
    // alpha <= 1 - 1/sqrt(2)  <=>  2(1-alpha)^2 >= 1, exactly decidable
    if (Rational(2) * sq >= Rational(1)) return sq;
    return Rational(1, 2);
}

} // namespace lssd
