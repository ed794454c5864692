#include "lssd/game.hpp"

#include <fstream>
#include <sstream>

namespace lssd {

JointDistribution::JointDistribution(std::size_t x_size, std::vector<std::size_t> party_sizes,
                                     std::vector<Rational> table)
    : x_size_(x_size), party_sizes_(std::move(party_sizes)), table_(std::move(table)) {
    if (x_size_ == 0 || party_sizes_.empty())
        throw lssd_error(errc::shape_mismatch, "empty alphabet");
    std::size_t n = x_size_;
    for (std::size_t s : party_sizes_) {
        if (s == 0) throw lssd_error(errc::shape_mismatch, "empty party alphabet");
        n *= s;
    }
    if (table_.size() != n)
        throw lssd_error(errc::shape_mismatch,
                         "table has " + std::to_string(table_.size()) + " entries, expected " +
                             std::to_string(n));
}

std::size_t JointDistribution::index(std::size_t x, const std::vector<std::size_t>& a) const {
    if (x >= x_size_ || a.size() != party_sizes_.size())
        throw lssd_error(errc::shape_mismatch, "index out of range");
    std::size_t idx = x;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] >= party_sizes_[i])
            throw lssd_error(errc::shape_mismatch, "index out of range");
        idx = idx * party_sizes_[i] + a[i];
    }
    return idx;
}

const Rational& JointDistribution::at2(std::size_t x, std::size_t a, std::size_t b) const {
    if (num_parties() != 2)
        throw lssd_error(errc::shape_mismatch, "at2 requires a two-party game");
    return table_[(x * party_sizes_[0] + a) * party_sizes_[1] + b];
}

Rational JointDistribution::x_marginal(std::size_t x) const {
    std::size_t block = table_.size() / x_size_;
    Rational s;
    for (std::size_t i = 0; i < block; ++i) s += table_[x * block + i];
    return s;
}

Rational JointDistribution::xa_marginal(std::size_t party, std::size_t x, std::size_t a) const {
    std::size_t block = table_.size() / x_size_;
    std::size_t inner = 1;
    for (std::size_t i = party + 1; i < party_sizes_.size(); ++i) inner *= party_sizes_[i];
    Rational s;
    for (std::size_t i = 0; i < block; ++i)
        if ((i / inner) % party_sizes_[party] == a) s += table_[x * block + i];
    return s;
}

Rational JointDistribution::a_marginal(std::size_t party, std::size_t a) const {
    Rational s;
    for (std::size_t x = 0; x < x_size_; ++x) s += xa_marginal(party, x, a);
    return s;
}

void JointDistribution::validate() const {
    Rational sum;
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (table_[i].sign() < 0)
            throw lssd_error(errc::negative_entry,
                             "NegativeEntry at flat index " + std::to_string(i) + ": " +
                                 table_[i].str());
        sum += table_[i];
    }
    if (sum != Rational(1))
        throw lssd_error(errc::not_normalized, "NotNormalized: entries sum to " + sum.str());
}

void DeterministicStrategy::check_shape(const JointDistribution& dist) const {
    if (outputs.size() != dist.num_parties())
        throw lssd_error(errc::shape_mismatch, "strategy party count mismatch");
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (outputs[i].size() != dist.party_size(i))
            throw lssd_error(errc::shape_mismatch, "strategy table length mismatch");
        for (std::size_t v : outputs[i])
            if (v >= dist.x_size())
                throw lssd_error(errc::shape_mismatch, "strategy output out of range");
    }
}

JointDistribution noisy_bit_game(const Rational& alpha) {
    if (alpha.sign() < 0 || alpha > Rational(1, 2))
        throw lssd_error(errc::alpha_out_of_range, "AlphaOutOfRange: " + alpha.str());
    Rational half(1, 2), bar = Rational(1) - alpha;
    std::vector<Rational> t(8);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t z = 0; z < 2; ++z) {
                Rational p = half * (y ? alpha : bar) * (z ? alpha : bar);
                t[(x * 2 + (x ^ y)) * 2 + (x ^ z)] += p;
            }
    return JointDistribution(2, {2, 2}, std::move(t));
}

JointDistribution product_game(const JointDistribution& p, const JointDistribution& q) {
    if (p.num_parties() != q.num_parties())
        throw lssd_error(errc::party_count_mismatch, "PartyCountMismatch");
    std::size_t r = p.num_parties();
    std::vector<std::size_t> sizes(r);
    for (std::size_t i = 0; i < r; ++i) sizes[i] = p.party_size(i) * q.party_size(i);
    std::size_t xs = p.x_size() * q.x_size();
    std::size_t total = xs;
    for (std::size_t s : sizes) total *= s;
    std::vector<Rational> t(total);

    std::vector<std::size_t> ap(r), aq(r), a(r);
    // iterate over all joint indices of both factor games
    std::vector<std::size_t> ip(r, 0), iq(r, 0);
    for (std::size_t xp = 0; xp < p.x_size(); ++xp)
        for (std::size_t xq = 0; xq < q.x_size(); ++xq) {
            std::size_t x = xp * q.x_size() + xq;
            std::fill(ip.begin(), ip.end(), 0);
            while (true) {
                std::fill(iq.begin(), iq.end(), 0);
                while (true) {
                    for (std::size_t i = 0; i < r; ++i)
                        a[i] = ip[i] * q.party_size(i) + iq[i];
                    std::size_t idx = x;
                    for (std::size_t i = 0; i < r; ++i) idx = idx * sizes[i] + a[i];
                    t[idx] = p.at(xp, ip) * q.at(xq, iq);
                    std::size_t k = r;
                    while (k > 0 && ++iq[k - 1] == q.party_size(k - 1)) iq[--k] = 0;
                    if (k == 0) break;
                }
                std::size_t k = r;
                while (k > 0 && ++ip[k - 1] == p.party_size(k - 1)) ip[--k] = 0;
                if (k == 0) break;
            }
        }
    return JointDistribution(xs, std::move(sizes), std::move(t));
}

JointDistribution theorem1_game() {
    std::vector<Rational> t(3 * 2 * 2);
    Rational fifth(1, 5);
    auto set = [&](std::size_t x, std::size_t a, std::size_t b) { t[(x * 2 + a) * 2 + b] = fifth; };
    set(0, 1, 0);
    set(0, 1, 1);
    set(1, 0, 0);
    set(1, 1, 0);
    set(2, 0, 1);
    return JointDistribution(3, {2, 2}, std::move(t));
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

[[noreturn]] void parse_fail(std::size_t lineno, const std::string& why) {
    throw lssd_error(errc::parse_error, "line " + std::to_string(lineno) + ": " + why);
}

std::size_t parse_uint(const std::string& tok, std::size_t lineno) {
    if (tok.empty()) parse_fail(lineno, "expected integer");
    for (char c : tok)
        if (!isdigit(static_cast<unsigned char>(c))) parse_fail(lineno, "expected integer, got '" + tok + "'");
    return std::stoul(tok);
}

std::size_t parse_size(const std::string& tok, std::size_t lineno) {
    std::size_t v = parse_uint(tok, lineno);
    if (v == 0) parse_fail(lineno, "size must be positive");
    return v;
}

} // namespace

JointDistribution load_game(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    auto next_meaningful = [&](std::vector<std::string>& toks) {
        while (std::getline(in, line)) {
            ++lineno;
            toks = tokenize(line);
            if (!toks.empty()) return true;
        }
        return false;
    };
    std::vector<std::string> toks;
    if (!next_meaningful(toks) || toks.size() != 2 || toks[0] != "lssd-game" || toks[1] != "v1")
        parse_fail(lineno ? lineno : 1, "expected header 'lssd-game v1'");
    if (!next_meaningful(toks) || toks.size() != 2 || toks[0] != "parties")
        parse_fail(lineno, "expected 'parties <r>'");
    std::size_t r = parse_size(toks[1], lineno);
    if (!next_meaningful(toks) || toks[0] != "alphabets" || toks.size() != r + 2)
        parse_fail(lineno, "expected 'alphabets <|X|> <|A_1|> ... <|A_r|>'");
    std::size_t xs = parse_size(toks[1], lineno);
    std::vector<std::size_t> sizes(r);
    std::size_t total = xs;
    for (std::size_t i = 0; i < r; ++i) {
        sizes[i] = parse_size(toks[2 + i], lineno);
        total *= sizes[i];
    }
    std::vector<Rational> table(total);
    while (next_meaningful(toks)) {
        if (toks.size() != r + 2) parse_fail(lineno, "expected '<x> <a_1> ... <a_r> <num>/<den>'");
        std::size_t x = parse_uint(toks[0], lineno);
        if (x >= xs) parse_fail(lineno, "x out of range");
        std::size_t idx = x;
        for (std::size_t i = 0; i < r; ++i) {
            std::size_t a = parse_uint(toks[1 + i], lineno);
            if (a >= sizes[i]) parse_fail(lineno, "party index out of range");
            idx = idx * sizes[i] + a;
        }
        Rational p;
        try {
            p = Rational::parse(toks[r + 1]);
        } catch (const lssd_error& e) {
            parse_fail(lineno, e.what());
        }
        if (p.sign() < 0) parse_fail(lineno, "negative probability");
        table[idx] += p;
    }
    JointDistribution dist(xs, std::move(sizes), std::move(table));
    try {
        dist.validate();
    } catch (const lssd_error& e) {
        throw lssd_error(errc::parse_error, std::string("invalid game: ") + e.what());
    }
    return dist;
}

JointDistribution load_game_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lssd_error(errc::io_error, "cannot open " + path);
    return load_game(in);
}

void save_game(const JointDistribution& dist, std::ostream& out) {
    std::size_t r = dist.num_parties();
    out << "lssd-game v1\n";
    out << "parties " << r << "\n";
    out << "alphabets " << dist.x_size();
    for (std::size_t i = 0; i < r; ++i) out << " " << dist.party_size(i);
    out << "\n";
    std::vector<std::size_t> a(r, 0);
    for (std::size_t x = 0; x < dist.x_size(); ++x) {
        std::fill(a.begin(), a.end(), 0);
        while (true) {
            const Rational& p = dist.at(x, a);
            if (!p.is_zero()) {
                out << x;
                for (std::size_t v : a) out << " " << v;
                // always num/den so the round trip is bit-exact
                out << " " << p.num().get_str() << "/" << p.den().get_str() << "\n";
            }
            std::size_t k = r;
            while (k > 0 && ++a[k - 1] == dist.party_size(k - 1)) a[--k] = 0;
            if (k == 0) break;
        }
    }
}

void save_game_file(const JointDistribution& dist, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw lssd_error(errc::io_error, "cannot open " + path);
    save_game(dist, out);
    if (!out) throw lssd_error(errc::io_error, "write failed: " + path);
}

} // namespace lssd
