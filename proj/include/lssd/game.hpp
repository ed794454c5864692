#pragma once

#include "lssd/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace lssd {

// Game instance: dense table of exact probabilities P(x, a_1, ..., a_r) over
// finite alphabets. Immutable after construction.
class JointDistribution {
  public:
    // party_sizes holds |A_1| ... |A_r|; table is indexed with x slowest.
    JointDistribution(std::size_t x_size, std::vector<std::size_t> party_sizes,
                      std::vector<Rational> table);

    std::size_t num_parties() const { return party_sizes_.size(); }
    std::size_t x_size() const { return x_size_; }
    std::size_t party_size(std::size_t i) const { return party_sizes_[i]; }
    const std::vector<std::size_t>& party_sizes() const { return party_sizes_; }
    std::size_t table_size() const { return table_.size(); }

    std::size_t index(std::size_t x, const std::vector<std::size_t>& a) const;
    const Rational& at(std::size_t x, const std::vector<std::size_t>& a) const {
        return table_[index(x, a)];
    }
    // two-party convenience accessor
    const Rational& at2(std::size_t x, std::size_t a, std::size_t b) const;
    const std::vector<Rational>& table() const { return table_; }

    Rational x_marginal(std::size_t x) const;
    // P_{X A_i}(x, a): marginal over all other parties
    Rational xa_marginal(std::size_t party, std::size_t x, std::size_t a) const;
    // P_{A_i}(a)
    Rational a_marginal(std::size_t party, std::size_t a) const;

    // throws lssd_error on NegativeEntry / NotNormalized / ShapeMismatch
    void validate() const;

  private:
    std::size_t x_size_;
    std::vector<std::size_t> party_sizes_;
    std::vector<Rational> table_;
};

// Per-party lookup tables f_i: A_i -> X.
struct DeterministicStrategy {
    std::vector<std::vector<std::size_t>> outputs; // outputs[i][a] in [0, |X|)

    void check_shape(const JointDistribution& dist) const;
};

// Distribution of (X, X^Y, X^Z) with X uniform and P(Y=1)=P(Z=1)=alpha.
JointDistribution noisy_bit_game(const Rational& alpha);

// Independent product: alphabets are Cartesian products, probabilities multiply.
JointDistribution product_game(const JointDistribution& p, const JointDistribution& q);

// The separating three-output game: mass 1/5 on each of
// (0,1,0), (0,1,1), (1,0,0), (1,1,0), (2,0,1).
JointDistribution theorem1_game();

// Text format round trip, see README for the grammar.
JointDistribution load_game(std::istream& in);
JointDistribution load_game_file(const std::string& path);
void save_game(const JointDistribution& dist, std::ostream& out);
void save_game_file(const JointDistribution& dist, const std::string& path);

} // namespace lssd
