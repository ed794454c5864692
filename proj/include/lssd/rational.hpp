#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <string>
#include <vector>

namespace lssd {

// Exact rational number, always reduced, denominator > 0, canonical zero 0/1.
// Thin wrapper over GMP's mpq_class that enforces canonical form on every
// construction path and adds the num/den text format used by the file formats.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d);
    Rational(const mpz_class& n, const mpz_class& d);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Parses "num", "num/den" or "-num/den"; throws lssd_error(parse_error)
    // on malformed input or zero denominator.
    static Rational parse(const std::string& s);

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }
    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend Rational abs(const Rational& a) { return Rational(mpq_class(::abs(a.v_))); }

  private:
    mpq_class v_;
};

// Error codes surfaced through exceptions in the C++ core and mapped to
// lssd_status at the C boundary.
enum class errc {
    parse_error,
    io_error,
    shape_mismatch,
    negative_entry,
    not_normalized,
    alpha_out_of_range,
    party_count_mismatch,
    budget_exceeded,
    k_out_of_range,
    infeasible,
    unbounded,
    not_hermitian,
    not_symmetric,
    invalid_povm,
    dimension_too_large,
    empty_hypergraph,
    certificate_invalid,
    check_failed,
};

class lssd_error : public std::exception {
  public:
    lssd_error(errc code, std::string msg) : code_(code), msg_(std::move(msg)) {}
    errc code() const { return code_; }
    const char* what() const noexcept override { return msg_.c_str(); }

  private:
    errc code_;
    std::string msg_;
};

const char* errc_name(errc c);

} // namespace lssd
