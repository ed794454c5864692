#include "lssd/rational.hpp"

namespace lssd {

Rational::Rational(long n, long d) {
    if (d == 0)
        throw lssd_error(errc::parse_error, "rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
    if (sgn(d) == 0)
        throw lssd_error(errc::parse_error, "rational with zero denominator");
    v_ = mpq_class(n) / mpq_class(d);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero())
        throw lssd_error(errc::parse_error, "division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(const std::string& s) {
    auto bad = [&](const char* why) {
        return lssd_error(errc::parse_error, "bad rational '" + s + "': " + why);
    };
    auto slash = s.find('/');
    std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
    std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (ns.empty() || ds.empty()) throw bad("empty part");
    auto digits = [](const std::string& t, bool sign_ok) {
        size_t i = (sign_ok && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    if (!digits(ns, true) || !digits(ds, false)) throw bad("not an integer");
    mpz_class num(ns), den(ds);
    if (sgn(den) == 0) throw bad("zero denominator");
    return Rational(num, den);
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

const char* errc_name(errc c) {
    switch (c) {
        case errc::parse_error: return "ParseError";
        case errc::io_error: return "IoError";
        case errc::shape_mismatch: return "ShapeMismatch";
        case errc::negative_entry: return "NegativeEntry";
        case errc::not_normalized: return "NotNormalized";
        case errc::alpha_out_of_range: return "AlphaOutOfRange";
        case errc::party_count_mismatch: return "PartyCountMismatch";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::k_out_of_range: return "KOutOfRange";
        case errc::infeasible: return "Infeasible";
        case errc::unbounded: return "Unbounded";
        case errc::not_hermitian: return "NotHermitian";
        case errc::not_symmetric: return "NotSymmetric";
        case errc::invalid_povm: return "InvalidPovm";
        case errc::dimension_too_large: return "DimensionTooLarge";
        case errc::empty_hypergraph: return "EmptyHypergraph";
        case errc::certificate_invalid: return "CertificateInvalid";
        case errc::check_failed: return "CheckFailed";
    }
    return "Unknown";
}

} // namespace lssd
