#include "lssd/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lssd {

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat& Mat::operator+=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw lssd_error(errc::shape_mismatch, "matrix shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw lssd_error(errc::shape_mismatch, "matrix shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Mat& Mat::operator*=(double s) {
    for (auto& v : a_) v *= s;
    return *this;
}

Mat Mat::dagger() const {
    Mat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

cplx Mat::trace() const {
    if (!square()) throw lssd_error(errc::shape_mismatch, "trace of non-square matrix");
    cplx t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double Mat::frobenius() const {
    double s = 0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double Mat::max_abs() const {
    double s = 0;
    for (const auto& v : a_) s = std::max(s, std::abs(v));
    return s;
}

double Mat::hermiticity_defect() const {
    if (!square()) throw lssd_error(errc::shape_mismatch, "hermiticity of non-square matrix");
    double d = 0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw lssd_error(errc::shape_mismatch, "matmul shape mismatch");
    Mat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            cplx aik = a(i, k);
            if (aik == cplx(0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            cplx aij = a(i, j);
            if (aij == cplx(0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

Mat partial_trace_b(const Mat& m, std::size_t dim_a, std::size_t dim_b) {
    Mat out(dim_a, dim_a);
    for (std::size_t i = 0; i < dim_a; ++i)
        for (std::size_t k = 0; k < dim_a; ++k)
            for (std::size_t j = 0; j < dim_b; ++j)
                out(i, k) += m(i * dim_b + j, k * dim_b + j);
    return out;
}

Mat partial_trace_a(const Mat& m, std::size_t dim_a, std::size_t dim_b) {
    Mat out(dim_b, dim_b);
    for (std::size_t j = 0; j < dim_b; ++j)
        for (std::size_t l = 0; l < dim_b; ++l)
            for (std::size_t i = 0; i < dim_a; ++i)
                out(j, l) += m(i * dim_b + j, i * dim_b + l);
    return out;
}

std::vector<cplx> EighResult::column(std::size_t k) const {
    std::vector<cplx> v(vectors.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
    return v;
}

EighResult eigh(const Mat& m) {
    if (!m.square()) throw lssd_error(errc::shape_mismatch, "eigh of non-square matrix");
    std::size_t n = m.rows();
    Mat a = m;
    Mat v = Mat::identity(n);
    double scale = std::max(a.frobenius(), 1e-300);
    const double thresh = 1e-14 * scale;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= thresh) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                cplx apq = a(p, q);
                double mabs = std::abs(apq);
                if (mabs <= thresh / (10.0 * n)) continue;
                double app = a(p, p).real(), aqq = a(q, q).real();
                cplx phase = apq / mabs;
                double tau = (aqq - app) / (2.0 * mabs);
                double t = tau >= 0 ? -1.0 / (tau + std::hypot(1.0, tau))
                                    : 1.0 / (-tau + std::hypot(1.0, tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                cplx sp = s * phase;             // s e^{i phi}
                cplx spc = s * std::conj(phase); // s e^{-i phi}
                // columns: B = A U with U acting on (p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + spc * akq;
                    a(k, q) = -sp * akp + c * akq;
                }
                // rows: A' = U^dagger B
                for (std::size_t k = 0; k < n; ++k) {
                    cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + sp * aqk;
                    a(q, k) = -spc * apk + c * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp + spc * vkq;
                    v(k, q) = -sp * vkp + c * vkq;
                }
            }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    EighResult res;
    res.values.resize(n);
    res.vectors = Mat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        res.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) res.vectors(i, k) = v(i, order[k]);
    }
    return res;
}

PrincipalEig principal_eigenvalue(const Mat& m) {
    if (!m.square() || m.hermiticity_defect() > 1e-12)
        throw lssd_error(errc::not_hermitian, "NotHermitian");
    EighResult r = eigh(m);
    return {r.values.back(), r.column(r.values.size() - 1)};
}

namespace {

Mat eig_transform(const Mat& m, double (*f)(double)) {
    EighResult r = eigh(m);
    std::size_t n = m.rows();
    Mat out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        double w = f(r.values[k]);
        if (w == 0.0) continue;
        auto vk = r.column(k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(i, j) += w * vk[i] * std::conj(vk[j]);
    }
    return out;
}

} // namespace

Mat mat_sqrt_psd(const Mat& m) {
    return eig_transform(m, [](double x) { return x > 0 ? std::sqrt(x) : 0.0; });
}

Mat mat_inv_sqrt_psd(const Mat& m, double eig_floor) {
    EighResult r = eigh(m);
    std::size_t n = m.rows();
    Mat out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        double w = 1.0 / std::sqrt(std::max(r.values[k], eig_floor));
        auto vk = r.column(k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out(i, j) += w * vk[i] * std::conj(vk[j]);
    }
    return out;
}

Mat positive_eigenspace_projector(const Mat& m) {
    return eig_transform(m, [](double x) { return x > 0 ? 1.0 : 0.0; });
}

void Povm::validate(double tol) const {
    if (elements.empty()) throw lssd_error(errc::invalid_povm, "empty POVM");
    std::size_t d = elements[0].rows();
    Mat sum(d, d);
    for (const auto& e : elements) {
        if (!e.square() || e.rows() != d)
            throw lssd_error(errc::invalid_povm, "POVM element dimension mismatch");
        if (e.hermiticity_defect() > tol)
            throw lssd_error(errc::invalid_povm, "POVM element not Hermitian");
        EighResult r = eigh(e);
        if (r.values.front() < -tol)
            throw lssd_error(errc::invalid_povm, "POVM element not PSD");
        sum += e;
    }
    sum -= Mat::identity(d);
    if (sum.max_abs() > tol)
        throw lssd_error(errc::invalid_povm, "POVM elements do not sum to identity");
}

bool Povm::is_projective(double tol) const {
    for (const auto& e : elements) {
        Mat d = matmul(e, e);
        d -= e;
        if (d.max_abs() > tol) return false;
    }
    return true;
}

void CqqState::validate(double psd_tol) const {
    if (px.size() != states.size())
        throw lssd_error(errc::shape_mismatch, "cqq state count mismatch");
    Rational sum;
    for (const auto& p : px) {
        if (p.sign() < 0) throw lssd_error(errc::negative_entry, "negative P_X entry");
        sum += p;
    }
    if (sum != Rational(1))
        throw lssd_error(errc::not_normalized, "P_X sums to " + sum.str());
    for (const auto& rho : states) {
        if (!rho.square() || rho.rows() != dim_a * dim_b)
            throw lssd_error(errc::shape_mismatch, "state dimension mismatch");
        if (rho.hermiticity_defect() > psd_tol)
            throw lssd_error(errc::check_failed, "state not Hermitian");
        EighResult r = eigh(rho);
        if (r.values.front() < -psd_tol)
            throw lssd_error(errc::check_failed, "state not PSD");
        if (std::abs(rho.trace().real() - 1.0) > psd_tol)
            throw lssd_error(errc::check_failed, "state trace != 1");
    }
}

CqqState example2_state() {
    CqqState st;
    st.dim_a = st.dim_b = 3;
    st.px = {Rational(1, 2), Rational(1, 2)};
    const std::size_t bot = 2;
    double inv = 1.0 / std::sqrt(2.0);
    for (std::size_t x = 0; x < 2; ++x) {
        std::vector<cplx> phi(9);
        phi[x * 3 + bot] += inv;
        phi[bot * 3 + x] += inv;
        Mat rho(9, 9);
        for (std::size_t i = 0; i < 9; ++i)
            for (std::size_t j = 0; j < 9; ++j) rho(i, j) = phi[i] * std::conj(phi[j]);
        st.states.push_back(std::move(rho));
    }
    return st;
}

} // namespace lssd
