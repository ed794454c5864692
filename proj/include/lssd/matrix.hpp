#pragma once

#include "lssd/rational.hpp"

#include <complex>
#include <vector>

namespace lssd {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Square when used as an operator; the
// Naimark isometry is the one rectangular case.
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(double s, Mat a) { return a *= s; }

    Mat dagger() const;
    cplx trace() const;
    double frobenius() const;
    double max_abs() const;

    // largest |M - M^dagger| entry; requires square
    double hermiticity_defect() const;
    bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }

  private:
    std::size_t rows_, cols_;
    std::vector<cplx> a_;
};

Mat matmul(const Mat& a, const Mat& b);
Mat kron(const Mat& a, const Mat& b);
Mat partial_trace_b(const Mat& m, std::size_t dim_a, std::size_t dim_b);
Mat partial_trace_a(const Mat& m, std::size_t dim_a, std::size_t dim_b);

// All eigenvalues/vectors of a Hermitian matrix by cyclic complex Jacobi
// rotations (threshold 1e-14 of the Frobenius scale, at most 100 sweeps).
// Eigenvalues ascending; vectors.column(k) is the k-th eigenvector.
struct EighResult {
    std::vector<double> values;
    Mat vectors;

    std::vector<cplx> column(std::size_t k) const;
};
EighResult eigh(const Mat& m);

struct PrincipalEig {
    double value;
    std::vector<cplx> vector;
};
// Largest eigenvalue + eigenvector; throws NotHermitian when the defect
// exceeds 1e-12.
PrincipalEig principal_eigenvalue(const Mat& m);

Mat mat_sqrt_psd(const Mat& m);
Mat mat_inv_sqrt_psd(const Mat& m, double eig_floor = 1e-12);
// projector onto the strictly positive eigenspace (test oracle helper)
Mat positive_eigenspace_projector(const Mat& m);

// n PSD elements on C^d summing to identity.
struct Povm {
    std::vector<Mat> elements;

    std::size_t outcomes() const { return elements.size(); }
    std::size_t dim() const { return elements.empty() ? 0 : elements[0].rows(); }
    void validate(double tol = 1e-10) const;
    bool is_projective(double tol = 1e-10) const;
};

// Referee-classical state: P_X plus one two-register density matrix per x.
struct CqqState {
    std::vector<Rational> px;
    std::vector<Mat> states; // on C^{dim_a * dim_b}
    std::size_t dim_a = 0, dim_b = 0;

    void validate(double psd_tol = 1e-10) const;
};

// Example 2 instance: |phi^x> = (|x>|bot> + |bot>|x>)/sqrt(2) on C^3 x C^3,
// uniform P_X over two values.
CqqState example2_state();

} // namespace lssd
