#pragma once

// Dense real/complex matrices, the vec/realign reshapes, and the two
// factorizations the rest of the library is built on.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace schmidt {

using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealVector = Eigen::VectorXd;

class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class numeric_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Subsystem dimensions of H1 (m) and H2 (n).
struct BipartiteDims {
    std::size_t m = 1;
    std::size_t n = 1;

    std::size_t total() const { return m * n; }
    bool operator==(const BipartiteDims&) const = default;
};

/// Complex matrix stored as independent real and imaginary parts.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    explicit ComplexMatrix(RealMatrix re);
    ComplexMatrix(RealMatrix re, RealMatrix im);

    static ComplexMatrix zero(std::size_t rows, std::size_t cols);
    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return static_cast<std::size_t>(re_.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(re_.cols()); }
    bool square() const { return rows() == cols(); }

    const RealMatrix& re() const { return re_; }
    const RealMatrix& im() const { return im_; }
    RealMatrix& re() { return re_; }
    RealMatrix& im() { return im_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(double s);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix lhs, double s) { return lhs *= s; }
    friend ComplexMatrix operator*(double s, ComplexMatrix rhs) { return rhs *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

    bool all_finite() const { return re_.allFinite() && im_.allFinite(); }
    bool is_real() const { return im_.isZero(0.0); }

private:
    RealMatrix re_;
    RealMatrix im_;
};

// --- reshapes -----------------------------------------------------------

/// Column stacking: component j*rows + i holds T(i, j).
RealVector vec(const RealMatrix& t);
RealMatrix unvec(const RealVector& v, std::size_t rows, std::size_t cols);

/// Realignment of an mn x mn matrix: the row for block (i, j) is vec(Z_ij),
/// rows listed in vec order over the m x m block grid.  Result is m^2 x n^2.
RealMatrix realign(const RealMatrix& z, BipartiteDims dims);
ComplexMatrix realign(const ComplexMatrix& z, BipartiteDims dims);

/// Inverse of realign: rebuilds the mn x mn matrix from its m^2 x n^2 realignment.
RealMatrix unrealign(const RealMatrix& zt, BipartiteDims dims);

RealMatrix kron(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius(const RealMatrix& a);
double frobenius(const ComplexMatrix& a);

/// ||H - H^dagger||_F.
double hermiticity_defect(const ComplexMatrix& h);
bool is_hermitian(const ComplexMatrix& h, double tol);

// --- factorizations -----------------------------------------------------

struct SvdResult {
    RealMatrix u;      // p x p orthogonal
    RealVector s;      // min(p, q) singular values, descending
    RealMatrix v;      // q x q orthogonal
    std::size_t rank = 0;
};

inline constexpr double default_rank_tol = 1e-10;

/// Full SVD with deterministic signs: the first entry of each u_i whose
/// magnitude exceeds rank_tol is positive (v_i flipped to match).
/// rank counts s_i > rank_tol * s_1.
SvdResult svd_real(const RealMatrix& m, double rank_tol = default_rank_tol);

struct EigExtremes {
    double min = 0.0;
    double max = 0.0;
};

/// Smallest and largest eigenvalue of a Hermitian matrix.  Throws
/// numeric_error when H deviates from Hermitian by more than
/// 1e-10 * max(1, ||H||_F).
EigExtremes eig_extremes(const ComplexMatrix& h);

/// All eigenvalues, ascending.
RealVector eigenvalues(const ComplexMatrix& h);

inline double min_eig(const ComplexMatrix& h) { return eig_extremes(h).min; }
inline double max_eig(const ComplexMatrix& h) { return eig_extremes(h).max; }

}  // namespace schmidt
