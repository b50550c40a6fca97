#include "schmidt/dense.hpp"

#include <algorithm>
#include <cmath>

namespace schmidt {

namespace {

void require_same_shape(const RealMatrix& a, const RealMatrix& b, const char* what)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw dimension_error(std::string(what) + ": shape mismatch");
}

// Real symmetric 2n x 2n form of a Hermitian n x n matrix a + ib.  Every
// eigenvalue of the Hermitian matrix appears twice.
RealMatrix real_embedding(const ComplexMatrix& h)
{
    const auto n = static_cast<Eigen::Index>(h.rows());
    RealMatrix out(2 * n, 2 * n);
    const RealMatrix re = 0.5 * (h.re() + h.re().transpose());
    const RealMatrix im = 0.5 * (h.im() - h.im().transpose());
    out.topLeftCorner(n, n) = re;
    out.topRightCorner(n, n) = -im;
    out.bottomLeftCorner(n, n) = im;
    out.bottomRightCorner(n, n) = re;
    return out;
}

void require_hermitian(const ComplexMatrix& h)
{
    if (!h.square())
        throw dimension_error("eigenvalues: matrix is not square");
    if (!h.all_finite())
        throw numeric_error("eigenvalues: non-finite entry");
    const double tol = 1e-10 * std::max(1.0, frobenius(h));
    if (hermiticity_defect(h) > tol)
        throw numeric_error("eigenvalues: matrix is not Hermitian");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : re_(RealMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)))
    , im_(RealMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)))
{
}

ComplexMatrix::ComplexMatrix(RealMatrix re)
    : re_(std::move(re))
    , im_(RealMatrix::Zero(re_.rows(), re_.cols()))
{
}

ComplexMatrix::ComplexMatrix(RealMatrix re, RealMatrix im)
    : re_(std::move(re))
    , im_(std::move(im))
{
    require_same_shape(re_, im_, "ComplexMatrix");
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols)
{
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n)
{
    const auto k = static_cast<Eigen::Index>(n);
    return ComplexMatrix(RealMatrix::Identity(k, k));
}

ComplexMatrix ComplexMatrix::adjoint() const
{
    return ComplexMatrix(re_.transpose(), -im_.transpose());
}

ComplexMatrix ComplexMatrix::transpose() const
{
    return ComplexMatrix(re_.transpose(), im_.transpose());
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs)
{
    require_same_shape(re_, rhs.re_, "operator+");
    re_ += rhs.re_;
    im_ += rhs.im_;
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs)
{
    require_same_shape(re_, rhs.re_, "operator-");
    re_ -= rhs.re_;
    im_ -= rhs.im_;
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(double s)
{
    re_ *= s;
    im_ *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs)
{
    if (lhs.cols() != rhs.rows())
        throw dimension_error("operator*: inner dimension mismatch");
    return ComplexMatrix(lhs.re_ * rhs.re_ - lhs.im_ * rhs.im_,
                         lhs.re_ * rhs.im_ + lhs.im_ * rhs.re_);
}

RealVector vec(const RealMatrix& t)
{
    RealVector out(t.size());
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < t.cols(); ++j)
        for (Eigen::Index i = 0; i < t.rows(); ++i)
            out(k++) = t(i, j);
    return out;
}

RealMatrix unvec(const RealVector& v, std::size_t rows, std::size_t cols)
{
    if (static_cast<std::size_t>(v.size()) != rows * cols)
        throw dimension_error("unvec: length " + std::to_string(v.size()) + " is not "
                              + std::to_string(rows) + "x" + std::to_string(cols));
    RealMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < out.cols(); ++j)
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            out(i, j) = v(k++);
    return out;
}

RealMatrix realign(const RealMatrix& z, BipartiteDims dims)
{
    const auto m = static_cast<Eigen::Index>(dims.m);
    const auto n = static_cast<Eigen::Index>(dims.n);
    if (z.rows() != m * n || z.cols() != m * n)
        throw dimension_error("realign: matrix is not " + std::to_string(m * n) + "x"
                              + std::to_string(m * n));

    RealMatrix out(m * m, n * n);
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index i = 0; i < m; ++i)
            out.row(j * m + i) = vec(z.block(i * n, j * n, n, n)).transpose();
    return out;
}

ComplexMatrix realign(const ComplexMatrix& z, BipartiteDims dims)
{
    return ComplexMatrix(realign(z.re(), dims), realign(z.im(), dims));
}

RealMatrix unrealign(const RealMatrix& zt, BipartiteDims dims)
{
    const auto m = static_cast<Eigen::Index>(dims.m);
    const auto n = static_cast<Eigen::Index>(dims.n);
    if (zt.rows() != m * m || zt.cols() != n * n)
        throw dimension_error("unrealign: shape mismatch");

    RealMatrix out(m * n, m * n);
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index i = 0; i < m; ++i)
            out.block(i * n, j * n, n, n) = unvec(zt.row(j * m + i).transpose(), dims.n, dims.n);
    return out;
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b)
{
    RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    return ComplexMatrix(kron(a.re(), b.re()) - kron(a.im(), b.im()),
                         kron(a.re(), b.im()) + kron(a.im(), b.re()));
}

double frobenius(const RealMatrix& a)
{
    return a.norm();
}

double frobenius(const ComplexMatrix& a)
{
    return std::sqrt(a.re().squaredNorm() + a.im().squaredNorm());
}

double hermiticity_defect(const ComplexMatrix& h)
{
    if (!h.square())
        throw dimension_error("hermiticity_defect: matrix is not square");
    return frobenius(h - h.adjoint());
}

bool is_hermitian(const ComplexMatrix& h, double tol)
{
    return h.square() && hermiticity_defect(h) <= tol;
}

SvdResult svd_real(const RealMatrix& m, double rank_tol)
{
    if (!m.allFinite())
        throw numeric_error("svd_real: non-finite entry");
    if (rank_tol < 0.0)
        throw std::invalid_argument("svd_real: negative rank tolerance");

    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(m),
                                                Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdResult out;
    out.u = svd.matrixU();
    out.v = svd.matrixV();
    out.s = svd.singularValues();

    for (Eigen::Index k = 0; k < out.s.size(); ++k) {
        for (Eigen::Index i = 0; i < out.u.rows(); ++i) {
            const double x = out.u(i, k);
            if (std::abs(x) > rank_tol) {
                if (x < 0.0) {
                    out.u.col(k) *= -1.0;
                    out.v.col(k) *= -1.0;
                }
                break;
            }
        }
    }

    if (out.s.size() > 0 && out.s(0) > 0.0) {
        const double cut = rank_tol * out.s(0);
        for (Eigen::Index k = 0; k < out.s.size(); ++k)
            if (out.s(k) > cut)
                ++out.rank;
    }
    return out;
}

RealVector eigenvalues(const ComplexMatrix& h)
{
    require_hermitian(h);
    if (h.rows() == 0)
        return RealVector();

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        Eigen::MatrixXd(real_embedding(h)), Eigen::EigenvaluesOnly);
    const Eigen::VectorXd doubled = solver.eigenvalues();
    RealVector out(static_cast<Eigen::Index>(h.rows()));
    for (Eigen::Index k = 0; k < out.size(); ++k)
        out(k) = 0.5 * (doubled(2 * k) + doubled(2 * k + 1));
    return out;
}

EigExtremes eig_extremes(const ComplexMatrix& h)
{
    const RealVector ev = eigenvalues(h);
    if (ev.size() == 0)
        throw dimension_error("eig_extremes: empty matrix");
    return {ev(0), ev(ev.size() - 1)};
}

}  // namespace schmidt
