#pragma once

// Test-only generators and reference implementations.  Nothing here calls
// into Eigen's decompositions, so the oracles stay independent of the
// library's SVD and eigensolver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "schmidt/dense.hpp"

namespace testing_support {

using schmidt::BipartiteDims;
using schmidt::ComplexMatrix;
using schmidt::RealMatrix;
using schmidt::RealVector;

class Gen {
public:
    explicit Gen(std::uint64_t seed)
        : engine_(seed)
    {
    }

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<>(lo, hi)(engine_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }

    RealMatrix real(std::size_t r, std::size_t c)
    {
        RealMatrix out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            for (Eigen::Index j = 0; j < out.cols(); ++j)
                out(i, j) = normal();
        return out;
    }

    RealMatrix symmetric(std::size_t n)
    {
        RealMatrix g = real(n, n);
        return (g + g.transpose()) * 0.5;
    }

    ComplexMatrix complex(std::size_t r, std::size_t c) { return ComplexMatrix(real(r, c), real(r, c)); }

    ComplexMatrix hermitian(std::size_t n)
    {
        RealMatrix re = real(n, n);
        RealMatrix im = real(n, n);
        return ComplexMatrix(RealMatrix((re + re.transpose()) * 0.5),
                             RealMatrix((im - im.transpose()) * 0.5));
    }

    // Hermitian with a guaranteed non-Hermitian part of comparable size.
    ComplexMatrix non_hermitian(std::size_t n)
    {
        ComplexMatrix h = hermitian(n);
        RealMatrix k = real(n, n);
        h.re() += (k - k.transpose()) * 0.5;
        return h;
    }

    ComplexMatrix density(std::size_t n)
    {
        ComplexMatrix g = complex(n, n);
        ComplexMatrix rho = g * g.adjoint();
        rho.re() = RealMatrix((rho.re() + rho.re().transpose()) * 0.5);
        rho.im() = RealMatrix((rho.im() - rho.im().transpose()) * 0.5);
        return rho * (1.0 / rho.re().trace());
    }

    ComplexMatrix pure(std::size_t n)
    {
        RealMatrix re = real(n, 1);
        RealMatrix im = real(n, 1);
        const double norm = std::sqrt(re.squaredNorm() + im.squaredNorm());
        re /= norm;
        im /= norm;
        return ComplexMatrix(RealMatrix(re * re.transpose() + im * im.transpose()),
                             RealMatrix(im * re.transpose() - re * im.transpose()));
    }

    BipartiteDims dims_from(const std::vector<BipartiteDims>& pool) { return pool[index(pool.size())]; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

// Cyclic Jacobi eigenvalues of a real symmetric matrix, ascending.
inline std::vector<double> jacobi_eigenvalues(RealMatrix a)
{
    const Eigen::Index n = a.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q)
                off += a(p, q) * a(p, q);
        if (off < 1e-30 * std::max(1.0, a.squaredNorm()))
            break;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0)
                    continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0)
                                 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(out.begin(), out.end());
    return out;
}

inline RealMatrix real_embedding(const ComplexMatrix& h)
{
    const auto n = static_cast<Eigen::Index>(h.rows());
    const auto c = static_cast<Eigen::Index>(h.cols());
    RealMatrix out(2 * n, 2 * c);
    out.topLeftCorner(n, c) = h.re();
    out.topRightCorner(n, c) = -h.im();
    out.bottomLeftCorner(n, c) = h.im();
    out.bottomRightCorner(n, c) = h.re();
    return out;
}

// Eigenvalues of a Hermitian matrix, ascending (each appears twice in the embedding).
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h)
{
    const auto all = jacobi_eigenvalues(real_embedding(h));
    std::vector<double> out;
    for (std::size_t i = 0; i < all.size(); i += 2)
        out.push_back(0.5 * (all[i] + all[i + 1]));
    return out;
}

// Singular values, descending, by one-sided (Hestenes) Jacobi.
inline std::vector<double> singular_values(const RealMatrix& m)
{
    RealMatrix a = m.rows() >= m.cols() ? m : RealMatrix(m.transpose());
    const Eigen::Index n = a.cols();
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double alpha = a.col(p).squaredNorm();
                const double beta = a.col(q).squaredNorm();
                const double gamma = a.col(p).dot(a.col(q));
                if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || gamma == 0.0)
                    continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0 ? 1.0 : -1.0)
                                 / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                const RealVector ap = a.col(p);
                a.col(p) = c * ap - s * a.col(q);
                a.col(q) = s * ap + c * a.col(q);
            }
        if (!rotated)
            break;
    }
    std::vector<double> out;
    for (Eigen::Index i = 0; i < n; ++i)
        out.push_back(a.col(i).norm());
    std::sort(out.rbegin(), out.rend());
    return out;
}

inline std::vector<double> complex_singular_values(const ComplexMatrix& m)
{
    const auto all = singular_values(real_embedding(m));
    std::vector<double> out;
    for (std::size_t i = 0; i < all.size(); i += 2)
        out.push_back(0.5 * (all[i] + all[i + 1]));
    return out;
}

// Entry-wise realignment: (i + j*m, k + l*n) <- Z(i*n + k, j*n + l).
inline RealMatrix realign_by_index(const RealMatrix& z, BipartiteDims d)
{
    const auto m = static_cast<Eigen::Index>(d.m);
    const auto n = static_cast<Eigen::Index>(d.n);
    RealMatrix out(m * m, n * n);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                for (Eigen::Index l = 0; l < n; ++l)
                    out(i + j * m, k + l * n) = z(i * n + k, j * n + l);
    return out;
}

inline RealMatrix kron_by_index(const RealMatrix& a, const RealMatrix& b)
{
    RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            for (Eigen::Index k = 0; k < b.rows(); ++k)
                for (Eigen::Index l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

inline ComplexMatrix kron_by_index(const ComplexMatrix& a, const ComplexMatrix& b)
{
    return ComplexMatrix(RealMatrix(kron_by_index(a.re(), b.re()) - kron_by_index(a.im(), b.im())),
                         RealMatrix(kron_by_index(a.re(), b.im()) + kron_by_index(a.im(), b.re())));
}

// Transpose of the first tensor factor only.
inline RealMatrix transpose_first(const RealMatrix& z, BipartiteDims d)
{
    const auto m = static_cast<Eigen::Index>(d.m);
    const auto n = static_cast<Eigen::Index>(d.n);
    RealMatrix out(z.rows(), z.cols());
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            out.block(i * n, j * n, n, n) = z.block(j * n, i * n, n, n);
    return out;
}

inline RealMatrix transpose_second(const RealMatrix& z, BipartiteDims d)
{
    const auto m = static_cast<Eigen::Index>(d.m);
    const auto n = static_cast<Eigen::Index>(d.n);
    RealMatrix out(z.rows(), z.cols());
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            out.block(i * n, j * n, n, n) = z.block(i * n, j * n, n, n).transpose();
    return out;
}

// Orthogonal projection onto span{B (x) C : B, C symmetric}.
inline RealMatrix project_sym_sym(const RealMatrix& a, BipartiteDims d)
{
    return 0.25 * (a + transpose_first(a, d) + transpose_second(a, d) + RealMatrix(a.transpose()));
}

// Best residual with at most r real symmetric terms: projection defect plus
// the Eckart-Young tail of the projected part.
inline double sym_residual_oracle(const RealMatrix& a, BipartiteDims d, std::size_t r)
{
    const RealMatrix p = project_sym_sym(a, d);
    double sq = (a - p).squaredNorm();
    const auto sv = singular_values(realign_by_index(p, d));
    for (std::size_t i = r; i < sv.size(); ++i)
        sq += sv[i] * sv[i];
    return std::sqrt(sq);
}

inline double hermiticity_gap(const ComplexMatrix& h)
{
    return (h.re() - h.re().transpose()).norm() + (h.im() + h.im().transpose()).norm();
}

}  // namespace testing_support
