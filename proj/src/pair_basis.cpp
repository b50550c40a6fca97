#include "schmidt/pair_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace schmidt {

namespace {

Eigen::Index slot(std::size_t i, std::size_t j, std::size_t m)
{
    return static_cast<Eigen::Index>(j * m + i);
}

RealMatrix normalize_columns(RealMatrix q)
{
    for (Eigen::Index c = 0; c < q.cols(); ++c)
        q.col(c) /= q.col(c).norm();
    return q;
}

void require_positive(std::size_t m)
{
    if (m == 0)
        throw dimension_error("pair basis: dimension must be positive");
}

}  // namespace

RealMatrix build_qs(std::size_t m)
{
    require_positive(m);
    RealMatrix q = RealMatrix::Zero(static_cast<Eigen::Index>(m * m),
                                    static_cast<Eigen::Index>(antisym_count(m)));
    Eigen::Index col = 0;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = j + 1; i < m; ++i) {
            q(slot(i, j, m), col) = 1.0;
            q(slot(j, i, m), col) = -1.0;
            ++col;
        }
    return q;
}

RealMatrix build_qa(std::size_t m)
{
    require_positive(m);
    RealMatrix q = RealMatrix::Zero(static_cast<Eigen::Index>(m * m),
                                    static_cast<Eigen::Index>(sym_count(m)));
    Eigen::Index col = 0;
    for (std::size_t j = 0; j < m; ++j) {
        q(slot(j, j, m), col++) = 1.0;
        for (std::size_t i = j + 1; i < m; ++i) {
            q(slot(i, j, m), col) = 1.0;
            q(slot(j, i, m), col) = 1.0;
            ++col;
        }
    }
    return q;
}

PairBasis PairBasis::build(std::size_t m)
{
    PairBasis out;
    out.dim = m;
    out.qs = build_qs(m);
    out.qa = build_qa(m);
    out.qs_bar = normalize_columns(out.qs);
    out.qa_bar = normalize_columns(out.qa);
    return out;
}

RealMatrix build_q1_sym(std::size_t m)
{
    const PairBasis basis = PairBasis::build(m);
    RealMatrix q(static_cast<Eigen::Index>(m * m), static_cast<Eigen::Index>(m * m));
    q.leftCols(basis.qs_bar.cols()) = basis.qs_bar;
    q.rightCols(basis.qa_bar.cols()) = basis.qa_bar;
    return q;
}

SplitBasis build_xy(std::size_t m)
{
    const PairBasis basis = PairBasis::build(m);
    const auto n2 = static_cast<Eigen::Index>(m * m);
    const auto s = static_cast<Eigen::Index>(antisym_count(m));
    const auto a = static_cast<Eigen::Index>(sym_count(m));

    SplitBasis out{RealMatrix::Zero(n2, n2), RealMatrix::Zero(n2, n2)};
    out.x.leftCols(s) = basis.qs_bar;
    out.y.rightCols(a) = basis.qa_bar;
    return out;
}

RealMatrix build_q_herm(std::size_t m)
{
    const SplitBasis xy = build_xy(m);
    const auto n2 = static_cast<Eigen::Index>(m * m);
    RealMatrix q(2 * n2, 2 * n2);
    q.topLeftCorner(n2, n2) = xy.x;
    q.topRightCorner(n2, n2) = xy.y;
    q.bottomLeftCorner(n2, n2) = xy.y;
    q.bottomRightCorner(n2, n2) = xy.x;
    return q;
}

RealVector signature(std::size_t m)
{
    require_positive(m);
    RealVector d(static_cast<Eigen::Index>(m * m));
    const auto s = static_cast<Eigen::Index>(antisym_count(m));
    d.head(s).setOnes();
    d.tail(d.size() - s).setConstant(-1.0);
    return d;
}

}  // namespace schmidt
