#include "schmidt/sym_decomp.hpp"

#include <algorithm>
#include <cmath>

#include "schmidt/pair_basis.hpp"

namespace schmidt {

SymBlocks transform_blocks_sym(const RealMatrix& a, BipartiteDims dims)
{
    const RealMatrix q1 = build_q1_sym(dims.m);
    const RealMatrix q2 = build_q1_sym(dims.n);
    const RealMatrix hat = q1.transpose() * realign(a, dims) * q2;

    const auto rs = static_cast<Eigen::Index>(antisym_count(dims.m));
    const auto ra = static_cast<Eigen::Index>(sym_count(dims.m));
    const auto cs = static_cast<Eigen::Index>(antisym_count(dims.n));
    const auto ca = static_cast<Eigen::Index>(sym_count(dims.n));
    return {hat.topLeftCorner(rs, cs), hat.topRightCorner(rs, ca),
            hat.bottomLeftCorner(ra, cs), hat.bottomRightCorner(ra, ca)};
}

SymDecomposition decompose_sym(const RealMatrix& a, BipartiteDims dims,
                               const DecomposeOptions& options)
{
    if (!a.allFinite())
        throw numeric_error("decompose_sym: non-finite entry");

    const SymBlocks blocks = transform_blocks_sym(a, dims);
    const SvdResult svd = svd_real(blocks.a22, options.rank_tol);

    std::size_t r = svd.rank;
    if (options.max_terms)
        r = std::min(r, *options.max_terms);

    const RealMatrix q1 = build_q1_sym(dims.m);
    const RealMatrix q2 = build_q1_sym(dims.n);
    const auto sa_m = static_cast<Eigen::Index>(sym_count(dims.m));
    const auto sa_n = static_cast<Eigen::Index>(sym_count(dims.n));

    SymDecomposition out;
    out.dims = dims;
    out.singular_values = svd.s;
    out.block_norms = {blocks.a11.norm(), blocks.a12.norm(), blocks.a21.norm()};

    for (std::size_t i = 0; i < r; ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        // vec(B) = Q1 (0; sqrt(lambda) u), vec(C) = Q2 (0; v)
        const RealVector vb = q1.rightCols(sa_m) * (svd.s(k) * svd.u.col(k));
        const RealVector vc = q2.rightCols(sa_n) * svd.v.col(k);
        RealMatrix b = unvec(vb, dims.m, dims.m);
        RealMatrix c = unvec(vc, dims.n, dims.n);
        b = 0.5 * (b + b.transpose()).eval();
        c = 0.5 * (c + c.transpose()).eval();
        out.terms.push_back({std::move(b), std::move(c)});
    }

    double res2 = 0.0;
    for (double x : out.block_norms)
        res2 += x * x;
    for (Eigen::Index k = static_cast<Eigen::Index>(r); k < svd.s.size(); ++k)
        res2 += svd.s(k) * svd.s(k);
    out.residual = std::sqrt(res2);
    return out;
}

RealMatrix reconstruct(const std::vector<SymTerm>& terms, BipartiteDims dims)
{
    const auto size = static_cast<Eigen::Index>(dims.total());
    RealMatrix out = RealMatrix::Zero(size, size);
    for (const auto& t : terms) {
        if (static_cast<std::size_t>(t.b.rows()) != dims.m
            || static_cast<std::size_t>(t.c.rows()) != dims.n)
            throw dimension_error("reconstruct: factor shape does not match dims");
        out += kron(t.b, t.c);
    }
    return out;
}

}  // namespace schmidt
