#include "schmidt/herm_decomp.hpp"

#include <algorithm>
#include <cmath>

#include "schmidt/pair_basis.hpp"

namespace schmidt {

namespace {

RealVector stack(const RealVector& top, const RealVector& bottom)
{
    RealVector out(top.size() + bottom.size());
    out << top, bottom;
    return out;
}

RealMatrix symmetric_part(const RealMatrix& x)
{
    return 0.5 * (x + x.transpose());
}

RealMatrix antisymmetric_part(const RealMatrix& x)
{
    return 0.5 * (x - x.transpose());
}

}  // namespace

double Lemma2Residuals::max() const
{
    return std::max({r12, r21, r_sig});
}

HermBlocks transform_blocks_herm(const ComplexMatrix& a, BipartiteDims dims)
{
    const RealMatrix re = realign(a.re(), dims);
    const RealMatrix im = realign(a.im(), dims);
    const auto p = re.rows();
    const auto q = re.cols();

    RealMatrix embedded(2 * p, 2 * q);
    embedded.topLeftCorner(p, q) = re;
    embedded.topRightCorner(p, q) = im;
    embedded.bottomLeftCorner(p, q) = -im;
    embedded.bottomRightCorner(p, q) = re;

    const RealMatrix hat = build_q_herm(dims.m).transpose() * embedded * build_q_herm(dims.n);
    return {hat.topLeftCorner(p, q), hat.topRightCorner(p, q),
            hat.bottomLeftCorner(p, q), hat.bottomRightCorner(p, q)};
}

Lemma2Residuals lemma2_check(const HermBlocks& blocks, BipartiteDims dims)
{
    const RealVector sm = signature(dims.m);
    const RealVector sn = signature(dims.n);
    const RealMatrix mirrored = sm.asDiagonal() * blocks.a22 * sn.asDiagonal();
    return {blocks.a12.norm(), blocks.a21.norm(), (blocks.a11 - mirrored).norm()};
}

HermDecomposition decompose_herm(const ComplexMatrix& a, BipartiteDims dims,
                                 const DecomposeOptions& options)
{
    if (!a.all_finite())
        throw numeric_error("decompose_herm: non-finite entry");

    const HermBlocks blocks = transform_blocks_herm(a, dims);
    const SvdResult svd = svd_real(blocks.a22, options.rank_tol);

    std::size_t r = svd.rank;
    if (options.max_terms)
        r = std::min(r, *options.max_terms);

    const SplitBasis xy1 = build_xy(dims.m);
    const SplitBasis xy2 = build_xy(dims.n);

    HermDecomposition out;
    out.dims = dims;
    out.singular_values = svd.s;
    out.block_norms = {blocks.a11.norm(), blocks.a12.norm(), blocks.a21.norm(),
                       blocks.a22.norm()};
    out.lemma2 = lemma2_check(blocks, dims);
    out.approximate = out.lemma2.max() > 1e-10 * std::max(frobenius(a), 1e-300);

    for (std::size_t i = 0; i < r; ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        const RealVector b_hat = svd.s(k) * svd.u.col(k);
        const RealVector c_check = -svd.v.col(k);

        // (vec re B; -vec im B) = Q1 (0; -b_hat),  (vec re C; vec im C) = Q2 (0; c_check)
        const RealMatrix b_re = unvec(-xy1.y * b_hat, dims.m, dims.m);
        const RealMatrix b_im = unvec(xy1.x * b_hat, dims.m, dims.m);
        const RealMatrix c_re = unvec(xy2.y * c_check, dims.n, dims.n);
        const RealMatrix c_im = unvec(xy2.x * c_check, dims.n, dims.n);

        out.terms.push_back({ComplexMatrix(symmetric_part(b_re), antisymmetric_part(b_im)),
                             ComplexMatrix(symmetric_part(c_re), antisymmetric_part(c_im))});
    }

    out.residual = frobenius(a - reconstruct(out.terms, dims));
    return out;
}

ComplexMatrix reconstruct(const std::vector<HermTerm>& terms, BipartiteDims dims)
{
    ComplexMatrix out = ComplexMatrix::zero(dims.total(), dims.total());
    for (const auto& t : terms) {
        if (t.b.rows() != dims.m || t.c.rows() != dims.n)
            throw dimension_error("reconstruct: factor shape does not match dims");
        out += kron(t.b, t.c);
    }
    return out;
}

FactorCoords factor_coords(const HermTerm& term, BipartiteDims dims)
{
    const RealMatrix q1 = build_q_herm(dims.m);
    const RealMatrix q2 = build_q_herm(dims.n);
    const auto m2 = static_cast<Eigen::Index>(dims.m * dims.m);
    const auto n2 = static_cast<Eigen::Index>(dims.n * dims.n);

    const RealVector vb = vec(term.b.re());
    const RealVector vbi = vec(term.b.im());
    const RealVector vc = vec(term.c.re());
    const RealVector vci = vec(term.c.im());

    FactorCoords out;
    out.b_hat = -(q1.transpose() * stack(vb, -vbi)).tail(m2);
    out.b_check = (q1.transpose() * stack(vb, vbi)).tail(m2);
    out.c_hat = -(q2.transpose() * stack(vc, -vci)).tail(n2);
    out.c_check = (q2.transpose() * stack(vc, vci)).tail(n2);
    return out;
}

double single_pair_objective(const HermBlocks& blocks, const FactorCoords& coords)
{
    const RealMatrix lower = blocks.a22 + coords.b_hat * coords.c_check.transpose();
    const RealMatrix upper = blocks.a11 + coords.b_check * coords.c_hat.transpose();
    return lower.squaredNorm() + upper.squaredNorm() + blocks.a12.squaredNorm()
           + blocks.a21.squaredNorm();
}

}  // namespace schmidt
