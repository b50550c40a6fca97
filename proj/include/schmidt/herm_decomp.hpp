#pragma once

// Decomposition of a complex mn x mn matrix into sum_i B_i (x) C_i with
// Hermitian factors.
//
// The complex problem is mapped to a real one through the embedding
//   A = a + i*A'  ->  [[realign(a), realign(A')], [-realign(A'), realign(a)]]
// and the orthogonal transforms [[X, Y], [Y, X]] of pair_basis.hpp.  For a
// Hermitian A the off-diagonal blocks vanish and the lower-right block alone
// determines an exact decomposition.

#include <array>
#include <cstddef>
#include <vector>

#include "schmidt/dense.hpp"
#include "schmidt/sym_decomp.hpp"

namespace schmidt {

struct HermBlocks {
    RealMatrix a11;  // each m^2 x n^2
    RealMatrix a12;
    RealMatrix a21;
    RealMatrix a22;
};

HermBlocks transform_blocks_herm(const ComplexMatrix& a, BipartiteDims dims);

/// ||a12||, ||a21|| and ||a11 - S_m a22 S_n|| with S the signature matrices.
/// All three vanish for Hermitian input.
struct Lemma2Residuals {
    double r12 = 0.0;
    double r21 = 0.0;
    double r_sig = 0.0;

    double max() const;
};

Lemma2Residuals lemma2_check(const HermBlocks& blocks, BipartiteDims dims);

struct HermTerm {
    ComplexMatrix b;  // m x m Hermitian, carries the singular value
    ComplexMatrix c;  // n x n Hermitian
};

struct HermDecomposition {
    BipartiteDims dims;
    std::vector<HermTerm> terms;
    RealVector singular_values;         // every singular value of the a22 block
    std::array<double, 4> block_norms;  // ||a11||, ||a12||, ||a21||, ||a22||
    Lemma2Residuals lemma2;
    bool approximate = false;           // input failed the Hermitian block test
    double residual = 0.0;              // ||A - sum B_i (x) C_i||_F
};

HermDecomposition decompose_herm(const ComplexMatrix& a, BipartiteDims dims,
                                 const DecomposeOptions& options = {});

ComplexMatrix reconstruct(const std::vector<HermTerm>& terms, BipartiteDims dims);

/// The coordinates (b_hat, c_check) a pair of Hermitian factors takes in the
/// transformed basis: Q1^t (vec re B; -vec im B) = (0; -b_hat) and
/// Q2^t (vec re C; vec im C) = (0; c_check).
struct FactorCoords {
    RealVector b_hat;
    RealVector b_check;
    RealVector c_hat;
    RealVector c_check;
};

FactorCoords factor_coords(const HermTerm& term, BipartiteDims dims);

/// Square of the transformed single-pair objective
///   ||a22 + b_hat c_check^t||^2 + ||a11 + b_check c_hat^t||^2 + ||a12||^2 + ||a21||^2,
/// which equals 2 ||A - B (x) C||_F^2 (the real embedding doubles norms).
double single_pair_objective(const HermBlocks& blocks, const FactorCoords& coords);

}  // namespace schmidt
