#pragma once

// Best approximation of a real mn x mn matrix by sum_i B_i (x) C_i with
// real symmetric factors.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "schmidt/dense.hpp"

namespace schmidt {

/// Q1^t realign(A) Q2, partitioned at the antisymmetric/symmetric split.
struct SymBlocks {
    RealMatrix a11;  // m(m-1)/2 x n(n-1)/2
    RealMatrix a12;  // m(m-1)/2 x n(n+1)/2
    RealMatrix a21;  // m(m+1)/2 x n(n-1)/2
    RealMatrix a22;  // m(m+1)/2 x n(n+1)/2
};

SymBlocks transform_blocks_sym(const RealMatrix& a, BipartiteDims dims);

struct SymTerm {
    RealMatrix b;  // m x m symmetric, carries the singular value
    RealMatrix c;  // n x n symmetric
};

struct DecomposeOptions {
    double rank_tol = default_rank_tol;
    std::optional<std::size_t> max_terms;
};

struct SymDecomposition {
    BipartiteDims dims;
    std::vector<SymTerm> terms;
    RealVector singular_values;         // every singular value of the a22 block
    std::array<double, 3> block_norms;  // ||a11||, ||a12||, ||a21||
    double residual = 0.0;              // ||A - sum B_i (x) C_i||_F
};

SymDecomposition decompose_sym(const RealMatrix& a, BipartiteDims dims,
                               const DecomposeOptions& options = {});

RealMatrix reconstruct(const std::vector<SymTerm>& terms, BipartiteDims dims);

}  // namespace schmidt
