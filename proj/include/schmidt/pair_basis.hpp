#pragma once

// Orthogonal bases separating antisymmetric and symmetric directions of
// vec(T) for m x m matrices T.
//
// Coordinates follow the column-stacking order of vec: entry (i, j) of T
// (0-based) sits at row j*m + i.  Antisymmetric columns are the pairs
// (i, j) with i > j, ordered j-major: (1,0), (2,0), ..., (m-1,0), (2,1), ...
// Symmetric columns are ordered j-major too, each diagonal e_jj first and
// then the pairs (i, j), i > j.  The ordering is a basis choice and never
// changes a decomposition, only internal coordinates.

#include <cstddef>

#include "schmidt/dense.hpp"

namespace schmidt {

constexpr std::size_t antisym_count(std::size_t m) { return m * (m - 1) / 2; }
constexpr std::size_t sym_count(std::size_t m) { return m * (m + 1) / 2; }

/// Unnormalized antisymmetric pair basis: m^2 x m(m-1)/2, one +1 and one -1 per column.
RealMatrix build_qs(std::size_t m);

/// Unnormalized symmetric pair basis: m^2 x m(m+1)/2.
RealMatrix build_qa(std::size_t m);

struct PairBasis {
    std::size_t dim = 0;
    RealMatrix qs;
    RealMatrix qa;
    RealMatrix qs_bar;
    RealMatrix qa_bar;

    static PairBasis build(std::size_t m);
};

/// [qs_bar | qa_bar], the orthogonal change of basis for real symmetric factors.
RealMatrix build_q1_sym(std::size_t m);

struct SplitBasis {
    RealMatrix x;  // qs_bar in the leading m(m-1)/2 columns
    RealMatrix y;  // qa_bar in the trailing m(m+1)/2 columns
};

SplitBasis build_xy(std::size_t m);

/// [[X, Y], [Y, X]]: orthogonal 2m^2 x 2m^2 transform for Hermitian factors.
RealMatrix build_q_herm(std::size_t m);

/// Diagonal of diag(I_s, -I_a): +1 on antisymmetric slots, -1 on symmetric ones.
RealVector signature(std::size_t m);

}  // namespace schmidt
