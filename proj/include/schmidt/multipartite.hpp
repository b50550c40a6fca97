#pragma once

// Hermitian tensor decomposition of l-partite matrices by recursive
// bipartition H_1 | H_2 ... H_l, and the identity coefficient q of the
// iterated shift protocol.

#include <cstddef>
#include <optional>
#include <vector>

#include "schmidt/dense.hpp"

namespace schmidt {

/// One product term: factors[k] acts on H_k.
using FactorTuple = std::vector<ComplexMatrix>;

struct MultiDecomposition {
    std::vector<std::size_t> dims;
    std::vector<FactorTuple> terms;
    /// Largest term count met at each recursion level (l - 1 entries).
    std::vector<std::size_t> level_ranks;
    /// False when a non-default recursion order was used.
    bool canonical = true;
    double residual = 0.0;
    std::optional<double> q_multi;
};

struct MultiOptions {
    double rank_tol = default_rank_tol;
    /// Recursion order as a permutation of subsystem indices; empty means
    /// 0, 1, ..., l-1.
    std::vector<std::size_t> order;
};

/// Throws dimension_error on a dims/size mismatch and numeric_error when A is
/// not Hermitian within 1e-10 * max(1, ||A||_F).
MultiDecomposition decompose_multi(const ComplexMatrix& a, const std::vector<std::size_t>& dims,
                                   const MultiOptions& options = {});

ComplexMatrix reconstruct_multi(const std::vector<FactorTuple>& terms,
                                const std::vector<std::size_t>& dims);

/// Reorders tensor factors: subsystem p of the result is subsystem order[p]
/// of the input.
ComplexMatrix permute_subsystems(const ComplexMatrix& a, const std::vector<std::size_t>& dims,
                                 const std::vector<std::size_t>& order);

/// Output of the iterated shift protocol: every factor has minimum
/// eigenvalue zero or is an explicit identity, and
///   A = sum_t (x)_k terms[t][k] + q I.
struct NormalizedMulti {
    std::vector<FactorTuple> terms;
    double q = 0.0;
};

NormalizedMulti normalize_multi(const std::vector<FactorTuple>& terms,
                                const std::vector<std::size_t>& dims);

/// For l = 2 this is q_value on the pairs.
double q_value_multi(const std::vector<FactorTuple>& terms, const std::vector<std::size_t>& dims);

}  // namespace schmidt
