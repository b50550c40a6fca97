#pragma once

// Separability analysis of a Hermitian decomposition A = sum_i B_i (x) C_i.
//
// Shifting every factor to minimum eigenvalue zero rewrites the
// decomposition as
//   A = sum_i Bbar_i (x) Cbar_i + bbar (x) I + I (x) cbar + q I (x) I
// with every barred matrix positive semidefinite.  q >= 0 is a separable
// witness; the supremum of q over all Hermitian decompositions decides
// separability.  That supremum is not computable here, so the search over
// the term-mixing gauge E F^t = I only ever yields certified lower bounds.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schmidt/dense.hpp"
#include "schmidt/herm_decomp.hpp"

namespace schmidt {

struct NormalizedDecomposition {
    std::vector<HermTerm> terms;  // (Bbar_i, Cbar_i), each with minimum eigenvalue 0
    ComplexMatrix b_bar;          // m x m, minimum eigenvalue 0
    ComplexMatrix c_bar;          // n x n, minimum eigenvalue 0
    double q = 0.0;
};

/// Throws numeric_error when a factor is not Hermitian.
NormalizedDecomposition normalize_decomposition(const std::vector<HermTerm>& terms,
                                                BipartiteDims dims);

/// sum Bbar_i (x) Cbar_i + bbar (x) I + I (x) cbar + q I.
ComplexMatrix resum(const NormalizedDecomposition& nd, BipartiteDims dims);

/// q = m(sum m(C_i) B_i) + m(sum m(B_i) C_i) - sum m(B_i) m(C_i).
double q_value(const std::vector<HermTerm>& terms, BipartiteDims dims);

struct Bounds {
    double upper = 0.0;    // m(A)
    double lower_b = 0.0;  // 1/2 sum [M(B)m(C) + M(C)m(B) - |m(B)|(M(C)-m(C)) - |m(C)|(M(B)-m(B))]
    double lower_c = 0.0;  // m(A) - sum M(Bbar_i) M(Cbar_i)
};

Bounds bounds(const ComplexMatrix& a, const std::vector<HermTerm>& terms,
              const NormalizedDecomposition& normalized);

/// B'_j = sum_i E_ij B_i, C'_j = sum_i F_ij C_i with F = E^{-t}.
/// Throws std::invalid_argument when E is not square of size r or its
/// condition number reaches 1e8.
std::vector<HermTerm> gauge_transform(const std::vector<HermTerm>& terms, const RealMatrix& e);

inline constexpr double max_gauge_condition = 1e8;

struct SearchConfig {
    std::size_t restarts = 64;
    std::size_t iters = 200;
    std::uint64_t seed = 0;
    double step = 0.2;
    /// Worker threads; 0 reads SCHMIDT_HERM_THREADS, falling back to all cores.
    std::size_t threads = 0;
};

struct SearchResult {
    double q_initial = 0.0;
    double q_best = 0.0;
    std::size_t best_restart = 0;
    RealMatrix best_gauge;
    std::vector<HermTerm> best_terms;
};

/// Random-restart local search over the gauge orbit of `terms`.
/// Restart k draws from stream k of `seed`; the merged result is the largest
/// q with ties going to the lowest restart index.
SearchResult search_indicator(const std::vector<HermTerm>& terms, BipartiteDims dims,
                              const SearchConfig& cfg = {});

enum class Verdict { separable, entangled_flagged, undecided };

std::string to_string(Verdict v);

struct ClassifyInputs {
    double q_best = 0.0;
    double min_eig = 0.0;  // m(A)
    double lower_b = 0.0;
    double tol = 0.0;
};

/// separable when q_best >= -tol; entangled_flagged when m(A) <= tol and
/// lower_b > tol (the flag carries a caveat, see SeparabilityReport);
/// undecided otherwise.
Verdict classify(const ClassifyInputs& in);

struct SeparabilityReport {
    double q = 0.0;
    double q_best = 0.0;
    double upper = 0.0;
    double lower_b = 0.0;
    double lower_c = 0.0;
    double tol = 0.0;
    Verdict verdict = Verdict::undecided;
    /// Set with entangled_flagged: per decomposition lower_b <= q <= m(A), so
    /// the flag's premises cannot both hold for a consistent decomposition.
    bool entangled_caveat = false;
    std::size_t term_count = 0;
    std::size_t best_restart = 0;
    std::optional<NormalizedDecomposition> witness;
};

class not_a_state_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct AnalyzeOptions {
    SearchConfig search;
    std::optional<double> tol;  // default 1e-9 * ||A||_F
    double rank_tol = default_rank_tol;
};

/// Full pipeline.  Uses `terms` when given (they must re-sum to A within
/// 1e-9 * max(1, ||A||_F)), otherwise the Hermitian decomposition of A.
/// Throws not_a_state_error when A is not Hermitian positive semidefinite.
SeparabilityReport analyze(const ComplexMatrix& a, BipartiteDims dims,
                           const std::optional<std::vector<HermTerm>>& terms = std::nullopt,
                           const AnalyzeOptions& options = {});

std::size_t resolve_thread_count(std::size_t requested);

}  // namespace schmidt
