#pragma once

// Benchmark states and seeded random states.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schmidt/dense.hpp"
#include "schmidt/herm_decomp.hpp"

namespace schmidt {

/// Two-qubit Werner state (1-F)/3 I + (4F-1)/3 |psi-><psi-|.  Any real F is
/// accepted; the matrix is positive semidefinite exactly for 0 <= F <= 1.
ComplexMatrix werner(double f);

/// 2 x 4 Horodecki state, PPT yet entangled.  Requires 0 < b < 1.
ComplexMatrix horodecki_2x4(double b);

/// G G^dagger / tr with G a d x rank standard complex Gaussian matrix.
ComplexMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed);

/// Projector onto a standard complex Gaussian unit vector.
ComplexMatrix random_pure_state(std::size_t d, std::uint64_t seed, std::uint64_t stream = 0);

struct SeparableMixture {
    ComplexMatrix state;
    std::vector<HermTerm> terms;  // (p_i * rho1_i, rho2_i), all positive semidefinite
};

/// Convex mixture of k random pure product states with Dirichlet(1, ..., 1)
/// weights.  The returned terms are the mixture itself.
SeparableMixture random_separable_mixture(std::size_t m, std::size_t n, std::size_t k,
                                          std::uint64_t seed);

ComplexMatrix random_separable(std::size_t m, std::size_t n, std::size_t k, std::uint64_t seed);

/// Transpose over the second factor: (A^T2)[(i,k),(j,l)] = A[(i,l),(j,k)].
ComplexMatrix partial_transpose(const ComplexMatrix& a, BipartiteDims dims);

double partial_transpose_min_eig(const ComplexMatrix& a, BipartiteDims dims);

enum class StateFamily { werner, horodecki2x4, random_density, random_separable };

std::optional<StateFamily> parse_family(const std::string& name);
std::string to_string(StateFamily family);

struct StateSpec {
    StateFamily family = StateFamily::werner;
    std::map<std::string, double> params;
    std::vector<std::size_t> dims;  // subsystem dims, for the random families
    std::optional<std::uint64_t> seed;
};

struct GeneratedState {
    std::vector<std::size_t> dims;
    ComplexMatrix matrix;
};

/// Thrown on incomplete or out-of-range parameters; names the offending one.
class state_param_error : public std::invalid_argument {
public:
    state_param_error(std::string param, const std::string& what)
        : std::invalid_argument(what)
        , param_(std::move(param))
    {
    }

    const std::string& param() const { return param_; }

private:
    std::string param_;
};

GeneratedState generate(const StateSpec& spec);

}  // namespace schmidt
