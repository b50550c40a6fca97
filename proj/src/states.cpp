#include "schmidt/states.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include "schmidt/rng.hpp"

namespace schmidt {

namespace {

// Unit complex Gaussian vector as (re, im) parts.
std::pair<RealVector, RealVector> random_unit_vector(std::size_t d, Rng& rng)
{
    RealVector re(static_cast<Eigen::Index>(d));
    RealVector im(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < re.size(); ++i) {
        re(i) = rng.normal();
        im(i) = rng.normal();
    }
    const double norm = std::sqrt(re.squaredNorm() + im.squaredNorm());
    return {re / norm, im / norm};
}

ComplexMatrix projector(const RealVector& re, const RealVector& im)
{
    // |psi><psi| = (re + i im)(re - i im)^t
    return ComplexMatrix(re * re.transpose() + im * im.transpose(),
                         im * re.transpose() - re * im.transpose());
}

double require_param(const StateSpec& spec, const std::string& name)
{
    const auto it = spec.params.find(name);
    if (it == spec.params.end())
        throw state_param_error(name, "missing parameter " + name + " for family "
                                          + to_string(spec.family));
    if (!std::isfinite(it->second))
        throw state_param_error(name, "parameter " + name + " is not finite");
    return it->second;
}

std::size_t require_count(const std::string& name, double value)
{
    if (value < 1.0 || value != std::floor(value) || value > 1e6)
        throw state_param_error(name, "parameter " + name + " must be a positive integer");
    return static_cast<std::size_t>(value);
}

void reject_unknown(const StateSpec& spec, const std::set<std::string>& allowed)
{
    for (const auto& [name, value] : spec.params)
        if (!allowed.contains(name))
            throw state_param_error(name, "unknown parameter " + name + " for family "
                                              + to_string(spec.family));
}

}  // namespace

ComplexMatrix werner(double f)
{
    const double diag = (1.0 - f) / 3.0;
    const double mid = (2.0 * f + 1.0) / 6.0;
    const double off = (1.0 - 4.0 * f) / 6.0;
    RealMatrix re = RealMatrix::Zero(4, 4);
    re(0, 0) = diag;
    re(1, 1) = mid;
    re(1, 2) = off;
    re(2, 1) = off;
    re(2, 2) = mid;
    re(3, 3) = diag;
    return ComplexMatrix(std::move(re));
}

ComplexMatrix horodecki_2x4(double b)
{
    if (!(b > 0.0 && b < 1.0))
        throw std::invalid_argument("horodecki_2x4: b must lie in (0, 1)");

    const double diag = (1.0 + b) / 2.0;
    const double corner = std::sqrt(1.0 - b * b) / 2.0;
    RealMatrix re = RealMatrix::Zero(8, 8);
    for (int i = 0; i < 4; ++i)
        re(i, i) = b;
    for (int i = 5; i < 8; ++i)
        re(i, i) = b;
    for (int i = 0; i < 3; ++i) {
        re(i, i + 5) = b;
        re(i + 5, i) = b;
    }
    re(4, 4) = diag;
    re(7, 7) = diag;
    re(4, 7) = corner;
    re(7, 4) = corner;
    return ComplexMatrix(re / (7.0 * b + 1.0));
}

ComplexMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed)
{
    if (d == 0 || rank == 0 || rank > d)
        throw std::invalid_argument("random_density: need 1 <= rank <= d");

    Rng rng(seed);
    RealMatrix gre(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rank));
    RealMatrix gim(gre.rows(), gre.cols());
    for (Eigen::Index i = 0; i < gre.rows(); ++i)
        for (Eigen::Index j = 0; j < gre.cols(); ++j) {
            gre(i, j) = rng.normal();
            gim(i, j) = rng.normal();
        }
    const ComplexMatrix g(gre, gim);
    ComplexMatrix rho = g * g.adjoint();
    // exact Hermiticity
    rho.re() = 0.5 * (rho.re() + rho.re().transpose()).eval();
    rho.im() = 0.5 * (rho.im() - rho.im().transpose()).eval();
    return rho * (1.0 / rho.re().trace());
}

ComplexMatrix random_pure_state(std::size_t d, std::uint64_t seed, std::uint64_t stream)
{
    if (d == 0)
        throw std::invalid_argument("random_pure_state: dimension must be positive");
    Rng rng(seed, stream);
    const auto [re, im] = random_unit_vector(d, rng);
    return projector(re, im);
}

SeparableMixture random_separable_mixture(std::size_t m, std::size_t n, std::size_t k,
                                          std::uint64_t seed)
{
    if (m == 0 || n == 0 || k == 0)
        throw std::invalid_argument("random_separable: m, n and k must be positive");

    Rng rng(seed);
    std::vector<double> weights(k);
    for (auto& w : weights)
        w = -std::log(rng.uniform_open0());
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);

    SeparableMixture out{ComplexMatrix::zero(m * n, m * n), {}};
    for (std::size_t i = 0; i < k; ++i) {
        const auto [are, aim] = random_unit_vector(m, rng);
        const auto [bre, bim] = random_unit_vector(n, rng);
        HermTerm term{projector(are, aim) * (weights[i] / total), projector(bre, bim)};
        out.state += kron(term.b, term.c);
        out.terms.push_back(std::move(term));
    }
    return out;
}

ComplexMatrix random_separable(std::size_t m, std::size_t n, std::size_t k, std::uint64_t seed)
{
    return random_separable_mixture(m, n, k, seed).state;
}

ComplexMatrix partial_transpose(const ComplexMatrix& a, BipartiteDims dims)
{
    const auto m = static_cast<Eigen::Index>(dims.m);
    const auto n = static_cast<Eigen::Index>(dims.n);
    if (a.rows() != dims.total() || a.cols() != dims.total())
        throw dimension_error("partial_transpose: matrix does not match dims");

    ComplexMatrix out(dims.total(), dims.total());
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
            out.re().block(i * n, j * n, n, n) = a.re().block(i * n, j * n, n, n).transpose();
            out.im().block(i * n, j * n, n, n) = a.im().block(i * n, j * n, n, n).transpose();
        }
    return out;
}

double partial_transpose_min_eig(const ComplexMatrix& a, BipartiteDims dims)
{
    return min_eig(partial_transpose(a, dims));
}

std::optional<StateFamily> parse_family(const std::string& name)
{
    if (name == "werner")
        return StateFamily::werner;
    if (name == "horodecki2x4")
        return StateFamily::horodecki2x4;
    if (name == "random_density")
        return StateFamily::random_density;
    if (name == "random_separable")
        return StateFamily::random_separable;
    return std::nullopt;
}

std::string to_string(StateFamily family)
{
    switch (family) {
    case StateFamily::werner: return "werner";
    case StateFamily::horodecki2x4: return "horodecki2x4";
    case StateFamily::random_density: return "random_density";
    case StateFamily::random_separable: return "random_separable";
    }
    return "unknown";
}

GeneratedState generate(const StateSpec& spec)
{
    const std::uint64_t seed = spec.seed.value_or(0);
    switch (spec.family) {
    case StateFamily::werner: {
        reject_unknown(spec, {"F"});
        return {{2, 2}, werner(require_param(spec, "F"))};
    }
    case StateFamily::horodecki2x4: {
        reject_unknown(spec, {"b"});
        const double b = require_param(spec, "b");
        if (!(b > 0.0 && b < 1.0))
            throw state_param_error("b", "parameter b must lie in (0, 1)");
        return {{2, 4}, horodecki_2x4(b)};
    }
    case StateFamily::random_density: {
        reject_unknown(spec, {"rank"});
        if (spec.dims.empty())
            throw state_param_error("dims", "family random_density needs --dims");
        std::size_t d = 1;
        for (auto x : spec.dims) {
            if (x == 0)
                throw state_param_error("dims", "dims must be positive");
            d *= x;
        }
        std::size_t rank = d;
        if (spec.params.contains("rank"))
            rank = require_count("rank", require_param(spec, "rank"));
        if (rank > d)
            throw state_param_error("rank", "parameter rank exceeds the dimension");
        return {spec.dims, random_density(d, rank, seed)};
    }
    case StateFamily::random_separable: {
        reject_unknown(spec, {"k"});
        if (spec.dims.size() != 2 || spec.dims[0] == 0 || spec.dims[1] == 0)
            throw state_param_error("dims", "family random_separable needs --dims m,n");
        const std::size_t k = require_count("k", require_param(spec, "k"));
        return {spec.dims, random_separable(spec.dims[0], spec.dims[1], k, seed)};
    }
    }
    throw state_param_error("family", "unknown family");
}

}  // namespace schmidt
