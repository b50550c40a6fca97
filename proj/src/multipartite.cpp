#include "schmidt/multipartite.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "schmidt/herm_decomp.hpp"
#include "schmidt/separability.hpp"

namespace schmidt {

namespace {

std::size_t product(const std::vector<std::size_t>& dims, std::size_t from = 0)
{
    return std::accumulate(dims.begin() + static_cast<std::ptrdiff_t>(from), dims.end(),
                           std::size_t{1}, std::multiplies<>());
}

ComplexMatrix shifted(const ComplexMatrix& x, double shift)
{
    ComplexMatrix out = x;
    out.re().diagonal().array() -= shift;
    return out;
}

// Terms for H_level (x) ... (x) H_{l-1}.
void decompose_level(const ComplexMatrix& a, const std::vector<std::size_t>& dims,
                     std::size_t level, double rank_tol, std::vector<std::size_t>& level_ranks,
                     std::vector<FactorTuple>& out)
{
    if (level + 1 == dims.size()) {
        out.push_back({a});
        return;
    }
    const BipartiteDims bip{dims[level], product(dims, level + 1)};
    const HermDecomposition herm = decompose_herm(a, bip, {rank_tol, std::nullopt});
    level_ranks[level] = std::max(level_ranks[level], herm.terms.size());

    for (const auto& term : herm.terms) {
        std::vector<FactorTuple> tails;
        decompose_level(term.c, dims, level + 1, rank_tol, level_ranks, tails);
        for (auto& tail : tails) {
            FactorTuple tuple;
            tuple.reserve(tail.size() + 1);
            tuple.push_back(term.b);
            std::move(tail.begin(), tail.end(), std::back_inserter(tuple));
            out.push_back(std::move(tuple));
        }
    }
}

void require_dims(const ComplexMatrix& a, const std::vector<std::size_t>& dims)
{
    if (dims.empty() || std::find(dims.begin(), dims.end(), 0) != dims.end())
        throw dimension_error("multipartite: dims must be non-empty and positive");
    if (!a.square() || a.rows() != product(dims))
        throw dimension_error("multipartite: matrix size does not match the product of dims");
}

bool is_permutation_of_indices(const std::vector<std::size_t>& order, std::size_t l)
{
    std::vector<std::size_t> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k)
        if (sorted[k] != k)
            return false;
    return sorted.size() == l;
}

}  // namespace

MultiDecomposition decompose_multi(const ComplexMatrix& a, const std::vector<std::size_t>& dims,
                                   const MultiOptions& options)
{
    require_dims(a, dims);
    if (dims.size() < 2)
        throw dimension_error("decompose_multi: need at least two subsystems");
    if (!a.all_finite())
        throw numeric_error("decompose_multi: non-finite entry");
    if (!is_hermitian(a, 1e-10 * std::max(1.0, frobenius(a))))
        throw numeric_error("decompose_multi: matrix is not Hermitian");

    const std::size_t l = dims.size();
    std::vector<std::size_t> order = options.order;
    if (order.empty()) {
        order.resize(l);
        std::iota(order.begin(), order.end(), std::size_t{0});
    }
    if (!is_permutation_of_indices(order, l))
        throw std::invalid_argument("decompose_multi: order is not a permutation of the subsystems");

    const bool identity_order = std::is_sorted(order.begin(), order.end());
    std::vector<std::size_t> work_dims(l);
    for (std::size_t p = 0; p < l; ++p)
        work_dims[p] = dims[order[p]];
    const ComplexMatrix work = identity_order ? a : permute_subsystems(a, dims, order);

    MultiDecomposition out;
    out.dims = dims;
    out.canonical = identity_order;
    out.level_ranks.assign(l - 1, 0);

    std::vector<FactorTuple> permuted;
    decompose_level(work, work_dims, 0, options.rank_tol, out.level_ranks, permuted);
    for (auto& tuple : permuted) {
        FactorTuple restored(l);
        for (std::size_t p = 0; p < l; ++p)
            restored[order[p]] = std::move(tuple[p]);
        out.terms.push_back(std::move(restored));
    }

    out.residual = frobenius(a - reconstruct_multi(out.terms, dims));
    return out;
}

ComplexMatrix reconstruct_multi(const std::vector<FactorTuple>& terms,
                                const std::vector<std::size_t>& dims)
{
    const std::size_t size = product(dims);
    ComplexMatrix out = ComplexMatrix::zero(size, size);
    for (const auto& tuple : terms) {
        if (tuple.size() != dims.size())
            throw dimension_error("reconstruct_multi: tuple length does not match dims");
        ComplexMatrix prod = ComplexMatrix::identity(1);
        for (std::size_t k = 0; k < tuple.size(); ++k) {
            if (tuple[k].rows() != dims[k] || !tuple[k].square())
                throw dimension_error("reconstruct_multi: factor shape does not match dims");
            prod = kron(prod, tuple[k]);
        }
        out += prod;
    }
    return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& a, const std::vector<std::size_t>& dims,
                                 const std::vector<std::size_t>& order)
{
    require_dims(a, dims);
    const std::size_t l = dims.size();
    if (!is_permutation_of_indices(order, l))
        throw std::invalid_argument("permute_subsystems: order is not a permutation");

    const std::size_t size = a.rows();
    std::vector<std::size_t> new_dims(l);
    for (std::size_t p = 0; p < l; ++p)
        new_dims[p] = dims[order[p]];

    // new flat index of every old flat index
    std::vector<Eigen::Index> target(size);
    std::vector<std::size_t> digits(l);
    for (std::size_t flat = 0; flat < size; ++flat) {
        std::size_t rest = flat;
        for (std::size_t k = l; k-- > 0;) {
            digits[k] = rest % dims[k];
            rest /= dims[k];
        }
        std::size_t idx = 0;
        for (std::size_t p = 0; p < l; ++p)
            idx = idx * new_dims[p] + digits[order[p]];
        target[flat] = static_cast<Eigen::Index>(idx);
    }

    ComplexMatrix out(size, size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) {
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            out.re()(target[i], target[j]) = a.re()(ii, jj);
            out.im()(target[i], target[j]) = a.im()(ii, jj);
        }
    return out;
}

NormalizedMulti normalize_multi(const std::vector<FactorTuple>& terms,
                                const std::vector<std::size_t>& dims)
{
    const std::size_t l = dims.size();
    if (l == 0)
        throw dimension_error("normalize_multi: dims must be non-empty");
    for (const auto& tuple : terms)
        if (tuple.size() != l)
            throw dimension_error("normalize_multi: tuple length does not match dims");

    NormalizedMulti out;

    if (l == 1) {
        ComplexMatrix sum = ComplexMatrix::zero(dims[0], dims[0]);
        for (const auto& tuple : terms)
            sum += tuple[0];
        out.q = min_eig(sum);
        out.terms.push_back({shifted(sum, out.q)});
        return out;
    }

    if (l == 2) {
        std::vector<HermTerm> pairs;
        pairs.reserve(terms.size());
        for (const auto& tuple : terms)
            pairs.push_back({tuple[0], tuple[1]});
        const BipartiteDims bip{dims[0], dims[1]};
        NormalizedDecomposition nd = normalize_decomposition(pairs, bip);
        for (auto& t : nd.terms)
            out.terms.push_back({std::move(t.b), std::move(t.c)});
        out.terms.push_back({std::move(nd.b_bar), ComplexMatrix::identity(dims[1])});
        out.terms.push_back({ComplexMatrix::identity(dims[0]), std::move(nd.c_bar)});
        out.q = nd.q;
        return out;
    }

    // Expand each product (x)_k (Bbar_k + m_k I) over subsets S of the factors
    // kept barred.  S = all gives the leading term, S = {} feeds q directly and
    // every other S is a lower-arity decomposition normalized recursively.
    std::vector<std::vector<double>> mins(terms.size(), std::vector<double>(l));
    std::vector<FactorTuple> bars(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t k = 0; k < l; ++k) {
            if (terms[i][k].rows() != dims[k])
                throw dimension_error("normalize_multi: factor shape does not match dims");
            mins[i][k] = min_eig(terms[i][k]);
            bars[i].push_back(shifted(terms[i][k], mins[i][k]));
        }
        double coeff = 1.0;
        for (std::size_t k = 0; k < l; ++k)
            coeff *= mins[i][k];
        out.q += coeff;
        out.terms.push_back(bars[i]);
    }

    const std::size_t full = (std::size_t{1} << l) - 1;
    for (std::size_t mask = 1; mask < full; ++mask) {
        std::vector<std::size_t> members;
        std::vector<std::size_t> sub_dims;
        for (std::size_t k = 0; k < l; ++k)
            if (mask & (std::size_t{1} << k)) {
                members.push_back(k);
                sub_dims.push_back(dims[k]);
            }

        std::vector<FactorTuple> sub_terms;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            double coeff = 1.0;
            for (std::size_t k = 0; k < l; ++k)
                if (!(mask & (std::size_t{1} << k)))
                    coeff *= mins[i][k];
            if (coeff == 0.0)
                continue;
            FactorTuple tuple;
            for (std::size_t k : members)
                tuple.push_back(bars[i][k]);
            tuple.front() *= coeff;
            sub_terms.push_back(std::move(tuple));
        }

        NormalizedMulti sub = normalize_multi(sub_terms, sub_dims);
        out.q += sub.q;
        for (auto& sub_tuple : sub.terms) {
            FactorTuple padded;
            std::size_t next = 0;
            for (std::size_t k = 0; k < l; ++k) {
                if (mask & (std::size_t{1} << k))
                    padded.push_back(std::move(sub_tuple[next++]));
                else
                    padded.push_back(ComplexMatrix::identity(dims[k]));
            }
            out.terms.push_back(std::move(padded));
        }
    }
    return out;
}

double q_value_multi(const std::vector<FactorTuple>& terms, const std::vector<std::size_t>& dims)
{
    if (dims.size() == 2) {
        std::vector<HermTerm> pairs;
        pairs.reserve(terms.size());
        for (const auto& tuple : terms) {
            if (tuple.size() != 2)
                throw dimension_error("q_value_multi: tuple length does not match dims");
            pairs.push_back({tuple[0], tuple[1]});
        }
        return q_value(pairs, {dims[0], dims[1]});
    }
    return normalize_multi(terms, dims).q;
}

}  // namespace schmidt
