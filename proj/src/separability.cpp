#include "schmidt/separability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "schmidt/rng.hpp"

namespace schmidt {

namespace {

ComplexMatrix shifted(const ComplexMatrix& x, double shift)
{
    ComplexMatrix out = x;
    out.re().diagonal().array() -= shift;
    return out;
}

double condition_number(const RealMatrix& e)
{
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
    const auto& s = svd.singularValues();
    if (s.size() == 0)
        return 1.0;
    const double smin = s(s.size() - 1);
    if (!(smin > 0.0))
        return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

RealMatrix random_normal(Eigen::Index r, Rng& rng)
{
    RealMatrix g(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < r; ++j)
            g(i, j) = rng.normal();
    return g;
}

struct RestartOutcome {
    double q = -std::numeric_limits<double>::infinity();
    RealMatrix gauge;
};

class GaugeWalk {
public:
    GaugeWalk(const std::vector<HermTerm>& terms, BipartiteDims dims)
        : terms_(terms)
        , dims_(dims)
    {
    }

    std::optional<double> evaluate(const RealMatrix& e) const
    {
        if (condition_number(e) >= max_gauge_condition)
            return std::nullopt;
        return q_value(gauge_transform(terms_, e), dims_);
    }

    RestartOutcome run(std::size_t restart, const SearchConfig& cfg) const
    {
        const auto r = static_cast<Eigen::Index>(terms_.size());
        Rng rng(cfg.seed, restart);

        RestartOutcome best;
        best.gauge = RealMatrix::Identity(r, r);
        best.q = q_value(terms_, dims_);

        if (restart > 0) {
            // random start: signed near-identity E
            for (int attempt = 0; attempt < 16; ++attempt) {
                RealMatrix e = RealMatrix::Identity(r, r) + 0.5 * random_normal(r, rng);
                for (Eigen::Index j = 0; j < r; ++j)
                    if (rng.uniform() < 0.5)
                        e.col(j) *= -1.0;
                if (const auto q = evaluate(e)) {
                    best = {*q, std::move(e)};
                    break;
                }
            }
        }

        // Flipping the sign of a whole term pair keeps the sum but moves q.
        for (Eigen::Index j = 0; j < r; ++j) {
            RealMatrix e = best.gauge;
            e.col(j) *= -1.0;
            if (const auto q = evaluate(e); q && *q > best.q)
                best = {*q, std::move(e)};
        }

        double step = cfg.step;
        int streak = 0;
        for (std::size_t it = 0; it < cfg.iters && step > 1e-12; ++it) {
            const RealMatrix g = random_normal(r, rng);
            RealMatrix e = best.gauge * (RealMatrix::Identity(r, r) + step * g);
            const auto q = evaluate(e);
            if (q && *q > best.q) {
                best = {*q, std::move(e)};
                streak = 0;
            } else if (++streak >= 8) {
                step *= 0.5;
                streak = 0;
            }
        }
        return best;
    }

private:
    const std::vector<HermTerm>& terms_;
    BipartiteDims dims_;
};

}  // namespace

NormalizedDecomposition normalize_decomposition(const std::vector<HermTerm>& terms,
                                                BipartiteDims dims)
{
    NormalizedDecomposition out;
    ComplexMatrix sum_b = ComplexMatrix::zero(dims.m, dims.m);
    ComplexMatrix sum_c = ComplexMatrix::zero(dims.n, dims.n);

    for (const auto& t : terms) {
        if (t.b.rows() != dims.m || t.c.rows() != dims.n)
            throw dimension_error("normalize_decomposition: factor shape does not match dims");
        const double mb = min_eig(t.b);
        const double mc = min_eig(t.c);
        HermTerm bar{shifted(t.b, mb), shifted(t.c, mc)};
        sum_b += mc * bar.b;
        sum_c += mb * bar.c;
        out.terms.push_back(std::move(bar));
    }

    out.b_bar = shifted(sum_b, min_eig(sum_b));
    out.c_bar = shifted(sum_c, min_eig(sum_c));
    out.q = q_value(terms, dims);
    return out;
}

ComplexMatrix resum(const NormalizedDecomposition& nd, BipartiteDims dims)
{
    ComplexMatrix out = reconstruct(nd.terms, dims);
    out += kron(nd.b_bar, ComplexMatrix::identity(dims.n));
    out += kron(ComplexMatrix::identity(dims.m), nd.c_bar);
    out.re().diagonal().array() += nd.q;
    return out;
}

double q_value(const std::vector<HermTerm>& terms, BipartiteDims dims)
{
    ComplexMatrix weighted_b = ComplexMatrix::zero(dims.m, dims.m);
    ComplexMatrix weighted_c = ComplexMatrix::zero(dims.n, dims.n);
    double cross = 0.0;
    for (const auto& t : terms) {
        const double mb = min_eig(t.b);
        const double mc = min_eig(t.c);
        weighted_b += mc * t.b;
        weighted_c += mb * t.c;
        cross += mb * mc;
    }
    return min_eig(weighted_b) + min_eig(weighted_c) - cross;
}

Bounds bounds(const ComplexMatrix& a, const std::vector<HermTerm>& terms,
              const NormalizedDecomposition& normalized)
{
    Bounds out;
    out.upper = min_eig(a);

    double half_sum = 0.0;
    for (const auto& t : terms) {
        const auto eb = eig_extremes(t.b);
        const auto ec = eig_extremes(t.c);
        half_sum += eb.max * ec.min + ec.max * eb.min - std::abs(eb.min) * (ec.max - ec.min)
                    - std::abs(ec.min) * (eb.max - eb.min);
    }
    out.lower_b = 0.5 * half_sum;

    double spread = 0.0;
    for (const auto& t : normalized.terms)
        spread += max_eig(t.b) * max_eig(t.c);
    out.lower_c = out.upper - spread;
    return out;
}

std::vector<HermTerm> gauge_transform(const std::vector<HermTerm>& terms, const RealMatrix& e)
{
    const auto r = static_cast<Eigen::Index>(terms.size());
    if (e.rows() != r || e.cols() != r)
        throw std::invalid_argument("gauge_transform: E must be " + std::to_string(r) + "x"
                                    + std::to_string(r));
    if (r == 0)
        return {};
    if (!e.allFinite() || condition_number(e) >= max_gauge_condition)
        throw std::invalid_argument("gauge_transform: E is singular or ill-conditioned");

    const RealMatrix f = Eigen::MatrixXd(e).partialPivLu().inverse().transpose();
    const std::size_t m = terms.front().b.rows();
    const std::size_t n = terms.front().c.rows();

    std::vector<HermTerm> out;
    out.reserve(terms.size());
    for (Eigen::Index j = 0; j < r; ++j) {
        HermTerm t{ComplexMatrix::zero(m, m), ComplexMatrix::zero(n, n)};
        for (Eigen::Index i = 0; i < r; ++i) {
            const auto& src = terms[static_cast<std::size_t>(i)];
            if (e(i, j) != 0.0)
                t.b += e(i, j) * src.b;
            if (f(i, j) != 0.0)
                t.c += f(i, j) * src.c;
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::size_t resolve_thread_count(std::size_t requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("SCHMIDT_HERM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SearchResult search_indicator(const std::vector<HermTerm>& terms, BipartiteDims dims,
                              const SearchConfig& cfg)
{
    SearchResult out;
    out.q_initial = q_value(terms, dims);
    out.q_best = out.q_initial;
    out.best_terms = terms;
    const auto r = static_cast<Eigen::Index>(terms.size());
    out.best_gauge = RealMatrix::Identity(r, r);
    if (terms.empty() || cfg.restarts == 0)
        return out;

    const GaugeWalk walk(terms, dims);
    std::vector<RestartOutcome> outcomes(cfg.restarts);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t k = next++; k < cfg.restarts; k = next++) {
            try {
                outcomes[k] = walk.run(k, cfg);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };

    const std::size_t nthreads = std::min(resolve_thread_count(cfg.threads), cfg.restarts);
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < nthreads; ++t)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    std::size_t best = 0;
    for (std::size_t k = 1; k < outcomes.size(); ++k)
        if (outcomes[k].q > outcomes[best].q)
            best = k;

    if (outcomes[best].q > out.q_best) {
        out.q_best = outcomes[best].q;
        out.best_restart = best;
        out.best_gauge = outcomes[best].gauge;
        out.best_terms = gauge_transform(terms, out.best_gauge);
    }
    return out;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::separable: return "SEPARABLE";
    case Verdict::entangled_flagged: return "ENTANGLED_FLAGGED";
    case Verdict::undecided: return "UNDECIDED";
    }
    return "UNDECIDED";
}

Verdict classify(const ClassifyInputs& in)
{
    if (in.q_best >= -in.tol)
        return Verdict::separable;
    if (in.min_eig <= in.tol && in.lower_b > in.tol)
        return Verdict::entangled_flagged;
    return Verdict::undecided;
}

SeparabilityReport analyze(const ComplexMatrix& a, BipartiteDims dims,
                           const std::optional<std::vector<HermTerm>>& terms,
                           const AnalyzeOptions& options)
{
    if (a.rows() != dims.total() || a.cols() != dims.total())
        throw dimension_error("analyze: matrix does not match dims");

    const double norm = frobenius(a);
    const double tol = options.tol.value_or(1e-9 * norm);
    if (!is_hermitian(a, 1e-10 * std::max(1.0, norm)))
        throw not_a_state_error("analyze: input is not Hermitian");
    const double ma = min_eig(a);
    if (ma < -tol)
        throw not_a_state_error("analyze: input is not positive semidefinite (min eigenvalue "
                                + std::to_string(ma) + ")");

    std::vector<HermTerm> work;
    if (terms) {
        work = *terms;
        if (frobenius(a - reconstruct(work, dims)) > 1e-9 * std::max(1.0, norm))
            throw std::invalid_argument("analyze: supplied terms do not re-sum to the matrix");
    } else {
        work = decompose_herm(a, dims, {options.rank_tol, std::nullopt}).terms;
    }

    const NormalizedDecomposition normalized = normalize_decomposition(work, dims);
    const Bounds b = bounds(a, work, normalized);
    const SearchResult search = search_indicator(work, dims, options.search);

    SeparabilityReport report;
    report.q = normalized.q;
    report.q_best = search.q_best;
    report.upper = b.upper;
    report.lower_b = b.lower_b;
    report.lower_c = b.lower_c;
    report.tol = tol;
    report.term_count = work.size();
    report.best_restart = search.best_restart;
    report.verdict = classify({search.q_best, ma, b.lower_b, tol});
    report.entangled_caveat = report.verdict == Verdict::entangled_flagged;
    if (report.verdict == Verdict::separable)
        report.witness = normalize_decomposition(search.best_terms, dims);
    return report;
}

}  // namespace schmidt
