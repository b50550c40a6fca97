#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "schmidt/herm_decomp.hpp"
#include "schmidt/separability.hpp"
#include "schmidt/states.hpp"
#include "support.hpp"

using namespace schmidt;
using testing_support::Gen;

namespace {

const std::vector<BipartiteDims> kDims = {{2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 4}};

double oracle_min(const ComplexMatrix& h)
{
    return testing_support::hermitian_eigenvalues(h).front();
}

double oracle_max(const ComplexMatrix& h)
{
    return testing_support::hermitian_eigenvalues(h).back();
}

double oracle_q(const std::vector<HermTerm>& terms, BipartiteDims d)
{
    ComplexMatrix wb = ComplexMatrix::zero(d.m, d.m);
    ComplexMatrix wc = ComplexMatrix::zero(d.n, d.n);
    double cross = 0.0;
    for (const auto& t : terms) {
        const double mb = oracle_min(t.b);
        const double mc = oracle_min(t.c);
        wb += mc * t.b;
        wc += mb * t.c;
        cross += mb * mc;
    }
    return oracle_min(wb) + oracle_min(wc) - cross;
}

std::vector<HermTerm> random_terms(Gen& gen, BipartiteDims d, std::size_t k)
{
    std::vector<HermTerm> out;
    for (std::size_t i = 0; i < k; ++i)
        out.push_back({gen.hermitian(d.m), gen.hermitian(d.n)});
    return out;
}

// Decompositions drawn from several sources: raw random Hermitian pairs,
// Hermitian decompositions of random states, and gauge-mixed versions.
std::vector<std::vector<HermTerm>> decomposition_pool(Gen& gen, BipartiteDims d)
{
    std::vector<std::vector<HermTerm>> pool;
    pool.push_back(random_terms(gen, d, 1 + gen.index(4)));
    pool.push_back(decompose_herm(gen.density(d.total()), d).terms);
    const auto base = decompose_herm(gen.hermitian(d.total()), d).terms;
    const auto r = static_cast<Eigen::Index>(base.size());
    pool.push_back(gauge_transform(base, RealMatrix::Identity(r, r) + 0.3 * gen.real(r, r)));
    return pool;
}

SearchConfig quick(std::uint64_t seed, std::size_t threads = 1)
{
    SearchConfig cfg;
    cfg.restarts = 8;
    cfg.iters = 60;
    cfg.seed = seed;
    cfg.threads = threads;
    return cfg;
}

}  // namespace

TEST(QValue, MatchesOracle)
{
    Gen gen(41);
    for (int trial = 0; trial < 60; ++trial) {
        const auto d = gen.dims_from(kDims);
        const auto terms = random_terms(gen, d, 1 + gen.index(5));
        EXPECT_NEAR(q_value(terms, d), oracle_q(terms, d), 1e-10);
    }
}

TEST(QValue, WernerFromHermitianDecomposition)
{
    // sign-favourable decomposition: q = 1/4 - (2 sqrt 3 + 3) |1 - 4F| / 12
    const double f = 0.3;
    const auto terms = decompose_herm(werner(f), {2, 2}).terms;
    const double expect = 0.25 - (2 * std::sqrt(3.0) + 3) * std::abs(1 - 4 * f) / 12;
    EXPECT_NEAR(q_value(terms, {2, 2}), expect, 1e-12);
}

TEST(Normalize, ResumsAndShiftsToZero)
{
    Gen gen(42);
    for (int trial = 0; trial < 40; ++trial) {
        const auto d = gen.dims_from(kDims);
        for (const auto& terms : decomposition_pool(gen, d)) {
            const ComplexMatrix a = reconstruct(terms, d);
            const NormalizedDecomposition nd = normalize_decomposition(terms, d);
            EXPECT_LT(frobenius(resum(nd, d) - a), 1e-9 * std::max(1.0, frobenius(a)));
            for (const auto& t : nd.terms) {
                EXPECT_NEAR(oracle_min(t.b), 0.0, 1e-10);
                EXPECT_NEAR(oracle_min(t.c), 0.0, 1e-10);
            }
            EXPECT_NEAR(oracle_min(nd.b_bar), 0.0, 1e-10);
            EXPECT_NEAR(oracle_min(nd.c_bar), 0.0, 1e-10);
            EXPECT_EQ(nd.q, q_value(terms, d));
        }
    }
}

TEST(Bounds, InequalitiesHoldForEveryDecomposition)
{
    Gen gen(43);
    for (int trial = 0; trial < 60; ++trial) {
        const auto d = gen.dims_from(kDims);
        for (const auto& terms : decomposition_pool(gen, d)) {
            const ComplexMatrix a = reconstruct(terms, d);
            const NormalizedDecomposition nd = normalize_decomposition(terms, d);
            const Bounds b = bounds(a, terms, nd);
            EXPECT_NEAR(b.upper, oracle_min(a), 1e-10);
            EXPECT_LE(b.lower_b, nd.q + 1e-9);
            EXPECT_LE(nd.q, b.upper + 1e-9);
            EXPECT_GE(nd.q, b.lower_c - 1e-9);

            double spread = 0.0;
            for (const auto& t : nd.terms)
                spread += oracle_max(t.b) * oracle_max(t.c);
            EXPECT_NEAR(b.lower_c, oracle_min(a) - spread, 1e-9);
        }
    }
}

TEST(Gauge, PreservesSum)
{
    Gen gen(44);
    for (int trial = 0; trial < 40; ++trial) {
        const auto d = gen.dims_from(kDims);
        const auto terms = random_terms(gen, d, 1 + gen.index(4));
        const auto r = static_cast<Eigen::Index>(terms.size());
        const RealMatrix e = RealMatrix::Identity(r, r) + 0.5 * gen.real(r, r);
        const auto moved = gauge_transform(terms, e);
        const ComplexMatrix a = reconstruct(terms, d);
        EXPECT_LT(frobenius(reconstruct(moved, d) - a), 1e-10 * (1 + frobenius(a)));
    }
}

TEST(Gauge, RejectsBadTransforms)
{
    Gen gen(45);
    const auto terms = random_terms(gen, {2, 2}, 2);
    EXPECT_THROW(gauge_transform(terms, RealMatrix::Identity(3, 3)), std::invalid_argument);
    RealMatrix singular(2, 2);
    singular << 1, 2, 2, 4;
    EXPECT_THROW(gauge_transform(terms, singular), std::invalid_argument);
    RealMatrix skewed(2, 2);
    skewed << 1, 0, 0, 1e-9;
    EXPECT_THROW(gauge_transform(terms, skewed), std::invalid_argument);
}

TEST(Search, NeverWorseThanStart)
{
    Gen gen(46);
    for (int trial = 0; trial < 10; ++trial) {
        const auto d = gen.dims_from(kDims);
        const auto terms = decompose_herm(gen.density(d.total()), d).terms;
        const SearchResult s = search_indicator(terms, d, quick(trial));
        EXPECT_GE(s.q_best, s.q_initial);
        EXPECT_NEAR(q_value(s.best_terms, d), s.q_best, 1e-12);
        EXPECT_LT(frobenius(reconstruct(s.best_terms, d) - reconstruct(terms, d)), 1e-9);
    }
}

TEST(Search, DeterministicAcrossThreadCounts)
{
    Gen gen(47);
    const BipartiteDims d{2, 3};
    const auto terms = decompose_herm(gen.density(6), d).terms;
    const SearchResult one = search_indicator(terms, d, quick(5, 1));
    const SearchResult many = search_indicator(terms, d, quick(5, 4));
    const SearchResult again = search_indicator(terms, d, quick(5, 3));
    EXPECT_EQ(one.q_best, many.q_best);
    EXPECT_EQ(one.best_restart, many.best_restart);
    EXPECT_EQ(one.best_gauge, many.best_gauge);
    EXPECT_EQ(one.q_best, again.q_best);
}

TEST(Search, ZeroRestartsKeepsInput)
{
    Gen gen(49);
    const auto terms = random_terms(gen, {2, 2}, 3);
    SearchConfig cfg;
    cfg.restarts = 0;
    const SearchResult s = search_indicator(terms, {2, 2}, cfg);
    EXPECT_EQ(s.q_best, s.q_initial);
    EXPECT_EQ(s.best_gauge, RealMatrix::Identity(3, 3));
}

TEST(Threads, EnvironmentOverride)
{
    EXPECT_EQ(resolve_thread_count(3), 3u);
    ::setenv("SCHMIDT_HERM_THREADS", "2", 1);
    EXPECT_EQ(resolve_thread_count(0), 2u);
    ::setenv("SCHMIDT_HERM_THREADS", "junk", 1);
    EXPECT_GE(resolve_thread_count(0), 1u);
    ::unsetenv("SCHMIDT_HERM_THREADS");
}

TEST(Classify, Rules)
{
    EXPECT_EQ(classify({0.0, 0.1, -1.0, 1e-9}), Verdict::separable);
    EXPECT_EQ(classify({-5e-10, 0.1, -1.0, 1e-9}), Verdict::separable);
    EXPECT_EQ(classify({-0.1, 0.1, -1.0, 1e-9}), Verdict::undecided);
    EXPECT_EQ(classify({-0.1, 0.0, 0.5, 1e-9}), Verdict::entangled_flagged);
    EXPECT_EQ(to_string(Verdict::separable), "SEPARABLE");
    EXPECT_EQ(to_string(Verdict::entangled_flagged), "ENTANGLED_FLAGGED");
    EXPECT_EQ(to_string(Verdict::undecided), "UNDECIDED");
}

TEST(Analyze, ProductStateIsSeparable)
{
    Gen gen(50);
    for (const auto d : kDims) {
        const ComplexMatrix a = kron(gen.pure(d.m), gen.pure(d.n));
        AnalyzeOptions opt;
        opt.search = quick(1);
        const SeparabilityReport r = analyze(a, d, std::nullopt, opt);
        EXPECT_EQ(r.verdict, Verdict::separable);
        EXPECT_GE(r.q_best, -r.tol);
        ASSERT_TRUE(r.witness.has_value());
        EXPECT_LT(frobenius(resum(*r.witness, d) - a), 1e-9);
    }
}

TEST(Analyze, MaximallyMixedAttainsCeiling)
{
    const ComplexMatrix a = ComplexMatrix::identity(4) * 0.25;
    const SeparabilityReport r = analyze(a, {2, 2});
    EXPECT_NEAR(r.q_best, 0.25, 1e-12);
    EXPECT_NEAR(r.upper, 0.25, 1e-12);
    EXPECT_EQ(r.verdict, Verdict::separable);
}

TEST(Analyze, SingletIsNotSeparable)
{
    AnalyzeOptions opt;
    opt.search = quick(42);
    const SeparabilityReport r = analyze(werner(1.0), {2, 2}, std::nullopt, opt);
    EXPECT_NE(r.verdict, Verdict::separable);
    EXPECT_NEAR(r.upper, 0.0, 1e-12);
    EXPECT_FALSE(r.witness.has_value());
}

TEST(Analyze, SuppliedMixtureTermsGiveWitness)
{
    const SeparableMixture mix = random_separable_mixture(2, 3, 5, 9);
    const SeparabilityReport r = analyze(mix.state, {2, 3}, mix.terms);
    EXPECT_EQ(r.verdict, Verdict::separable);
    EXPECT_EQ(r.term_count, 5u);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_LT(frobenius(resum(*r.witness, {2, 3}) - mix.state), 1e-9);
}

TEST(Analyze, Gates)
{
    Gen gen(51);
    EXPECT_THROW(analyze(gen.non_hermitian(4), {2, 2}), not_a_state_error);
    EXPECT_THROW(analyze(werner(1.2), {2, 2}), not_a_state_error);
    const auto wrong = random_terms(gen, {2, 2}, 2);
    EXPECT_THROW(analyze(werner(0.5), {2, 2}, wrong), std::invalid_argument);
    EXPECT_THROW(analyze(werner(0.5), {2, 3}), dimension_error);
}

TEST(Bounds, IdentityWithTrivialDecomposition)
{
    const std::vector<HermTerm> terms = {{ComplexMatrix::identity(2), ComplexMatrix::identity(2)}};
    const ComplexMatrix a = ComplexMatrix::identity(4);
    const Bounds b = bounds(a, terms, normalize_decomposition(terms, {2, 2}));
    EXPECT_NEAR(b.upper, 1.0, 1e-14);
    EXPECT_NEAR(b.lower_b, 1.0, 1e-14);
    EXPECT_NEAR(b.lower_c, 1.0, 1e-14);
}

TEST(Gauge, SpecialTransforms)
{
    Gen gen(52);
    const auto terms = random_terms(gen, {2, 3}, 3);
    const auto same = gauge_transform(terms, RealMatrix::Identity(3, 3));
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(same[i].b.re(), terms[i].b.re());
        EXPECT_EQ(same[i].c.im(), terms[i].c.im());
    }

    RealMatrix e = RealMatrix::Identity(3, 3);
    e(0, 0) = 2.0;
    const auto scaled = gauge_transform(terms, e);
    EXPECT_LT(frobenius(scaled[0].b - terms[0].b * 2.0), 1e-15);
    EXPECT_LT(frobenius(scaled[0].c - terms[0].c * 0.5), 1e-15);

    // random orthogonal E on the bound entangled state's four terms
    const auto rho_terms = decompose_herm(horodecki_2x4(0.5), {2, 4}).terms;
    ASSERT_EQ(rho_terms.size(), 4u);
    const RealMatrix q = Eigen::HouseholderQR<Eigen::MatrixXd>(gen.real(4, 4)).householderQ();
    const auto rotated = gauge_transform(rho_terms, q);
    EXPECT_LT(frobenius(reconstruct(rotated, {2, 4}) - horodecki_2x4(0.5)), 1e-10);
}

TEST(Search, Ceilings)
{
    Gen gen(53);
    const ComplexMatrix r1 = gen.density(2);
    const ComplexMatrix r2 = gen.density(3);
    const std::vector<HermTerm> product = {{r1, r2}};
    EXPECT_GE(search_indicator(product, {2, 3}, quick(1)).q_best, 0.0);

    const std::vector<HermTerm> mixed = {{ComplexMatrix::identity(2) * 0.5,
                                          ComplexMatrix::identity(2) * 0.5}};
    const SearchResult s = search_indicator(mixed, {2, 2}, quick(2));
    EXPECT_NEAR(s.q_best, 0.25, 1e-15);

    const auto singlet = decompose_herm(werner(1.0), {2, 2}).terms;
    SearchConfig cfg;
    cfg.seed = 42;
    const SearchResult w = search_indicator(singlet, {2, 2}, cfg);
    EXPECT_LT(w.q_best, 0.0);
}

TEST(Analyze, WernerConsistentWithKnownThreshold)
{
    AnalyzeOptions opt;
    opt.search.seed = 0;
    EXPECT_EQ(analyze(werner(0.3), {2, 2}, std::nullopt, opt).verdict, Verdict::separable);
    opt.search.seed = 42;
    for (double f : {0.6, 0.9, 1.0})
        EXPECT_NE(analyze(werner(f), {2, 2}, std::nullopt, opt).verdict, Verdict::separable)
            << "F=" << f;
}

TEST(Analyze, SeparableMixturesAreNeverFlagged)
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        AnalyzeOptions opt;
        opt.search.restarts = 4;
        opt.search.iters = 30;
        opt.search.seed = seed;
        const ComplexMatrix rho = random_separable(2, 2, 8, seed);
        EXPECT_NE(analyze(rho, {2, 2}, std::nullopt, opt).verdict, Verdict::entangled_flagged);
    }
}
