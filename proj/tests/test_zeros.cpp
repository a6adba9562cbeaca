#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "copface/copface.hpp"
#include "oracle.hpp"

using namespace copface;

TEST(NormalizedZeroType, NormalizesAndThresholds) {
    Vector x(4);
    x << 2.0, 0.0, 2.0, 1e-14;
    const NormalizedZero z = NormalizedZero::from_vector(x);
    EXPECT_EQ(z.support, (IndexSet{0, 2}));
    EXPECT_NEAR(z.vec.sum(), 1.0, 1e-15);
    EXPECT_EQ(z.vec(3), 0.0);
    EXPECT_THROW(NormalizedZero::from_vector(Vector::Zero(3)), PreconditionError);
    Vector neg(2);
    neg << 1.0, -0.5;
    EXPECT_THROW(NormalizedZero::from_vector(neg), PreconditionError);
}

TEST(Enumerate, IdentityHasNoZeros) {
    const MinimalZeroCatalog cat = enumerate_minimal_zeros(SymMatrix::identity(4));
    EXPECT_TRUE(cat.empty());
    EXPECT_TRUE(cat.complete);
}

TEST(Enumerate, CirculantOrderFive) {
    const auto [a, p] = build_circulant(5);
    const MinimalZeroCatalog cat = enumerate_minimal_zeros(a);
    ASSERT_EQ(cat.size(), 5u);
    EXPECT_TRUE(cat.complete);
    std::vector<IndexSet> want = index_sets(5);
    std::sort(want.begin(), want.end());
    const double s = 2.0 + std::sqrt(3.0);
    for (std::size_t j = 0; j < 5; ++j) {
        EXPECT_EQ(cat[j].support, want[j]);
        std::vector<double> vals;
        for (Index k : cat[j].support) vals.push_back(cat[j].vec(k));
        std::sort(vals.begin(), vals.end());
        EXPECT_NEAR(vals[0], 1.0 / s, 1e-12);
        EXPECT_NEAR(vals[1], 1.0 / s, 1e-12);
        EXPECT_NEAR(vals[2], std::sqrt(3.0) / s, 1e-12);
    }
}

TEST(Enumerate, TwoByTwoSingularMatrix) {
    Matrix m(2, 2);
    m << 1, -1, -1, 1;
    const MinimalZeroCatalog cat = enumerate_minimal_zeros(SymMatrix(m));
    ASSERT_EQ(cat.size(), 1u);
    EXPECT_NEAR(cat[0].vec(0), 0.5, 1e-12);
    EXPECT_NEAR(cat[0].vec(1), 0.5, 1e-12);
}

TEST(Enumerate, ZeroDiagonalEntry) {
    Vector d(2);
    d << 0.0, 1.0;
    const MinimalZeroCatalog cat = enumerate_minimal_zeros(SymMatrix::diagonal(d));
    ASSERT_EQ(cat.size(), 1u);
    EXPECT_EQ(cat[0].support, IndexSet{0});
}

TEST(Enumerate, Refusals) {
    EXPECT_THROW(enumerate_minimal_zeros(SymMatrix::identity(13)), PreconditionError);
    EXPECT_THROW(enumerate_minimal_zeros(SymMatrix::identity(3).scaled(-1.0)), PreconditionError);
    EnumerationOptions small;
    small.max_order = 4;
    EXPECT_THROW(enumerate_minimal_zeros(SymMatrix::identity(5), {}, small), PreconditionError);
}

TEST(Enumerate, InconclusiveCopositivityIsReported) {
    const auto [a, p] = build_circulant(7);
    EnumerationOptions o;
    o.copositivity.method = CopositivityMethod::SimplicialPartition;
    o.copositivity.simplex_budget = 10;
    EXPECT_THROW(enumerate_minimal_zeros(a, {}, o), NumericalInconclusive);
}

TEST(Enumerate, CatalogInvariants) {
    TolerancePolicy tol;
    std::vector<SymMatrix> mats;
    for (Index n : {5, 7, 9}) mats.push_back(build_circulant(n).first);
    const MinimalZeroCatalog c5 = circulant_minimal_zeros(5);
    mats.push_back(build_lift(c5.matrix, c5, IndexSet{0}).lifted);
    for (const auto& a : mats) {
        const MinimalZeroCatalog cat = enumerate_minimal_zeros(a, tol);
        const double thr = tol.scaled_zero(a.spectral_norm());
        for (std::size_t i = 0; i < cat.size(); ++i) {
            EXPECT_TRUE(verify_zero(a, cat[i], tol));
            EXPECT_GE((a.dense() * cat[i].vec).minCoeff(), -thr);
            EXPECT_NEAR(cat[i].vec.sum(), 1.0, 1e-10);
            if (i + 1 < cat.size()) { EXPECT_LT(cat[i].support, cat[i + 1].support); }
            for (std::size_t j = 0; j < cat.size(); ++j)
                if (i != j) { EXPECT_FALSE(cat[i].support.is_proper_subset_of(cat[j].support)); }
        }
    }
}

TEST(Enumerate, ScaleInvariance) {
    const auto [a, p] = build_circulant(7);
    const MinimalZeroCatalog ref = enumerate_minimal_zeros(a);
    for (double c : {1e-2, 0.5, 3.0, 250.0}) {
        const MinimalZeroCatalog cat = enumerate_minimal_zeros(a.scaled(c));
        ASSERT_EQ(cat.size(), ref.size()) << c;
        for (std::size_t j = 0; j < ref.size(); ++j) {
            EXPECT_EQ(cat[j].support, ref[j].support);
            EXPECT_LT((cat[j].vec - ref[j].vec).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(VerifyZero, Examples) {
    const MinimalZeroCatalog cat = circulant_minimal_zeros(5);
    const SymMatrix& a = cat.matrix;
    EXPECT_TRUE(verify_zero(a, cat[0]));
    const Vector uniform = Vector::Constant(4, 0.25);
    EXPECT_FALSE(verify_zero(SymMatrix::identity(4), NormalizedZero{uniform, IndexSet::range(4)}));
    const NormalizedZero mid = NormalizedZero::from_vector(0.5 * (cat[0].vec + cat[1].vec));
    EXPECT_GT(bilinear_form(a, cat[0].vec, cat[1].vec), 1e-3);
    EXPECT_FALSE(verify_zero(a, mid));
    EXPECT_THROW(verify_zero(SymMatrix::identity(3), cat[0]), DimensionMismatch);
    NormalizedZero unnormalized = cat[0];
    unnormalized.vec *= 2.0;
    EXPECT_FALSE(verify_zero(a, unnormalized));
}

TEST(ImageSupport, ComplementOfZeroSupport) {
    const MinimalZeroCatalog cat = circulant_minimal_zeros(7);
    for (const auto& z : cat.zeros) {
        EXPECT_EQ(m_set(cat.matrix, z.vec, {}), z.support);
        EXPECT_EQ(image_support(cat.matrix, z.vec, {}), IndexSet::range(7).minus(z.support));
    }
}

// Grid minima of the form, refined by projected gradient, land in the clique
// representation of the zero set and reach every clique.
TEST(GridOracle, AgreesWithCliqueRepresentation) {
    std::vector<SymMatrix> mats;
    const MinimalZeroCatalog c5 = circulant_minimal_zeros(5);
    mats.push_back(c5.matrix);
    mats.push_back(build_lift(c5.matrix, c5, IndexSet{0}).lifted);
    mats.push_back(build_lift(c5.matrix, c5, IndexSet{3, 4}).lifted);
    Matrix h(5, 5);
    h << 1, -1, 1, 1, -1, -1, 1, -1, 1, 1, 1, -1, 1, -1, 1, 1, 1, -1, 1, -1, -1, 1, 1, -1, 1;
    mats.emplace_back(h);
    for (const auto& a : mats) {
        const CliqueCover cover = build_clique_cover(enumerate_minimal_zeros(a));
        const oracle::GridReport r = oracle::grid_oracle(cover);
        EXPECT_EQ(r.uncovered_negative, 0u);
        EXPECT_GT(r.zero_candidates, 0u);
        EXPECT_LE(r.worst_hull_distance, 1e-4);
        EXPECT_EQ(r.uncovered_cliques, 0u);
    }
}
