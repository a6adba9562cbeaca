#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "copface/copface.hpp"

using namespace copface;

TEST(Circulant, OrderFiveParameters) {
    const auto [a, p] = build_circulant(5);
    EXPECT_NEAR(p.alpha, 2.0, 1e-15);
    EXPECT_NEAR(p.beta, -std::sqrt(3.0), 1e-15);
    EXPECT_EQ(a.order(), 5);
}

TEST(Circulant, OrderSevenFirstRow) {
    const auto [a, p] = build_circulant(7);
    EXPECT_NEAR(p.alpha, 2.0 + std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(p.beta, -2.6131259, 1e-7);
    const double row[7] = {p.alpha, p.beta, 1, 0, 0, 1, p.beta};
    for (Index j = 0; j < 7; ++j) EXPECT_DOUBLE_EQ(a(0, j), row[j]);
}

TEST(Circulant, SymmetricAndShiftInvariant) {
    for (Index n : {5, 7, 9, 11, 13}) {
        const Matrix m = build_circulant(n).first.dense();
        EXPECT_EQ(m, m.transpose());
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) EXPECT_EQ(m(i, j), m((i + 1) % n, (j + 1) % n));
    }
}

TEST(Circulant, RejectsEvenOrSmallOrders) {
    for (Index n : {-1, 0, 3, 4, 6, 10}) EXPECT_THROW(build_circulant(n), PreconditionError) << n;
}

TEST(Circulant, ParameterIdentity) {
    for (Index n = 5; n <= 15; n += 2) {
        const HildebrandParams p = HildebrandParams::for_order(n);
        EXPECT_LE(std::abs(p.identity_residual()), 1e-12) << n;
        EXPECT_GT(p.alpha + 2 * p.beta + 2, 0.0);
    }
}

TEST(IndexSets, Examples) {
    const auto s5 = index_sets(5);
    ASSERT_EQ(s5.size(), 5u);
    EXPECT_EQ(s5[0], (IndexSet{0, 1, 2}));
    EXPECT_EQ(s5[4], (IndexSet{1, 2, 3}));
    EXPECT_EQ(index_sets(7)[2], (IndexSet{0, 1, 2, 5, 6}));
    for (Index n : {5, 7, 9, 11})
        for (const auto& s : index_sets(n)) EXPECT_EQ(static_cast<Index>(s.size()), n - 2);
    EXPECT_THROW(index_sets(6), PreconditionError);
}

TEST(PalindromicU, OrderFive) {
    const auto [a, p] = build_circulant(5);
    const Vector u = palindromic_u(a).u;
    const double s = 2.0 + std::sqrt(3.0);
    EXPECT_NEAR(u(0), 1.0 / s, 1e-12);
    EXPECT_NEAR(u(1), std::sqrt(3.0) / s, 1e-12);
    EXPECT_NEAR(u(2), 1.0 / s, 1e-12);
    EXPECT_NEAR(u(0), 0.2679, 1e-4);
    EXPECT_NEAR(u(1), 0.4641, 1e-4);
}

TEST(PalindromicU, PositiveAndPalindromic) {
    for (Index n : {5, 7, 9, 11}) {
        const auto [a, p] = build_circulant(n);
        const PalindromicKernelVector pu = palindromic_u(a);
        EXPECT_EQ(pu.u.size(), n - 2);
        EXPECT_GT(pu.u.minCoeff(), 0.0);
        EXPECT_NEAR(pu.u.sum(), 1.0, 1e-14);
        EXPECT_LE(pu.palindrome_residual, 1e-10);
    }
}

TEST(PalindromicU, FailsOnNonCirculantInput) {
    EXPECT_THROW(palindromic_u(SymMatrix::identity(5)), ConstructionFailure);
}

TEST(CirculantZeros, RankAndStructure) {
    TolerancePolicy tol;
    for (Index n : {5, 7, 9, 11}) {
        const MinimalZeroCatalog cat = circulant_minimal_zeros(n, tol);
        ASSERT_EQ(cat.size(), static_cast<std::size_t>(n));
        std::vector<Vector> taus;
        for (const auto& z : cat.zeros) taus.push_back(z.vec);
        EXPECT_EQ(rank_info_of_vectors(taus, tol).rank, n);

        double lambda_min = std::numeric_limits<double>::infinity();
        for (const auto& z : cat.zeros) {
            const Vector at = cat.matrix.dense() * z.vec;
            EXPECT_EQ(image_support(cat.matrix, z.vec, tol), IndexSet::range(n).minus(z.support));
            for (Index k = 0; k < n; ++k) {
                if (z.support.contains(k))
                    EXPECT_LE(std::abs(at(k)), 1e-12);
                else
                    lambda_min = std::min(lambda_min, at(k));
            }
            // The two positive entries of A tau agree by palindromic symmetry.
            const IndexSet off = IndexSet::range(n).minus(z.support);
            ASSERT_EQ(off.size(), 2u);
            EXPECT_NEAR(at(off[0]), at(off[1]), 1e-12);
        }
        EXPECT_GT(lambda_min, 0.0);
    }
}

TEST(CirculantZeros, ValuesFollowCyclicRuns) {
    const MinimalZeroCatalog cat = circulant_minimal_zeros(7);
    const Vector u = palindromic_u(cat.matrix).u;
    for (const auto& run : circulant_index_runs(7)) {
        const IndexSet supp{std::vector<Index>(run)};
        const auto it = std::find_if(cat.zeros.begin(), cat.zeros.end(), [&](const auto& z) { return z.support == supp; });
        ASSERT_NE(it, cat.zeros.end());
        for (std::size_t k = 0; k < run.size(); ++k) EXPECT_NEAR(it->vec(run[k]), u(static_cast<Index>(k)), 1e-12);
    }
}

TEST(Lift, BlockForm) {
    const MinimalZeroCatalog c5 = circulant_minimal_zeros(5);
    const IndexSet set{0, 2};
    const LiftResult l = build_lift(c5.matrix, c5, set);
    const Vector e = indicator(5, set);
    const Matrix& b = l.lifted.dense();
    const Matrix& a = c5.matrix.dense();
    EXPECT_EQ(b.topLeftCorner(5, 5), a);
    EXPECT_LT((b.topRightCorner(5, 1) - a * e).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(b(5, 5), e.dot(a * e), 1e-15);
    EXPECT_EQ(l.e_star, e);
}

TEST(Lift, OrderFiveWithFirstIndex) {
    const MinimalZeroCatalog c5 = circulant_minimal_zeros(5);
    const LiftResult l = build_lift(c5.matrix, c5, IndexSet{0});
    EXPECT_EQ(l.j0, (IndexSet{0, 1, 2}));
    for (auto [j, mu] : l.mu) EXPECT_DOUBLE_EQ(mu, 1.0);
    // The base zero with support {1,2,3} carries u in order; its partner is (0, u2, u3, 0, 0, u1).
    const Vector u = palindromic_u(c5.matrix).u;
    const Index y = l.y_bar_index.at(0);
    Vector expect(6);
    expect << 0, u(1), u(2), 0, 0, u(0);
    EXPECT_LT((l.lifted_catalog[static_cast<std::size_t>(y)].vec - expect).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(l.lifted_catalog.size(), 8u);
}

TEST(Lift, OrderSevenWithFirstThree) {
    const MinimalZeroCatalog c7 = circulant_minimal_zeros(7);
    const LiftResult l = build_lift(c7.matrix, c7, IndexSet{0, 1, 2});
    EXPECT_EQ(l.j0, (IndexSet{0, 1, 2}));
    IndexSet cover;
    for (Index j : l.j0) cover = cover.united(c7[static_cast<std::size_t>(j)].support);
    EXPECT_EQ(cover, IndexSet::range(7));
    for (Index j : l.j0) {
        EXPECT_GT(l.sigma.at(j), 0.0);
        EXPECT_GT(l.mu.at(j), 0.0);
        EXPECT_NEAR(l.mu.at(j), 1.0 - 2.0 * l.sigma.at(j), 1e-15);
    }
}

TEST(Lift, Errors) {
    const MinimalZeroCatalog c5 = circulant_minimal_zeros(5);
    EXPECT_THROW(build_lift(c5.matrix, c5, IndexSet{}), PreconditionError);
    EXPECT_THROW(build_lift(c5.matrix, c5, IndexSet{5}), PreconditionError);
    EXPECT_THROW(build_lift(c5.matrix, c5, IndexSet{-1}), PreconditionError);
    MinimalZeroCatalog incomplete = c5;
    incomplete.complete = false;
    EXPECT_THROW(build_lift(c5.matrix, incomplete, IndexSet{0}), PreconditionError);
    EXPECT_THROW(build_lift(SymMatrix::identity(5), c5, IndexSet{0}), PreconditionError);
    // A base whose minimal zeros are joined by an edge is refused.
    const LiftResult l = build_lift(c5.matrix, c5, IndexSet{0});
    const MinimalZeroCatalog b = enumerate_minimal_zeros(l.lifted);
    EXPECT_THROW(build_lift(l.lifted, b, IndexSet{0}), PreconditionError);
}

TEST(Lift, CoefficientGuard) {
    // Not normalized: sigma = 1, so mu = 1 - 1 * 2 < 0.
    Vector tau = Vector::Constant(3, 1.0);
    EXPECT_THROW(lift_coefficients(tau, IndexSet{0, 1, 2}), PreconditionError);
    Vector partial(3);
    partial << 0.5, 0.0, 0.5;
    EXPECT_THROW(lift_coefficients(partial, IndexSet{0, 1}), PreconditionError);
    Vector ok(3);
    ok << 0.25, 0.5, 0.25;
    const LiftCoefficients c = lift_coefficients(ok, IndexSet{0, 1, 2});
    EXPECT_DOUBLE_EQ(c.sigma, 0.25);
    EXPECT_DOUBLE_EQ(c.mu, 0.5);
    EXPECT_GE(c.mu, c.sigma);
}

TEST(Lift, GeneralVectorConstructor) {
    const auto [a, p] = build_circulant(5);
    Vector w(5);
    w << 0.5, 0, 2, 0, 0;
    const SymMatrix b = lift_matrix(a, w);
    EXPECT_EQ(b.order(), 6);
    EXPECT_NEAR(b(5, 5), w.dot(a.dense() * w), 1e-14);
    w(1) = -1.0;
    EXPECT_THROW(lift_matrix(a, w), PreconditionError);
    EXPECT_THROW(lift_matrix(a, Vector::Zero(4)), DimensionMismatch);
}

TEST(Lift, QuadraticFormDecomposition) {
    const MinimalZeroCatalog c5 = circulant_minimal_zeros(5);
    const IndexSet set{0, 1};
    const LiftResult l = build_lift(c5.matrix, c5, set);
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        Vector z(6);
        for (Index i = 0; i < 6; ++i) z(i) = u(rng);
        const Vector folded = z.head(5) + z(5) * l.e_star;
        EXPECT_NEAR(quadratic_form(l.lifted, z), quadratic_form(c5.matrix, folded), 1e-10);
    }
    for (const auto& zb : l.lifted_catalog.zeros) EXPECT_LE(quadratic_form(l.lifted, zb.vec), 1e-9);
}

TEST(Lift, MinimalityPreserved) {
    const MinimalZeroCatalog c7 = circulant_minimal_zeros(7);
    for (const IndexSet& set : {IndexSet{0}, IndexSet{0, 1, 2}, IndexSet{3, 4}}) {
        const LiftResult l = build_lift(c7.matrix, c7, set);
        const auto& zs = l.lifted_catalog.zeros;
        for (std::size_t i = 0; i < zs.size(); ++i)
            for (std::size_t j = 0; j < zs.size(); ++j)
                if (i != j) { EXPECT_FALSE(zs[i].support.is_proper_subset_of(zs[j].support)); }
    }
}

TEST(LiftHypotheses, StandardIndexSetSatisfiesAll) {
    const MinimalZeroCatalog c7 = circulant_minimal_zeros(7);
    const LiftHypotheses h = check_lift_hypotheses(build_lift(c7.matrix, c7, IndexSet{0, 1, 2}), c7);
    EXPECT_TRUE(h.complete_and_minimal);
    EXPECT_TRUE(h.support_cover);
    EXPECT_TRUE(h.extreme);
    EXPECT_TRUE(h.j0_support_cover);
    EXPECT_TRUE(h.j0_m_cover);
    EXPECT_TRUE(h.all());
}

TEST(LiftHypotheses, TrailingPairOrderFive) {
    const MinimalZeroCatalog c5 = circulant_minimal_zeros(5);
    const LiftResult l = build_lift(c5.matrix, c5, IndexSet{3, 4});
    // {4,5} (1-based) lies in I(j) exactly when neither 4 nor 5 is omitted: two sets.
    EXPECT_EQ(l.j0.size(), 2u);
    const LiftHypotheses h = check_lift_hypotheses(l, c5);
    EXPECT_TRUE(h.complete_and_minimal);
    EXPECT_TRUE(h.extreme);
    EXPECT_FALSE(h.j0_support_cover);
    EXPECT_FALSE(h.all());
}

TEST(LiftHypotheses, IdentityBaseFailsCompleteness) {
    const MinimalZeroCatalog id = enumerate_minimal_zeros(SymMatrix::identity(4));
    const LiftResult l = build_lift(id.matrix, id, IndexSet{0});
    EXPECT_TRUE(l.j0.empty());
    const LiftHypotheses h = check_lift_hypotheses(l, id);
    EXPECT_FALSE(h.complete_and_minimal);
    EXPECT_FALSE(h.all());
}

TEST(ZeroSetShape, PipelineLifts) {
    struct Case {
        Index n;
        IndexSet set;
        std::size_t zeros;
    };
    for (const Case& c : {Case{5, IndexSet{0}, 8}, Case{7, IndexSet{0, 1, 2}, 10}, Case{7, IndexSet{0}, 12}}) {
        const MinimalZeroCatalog base = circulant_minimal_zeros(c.n);
        const LiftResult l = build_lift(base.matrix, base, c.set);
        EXPECT_EQ(l.lifted_catalog.size(), c.zeros);
        const ZeroSetShapeReport r = verify_zeroset_shape(l);
        EXPECT_TRUE(r.ok) << (r.diff.empty() ? "" : r.diff.front());
        EXPECT_EQ(r.midpoints_checked, l.j0.size());
        EXPECT_GE(r.non_adjacent_checked, 50u);
    }
}

TEST(ZeroSetShape, ReportsMismatch) {
    const MinimalZeroCatalog base = circulant_minimal_zeros(5);
    LiftResult l = build_lift(base.matrix, base, IndexSet{0});
    l.expected_edges.pop_back();
    const ZeroSetShapeReport r = verify_zeroset_shape(l);
    EXPECT_FALSE(r.ok);
    ASSERT_FALSE(r.diff.empty());
    EXPECT_NE(r.diff.front().find("edges"), std::string::npos);
}

TEST(Baumert, SingleIndexLiftsGiveTwoNMinusThree) {
    for (Index n : {5, 7}) {
        const MinimalZeroCatalog base = circulant_minimal_zeros(n);
        const LiftResult l = build_lift(base.matrix, base, IndexSet{0});
        const MinimalZeroCatalog cat = enumerate_minimal_zeros(l.lifted);
        const CliqueCover cover = build_clique_cover(cat);
        EXPECT_TRUE(certify_exposed(l.lifted, cat, cover).exposed);
        EXPECT_EQ(l.j0.size(), static_cast<std::size_t>(n - 2));
        EXPECT_EQ(face_dimension(cat, cover).dimension, 2 * (n + 1) - 3) << n;
    }
}
