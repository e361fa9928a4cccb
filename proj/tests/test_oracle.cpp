#include "test_support.hpp"

#include <orbk/json_io.hpp>
#include <orbk/oracle.hpp>

#include <gtest/gtest.h>

using namespace orbk;
using orbk::testing::Rng;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

bool within_bounds(const ToricModel& m) {
    try {
        oracle::check_toric_bounds(m);
        return true;
    } catch (const OracleBoundsExceeded&) {
        return false;
    }
}

std::vector<TorusElement> elements(const ToricReport& r) {
    std::vector<TorusElement> out;
    for (const auto& s : r.sectors) out.push_back(s.element);
    return out;
}

}  // namespace

TEST(OracleBounds, Rejects) {
    EXPECT_THROW(oracle::check_toric_bounds(ToricModel(IntMatrix{{1, 1, 1, 1, 1, 1, 1}}, {q(1)})), OracleBoundsExceeded);
    EXPECT_THROW(oracle::check_toric_bounds(ToricModel(IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
                                                       {q(1), q(1), q(1), q(1)})),
                 OracleBoundsExceeded);
    // P(7, 11): lcm 77 > 60.
    EXPECT_THROW(oracle::check_toric_bounds(ToricModel(IntMatrix{{7, 11}}, {q(1)})), OracleBoundsExceeded);
    EXPECT_EQ(oracle::check_toric_bounds(ToricModel(IntMatrix{{3, 4, 5}}, {q(1)})), 60);
}

TEST(OracleGroups, FromElementOrders) {
    // Z/2 x Z/4 vs Z/8: same order, different invariant factors.
    std::vector<TorusElement> a, b;
    for (long i = 0; i < 2; ++i)
        for (long j = 0; j < 4; ++j) a.emplace_back(RatVec{q(i, 2), q(j, 4)});
    for (long i = 0; i < 8; ++i) b.emplace_back(RatVec{q(i, 8)});
    EXPECT_EQ(oracle::detail::group_from_elements(a), FiniteAbelianGroup::from_invariant_factors({2, 4}));
    EXPECT_EQ(oracle::detail::group_from_elements(b), FiniteAbelianGroup::from_invariant_factors({8}));
    EXPECT_EQ(oracle::detail::group_from_elements({TorusElement(RatVec{q(0)})}), FiniteAbelianGroup());
}

TEST(OracleToric, TeardropMatchesFastPath) {
    const ToricModel m(IntMatrix{{1, 2}}, {q(2)});
    const RatVec xi = find_generic_xi(m.weights(), m.level());
    EXPECT_EQ(oracle::toric_sectors(m, xi), korb_report(m, xi));
}

TEST(OracleToric, ErrorGating) {
    EXPECT_THROW(oracle::toric_sectors(ToricModel(IntMatrix{{-1, -1}, {0, 0}}, {q(-3), q(0)}), {q(1), q(1)}),
                 NonRegularLevel);
    EXPECT_THROW(oracle::toric_sectors(ToricModel(IntMatrix{{1, -1}}, {q(1)}), {q(1), q(-1)}), NotProper);
    EXPECT_THROW(oracle::toric_sectors(ToricModel(IntMatrix{{1, 2}}, {q(2)}), {q(1), q(2)}), NonGenericXi);
}

TEST(OracleRegularity, AgreesWithFastWitnessExistence) {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = rng.uniform(1, 3), n = rng.uniform(k, 6);
        const ToricModel m(rng.matrix(k, n, 3), [&] {
            RatVec eta(k);
            for (auto& x : eta) x = q(rng.uniform(-4, 4));
            return eta;
        }());
        const auto fast = check_regular(m);
        const auto slow = oracle::regularity(m);
        EXPECT_EQ(fast.ok(), slow.ok());
        if (!fast.ok()) {
            EXPECT_LT(rank(m.weights().select_columns(*fast.witness)), m.rank());
            EXPECT_TRUE(open_cone_member(m.level(), m.columns(*fast.witness)).member);
        }
    }
}

TEST(OracleEquivalence, RandomModelsByteForByte) {
    Rng rng(2024);
    int checked = 0;
    while (checked < 200) {
        const ToricModel m = orbk::testing::random_regular_model(rng, 6, 3, 4);
        if (!within_bounds(m)) continue;
        const RatVec xi = find_generic_xi(m.weights(), m.level());
        const ToricReport fast = korb_report(m, xi);
        const ToricReport slow = oracle::toric_sectors(m, xi);
        ASSERT_EQ(io::dump(io::toric_report_json(m, xi, fast)), io::dump(io::toric_report_json(m, xi, slow)));
        EXPECT_EQ(twisted_sectors(m), elements(slow));
        ++checked;
    }
}

TEST(OracleEquivalence, ConeAndRecessionQueries) {
    Rng rng(99);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t k = rng.uniform(1, 3), n = rng.uniform(1, 6);
        const IntMatrix A = rng.matrix(k, n, 4);
        RatVec eta(k), xi(n);
        for (auto& x : eta) x = q(rng.uniform(-5, 5));
        for (auto& x : xi) x = q(rng.uniform(-3, 3));
        std::vector<IntVec> cols;
        for (std::size_t j = 0; j < n; ++j) cols.push_back(A.column(j));
        EXPECT_EQ(open_cone_member(eta, cols).member, oracle::cone(eta, cols).member);
        EXPECT_EQ(recession_positive(A, xi).proper(), oracle::properness(A, xi).proper());
    }
}
