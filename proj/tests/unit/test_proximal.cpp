#include <gtest/gtest.h>

#include <algorithm>

#include "apd/presets.hpp"
#include "apd/proximal.hpp"

using namespace apd;

namespace {

PointPattern integers(double hi) { return lattice(1, {1.0, 0.0}, Box{{0, 0}, {hi, 0}}); }

PointPattern tm_two_sided(Symbol left, Symbol right, std::size_t length) {
    const auto tm = thue_morse();
    const auto [l, r] = two_sided_fixed_point(tm, SeedPair{left, right, 1}, length);
    return realize_two_sided(tm, l, r, std::set<Symbol>{'1'});
}

std::vector<Point> schedule(double start, double step, int steps) {
    std::vector<Point> out;
    for (int k = 1; k <= steps; ++k) out.push_back({start + step * k, 0.0});
    return out;
}

// 0 → 010, 1 → 201, 2 → 102: constant length 3, every return time of 0 is even.
SubstitutionSystem height_two() {
    return SubstitutionSystem("height2", {'0', '1', '2'}, {{'0', "010"}, {'1', "201"}, {'2', "102"}},
                              {{'0', 1.0}, {'1', 1.0}, {'2', 1.0}});
}

}  // namespace

TEST(Columns, ThueMorsePowerOne) {
    EXPECT_EQ(column_cardinalities(thue_morse(), 1), (std::vector<std::size_t>{2, 2, 2, 2}));
}

TEST(Columns, PeriodDoublingPowerOne) {
    EXPECT_EQ(column_cardinalities(period_doubling(), 1), (std::vector<std::size_t>{1, 2}));
}

TEST(Columns, LengthIsLToThePower) { EXPECT_EQ(column_cardinalities(thue_morse(), 3).size(), 64u); }

TEST(Columns, RequiresConstantLength) {
    try {
        column_cardinalities(fibonacci_substitution(), 1);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("column analysis requires constant length"), std::string::npos);
    }
}

TEST(Columns, PowerRange) {
    EXPECT_THROW(column_cardinalities(thue_morse(), 0), Error);
    // 4^13 columns exceeds the column budget.
    EXPECT_THROW(column_cardinalities(thue_morse(), 13), Error);
}

TEST(Columns, CoincidencePropagates) {
    const auto a = column_analysis(period_doubling(), 6);
    ASSERT_EQ(a.per_power.size(), 6u);
    for (const auto& p : a.per_power) {
        EXPECT_EQ(p.min_cardinality, 1u);
        EXPECT_EQ(p.cardinalities.size(), std::size_t{1} << p.power);
    }
}

TEST(Columns, MinimaNonIncreasingAndBounded) {
    for (const auto& name : substitution_preset_names()) {
        const auto s = *find_substitution_preset(name);
        if (!s.constant_length()) continue;
        const auto a = column_analysis(s, 6);
        for (std::size_t i = 0; i < a.per_power.size(); ++i) {
            EXPECT_GE(a.per_power[i].min_cardinality, 1u);
            EXPECT_LE(a.per_power[i].min_cardinality, s.alphabet().size());
            if (i > 0) EXPECT_LE(a.per_power[i].min_cardinality, a.per_power[i - 1].min_cardinality);
        }
    }
}

TEST(CoincidenceRank, ThueMorseIsTwo) {
    const auto cr = coincidence_rank(thue_morse());
    EXPECT_EQ(cr.cr_estimate, 2u);
    EXPECT_TRUE(cr.certified);
    EXPECT_EQ(cr.height, 1u);
    EXPECT_EQ(cr.columns.per_power.size(), static_cast<std::size_t>(kDefaultPowerMax));
    for (const auto& p : cr.columns.per_power) EXPECT_TRUE(p.coincident_or_bijective);
}

TEST(CoincidenceRank, PeriodDoublingIsOne) {
    const auto cr = coincidence_rank(period_doubling());
    EXPECT_EQ(cr.cr_estimate, 1u);
    EXPECT_TRUE(cr.certified);
}

TEST(CoincidenceRank, FibonacciRejected) { EXPECT_THROW(coincidence_rank(fibonacci_substitution()), Error); }

TEST(CoincidenceRank, HeightTwoRejected) {
    EXPECT_EQ(substitution_height(height_two()), 2u);
    EXPECT_EQ(substitution_height(thue_morse()), 1u);
    try {
        coincidence_rank(height_two());
        FAIL() << "expected an error";
    } catch (const Error& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("pure base required"), std::string::npos);
        EXPECT_NE(what.find("2"), std::string::npos);
    }
}

TEST(CoincidenceRank, NoDichotomyIsUncertified) {
    // a and c share an image, as do b and d: every column has two letters out of four, so it is
    // neither a coincidence nor a permutation.
    const SubstitutionSystem s("twins", {'a', 'b', 'c', 'd'}, {{'a', "ab"}, {'b', "dc"}, {'c', "ab"}, {'d', "dc"}},
                               {{'a', 1.0}, {'b', 1.0}, {'c', 1.0}, {'d', 1.0}});
    const auto cr = coincidence_rank(s, 4);
    EXPECT_EQ(cr.cr_estimate, 2u);
    EXPECT_FALSE(cr.certified);
    EXPECT_FALSE(cr.note.empty());
}

TEST(CoincidenceRank, Json) {
    const auto j = coincidence_to_json(coincidence_rank(thue_morse(), 3));
    EXPECT_EQ(j.at("system"), "thue_morse");
    EXPECT_EQ(j.at("cr_estimate"), 2);
    EXPECT_EQ(j.at("certified"), true);
    EXPECT_EQ(j.at("per_power").size(), 3u);
}

TEST(Agreement, IdenticalPatternsReachTheCap) {
    const auto z = integers(100);
    const auto r = agreement_radius(z, z, {30.5, 0});
    EXPECT_TRUE(r.capped);
    EXPECT_DOUBLE_EQ(r.radius, 30.5);
    EXPECT_DOUBLE_EQ(r.cap, 30.5);
}

TEST(Agreement, MismatchAtCentreIsZero) {
    const auto z = integers(100);
    const auto w = PointPattern(1, {{0, 0}, {1, 0}, {2.5, 0}, {4, 0}}, Box{{0, 0}, {100, 0}});
    EXPECT_EQ(agreement_radius(z, w, {2.5, 0}).radius, 0.0);
}

TEST(Agreement, NearestMismatch) {
    const auto z = integers(100);
    std::vector<Point> pts;
    for (int i = 0; i <= 100; ++i) {
        if (i != 57) pts.push_back({static_cast<double>(i), 0});
    }
    const PointPattern holed(1, pts, z.window());
    const auto r = agreement_radius(z, holed, {50, 0});
    EXPECT_FALSE(r.capped);
    EXPECT_NEAR(r.radius, 7.0, 1e-9);
}

TEST(Agreement, Symmetric) {
    const auto a = tm_two_sided('1', '0', 2000);
    const auto b = tm_two_sided('0', '0', 2000);
    for (double c : {-300.5, -3.0, 0.0, 5.5, 40.0, 700.25}) {
        EXPECT_EQ(agreement_radius(a, b, {c, 0}).radius, agreement_radius(b, a, {c, 0}).radius) << c;
    }
}

TEST(Agreement, CentreOutsideWindow) {
    const auto z = integers(10);
    EXPECT_THROW(agreement_radius(z, z, {11, 0}), Error);
    EXPECT_THROW(agreement_radius(z, integers(5), {7, 0}), Error);
}

TEST(Agreement, ThueMorseOppositeSeedsDisagreeAtOrigin) {
    // 0.0 and 1.1 are letterwise complements, so the 1-positions differ next to the origin.
    const auto a = tm_two_sided('0', '0', 1000);
    const auto b = tm_two_sided('1', '1', 1000);
    const auto r = agreement_radius(a, b, {0, 0});
    EXPECT_FALSE(r.capped);
    EXPECT_LT(r.radius, 2.0);
}

TEST(Proximality, SelfCopy) {
    const auto z = integers(400);
    const auto r = proximality_probe(z, z, schedule(100, 1, 50));
    EXPECT_EQ(r.verdict, ProximalVerdict::proximal_evidence);
    EXPECT_EQ(r.steps_completed, 50u);
    for (const auto& s : r.agreement_radii) EXPECT_TRUE(s.agreement.capped);
}

TEST(Proximality, ThueMorseAsymptoticPair) {
    // 1.0 and 0.0 share the right half-line and differ on the left one.
    const auto a = tm_two_sided('1', '0', 4096);
    const auto b = tm_two_sided('0', '0', 4096);
    const auto r = proximality_probe(a, b, schedule(0, 2, 100));
    EXPECT_EQ(r.verdict, ProximalVerdict::proximal_evidence);
    const auto left = proximality_probe(a, b, schedule(-1000, -7.3, 40));
    EXPECT_NE(left.verdict, ProximalVerdict::proximal_evidence);
}

TEST(Proximality, ThueMorseCentresWithLongAgreement) {
    const auto a = tm_two_sided('1', '0', 4096);
    const auto b = tm_two_sided('0', '0', 4096);
    std::size_t long_ones = 0, total = 0;
    for (int x = -200; x <= 200; ++x) {
        ++total;
        if (agreement_radius(a, b, {static_cast<double>(x), 0}).radius >= 4) ++long_ones;
    }
    EXPECT_GT(long_ones, 0u);
    EXPECT_LT(long_ones, total);
}

TEST(Proximality, FibonacciShiftedIsDistal) {
    const auto f = cut_project(fibonacci_cut_project(), 0, 3000);
    const auto g = f.translated({1.0, 0.0});
    const auto r = proximality_probe(f, g, schedule(500, 17.31, 60));
    EXPECT_EQ(r.verdict, ProximalVerdict::distal_evidence);
    for (const auto& s : r.agreement_radii) EXPECT_GE(s.agreement.radius, 0.0);
}

TEST(Proximality, WindowExhausted) {
    const auto z = integers(20);
    const auto r = proximality_probe(z, z, std::vector<Point>(15, Point{10, 0}));
    EXPECT_EQ(r.verdict, ProximalVerdict::inconclusive);
    EXPECT_EQ(r.steps_completed, 10u);
    EXPECT_NE(r.note.find("window exhausted"), std::string::npos);
}

TEST(Proximality, Serialization) {
    const auto z = integers(50);
    const auto r = proximality_probe(z, z.relabeled("copy"), schedule(20, 1, 3));
    const auto j = proximality_to_json(r);
    EXPECT_EQ(j.at("verdict"), "proximal_evidence");
    EXPECT_EQ(j.at("evidence_grade"), "finite window");
    EXPECT_TRUE(j.at("pair").is_array());
    EXPECT_EQ(j.at("agreement_radii").size(), 3u);
    const auto csv = proximality_to_csv(r);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}
