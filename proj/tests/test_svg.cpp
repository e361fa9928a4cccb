#include <orbk/gkm.hpp>
#include <orbk/svg.hpp>
#include <orbk/toric.hpp>

#include <gtest/gtest.h>

#include <regex>

using namespace orbk;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

// Crude balance check; the ctest script parses the CLI output with a real XML parser.
void expect_balanced(const std::string& svg) {
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_EQ(count(svg, "<svg"), 1u);
    EXPECT_EQ(count(svg, "</svg>"), 1u);
    EXPECT_EQ(count(svg, "<text"), count(svg, "</text>"));
    EXPECT_EQ(svg.find("nan"), std::string::npos);
    EXPECT_EQ(svg.find("inf"), std::string::npos);
}

}  // namespace

TEST(Svg, Numbers) {
    EXPECT_EQ(svg::num(1.0), "1.00");
    EXPECT_EQ(svg::num(-0.0001), "0.00");
    EXPECT_EQ(svg::num(2.345), "2.35");
    EXPECT_EQ(svg::escape("a<b&\"c\">"), "a&lt;b&amp;&quot;c&quot;&gt;");
}

TEST(Svg, ToricTeardrop) {
    const ToricModel m(IntMatrix{{1, 2}}, {q(2)});
    const RatVec xi = find_generic_xi(m.weights(), m.level());
    const std::string s = svg::toric_figure(m, korb_report(m, xi), "teardrop");
    expect_balanced(s);
    EXPECT_NE(s.find("teardrop"), std::string::npos);
    EXPECT_EQ(s, svg::toric_figure(m, korb_report(m, xi), "teardrop"));
}

TEST(Svg, ToricRankTwoAndThree) {
    const ToricModel cp2(IntMatrix{{1, 1, 1}}, {q(1)});
    const ToricModel hirz(IntMatrix{{1, 1, 1, 0}, {0, 0, 1, 1}}, {q(3), q(1)});
    const ToricModel k3(IntMatrix{{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}, {q(3), q(2), q(1)});
    for (const auto& m : {cp2, hirz, k3}) {
        const RatVec xi = find_generic_xi(m.weights(), m.level());
        expect_balanced(svg::toric_figure(m, korb_report(m, xi), "model"));
    }
}

TEST(Svg, GkmA2) {
    const GkmGraph g = from_root_system({'A', 2, {q(1), q(1)}});
    const CircleSubgroup c({1, 3});
    const auto xs = crossing_edges(g, c, q(1, 2));
    const std::string s = svg::gkm_figure(g, c, q(1, 2), xs, "A2");
    expect_balanced(s);
    EXPECT_EQ(count(s, "<line"), g.edges.size() + 1);  // edges plus the level line
    EXPECT_EQ(count(s, "Z/"), xs.size());
}

TEST(Svg, GkmProjectedB3) {
    const GkmGraph g = from_root_system({'B', 3, {q(1), q(0), q(0)}});
    const CircleSubgroup c({3, 1, 1});
    const std::string s = svg::gkm_figure(g, c, q(1, 2), crossing_edges(g, c, q(1, 2)), "B3");
    expect_balanced(s);
    EXPECT_NE(s.find("projection"), std::string::npos);
}
