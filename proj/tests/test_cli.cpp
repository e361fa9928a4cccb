#include <orbk/cli.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using orbk::io::Json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

std::string fixture(const std::string& name) { return std::string(ORBK_FIXTURE_DIR) + "/" + name; }

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "orbk");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = orbk::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string temp(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("orbk_test_" + name)).string();
}

void expect_error(const Result& r, int code, const std::string& type) {
    EXPECT_EQ(r.code, code) << r.out;
    const Json j = Json::parse(r.out);
    ASSERT_TRUE(j.contains("error")) << r.out;
    EXPECT_EQ(j["error"]["code"], code);
    EXPECT_EQ(j["error"]["type"], type);
    EXPECT_FALSE(r.err.empty());
}

}  // namespace

TEST(Cli, ToricTeardrop) {
    const Result r = run({"toric", "analyze", "-i", fixture("teardrop.json")});
    ASSERT_EQ(r.code, 0) << r.out;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["total_rank"], 5);
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, ToricEmptyLevel) {
    const Result r = run({"toric", "analyze", "-i", fixture("teardrop_empty.json")});
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["total_rank"], 0);
    EXPECT_TRUE(j["sectors"].empty());
}

TEST(Cli, ToricErrors) {
    const Result dup = run({"toric", "analyze", "-i", fixture("duplicate_ray.json")});
    expect_error(dup, 3, "non_regular_level");
    EXPECT_EQ(Json::parse(dup.out)["error"]["support"], Json::array({1, 2}));

    const Result improper = run({"toric", "analyze", "-i", fixture("line_improper.json")});
    expect_error(improper, 4, "not_proper");
    EXPECT_EQ(Json::parse(improper.out)["error"]["ray"], Json::array({1, 1}));

    expect_error(run({"toric", "analyze", "-i", fixture("teardrop.json"), "--xi", "1,2"}), 2, "non_generic_xi");
    expect_error(run({"toric", "analyze", "-i", fixture("teardrop.json"), "--xi", "1"}), 2, "invalid_input");
    expect_error(run({"toric", "analyze", "-i", fixture("missing.json")}), 2, "invalid_input");
    expect_error(run({"toric", "analyze", "-i", fixture("a2.json")}), 2, "invalid_input");
    expect_error(run({"toric", "analyze"}), 2, "usage");
    expect_error(run({"frobnicate"}), 2, "usage");
}

TEST(Cli, Help) {
    const Result r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("toric"), std::string::npos);
}

TEST(Cli, GkmRootSystems) {
    const Result a2 = run({"gkm", "analyze", "-i", fixture("a2.json"), "--circle", "1,3", "--level", "1/2"});
    ASSERT_EQ(a2.code, 0) << a2.out;
    const Json j = Json::parse(a2.out);
    EXPECT_EQ(j["crossings"].size(), 5u);
    EXPECT_EQ(j["total_rank"], 92);

    const Result b2 = run({"gkm", "analyze", "-i", fixture("b2.json"), "--circle", "2,1", "--level", "3/2"});
    ASSERT_EQ(b2.code, 0);
    EXPECT_EQ(Json::parse(b2.out)["crossings"].size(), 3u);
    EXPECT_EQ(Json::parse(b2.out)["total_rank"], 14);

    const Result graph = run({"gkm", "from-roots", "-i", fixture("b3.json")});
    ASSERT_EQ(graph.code, 0);
    const Json g = Json::parse(graph.out);
    EXPECT_EQ(g["kind"], "gkm");
    EXPECT_EQ(g["vertices"].size(), 6u);
}

TEST(Cli, GkmGraphRoundTrip) {
    // The emitted graph document is itself valid gkm input.
    const std::string path = temp("a2_graph.json");
    ASSERT_EQ(run({"gkm", "from-roots", "-i", fixture("a2.json"), "--json", path}).code, 0);
    const Result direct = run({"gkm", "analyze", "-i", fixture("a2.json"), "--circle", "1,3", "--level", "1/2"});
    const Result via = run({"gkm", "analyze", "-i", path, "--circle", "1,3", "--level", "1/2"});
    EXPECT_EQ(via.code, 0);
    EXPECT_EQ(direct.out, via.out);
    std::filesystem::remove(path);
}

TEST(Cli, GkmErrors) {
    const Result bad = run({"gkm", "analyze", "-i", fixture("a2.json"), "--circle", "1,2", "--level", "1/2"});
    expect_error(bad, 5, "inadmissible_circle");
    EXPECT_FALSE(Json::parse(bad.out)["error"]["edges"].empty());
    const Result hit = run({"gkm", "analyze", "-i", fixture("b2.json"), "--circle", "2,1", "--level", "1"});
    expect_error(hit, 3, "non_regular_level");
    EXPECT_EQ(Json::parse(hit.out)["error"]["vertex"], "(0,1)");
    expect_error(run({"gkm", "analyze", "-i", fixture("a2.json"), "--circle", "2,4", "--level", "1/2"}), 2,
                 "invalid_input");
    expect_error(run({"gkm", "analyze", "-i", fixture("a2.json"), "--level", "1/2"}), 2, "invalid_input");
    expect_error(run({"gkm", "from-roots", "-i", fixture("teardrop.json")}), 2, "invalid_input");
}

TEST(Cli, Chart) {
    const Result check = run({"chart", "check", "-i", fixture("b3_chart.json")});
    ASSERT_EQ(check.code, 0);
    const Json c = Json::parse(check.out);
    EXPECT_TRUE(c["passes"].get<bool>());
    EXPECT_EQ(c["restricted_weights"], Json::parse("[[-1,-1,-1,-1,-1],[0,-1,1,0,0]]"));

    const Result analyze = run({"chart", "analyze", "-i", fixture("b3_chart.json")});
    ASSERT_EQ(analyze.code, 0);
    EXPECT_EQ(Json::parse(analyze.out)["total_rank"], 7);

    EXPECT_EQ(run({"chart", "check", "-i", fixture("b3_chart.json"), "--xi", "-1,-1,-1,-1,-1"}).code, 0);
    const Result neg = run({"chart", "check", "-i", fixture("line_chart.json"), "--xi", "1,-1"});
    EXPECT_EQ(neg.code, 4);
    const Json n = Json::parse(neg.out);
    EXPECT_FALSE(n["passes"].get<bool>());
    EXPECT_EQ(n["error"]["code"], 4);
    expect_error(run({"chart", "analyze", "-i", fixture("line_chart.json"), "--xi", "1,-1"}), 4, "not_proper");
}

TEST(Cli, Oracle) {
    EXPECT_EQ(run({"oracle", "sectors", "-i", fixture("teardrop.json")}).out,
              run({"toric", "analyze", "-i", fixture("teardrop.json")}).out);
    EXPECT_EQ(run({"oracle", "sectors", "-i", fixture("a2.json"), "--circle", "1,3", "--level", "1/2"}).out,
              run({"gkm", "analyze", "-i", fixture("a2.json"), "--circle", "1,3", "--level", "1/2"}).out);

    const Result cone = run({"oracle", "cone", "-i", fixture("cone_query.json")});
    ASSERT_EQ(cone.code, 0);
    EXPECT_TRUE(Json::parse(cone.out)["member"].get<bool>());
    EXPECT_TRUE(Json::parse(cone.out)["agree"].get<bool>());

    const Result rec = run({"oracle", "recession", "-i", fixture("line_improper.json")});
    ASSERT_EQ(rec.code, 0);
    EXPECT_EQ(Json::parse(rec.out)["certificate"]["counterexample_ray"], Json::array({1, 1}));
    const Result farkas = run({"oracle", "recession", "-i", fixture("line_proper.json")});
    EXPECT_TRUE(Json::parse(farkas.out)["certificate"].contains("y"));

    expect_error(run({"oracle", "sectors", "-i", fixture("oversized.json")}), 6, "oracle_bounds_exceeded");
    expect_error(run({"oracle", "recession", "-i", fixture("teardrop.json")}), 2, "invalid_input");
}

TEST(Cli, JsonAndSvgFilesAreDeterministic) {
    const std::vector<std::vector<std::string>> commands = {
        {"toric", "analyze", "-i", fixture("teardrop.json")},
        {"toric", "analyze", "-i", fixture("weighted_123.json")},
        {"gkm", "analyze", "-i", fixture("a2.json"), "--circle", "1,3", "--level", "1/2"},
        {"gkm", "from-roots", "-i", fixture("b3.json"), "--circle", "3,1,1", "--level", "1/2"},
        {"chart", "analyze", "-i", fixture("b3_chart.json")},
    };
    int i = 0;
    for (auto cmd : commands) {
        const std::string json = temp("det" + std::to_string(i) + ".json");
        const std::string svg = temp("det" + std::to_string(i) + ".svg");
        cmd.insert(cmd.end(), {"--json", json, "--svg", svg});
        ASSERT_EQ(run(cmd).code, 0);
        const std::string j1 = slurp(json), s1 = slurp(svg);
        ASSERT_EQ(run(cmd).code, 0);
        EXPECT_FALSE(j1.empty());
        EXPECT_FALSE(s1.empty());
        EXPECT_EQ(j1, slurp(json));
        EXPECT_EQ(s1, slurp(svg));
        std::filesystem::remove(json);
        std::filesystem::remove(svg);
        ++i;
    }
}
