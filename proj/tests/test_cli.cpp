#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "plateig/ball.hpp"
#include "plateig/errors.hpp"

using namespace plateig;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Data rows (manifest comments dropped), header first.
std::vector<std::vector<std::string>> rows(const std::string& csv) {
    std::vector<std::vector<std::string>> r;
    std::stringstream ss(csv);
    for (std::string line; std::getline(ss, line);) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
        r.push_back(cells);
    }
    return r;
}

std::string body(const std::string& csv) {
    std::string b;
    std::stringstream ss(csv);
    for (std::string line; std::getline(ss, line);)
        if (line.rfind("# timestamp", 0) != 0) b += line + "\n";
    return b;
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

}  // namespace

TEST(Cli, BallSpectrumUnitAreaDisk) {
    const auto r = run({"ball-spectrum", "--radius", "0.5641895835", "--dim", "2", "--alpha", "110", "--count", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[0], (std::vector<std::string>{"index", "lambda", "k", "multiplicity", "regime", "residual"}));
    EXPECT_NEAR(std::stod(t[1][1]), -1622.166, 1e-3);
    EXPECT_NE(r.out.find("# command: ball-spectrum"), std::string::npos);
    EXPECT_NE(r.out.find("# tool_version: "), std::string::npos);
}

TEST(Cli, BallSpectrumUnitDiskAndEmptyRequest) {
    const auto r = run({"ball-spectrum", "--alpha", "0", "--radius", "1", "--dim", "2", "--count", "1"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(std::stod(rows(r.out)[1][1]), 104.3631, 1e-4);
    // 15 significant digits.
    EXPECT_EQ(rows(r.out)[1][1].size(), std::string("104.363105456757").size());
    const auto e = run({"ball-spectrum", "--count", "0"});
    EXPECT_EQ(e.code, 0);
    EXPECT_EQ(rows(e.out).size(), 1u);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"ball-spectrum", "--bogus", "1"}).code, 2);
    EXPECT_EQ(run({"ball-spectrum", "--radius", "-1"}).code, 2);
    EXPECT_EQ(run({"navier", "--alpha-range", "5"}).code, 2);
    EXPECT_EQ(run({"mfs-solve", "--window", "1:2", "--shape", "ellipse:x"}).code, 2);
    EXPECT_EQ(run({"mfs-solve", "--window", "1:2", "--m", "8"}).code, 2);
    EXPECT_EQ(run({"ball-spectrum", "--help"}).code, 0);
}

TEST(Cli, BranchesAgreeWithBallSpectrumAtZero) {
    const auto b = run({"branches", "--alpha-range", "0:0:1", "--count", "4"});
    ASSERT_EQ(b.code, 0) << b.err;
    const auto s = run({"ball-spectrum", "--radius", "0.564189583547756", "--count", "4"});
    const auto tb = rows(b.out), ts = rows(s.out);
    ASSERT_EQ(tb.size(), 5u);
    EXPECT_EQ(tb[0], (std::vector<std::string>{"alpha", "k_index", "lambda", "shifted_lambda"}));
    EXPECT_NEAR(std::stod(tb[1][2]), std::stod(ts[1][1]), 1e-9 * std::stod(ts[1][1]));
    // Double eigenvalue of degree 1 fills k_index 2 and 3.
    EXPECT_EQ(tb[2][2], tb[3][2]);
}

TEST(Cli, BranchesShiftedCurvesAndSvg) {
    const std::string svg = temp_path("branches.svg");
    const auto b = run({"branches", "--alpha-range", "-200:1000:7", "--count", "3", "--shifted", "--svg", svg});
    ASSERT_EQ(b.code, 0) << b.err;
    const auto t = rows(b.out);
    ASSERT_EQ(t.size(), 1u + 7 * 3);
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double alpha = std::stod(t[i][0]);
        EXPECT_NEAR(std::stod(t[i][3]), std::stod(t[i][2]) + 0.25 * alpha * alpha, 1e-8 * (1 + alpha * alpha));
        EXPECT_GT(std::stod(t[i][3]), 0.0);
    }
    std::ifstream f(svg);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    EXPECT_NE(text.find("<polyline"), std::string::npos);
}

TEST(Cli, NavierRows) {
    const auto r = run({"navier", "--gammas-from", "disk", "--radius", "1", "--alpha-range", "0:60:61"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = rows(r.out);
    const double j01 = 2.404825557695773;
    int tangency = 0, breakpoints = 0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double alpha = std::stod(t[i][1]), lambda = std::stod(t[i][2]);
        if (t[i][0] == "curve" && alpha == 0.0) EXPECT_NEAR(lambda, std::pow(j01, 4), 1e-10);
        if (t[i][0] == "tangency") {
            ++tangency;
            EXPECT_NEAR(lambda, -0.25 * alpha * alpha, 1e-12 * alpha * alpha);
        }
        if (t[i][0] == "breakpoint") ++breakpoints;
    }
    EXPECT_GT(tangency, 2);
    EXPECT_GT(breakpoints, 2);
}

TEST(Cli, NavierFromFile) {
    const std::string path = temp_path("gammas.txt");
    std::ofstream(path) << "# three values\n1\n4 9\n";
    const auto r = run({"navier", "--gammas-from", path, "--alpha-range", "0:10:3"});
    ASSERT_EQ(r.code, 0) << r.err;
    bool found = false;
    for (const auto& row : rows(r.out))
        if (row[0] == "breakpoint" && row[1] == "5") {
            EXPECT_EQ(row[2], "-4");
            found = true;
        }
    EXPECT_TRUE(found);
}

TEST(Cli, MfsSolveMatchesBallAndEmptyWindow) {
    const auto r = run({"mfs-solve", "--shape", "disk", "--alpha", "110", "--window", "-1700:-1550", "--m", "300"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 2u);
    const double ref =
        ball::clamped_eigs(ball::BallProblem{1.0 / std::sqrt(std::numbers::pi), 2, 110.0}, 1).eigenvalues[0].lambda;
    EXPECT_NEAR(std::stod(t[1][2]), ref, 1e-6 * std::abs(ref));
    const auto e = run({"mfs-solve", "--shape", "disk", "--alpha", "110", "--window", "-1500:-1500", "--m", "64"});
    EXPECT_EQ(e.code, 0);
    EXPECT_EQ(rows(e.out).size(), 1u);
}

TEST(Cli, MfsSolveRefinementAndTrace) {
    const std::string trace = temp_path("trace.csv");
    const auto r = run({"mfs-solve", "--shape", "ellipse:0.9:0.6", "--window", "300:600", "--m", "120", "--refine",
                        "160,200", "--trace", trace, "--trace-points", "20"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 4u);
    const double a = std::stod(t[1][2]), b = std::stod(t[2][2]), c = std::stod(t[3][2]);
    EXPECT_EQ(t[3][0], "200");
    EXPECT_LT(std::abs(c - b), std::abs(b - a) + 1e-9 * std::abs(c));
    std::ifstream f(trace);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    EXPECT_EQ(rows(text).size(), 21u);
}

TEST(Cli, MfsSolveRefinementOnStoredOptimum) {
    // Descent output at alpha = 110; the concave waist wants sources closer than the default.
    const auto r = run({"mfs-solve", "--shape", std::string(PLATEIG_TEST_DATA) + "/optimum_alpha110.json", "--alpha",
                        "110", "--window", "-1800:-1770", "--m", "400", "--offset", "0.25", "--refine", "600,800"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto t = rows(r.out);
    ASSERT_EQ(t.size(), 4u);
    const double l400 = std::stod(t[1][2]), l600 = std::stod(t[2][2]), l800 = std::stod(t[3][2]);
    EXPECT_LE(std::abs(l800 - l600), 0.1 * std::abs(l600 - l400));
    // m = 1500 value of the same shape.
    EXPECT_NEAR(l800, -1786.2066427, 1e-6 * 1786.2);
    EXPECT_LT(std::stod(t[3][6]), 1e-4);
}

TEST(Cli, OptimizeIsDeterministicAndWritesShape) {
    const std::string shape = temp_path("seed.json");
    std::ofstream(shape) << cli::shape_to_json(FourierShape::perturbed_circle(0.56, 3, 0.05, 4).rescale_to_unit_area());
    const std::string best = temp_path("best.json"), svg = temp_path("best.svg");
    const std::vector<std::string> args{"optimize", "--alpha", "30", "--seeds", shape, "--P", "4",
                                        "--m", "100", "--iters", "1", "--shape-out", best, "--svg", svg};
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(body(a.out), body(b.out));
    EXPECT_EQ(rows(a.out).size(), 3u);
    std::ifstream f(best);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    const auto s = cli::shape_from_json(text);
    EXPECT_EQ(s.order(), 4);
    EXPECT_NEAR(s.area(), 1.0, 1e-12);
}

TEST(Cli, CriticalAlphaContract) {
    const auto same = run({"critical-alpha", "--lo", "120", "--hi", "120", "--P", "6", "--iters", "2"});
    ASSERT_EQ(same.code, 0) << same.err;
    const auto t = rows(same.out);
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t[1][0], "indicator");
    EXPECT_EQ(t[1][4], "true");
    EXPECT_EQ(t[2][1], "120");
    const auto none = run({"critical-alpha", "--lo", "110", "--hi", "120", "--P", "6", "--iters", "2"});
    EXPECT_EQ(none.code, 4);
}

TEST(Cli, ShapeJsonRoundTrip) {
    auto s = FourierShape::perturbed_circle(0.7, 2, 0.1, 5);
    s.b1[3] = 0.0123456789012345;
    const auto t = cli::shape_from_json(cli::shape_to_json(s));
    EXPECT_EQ(t.coefficients(), s.coefficients());
    EXPECT_THROW(cli::shape_from_json("{\"P\": 2, \"a1\": [1]}"), GeometryError);
}
