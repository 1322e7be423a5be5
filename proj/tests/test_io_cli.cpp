#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli_app.hpp"
#include "frechet/io.hpp"
#include "fsd_render.hpp"

using namespace frechet;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("frechet_test_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

struct CliRun {
    int code;
    std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
    args.insert(args.begin(), "frechet");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = tools::run_cli(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

void write_text(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(CurveCsv, ParsesCommentsAndBlanks) {
    const Curve c = parse_curve_csv("# header\n0,0\n\n 1.5 , -2 \n+3,4e-1\n");
    ASSERT_EQ(c.vertex_count(), 3u);
    EXPECT_EQ(c.vertex(1), (Point{1.5, -2}));
    EXPECT_EQ(c.vertex(2), (Point{3, 0.4}));
}

TEST(CurveCsv, RejectsMalformed) {
    EXPECT_THROW(parse_curve_csv(""), CurveParseError);
    EXPECT_THROW(parse_curve_csv("1,2,3\n"), CurveParseError);
    EXPECT_THROW(parse_curve_csv("1;2\n"), CurveParseError);
    EXPECT_THROW(parse_curve_csv("1,abc\n"), CurveParseError);
    EXPECT_THROW(parse_curve_csv("nan,1\n"), CurveParseError);
    EXPECT_THROW(parse_curve_csv("inf,1\n"), CurveParseError);
    try {
        parse_curve_csv("0,0\n1,x\n");
        FAIL();
    } catch (const CurveParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
}

TEST(CurveJson, ParsesAndRejects) {
    const Curve c = parse_curve_json(R"({"points": [[0, 0], [1, 2.5]]})");
    EXPECT_EQ(c.vertex(1), (Point{1, 2.5}));
    EXPECT_THROW(parse_curve_json("{"), CurveParseError);
    EXPECT_THROW(parse_curve_json(R"({"points": []})"), CurveParseError);
    EXPECT_THROW(parse_curve_json(R"({"points": [[0]]})"), CurveParseError);
    EXPECT_THROW(parse_curve_json(R"([[0, 0]])"), CurveParseError);
    EXPECT_THROW(parse_curve_json(R"({"points": [["a", 0]]})"), CurveParseError);
}

TEST(CurveIo, RoundTripIsExact) {
    TempDir dir;
    std::mt19937_64 rng(4);
    const Curve c = random_walk(50, rng);
    for (const char* name : {"c.csv", "c.json"}) {
        write_curve(dir.file(name), c);
        const Curve back = read_curve(dir.file(name));
        ASSERT_EQ(back.vertex_count(), c.vertex_count());
        for (std::size_t k = 0; k < c.vertex_count(); ++k) EXPECT_EQ(back.vertex(k), c.vertex(k)) << name;
    }
    EXPECT_THROW(read_curve(dir.file("missing.csv")), CurveParseError);
}

TEST(Cli, DecideExitCodes) {
    TempDir dir;
    write_text(dir.file("a.csv"), "0,0\n1,0\n");
    write_text(dir.file("b.csv"), "0,1\n1,1\n");
    CliRun r = cli({"decide", dir.file("a.csv"), dir.file("b.csv"), "--delta", "1"});
    EXPECT_EQ(r.code, tools::kExitYes);
    EXPECT_EQ(r.out, "YES\n");
    r = cli({"decide", dir.file("a.csv"), dir.file("b.csv"), "--delta", "0.5", "--algo", "fast", "--tau", "2"});
    EXPECT_EQ(r.code, tools::kExitNo);
    EXPECT_EQ(r.out, "NO\n");
    r = cli({"decide", dir.file("a.csv"), dir.file("b.csv"), "--delta", "1", "--algo", "wordram", "--json"});
    EXPECT_EQ(r.code, tools::kExitYes);
    EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "YES");
}

TEST(Cli, UsageErrors) {
    TempDir dir;
    write_text(dir.file("a.csv"), "0,0\n1,0\n");
    write_text(dir.file("bad.csv"), "0,0\n1\n");
    EXPECT_EQ(cli({}).code, tools::kExitUsage);
    EXPECT_EQ(cli({"decide", dir.file("a.csv"), dir.file("a.csv")}).code, tools::kExitUsage);
    EXPECT_EQ(cli({"decide", dir.file("a.csv"), dir.file("a.csv"), "--delta", "-1"}).code, tools::kExitUsage);
    EXPECT_EQ(cli({"decide", dir.file("a.csv"), dir.file("bad.csv"), "--delta", "1"}).code, tools::kExitUsage);
    EXPECT_EQ(cli({"decide", dir.file("a.csv"), dir.file("a.csv"), "--delta", "1", "--algo", "magic"}).code,
              tools::kExitUsage);
    EXPECT_EQ(cli({"gen", "--kind", "zigzag", "--n", "3", "--out", dir.file("x.csv"), "--out", dir.file("y.csv")}).code,
              tools::kExitUsage);
}

TEST(Cli, ComputePrintsTwelveDecimals) {
    TempDir dir;
    write_text(dir.file("a.csv"), "0,0\n2,0\n");
    write_text(dir.file("b.csv"), "0,0\n1,1\n2,0\n");
    CliRun r = cli({"compute", dir.file("a.csv"), dir.file("b.csv")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1.000000000000\n");
    r = cli({"compute", dir.file("a.csv"), dir.file("b.csv"), "--algo", "bruteforce", "--json"});
    EXPECT_DOUBLE_EQ(nlohmann::json::parse(r.out)["distance"].get<double>(), 1.0);
}

TEST(Cli, GenIsDeterministic) {
    TempDir dir;
    EXPECT_EQ(cli({"gen", "--kind", "walk", "--n", "20", "--seed", "9", "--out", dir.file("a.csv")}).code, 0);
    EXPECT_EQ(cli({"gen", "--kind", "walk", "--n", "20", "--seed", "9", "--out", dir.file("b.csv")}).code, 0);
    EXPECT_EQ(cli({"gen", "--kind", "walk", "--n", "20", "--seed", "10", "--out", dir.file("c.csv")}).code, 0);
    EXPECT_EQ(read_text(dir.file("a.csv")), read_text(dir.file("b.csv")));
    EXPECT_NE(read_text(dir.file("a.csv")), read_text(dir.file("c.csv")));
    EXPECT_EQ(read_curve(dir.file("a.csv")).vertex_count(), 20u);
}

TEST(Cli, VerifyDetectsInjectedFault) {
    EXPECT_EQ(cli({"verify", "--trials", "5", "--nmax", "8", "--seed", "3"}).code, 0);
    EXPECT_EQ(cli({"verify", "--trials", "5", "--nmax", "8", "--seed", "3", "--inject-fault", "2"}).code,
              tools::kExitDisagree);
}

TEST(FsdExport, JsonMatchesDoorGrid) {
    TempDir dir;
    std::mt19937_64 rng(8);
    const Curve P = random_walk(6, rng), Q = random_walk(5, rng);
    write_curve(dir.file("p.csv"), P);
    write_curve(dir.file("q.csv"), Q);
    const CliRun r = cli({"fsd-export", dir.file("p.csv"), dir.file("q.csv"), "--delta", "1.5", "--json",
                       dir.file("f.json"), "--svg", dir.file("f.svg")});
    ASSERT_EQ(r.code, 0);
    const FsdDiagram d = tools::fsd_from_json(nlohmann::json::parse(read_text(dir.file("f.json"))));
    const DoorGrid g = build_door_grid(read_curve(dir.file("p.csv")), read_curve(dir.file("q.csv")), 1.5);
    ASSERT_EQ(d.doors.n_p, g.n_p);
    ASSERT_EQ(d.doors.n_q, g.n_q);
    for (std::size_t i = 0; i <= g.n_p; ++i)
        for (std::size_t j = 0; j < g.n_q; ++j) EXPECT_EQ(d.doors.vertical(i, j), g.vertical(i, j));
    for (std::size_t i = 0; i < g.n_p; ++i)
        for (std::size_t j = 0; j <= g.n_q; ++j) EXPECT_EQ(d.doors.horizontal(i, j), g.horizontal(i, j));
    EXPECT_EQ(d.verdict, decide_baseline(P, Q, 1.5));
    EXPECT_EQ(r.out, d.verdict ? "YES\n" : "NO\n");

    const std::string svg = read_text(dir.file("f.svg"));
    EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.rfind("<?xml", 0) == 0, true);
    auto count = [&](const std::string& needle) {
        std::size_t c = 0;
        for (auto p = svg.find(needle); p != std::string::npos; p = svg.find(needle, p + 1)) ++c;
        return c;
    };
    EXPECT_EQ(count("<svg"), count("</svg>"));
    EXPECT_EQ(count("<g"), count("</g>"));
}

TEST(FsdExport, JsonRoundTrip) {
    std::mt19937_64 rng(9);
    const Curve P = random_walk(5, rng), Q = random_walk(7, rng);
    const FsdDiagram d = export_fsd(P, Q, 2.0);
    const FsdDiagram back = tools::fsd_from_json(tools::fsd_to_json(d));
    EXPECT_EQ(tools::fsd_to_json(back), tools::fsd_to_json(d));
}
