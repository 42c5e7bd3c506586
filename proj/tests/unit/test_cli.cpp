#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "splitnorm_cli/commands.hpp"
#include "splitnorm_cli/function_spec.hpp"
#include "splitnorm_cli/json_io.hpp"
#include "support/generators.hpp"
#include "support/shapes.hpp"

using namespace splitnorm;
using namespace splitnorm::cli;
using namespace splitnorm::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
    json j() const { return json::parse(out); }
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("splitnorm_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    fs::path path_;
};

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST(FunctionSpec, Terms) {
    EXPECT_EQ(parse_function_spec("ind:-1,1"), chi(q(-1), q(1)));
    EXPECT_EQ(parse_function_spec("tent:-1,0,1"), tent());
    EXPECT_EQ(parse_function_spec("poly:[0,2]:1,-1/2"), PiecewisePoly::on_interval(q(0), q(2), Poly({GRat(1), GRat(q(-1, 2))})));
    EXPECT_EQ(parse_function_spec("ind:-1,1 + ind:10,11 + ind:-11,-10"), two_bump());
    EXPECT_EQ(parse_function_spec("3/2*ind:0,1"), chi(q(0), q(1)) * GRat(q(3, 2)));
    EXPECT_EQ(parse_function_spec("ind:0,1 + i*ind:-1,0"), chi(q(0), q(1)) + chi(q(-1), q(0)) * GRat(q(0), q(1)));
    EXPECT_EQ(parse_function_spec("(1/2-3i)*ind:0,1"), chi(q(0), q(1)) * GRat(q(1, 2), q(-3)));
    EXPECT_EQ(parse_function_spec("ind:-1,1 - ind:-1,0"), chi(q(0), q(1)));
    EXPECT_EQ(parse_function_spec("-(ind:0,1 + ind:0,1)"), chi(q(0), q(1)) * GRat(-2));
    EXPECT_EQ(parse_function_spec("tent:0,1,3"),
              PiecewisePoly({q(0), q(1), q(3)}, {P({0, 1}), Poly({GRat(q(3, 2)), GRat(q(-1, 2))})}));
}

TEST(FunctionSpec, Errors) {
    for (const char* bad : {"", "ind:1", "ind:1,0", "tent:0,0,1", "blob:0,1", "ind:0,1 +", "ind:0.5,1", "poly:[0,1]:",
                            "(ind:0,1", "ind:0,1/0"}) {
        expect_error(ErrorCode::ParseError, [&] { parse_function_spec(bad); });
    }
}

TEST(JsonIo, FunctionRoundTrip) {
    Gen g(51);
    for (int k = 0; k < 40; ++k) {
        PiecewisePoly f = g.piecewise(q(2), 4, 3, true);
        json j = to_json(f);
        EXPECT_EQ(piecewise_from_json(json::parse(dump(j))), f);
    }
    EXPECT_EQ(piecewise_from_json(to_json(PiecewisePoly())), PiecewisePoly());
}

TEST(JsonIo, SpecToJsonToFunctionIsIdentity) {
    for (const char* spec : {"ind:-1,1", "tent:-1,0,1 + 2*ind:0,1/2", "poly:[-1,1]:0,0,1 - i*ind:0,1"}) {
        PiecewisePoly f = parse_function_spec(spec);
        EXPECT_EQ(piecewise_from_json(to_json(f)), f) << spec;
    }
}

TEST(JsonIo, FloatFormatting) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(2.0), "2.0");
    EXPECT_EQ(dump(json(std::nan(""))), "null");
}

TEST(JsonIo, CoefficientFiles) {
    json j = json::parse(R"j({"A": 2, "coeffs": {"-1": "1/2", "0": "1", "2": "(1+i)"}})j");
    CoeffSeq c = coeff_seq_from_json(j);
    EXPECT_EQ(c.A, 2);
    EXPECT_EQ(c.coeffs.at(-1), GRat(q(1, 2)));
    EXPECT_EQ(c.coeffs.at(2), GRat(q(1), q(1)));
    EXPECT_EQ(coeff_seq_from_json(to_json(c)).coeffs, c.coeffs);
}

TEST(ParseExact, DecimalsAndRatios) {
    EXPECT_EQ(parse_exact("0.25"), q(1, 4));
    EXPECT_EQ(parse_exact("-1.5"), q(-3, 2));
    EXPECT_EQ(parse_exact("0.75"), q(3, 4));
    EXPECT_EQ(parse_exact("010"), q(10));
    EXPECT_EQ(parse_exact("7/21"), q(1, 3));
    expect_error(ErrorCode::ParseError, [] { parse_exact("1.2.3"); });
}

TEST(Cli, ProfileIndicator) {
    Outcome r = invoke({"profile", "ind:-1,1", "--p", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = r.j();
    EXPECT_EQ(j["constant_from"], "1/2");
    EXPECT_EQ(j["t0"], "1/2");
    EXPECT_EQ(j["tail_value"], "4");
    EXPECT_EQ(j["monotone"], true);
    EXPECT_EQ(j["theorem_holds"], true);
    EXPECT_EQ(j["newt_matches_tail"], true);
}

TEST(Cli, ProfileTwoBumpWindow) {
    Outcome r = invoke({"profile", "ind:-1,1 + ind:10,11 + ind:-11,-10", "--p", "4", "--window", "4,5"});
    ASSERT_EQ(r.code, 0) << r.err;
    json j = r.j();
    EXPECT_EQ(j["monotone"], false);
    json w = j["window"];
    EXPECT_EQ(w["monotone"], false);
    Rat lo = parse_rat(w["witness"][0].get<std::string>()), hi = parse_rat(w["witness"][1].get<std::string>());
    EXPECT_GT(lo, q(4));
    EXPECT_LT(hi, q(5));
}

TEST(Cli, ProfilePlancherel) {
    Outcome r = invoke({"profile", "ind:-1,1", "--p", "2", "--emit", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "t,value,value_float");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        EXPECT_NE(line.find(",2,"), std::string::npos) << line;
    }
    EXPECT_GT(rows, 0);
}

TEST(Cli, ProfileRejectsOddP) {
    Outcome r = invoke({"profile", "ind:-1,1", "--p", "3"});
    EXPECT_EQ(r.code, 2);
    json e = json::parse(r.err);
    EXPECT_EQ(e["error"], "OddP");
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, NormCubicPower) {
    Outcome r = invoke({"norm", "ind:-1,1", "--p", "3", "--t", "0.25", "--t", "1", "--err", "1e-5"});
    ASSERT_EQ(r.code, 0) << r.err;
    json res = r.j()["results"];
    ASSERT_EQ(res.size(), 2u);
    EXPECT_NEAR(res[0]["value_pth_power"].get<double>(), 2.6247, 0.01);
    EXPECT_NEAR(res[1]["value_pth_power"].get<double>(), 2.6124, 0.01);
    EXPECT_EQ(r.j()["engine"], "numeric");
}

TEST(Cli, NormExactAndNumericAgree) {
    Outcome r = invoke({"norm", "tent:-1,0,1", "--p", "4", "--t-range", "0,1,3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json results = r.j()["results"];
    for (const auto& e : results) EXPECT_EQ(e["within_error"], true) << e.dump();
    Outcome p2 = invoke({"norm", "ind:-1,1", "--p", "2", "--t", "0", "--engine", "exact"});
    EXPECT_EQ(p2.j()["results"][0]["exact"], "2");
}

TEST(Cli, NormBudgetExceeded) {
    Outcome r = invoke({"norm", "ind:-1,1", "--p", "3", "--t", "1/4", "--err", "1e-13", "--node-cap", "300"});
    EXPECT_EQ(r.code, 4);
    json res = r.j()["results"][0];
    EXPECT_EQ(res["met_target"], false);
    EXPECT_NEAR(res["value_pth_power"].get<double>(), 2.6247, 0.05);
}

TEST(Cli, ClassS) {
    EXPECT_EQ(invoke({"class-s", "tent:-1,0,1"}).j()["member"], true);
    Outcome two = invoke({"class-s", "ind:-1,1 + ind:10,11 + ind:-11,-10", "--radius", "0"});
    EXPECT_EQ(two.j()["member"], false);
    EXPECT_TRUE(two.j()["witness"].is_array());
    EXPECT_EQ(two.j()["sufficient"]["holds"], false);
    Outcome nested = invoke({"class-s", "ind:-3,3 + ind:-2,-1 + ind:1,2", "--radius", "3/2"});
    EXPECT_EQ(nested.j()["member"], true);
    EXPECT_EQ(nested.j()["sufficient"]["holds"], true);
    Outcome complex = invoke({"class-s", "i*ind:-1,1"});
    EXPECT_EQ(complex.code, 2);
    EXPECT_EQ(json::parse(complex.err)["error"], "NonRealInput");
}

TEST(Cli, MultConstants) {
    json j = invoke({"mult", "constants", "--p", "4"}).j();
    EXPECT_NEAR(j["n_p"].get<double>(), 2.4142, 1e-4);
    EXPECT_NEAR(j["c_p"].get<double>(), 1.4142, 1e-4);
    EXPECT_EQ(invoke({"mult", "constants", "--p", "1"}).code, 2);
}

TEST(Cli, MultBounds) {
    Outcome sq = invoke({"mult", "bounds", "square", "--p", "4"});
    ASSERT_EQ(sq.code, 0) << sq.err;
    EXPECT_NEAR(sq.j()["lower"].get<double>(), (1 + std::sqrt(2.0)) * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(sq.j()["upper"].get<double>(), std::pow(6.0, 0.25) * 2 * std::sqrt(2.0), 1e-12);

    Outcome gate = invoke({"mult", "bounds", "split_lower", "--p", "4", "--t", "1", "--ell", "0"});
    EXPECT_EQ(gate.code, 3);
    Outcome missing = invoke({"mult", "bounds", "split_lower", "--p", "4", "--t", "1"});
    EXPECT_EQ(missing.code, 2);
    EXPECT_EQ(json::parse(missing.err)["error"], "MissingInput");

    Outcome all = invoke({"mult", "bounds", "all", "--p", "4", "--preset", "tent", "--t", "1", "--real-preserving"});
    ASSERT_EQ(all.code, 0) << all.err;
    int applicable = 0;
    const json reports = all.j()["reports"];
    for (const auto& rep : reports) {
        if (!rep["applicable"].get<bool>()) continue;
        ++applicable;
        if (!rep["lower"].is_null() && !rep["upper"].is_null()) {
            EXPECT_LE(rep["lower"].get<double>(), rep["upper"].get<double>());
        }
    }
    EXPECT_GT(applicable, 3);
}

TEST(Cli, MultEstimate) {
    Outcome r = invoke({"mult", "estimate", "halfline", "--p", "4", "--N", "4096"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_GE(r.j()["estimate"].get<double>(), 0.95 * std::sqrt(2.0));
    EXPECT_EQ(invoke({"mult", "estimate", "halfline", "--p", "4", "--N", "1000"}).code, 2);
}

TEST(Cli, MultEstimateCheckpoint) {
    TempDir dir;
    std::string ck = (dir / "best.json").string();
    Outcome first = invoke({"mult", "estimate", "halfline", "--p", "3", "--N", "256", "--iterations", "10", "--checkpoint", ck});
    ASSERT_EQ(first.code, 0) << first.err;
    ASSERT_TRUE(fs::exists(ck));
    Outcome resumed = invoke({"mult", "estimate", "halfline", "--p", "3", "--N", "256", "--iterations", "10", "--init", ck});
    ASSERT_EQ(resumed.code, 0) << resumed.err;
    EXPECT_GE(resumed.j()["estimate"].get<double>(), first.j()["estimate"].get<double>());
}

TEST(Cli, ExactPositive) {
    Outcome r = invoke({"mult", "exact-positive", "2*tent:-1,0,1", "--p", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_DOUBLE_EQ(r.j()["m_norm"].get<double>(), 2.0);
    EXPECT_NEAR(r.j()["m_plus_norm"].get<double>(), 2 * std::sqrt(2.0), 1e-14);
    Outcome unverified = invoke({"mult", "exact-positive", "ind:-1,1", "--p", "4"});
    EXPECT_EQ(unverified.code, 3);
    EXPECT_EQ(json::parse(unverified.err)["error"], "UnverifiedPositivity");
    EXPECT_EQ(invoke({"mult", "exact-positive", "ind:-1,1", "--p", "4", "--assert-positive"}).code, 0);
}

TEST(Cli, Series) {
    TempDir dir;
    write(dir / "c0.json", R"({"A": 0, "coeffs": {"0": "1"}})");
    Outcome r = invoke({"series", (dir / "c0.json").string(), "--p", "4", "--t-range", "0,4"});
    ASSERT_EQ(r.code, 0) << r.err;
    json values = r.j()["values"];
    ASSERT_EQ(values.size(), 5u);
    EXPECT_EQ(values[0]["value"], "1");
    for (std::size_t k = 1; k < values.size(); ++k) EXPECT_EQ(values[k]["value"], "3/8");

    write(dir / "parseval.json", R"({"A": 1, "coeffs": {"-1": "1", "1": "1"}})");
    Outcome p2 = invoke({"series", (dir / "parseval.json").string(), "--p", "2", "--t-range", "0,3", "--emit", "csv"});
    EXPECT_EQ(std::count(p2.out.begin(), p2.out.end(), '\n'), 5);
    EXPECT_EQ(p2.out.find(",3/8"), std::string::npos);

    write(dir / "a1.json", R"({"A": 1, "coeffs": {"-1": "2", "0": "-1", "1": "3"}})");
    json a1 = invoke({"series", (dir / "a1.json").string(), "--p", "4", "--t-range", "0,6"}).j();
    EXPECT_EQ(a1["threshold"], 1);
    EXPECT_EQ(a1["constant"], true);

    EXPECT_EQ(invoke({"series", (dir / "missing.json").string(), "--p", "4"}).code, 2);
}

TEST(Cli, ParseErrorsAndHelp) {
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
    EXPECT_EQ(invoke({"profile", "ind:-1,1"}).code, 2);
    Outcome bad = invoke({"profile", "ind:0", "--p", "4"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(json::parse(bad.err)["error"], "ParseError");
    Outcome help = invoke({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("profile"), std::string::npos);
}

TEST(Cli, ByteIdenticalRuns) {
    const std::vector<std::vector<std::string>> commands = {
        {"profile", "ind:-1,1 + ind:10,11 + ind:-11,-10", "--p", "4"},
        {"norm", "tent:-1,0,1", "--p", "3", "--t", "1/2", "--err", "1e-4"},
        {"mult", "estimate", "halfline", "--p", "4", "--N", "512", "--starts", "2", "--seed", "7"},
        {"mult", "bounds", "all", "--p", "6", "--preset", "tent", "--t", "3"},
    };
    for (const auto& args : commands) {
        Outcome a = invoke(args), b = invoke(args);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out) << args[0];
    }
}

TEST(Cli, OutputFileIsWritten) {
    TempDir dir;
    std::string path = (dir / "profile.json").string();
    Outcome r = invoke({"profile", "ind:-1,1", "--p", "4", "--output", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(read_file(path))["tail_value"], "4");
}

TEST(ExperimentConfig, JsonRoundTrip) {
    ExperimentConfig c;
    c.command = "norm";
    c.spec = "ind:-1,1";
    c.p = 3;
    c.t = {"1/4", "5"};
    c.engine = "numeric";
    c.seed = 12;
    c.error_target = 1e-5;
    c.extra = {"--node-cap", "100000"};
    json j = c.to_json();
    ExperimentConfig back = ExperimentConfig::from_json(json::parse(dump(j)));
    EXPECT_EQ(back.to_json(), j);
    EXPECT_EQ(back.to_args(), c.to_args());
    std::vector<std::string> expected = {"norm", "ind:-1,1", "--p", "3.0", "--t", "1/4", "--t", "5", "--engine", "numeric",
                                         "--seed", "12", "--err", "1.0000000000000001e-05", "--node-cap", "100000"};
    EXPECT_EQ(c.to_args(), expected);
}

TEST(Batch, RunsJobsAndSummarizes) {
    TempDir dir;
    std::string out1 = (dir / "one.json").string();
    json cfg;
    cfg["jobs"] = json::array({
        json{{"command", "profile"}, {"spec", "ind:-1,1"}, {"p", 4}, {"output", out1}},
        json{{"command", "norm"}, {"spec", "ind:-1,1"}, {"p", 3}, {"t", {"1/4", "1", "5"}}, {"error_target", 1e-5}},
        json{{"command", "mult constants"}, {"p", 4}},
        json{{"command", "profile"}, {"spec", "ind:-1,1"}, {"p", 3}},
    });
    write(dir / "batch.json", dump(cfg));
    setenv("SPLITNORM_THREADS", "3", 1);
    Outcome r = invoke({"batch", (dir / "batch.json").string()});
    unsetenv("SPLITNORM_THREADS");
    EXPECT_EQ(r.code, 2);  // worst job: the odd-p profile
    json jobs = r.j()["jobs"];
    ASSERT_EQ(jobs.size(), 4u);
    EXPECT_EQ(jobs[0]["exit_code"], 0);
    EXPECT_EQ(json::parse(read_file(out1))["constant_from"], "1/2");
    json norm = jobs[1]["result"]["results"];
    EXPECT_NEAR(norm[2]["value_pth_power"].get<double>(), 2.6116, 0.01);
    EXPECT_NEAR(jobs[2]["result"]["c_p"].get<double>(), std::sqrt(2.0), 1e-15);
    EXPECT_EQ(jobs[3]["exit_code"], 2);
    EXPECT_TRUE(jobs[3].contains("error"));

    Outcome again = invoke({"batch", (dir / "batch.json").string()});
    EXPECT_EQ(again.out, r.out);

    setenv("SPLITNORM_THREADS", "zero", 1);
    EXPECT_EQ(invoke({"batch", (dir / "batch.json").string()}).code, 2);
    unsetenv("SPLITNORM_THREADS");
}

TEST(Executable, ExitCodes) {
    const std::string exe = SPLITNORM_EXE;
    auto status = [&](const std::string& args) {
        int raw = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    EXPECT_EQ(status("profile 'ind:-1,1' --p 4"), 0);
    EXPECT_EQ(status("profile 'ind:-1,1' --p 5"), 2);
    EXPECT_EQ(status("mult bounds split_lower --p 4 --t 1 --ell 0"), 3);
    EXPECT_EQ(status("norm 'ind:-1,1' --p 3 --t 1/4 --err 1e-13 --node-cap 300"), 4);
}
