#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stlf/comparison.hpp"
#include "stlf/csv_io.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Json = nlohmann::json;

namespace {

const fs::path kWork{STLF_WORK_DIR};

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args)
{
    fs::create_directories(kWork);
    const auto out = kWork / "stdout.txt";
    const auto err = kWork / "stderr.txt";
    const std::string cmd = std::string("\"") + STLF_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                            err.string() + "\"";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write_series(const std::string& name, const std::vector<double>& v)
{
    fs::create_directories(kWork);
    const auto p = kWork / name;
    std::ofstream os(p);
    os << "time,load\n";
    const auto start = stlf::io::parse_timestamp("2020-01-01 00:00");
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << stlf::io::format_timestamp(start + std::chrono::seconds(1800 * static_cast<long>(i))) << ','
           << stlf::io::format_double(v[i]) << '\n';
    }
    return p;
}

std::vector<double> read_column(const fs::path& p, std::size_t col)
{
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    std::vector<double> out;
    while (std::getline(in, line)) out.push_back(std::stod(stlf::io::split_csv_line(line).at(col)));
    return out;
}

std::size_t line_count(const std::string& text)
{
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

const std::string kSmallTrain = " --order 12 --window 96 --layers 2 --nodes 10 20";

}  // namespace

TEST_CASE("decompose a two-tone window")
{
    std::vector<double> v(512);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double t = static_cast<double>(i);
        v[i] = 2.0 * std::sin(2.0 * testsupport::kPi * 20.0 * t / 512.0) +
               std::cos(2.0 * testsupport::kPi * 120.0 * t / 512.0);
    }
    const auto in = write_series("two_tone.csv", v);
    const auto dir = kWork / "decompose";
    fs::remove_all(dir);
    const auto r = run("decompose -i " + in.string() + " --value-column load --time-column time --num-components 2 -o " +
                       dir.string());
    REQUIRE(r.status == 0);
    CHECK(fs::exists(dir / "filter_bank.csv"));
    CHECK_FALSE(fs::exists(dir / "component_2.csv"));
    const auto c0 = read_column(dir / "component_0.csv", 1);
    const auto c1 = read_column(dir / "component_1.csv", 1);
    REQUIRE(c0.size() == v.size());
    REQUIRE(c1.size() == v.size());
    double sum_err = 0.0, low_err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        sum_err = std::max(sum_err, std::abs(c0[i] + c1[i] - v[i]));
        low_err = std::max(low_err, std::abs(c0[i] - 2.0 * std::sin(2.0 * testsupport::kPi * 20.0 * i / 512.0)));
    }
    CHECK(sum_err <= 1e-8);
    CHECK(low_err <= 1e-8);
    const auto j = Json::parse(slurp(dir / "decompose.json"));
    CHECK(j["reconstruction_max_abs_error"].get<double>() <= 1e-8);

    const auto one = kWork / "decompose_one";
    fs::remove_all(one);
    REQUIRE(run("decompose -i " + in.string() + " --value-column load --num-components 1 -o " + one.string()).status == 0);
    const auto c = read_column(one / "component_0.csv", 1);
    REQUIRE(c.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK_THAT(c[i], WithinAbs(v[i], 1e-12));
}

TEST_CASE("malformed input exits nonzero and names the line")
{
    fs::create_directories(kWork);
    {
        std::ofstream os(kWork / "bad.csv");
        os << "value\n1\n2\nthree\n4\n";
    }
    const auto r = run("describe -i " + (kWork / "bad.csv").string());
    CHECK(r.status == 3);
    CHECK_THAT(r.err, ContainsSubstring("line 4"));
    CHECK(run("describe -i " + (kWork / "absent.csv").string()).status == 5);
    CHECK(run("train -i " + (kWork / "bad.csv").string() + " --layers 0").status != 0);
    CHECK(run("frobnicate").status == 2);
}

TEST_CASE("train, reproduce and forecast")
{
    const auto in = write_series("load.csv", testsupport::synthetic_load(600, 21));
    const std::string common = "--seed 5 train -i " + in.string() + " --value-column load --time-column time" + kSmallTrain;
    const auto a = kWork / "train_a";
    const auto b = kWork / "train_b";
    fs::remove_all(a);
    fs::remove_all(b);
    REQUIRE(run(common + " -o " + a.string()).status == 0);
    REQUIRE(run(common + " -o " + b.string()).status == 0);
    for (const char* f : {"model.json", "report.json", "report.txt", "forecasts_test.csv", "tuning_trace.csv"}) {
        INFO(f);
        CHECK(slurp(a / f) == slurp(b / f));
    }
    const auto report = Json::parse(slurp(a / "report.json"));
    CHECK(report["model"] == "EWTMea-edRVFL");
    CHECK(report["feature_dim"] == 36);
    CHECK(report["feature_layout"] == "raw:12;ewt_0:12;ewt_1:12");

    // metrics recomputable from the emitted forecasts
    const auto actual = read_column(a / "forecasts_test.csv", 1);
    const auto pred = read_column(a / "forecasts_test.csv", 2);
    double sq = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) sq += (pred[i] - actual[i]) * (pred[i] - actual[i]);
    CHECK_THAT(std::sqrt(sq / static_cast<double>(actual.size())),
               WithinAbs(report["metrics"]["test"]["rmse"].get<double>(), 1e-9));

    const auto fc = kWork / "forecast.csv";
    REQUIRE(run("forecast -i " + in.string() + " --value-column load --time-column time --model-file " +
                (a / "model.json").string() + " --start 500 --horizon 37 -o " + fc.string())
                .status == 0);
    const auto text = slurp(fc);
    CHECK(text.rfind("t,time,forecast,actual\n", 0) == 0);
    CHECK(line_count(text) == 38);
    const auto f = read_column(fc, 2);
    CHECK_THAT(f[0], WithinAbs(pred[20], 1e-9 * std::abs(pred[20])));

    const auto mismatch = run("forecast -i " + in.string() + " --value-column load --model-file " +
                              (a / "model.json").string() + " --order 48");
    CHECK(mismatch.status == 3);
    CHECK_THAT(mismatch.err, ContainsSubstring("order"));
}

TEST_CASE("persistence report")
{
    const auto in = write_series("load_p.csv", testsupport::synthetic_load(500, 22));
    const auto dir = kWork / "train_p";
    fs::remove_all(dir);
    REQUIRE(run("train -m persistence -i " + in.string() + " --value-column load -o " + dir.string()).status == 0);
    const auto report = Json::parse(slurp(dir / "report.json"));
    CHECK_THAT(report["metrics"]["train"]["mase"].get<double>(), WithinAbs(1.0, 1e-12));
    CHECK_FALSE(fs::exists(dir / "tuning_trace.csv"));
}

TEST_CASE("compare the published error table")
{
    const auto dir = kWork / "compare";
    fs::remove_all(dir);
    const auto r = run("compare --errors " + std::string(STLF_FIXTURE_DIR) + "/published_rmse.csv -o " + dir.string());
    REQUIRE(r.status == 0);
    const auto j = Json::parse(slurp(dir / "comparison.json"));
    REQUIRE(j["models"][0] == "Persistence");
    REQUIRE(j["models"][14] == "EWTMea-edRVFL");
    CHECK_THAT(j["average_ranks"][0].get<double>(), WithinAbs(14.65, 1e-12));
    CHECK_THAT(j["average_ranks"][14].get<double>(), WithinAbs(2.15, 1e-12));
    CHECK(j["critical_distance"].get<double>() == stlf::stats::nemenyi_cd(15, 20, 0.05));
    CHECK(j["friedman"]["p_value"].get<double>() < 1e-20);
    CHECK(fs::exists(dir / "rank_diagram.txt"));
    const auto pw = slurp(dir / "pairwise_p.csv");
    CHECK(line_count(pw) == 16);
    CHECK_THAT(pw, ContainsSubstring(",-1"));

    fs::create_directories(kWork);
    {
        std::ofstream os(kWork / "same.csv");
        os << "dataset,A,B,C\nd1,1,1,1\nd2,2,2,2\nd3,5,5,5\n";
        std::ofstream rag(kWork / "ragged.csv");
        rag << "dataset,A,B,C\nd1,1,2,3\nd2,2,2\n";
    }
    const auto same = kWork / "compare_same";
    REQUIRE(run("compare --errors " + (kWork / "same.csv").string() + " -o " + same.string()).status == 0);
    const auto s = Json::parse(slurp(same / "comparison.json"));
    CHECK(s["friedman"]["p_value"].get<double>() == 1.0);
    CHECK(s["pairwise_p"]["data"][1].get<double>() == 0.9);
    CHECK(s["pairwise_p"]["data"][0].get<double>() == -1.0);
    CHECK(run("compare --errors " + (kWork / "ragged.csv").string() + " -o " + same.string()).status == 3);
}

TEST_CASE("compare assembled from reports")
{
    const auto dir = kWork / "compare_reports";
    fs::remove_all(dir);
    std::string reports;
    for (int d = 0; d < 2; ++d) {
        const auto in = write_series("ds" + std::to_string(d) + ".csv", testsupport::synthetic_load(500, 30 + d));
        const auto out = dir / ("run" + std::to_string(d));
        REQUIRE(run("train -m persistence -m rvfl -m mea-edrvfl -i " + in.string() + " --value-column load -o " +
                    out.string() + kSmallTrain)
                    .status == 0);
        for (const char* m : {"Persistence", "RVFL", "Mea-edRVFL"}) reports += " " + (out / m / "report.json").string();
    }
    REQUIRE(run("compare --reports" + reports + " --metric mase -o " + (dir / "cmp").string()).status == 0);
    const auto j = Json::parse(slurp(dir / "cmp" / "comparison.json"));
    CHECK(j["datasets"] == Json::array({"ds0", "ds1"}));
    CHECK(j["models"].size() == 3);
}

TEST_CASE("printed configuration round-trips")
{
    const auto in = write_series("cfg.csv", testsupport::synthetic_load(200, 23));
    const auto first = run("--seed 9 train -i " + in.string() + " --value-column load --order 24 --nodes 5 7 --print-config");
    REQUIRE(first.status == 0);
    CHECK_THAT(first.out, ContainsSubstring("seed = 9"));
    CHECK_THAT(first.out, ContainsSubstring("order = 24"));
    {
        std::ofstream os(kWork / "run.toml");
        os << first.out;
    }
    const auto second = run("--config " + (kWork / "run.toml").string() + " --print-config train");
    REQUIRE(second.status == 0);
    CHECK(second.out == first.out);
    // flags override file values
    const auto third = run("--config " + (kWork / "run.toml").string() + " train --order 36 --print-config");
    CHECK_THAT(third.out, ContainsSubstring("order = 36"));
}

TEST_CASE("describe")
{
    fs::create_directories(kWork);
    {
        std::ofstream os(kWork / "small.csv");
        os << "value\n1\n2\n3\n4\n10\n7\n7\n2\n";
    }
    const auto r = run("describe -i " + (kWork / "small.csv").string() + " --json");
    REQUIRE(r.status == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["max"] == 10.0);
    CHECK_THAT(j["std"].get<double>(), WithinAbs(3.1622776601683795, 1e-12));
    CHECK(run("describe -i " + (kWork / "small.csv").string()).status == 0);
}
