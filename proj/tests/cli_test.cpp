#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

// Runs the CLI with the given argument string; stderr is discarded.
CliRun cli(const std::string &args) {
    const std::string cmd = std::string("\"") + TRANSIT_HL_BIN + "\" " + args + " 2>/dev/null";
    CliRun r;
    FILE *p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string t1() { return std::string(TEST_DATA_DIR) + "/t1"; }
std::string t2() { return std::string(TEST_DATA_DIR) + "/t2"; }

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST(Cli, QueryT2) {
    CliRun r = cli("query --data " + t2() + " --from A --to D --time 0");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("arrival 00:04:10 (250)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("ride t3"), std::string::npos);
    CliRun restricted = cli("query --data " + t2() + " --algo raptor --from A --to D --time 00:00:00");
    EXPECT_NE(restricted.out.find("(400)"), std::string::npos) << restricted.out;
    for (std::string algo : {"csa", "hlcsa", "oracle"}) {
        CliRun x = cli("query --data " + t2() + " --algo " + algo + " --from A --to D");
        EXPECT_EQ(x.code, 0);
        EXPECT_NE(x.out.find(algo == "csa" ? "(400)" : "(250)"), std::string::npos) << algo << x.out;
    }
}

TEST(Cli, ParetoQuery) {
    CliRun r = cli("query --data " + t1() + " --algo hlmcraptor --from A --to D");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("trips 1  walk 120 s"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("trips 2  walk 30 s"), std::string::npos) << r.out;
}

TEST(Cli, Profile) {
    for (std::string algo : {"hlprraptor", "hlprcsa", "oracle"}) {
        CliRun r = cli("profile --data " + t1() + " --algo " + algo + " --from A --to D --from-time 0 --to-time 400");
        ASSERT_EQ(r.code, 0);
        EXPECT_EQ(r.out, "depart 00:03:00 (180)  arrive 00:06:40 (400)\n") << algo;
    }
    CliRun walk = cli("profile --data " + t1() + " --from A --to C");
    EXPECT_NE(walk.out.find("walk 120 s"), std::string::npos);
}

TEST(Cli, InputErrorsExitTwo) {
    EXPECT_EQ(cli("query --data " + t1() + " --from Q --to D").code, 2);
    EXPECT_EQ(cli("query --data /no/such/dir --from A --to D").code, 2);
    EXPECT_EQ(cli("query --data " + t1() + " --from A --to D --time 12:99:00").code, 2);
    EXPECT_EQ(cli("query --data " + t1() + " --from A --to D --algo fastest").code, 2);
    EXPECT_EQ(cli("query --data " + t1() + " --from A").code, 2);
    EXPECT_EQ(cli("frobnicate").code, 2);
    EXPECT_EQ(cli("bench --data " + t1() + " --queries /no/such/file").code, 2);
    EXPECT_EQ(cli("query --data " + t1() + " --labels /no/such/labels.bin --from A --to D").code, 2);
    EXPECT_EQ(cli("--help").code, 0);
}

TEST(Cli, LabelThenQuery) {
    auto dir = test_support::temp_dir("cli_label");
    CliRun r = cli("label --data " + t1() + " --out " + (dir / "l.bin").string());
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["vertices"], 5);
    ASSERT_TRUE(fs::exists(dir / "l.bin"));
    CliRun q = cli("query --data " + t1() + " --labels " + (dir / "l.bin").string() + " --from A --to D");
    EXPECT_NE(q.out.find("(400)"), std::string::npos);

    std::ofstream(dir / "broken.bin") << "THLHUB";
    EXPECT_EQ(cli("query --data " + t1() + " --labels " + (dir / "broken.bin").string() + " --from A --to D").code, 2);
}

TEST(Cli, BuildWritesLoadableData) {
    auto dir = test_support::temp_dir("cli_build");
    CliRun r = cli("build --data " + t2() + " --out " + (dir / "t2").string());
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["stops"], 4);
    EXPECT_EQ(j["trips"], 3);
    EXPECT_EQ(j["transfers"], 2);
    CliRun q = cli("query --data " + (dir / "t2").string() + " --from A --to D");
    EXPECT_NE(q.out.find("(250)"), std::string::npos) << q.out;
}

TEST(Cli, GenBenchGain) {
    auto dir = test_support::temp_dir("cli_bench");
    const std::string qfile = (dir / "q.tsv").string();
    ASSERT_EQ(cli("gen --data " + t2() + " --n 25 --seed 3 --out " + qfile).code, 0);
    EXPECT_EQ(cli("gen --data " + t2() + " --n 25 --seed 3").out, slurp(qfile));
    ASSERT_EQ(cli("gen --data " + t2() + " --kind rank --n 4 --seed 3").code, 0);

    CliRun b = cli("bench --data " + t2() + " --algo hlcsa --queries " + qfile + " --out " + (dir / "b.tsv").string());
    ASSERT_EQ(b.code, 0);
    auto j = nlohmann::json::parse(b.out);
    EXPECT_EQ(j["queries"], 25);
    EXPECT_EQ(j["deterministic"], true);
    for (const char *k : {"mean_us", "median_us", "p95_us"}) EXPECT_TRUE(j.contains(k));
    EXPECT_EQ(slurp(dir / "b.tsv").rfind("source\ttarget\tdep", 0), 0u);

    std::ofstream(dir / "one.tsv") << "source\ttarget\tdep\tdep_to\trank_band\nA\tD\t0\t0\t-1\n";
    CliRun g = cli("gain --data " + t2() + " --queries " + (dir / "one.tsv").string() + " --out " + (dir / "g.tsv").string());
    ASSERT_EQ(g.code, 0);
    auto gj = nlohmann::json::parse(g.out);
    EXPECT_DOUBLE_EQ(gj["average_gain"].get<double>(), 0.375);
    EXPECT_NE(slurp(dir / "g.tsv").find("A\tD\t0\t400\t250\t0.375"), std::string::npos);
}

TEST(Cli, GtfsServiceFilter) {
    auto dir = test_support::temp_dir("cli_gtfs");
    std::ofstream(dir / "stops.txt") << "stop_id,stop_name,stop_lat,stop_lon\nA,Alpha,48.85,2.35\nB,Beta,48.86,2.35\n";
    std::ofstream(dir / "trips.txt") << "route_id,service_id,trip_id\nr,weekday,x\nr,sunday,y\n";
    std::ofstream(dir / "stop_times.txt") << "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n"
                                             "x,08:00:00,08:00:00,A,1\nx,08:10:00,08:10:00,B,2\n"
                                             "y,07:00:00,07:00:00,A,1\ny,07:05:00,07:05:00,B,2\n";
    const std::string base = "query --data " + dir.string() + " --algo raptor --from A --to B --time 06:00:00";
    EXPECT_NE(cli(base).out.find("arrival 07:05:00"), std::string::npos);
    EXPECT_NE(cli(base + " --service weekday").out.find("arrival 08:10:00"), std::string::npos);
    CliRun b = cli("build --data " + dir.string() + " --service sunday --out " + (dir / "native").string());
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(nlohmann::json::parse(b.out)["trips"], 1);
}
