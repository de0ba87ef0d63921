#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "rsharp/app.hpp"

using namespace rsharp;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string out;
};

Run cli(const std::string& args) {
    const std::string cmd = std::string(RSHARP_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    while (const auto n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / ("rsharp_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Json, NumberFormatting) {
    EXPECT_EQ(format_number(1), "1");
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    Json j;
    j["x"] = std::numeric_limits<double>::quiet_NaN();
    j["v"] = Json::array({1.5, 2});
    EXPECT_EQ(dump(j, -1), "{\"x\":null,\"v\":[1.5,2]}");
}

TEST(Json, ConstantsFieldOrder) {
    const auto text = dump(to_json(compute_constants(2, 1)), -1);
    EXPECT_EQ(text.find("\"p\""), 1u);
    EXPECT_NE(text.find("\"R\":\"undefined\""), std::string::npos);
    EXPECT_LT(text.find("\"S\""), text.find("\"a\""));
}

TEST(Json, SummaryNeedsReports) {
    EXPECT_THROW(report_summary({}), UsageError);
}

TEST(Signals, CsvAndJsonRoundTrip) {
    SplitMix64 rng(51);
    const auto sig = synthesize(random_trig_spectrum(32, 6, rng));
    const auto a = signal_from_csv(signal_to_csv(sig));
    const auto b = signal_from_json(dump(signal_to_json(sig)));
    for (std::size_t j = 0; j < sig.size(); ++j) {
        EXPECT_EQ(a[j], sig[j]);
        EXPECT_EQ(b[j], sig[j]);
    }
    EXPECT_THROW(signal_from_csv("index,re,im\n0,1\n"), UsageError);
}

TEST(Config, FileThenFlags) {
    const auto file = parse_config_text("# comment\np = 3,4\nc=2 # trailing\nformat=csv\n");
    const auto cfg = build_config(file, {{"command", "constants"}, {"c", "0.5"}});
    EXPECT_EQ(cfg.command, "constants");
    EXPECT_EQ(*cfg.ps, (std::vector<double>{3, 4}));
    EXPECT_EQ(*cfg.cs, (std::vector<double>{0.5}));
    EXPECT_EQ(cfg.format, "csv");
    EXPECT_THROW(parse_config_text("novalue\n"), UsageError);
    EXPECT_THROW(build_config({{"bogus", "1"}}, {}), UsageError);
    EXPECT_THROW(build_config({}, {{"p", "3,x"}}), UsageError);
    EXPECT_THROW(build_config({}, {{"format", "xml"}}), UsageError);
}

TEST(App, InProcessExitCodes) {
    std::ostringstream out, err;
    RunConfig cfg;
    cfg.command = "nope";
    EXPECT_EQ(app::run(cfg, out, err), app::exit_usage);
    cfg.command = "constants";
    cfg.ps = std::vector<double>{1.0};
    EXPECT_EQ(app::run(cfg, out, err), app::exit_usage);
    cfg.ps = std::vector<double>{3.0};
    EXPECT_EQ(app::run(cfg, out, err), app::exit_ok);
}

TEST(Cli, ConstantsJson) {
    const auto r = cli("constants --p 3 --c 1");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("\"a\": 1.4142135623730951"), std::string::npos);
    EXPECT_NE(r.out.find("\"R\": 1"), std::string::npos);
}

TEST(Cli, CertifyStatuses) {
    const auto ok = cli("certify --kernel theorem --p 3 --c 2 --margin 1e-8 --grid-r 0.05:20:256:log --grid-t 0:3.141592653589793:256");
    EXPECT_EQ(ok.status, 0);
    EXPECT_NE(ok.out.find("\"fail\": 0"), std::string::npos);
    const auto bad = cli("certify --kernel counterexample --p 3 --format csv");
    EXPECT_EQ(bad.status, 1);
    EXPECT_EQ(bad.out.rfind("kernel,p,c,x0,value\n", 0), 0u);
    EXPECT_GT(std::count(bad.out.begin(), bad.out.end(), '\n'), 100);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli("frobnicate").status, 2);
    EXPECT_EQ(cli("certify --kernel nope").status, 2);
    EXPECT_EQ(cli("constants --p 1").status, 2);
    EXPECT_EQ(cli("constants --grid-r 1:0:3").status, 2);
    EXPECT_EQ(cli("certify --kernel discriminant --p 2").status, 2);
    EXPECT_EQ(cli("constants --config /nonexistent/file").status, 2);
    EXPECT_EQ(cli("").status, 2);
}

TEST(Cli, ByteIdenticalOutputs) {
    const std::string args = "projections --seed 7 --count 20 --p 3 --c 2 --format csv";
    const auto a = cli(args);
    const auto b = cli(args);
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out, cli("projections --seed 8 --count 20 --p 3 --c 2 --format csv").out);
    const std::string scan = "scan --kernel lemma --p 3 --c 0.5 --grid-r 0.1:10:16:log --grid-t -3:3:16";
    const auto s1 = cli(scan + " --threads 1");
    EXPECT_EQ(s1.status, 0);
    EXPECT_EQ(s1.out, cli(scan + " --threads 3").out);
}

TEST(Cli, ConfigFileAndAtomicOutput) {
    const auto dir = temp_dir();
    const auto conf = dir / "run.conf";
    std::ofstream(conf) << "command=constants\np=3\nc=1\nformat=csv\n";
    const auto out = dir / "constants.csv";
    const auto r = cli("constants --config " + conf.string() + " --c 2 --out " + out.string());
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(r.out.empty());
    const auto text = slurp(out);
    EXPECT_EQ(text.rfind("p,c,q,S,R,a,b,A,B\n3,2,", 0), 0u);
    for (const auto& e : fs::directory_iterator(dir)) {
        EXPECT_TRUE(e.path() == conf || e.path() == out) << e.path();
    }
    fs::remove_all(dir);
}

TEST(Cli, SignalFileProjection) {
    const auto dir = temp_dir();
    const auto path = dir / "sig.json";
    const auto sig = CircleSignal::from_function(64, [](double t) { return std::polar(1.0, -t); });
    std::ofstream(path) << dump(signal_to_json(sig));
    const auto r = cli("projections --signal " + path.string() + " --p 2 --c 4 --format csv");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("0,2,4,2,2,1"), std::string::npos) << r.out;
    fs::remove_all(dir);
}

TEST(Cli, ExtremalAndTabulate) {
    const auto e = cli("extremal --p 3 --c 1 --gamma 0.3 --N 4096 --format csv");
    EXPECT_EQ(e.status, 0);
    EXPECT_NE(e.out.find("3,1,0.29999999999999999,1.29830352899152"), std::string::npos) << e.out;
    EXPECT_NE(e.out.find(",0.848517380280"), std::string::npos) << e.out;
    const auto h = cli("tabulate-h --p 3 --grid-t 0:3.141592653589793:3 --format csv");
    EXPECT_EQ(h.status, 0);
    EXPECT_EQ(h.out.rfind("p,t,h\n3,0,", 0), 0u);
}

TEST(Cli, ProofChecksPass) {
    const auto r = cli("proof-checks --p 3");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("\"fail\": 0"), std::string::npos);
}
