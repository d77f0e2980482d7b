#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ffdyn/cli.hpp"

using namespace ffdyn;

namespace {

struct RunResult {
    int code;
    std::string out, diag;
};

RunResult run(const RunConfig& cfg) {
    std::ostringstream out, diag;
    const int code = run_command(cfg, out, diag);
    return {code, out.str(), diag.str()};
}

RunConfig base(const std::string& cmd) {
    RunConfig cfg;
    cfg.subcommand = cmd;
    return cfg;
}

int cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"ffdyn"};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_cli(int(argv.size()), argv.data());
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("csv begins with a config comment and a header") {
    RunConfig cfg = base("fix-wreath");
    cfg.d = 2;
    cfg.n_lo = 1;
    cfg.n_hi = 3;
    const RunResult r = run(cfg);
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("# ffdyn ", 0) == 0);
    CHECK(line.find("cmd=fix-wreath") != std::string::npos);
    std::getline(lines, line);
    CHECK(line == "d,n,fix_num,fix_den,bound_num,bound_den,method,bound_holds");
    std::getline(lines, line);
    CHECK(line == "2,1,1,2,2,3,recursion,1");
    std::getline(lines, line);
    CHECK(line == "2,2,3,8,1,2,recursion,1");
    std::getline(lines, line);
    CHECK(line == "2,3,39,128,2,5,recursion,1");
}

TEST_CASE("image-decay golden rows") {
    RunConfig cfg = base("image-decay");
    cfg.p = 3;
    cfg.j_lo = cfg.j_hi = 1;
    cfg.map_text = "2; 0 0 1; 1";
    cfg.n = 3;
    const RunResult r = run(cfg);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("3,2,2; 0 0 1; 1,0,4\n") != std::string::npos);
    CHECK(r.out.find("3,2,2; 0 0 1; 1,1,3\n") != std::string::npos);
    CHECK(r.out.find("3,2,2; 0 0 1; 1,2,3\n") != std::string::npos);
}

TEST_CASE("identical config gives byte-identical output, any worker count") {
    RunConfig cfg = base("avg-periodic");
    cfg.p = 3;
    cfg.j_lo = 1;
    cfg.j_hi = 2;
    cfg.d = 2;
    cfg.kind = MapKind::rational;
    const RunResult once = run(cfg);
    const RunResult twice = run(cfg);
    CHECK(once.code == 0);
    CHECK(once.out == twice.out);

    RunConfig wide = cfg;
    wide.workers = 4;
    CHECK(run(wide).out == once.out);

    // sampled mode too
    cfg.mode = "sampled";
    cfg.samples = 300;
    cfg.seed = 5;
    wide = cfg;
    wide.workers = 4;
    const std::string a = run(cfg).out;
    CHECK(a == run(cfg).out);
    CHECK(a == run(wide).out);
}

TEST_CASE("auto mode falls back to sampling past the budget") {
    RunConfig cfg = base("avg-periodic");
    cfg.p = 5;
    cfg.j_lo = cfg.j_hi = 2;
    cfg.d = 2;
    cfg.budget = 50000;  // 9.75M exhaustive maps exceed this
    cfg.samples = 200;
    cfg.seed = 1;
    const RunResult r = run(cfg);
    REQUIRE(r.code == 0);
    CHECK(r.out.find(",sampled,") != std::string::npos);

    cfg.mode = "exhaustive";
    CHECK(run(cfg).code == 3);
}

TEST_CASE("gcd warning goes to the diagnostic stream") {
    RunConfig cfg = base("avg-periodic");
    cfg.p = 2;
    cfg.d = 2;
    cfg.kind = MapKind::polynomial;
    const RunResult r = run(cfg);
    CHECK(r.code == 0);
    CHECK(r.diag.find("warning: gcd(q, d!) != 1") != std::string::npos);
    CHECK(r.out.find("warning") == std::string::npos);  // never into the CSV
}

TEST_CASE("exit codes: validation and budget") {
    RunConfig cfg = base("avg-periodic");
    cfg.p = 4;  // not prime
    CHECK(run(cfg).code == 2);

    cfg = base("bound-check");
    cfg.p = 2;
    cfg.d = 2;  // gcd(2, 2) != 1: refused
    CHECK(run(cfg).code == 2);

    cfg = base("bad-locus");
    cfg.p = 3;
    cfg.j_lo = cfg.j_hi = 2;
    cfg.d = 2;
    cfg.budget = 1000;
    CHECK(run(cfg).code == 3);

    cfg = base("nonsense");
    CHECK(run(cfg).code == 2);
}

TEST_CASE("full argv round trip with --out") {
    const std::string path = "/tmp/ffdyn_test_out.csv";
    std::remove(path.c_str());
    CHECK(cli({"fix-wreath", "--d", "2", "--n-range", "1:2", "--out", path.c_str()}) == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(all.find("2,2,3,8,1,2,recursion,1") != std::string::npos);
    std::remove(path.c_str());

    CHECK(cli({"fix-wreath", "--d", "2", "--n", "oops"}) == 2);
    CHECK(cli({"no-such-command"}) == 2);
}

TEST_CASE("config file provides defaults, flags override") {
    const std::string path = "/tmp/ffdyn_test_cfg.ini";
    {
        std::ofstream cfgfile(path);
        cfgfile << "# comment line\n";
        cfgfile << "d = 2\n";
        cfgfile << "n-range = 1:2\n";
    }
    const std::string out1 = "/tmp/ffdyn_cfg_a.csv", out2 = "/tmp/ffdyn_cfg_b.csv";
    CHECK(cli({"fix-wreath", "--config", path.c_str(), "--out", out1.c_str()}) == 0);
    std::ifstream in1(out1);
    std::string all1((std::istreambuf_iterator<char>(in1)), std::istreambuf_iterator<char>());
    CHECK(all1.find("2,2,3,8") != std::string::npos);  // n-range from the file

    // command line overrides the file
    CHECK(cli({"fix-wreath", "--config", path.c_str(), "--n-range", "3:3", "--out",
               out2.c_str()}) == 0);
    std::ifstream in2(out2);
    std::string all2((std::istreambuf_iterator<char>(in2)), std::istreambuf_iterator<char>());
    CHECK(all2.find("2,3,39,128") != std::string::npos);
    CHECK(all2.find("2,1,1,2") == std::string::npos);
    std::remove(path.c_str());
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

}  // TEST_SUITE
