// End-to-end checks of the command-line tool as a subprocess: the pipeline
// writes its report files, generate/select round-trip through CSV, and bad
// arguments exit nonzero with an error on stderr.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vibsel/synthdata.hpp"

using namespace vibsel;

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args, const std::string& redirect = "> /dev/null 2>&1") {
    const std::string cmd = std::string("\"") + VIBSEL_CLI_PATH + "\" " + args + " " + redirect;
    return std::system(cmd.c_str());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(static_cast<bool>(in));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("pipeline subcommand writes report, chart and manifest") {
    const std::string dir = "cli_out_tmp";
    fs::remove_all(dir);

    const int rc = run_cli(
        "pipeline --dataset gear --route freq --method both --revs 6 --points 256 "
        "--k 3,5 --seeds 1,2 --final-iters 30 --ard-cycles 1 --ard-iters 20 --out-dir " +
        dir);
    REQUIRE(rc == 0);

    const std::string csv = read_file(dir + "/results_freq.csv");
    CHECK(count_lines(csv) == 3);  // header + one row per k
    CHECK(csv.rfind("Number of inputs,PCA Classification,ARD Classification\n", 0) == 0);

    CHECK(read_file(dir + "/trend_freq.svg").find("<svg") != std::string::npos);
    CHECK(read_file(dir + "/manifest.txt").find("command=pipeline") != std::string::npos);

    fs::remove_all(dir);
}

TEST_CASE("generate then select round-trips through dataset CSVs") {
    for (const char* f : {"cli_gen_tmp.csv", "cli_sel_tmp.csv", "manifest.txt"}) fs::remove(f);

    REQUIRE(run_cli("generate --dataset cylinder --seed 7 --out cli_gen_tmp.csv") == 0);
    const Dataset full = load_csv("cli_gen_tmp.csv");
    CHECK(full.inputs.rows() == 264);
    CHECK(full.inputs.cols() == 200);
    CHECK(read_file("manifest.txt").find("command=generate") != std::string::npos);

    REQUIRE(run_cli("select --in cli_gen_tmp.csv --method ard --k 10 --seed 3 "
                    "--ard-cycles 1 --ard-iters 40 --out cli_sel_tmp.csv") == 0);
    const Dataset sel = load_csv("cli_sel_tmp.csv");
    CHECK(sel.inputs.rows() == 264);
    CHECK(sel.inputs.cols() == 10);
    CHECK(sel.labels.cols() == 3);
    CHECK(sel.meta.name == "cylinder_ard");
    // each command rewrites the manifest for its own outputs
    CHECK(read_file("manifest.txt").find("command=select") != std::string::npos);

    for (const char* f : {"cli_gen_tmp.csv", "cli_sel_tmp.csv", "manifest.txt"}) fs::remove(f);
}

TEST_CASE("invalid arguments exit nonzero with an error line") {
    fs::remove("cli_err_gen.csv");
    REQUIRE(run_cli("generate --dataset gear --revs 2 --points 64 --out cli_err_gen.csv") == 0);

    const int rc = run_cli("select --in cli_err_gen.csv --method pca --k 0 --out cli_err_sel.csv",
                           "> /dev/null 2> cli_err_tmp.txt");
    CHECK(rc != 0);
    const std::string err = read_file("cli_err_tmp.txt");
    CHECK(err.find("error:") != std::string::npos);
    CHECK(err.find("invalid k") != std::string::npos);

    for (const char* f : {"cli_err_gen.csv", "cli_err_sel.csv", "cli_err_tmp.txt", "manifest.txt"})
        fs::remove(f);
}
