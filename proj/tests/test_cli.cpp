#include <doctest.h>

#include "gowerslab/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using gowerslab::cli::main_entry;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("cli: invalid configuration exits 2 naming the field") {
    CHECK(main_entry({"measure", "--n", "101", "--delta1", "0.9", "--delta2", "0.2",
                      "--out", "cli_bad.json"}) == 2);
    CHECK(main_entry({"bogus"}) == 2);
    CHECK(main_entry({"verify", "nothere"}) == 2);
    CHECK(main_entry({"corners", "count", "--rule", "zigzag"}) == 2);
    std::remove("cli_bad.json");
}

TEST_CASE("cli: verify gcs is byte-identical across runs") {
    const std::vector<std::string> args{"verify", "gcs",      "--d",   "2",
                                        "--n",    "24",       "--trials", "5",
                                        "--seed", "7",        "--out",  "gcs_a.json"};
    CHECK(main_entry(args) == 0);
    std::vector<std::string> args2 = args;
    args2.back() = "gcs_b.json";
    CHECK(main_entry(args2) == 0);
    CHECK(slurp("gcs_a.json") == slurp("gcs_b.json"));
    CHECK(!slurp("gcs_a.json").empty());
    std::remove("gcs_a.json");
    std::remove("gcs_b.json");
}

TEST_CASE("cli: corners count on an empty input file") {
    {
        std::ofstream out("cli_empty_points.txt");
    }
    CHECK(main_entry({"corners", "count", "--input", "cli_empty_points.txt", "--n", "100",
                      "--out", "cli_empty.json"}) == 0);
    const std::string rep = slurp("cli_empty.json");
    CHECK(rep.find("\"nondegenerate\": 0") != std::string::npos);
    std::remove("cli_empty_points.txt");
    std::remove("cli_empty.json");
}

TEST_CASE("cli: config file keys with command-line override") {
    {
        std::ofstream cfg("cli_cfg.ini");
        cfg << "limit=30\nout=cli_cfg_a.json\n";
    }
    CHECK(main_entry({"sieve", "--config", "cli_cfg.ini"}) == 0);
    CHECK(slurp("cli_cfg_a.json").find("\"prime_count\": 10") != std::string::npos);
    // command line wins over the file
    CHECK(main_entry({"sieve", "--config", "cli_cfg.ini", "--limit", "10", "--out",
                      "cli_cfg_b.json"}) == 0);
    CHECK(slurp("cli_cfg_b.json").find("\"prime_count\": 4") != std::string::npos);
    std::remove("cli_cfg.ini");
    std::remove("cli_cfg_a.json");
    std::remove("cli_cfg_b.json");
}

TEST_CASE("cli: measure emits csv with dot decimals") {
    CHECK(main_entry({"measure", "--n", "101", "--omega-cutoff", "0", "--b", "0", "--out",
                      "cli_m.json", "--csv", "cli_m.csv"}) == 0);
    const std::string csv = slurp("cli_m.csv");
    CHECK(csv.rfind("n,nu\n", 0) == 0);
    CHECK(csv.find(',') != std::string::npos);
    CHECK(csv.find(';') == std::string::npos);
    std::remove("cli_m.json");
    std::remove("cli_m.csv");
}
