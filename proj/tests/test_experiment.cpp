#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "randq/acceptance.hpp"
#include "randq/catalog.hpp"
#include "randq/experiment.hpp"

using namespace randq;

namespace {

ExperimentConfig parse(const std::string& text)
{
    std::istringstream in(text);
    return parse_config(in);
}

std::string config_error_field(const std::string& text)
{
    try {
        parse(text).validate();
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

std::string config_error_message(const std::string& text)
{
    try {
        parse(text).validate();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

std::vector<std::map<std::string, std::string>> read_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    std::vector<std::map<std::string, std::string>> rows;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::map<std::string, std::string> row;
        for (const std::string& h : header) {
            std::getline(ss, cell, ',');
            row[h] = cell;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string csv_of(const ExperimentConfig& c, int workers = 1)
{
    std::ostringstream out;
    write_csv(out, c, run_experiment(c, workers));
    return out.str();
}

const char* kBooleanConfig = R"(# Boolean summation at three accuracies
problem = boolean-sum
variants = deterministic, randomized
epsilon = 0.2, 0.1, 0.05
delta = 0.25
size = 256
omega_draws = 40
seed = 17
)";

} // namespace

TEST_CASE("config parsing")
{
    const ExperimentConfig c = parse(kBooleanConfig);
    CHECK(c.problem == "boolean-sum");
    CHECK(c.variants == std::vector<std::string>{"deterministic", "randomized"});
    CHECK(c.epsilons == std::vector<double>{0.2, 0.1, 0.05});
    CHECK(c.size == 256);
    CHECK(c.seed == 17u);
    CHECK_NOTHROW(c.validate());
    CHECK(c.hash().size() == 16);
    CHECK(parse(std::string(kBooleanConfig) + "\n# trailing comment\n").hash() == c.hash());
    CHECK(parse(std::string(kBooleanConfig) + "csv = out.csv\n").hash() == c.hash());
}

TEST_CASE("config errors name the field")
{
    CHECK(config_error_message("problem = boolean-sum\nepsilon = 0.9\nseed = 1\n") == "epsilon must lie in (0, 0.5)");
    CHECK(config_error_field("problem = boolean-sum\nepsilon = 0.9\nseed = 1\n") == "epsilon");
    CHECK(config_error_field("problem = boolean-sum\nepsilon = 0\nseed = 1\n") == "epsilon");
    CHECK(config_error_field("problem = boolean-sum\nepsilon = 0.1\n") == "seed");
    CHECK(config_error_field("problem = nonsense\nepsilon = 0.1\nseed = 1\n") == "problem");
    CHECK(config_error_field("problem = boolean-sum\nepsilon = 0.1\nseed = 1\nsize = 100\n") == "size");
    CHECK(config_error_field("problem = boolean-sum\nepsilon = 0.1\nseed = 1\nomega_draws = 20\ndelta = 0.25\n") ==
          "omega_draws");
    CHECK(config_error_field("problem = boolean-sum\nvariants = deterministic\nepsilon = 0.1\nseed = 1\n"
                             "omega_draws = 1\ndelta = 0.05\n") == "");
    CHECK(config_error_field("problem = integrate-r0\nvariants = deterministic\nepsilon = 0.1\nseed = 1\n") ==
          "variants");
    CHECK(config_error_field("problem = integrate-r1\nsmoothness = 3\nepsilon = 0.1\nseed = 1\n") == "smoothness");
    CHECK(config_error_field("problem = integrate-r1\nfunctions = kink\nepsilon = 0.1\nseed = 1\n") == "functions");
    CHECK(config_error_field("problem = boolean-sum\nfunctions = nope\nepsilon = 0.1\nseed = 1\n") == "functions");
    CHECK(config_error_field("problem = boolean-sum\nepsilon = 0.1\nseed = 1\nbackend = gpu\n") == "backend");
    CHECK(config_error_field("problem = boolean-sum\nepsilon = abc\nseed = 1\n") == "epsilon");
    CHECK(config_error_field("problem = boolean-sum\nepsilon = 0.1\nseed = -3\n") == "seed");
    CHECK(config_error_field("problem = boolean-sum\nepsilon = 0.1\nseed = 1\ncolour = red\n") == "colour");
    CHECK(config_error_field("problem = boolean-sum\nproblem = real-sum\nepsilon = 0.1\nseed = 1\n") == "problem");
    CHECK(config_error_field("problem boolean-sum\n") == "line 1");
    CHECK_THROWS_AS(load_config("/nonexistent/randq.cfg"), ConfigError);
}

TEST_CASE("Boolean summation experiment")
{
    ExperimentConfig c = parse(kBooleanConfig);
    const std::string csv = csv_of(c);
    const auto rows = read_csv(csv);
    REQUIRE(rows.size() == 6);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "schema,problem,variant,epsilon,size,dimension,smoothness,functions,omega_draws,deltas,queries_mean,qubits,"
          "rand_error,rand_error_se,prob_error,separation,checks,seed,config_hash");

    // sorted by (variant, epsilon)
    CHECK(rows[0].at("variant") == "deterministic");
    CHECK(rows[0].at("epsilon") == "0.05");
    CHECK(rows[2].at("epsilon") == "0.2");
    CHECK(rows[5].at("variant") == "randomized");
    for (const auto& row : rows) {
        INFO(row.at("variant"), " ", row.at("epsilon"));
        CHECK(row.at("seed") == "17");
        CHECK(row.at("config_hash") == c.hash());
        CHECK(row.at("checks") == "pass");
        CHECK(std::stod(row.at("rand_error")) <= std::stod(row.at("epsilon")));
        CHECK(row.at("separation") == (row.at("variant") == "randomized" ? "no" : "na"));
    }

    // randomized qubits do not depend on N, deterministic ones grow with log N
    c.size = 1 << 12;
    c.functions = {"half"};
    const auto big = read_csv(csv_of(c));
    REQUIRE(big.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        const int small_k = std::stoi(rows[i].at("qubits"));
        const int big_k = std::stoi(big[i].at("qubits"));
        if (rows[i].at("variant") == "randomized") {
            CHECK(big_k == small_k);
        } else {
            CHECK(big_k == small_k + 4);
        }
    }
}

TEST_CASE("path integration experiment")
{
    const ExperimentConfig c = parse("problem = path-integrate\nepsilon = 0.1\nfunctions = cos-of-mean\n"
                                     "omega_draws = 100\nseed = 5\n");
    const auto rows = read_csv(csv_of(c, 2));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].at("functions") == "cos-of-mean");
    CHECK(std::stod(rows[0].at("rand_error")) <= 0.1);
    CHECK(rows[0].at("checks") == "pass");
}

TEST_CASE("replay is byte identical and independent of workers")
{
    ExperimentConfig c = parse("problem = real-sum\nvariants = randomized, deterministic\nepsilon = 0.2\n"
                               "size = 16\nomega_draws = 40\nseed = 99\n");
    const std::string first = csv_of(c, 1);
    CHECK(csv_of(c, 1) == first);
    CHECK(csv_of(c, 3) == first);
    const ExperimentResult r = run_experiment(c);
    CHECK(run_manifest(c, r).dump() == run_manifest(c, run_experiment(c, 4)).dump());
    c.seed = 100;
    CHECK(csv_of(c) != first);
}

TEST_CASE("run manifest")
{
    const ExperimentConfig c = parse("problem = integrate-r1\nvariants = deterministic\nepsilon = 0.1\nseed = 3\n"
                                     "functions = sin-prod-unit\n");
    const nlohmann::json j = run_manifest(c, run_experiment(c));
    CHECK(j["config_hash"] == c.hash());
    CHECK(j["seed"] == 3);
    CHECK(j["version"] == kVersion);
    CHECK(j["cells"].size() == 1);
    CHECK(j["cells"][0]["variant"] == "deterministic");
    CHECK(j["all_checks_passed"] == true);
    CHECK(j["libraries"]["nlohmann_json"] == "3.11.3");
}

TEST_CASE("catalog listing")
{
    const auto all = list_catalog();
    std::vector<std::string> problems;
    for (const CatalogEntry& e : all) {
        CHECK_FALSE(e.oracle.empty());
        if (e.kind == "problem") problems.push_back(e.name);
    }
    CHECK(problems == problem_names());
    for (std::size_t i = 1; i < all.size(); ++i) {
        CHECK(std::pair(all[i - 1].kind, all[i - 1].name) < std::pair(all[i].kind, all[i].name));
    }
    for (const CatalogEntry& e : all) {
        if (e.kind == "problem") continue;
        CHECK((e.oracle == "closed-form" || e.oracle == "brute-force" || e.oracle == "symmetry"));
    }
    CHECK(list_catalog("no-such-entry").empty());
    CHECK_FALSE(list_catalog("cos").empty());
}

TEST_CASE("acceptance runner")
{
    const AcceptanceResult kl = run_acceptance_criterion(9);
    CHECK(kl.passed);
    CHECK(format_acceptance_line(kl).rfind("PASS  9 KL trace: ", 0) == 0);
    CHECK(format_acceptance_line({11, "x", false, "d"}) == "FAIL 11 x: d");
    CHECK_THROWS(run_acceptance_criterion(0));
    CHECK_THROWS(run_acceptance_criterion(kAcceptanceCount + 1));
    const auto two = run_acceptance({9, 4});
    REQUIRE(two.size() == 2);
    CHECK(two[0].id == 4);
    CHECK(two[1].id == 9);
}
