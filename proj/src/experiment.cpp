#include "randq/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "randq/catalog.hpp"
#include "randq/reductions.hpp"

namespace randq {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value)
{
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& field, const std::string& text)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field, field + ": cannot parse '" + text + "' as a number");
    }
}

std::uint64_t parse_unsigned(const std::string& field, const std::string& text)
{
    try {
        std::size_t used = 0;
        if (!text.empty() && text[0] == '-') throw std::invalid_argument(text);
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field, field + ": cannot parse '" + text + "' as a nonnegative integer");
    }
}

int parse_int(const std::string& field, const std::string& text)
{
    const std::uint64_t v = parse_unsigned(field, text);
    if (v > 1000000) throw ConfigError(field, field + ": value " + text + " is too large");
    return static_cast<int>(v);
}

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string exact_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& items, F&& format, char sep = ';')
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += format(items[i]);
    }
    return out;
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<std::string> function_names(const std::string& problem)
{
    if (problem == "boolean-sum") return boolean_names();
    if (problem == "real-sum") return real_names();
    if (problem == "path-integrate") return path_names();
    return integrand_names();
}

bool selected(const ExperimentConfig& c, const std::string& name)
{
    return c.functions.empty() || std::find(c.functions.begin(), c.functions.end(), name) != c.functions.end();
}

struct CellPlan {
    std::vector<SuiteMember> suite;
    LowerBoundProblem bound;
    QueryKind kind = QueryKind::randomized;
};

CellPlan plan_cell(const ExperimentConfig& c, const std::string& variant, double eps)
{
    CellPlan plan;
    plan.kind = variant == "deterministic" ? QueryKind::deterministic : QueryKind::randomized;
    const bool randomized = plan.kind == QueryKind::randomized;
    const QaeOptions options{c.backend};
    if (c.problem == "boolean-sum") {
        plan.bound = {c.problem, c.size, 0.5};
        for (CatalogBoolean& b : boolean_suite(c.size)) {
            if (!selected(c, b.name)) continue;
            auto table = std::make_shared<const BooleanTable>(std::move(b.table));
            plan.suite.push_back({b.name, table->mean(), [table, eps, options, randomized](Rng& omega) {
                                      PreparedSummation p = randomized
                                                                ? prepare_randomized_boolean_summation(*table, eps, omega)
                                                                : prepare_deterministic_boolean_summation(*table, eps);
                                      return outcome_of(p, options);
                                  }});
        }
    } else if (c.problem == "real-sum") {
        plan.bound = {c.problem, 0, 0.5};
        for (CatalogReal& r : real_suite(c.size)) {
            if (!selected(c, r.name)) continue;
            auto table = std::make_shared<const RealTable>(std::move(r.table));
            plan.suite.push_back({r.name, table->mean(), [table, eps, options, randomized](Rng& omega) {
                                      PreparedSummation p = randomized ? prepare_real_summation(*table, eps, omega)
                                                                       : prepare_real_summation_deterministic(*table, eps);
                                      return outcome_of(p, options);
                                  }});
        }
    } else if (c.problem == "integrate-r0" || c.problem == "integrate-r1") {
        plan.bound = {c.problem, 0, 1.0};
        const bool smooth = c.problem == "integrate-r1";
        const SmoothClassDescriptor cls{c.dimension, smooth ? c.smoothness : 0};
        for (CatalogIntegrand& f : integrand_suite(c.dimension, cls.smoothness)) {
            if (!selected(c, f.name)) continue;
            auto fn = std::make_shared<const Integrand>(std::move(f.f));
            const QueryMode mode = randomized ? QueryMode::randomized : QueryMode::deterministic;
            plan.suite.push_back({f.name, f.truth, [fn, cls, eps, options, smooth, mode](Rng& omega) {
                                      PreparedSummation p =
                                          smooth ? prepare_integrate_rge1(*fn, cls, eps, mode, omega)
                                                 : prepare_integrate_r0(*fn, cls.dimension, eps, omega);
                                      return outcome_of(p, options);
                                  }});
        }
    } else if (c.problem == "path-integrate") {
        plan.bound = {c.problem, 0, 1.0};
        for (CatalogPath& f : path_suite()) {
            if (!selected(c, f.name)) continue;
            auto fn = std::make_shared<const PathIntegrand>(std::move(f.integrand));
            plan.suite.push_back({f.name, f.truth, [fn, eps, options](Rng& omega) {
                                      PreparedSummation p = prepare_path_integrate(*fn, eps, omega);
                                      return outcome_of(p, options);
                                  }});
        }
    }
    return plan;
}

} // namespace

std::vector<std::string> problem_names()
{
    return {"boolean-sum", "integrate-r0", "integrate-r1", "path-integrate", "real-sum"};
}

std::vector<std::string> problem_variants(const std::string& problem)
{
    if (problem == "integrate-r0" || problem == "path-integrate") return {"randomized"};
    return {"deterministic", "randomized"};
}

void ExperimentConfig::validate() const
{
    const auto problems = problem_names();
    if (std::find(problems.begin(), problems.end(), problem) == problems.end()) {
        throw ConfigError("problem", "problem must be one of boolean-sum, integrate-r0, integrate-r1, "
                                     "path-integrate, real-sum");
    }
    if (variants.empty()) throw ConfigError("variants", "variants must not be empty");
    const auto allowed = problem_variants(problem);
    for (const std::string& v : variants) {
        if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
            throw ConfigError("variants", "variant '" + v + "' is not available for " + problem);
        }
    }
    if (epsilons.empty()) throw ConfigError("epsilon", "epsilon must list at least one value");
    for (double e : epsilons) {
        if (!(e > 0.0 && e < 0.5)) throw ConfigError("epsilon", "epsilon must lie in (0, 0.5)");
    }
    for (double d : deltas) {
        if (!(d > 0.0 && d < 1.0)) throw ConfigError("delta", "delta must lie in (0, 1)");
    }
    if (!seed) throw ConfigError("seed", "seed is required");
    if (omega_draws < 1) throw ConfigError("omega_draws", "omega_draws must be at least 1");
    const bool any_randomized = std::find(variants.begin(), variants.end(), "randomized") != variants.end();
    if (any_randomized && !deltas.empty()) {
        const double min_delta = *std::min_element(deltas.begin(), deltas.end());
        if (omega_draws * min_delta < 10.0) {
            throw ConfigError("omega_draws", "omega_draws * min(delta) must be at least 10");
        }
    }
    if (problem == "boolean-sum" && (size < 2 || (size & (size - 1)) != 0)) {
        throw ConfigError("size", "size must be a power of two >= 2 for boolean-sum");
    }
    if (size < 1 || size > (std::uint64_t{1} << 26)) throw ConfigError("size", "size must lie in [1, 2^26]");
    if (dimension < 1 || dimension > 16) throw ConfigError("dimension", "dimension must lie in [1, 16]");
    if (problem == "integrate-r1" && smoothness != 1 && smoothness != 2) {
        throw ConfigError("smoothness", "smoothness must be 1 or 2");
    }
    const auto names = function_names(problem);
    for (const std::string& f : functions) {
        if (std::find(names.begin(), names.end(), f) == names.end()) {
            throw ConfigError("functions", "unknown function '" + f + "' for " + problem);
        }
    }
    if (problem == "integrate-r1") {
        const auto suite = integrand_suite(dimension, smoothness);
        for (const std::string& f : functions) {
            if (std::none_of(suite.begin(), suite.end(), [&](const CatalogIntegrand& c) { return c.name == f; })) {
                throw ConfigError("functions", "function '" + f + "' is not in the C^r unit ball for r = " +
                                                   std::to_string(smoothness));
            }
        }
    }
}

std::string ExperimentConfig::canonical() const
{
    std::map<std::string, std::string> kv;
    kv["backend"] = to_string(backend);
    kv["delta"] = join(deltas, exact_number, ',');
    kv["dimension"] = std::to_string(dimension);
    kv["epsilon"] = join(epsilons, exact_number, ',');
    kv["functions"] = join(functions, [](const std::string& s) { return s; }, ',');
    kv["omega_draws"] = std::to_string(omega_draws);
    kv["problem"] = problem;
    kv["seed"] = seed ? std::to_string(*seed) : "";
    kv["size"] = std::to_string(size);
    kv["smoothness"] = std::to_string(smoothness);
    kv["variants"] = join(variants, [](const std::string& s) { return s; }, ',');
    std::string out;
    for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
    return out;
}

std::string ExperimentConfig::hash() const
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical())));
    return buf;
}

ExperimentConfig parse_config(std::istream& in)
{
    ExperimentConfig c;
    std::map<std::string, int> seen;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(number), "line " + std::to_string(number) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (seen[key]++) throw ConfigError(key, "key '" + key + "' appears twice");
        if (key == "problem") {
            c.problem = value;
        } else if (key == "variants") {
            c.variants = split_list(value);
        } else if (key == "epsilon") {
            c.epsilons.clear();
            for (const std::string& v : split_list(value)) c.epsilons.push_back(parse_double(key, v));
        } else if (key == "delta") {
            c.deltas.clear();
            for (const std::string& v : split_list(value)) c.deltas.push_back(parse_double(key, v));
        } else if (key == "size") {
            c.size = parse_unsigned(key, value);
        } else if (key == "dimension") {
            c.dimension = parse_int(key, value);
        } else if (key == "smoothness") {
            c.smoothness = parse_int(key, value);
        } else if (key == "functions") {
            c.functions = split_list(value);
        } else if (key == "omega_draws") {
            c.omega_draws = parse_int(key, value);
        } else if (key == "seed") {
            c.seed = parse_unsigned(key, value);
        } else if (key == "backend") {
            try {
                c.backend = parse_backend(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(key, e.what());
            }
        } else if (key == "csv") {
            c.csv_path = value;
        } else if (key == "manifest") {
            c.manifest_path = value;
        } else {
            throw ConfigError(key, "unknown key '" + key + "'");
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("path", "cannot open config file '" + path + "'");
    return parse_config(in);
}

bool ExperimentResult::all_checks_passed() const
{
    return std::all_of(cells.begin(), cells.end(), [](const ExperimentCell& c) { return c.report.all_checks_passed(); });
}

ExperimentResult run_experiment(const ExperimentConfig& config, int workers)
{
    config.validate();
    std::vector<std::pair<std::string, double>> keys;
    for (const std::string& v : config.variants) {
        for (double e : config.epsilons) keys.emplace_back(v, e);
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    ExperimentResult result;
    const Rng master(*config.seed);
    for (const auto& [variant, eps] : keys) {
        Rng rng = master.derive(fnv1a(variant + "/" + exact_number(eps)));
        CellPlan plan = plan_cell(config, variant, eps);
        if (plan.suite.empty()) throw ConfigError("functions", "no catalog function selected");
        ExperimentCell cell;
        cell.variant = variant;
        cell.epsilon = eps;
        cell.report = randomized_error(config.problem, variant, plan.kind, eps, plan.suite,
                                       {config.omega_draws, config.deltas, workers}, rng);
        add_chebyshev_checks(cell.report);
        for (CheckResult& c : qubit_lower_bound_check(cell.report.qubits, eps, plan.bound, plan.kind)) {
            c.name = "qubits_" + c.name;
            cell.report.checks.push_back(c);
        }
        if (plan.kind == QueryKind::randomized && plan.bound.table_size > 0) {
            cell.separation = qubit_separation_check(cell.report.qubits, eps, plan.bound.table_size).passed ? "yes" : "no";
        }
        result.cells.push_back(std::move(cell));
    }
    return result;
}

std::vector<std::string> csv_columns()
{
    return {"schema",       "problem",    "variant",       "epsilon",      "size",       "dimension", "smoothness",
            "functions",    "omega_draws", "deltas",       "queries_mean", "qubits",     "rand_error", "rand_error_se",
            "prob_error",   "separation", "checks",        "seed",         "config_hash"};
}

void write_csv(std::ostream& out, const ExperimentConfig& config, const ExperimentResult& result)
{
    out << join(csv_columns(), [](const std::string& s) { return s; }, ',') << "\n";
    const std::string hash = config.hash();
    for (const ExperimentCell& cell : result.cells) {
        const ErrorReport& r = cell.report;
        double se = 0.0;
        for (const FunctionError& f : r.per_function) {
            if (f.randomized_error == r.suite_max) se = f.standard_error;
        }
        std::vector<std::string> failed;
        for (const CheckResult& c : r.checks) {
            if (!c.passed) failed.push_back(c.name);
        }
        std::vector<std::string> names;
        for (const FunctionError& f : r.per_function) names.push_back(f.name);
        out << kCsvSchemaVersion << ',' << config.problem << ',' << cell.variant << ',' << format_number(cell.epsilon)
            << ',' << config.size << ',' << config.dimension << ',' << config.smoothness << ','
            << join(names, [](const std::string& s) { return s; }) << ',' << r.omega_draws << ','
            << join(r.deltas, format_number) << ',' << format_number(r.queries_mean) << ',' << r.qubits << ','
            << format_number(r.suite_max) << ',' << format_number(se) << ','
            << join(r.suite_max_probabilistic, format_number) << ',' << cell.separation << ','
            << (failed.empty() ? std::string("pass") : join(failed, [](const std::string& s) { return s; })) << ','
            << *config.seed << ',' << hash << "\n";
    }
}

nlohmann::json run_manifest(const ExperimentConfig& config, const ExperimentResult& result)
{
    nlohmann::json j;
    j["schema_version"] = kCsvSchemaVersion;
    j["version"] = kVersion;
    j["config_hash"] = config.hash();
    j["seed"] = *config.seed;
    j["config"] = config.canonical();
    j["libraries"] = {{"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                            std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                            std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
    j["cells"] = nlohmann::json::array();
    for (const ExperimentCell& cell : result.cells) {
        nlohmann::json c = cell.report.to_json();
        c["variant"] = cell.variant;
        c["separation"] = cell.separation;
        j["cells"].push_back(std::move(c));
    }
    j["all_checks_passed"] = result.all_checks_passed();
    return j;
}

} // namespace randq
