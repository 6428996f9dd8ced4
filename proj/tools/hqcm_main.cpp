// Command-line front end: run, grover, verify, table1.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hqcm/circuit_parser.hpp"
#include "hqcm/errors.hpp"
#include "hqcm/macros.hpp"
#include "hqcm/report.hpp"
#include "hqcm/runner.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kVerificationFailed = 2;

std::uint64_t default_seed()
{
    const char* env = std::getenv("HQCM_SEED");
    if (!env || !*env) return 0;
    try {
        std::size_t used = 0;
        const unsigned long long value = std::stoull(env, &used, 0);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing text");
        return value;
    } catch (const std::exception&) {
        throw hqcm::InputError(std::string("HQCM_SEED is not an unsigned integer: ") + env);
    }
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hqcm::InputError("cannot write " + path);
    out << text;
}

void print_histogram(const hqcm::RunReport& report)
{
    const double total = static_cast<double>(report.shots.size());
    std::cout << "readout (qubits";
    for (std::size_t q : report.reported) std::cout << " " << q + 1;
    std::cout << "), " << report.shots.size() << " shots\n";
    for (const auto& e : hqcm::histogram(report)) {
        std::cout << "  " << e.bits << "  index " << e.index << "  count " << e.count << "  freq "
                  << static_cast<double>(e.count) / total << "\n";
    }
}

struct RunOptions {
    std::string file;
    std::string mode = "hqcm";
    std::size_t shots = 1;
    std::uint64_t seed = 0;
    bool trace = false;
    bool symbolic = false;
    bool include_work = false;
    std::string kappa = "circuit";
    std::vector<int> kappas;
    std::vector<int> forced;
    std::string out;
    std::string csv;
};

hqcm::Mode parse_mode(const std::string& name)
{
    if (name == "hqcm") return hqcm::Mode::Hqcm;
    if (name == "unitary") return hqcm::Mode::Unitary;
    if (name == "both") return hqcm::Mode::Both;
    throw hqcm::InputError("unknown mode " + name);
}

int do_run(const RunOptions& o)
{
    const hqcm::Circuit circuit = hqcm::parse_circuit_file(o.file);
    hqcm::ExecutionConfig config;
    config.mode = parse_mode(o.mode);
    config.shots = o.shots;
    config.seed = o.seed;
    config.trace = o.trace;
    config.symbolic = o.symbolic;
    config.include_work = o.include_work;
    if (!o.forced.empty()) config.forced_outcomes = o.forced;
    if (!o.kappas.empty()) {
        config.kappa_policy = hqcm::KappaPolicy::List;
        config.kappas = o.kappas;
    } else if (o.kappa == "random") {
        config.kappa_policy = hqcm::KappaPolicy::Random;
    }

    const hqcm::RunReport report = hqcm::run_circuit(circuit, config);
    const std::string json = hqcm::report_json(report, circuit);
    if (!o.csv.empty()) write_file(o.csv, hqcm::histogram_csv(report));
    if (o.out.empty()) {
        std::cout << json;
        return kOk;
    }
    write_file(o.out, json);
    print_histogram(report);
    if (report.trace) std::cout << "\n" << hqcm::format_trace(*report.trace);
    if (report.symbolic_trace) {
        std::cout << "\n" << hqcm::format_trace(*report.symbolic_trace);
        std::cout << "symbolic flow consistent with shot 0: " << (*report.symbolic_consistent ? "yes" : "no")
                  << "\n";
    }
    return kOk;
}

struct GroverOptions {
    std::size_t n = 2;
    std::uint64_t marked = 0;
    std::optional<std::size_t> iterations;
    std::size_t shots = 1000;
    std::uint64_t seed = 0;
    std::string mode = "hqcm";
    std::string out;
};

int do_grover(const GroverOptions& o)
{
    const hqcm::Circuit circuit = hqcm::build_grover(o.n, o.marked, o.iterations);
    hqcm::ExecutionConfig config;
    config.mode = parse_mode(o.mode);
    config.shots = o.shots;
    config.seed = o.seed;
    const hqcm::RunReport report = hqcm::run_circuit(circuit, config);
    if (!o.out.empty()) write_file(o.out, hqcm::report_json(report, circuit));

    std::size_t hits = 0;
    for (const auto& shot : report.shots) hits += hqcm::readout_index(shot.corrected) == o.marked;
    std::cout << "grover n=" << o.n << " marked=" << o.marked << " iterations="
              << o.iterations.value_or(hqcm::grover_iterations(o.n)) << " steps=" << circuit.tau_max()
              << " rotations=" << circuit.rotation_count() << "\n";
    print_histogram(report);
    std::cout << "success frequency " << static_cast<double>(hits) / static_cast<double>(report.shots.size()) << "\n";
    if (report.reference) std::cout << "exact success probability " << (*report.reference)[o.marked] << "\n";
    return kOk;
}

int do_verify(const std::string& file, std::size_t trials, std::uint64_t seed)
{
    const hqcm::Circuit circuit = hqcm::parse_circuit_file(file);
    const hqcm::EquivalenceReport report = hqcm::verify_equivalence(circuit, trials, seed);
    std::cout.precision(17);
    std::cout << "trials " << report.trials << "\nmin fidelity " << report.min_fidelity << "\nmean fidelity "
              << report.mean_fidelity << "\n";
    if (!report.passed()) {
        std::cout << "FAIL: HQCM output differs from the unitary reference\n";
        return kVerificationFailed;
    }
    std::cout << "OK\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hybrid quantum computation model simulator"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    try {
        seed = default_seed();
    } catch (const hqcm::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }

    RunOptions run;
    run.seed = seed;
    auto* run_cmd = app.add_subcommand("run", "Execute a circuit file");
    run_cmd->add_option("file", run.file, "Circuit file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--mode", run.mode, "hqcm, unitary or both")
        ->check(CLI::IsMember({"hqcm", "unitary", "both"}))
        ->capture_default_str();
    run_cmd->add_option("--shots", run.shots, "Number of shots")->check(CLI::PositiveNumber)->capture_default_str();
    run_cmd->add_option("--seed", run.seed, "Random seed (default: HQCM_SEED or 0)");
    run_cmd->add_flag("--trace", run.trace, "Record the numeric trace of shot 0");
    run_cmd->add_flag("--symbolic", run.symbolic, "Record the symbolic trace (single shot)");
    run_cmd->add_flag("--include-work", run.include_work, "Report work qubits too");
    run_cmd->add_option("--kappa", run.kappa, "Ancilla kappa policy: circuit or random")
        ->check(CLI::IsMember({"circuit", "random"}))
        ->capture_default_str();
    run_cmd->add_option("--kappas", run.kappas, "Explicit kappa per rotation")->delimiter(',');
    run_cmd->add_option("--forced", run.forced, "Forced outcome per rotation")->delimiter(',');
    run_cmd->add_option("--out", run.out, "Write JSON results here instead of stdout");
    run_cmd->add_option("--csv", run.csv, "Write the histogram as CSV");

    GroverOptions grover;
    grover.seed = seed;
    auto* grover_cmd = app.add_subcommand("grover", "Grover search with the built-in oracle");
    grover_cmd->add_option("--n", grover.n, "Number of search qubits (>= 2)")->required();
    grover_cmd->add_option("--marked", grover.marked, "Marked item")->required();
    grover_cmd->add_option("--iterations", grover.iterations, "Iterations (default floor(pi/4 sqrt(2^n)))");
    grover_cmd->add_option("--shots", grover.shots, "Number of shots")->check(CLI::PositiveNumber)->capture_default_str();
    grover_cmd->add_option("--seed", grover.seed, "Random seed (default: HQCM_SEED or 0)");
    grover_cmd->add_option("--mode", grover.mode, "hqcm, unitary or both")
        ->check(CLI::IsMember({"hqcm", "unitary", "both"}))
        ->capture_default_str();
    grover_cmd->add_option("--out", grover.out, "Write JSON results");

    std::string verify_file;
    std::size_t trials = 20;
    std::uint64_t verify_seed = seed;
    auto* verify_cmd = app.add_subcommand("verify", "Compare HQCM with the unitary reference on random inputs");
    verify_cmd->add_option("file", verify_file, "Circuit file")->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("--trials", trials, "Number of random inputs")->check(CLI::PositiveNumber)->capture_default_str();
    verify_cmd->add_option("--seed", verify_seed, "Random seed (default: HQCM_SEED or 0)");

    auto* table_cmd = app.add_subcommand("table1", "Print the symbolic trace of the Lambda^{123}Z^6 circuit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*run_cmd) return do_run(run);
        if (*grover_cmd) return do_grover(grover);
        if (*verify_cmd) return do_verify(verify_file, trials, verify_seed);
        if (*table_cmd) {
            std::cout << hqcm::table1_text();
            return kOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kOk;
}
