#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "hqcm/circuit_parser.hpp"
#include "hqcm/errors.hpp"
#include "hqcm/macros.hpp"
#include "hqcm/report.hpp"
#include "hqcm/runner.hpp"
#include "oracle/dense.hpp"

using namespace hqcm;

namespace {

constexpr double kPi = std::numbers::pi;

ExecutionConfig unitary_config()
{
    ExecutionConfig c;
    c.mode = Mode::Unitary;
    return c;
}

}  // namespace

TEST_CASE("single rotation on |+> is diagonal")
{
    Circuit c(1, 0);
    c.add(NamedGateOp{0, NamedGate::h()});
    c.add(MultiZRotGate{{0}, kPi / 2.0, 0});
    c.add(NamedGateOp{0, NamedGate::h()});
    // H Rz(pi/2) H |0>: probabilities 1/2, 1/2
    const auto u = run_unitary(c, unitary_config());
    CHECK(u.distribution[0] == doctest::Approx(0.5));
    CHECK(u.distribution[1] == doctest::Approx(0.5));

    ExecutionConfig h;
    h.mode = Mode::Both;
    h.shots = 20;
    for (const auto& shot : run_hqcm(c, h)) CHECK(*shot.fidelity >= 1 - 1e-12);
}

TEST_CASE("empty circuit")
{
    const Circuit c(2, 0);
    const auto u = run_unitary(c, unitary_config());
    CHECK(u.distribution[0] == doctest::Approx(1.0));
    ExecutionConfig h;
    const auto shots = run_hqcm(c, h);
    REQUIRE(shots.size() == 1);
    CHECK(shots[0].corrected == std::vector<int>{0, 0});
    CHECK(shots[0].flow == init_flow(2));
}

TEST_CASE("multi-qubit rotation keeps basis states")
{
    Circuit c(2, 0);
    c.add(NamedGateOp{0, NamedGate::x()});
    c.add(NamedGateOp{1, NamedGate::x()});
    c.add(MultiZRotGate{{0, 1}, 0.7, 0});
    ExecutionConfig h;
    h.shots = 50;
    for (const auto& shot : run_hqcm(c, h)) CHECK(shot.corrected == std::vector<int>{1, 1});
    CHECK(run_unitary(c, unitary_config()).distribution[3] == doctest::Approx(1.0));
}

TEST_CASE("readout index and reported qubits")
{
    const int bits[] = {1, 0, 1};
    CHECK(readout_index(bits) == 5);
    const Circuit g = build_grover(3, 5);
    CHECK(reported_qubits(g, false) == std::vector<std::size_t>{0, 1, 2});
    CHECK(reported_qubits(g, true) == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(bits_text({1, 0, 1}) == "101");
}

TEST_CASE("Grover unitary distribution")
{
    const auto two = run_unitary(build_grover(2, 3), unitary_config());
    CHECK(two.distribution[3] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::uint64_t j = 0; j < 8; ++j) {
        CAPTURE(j);
        const auto three = run_unitary(build_grover(3, j), unitary_config());
        CHECK(std::abs(three.distribution[j] - oracle::grover_success(3, j, 2)) < 1e-9);
    }
}

TEST_CASE("HQCM matches the unitary run")
{
    for (const char* text : {"qubits 4 work 2 : 4 5\nLAMBDAZ 1 2 3 : 6\n", "qubits 3 work 1\nGROVER 3 6\n",
                             "qubits 2\nH 1\nRZ 1 pi/2\nCZ 1 2\nSQ 2 pi/3 pi/5 0.9\nRZ 2 -pi/2\nMZROT 0.3 1 2\n"}) {
        CAPTURE(text);
        const Circuit c = parse_circuit_string(text);
        const auto report = verify_equivalence(c, 10, 7);
        CHECK(report.trials == 10);
        CHECK(report.passed());
    }
    RandomSource rng(21, 0);
    for (int k = 0; k < 20; ++k) {
        const Circuit c = random_circuit(3, 12, rng);
        CHECK(verify_equivalence(c, 3, static_cast<std::uint64_t>(k)).passed());
    }
}

TEST_CASE("random kappas and forced outcomes")
{
    const Circuit c = lambda123z6_circuit();
    ExecutionConfig cfg;
    cfg.mode = Mode::Both;
    cfg.shots = 5;
    cfg.kappa_policy = KappaPolicy::Random;
    bool any_kappa = false;
    for (const auto& shot : run_hqcm(c, cfg)) {
        CHECK(*shot.fidelity >= 1 - 1e-10);
        for (const auto& r : shot.rotations) any_kappa = any_kappa || r.kappa;
    }
    CHECK(any_kappa);

    cfg.kappa_policy = KappaPolicy::List;
    cfg.kappas.assign(16, 1);
    cfg.forced_outcomes = std::vector<int>(16, 1);
    for (const auto& shot : run_hqcm(c, cfg)) {
        CHECK(*shot.fidelity >= 1 - 1e-10);
        for (const auto& r : shot.rotations) {
            CHECK(r.kappa == 1);
            CHECK(r.outcome == 1);
        }
    }
}

TEST_CASE("configuration errors")
{
    const Circuit c = lambda123z6_circuit();
    ExecutionConfig cfg;
    cfg.symbolic = true;
    cfg.shots = 2;
    CHECK_THROWS_AS(cfg.validate(c), InputError);

    ExecutionConfig f;
    f.forced_outcomes = std::vector<int>{0, 1};
    CHECK_THROWS_AS(run_hqcm(c, f), InputError);
    f.forced_outcomes = std::vector<int>(16, 2);
    CHECK_THROWS_AS(run_hqcm(c, f), InputError);

    ExecutionConfig k;
    k.kappa_policy = KappaPolicy::List;
    k.kappas = {0};
    CHECK_THROWS_AS(run_hqcm(c, k), InputError);

    ExecutionConfig z;
    z.shots = 0;
    CHECK_THROWS_AS(run_hqcm(c, z), InputError);

    ExecutionConfig s;
    s.initial_state = StateVector(2);
    CHECK_THROWS_AS(run_hqcm(c, s), InputError);

    ExecutionConfig t = unitary_config();
    t.trace = true;
    CHECK_THROWS_AS(run_circuit(c, t), InputError);
}

TEST_CASE("forced outcomes set the byproduct")
{
    Circuit c(1, 0);
    c.add(MultiZRotGate{{0}, 0.5, 0});
    ExecutionConfig cfg;
    for (int m = 0; m < 2; ++m) {
        cfg.forced_outcomes = std::vector<int>{m};
        const auto shots = run_hqcm(c, cfg);
        CHECK(shots[0].rotations[0].outcome == m);
        CHECK(shots[0].flow.z(0) == m);
        CHECK(shots[0].flow.x(0) == 0);
    }
}

TEST_CASE("numeric trace")
{
    const Circuit c = build_grover(3, 2);
    ExecutionConfig cfg;
    cfg.seed = 3;
    TraceTable table;
    const auto shots = run_hqcm(c, cfg, &table);
    CHECK(!table.symbolic);
    REQUIRE(table.rows.size() == c.tau_max() + 1);
    for (std::size_t t = 0; t < table.rows.size(); ++t) CHECK(table.rows[t].tau == t);
    CHECK(table.rows.front().flow == init_flow(c.num_qubits()));
    CHECK(table.rows.back().flow == shots[0].flow);
    CHECK(replay_flow(c, table) == shots[0].flow);

    std::size_t rotations = 0;
    for (const auto& row : table.rows) {
        for (const auto& r : row.rotations) {
            CHECK(std::abs(r.theta_executed) == doctest::Approx(std::abs(r.theta)));
            CHECK(r.theta_executed == doctest::Approx(r.parity ? -r.theta : r.theta));
            ++rotations;
        }
    }
    CHECK(rotations == c.rotation_count());
    CHECK(format_trace(table).find("tau 0\n") == 0);
}

TEST_CASE("symbolic trace binds to every numeric run")
{
    const Circuit c = lambda123z6_circuit();
    const TraceTable sym = trace_symbolic(c);
    CHECK(sym.symbolic);
    REQUIRE(sym.rows.size() == 10);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        ExecutionConfig cfg;
        cfg.seed = seed;
        cfg.kappa_policy = KappaPolicy::Random;
        TraceTable num;
        const auto shots = run_hqcm(c, cfg, &num);
        Binding binding;
        for (const auto& row : num.rows) {
            for (const auto& r : row.rotations) binding[r.symbol] = r.outcome;
        }
        CHECK(binding.size() == 16);
        for (std::size_t t = 0; t < sym.rows.size(); ++t) {
            CHECK(hqcm::bind(sym.rows[t].symbolic_flow, binding) == num.rows[t].flow);
            for (std::size_t k = 0; k < sym.rows[t].rotations.size(); ++k) {
                CHECK(sym.rows[t].rotations[k].parity_expr.evaluate(binding) == num.rows[t].rotations[k].parity);
            }
        }
    }
}

TEST_CASE("three-control Z final flow")
{
    const TraceTable sym = trace_symbolic(lambda123z6_circuit());
    const auto& groups = sym.group_sizes;
    const auto& last = sym.rows.back().symbolic_flow;
    const char* ix[] = {"0", "0", "0", "m31+m32+m71+m72", "0", "0"};
    const char* iz[] = {"m11+m13+m91+m93", "m11+m12+m91+m92", "m31+m33+m71+m73", "m1+m9", "m3+m7", "m3"};
    for (std::size_t j = 0; j < 6; ++j) {
        CAPTURE(j);
        CHECK(last.x(j) == parse_gf2_expr(ix[j], groups));
        CHECK(last.z(j) == parse_gf2_expr(iz[j], groups));
    }
    const std::string text = table1_text();
    CHECK(text.find("I_z = (m11+m13+m91+m93, m11+m12+m91+m92, m31+m33+m71+m73, m1+m9, m3+m7, m3)") !=
          std::string::npos);
}

TEST_CASE("run reports")
{
    const Circuit c = parse_circuit_string("qubits 3\nH 1\nMZROT pi/3 1 2\nSQ 3 0.4 0.2 1.1\nCZ 2 3\nH 2\n");
    ExecutionConfig cfg;
    cfg.mode = Mode::Both;
    cfg.shots = 40;
    cfg.seed = 99;
    cfg.trace = true;
    cfg.kappa_policy = KappaPolicy::Random;
    const RunReport a = run_circuit(c, cfg);
    const RunReport b = run_circuit(c, cfg);
    const std::string ja = report_json(a, c);
    CHECK(ja == report_json(b, c));
    CHECK(histogram_csv(a) == histogram_csv(b));
    CHECK(ja.find("\"histogram\"") != std::string::npos);
    REQUIRE(a.reference);
    REQUIRE(a.trace);

    std::size_t total = 0;
    std::uint64_t previous = 0;
    for (const auto& e : histogram(a)) {
        CHECK(e.index >= previous);
        previous = e.index;
        total += e.count;
    }
    CHECK(total == 40);

    ExecutionConfig other = cfg;
    other.seed = 100;
    CHECK(report_json(run_circuit(c, other), c) != ja);

    ExecutionConfig sym;
    sym.symbolic = true;
    const RunReport s = run_circuit(c, sym);
    REQUIRE(s.symbolic_consistent);
    CHECK(*s.symbolic_consistent);

    const RunReport u = run_circuit(c, unitary_config());
    REQUIRE(u.shots.size() == 1);
    CHECK(u.shots[0].raw == u.shots[0].corrected);
}
