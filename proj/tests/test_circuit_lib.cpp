#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "hqcm/circuit_parser.hpp"
#include "hqcm/errors.hpp"
#include "hqcm/macros.hpp"
#include "oracle/dense.hpp"

using namespace hqcm;

namespace {

constexpr double kPi = std::numbers::pi;

oracle::Mat gates_matrix(std::size_t n, const std::vector<Gate>& gates)
{
    oracle::Mat u = oracle::Mat::Identity(1 << n, 1 << n);
    for (const auto& g : gates) u = oracle::gate_matrix(n, g) * u;
    return u;
}

oracle::Mat steps_matrix(std::size_t n, const std::vector<Step>& steps)
{
    oracle::Mat u = oracle::Mat::Identity(1 << n, 1 << n);
    for (const auto& s : steps) u = gates_matrix(n, s.gates) * u;
    return u;
}

/// Isometry from the logical qubits into the full register with |+> on
/// every work qubit.
oracle::Mat work_plus_embedding(std::size_t n, const std::vector<std::size_t>& work)
{
    std::vector<std::size_t> logical;
    for (std::size_t q = 0; q < n; ++q) {
        if (std::find(work.begin(), work.end(), q) == work.end()) logical.push_back(q);
    }
    const Eigen::Index rows = Eigen::Index{1} << n;
    const Eigen::Index cols = Eigen::Index{1} << logical.size();
    oracle::Mat e = oracle::Mat::Zero(rows, cols);
    const double amp = std::pow(std::sqrt(0.5), static_cast<double>(work.size()));
    for (Eigen::Index i = 0; i < rows; ++i) {
        Eigen::Index l = 0;
        for (std::size_t k = 0; k < logical.size(); ++k) {
            if ((i >> logical[k]) & 1) l |= Eigen::Index{1} << k;
        }
        e(i, l) = amp;
    }
    return e;
}

/// Overlap of U E with E V up to one global phase, where E embeds the
/// logical register with works in |+>. 1 means U acts as V on the logical
/// qubits and returns the works to |+>.
double acts_as(const oracle::Mat& u, const oracle::Mat& v, std::size_t n, const std::vector<std::size_t>& work)
{
    const oracle::Mat e = work_plus_embedding(n, work);
    const oracle::Mat lhs = u * e;
    const oracle::Mat rhs = e * v;
    return std::abs((lhs.adjoint() * rhs).trace()) / static_cast<double>(v.rows());
}

std::vector<std::size_t> range(std::size_t a, std::size_t b)
{
    std::vector<std::size_t> out;
    for (std::size_t q = a; q < b; ++q) out.push_back(q);
    return out;
}

}  // namespace

TEST_CASE("single-control rotation")
{
    const std::size_t t[] = {1};
    const double theta = kPi / 4.0;
    const auto gates = expand_lambda1(0, t, -2.0 * theta);
    REQUIRE(gates.size() == 2);
    const auto& a = std::get<MultiZRotGate>(gates[0]);
    const auto& b = std::get<MultiZRotGate>(gates[1]);
    CHECK(a.leaves == std::vector<std::size_t>{0, 1});
    CHECK(a.theta == doctest::Approx(theta));
    CHECK(b.leaves == std::vector<std::size_t>{1});
    CHECK(b.theta == doctest::Approx(-theta));

    // controlled Rz(-2 theta) with control qubit 0
    const oracle::Mat p0 = (oracle::I2() + oracle::Z()) / 2.0;
    const oracle::Mat p1 = (oracle::I2() - oracle::Z()) / 2.0;
    const oracle::Mat expected =
        oracle::on_qubits(2, {{0, p0}}) + oracle::on_qubits(2, {{0, p1}, {1, oracle::rz(-2.0 * theta)}});
    CHECK(oracle::operator_overlap(gates_matrix(2, gates), expected) >= 1 - 1e-12);

    CHECK(oracle::operator_overlap(gates_matrix(2, expand_lambda1(0, t, 0.0)), oracle::Mat::Identity(4, 4)) >=
          1 - 1e-12);
    const std::size_t bad[] = {0};
    CHECK_THROWS_AS(expand_lambda1(0, bad, 1.0), InputError);
}

TEST_CASE("two-control rotation")
{
    const std::size_t c[] = {0, 1};
    const std::size_t t[] = {2};
    const auto gates = expand_lambda2(c, t, kPi);
    REQUIRE(gates.size() == 4);
    const std::vector<std::vector<std::size_t>> leaves{{0, 1, 2}, {1, 2}, {0, 2}, {2}};
    const double thetas[] = {kPi / 4, -kPi / 4, -kPi / 4, kPi / 4};
    for (int k = 0; k < 4; ++k) {
        CHECK(std::get<MultiZRotGate>(gates[k]).leaves == leaves[k]);
        CHECK(std::get<MultiZRotGate>(gates[k]).theta == doctest::Approx(thetas[k]));
    }

    // Lambda^{12} U^3_z(pi): Rz(pi) on qubit 2 only when both controls are 1
    oracle::Mat expected = oracle::Mat::Identity(8, 8);
    const oracle::Mat rz = oracle::rz(kPi);
    for (int i = 0; i < 8; ++i) expected(i, i) = (i & 3) == 3 ? rz((i >> 2) & 1, (i >> 2) & 1) : 1.0;
    const oracle::Mat u = gates_matrix(3, gates);
    CHECK((u - expected).norm() < 1e-12);

    const std::size_t swapped[] = {1, 0};
    CHECK((gates_matrix(3, expand_lambda2(swapped, t, kPi)) - u).norm() < 1e-12);

    const std::size_t one[] = {0};
    CHECK_THROWS_AS(expand_lambda2(one, t, kPi), InputError);
    const std::size_t overlap[] = {0, 2};
    CHECK_THROWS_AS(expand_lambda2(overlap, t, kPi), InputError);
}

TEST_CASE("three-control Z with two work qubits")
{
    const Circuit c = lambda123z6_circuit();
    CHECK(c.num_qubits() == 6);
    CHECK(c.work_qubits() == std::vector<std::size_t>{3, 4});
    CHECK(c.tau_max() == 9);
    CHECK(c.gate_count() == 21);
    CHECK(c.rotation_count() == 16);

    const std::vector<std::string> labels{"LAMBDA2 pi 1 2 : 4", "H 4", "LAMBDA2 pi 3 4 : 5", "H 5", "CZ 5 6",
                                          "H 5", "LAMBDA2 -pi 3 4 : 5", "H 4", "LAMBDA2 -pi 1 2 : 4"};
    for (std::size_t k = 0; k < labels.size(); ++k) CHECK(c.steps()[k].label == labels[k]);

    std::size_t h = 0;
    std::size_t cz = 0;
    for (const auto& s : c.steps()) {
        for (const auto& g : s.gates) {
            if (const auto* n = std::get_if<NamedGateOp>(&g)) h += n->gate.kind == NamedKind::H;
            cz += std::holds_alternative<CzGate>(g);
        }
    }
    CHECK(h == 4);
    CHECK(cz == 1);

    const oracle::Mat u = oracle::circuit_unitary(c);
    CHECK(acts_as(u, oracle::controlled_z(4, {0, 1, 2, 3}), 6, {3, 4}) >= 1 - 1e-10);
}

TEST_CASE("multi-controlled Z for other control counts")
{
    SUBCASE("one control is exactly CZ")
    {
        const std::size_t c[] = {0};
        const auto steps = expand_lambda_z(c, 1, {});
        REQUIRE(steps.size() == 1);
        CHECK(oracle::operator_overlap(steps_matrix(2, steps), oracle::cz(2, 0, 1)) >= 1 - 1e-12);
    }
    for (std::size_t controls = 2; controls <= 4; ++controls) {
        CAPTURE(controls);
        const std::size_t n = 2 * controls;  // controls, target, then works
        const auto ctl = range(0, controls);
        const auto work = range(controls + 1, n);
        const auto steps = expand_lambda_z(ctl, controls, work);
        CHECK(steps.size() == 4 * (controls - 1) + 1);
        auto all = ctl;
        all.push_back(controls);
        CHECK(acts_as(steps_matrix(n, steps), oracle::controlled_z(controls + 1, all), n, work) >= 1 - 1e-10);
    }
    const std::size_t c3[] = {0, 1, 2};
    const std::size_t w1[] = {4};
    CHECK_THROWS_AS(expand_lambda_z(c3, 3, w1), InputError);
    const std::size_t w2[] = {3, 4};
    CHECK_THROWS_AS(expand_lambda_z(c3, 3, w2), InputError);
}

TEST_CASE("ladder size grows linearly with the control count")
{
    for (std::size_t c = 2; c <= 10; ++c) {
        const auto ctl = range(0, c);
        const auto work = range(c + 1, 2 * c);
        std::size_t rotations = 0;
        for (const auto& s : expand_lambda_z(ctl, c, work)) {
            for (const auto& g : s.gates) rotations += std::holds_alternative<MultiZRotGate>(g);
        }
        CHECK(rotations == 8 * (c - 1));
    }
}

TEST_CASE("Grover oracle")
{
    const std::size_t q2[] = {0, 1};
    CHECK(oracle::operator_overlap(steps_matrix(2, build_oracle(q2, 3, {})), oracle::controlled_z(2, {0, 1})) >=
          1 - 1e-12);

    oracle::Mat d0 = oracle::Mat::Identity(4, 4);
    d0(0, 0) = -1.0;
    CHECK(oracle::operator_overlap(steps_matrix(2, build_oracle(q2, 0, {})), d0) >= 1 - 1e-12);

    const std::size_t q3[] = {0, 1, 2};
    const std::size_t w[] = {3};
    for (std::uint64_t j = 0; j < 8; ++j) {
        CAPTURE(j);
        oracle::Mat flip = oracle::Mat::Identity(8, 8);
        flip(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = -1.0;
        const oracle::Mat u = steps_matrix(4, build_oracle(q3, j, w));
        CHECK(acts_as(u, flip, 4, {3}) >= 1 - 1e-10);
        CHECK(acts_as(u * u, oracle::Mat::Identity(8, 8), 4, {3}) >= 1 - 1e-10);
    }
    CHECK_THROWS_AS(build_oracle(q2, 4, {}), InputError);
}

TEST_CASE("Grover diffusion")
{
    const std::size_t q2[] = {0, 1};
    const oracle::Mat d = steps_matrix(2, build_diffusion(q2, {}));
    const oracle::Vec s = oracle::Vec::Constant(4, 0.5);
    const oracle::Mat expected = 2.0 * s * s.adjoint() - oracle::Mat::Identity(4, 4);
    CHECK(oracle::operator_overlap(d, expected) >= 1 - 1e-12);
    CHECK(oracle::fidelity(d * s, s) >= 1 - 1e-12);
    CHECK(oracle::operator_overlap(d * d, oracle::Mat::Identity(4, 4)) >= 1 - 1e-12);

    const std::size_t q3[] = {0, 1, 2};
    const std::size_t w[] = {3};
    const oracle::Vec s3 = oracle::Vec::Constant(8, 1.0 / std::sqrt(8.0));
    CHECK(acts_as(steps_matrix(4, build_diffusion(q3, w)), 2.0 * s3 * s3.adjoint() - oracle::Mat::Identity(8, 8), 4,
                  {3}) >= 1 - 1e-10);
}

TEST_CASE("Grover circuits")
{
    CHECK(grover_iterations(2) == 1);
    CHECK(grover_iterations(3) == 2);
    CHECK(grover_iterations(4) == 3);

    const Circuit g = build_grover(3, 5);
    CHECK(g.num_logical() == 3);
    CHECK(g.work_qubits() == std::vector<std::size_t>{3});
    CHECK_THROWS_AS(build_grover(1, 0), InputError);
}

TEST_CASE("angle parsing")
{
    CHECK(parse_angle("pi") == doctest::Approx(kPi));
    CHECK(parse_angle("-pi") == doctest::Approx(-kPi));
    CHECK(parse_angle("pi/4") == doctest::Approx(kPi / 4));
    CHECK(parse_angle("-pi/4") == doctest::Approx(-kPi / 4));
    CHECK(parse_angle("3pi/4") == doctest::Approx(3 * kPi / 4));
    CHECK(parse_angle("3*pi/4") == doctest::Approx(3 * kPi / 4));
    CHECK(parse_angle("0.25") == doctest::Approx(0.25));
    CHECK(parse_angle("-1.5e-1") == doctest::Approx(-0.15));
    CHECK(parse_angle("+2") == doctest::Approx(2.0));
    CHECK(parse_angle("1/2") == doctest::Approx(0.5));
    for (const char* bad : {"", "pi/", "*pi", "3*", "abc", "pi/0", "pi pi", "--1"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_angle(bad), InputError);
    }
}

TEST_CASE("angle formatting")
{
    CHECK(format_angle(0.0) == "0");
    CHECK(format_angle(kPi) == "pi");
    CHECK(format_angle(-kPi) == "-pi");
    CHECK(format_angle(kPi / 4) == "pi/4");
    CHECK(format_angle(-3 * kPi / 4) == "-3pi/4");
    CHECK(parse_angle(format_angle(0.123)) == 0.123);
}

TEST_CASE("circuit text format")
{
    const Circuit c = parse_circuit_string(R"(# comment line
qubits 3 work 1
H 1          # trailing comment
X 2
Z 3
RZ 1 pi/2
SQ 2 pi/3 0 0.5
CZ 1 3
MZROT -pi/8 1 2 4
LAMBDA1 pi/2 1 : 2 3
LAMBDA2 pi 1 2 : 3
LAMBDAZ 1 2 : 3
)");
    CHECK(c.num_qubits() == 4);
    CHECK(c.num_logical() == 3);
    CHECK(c.work_qubits() == std::vector<std::size_t>{3});
    REQUIRE(c.steps().size() == 14);
    CHECK(c.steps()[0].label == "H 1");
    CHECK(c.steps()[3].label == "RZ 1 pi/2");
    CHECK(c.steps()[6].label == "MZROT -pi/8 1 2 4");
    CHECK(c.steps()[7].label == "LAMBDA1 pi/2 1 : 2 3");
    CHECK(c.steps()[7].gates.size() == 2);
    CHECK(c.steps()[8].gates.size() == 4);
    CHECK(std::get<SingleQubitGate>(c.steps()[4].gates[0]).alpha == doctest::Approx(0.5));

    // the three-control Z file matches the built-in circuit
    const Circuit fig4 = parse_circuit_string("qubits 4 work 2 : 4 5\nLAMBDAZ 1 2 3 : 6\n");
    const Circuit ref = lambda123z6_circuit();
    CHECK(fig4.work_qubits() == ref.work_qubits());
    REQUIRE(fig4.tau_max() == ref.tau_max());
    for (std::size_t k = 0; k < ref.tau_max(); ++k) CHECK(fig4.steps()[k].label == ref.steps()[k].label);
    CHECK((oracle::circuit_unitary(fig4) - oracle::circuit_unitary(ref)).norm() < 1e-12);

    const Circuit g = parse_circuit_string("qubits 3 work 1\nGROVER 3 5\n");
    CHECK(g.tau_max() == build_grover(3, 5).tau_max());
    CHECK(parse_circuit_string("qubits 2\n").tau_max() == 0);
}

TEST_CASE("circuit parse errors carry line numbers")
{
    struct Case {
        const char* text;
        std::size_t line;
    };
    const Case cases[] = {
        {"H 1\n", 1},
        {"qubits 2\nH 3\n", 2},
        {"qubits 2\n\nCZ 1 1\n", 3},
        {"qubits 2\nRZ 1 foo\n", 2},
        {"qubits 2\nFOO 1\n", 2},
        {"qubits 2\nqubits 3\n", 2},
        {"qubits 3\nLAMBDAZ 1 2 : 3\n", 2},
        {"qubits 3\nLAMBDA1 pi 1 2 : 3\n", 2},
        {"qubits 3\nLAMBDA2 pi 1 2 3\n", 2},
        {"qubits 3 work 1\nGROVER 3 9\n", 2},
        {"qubits 2 work 1 : 5\n", 1},
        {"qubits 2\nMZROT pi\n", 2},
        {"qubits 2\nSQ 1 0 0\n", 2},
        {"# nothing\n", 1},
    };
    for (const auto& c : cases) {
        CAPTURE(c.text);
        try {
            parse_circuit_string(c.text);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == c.line);
        }
    }
    CHECK_THROWS_AS(parse_circuit_file("/nonexistent/file.hqc"), InputError);
}
