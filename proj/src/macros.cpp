#include "hqcm/macros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hqcm/errors.hpp"

namespace hqcm {

namespace {

constexpr double kPi = std::numbers::pi;

void require_disjoint(std::span<const std::size_t> a, std::span<const std::size_t> b, const char* what)
{
    for (std::size_t q : a) {
        if (std::find(b.begin(), b.end(), q) != b.end()) {
            throw InputError(std::string(what) + ": qubit " + std::to_string(q + 1) + " used twice");
        }
    }
}

void require_distinct(std::span<const std::size_t> qubits, const char* what)
{
    std::vector<std::size_t> sorted(qubits.begin(), qubits.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InputError(std::string(what) + ": repeated qubit");
    }
}

std::vector<std::size_t> join(std::initializer_list<std::size_t> head, std::span<const std::size_t> tail)
{
    std::vector<std::size_t> out(head);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

std::string qubit_list(std::span<const std::size_t> qubits)
{
    std::string out;
    for (std::size_t q : qubits) out += std::to_string(q + 1);
    return out;
}

Step single(Gate gate) { return Step{describe(gate), {std::move(gate)}}; }

Step named_step(std::size_t q, NamedGate gate) { return single(NamedGateOp{q, gate}); }

}  // namespace

std::vector<Gate> expand_lambda1(std::size_t control, std::span<const std::size_t> targets, double angle)
{
    if (targets.empty()) throw InputError("controlled rotation needs at least one target");
    require_distinct(targets, "LAMBDA1");
    const std::size_t c[] = {control};
    require_disjoint(c, targets, "LAMBDA1");

    const double theta = -angle / 2.0;
    std::vector<std::size_t> all = join({control}, targets);
    return {MultiZRotGate{std::move(all), theta, 0},
            MultiZRotGate{{targets.begin(), targets.end()}, -theta, 0}};
}

std::vector<Gate> expand_lambda2(std::span<const std::size_t> controls, std::span<const std::size_t> targets,
                                 double angle)
{
    if (controls.size() != 2) throw InputError("LAMBDA2 needs exactly two controls");
    if (targets.empty()) throw InputError("controlled rotation needs at least one target");
    require_distinct(controls, "LAMBDA2");
    require_distinct(targets, "LAMBDA2");
    require_disjoint(controls, targets, "LAMBDA2");

    const double theta = angle / 4.0;
    const std::size_t c1 = controls[0];
    const std::size_t c2 = controls[1];
    return {
        MultiZRotGate{join({c1, c2}, targets), theta, 0},
        MultiZRotGate{join({c2}, targets), -theta, 0},
        MultiZRotGate{join({c1}, targets), -theta, 0},
        MultiZRotGate{{targets.begin(), targets.end()}, theta, 0},
    };
}

std::vector<Step> expand_lambda_z(std::span<const std::size_t> controls, std::size_t target,
                                  std::span<const std::size_t> work)
{
    const std::size_t c = controls.size();
    if (c == 0) throw InputError("LAMBDAZ needs at least one control");
    if (work.size() != c - 1) {
        throw InputError("LAMBDAZ with " + std::to_string(c) + " controls needs " + std::to_string(c - 1) +
                         " work qubits, got " + std::to_string(work.size()));
    }
    const std::size_t t[] = {target};
    require_distinct(controls, "LAMBDAZ");
    require_distinct(work, "LAMBDAZ");
    require_disjoint(controls, t, "LAMBDAZ");
    require_disjoint(work, t, "LAMBDAZ");
    require_disjoint(controls, work, "LAMBDAZ");

    if (c == 1) {
        auto gates = expand_lambda1(controls[0], t, -kPi);
        gates.push_back(MultiZRotGate{{controls[0]}, -kPi / 2.0, 0});
        return {Step{"LAMBDAZ " + qubit_list(controls) + " : " + qubit_list(t), std::move(gates)}};
    }

    auto block = [&](std::size_t a, std::size_t b, std::size_t w, double angle) {
        const std::size_t ctrl[] = {a, b};
        const std::size_t tgt[] = {w};
        std::string label = "LAMBDA2 " + format_angle(angle) + " " + std::to_string(a + 1) + " " +
                            std::to_string(b + 1) + " : " + std::to_string(w + 1);
        return Step{std::move(label), expand_lambda2(ctrl, tgt, angle)};
    };

    // Ladder input pairs: (c1, c2) -> w1, then (c_{i+1}, w_{i-1}) -> w_i.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.emplace_back(controls[0], controls[1]);
    for (std::size_t i = 1; i + 1 < c; ++i) pairs.emplace_back(controls[i + 1], work[i - 1]);

    std::vector<Step> steps;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        steps.push_back(block(pairs[i].first, pairs[i].second, work[i], kPi));
        steps.push_back(named_step(work[i], NamedGate::h()));
    }
    steps.push_back(single(CzGate{work.back(), target}));
    for (std::size_t i = pairs.size(); i-- > 0;) {
        steps.push_back(named_step(work[i], NamedGate::h()));
        steps.push_back(block(pairs[i].first, pairs[i].second, work[i], -kPi));
    }
    return steps;
}

std::vector<Step> build_oracle(std::span<const std::size_t> qubits, std::uint64_t j, std::span<const std::size_t> work)
{
    const std::size_t n = qubits.size();
    if (n < 2) throw InputError("oracle needs at least two qubits");
    if (n < 64 && j >= (std::uint64_t{1} << n)) {
        throw InputError("marked item " + std::to_string(j) + " out of range for " + std::to_string(n) + " qubits");
    }
    std::vector<Step> flips;
    for (std::size_t k = 0; k < n; ++k) {
        if (!((j >> k) & 1)) flips.push_back(named_step(qubits[k], NamedGate::x()));
    }
    std::vector<Step> steps(flips);
    auto core = expand_lambda_z(qubits.first(n - 1), qubits[n - 1], work.first(n - 2));
    steps.insert(steps.end(), core.begin(), core.end());
    steps.insert(steps.end(), flips.begin(), flips.end());
    return steps;
}

std::vector<Step> build_diffusion(std::span<const std::size_t> qubits, std::span<const std::size_t> work)
{
    const std::size_t n = qubits.size();
    if (n < 2) throw InputError("diffusion needs at least two qubits");
    std::vector<Step> steps;
    for (std::size_t q : qubits) steps.push_back(named_step(q, NamedGate::h()));
    for (std::size_t q : qubits) steps.push_back(named_step(q, NamedGate::x()));
    auto core = expand_lambda_z(qubits.first(n - 1), qubits[n - 1], work.first(n - 2));
    steps.insert(steps.end(), core.begin(), core.end());
    for (std::size_t q : qubits) steps.push_back(named_step(q, NamedGate::x()));
    for (std::size_t q : qubits) steps.push_back(named_step(q, NamedGate::h()));
    return steps;
}

std::size_t grover_iterations(std::size_t n)
{
    return static_cast<std::size_t>(std::floor(kPi / 4.0 * std::sqrt(std::ldexp(1.0, static_cast<int>(n)))));
}

void append_grover(Circuit& circuit, std::span<const std::size_t> qubits, std::span<const std::size_t> work,
                   std::uint64_t marked, std::size_t iterations)
{
    const std::size_t n = qubits.size();
    if (n < 2) throw InputError("Grover search needs at least two qubits");
    if (work.size() < n - 2) {
        throw InputError("Grover search on " + std::to_string(n) + " qubits needs " + std::to_string(n - 2) +
                         " work qubits");
    }
    const auto oracle = build_oracle(qubits, marked, work);
    const auto diffusion = build_diffusion(qubits, work);
    for (std::size_t q : qubits) circuit.add_step(named_step(q, NamedGate::h()));
    for (std::size_t it = 0; it < iterations; ++it) {
        circuit.add_steps(oracle);
        circuit.add_steps(diffusion);
    }
}

Circuit build_grover(std::size_t n, std::uint64_t marked, std::optional<std::size_t> iterations)
{
    if (n < 2) throw InputError("Grover search needs at least two qubits");
    Circuit circuit(n, n - 2);
    std::vector<std::size_t> qubits(n);
    for (std::size_t q = 0; q < n; ++q) qubits[q] = q;
    append_grover(circuit, qubits, circuit.work_qubits(), marked, iterations.value_or(grover_iterations(n)));
    return circuit;
}

Circuit lambda123z6_circuit()
{
    Circuit circuit(4, std::vector<std::size_t>{3, 4});
    const std::size_t controls[] = {0, 1, 2};
    const std::size_t work[] = {3, 4};
    circuit.add_steps(expand_lambda_z(controls, 5, work));
    return circuit;
}

}  // namespace hqcm
