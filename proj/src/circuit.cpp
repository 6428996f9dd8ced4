#include "hqcm/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "hqcm/errors.hpp"

namespace hqcm {

Circuit::Circuit(std::size_t num_logical, std::size_t num_work)
    : num_logical_(num_logical), work_(num_work)
{
    std::iota(work_.begin(), work_.end(), num_logical);
}

Circuit::Circuit(std::size_t num_logical, std::vector<std::size_t> work_qubits)
    : num_logical_(num_logical), work_(std::move(work_qubits))
{
    std::sort(work_.begin(), work_.end());
    if (std::adjacent_find(work_.begin(), work_.end()) != work_.end()) {
        throw InputError("work qubits must be distinct");
    }
    for (std::size_t w : work_) {
        if (w >= num_qubits()) throw InputError("work qubit index out of range");
    }
}

std::vector<std::size_t> Circuit::logical_qubits() const
{
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < num_qubits(); ++q) {
        if (!is_work(q)) out.push_back(q);
    }
    return out;
}

bool Circuit::is_work(std::size_t q) const
{
    return std::binary_search(work_.begin(), work_.end(), q);
}

std::size_t Circuit::gate_count() const
{
    std::size_t total = 0;
    for (const auto& s : steps_) total += s.gates.size();
    return total;
}

std::size_t Circuit::rotation_count() const
{
    std::size_t total = 0;
    for (const auto& s : steps_) {
        for (const auto& g : s.gates) total += std::holds_alternative<MultiZRotGate>(g) ? 1 : 0;
    }
    return total;
}

Circuit& Circuit::add(Gate gate, std::string label)
{
    check_gate(gate);
    if (label.empty()) label = describe(gate);
    steps_.push_back(Step{std::move(label), {std::move(gate)}});
    return *this;
}

Circuit& Circuit::add_step(Step step)
{
    if (step.gates.empty()) throw InputError("empty step");
    for (const auto& g : step.gates) check_gate(g);
    steps_.push_back(std::move(step));
    return *this;
}

Circuit& Circuit::add_steps(const std::vector<Step>& steps)
{
    for (const auto& s : steps) add_step(s);
    return *this;
}

void Circuit::validate() const
{
    for (const auto& s : steps_) {
        for (const auto& g : s.gates) check_gate(g);
    }
}

void Circuit::check_gate(const Gate& gate) const
{
    const std::size_t n = num_qubits();
    auto check = [n](std::size_t q) {
        if (q >= n) throw InputError("qubit " + std::to_string(q + 1) + " out of range (" + std::to_string(n) + " qubits)");
    };
    std::visit(Overloaded{
                   [&](const SingleQubitGate& g) { check(g.qubit); },
                   [&](const NamedGateOp& g) { check(g.qubit); },
                   [&](const CzGate& g) {
                       check(g.a);
                       check(g.b);
                       if (g.a == g.b) throw InputError("CZ needs two distinct qubits");
                   },
                   [&](const MultiZRotGate& g) {
                       if (g.leaves.empty()) throw InputError("Z rotation needs at least one qubit");
                       std::vector<std::size_t> sorted(g.leaves);
                       std::sort(sorted.begin(), sorted.end());
                       if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
                           throw InputError("Z rotation qubits must be distinct");
                       }
                       for (std::size_t q : g.leaves) check(q);
                       if (g.kappa != 0 && g.kappa != 1) throw InputError("kappa must be 0 or 1");
                   },
               },
               gate);
}

std::string format_angle(double radians)
{
    const double pi = std::numbers::pi;
    if (radians == 0.0) return "0";
    for (int den : {1, 2, 4, 8, 3, 6, 12, 16}) {
        const double num = radians / pi * den;
        const double rounded = std::round(num);
        if (rounded != 0.0 && std::abs(num - rounded) < 1e-12) {
            const long long k = static_cast<long long>(rounded);
            std::string out;
            if (k == -1) {
                out = "-pi";
            } else if (k == 1) {
                out = "pi";
            } else {
                out = std::to_string(k) + "pi";
            }
            if (den != 1) out += "/" + std::to_string(den);
            return out;
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", radians);
    return buf;
}

std::string describe(const Gate& gate)
{
    auto label = [](std::size_t q) { return std::to_string(q + 1); };
    return std::visit(Overloaded{
                          [&](const SingleQubitGate& g) {
                              return "SQ " + label(g.qubit) + " " + format_angle(g.axis.theta) + " " +
                                     format_angle(g.axis.phi) + " " + format_angle(g.alpha);
                          },
                          [&](const NamedGateOp& g) -> std::string {
                              switch (g.gate.kind) {
                              case NamedKind::X: return "X " + label(g.qubit);
                              case NamedKind::Z: return "Z " + label(g.qubit);
                              case NamedKind::H: return "H " + label(g.qubit);
                              case NamedKind::Rz: return "RZ " + label(g.qubit) + " " + format_angle(g.gate.angle);
                              }
                              return "?";
                          },
                          [&](const CzGate& g) { return "CZ " + label(g.a) + " " + label(g.b); },
                          [&](const MultiZRotGate& g) {
                              std::string out = "MZROT " + format_angle(g.theta);
                              for (std::size_t q : g.leaves) out += " " + label(q);
                              return out;
                          },
                      },
                      gate);
}

}  // namespace hqcm
