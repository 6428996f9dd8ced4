#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hqcm/state_vector.hpp"

namespace hqcm {

/// exp(-i alpha (r.sigma)/2) on qubit q.
struct SingleQubitGate {
    std::size_t qubit = 0;
    BlochVector axis;
    double alpha = 0.0;
};

struct NamedGateOp {
    std::size_t qubit = 0;
    NamedGate gate;
};

struct CzGate {
    std::size_t a = 0;
    std::size_t b = 0;
};

/// exp(-i theta Z^{(x)leaves}/2), executed by measuring a star graph state.
struct MultiZRotGate {
    std::vector<std::size_t> leaves;
    double theta = 0.0;
    int kappa = 0;
};

using Gate = std::variant<SingleQubitGate, NamedGateOp, CzGate, MultiZRotGate>;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

/// One computational step: a single elementary gate, or the rotations of a
/// controlled-rotation block, which share one step of classical processing.
struct Step {
    std::string label;
    std::vector<Gate> gates;
};

/// Ordered list of steps over logical and work qubits (0-based indices).
/// The measurement ancilla is not part of the circuit; executors append it.
class Circuit {
public:
    Circuit() = default;
    /// Work qubits default to the indices after the logical ones.
    Circuit(std::size_t num_logical, std::size_t num_work);
    /// Work qubits at explicit positions in a register of num_logical + |work|.
    Circuit(std::size_t num_logical, std::vector<std::size_t> work_qubits);

    std::size_t num_logical() const noexcept { return num_logical_; }
    std::size_t num_work() const noexcept { return work_.size(); }
    std::size_t num_qubits() const noexcept { return num_logical_ + work_.size(); }
    const std::vector<std::size_t>& work_qubits() const noexcept { return work_; }
    std::vector<std::size_t> logical_qubits() const;
    bool is_work(std::size_t q) const;

    const std::vector<Step>& steps() const noexcept { return steps_; }
    /// Number of computational steps.
    std::size_t tau_max() const noexcept { return steps_.size(); }
    std::size_t gate_count() const;
    std::size_t rotation_count() const;

    /// Appends a gate as its own step.
    Circuit& add(Gate gate, std::string label = {});
    Circuit& add_step(Step step);
    Circuit& add_steps(const std::vector<Step>& steps);

    /// Throws InputError if any gate references an invalid qubit.
    void validate() const;

private:
    void check_gate(const Gate& gate) const;

    std::size_t num_logical_ = 0;
    std::vector<std::size_t> work_;
    std::vector<Step> steps_;
};

/// Short text for a gate with 1-based qubit labels, e.g. "H 4", "MZROT pi/4 1 2 4".
std::string describe(const Gate& gate);
/// Multiple of pi when close to one ("pi/4", "-3pi/2"), otherwise decimal.
std::string format_angle(double radians);

}  // namespace hqcm
