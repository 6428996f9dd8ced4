#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hqcm/circuit.hpp"
#include "hqcm/gf2_expr.hpp"
#include "hqcm/pauli_tracker.hpp"
#include "hqcm/random.hpp"
#include "hqcm/star_rotor.hpp"
#include "hqcm/state_vector.hpp"

namespace hqcm {

enum class Mode { Hqcm, Unitary, Both };

enum class KappaPolicy {
    FromCircuit,  // each rotation uses the kappa stored in its gate (0 unless set)
    Random,       // a fresh kappa bit per rotation from the shot's random stream
    List,         // ExecutionConfig::kappas, one entry per rotation
};

struct ExecutionConfig {
    Mode mode = Mode::Hqcm;
    std::size_t shots = 1;
    std::uint64_t seed = 0;
    bool trace = false;
    bool symbolic = false;
    /// One outcome per rotation, in execution order; applied to every shot.
    std::optional<std::vector<int>> forced_outcomes;
    KappaPolicy kappa_policy = KappaPolicy::FromCircuit;
    std::vector<int> kappas;
    /// Report work qubits in the readout as well as logical ones.
    bool include_work = false;
    /// State of the logical and work qubits before the first step. Defaults
    /// to |0> on logical qubits and |+> on work qubits.
    std::optional<StateVector> initial_state;

    /// Throws InputError if the configuration does not fit the circuit.
    void validate(const Circuit& circuit) const;
};

/// Default input: |0> on every logical qubit, |+> on every work qubit.
StateVector default_input(const Circuit& circuit);

/// Qubits whose readout is reported (0-based, ascending).
std::vector<std::size_t> reported_qubits(const Circuit& circuit, bool include_work);

/// Readout as an integer: bit k belongs to the k-th reported qubit.
std::uint64_t readout_index(std::span<const int> bits);

struct ShotResult {
    std::size_t shot = 0;
    std::vector<int> raw;        // s over the reported qubits
    std::vector<int> corrected;  // s' = s xor x over the reported qubits
    InfoFlow flow;               // final flow over logical and work qubits
    std::vector<RotationRecord> rotations;
    /// Fidelity of the byproduct-corrected state with the unitary reference
    /// (Mode::Both only).
    std::optional<double> fidelity;
};

/// One measured rotation of a step as seen by the classical side.
struct TraceRotation {
    std::vector<std::size_t> leaves;
    double theta = 0.0;  // as written in the circuit
    int kappa = 0;
    OutcomeSymbol symbol;
    Gf2Expr parity_expr;  // symbolic tables: x-parity over the leaves
    int parity = 0;       // numeric tables
    double theta_executed = 0.0;
    int outcome = 0;
};

/// Row tau holds the flow after tau steps together with the angle
/// adaptations and outcomes of step tau + 1 (empty for the last row).
struct TraceRow {
    std::size_t tau = 0;
    InfoFlow flow;
    SymbolicFlow symbolic_flow;
    std::string next_label;
    std::vector<TraceRotation> rotations;
};

struct TraceTable {
    bool symbolic = false;
    std::size_t num_qubits = 0;
    /// Step number -> rotation count, for steps with more than one rotation.
    std::map<int, int> group_sizes;
    std::vector<TraceRow> rows;
};

/// Result of one HQCM pass without the final readout.
struct HqcmOutcome {
    StateVector state;  // logical and work qubits, byproduct still present
    InfoFlow flow;
    std::vector<RotationRecord> rotations;
};

struct HqcmOptions {
    KappaPolicy kappa_policy = KappaPolicy::FromCircuit;
    std::span<const int> kappas;
    std::span<const int> forced_outcomes;
    TraceTable* trace = nullptr;
};

/// Executes every step: single-qubit gates and CZ unitarily on the
/// byproduct-adapted gate, multi-qubit Z rotations through a star graph on a
/// recycled ancilla with the adapted angle. The flow is updated after each
/// gate.
HqcmOutcome execute_hqcm(const Circuit& circuit, const StateVector& input, RandomSource& rng,
                         const HqcmOptions& options = {});

/// All shots in HQCM mode; shot k draws from RandomSource(seed, k). When
/// `trace` is given, it receives the numeric trace of shot 0.
std::vector<ShotResult> run_hqcm(const Circuit& circuit, const ExecutionConfig& config,
                                 TraceTable* trace = nullptr);

struct UnitaryResult {
    StateVector state;
    std::vector<double> distribution;  // over the reported qubits, by readout_index
};

/// Every gate applied as its unitary, multi-qubit rotations as diagonals.
UnitaryResult run_unitary(const Circuit& circuit, const ExecutionConfig& config);

/// Applies the circuit's unitary to a state of its logical and work qubits.
StateVector apply_circuit(const Circuit& circuit, StateVector state);

/// Distribution of the reported qubits.
std::vector<double> marginal_distribution(const StateVector& state, std::span<const std::size_t> qubits);

struct EquivalenceReport {
    std::size_t trials = 0;
    double min_fidelity = 1.0;
    double mean_fidelity = 1.0;
    bool passed(double tolerance = 1e-10) const { return min_fidelity >= 1.0 - tolerance; }
};

/// Random logical inputs (|+> on work qubits). Each trial runs HQCM, undoes
/// the tracked byproduct and compares with the unitary output. Trial k uses
/// RandomSource(seed, k).
EquivalenceReport verify_equivalence(const Circuit& circuit, std::size_t trials, std::uint64_t seed);

/// `num_gates` gates on `num_qubits` qubits, each drawn uniformly from
/// {H, Rz(random), SQ(random axis and angle), CZ(random pair),
/// MZROT(random subset of at most 3 qubits, random angle)}. Angles are
/// uniform in [-pi, pi), axes uniform on the sphere.
Circuit random_circuit(std::size_t num_qubits, std::size_t num_gates, RandomSource& rng);

/// Flow-only pass with one symbol per rotation outcome. Rotation k of step j
/// (1-based) is m_{jk}, or m_j when the step has a single rotation. `kappas`
/// overrides the circuit's kappa values when nonempty.
TraceTable trace_symbolic(const Circuit& circuit, std::span<const int> kappas = {});

/// Rebuilds the final flow from a numeric trace using only the tracker.
InfoFlow replay_flow(const Circuit& circuit, const TraceTable& table);

/// Aligned text rendering of a trace, one block per tau.
std::string format_trace(const TraceTable& table);

/// Text of the symbolic trace of the Lambda^{123}Z^6 circuit.
std::string table1_text();

/// True for odd multiples of pi/2, where Rz is a Clifford gate.
bool is_odd_half_pi(double angle);

/// How a gate moves the flow; nullopt when propagation is the identity.
std::optional<PropagationGate> propagation_for(const Gate& gate);

}  // namespace hqcm
