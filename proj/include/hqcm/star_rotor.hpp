#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hqcm/random.hpp"
#include "hqcm/state_vector.hpp"

namespace hqcm {

/// Ancilla preparation in the X eigenstate (|0> + (-1)^kappa |1>)/sqrt(2).
struct AncillaPrep {
    int kappa = 0;
};

/// One ancilla joined by CZ bonds to a set of leaf qubits.
struct StarGraph {
    std::size_t ancilla = 0;
    std::vector<std::size_t> leaves;

    /// Throws InputError unless the leaves are nonempty, distinct, in range
    /// and do not contain the ancilla.
    void validate(std::size_t num_qubits) const;
};

/// Classical record of one measurement-driven Z rotation.
struct RotationRecord {
    double theta_requested = 0.0;
    double theta_executed = 0.0;
    int kappa = 0;
    int outcome = 0;
    std::vector<std::size_t> leaves;
};

/// Prepares the ancilla (which must be |0>) in its kappa-signed X eigenstate
/// and entangles it with every leaf:
///   (|0>_a |psi> + (-1)^kappa |1>_a Z^{(x)n} |psi>) / sqrt(2).
void build_star_state(StateVector& state, const StarGraph& graph, AncillaPrep prep);

/// <K> with K = X_ancilla (x) prod_leaves Z. Equals (-1)^kappa on a star state.
double check_stabilizer(const StateVector& state, const StarGraph& graph);

/// Measurement basis that enacts exp(-i theta Z^{(x)n}/2): polar angle theta,
/// azimuth (-1)^kappa pi/2.
BlochVector rotation_basis(double theta, AncillaPrep prep);

/// Executes exp(-i theta Z^{(x)leaves}/2) by building a star state and
/// measuring the ancilla. On return the leaves hold
///   (Z^{(x)n})^m exp(-i theta Z^{(x)n}/2) |psi_in>
/// up to global phase, and the ancilla has been reset to |0> (Z measurement
/// plus conditional X) so it can be reused.
RotationRecord multi_z_rotation(StateVector& state, std::span<const std::size_t> leaves, double theta,
                                AncillaPrep prep, std::size_t ancilla, RandomSource& rng,
                                std::optional<int> forced = std::nullopt);

/// Measures a qubit in Z and flips it back to |0> if needed.
void reset_qubit(StateVector& state, std::size_t q, RandomSource& rng);

/// Single-qubit Rz teleportation through a two-qubit graph state. The input
/// qubit is measured in {(|0> + (-1)^m e^{-i phi}|1>)/sqrt(2)}; the returned
/// one-qubit state (the former ancilla) equals X^m Z^kappa H Rz(phi) |psi_in>
/// up to global phase.
std::pair<int, StateVector> rz_teleport_gadget(const StateVector& input, double phi, AncillaPrep prep,
                                               RandomSource& rng, std::optional<int> forced = std::nullopt);

}  // namespace hqcm
