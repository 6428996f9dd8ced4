#include "hqcm/star_rotor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hqcm/errors.hpp"

namespace hqcm {

void StarGraph::validate(std::size_t num_qubits) const
{
    if (ancilla >= num_qubits) throw InputError("ancilla index out of range");
    if (leaves.empty()) throw InputError("star graph needs at least one leaf");
    std::vector<std::size_t> sorted(leaves);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InputError("star graph leaves must be distinct");
    }
    for (std::size_t q : leaves) {
        if (q >= num_qubits) throw InputError("leaf index " + std::to_string(q) + " out of range");
        if (q == ancilla) throw InputError("ancilla cannot also be a leaf");
    }
}

void build_star_state(StateVector& state, const StarGraph& graph, AncillaPrep prep)
{
    graph.validate(state.num_qubits());
    if (prep.kappa != 0 && prep.kappa != 1) throw InputError("kappa must be 0 or 1");
    const auto [p0, p1] = state.outcome_probabilities({graph.ancilla, BlochVector::z_axis()});
    if (p1 > 1e-12) throw InputError("ancilla must be in |0> before building a star state");

    state.apply_named(graph.ancilla, NamedGate::h());
    if (prep.kappa == 1) state.apply_named(graph.ancilla, NamedGate::z());
    for (std::size_t leaf : graph.leaves) state.apply_cz(graph.ancilla, leaf);
}

double check_stabilizer(const StateVector& state, const StarGraph& graph)
{
    graph.validate(state.num_qubits());
    std::uint64_t z_mask = 0;
    for (std::size_t leaf : graph.leaves) z_mask |= std::uint64_t{1} << leaf;
    return state.pauli_expectation(std::uint64_t{1} << graph.ancilla, z_mask);
}

BlochVector rotation_basis(double theta, AncillaPrep prep)
{
    const double half_pi = std::numbers::pi / 2.0;
    return {theta, prep.kappa == 0 ? half_pi : -half_pi};
}

void reset_qubit(StateVector& state, std::size_t q, RandomSource& rng)
{
    if (state.measure({q, BlochVector::z_axis()}, rng) == 1) state.apply_named(q, NamedGate::x());
}

RotationRecord multi_z_rotation(StateVector& state, std::span<const std::size_t> leaves, double theta,
                                AncillaPrep prep, std::size_t ancilla, RandomSource& rng,
                                std::optional<int> forced)
{
    StarGraph graph{ancilla, {leaves.begin(), leaves.end()}};
    build_star_state(state, graph, prep);

    RotationRecord record;
    record.theta_requested = theta;
    record.theta_executed = theta;
    record.kappa = prep.kappa;
    record.leaves = graph.leaves;
    record.outcome = state.measure({ancilla, rotation_basis(theta, prep)}, rng, forced);

    reset_qubit(state, ancilla, rng);
    return record;
}

std::pair<int, StateVector> rz_teleport_gadget(const StateVector& input, double phi, AncillaPrep prep,
                                               RandomSource& rng, std::optional<int> forced)
{
    if (input.num_qubits() != 1) throw InputError("teleport gadget takes a one-qubit input");
    // qubit 0: logical input, qubit 1: ancilla
    StateVector state = input.append_qubit({Complex{1.0, 0.0}, Complex{0.0, 0.0}});
    build_star_state(state, StarGraph{1, {0}}, prep);

    const BlochVector basis{std::numbers::pi / 2.0, -phi};
    const int m = state.measure({0, basis}, rng, forced);
    return {m, state.remove_qubit(0, MeasurementSpec::ket(basis, m))};
}

}  // namespace hqcm
