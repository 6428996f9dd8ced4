#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hqcm/circuit.hpp"

namespace hqcm {

/// Controlled rotation with one control:
///   Lambda^c U^T(-2t) = U^T(-t) U^{c,T}(t),   t = -angle/2.
/// Emits [MZROT({c} u T, t), MZROT(T, -t)] in execution order.
std::vector<Gate> expand_lambda1(std::size_t control, std::span<const std::size_t> targets, double angle);

/// Controlled rotation with two controls:
///   Lambda^{c1 c2} U^T(4t) = U^T(t) U^{c1,T}(-t) U^{c2,T}(-t) U^{c1,c2,T}(t),   t = angle/4.
/// Execution order: {c1,c2,T} t, {c2,T} -t, {c1,T} -t, {T} t.
std::vector<Gate> expand_lambda2(std::span<const std::size_t> controls, std::span<const std::size_t> targets,
                                 double angle);

/// Multi-controlled Z on `target` with c = |controls| controls using c-1 work
/// qubits prepared in |+>. Each Lambda^2 block and each single gate is one
/// step. Controls are combined pairwise onto the work qubits, the last work
/// qubit drives CZ(work, target) between Hadamards, and the ladder is
/// undone in reverse with -pi blocks. For c = 3 this is the nine-step
/// Lambda^{123}Z^6 circuit.
///
/// c = 1 needs no work qubit and becomes one step of three rotations:
/// expand_lambda1 at -pi plus U^c(-pi/2), which cancels the relative phase
/// so the result equals CZ.
std::vector<Step> expand_lambda_z(std::span<const std::size_t> controls, std::size_t target,
                                  std::span<const std::size_t> work);

/// Phase flip on basis state |j>: X on each qubit whose bit of j is 0,
/// multi-controlled Z (qubits[0..n-2] control qubits[n-1]), then the same X
/// gates. Bit k of j belongs to qubits[k].
std::vector<Step> build_oracle(std::span<const std::size_t> qubits, std::uint64_t j, std::span<const std::size_t> work);

/// H^n X^n [multi-controlled Z] X^n H^n = I - 2|s><s| (the conventional
/// diffusion up to its global sign).
std::vector<Step> build_diffusion(std::span<const std::size_t> qubits, std::span<const std::size_t> work);

/// floor(pi/4 sqrt(2^n)).
std::size_t grover_iterations(std::size_t n);

/// Grover search over n logical qubits (indices 0..n-1) with n-2 work qubits
/// after them: H on every logical qubit, then `iterations` rounds of oracle
/// and diffusion.
Circuit build_grover(std::size_t n, std::uint64_t marked, std::optional<std::size_t> iterations = std::nullopt);

/// Appends Grover steps to an existing circuit using the given logical
/// qubits and work qubits.
void append_grover(Circuit& circuit, std::span<const std::size_t> qubits, std::span<const std::size_t> work,
                   std::uint64_t marked, std::size_t iterations);

/// The Lambda^{123}Z^6 example circuit: controls 1,2,3, work qubits 4,5 and
/// target 6 (0-based 0,1,2 / 3,4 / 5).
Circuit lambda123z6_circuit();

}  // namespace hqcm
