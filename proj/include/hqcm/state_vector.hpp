#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hqcm/random.hpp"

namespace hqcm {

using Complex = std::complex<double>;
using Matrix2 = std::array<Complex, 4>;  // row-major {m00, m01, m10, m11}

/// Outcome probabilities below this are treated as impossible.
inline constexpr double kImpossible = 1e-14;

/// Direction on the Bloch sphere, r = (sin t cos p, sin t sin p, cos t).
struct BlochVector {
    double theta = 0.0;
    double phi = 0.0;

    std::array<double, 3> components() const;

    static BlochVector x_axis() { return {1.5707963267948966, 0.0}; }
    static BlochVector y_axis() { return {1.5707963267948966, 1.5707963267948966}; }
    static BlochVector z_axis() { return {0.0, 0.0}; }
    /// Unit vector from Cartesian components (need not be normalized).
    static BlochVector from_components(double x, double y, double z);
};

/// Projective measurement of one qubit along a Bloch direction. Outcome 0
/// projects onto cos(t/2)|0> + e^{ip} sin(t/2)|1>, outcome 1 onto the
/// orthogonal -sin(t/2)|0> + e^{ip} cos(t/2)|1>.
struct MeasurementSpec {
    std::size_t target = 0;
    BlochVector basis;

    /// Basis ket for the given outcome as (c0, c1).
    static std::array<Complex, 2> ket(const BlochVector& basis, int outcome);
    /// Projector P_m = (I + (-1)^m r.sigma)/2.
    static Matrix2 projector(const BlochVector& basis, int outcome);
};

enum class NamedKind { X, Z, H, Rz };

/// Fixed gates applied through their exact matrices.
struct NamedGate {
    NamedKind kind = NamedKind::X;
    double angle = 0.0;  // only used by Rz

    static NamedGate x() { return {NamedKind::X, 0.0}; }
    static NamedGate z() { return {NamedKind::Z, 0.0}; }
    static NamedGate h() { return {NamedKind::H, 0.0}; }
    static NamedGate rz(double phi) { return {NamedKind::Rz, phi}; }

    Matrix2 matrix() const;
};

/// exp(-i alpha (r.sigma)/2).
Matrix2 rotation_matrix(const BlochVector& axis, double alpha);

/// Dense state of an n-qubit register.
///
/// Qubit q is bit q of the basis index (qubit 0 is the least significant
/// bit), so |b_{n-1} ... b_1 b_0> has index sum_q b_q 2^q.
class StateVector {
public:
    /// |0...0> on num_qubits qubits.
    explicit StateVector(std::size_t num_qubits = 1);

    /// Takes ownership of amplitudes. The length must be a power of two and
    /// the norm within 1e-10 of one.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);
    /// Haar-distributed pure state (normalized complex Gaussian vector).
    static StateVector random(std::size_t num_qubits, RandomSource& rng);

    std::size_t num_qubits() const noexcept { return num_qubits_; }
    std::size_t dimension() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    const Complex& operator[](std::size_t index) const { return amps_[index]; }

    double norm_squared() const;

    void apply_matrix(std::size_t q, const Matrix2& m);
    void apply_single_qubit(std::size_t q, const BlochVector& axis, double alpha);
    void apply_named(std::size_t q, const NamedGate& gate);
    void apply_cz(std::size_t a, std::size_t b);
    /// exp(-i theta Z^{(x) leaves} / 2), applied as a diagonal.
    void apply_multi_z(std::span<const std::size_t> leaves, double theta);

    /// (P(0), P(1)) for measuring spec.target along spec.basis.
    std::pair<double, double> outcome_probabilities(const MeasurementSpec& spec) const;

    /// Projective measurement. Returns the outcome and leaves the state
    /// collapsed and renormalized. An outcome with probability below
    /// kImpossible is never drawn; a forced outcome with such probability
    /// throws ExecutionError.
    int measure(const MeasurementSpec& spec, RandomSource& rng,
                std::optional<int> forced = std::nullopt);

    /// Projects onto the given outcome without renormalizing or sampling and
    /// returns the probability it had.
    double project(const MeasurementSpec& spec, int outcome);

    /// Drops qubit q, which must be in the product state `ket`. The result is
    /// the contraction <ket|_q |psi>, renormalized.
    StateVector remove_qubit(std::size_t q, const std::array<Complex, 2>& ket) const;

    /// Appends a qubit in state `ket` as the new most-significant qubit.
    StateVector append_qubit(const std::array<Complex, 2>& ket) const;

    /// <psi| O_q |psi> for a Pauli string given as X and Z masks.
    double pauli_expectation(std::uint64_t x_mask, std::uint64_t z_mask) const;

    /// Z-basis probability of each basis index.
    std::vector<double> probabilities() const;

private:
    void check_qubit(std::size_t q) const;

    std::size_t num_qubits_;
    std::vector<Complex> amps_;
};

/// Basis state with bits[q] on qubit q.
StateVector make_basis_state(std::size_t num_qubits, std::span<const int> bits);

/// |<a|b>|^2, insensitive to global phase.
double fidelity(const StateVector& a, const StateVector& b);

/// Tensor product with `high` occupying the more significant qubits.
StateVector tensor(const StateVector& low, const StateVector& high);

}  // namespace hqcm
