#include "hqcm/state_vector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "hqcm/errors.hpp"

namespace hqcm {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

std::array<double, 3> BlochVector::components() const
{
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

BlochVector BlochVector::from_components(double x, double y, double z)
{
    const double r = std::sqrt(x * x + y * y + z * z);
    if (r == 0.0) throw InputError("zero-length Bloch vector");
    const double ct = std::clamp(z / r, -1.0, 1.0);
    const double theta = std::acos(ct);
    const double phi = (x == 0.0 && y == 0.0) ? 0.0 : std::atan2(y, x);
    return {theta, phi};
}

std::array<Complex, 2> MeasurementSpec::ket(const BlochVector& basis, int outcome)
{
    const double c = std::cos(basis.theta / 2.0);
    const double s = std::sin(basis.theta / 2.0);
    const Complex e = std::polar(1.0, basis.phi);
    if (outcome == 0) return {Complex{c, 0.0}, e * s};
    return {Complex{-s, 0.0}, e * c};
}

Matrix2 MeasurementSpec::projector(const BlochVector& basis, int outcome)
{
    const auto [rx, ry, rz] = basis.components();
    const double sign = outcome == 0 ? 1.0 : -1.0;
    return {Complex{(1.0 + sign * rz) / 2.0, 0.0}, sign * Complex{rx, -ry} / 2.0,
            sign * Complex{rx, ry} / 2.0, Complex{(1.0 - sign * rz) / 2.0, 0.0}};
}

Matrix2 NamedGate::matrix() const
{
    switch (kind) {
    case NamedKind::X:
        return {0.0, 1.0, 1.0, 0.0};
    case NamedKind::Z:
        return {1.0, 0.0, 0.0, -1.0};
    case NamedKind::H: {
        const double r = std::numbers::sqrt2 / 2.0;
        return {r, r, r, -r};
    }
    case NamedKind::Rz:
        return {std::polar(1.0, -angle / 2.0), 0.0, 0.0, std::polar(1.0, angle / 2.0)};
    }
    return {};
}

Matrix2 rotation_matrix(const BlochVector& axis, double alpha)
{
    // cos(a/2) I - i sin(a/2) (rx X + ry Y + rz Z)
    const auto [rx, ry, rz] = axis.components();
    const double c = std::cos(alpha / 2.0);
    const double s = std::sin(alpha / 2.0);
    return {Complex{c, -s * rz}, -kI * s * Complex{rx, -ry}, -kI * s * Complex{rx, ry},
            Complex{c, s * rz}};
}

StateVector::StateVector(std::size_t num_qubits)
    : num_qubits_(num_qubits)
{
    if (num_qubits == 0 || num_qubits > 30) {
        throw InputError("qubit count must be in [1, 30], got " + std::to_string(num_qubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes)
{
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw InputError("amplitude count must be a power of two >= 2");
    }
    StateVector s(static_cast<std::size_t>(std::countr_zero(dim)));
    s.amps_ = std::move(amplitudes);
    if (std::abs(s.norm_squared() - 1.0) > 1e-10) throw NumericError("state is not normalized");
    return s;
}

StateVector StateVector::random(std::size_t num_qubits, RandomSource& rng)
{
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    double total = 0.0;
    for (auto& a : amps) {
        a = Complex{rng.normal(), rng.normal()};
        total += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(total);
    for (auto& a : amps) a *= scale;
    return from_amplitudes(std::move(amps));
}

double StateVector::norm_squared() const
{
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return total;
}

void StateVector::check_qubit(std::size_t q) const
{
    if (q >= num_qubits_) {
        throw InputError("qubit index " + std::to_string(q) + " out of range for " +
                         std::to_string(num_qubits_) + " qubits");
    }
}

void StateVector::apply_matrix(std::size_t q, const Matrix2& m)
{
    check_qubit(q);
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex a0 = amps_[i];
            const Complex a1 = amps_[i + stride];
            amps_[i] = m[0] * a0 + m[1] * a1;
            amps_[i + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void StateVector::apply_single_qubit(std::size_t q, const BlochVector& axis, double alpha)
{
    apply_matrix(q, rotation_matrix(axis, alpha));
}

void StateVector::apply_named(std::size_t q, const NamedGate& gate)
{
    check_qubit(q);
    const std::size_t bit = std::size_t{1} << q;
    switch (gate.kind) {
    case NamedKind::X:
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
        }
        return;
    case NamedKind::Z:
        for (std::size_t i = 0; i < amps_.size(); ++i) {
            if (i & bit) amps_[i] = -amps_[i];
        }
        return;
    case NamedKind::H:
    case NamedKind::Rz:
        apply_matrix(q, gate.matrix());
        return;
    }
}

void StateVector::apply_cz(std::size_t a, std::size_t b)
{
    check_qubit(a);
    check_qubit(b);
    if (a == b) throw InputError("CZ needs two distinct qubits");
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == mask) amps_[i] = -amps_[i];
    }
}

void StateVector::apply_multi_z(std::span<const std::size_t> leaves, double theta)
{
    if (leaves.empty()) throw InputError("multi-qubit Z rotation needs at least one qubit");
    std::size_t mask = 0;
    for (std::size_t q : leaves) {
        check_qubit(q);
        const std::size_t bit = std::size_t{1} << q;
        if (mask & bit) throw InputError("repeated qubit in Z rotation");
        mask |= bit;
    }
    // Z^{(x)k} has eigenvalue (-1)^{popcount(i & mask)}.
    const Complex even = std::polar(1.0, -theta / 2.0);
    const Complex odd = std::polar(1.0, theta / 2.0);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] *= (std::popcount(i & mask) % 2 == 0) ? even : odd;
    }
}

std::pair<double, double> StateVector::outcome_probabilities(const MeasurementSpec& spec) const
{
    check_qubit(spec.target);
    const auto up = MeasurementSpec::ket(spec.basis, 0);
    const std::size_t stride = std::size_t{1} << spec.target;
    double p0 = 0.0;
    double total = 0.0;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex overlap = std::conj(up[0]) * amps_[i] + std::conj(up[1]) * amps_[i + stride];
            p0 += std::norm(overlap);
            total += std::norm(amps_[i]) + std::norm(amps_[i + stride]);
        }
    }
    return {p0, total - p0};
}

double StateVector::project(const MeasurementSpec& spec, int outcome)
{
    check_qubit(spec.target);
    if (outcome != 0 && outcome != 1) throw InputError("measurement outcome must be 0 or 1");
    const auto ket = MeasurementSpec::ket(spec.basis, outcome);
    const std::size_t stride = std::size_t{1} << spec.target;
    double prob = 0.0;
    for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex overlap = std::conj(ket[0]) * amps_[i] + std::conj(ket[1]) * amps_[i + stride];
            prob += std::norm(overlap);
            amps_[i] = ket[0] * overlap;
            amps_[i + stride] = ket[1] * overlap;
        }
    }
    return prob;
}

int StateVector::measure(const MeasurementSpec& spec, RandomSource& rng, std::optional<int> forced)
{
    const auto [p0, p1] = outcome_probabilities(spec);
    if (p0 < kImpossible && p1 < kImpossible) {
        throw NumericError("both measurement outcomes have vanishing probability");
    }
    int outcome = 0;
    if (forced) {
        outcome = *forced;
        if (outcome != 0 && outcome != 1) throw InputError("forced outcome must be 0 or 1");
        if ((outcome == 0 ? p0 : p1) < kImpossible) {
            throw ExecutionError("forced outcome " + std::to_string(outcome) + " has zero probability");
        }
    } else if (p0 < kImpossible) {
        outcome = 1;
    } else if (p1 < kImpossible) {
        outcome = 0;
    } else {
        outcome = rng.uniform() < p0 / (p0 + p1) ? 0 : 1;
    }
    const double prob = project(spec, outcome);
    const double scale = 1.0 / std::sqrt(prob);
    for (auto& a : amps_) a *= scale;
    return outcome;
}

StateVector StateVector::remove_qubit(std::size_t q, const std::array<Complex, 2>& ket) const
{
    check_qubit(q);
    if (num_qubits_ < 2) throw InputError("cannot remove the only qubit");
    std::vector<Complex> out(amps_.size() / 2);
    const std::size_t low = (std::size_t{1} << q) - 1;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const std::size_t i0 = ((j & ~low) << 1) | (j & low);
        const std::size_t i1 = i0 | (std::size_t{1} << q);
        out[j] = std::conj(ket[0]) * amps_[i0] + std::conj(ket[1]) * amps_[i1];
    }
    double total = 0.0;
    for (const auto& a : out) total += std::norm(a);
    if (total < kImpossible) throw NumericError("qubit is orthogonal to the given ket");
    const double scale = 1.0 / std::sqrt(total);
    for (auto& a : out) a *= scale;
    return from_amplitudes(std::move(out));
}

StateVector StateVector::append_qubit(const std::array<Complex, 2>& ket) const
{
    std::vector<Complex> out(amps_.size() * 2);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        out[i] = ket[0] * amps_[i];
        out[i + amps_.size()] = ket[1] * amps_[i];
    }
    return from_amplitudes(std::move(out));
}

double StateVector::pauli_expectation(std::uint64_t x_mask, std::uint64_t z_mask) const
{
    // P = prod X^x Z^z (Z applied first); <psi|P|psi> is real for Hermitian P,
    // which holds when X and Z masks are disjoint.
    Complex total{0.0, 0.0};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        const double sign = (std::popcount(i & z_mask) % 2 == 0) ? 1.0 : -1.0;
        total += std::conj(amps_[i ^ x_mask]) * sign * amps_[i];
    }
    return total.real();
}

std::vector<double> StateVector::probabilities() const
{
    std::vector<double> out(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) out[i] = std::norm(amps_[i]);
    return out;
}

StateVector make_basis_state(std::size_t num_qubits, std::span<const int> bits)
{
    if (bits.size() != num_qubits) {
        throw InputError("bitstring has " + std::to_string(bits.size()) + " entries, expected " +
                         std::to_string(num_qubits));
    }
    std::size_t index = 0;
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] != 0 && bits[q] != 1) throw InputError("bit values must be 0 or 1");
        if (bits[q]) index |= std::size_t{1} << q;
    }
    if (num_qubits == 0 || num_qubits > 30) throw InputError("qubit count must be in [1, 30]");
    std::vector<Complex> amps(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps[index] = 1.0;
    return StateVector::from_amplitudes(std::move(amps));
}

double fidelity(const StateVector& a, const StateVector& b)
{
    if (a.num_qubits() != b.num_qubits()) throw InputError("fidelity of states with different sizes");
    Complex overlap{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) overlap += std::conj(x[i]) * y[i];
    return std::min(1.0, std::norm(overlap));
}

StateVector tensor(const StateVector& low, const StateVector& high)
{
    std::vector<Complex> out(low.dimension() * high.dimension());
    for (std::size_t h = 0; h < high.dimension(); ++h) {
        for (std::size_t l = 0; l < low.dimension(); ++l) {
            out[h * low.dimension() + l] = high[h] * low[l];
        }
    }
    return StateVector::from_amplitudes(std::move(out));
}

}  // namespace hqcm
