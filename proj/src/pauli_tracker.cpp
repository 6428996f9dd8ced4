#include "hqcm/pauli_tracker.hpp"

#include <numbers>
#include <string>
#include <utility>

namespace hqcm {

PropagationMatrix PropagationMatrix::identity(std::size_t n)
{
    PropagationMatrix m(n);
    for (std::size_t i = 0; i < 2 * n; ++i) m.at(i, i) = 1;
    return m;
}

PropagationMatrix operator*(const PropagationMatrix& a, const PropagationMatrix& b)
{
    if (a.n_ != b.n_) throw InputError("propagation matrix size mismatch");
    const std::size_t d = 2 * a.n_;
    PropagationMatrix out(a.n_);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            if (!a.at(i, k)) continue;
            for (std::size_t j = 0; j < d; ++j) out.at(i, j) ^= b.at(k, j);
        }
    }
    return out;
}

bool PropagationMatrix::invertible() const
{
    const std::size_t d = 2 * n_;
    std::vector<std::vector<Bit>> rows(d, std::vector<Bit>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) rows[i][j] = at(i, j);
    }
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        while (pivot < d && !rows[pivot][col]) ++pivot;
        if (pivot == d) return false;
        std::swap(rows[pivot], rows[col]);
        for (std::size_t r = 0; r < d; ++r) {
            if (r != col && rows[r][col]) {
                for (std::size_t j = 0; j < d; ++j) rows[r][j] ^= rows[col][j];
            }
        }
    }
    return true;
}

namespace {

void check_index(std::size_t q, std::size_t n)
{
    if (q >= n) throw InputError("qubit " + std::to_string(q) + " out of range for flow of size " + std::to_string(n));
}

}  // namespace

PropagationMatrix matrix_for(const PropagationGate& gate, std::size_t n)
{
    using Kind = PropagationGate::Kind;
    auto m = PropagationMatrix::identity(n);
    for (std::size_t q : gate.qubits) check_index(q, n);

    switch (gate.kind) {
    case Kind::Rotation:
    case Kind::MultiZ:
        if (gate.qubits.empty()) throw InputError("gate has no qubits");
        return m;
    case Kind::Hadamard: {
        const std::size_t j = gate.qubits.at(0);
        m.at(j, j) = 0;
        m.at(n + j, n + j) = 0;
        m.at(j, n + j) = 1;
        m.at(n + j, j) = 1;
        return m;
    }
    case Kind::Phase: {
        const std::size_t j = gate.qubits.at(0);
        m.at(n + j, j) = 1;
        return m;
    }
    case Kind::Cnot:
    case Kind::Cz: {
        if (gate.qubits.size() != 2) throw InputError("two-qubit gate needs two qubits");
        const std::size_t a = gate.qubits[0];
        const std::size_t b = gate.qubits[1];
        if (a == b) throw InputError("two-qubit gate needs distinct qubits");
        if (gate.kind == Kind::Cnot) {
            m.at(b, a) = 1;          // x_b += x_a
            m.at(n + a, n + b) = 1;  // z_a += z_b
        } else {
            m.at(n + a, b) = 1;  // z_a += x_b
            m.at(n + b, a) = 1;  // z_b += x_a
        }
        return m;
    }
    }
    return m;
}

double adapt_rotation_angle(const InfoFlow& flow, std::span<const std::size_t> leaves, double theta)
{
    for (std::size_t j : leaves) check_index(j, flow.size());
    return rotation_parity(flow, leaves) ? -theta : theta;
}

BlochVector adapt_axis(Bit x, Bit z, const BlochVector& axis)
{
    // theta -> x pi + (-1)^x theta, phi -> (-1)^x (z pi + phi); reproduces the
    // component form in the header exactly, including at the poles.
    const double pi = std::numbers::pi;
    const double theta = x ? pi - axis.theta : axis.theta;
    const double phi = x ? -(z * pi + axis.phi) : z * pi + axis.phi;
    return {theta, phi};
}

EulerAngles adapt_euler(Bit x, Bit z, const EulerAngles& angles)
{
    return {x ? -angles.alpha : angles.alpha, z ? -angles.beta : angles.beta, x ? -angles.gamma : angles.gamma};
}

double adapt_azimuth(int kappa)
{
    return (kappa & 1) ? -std::numbers::pi / 2.0 : std::numbers::pi / 2.0;
}

std::vector<int> correct_readout(std::span<const int> raw, const InfoFlow& flow)
{
    if (raw.size() != flow.size()) throw InputError("readout length does not match flow size");
    std::vector<int> out(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) out[j] = (raw[j] ^ flow.x(j)) & 1;
    return out;
}

InfoFlow bind(const SymbolicFlow& flow, const Binding& binding)
{
    InfoFlow out(flow.size());
    for (std::size_t j = 0; j < flow.size(); ++j) {
        out.x(j) = static_cast<Bit>(flow.x(j).evaluate(binding));
        out.z(j) = static_cast<Bit>(flow.z(j).evaluate(binding));
    }
    return out;
}

std::vector<int> correct_readout(std::span<const int> raw, const SymbolicFlow& flow, const Binding& binding)
{
    return correct_readout(raw, bind(flow, binding));
}

std::vector<PauliFactor> byproduct_to_unitary(const InfoFlow& flow)
{
    std::vector<PauliFactor> out;
    for (std::size_t j = 0; j < flow.size(); ++j) {
        if (flow.x(j)) out.push_back({NamedKind::X, j});
        if (flow.z(j)) out.push_back({NamedKind::Z, j});
    }
    return out;
}

void apply_byproduct(StateVector& state, const InfoFlow& flow)
{
    // Operator product is applied right to left.
    const auto factors = byproduct_to_unitary(flow);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        state.apply_named(it->qubit, {it->kind, 0.0});
    }
}

void undo_byproduct(StateVector& state, const InfoFlow& flow)
{
    for (const auto& f : byproduct_to_unitary(flow)) state.apply_named(f.qubit, {f.kind, 0.0});
}

}  // namespace hqcm
