#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hqcm/errors.hpp"
#include "hqcm/gf2_expr.hpp"
#include "hqcm/state_vector.hpp"

namespace hqcm {

using Bit = std::uint8_t;

namespace detail {

inline Bit gf2_add(Bit a, Bit b) { return static_cast<Bit>((a ^ b) & 1); }
inline Gf2Expr gf2_add(const Gf2Expr& a, const Gf2Expr& b) { return a ^ b; }

}  // namespace detail

/// Classical record (I_x; I_z) of the byproduct prod_j X_j^{x_j} Z_j^{z_j}.
/// T is Bit for numeric tracking or Gf2Expr for symbolic tracking.
template <class T>
class BasicInfoFlow {
public:
    BasicInfoFlow() = default;
    explicit BasicInfoFlow(std::size_t n) : x_(n), z_(n) {}

    std::size_t size() const noexcept { return x_.size(); }

    T& x(std::size_t j) { return x_.at(j); }
    T& z(std::size_t j) { return z_.at(j); }
    const T& x(std::size_t j) const { return x_.at(j); }
    const T& z(std::size_t j) const { return z_.at(j); }
    std::span<const T> xs() const noexcept { return x_; }
    std::span<const T> zs() const noexcept { return z_; }

    bool operator==(const BasicInfoFlow&) const = default;

private:
    std::vector<T> x_;
    std::vector<T> z_;
};

using InfoFlow = BasicInfoFlow<Bit>;
using SymbolicFlow = BasicInfoFlow<Gf2Expr>;

/// Gate as seen by the classical tracker.
struct PropagationGate {
    enum class Kind {
        Rotation,  // arbitrary single-qubit rotation (identity propagation)
        Hadamard,
        Phase,     // Rz(pi/2)
        Cnot,
        Cz,
        MultiZ,    // multi-qubit Z rotation (identity propagation)
    };

    Kind kind = Kind::Rotation;
    std::vector<std::size_t> qubits;

    static PropagationGate rotation(std::size_t j) { return {Kind::Rotation, {j}}; }
    static PropagationGate hadamard(std::size_t j) { return {Kind::Hadamard, {j}}; }
    static PropagationGate phase(std::size_t j) { return {Kind::Phase, {j}}; }
    static PropagationGate cnot(std::size_t control, std::size_t target) { return {Kind::Cnot, {control, target}}; }
    static PropagationGate cz(std::size_t a, std::size_t b) { return {Kind::Cz, {a, b}}; }
    static PropagationGate multi_z(std::vector<std::size_t> leaves) { return {Kind::MultiZ, std::move(leaves)}; }
};

/// 2n x 2n binary matrix acting on (I_x; I_z), laid out as
///   [ C_xx  C_zx ]
///   [ C_xz  C_zz ]
/// so that x' = C_xx x + C_zx z and z' = C_xz x + C_zz z over GF(2).
class PropagationMatrix {
public:
    explicit PropagationMatrix(std::size_t n = 0) : n_(n), bits_(4 * n * n, 0) {}

    static PropagationMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    Bit& at(std::size_t row, std::size_t col) { return bits_.at(row * 2 * n_ + col); }
    Bit at(std::size_t row, std::size_t col) const { return bits_.at(row * 2 * n_ + col); }

    Bit xx(std::size_t k, std::size_t l) const { return at(k, l); }
    Bit zx(std::size_t k, std::size_t l) const { return at(k, n_ + l); }
    Bit xz(std::size_t k, std::size_t l) const { return at(n_ + k, l); }
    Bit zz(std::size_t k, std::size_t l) const { return at(n_ + k, n_ + l); }

    template <class T>
    BasicInfoFlow<T> apply(const BasicInfoFlow<T>& in) const
    {
        if (in.size() != n_) throw InputError("flow size does not match propagation matrix");
        BasicInfoFlow<T> out(n_);
        for (std::size_t row = 0; row < 2 * n_; ++row) {
            T acc{};
            for (std::size_t col = 0; col < 2 * n_; ++col) {
                if (!at(row, col)) continue;
                acc = detail::gf2_add(acc, col < n_ ? in.x(col) : in.z(col - n_));
            }
            (row < n_ ? out.x(row) : out.z(row - n_)) = acc;
        }
        return out;
    }

    /// Matrix product over GF(2); (a * b) applies b first.
    friend PropagationMatrix operator*(const PropagationMatrix& a, const PropagationMatrix& b);
    bool operator==(const PropagationMatrix&) const = default;

    /// Gaussian elimination over GF(2).
    bool invertible() const;

private:
    std::size_t n_;
    std::vector<Bit> bits_;
};

template <class T>
BasicInfoFlow<T> init_flow(std::size_t n)
{
    if (n == 0) throw InputError("information flow needs at least one qubit");
    return BasicInfoFlow<T>(n);
}

inline InfoFlow init_flow(std::size_t n) { return init_flow<Bit>(n); }

PropagationMatrix matrix_for(const PropagationGate& gate, std::size_t n);

template <class T>
BasicInfoFlow<T> propagate(const BasicInfoFlow<T>& flow, const PropagationGate& gate)
{
    return matrix_for(gate, flow.size()).apply(flow);
}

/// z_j += m for every leaf; the x-part is untouched.
template <class T>
void absorb_rotation_outcome(BasicInfoFlow<T>& flow, std::span<const std::size_t> leaves, const T& m)
{
    for (std::size_t j : leaves) flow.z(j) = detail::gf2_add(flow.z(j), m);
}

/// Parity of x_j over the rotation's leaves; the rotation angle flips sign
/// when it is 1.
template <class T>
T rotation_parity(const BasicInfoFlow<T>& flow, std::span<const std::size_t> leaves)
{
    T acc{};
    for (std::size_t j : leaves) acc = detail::gf2_add(acc, flow.x(j));
    return acc;
}

/// (-1)^{sum_{j in leaves} x_j} theta.
double adapt_rotation_angle(const InfoFlow& flow, std::span<const std::size_t> leaves, double theta);

/// Axis r' to execute physically so that R_{r'}(a) X^x Z^z = X^x Z^z R_r(a):
///   r' = ((-1)^z sin t cos p, (-1)^{x+z} sin t sin p, (-1)^x cos t).
BlochVector adapt_axis(Bit x, Bit z, const BlochVector& axis);

struct EulerAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// R(a, b, g) = Rz(g) Rx(b) Rz(a) passes a byproduct X^x Z^z as
/// R((-1)^x a, (-1)^z b, (-1)^x g).
EulerAngles adapt_euler(Bit x, Bit z, const EulerAngles& angles);

/// Azimuth of the ancilla measurement basis: (-1)^kappa pi/2.
double adapt_azimuth(int kappa);

/// s'_j = s_j xor x_j.
std::vector<int> correct_readout(std::span<const int> raw, const InfoFlow& flow);
/// Symbolic flow evaluated under `binding`; unbound symbols throw InputError.
std::vector<int> correct_readout(std::span<const int> raw, const SymbolicFlow& flow, const Binding& binding);

InfoFlow bind(const SymbolicFlow& flow, const Binding& binding);

struct PauliFactor {
    NamedKind kind = NamedKind::X;  // X or Z
    std::size_t qubit = 0;

    bool operator==(const PauliFactor&) const = default;
};

/// prod_j X_j^{x_j} Z_j^{z_j} as an operator product, left to right: for each
/// qubit with bits set, X(j) then Z(j).
std::vector<PauliFactor> byproduct_to_unitary(const InfoFlow& flow);

/// state <- B state, flow index j acting on state qubit j.
void apply_byproduct(StateVector& state, const InfoFlow& flow);
/// state <- B^{-1} state.
void undo_byproduct(StateVector& state, const InfoFlow& flow);

}  // namespace hqcm
