#include "hqcm/runner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hqcm/errors.hpp"
#include "hqcm/macros.hpp"

namespace hqcm {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t count_rotations(const Step& step)
{
    return static_cast<std::size_t>(std::count_if(step.gates.begin(), step.gates.end(), [](const Gate& g) {
        return std::holds_alternative<MultiZRotGate>(g);
    }));
}

std::map<int, int> group_sizes_of(const Circuit& circuit)
{
    std::map<int, int> sizes;
    for (std::size_t tau = 0; tau < circuit.steps().size(); ++tau) {
        const std::size_t k = count_rotations(circuit.steps()[tau]);
        if (k > 1) sizes[static_cast<int>(tau + 1)] = static_cast<int>(k);
    }
    return sizes;
}

int pick_kappa(const MultiZRotGate& gate, KappaPolicy policy, std::span<const int> kappas, std::size_t r,
               RandomSource& rng)
{
    switch (policy) {
    case KappaPolicy::FromCircuit: return gate.kappa;
    case KappaPolicy::Random: return rng.bit();
    case KappaPolicy::List:
        if (r >= kappas.size()) throw InputError("kappa list shorter than the rotation count");
        return kappas[r];
    }
    return 0;
}

/// Logical amplitudes placed on the logical qubits, |+> on each work qubit.
StateVector embed_with_work(const Circuit& circuit, std::span<const Complex> logical)
{
    const std::size_t n = circuit.num_qubits();
    if (logical.size() != (std::size_t{1} << circuit.num_logical())) {
        throw InputError("logical state does not match the circuit's logical qubits");
    }
    const auto logical_qubits = circuit.logical_qubits();
    const double scale = std::pow(std::sqrt(0.5), static_cast<double>(circuit.num_work()));
    std::vector<Complex> amps(std::size_t{1} << n);
    for (std::size_t index = 0; index < amps.size(); ++index) {
        std::size_t l = 0;
        for (std::size_t k = 0; k < logical_qubits.size(); ++k) {
            if ((index >> logical_qubits[k]) & 1) l |= std::size_t{1} << k;
        }
        amps[index] = logical[l] * scale;
    }
    return StateVector::from_amplitudes(std::move(amps));
}

std::vector<int> sample_readout(const StateVector& state, std::span<const std::size_t> qubits, RandomSource& rng)
{
    const auto probs = state.probabilities();
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t chosen = probs.size();
    std::size_t last_possible = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > kImpossible) last_possible = i;
        acc += probs[i];
        if (u < acc && probs[i] > kImpossible) {
            chosen = i;
            break;
        }
    }
    if (chosen == probs.size()) chosen = last_possible;
    std::vector<int> bits;
    bits.reserve(qubits.size());
    for (std::size_t q : qubits) bits.push_back(static_cast<int>((chosen >> q) & 1));
    return bits;
}

std::string rotation_name(const TraceRotation& r)
{
    std::string out = "U^{";
    for (std::size_t i = 0; i < r.leaves.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(r.leaves[i] + 1);
    }
    return out + "}(" + format_angle(r.theta) + ")";
}

std::string angle_change(const TraceRotation& r, bool symbolic, const std::map<int, int>& groups)
{
    if (symbolic ? r.parity_expr.is_zero() : r.parity == 0) return "no change";
    const std::string from = format_angle(r.theta);
    if (!symbolic) return from + " -> " + format_angle(-r.theta);
    const std::string sign = r.theta < 0 ? "-" : "";
    return from + " -> " + sign + "(-1)^(" + r.parity_expr.to_string(groups) + ") " + format_angle(std::abs(r.theta));
}

std::string pad(std::string s, std::size_t width)
{
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

}  // namespace

bool is_odd_half_pi(double angle)
{
    const double r = angle / (kPi / 2.0);
    const double k = std::round(r);
    return std::abs(r - k) < 1e-12 && std::fmod(std::abs(k), 2.0) == 1.0;
}

std::optional<PropagationGate> propagation_for(const Gate& gate)
{
    return std::visit(Overloaded{
                          [](const NamedGateOp& g) -> std::optional<PropagationGate> {
                              if (g.gate.kind == NamedKind::H) return PropagationGate::hadamard(g.qubit);
                              if (g.gate.kind == NamedKind::Rz && is_odd_half_pi(g.gate.angle)) {
                                  return PropagationGate::phase(g.qubit);
                              }
                              return std::nullopt;
                          },
                          [](const CzGate& g) -> std::optional<PropagationGate> {
                              return PropagationGate::cz(g.a, g.b);
                          },
                          [](const auto&) -> std::optional<PropagationGate> { return std::nullopt; },
                      },
                      gate);
}

void ExecutionConfig::validate(const Circuit& circuit) const
{
    if (shots == 0) throw InputError("shots must be at least 1");
    if (symbolic && shots > 1) throw InputError("symbolic mode runs a single shot");
    const std::size_t rotations = circuit.rotation_count();
    if (forced_outcomes) {
        if (forced_outcomes->size() != rotations) {
            throw InputError("forced outcome list has " + std::to_string(forced_outcomes->size()) +
                             " entries but the circuit has " + std::to_string(rotations) + " rotations");
        }
        for (int m : *forced_outcomes) {
            if (m != 0 && m != 1) throw InputError("forced outcomes must be 0 or 1");
        }
    }
    if (kappa_policy == KappaPolicy::List) {
        if (kappas.size() != rotations) {
            throw InputError("kappa list has " + std::to_string(kappas.size()) + " entries but the circuit has " +
                             std::to_string(rotations) + " rotations");
        }
        for (int k : kappas) {
            if (k != 0 && k != 1) throw InputError("kappa values must be 0 or 1");
        }
    }
    if (initial_state && initial_state->num_qubits() != circuit.num_qubits()) {
        throw InputError("initial state has " + std::to_string(initial_state->num_qubits()) +
                         " qubits, circuit has " + std::to_string(circuit.num_qubits()));
    }
    if (circuit.num_qubits() == 0) throw InputError("circuit has no qubits");
    if (circuit.num_qubits() + 1 > 30) throw InputError("circuit too large for the statevector backend");
}

StateVector default_input(const Circuit& circuit)
{
    std::vector<Complex> logical(std::size_t{1} << circuit.num_logical());
    logical[0] = 1.0;
    return embed_with_work(circuit, logical);
}

std::vector<std::size_t> reported_qubits(const Circuit& circuit, bool include_work)
{
    if (include_work) {
        std::vector<std::size_t> all(circuit.num_qubits());
        for (std::size_t q = 0; q < all.size(); ++q) all[q] = q;
        return all;
    }
    return circuit.logical_qubits();
}

std::uint64_t readout_index(std::span<const int> bits)
{
    std::uint64_t index = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k]) index |= std::uint64_t{1} << k;
    }
    return index;
}

HqcmOutcome execute_hqcm(const Circuit& circuit, const StateVector& input, RandomSource& rng,
                         const HqcmOptions& options)
{
    circuit.validate();
    const std::size_t n = circuit.num_qubits();
    if (input.num_qubits() != n) throw InputError("input state does not match the circuit");
    if (!options.forced_outcomes.empty() && options.forced_outcomes.size() != circuit.rotation_count()) {
        throw InputError("forced outcome list does not match the rotation count");
    }

    const std::size_t ancilla = n;
    StateVector state = tensor(input, StateVector(1));
    InfoFlow flow = init_flow(n);
    std::vector<RotationRecord> records;

    if (options.trace) {
        *options.trace = TraceTable{};
        options.trace->num_qubits = n;
        options.trace->group_sizes = group_sizes_of(circuit);
    }

    std::size_t r = 0;
    const auto& steps = circuit.steps();
    for (std::size_t tau = 0; tau < steps.size(); ++tau) {
        TraceRow row{tau, flow, {}, steps[tau].label, {}};
        const bool grouped = count_rotations(steps[tau]) > 1;
        int index = 0;

        for (const Gate& gate : steps[tau].gates) {
            std::visit(Overloaded{
                           [&](const SingleQubitGate& g) {
                               const BlochVector axis = adapt_axis(flow.x(g.qubit), flow.z(g.qubit), g.axis);
                               state.apply_single_qubit(g.qubit, axis, g.alpha);
                           },
                           [&](const NamedGateOp& g) {
                               NamedGate applied = g.gate;
                               if (applied.kind == NamedKind::Rz && !is_odd_half_pi(applied.angle) &&
                                   flow.x(g.qubit)) {
                                   applied.angle = -applied.angle;
                               }
                               state.apply_named(g.qubit, applied);
                           },
                           [&](const CzGate& g) { state.apply_cz(g.a, g.b); },
                           [&](const MultiZRotGate& g) {
                               const int parity = rotation_parity(flow, g.leaves);
                               const double theta = adapt_rotation_angle(flow, g.leaves, g.theta);
                               const int kappa = pick_kappa(g, options.kappa_policy, options.kappas, r, rng);
                               std::optional<int> forced;
                               if (!options.forced_outcomes.empty()) forced = options.forced_outcomes[r];
                               RotationRecord rec =
                                   multi_z_rotation(state, g.leaves, theta, AncillaPrep{kappa}, ancilla, rng, forced);
                               rec.theta_requested = g.theta;
                               absorb_rotation_outcome(flow, g.leaves, static_cast<Bit>(rec.outcome));
                               ++index;
                               if (options.trace) {
                                   TraceRotation t;
                                   t.leaves = g.leaves;
                                   t.theta = g.theta;
                                   t.kappa = kappa;
                                   t.symbol = {static_cast<int>(tau + 1), grouped ? index : 0};
                                   t.parity = parity;
                                   t.theta_executed = theta;
                                   t.outcome = rec.outcome;
                                   row.rotations.push_back(std::move(t));
                               }
                               records.push_back(std::move(rec));
                               ++r;
                           },
                       },
                       gate);
            if (auto p = propagation_for(gate)) flow = propagate(flow, *p);
        }
        if (options.trace) options.trace->rows.push_back(std::move(row));
    }
    if (options.trace) options.trace->rows.push_back(TraceRow{steps.size(), flow, {}, {}, {}});

    return {state.remove_qubit(ancilla, {Complex{1.0}, Complex{0.0}}), std::move(flow), std::move(records)};
}

std::vector<ShotResult> run_hqcm(const Circuit& circuit, const ExecutionConfig& config, TraceTable* trace)
{
    config.validate(circuit);
    const StateVector input = config.initial_state ? *config.initial_state : default_input(circuit);
    const auto qubits = reported_qubits(circuit, config.include_work);

    std::optional<StateVector> reference;
    if (config.mode == Mode::Both) reference = apply_circuit(circuit, input);

    std::vector<int> forced;
    if (config.forced_outcomes) forced = *config.forced_outcomes;

    std::vector<ShotResult> shots;
    shots.reserve(config.shots);
    for (std::size_t k = 0; k < config.shots; ++k) {
        RandomSource rng(config.seed, k);
        HqcmOptions options{config.kappa_policy, config.kappas, forced, k == 0 ? trace : nullptr};
        HqcmOutcome out = execute_hqcm(circuit, input, rng, options);

        ShotResult shot;
        shot.shot = k;
        shot.raw = sample_readout(out.state, qubits, rng);
        shot.corrected = shot.raw;
        for (std::size_t i = 0; i < qubits.size(); ++i) shot.corrected[i] ^= out.flow.x(qubits[i]);
        if (reference) {
            StateVector corrected = out.state;
            undo_byproduct(corrected, out.flow);
            shot.fidelity = fidelity(corrected, *reference);
        }
        shot.flow = std::move(out.flow);
        shot.rotations = std::move(out.rotations);
        shots.push_back(std::move(shot));
    }
    return shots;
}

StateVector apply_circuit(const Circuit& circuit, StateVector state)
{
    circuit.validate();
    if (state.num_qubits() != circuit.num_qubits()) throw InputError("input state does not match the circuit");
    for (const Step& step : circuit.steps()) {
        for (const Gate& gate : step.gates) {
            std::visit(Overloaded{
                           [&](const SingleQubitGate& g) { state.apply_single_qubit(g.qubit, g.axis, g.alpha); },
                           [&](const NamedGateOp& g) { state.apply_named(g.qubit, g.gate); },
                           [&](const CzGate& g) { state.apply_cz(g.a, g.b); },
                           [&](const MultiZRotGate& g) { state.apply_multi_z(g.leaves, g.theta); },
                       },
                       gate);
        }
    }
    return state;
}

std::vector<double> marginal_distribution(const StateVector& state, std::span<const std::size_t> qubits)
{
    if (qubits.size() >= 63) throw InputError("too many reported qubits");
    std::vector<double> dist(std::size_t{1} << qubits.size(), 0.0);
    const auto probs = state.probabilities();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        std::size_t key = 0;
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            if ((i >> qubits[k]) & 1) key |= std::size_t{1} << k;
        }
        dist[key] += probs[i];
    }
    return dist;
}

UnitaryResult run_unitary(const Circuit& circuit, const ExecutionConfig& config)
{
    config.validate(circuit);
    StateVector input = config.initial_state ? *config.initial_state : default_input(circuit);
    StateVector out = apply_circuit(circuit, std::move(input));
    auto dist = marginal_distribution(out, reported_qubits(circuit, config.include_work));
    return {std::move(out), std::move(dist)};
}

EquivalenceReport verify_equivalence(const Circuit& circuit, std::size_t trials, std::uint64_t seed)
{
    if (trials == 0) throw InputError("verification needs at least one trial");
    circuit.validate();
    EquivalenceReport report;
    report.trials = trials;
    double sum = 0.0;
    for (std::size_t k = 0; k < trials; ++k) {
        RandomSource rng(seed, k);
        std::vector<Complex> logical(std::size_t{1} << circuit.num_logical());
        if (circuit.num_logical() > 0) {
            const StateVector s = StateVector::random(circuit.num_logical(), rng);
            std::copy(s.amplitudes().begin(), s.amplitudes().end(), logical.begin());
        } else {
            logical[0] = 1.0;
        }
        const StateVector input = embed_with_work(circuit, logical);
        HqcmOutcome out = execute_hqcm(circuit, input, rng);
        undo_byproduct(out.state, out.flow);
        const double f = fidelity(out.state, apply_circuit(circuit, input));
        report.min_fidelity = std::min(report.min_fidelity, f);
        sum += f;
    }
    report.mean_fidelity = sum / static_cast<double>(trials);
    return report;
}

Circuit random_circuit(std::size_t num_qubits, std::size_t num_gates, RandomSource& rng)
{
    if (num_qubits == 0) throw InputError("random circuit needs at least one qubit");
    Circuit circuit(num_qubits, std::size_t{0});
    auto angle = [&] { return kPi * (2.0 * rng.uniform() - 1.0); };
    for (std::size_t i = 0; i < num_gates; ++i) {
        const std::size_t q = rng.below(num_qubits);
        switch (rng.below(num_qubits >= 2 ? 5 : 4)) {
        case 0: circuit.add(NamedGateOp{q, NamedGate::h()}); break;
        case 1: circuit.add(NamedGateOp{q, NamedGate::rz(angle())}); break;
        case 2: {
            const double z = 2.0 * rng.uniform() - 1.0;
            const double phi = angle();
            circuit.add(SingleQubitGate{q, {std::acos(z), phi}, angle()});
            break;
        }
        case 3: {
            std::vector<std::size_t> pool(num_qubits);
            for (std::size_t j = 0; j < num_qubits; ++j) pool[j] = j;
            const std::size_t k = 1 + rng.below(std::min<std::size_t>(3, num_qubits));
            for (std::size_t j = 0; j < k; ++j) std::swap(pool[j], pool[j + rng.below(num_qubits - j)]);
            pool.resize(k);
            circuit.add(MultiZRotGate{std::move(pool), angle(), 0});
            break;
        }
        default: {
            const std::size_t b = (q + 1 + rng.below(num_qubits - 1)) % num_qubits;
            circuit.add(CzGate{q, b});
            break;
        }
        }
    }
    return circuit;
}

TraceTable trace_symbolic(const Circuit& circuit, std::span<const int> kappas)
{
    circuit.validate();
    if (!kappas.empty() && kappas.size() != circuit.rotation_count()) {
        throw InputError("kappa list does not match the rotation count");
    }
    const std::size_t n = circuit.num_qubits();
    TraceTable table;
    table.symbolic = true;
    table.num_qubits = n;
    table.group_sizes = group_sizes_of(circuit);

    SymbolicFlow flow = init_flow<Gf2Expr>(n);
    std::size_t r = 0;
    const auto& steps = circuit.steps();
    for (std::size_t tau = 0; tau < steps.size(); ++tau) {
        TraceRow row{tau, InfoFlow(n), flow, steps[tau].label, {}};
        const bool grouped = count_rotations(steps[tau]) > 1;
        int index = 0;
        for (const Gate& gate : steps[tau].gates) {
            if (const auto* g = std::get_if<MultiZRotGate>(&gate)) {
                ++index;
                TraceRotation t;
                t.leaves = g->leaves;
                t.theta = g->theta;
                t.kappa = kappas.empty() ? g->kappa : kappas[r];
                t.symbol = {static_cast<int>(tau + 1), grouped ? index : 0};
                t.parity_expr = rotation_parity(flow, g->leaves);
                absorb_rotation_outcome(flow, g->leaves, Gf2Expr(t.symbol));
                row.rotations.push_back(std::move(t));
                ++r;
            } else if (auto p = propagation_for(gate)) {
                flow = propagate(flow, *p);
            }
        }
        table.rows.push_back(std::move(row));
    }
    table.rows.push_back(TraceRow{steps.size(), InfoFlow(n), flow, {}, {}});
    return table;
}

InfoFlow replay_flow(const Circuit& circuit, const TraceTable& table)
{
    if (table.symbolic) throw InputError("replay needs a numeric trace");
    const auto& steps = circuit.steps();
    if (table.rows.size() != steps.size() + 1) throw InputError("trace does not match the circuit's step count");
    InfoFlow flow = init_flow(circuit.num_qubits());
    for (std::size_t tau = 0; tau < steps.size(); ++tau) {
        std::size_t index = 0;
        for (const Gate& gate : steps[tau].gates) {
            if (const auto* g = std::get_if<MultiZRotGate>(&gate)) {
                const auto& rotations = table.rows[tau].rotations;
                if (index >= rotations.size()) throw InputError("trace row is missing rotation outcomes");
                absorb_rotation_outcome(flow, g->leaves, static_cast<Bit>(rotations[index++].outcome));
            } else if (auto p = propagation_for(gate)) {
                flow = propagate(flow, *p);
            }
        }
    }
    return flow;
}

std::string format_trace(const TraceTable& table)
{
    const auto& groups = table.group_sizes;
    auto vector_text = [&](const TraceRow& row, bool x_part) {
        std::string out = "(";
        for (std::size_t j = 0; j < table.num_qubits; ++j) {
            if (j) out += ", ";
            if (table.symbolic) {
                const Gf2Expr& e = x_part ? row.symbolic_flow.x(j) : row.symbolic_flow.z(j);
                out += e.to_string(groups);
            } else {
                out += std::to_string(x_part ? row.flow.x(j) : row.flow.z(j));
            }
        }
        return out + ")";
    };

    std::ostringstream os;
    for (const TraceRow& row : table.rows) {
        os << "tau " << row.tau << "\n";
        os << "  I_x = " << vector_text(row, true) << "\n";
        os << "  I_z = " << vector_text(row, false) << "\n";
        if (row.next_label.empty()) continue;
        os << "  step " << row.tau + 1 << ": " << row.next_label << "\n";

        std::size_t name_w = 0;
        std::size_t change_w = 0;
        for (const auto& r : row.rotations) {
            name_w = std::max(name_w, rotation_name(r).size());
            change_w = std::max(change_w, angle_change(r, table.symbolic, groups).size());
        }
        for (const auto& r : row.rotations) {
            os << "    " << pad(rotation_name(r), name_w) << "  "
               << pad(angle_change(r, table.symbolic, groups), change_w) << "  kappa " << r.kappa << "  "
               << r.symbol.label();
            if (!table.symbolic) os << " = " << r.outcome;
            os << "\n";
        }
        if (table.symbolic && row.rotations.size() > 1) {
            std::vector<OutcomeSymbol> all;
            for (const auto& r : row.rotations) all.push_back(r.symbol);
            os << "    m" << row.tau + 1 << " = " << Gf2Expr(all).to_string() << "\n";
        }
    }
    return os.str();
}

std::string table1_text()
{
    return "Lambda^{123}Z^6: controls 1 2 3, work qubits 4 5 in |+>, target 6\n" +
           format_trace(trace_symbolic(lambda123z6_circuit()));
}

}  // namespace hqcm
