#include "hqcm/report.hpp"

#include <map>
#include <sstream>

#include "hqcm/errors.hpp"
#include "json.hpp"

namespace hqcm {

namespace {

using nlohmann::json;

std::vector<int> index_bits(std::uint64_t index, std::size_t width)
{
    std::vector<int> bits(width);
    for (std::size_t k = 0; k < width; ++k) bits[k] = static_cast<int>((index >> k) & 1);
    return bits;
}

std::vector<int> sample_index_bits(const std::vector<double>& dist, std::size_t width, RandomSource& rng)
{
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t chosen = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist[i] <= kImpossible) continue;
        chosen = i;
        acc += dist[i];
        if (u < acc) break;
    }
    return index_bits(chosen, width);
}

json labels(const std::vector<std::size_t>& qubits)
{
    json out = json::array();
    for (std::size_t q : qubits) out.push_back(q + 1);
    return out;
}

json trace_json(const TraceTable& table)
{
    json rows = json::array();
    for (const TraceRow& row : table.rows) {
        json ix = json::array();
        json iz = json::array();
        for (std::size_t j = 0; j < table.num_qubits; ++j) {
            if (table.symbolic) {
                ix.push_back(row.symbolic_flow.x(j).to_string(table.group_sizes));
                iz.push_back(row.symbolic_flow.z(j).to_string(table.group_sizes));
            } else {
                ix.push_back(row.flow.x(j));
                iz.push_back(row.flow.z(j));
            }
        }
        json rotations = json::array();
        for (const TraceRotation& r : row.rotations) {
            json item{{"leaves", labels(r.leaves)}, {"theta", r.theta}, {"kappa", r.kappa},
                      {"symbol", r.symbol.label()}};
            if (table.symbolic) {
                item["parity"] = r.parity_expr.to_string(table.group_sizes);
            } else {
                item["parity"] = r.parity;
                item["theta_executed"] = r.theta_executed;
                item["outcome"] = r.outcome;
            }
            rotations.push_back(std::move(item));
        }
        json entry{{"tau", row.tau}, {"I_x", std::move(ix)}, {"I_z", std::move(iz)}};
        if (!row.next_label.empty()) {
            entry["next"] = row.next_label;
            entry["rotations"] = std::move(rotations);
        }
        rows.push_back(std::move(entry));
    }
    return json{{"symbolic", table.symbolic}, {"rows", std::move(rows)}};
}

const char* kappa_policy_name(KappaPolicy policy)
{
    switch (policy) {
    case KappaPolicy::FromCircuit: return "circuit";
    case KappaPolicy::Random: return "random";
    case KappaPolicy::List: return "list";
    }
    return "circuit";
}

}  // namespace

const char* mode_name(Mode mode)
{
    switch (mode) {
    case Mode::Hqcm: return "hqcm";
    case Mode::Unitary: return "unitary";
    case Mode::Both: return "both";
    }
    return "hqcm";
}

std::string bits_text(const std::vector<int>& bits)
{
    std::string out;
    for (int b : bits) out += b ? '1' : '0';
    return out;
}

RunReport run_circuit(const Circuit& circuit, const ExecutionConfig& config)
{
    config.validate(circuit);
    if (config.mode == Mode::Unitary && (config.trace || config.symbolic)) {
        throw InputError("traces need hqcm or both mode");
    }
    RunReport report;
    report.config = config;
    report.reported = reported_qubits(circuit, config.include_work);

    if (config.mode != Mode::Hqcm) report.reference = run_unitary(circuit, config).distribution;

    if (config.mode == Mode::Unitary) {
        for (std::size_t k = 0; k < config.shots; ++k) {
            RandomSource rng(config.seed, k);
            ShotResult shot;
            shot.shot = k;
            shot.raw = sample_index_bits(*report.reference, report.reported.size(), rng);
            shot.corrected = shot.raw;
            shot.flow = InfoFlow(circuit.num_qubits());
            report.shots.push_back(std::move(shot));
        }
        return report;
    }

    TraceTable numeric;
    const bool want_trace = config.trace || config.symbolic;
    report.shots = run_hqcm(circuit, config, want_trace ? &numeric : nullptr);
    if (config.trace) report.trace = numeric;
    if (config.symbolic) {
        std::vector<int> kappas;
        Binding binding;
        for (const TraceRow& row : numeric.rows) {
            for (const TraceRotation& r : row.rotations) {
                kappas.push_back(r.kappa);
                binding[r.symbol] = r.outcome;
            }
        }
        report.symbolic_trace = trace_symbolic(circuit, kappas);
        report.symbolic_consistent = hqcm::bind(report.symbolic_trace->rows.back().symbolic_flow, binding) ==
                                     report.shots.front().flow;
    }
    return report;
}

std::vector<HistogramEntry> histogram(const RunReport& report)
{
    std::map<std::uint64_t, HistogramEntry> counts;
    for (const ShotResult& shot : report.shots) {
        const std::uint64_t index = readout_index(shot.corrected);
        auto& entry = counts[index];
        entry.index = index;
        entry.bits = bits_text(shot.corrected);
        ++entry.count;
    }
    std::vector<HistogramEntry> out;
    for (auto& [index, entry] : counts) out.push_back(std::move(entry));
    return out;
}

std::string report_json(const RunReport& report, const Circuit& circuit)
{
    const ExecutionConfig& c = report.config;
    json config{{"mode", mode_name(c.mode)},
                {"shots", c.shots},
                {"seed", c.seed},
                {"trace", c.trace},
                {"symbolic", c.symbolic},
                {"kappa_policy", kappa_policy_name(c.kappa_policy)},
                {"include_work", c.include_work}};
    if (c.kappa_policy == KappaPolicy::List) config["kappas"] = c.kappas;
    if (c.forced_outcomes) config["forced_outcomes"] = *c.forced_outcomes;
    config["initial_state"] = c.initial_state ? "custom" : "default";

    json summary{{"qubits", circuit.num_qubits()},
                 {"logical", labels(circuit.logical_qubits())},
                 {"work", labels(circuit.work_qubits())},
                 {"steps", circuit.tau_max()},
                 {"gates", circuit.gate_count()},
                 {"rotations", circuit.rotation_count()}};

    json shots = json::array();
    for (const ShotResult& shot : report.shots) {
        json item{{"shot", shot.shot}, {"s", bits_text(shot.raw)}, {"s_corrected", bits_text(shot.corrected)}};
        if (c.mode != Mode::Unitary) {
            json outcomes = json::array();
            json kappas = json::array();
            for (const RotationRecord& r : shot.rotations) {
                outcomes.push_back(r.outcome);
                kappas.push_back(r.kappa);
            }
            item["outcomes"] = std::move(outcomes);
            item["kappas"] = std::move(kappas);
            item["I_x"] = std::vector<int>(shot.flow.xs().begin(), shot.flow.xs().end());
            item["I_z"] = std::vector<int>(shot.flow.zs().begin(), shot.flow.zs().end());
        }
        if (shot.fidelity) item["fidelity"] = *shot.fidelity;
        shots.push_back(std::move(item));
    }

    json hist = json::array();
    const double total = static_cast<double>(report.shots.size());
    for (const HistogramEntry& e : histogram(report)) {
        hist.push_back({{"index", e.index},
                        {"bits", e.bits},
                        {"count", e.count},
                        {"frequency", static_cast<double>(e.count) / total}});
    }

    json doc{{"config", std::move(config)},
             {"circuit", std::move(summary)},
             {"reported_qubits", labels(report.reported)},
             {"shots", std::move(shots)},
             {"histogram", std::move(hist)}};

    if (report.reference) {
        json ref = json::array();
        for (std::size_t i = 0; i < report.reference->size(); ++i) {
            const double p = (*report.reference)[i];
            if (p <= kImpossible) continue;
            ref.push_back({{"index", i},
                           {"bits", bits_text(index_bits(i, report.reported.size()))},
                           {"probability", p}});
        }
        doc["reference"] = std::move(ref);
    }
    if (report.trace) doc["trace"] = trace_json(*report.trace);
    if (report.symbolic_trace) {
        doc["symbolic_trace"] = trace_json(*report.symbolic_trace);
        doc["symbolic_consistent"] = *report.symbolic_consistent;
    }
    return doc.dump(2) + "\n";
}

std::string histogram_csv(const RunReport& report)
{
    std::ostringstream os;
    os << "index,bits,count,frequency\n";
    const double total = static_cast<double>(report.shots.size());
    os.precision(17);
    for (const HistogramEntry& e : histogram(report)) {
        os << e.index << "," << e.bits << "," << e.count << "," << static_cast<double>(e.count) / total << "\n";
    }
    return os.str();
}

}  // namespace hqcm
