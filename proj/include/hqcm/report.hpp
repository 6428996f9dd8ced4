#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hqcm/circuit.hpp"
#include "hqcm/runner.hpp"

namespace hqcm {

struct HistogramEntry {
    std::uint64_t index = 0;
    std::string bits;  // qubit with the lowest label first
    std::size_t count = 0;
};

/// Everything a `run` produces.
struct RunReport {
    ExecutionConfig config;
    std::vector<std::size_t> reported;
    std::vector<ShotResult> shots;
    /// Unitary distribution over the reported qubits (unitary and both modes).
    std::optional<std::vector<double>> reference;
    std::optional<TraceTable> trace;
    std::optional<TraceTable> symbolic_trace;
    /// Symbolic final flow bound to shot 0's outcomes equals its numeric flow.
    std::optional<bool> symbolic_consistent;
};

/// Runs the circuit in the configured mode. Unitary mode samples each shot
/// from the exact distribution with RandomSource(seed, shot); its raw and
/// corrected readouts coincide.
RunReport run_circuit(const Circuit& circuit, const ExecutionConfig& config);

/// Counts of corrected readouts, ascending by index; zero counts omitted.
std::vector<HistogramEntry> histogram(const RunReport& report);

/// "0110" style text of a readout, first reported qubit first.
std::string bits_text(const std::vector<int>& bits);

/// Deterministic JSON document: config, circuit summary, per-shot readouts
/// and outcomes, aggregate histogram, and optional reference and traces.
std::string report_json(const RunReport& report, const Circuit& circuit);

/// index,bits,count,frequency rows, one per observed readout.
std::string histogram_csv(const RunReport& report);

const char* mode_name(Mode mode);

}  // namespace hqcm
