#include "hqcm/circuit_parser.hpp"

#include <fstream>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <vector>

#include "hqcm/errors.hpp"
#include "hqcm/macros.hpp"

namespace hqcm {

double parse_angle(const std::string& text)
{
    static const std::regex pattern(R"(^([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(\*?)(pi)?(?:/((?:\d+\.?\d*|\.\d+)))?$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern) || (!m[2].matched && !m[4].matched) ||
        (m[3].length() > 0 && !(m[2].matched && m[4].matched))) {
        throw InputError("bad angle '" + text + "'");
    }
    double value = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (m[4].matched) value *= std::numbers::pi;
    if (m[5].matched) {
        const double den = std::stod(m[5].str());
        if (den == 0.0) throw InputError("division by zero in angle '" + text + "'");
        value /= den;
    }
    return m[1].str() == "-" ? -value : value;
}

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

class Parser {
public:
    Circuit run(std::istream& in)
    {
        std::string raw;
        std::size_t number = 0;
        while (std::getline(in, raw)) {
            ++number;
            if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
            std::istringstream words(raw);
            Line line{number, {}};
            for (std::string w; words >> w;) line.tokens.push_back(w);
            if (line.tokens.empty()) continue;
            try {
                handle(line);
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception& e) {
                throw ParseError(number, e.what());
            }
        }
        if (!circuit_) throw ParseError(number, "missing 'qubits' declaration");
        return std::move(*circuit_);
    }

private:
    void handle(const Line& line)
    {
        const std::string& op = line.tokens[0];
        if (op == "qubits") return declare(line);
        if (!circuit_) throw ParseError(line.number, "'qubits' must come before any gate");

        if (op == "H" || op == "X" || op == "Z") {
            expect_count(line, 2);
            const NamedGate g = op == "H" ? NamedGate::h() : op == "X" ? NamedGate::x() : NamedGate::z();
            circuit_->add(NamedGateOp{qubit(line, 1), g});
        } else if (op == "RZ") {
            expect_count(line, 3);
            circuit_->add(NamedGateOp{qubit(line, 1), NamedGate::rz(angle(line, 2))});
        } else if (op == "SQ") {
            expect_count(line, 5);
            circuit_->add(SingleQubitGate{qubit(line, 1), {angle(line, 2), angle(line, 3)}, angle(line, 4)});
        } else if (op == "CZ") {
            expect_count(line, 3);
            circuit_->add(CzGate{qubit(line, 1), qubit(line, 2)});
        } else if (op == "MZROT") {
            if (line.tokens.size() < 3) throw ParseError(line.number, "MZROT needs an angle and qubits");
            std::vector<std::size_t> leaves;
            for (std::size_t i = 2; i < line.tokens.size(); ++i) leaves.push_back(qubit(line, i));
            circuit_->add(MultiZRotGate{std::move(leaves), angle(line, 1), 0});
        } else if (op == "LAMBDA1" || op == "LAMBDA2") {
            if (line.tokens.size() < 2) throw ParseError(line.number, op + " needs an angle");
            const double a = angle(line, 1);
            auto [controls, targets] = split(line, 2);
            std::vector<Gate> gates = op == "LAMBDA1"
                ? (controls.size() == 1 ? expand_lambda1(controls[0], targets, a)
                                        : throw ParseError(line.number, "LAMBDA1 needs exactly one control"))
                : expand_lambda2(controls, targets, a);
            circuit_->add_step(Step{join_tokens(line), std::move(gates)});
        } else if (op == "LAMBDAZ") {
            auto [controls, targets] = split(line, 1);
            if (targets.size() != 1) throw ParseError(line.number, "LAMBDAZ needs exactly one target");
            const auto& work = circuit_->work_qubits();
            if (work.size() + 1 < controls.size()) {
                throw ParseError(line.number, "not enough work qubits for " + std::to_string(controls.size()) + " controls");
            }
            const std::span<const std::size_t> used(work.data(), controls.size() - 1);
            circuit_->add_steps(expand_lambda_z(controls, targets[0], used));
        } else if (op == "GROVER") {
            if (line.tokens.size() < 3 || line.tokens.size() > 4) {
                throw ParseError(line.number, "usage: GROVER <n> <j> [iterations]");
            }
            const std::size_t n = count(line, 1);
            const std::uint64_t j = std::stoull(line.tokens[2]);
            const std::size_t iterations = line.tokens.size() == 4 ? count(line, 3) : grover_iterations(n);
            const auto logical = circuit_->logical_qubits();
            if (n > logical.size()) throw ParseError(line.number, "GROVER needs " + std::to_string(n) + " logical qubits");
            if (n < 2) throw ParseError(line.number, "GROVER needs n >= 2");
            const auto& work = circuit_->work_qubits();
            if (work.size() < n - 2) throw ParseError(line.number, "GROVER needs " + std::to_string(n - 2) + " work qubits");
            append_grover(*circuit_, std::span(logical).first(n), std::span(work).first(n - 2), j, iterations);
        } else {
            throw ParseError(line.number, "unknown instruction '" + op + "'");
        }
    }

    void declare(const Line& line)
    {
        if (circuit_) throw ParseError(line.number, "duplicate 'qubits' declaration");
        if (line.tokens.size() < 2) throw ParseError(line.number, "usage: qubits <n> [work <w> [: w1 ...]]");
        const std::size_t logical = count(line, 1);
        if (line.tokens.size() == 2) {
            circuit_.emplace(logical, std::size_t{0});
            return;
        }
        if (line.tokens[2] != "work" || line.tokens.size() < 4) {
            throw ParseError(line.number, "usage: qubits <n> [work <w> [: w1 ...]]");
        }
        const std::size_t w = count(line, 3);
        if (logical + w == 0) throw ParseError(line.number, "circuit needs at least one qubit");
        if (line.tokens.size() == 4) {
            circuit_.emplace(logical, w);
            return;
        }
        if (line.tokens[4] != ":" || line.tokens.size() != 5 + w) {
            throw ParseError(line.number, "expected ': ' followed by " + std::to_string(w) + " work qubit labels");
        }
        std::vector<std::size_t> work;
        for (std::size_t i = 5; i < line.tokens.size(); ++i) {
            const std::size_t label = count(line, i);
            if (label == 0 || label > logical + w) throw ParseError(line.number, "work qubit label out of range");
            work.push_back(label - 1);
        }
        circuit_.emplace(logical, std::move(work));
    }

    static void expect_count(const Line& line, std::size_t n)
    {
        if (line.tokens.size() != n) {
            throw ParseError(line.number, line.tokens[0] + " expects " + std::to_string(n - 1) + " arguments");
        }
    }

    static std::size_t count(const Line& line, std::size_t i)
    {
        const std::string& t = line.tokens.at(i);
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
            throw ParseError(line.number, "expected a non-negative integer, got '" + t + "'");
        }
        return std::stoul(t);
    }

    std::size_t qubit(const Line& line, std::size_t i) const
    {
        const std::size_t label = count(line, i);
        if (label == 0 || label > circuit_->num_qubits()) {
            throw ParseError(line.number, "qubit label " + line.tokens[i] + " out of range 1.." +
                                              std::to_string(circuit_->num_qubits()));
        }
        return label - 1;
    }

    static double angle(const Line& line, std::size_t i)
    {
        try {
            return parse_angle(line.tokens.at(i));
        } catch (const InputError& e) {
            throw ParseError(line.number, e.what());
        }
    }

    /// Qubits from token `first` on, split at ':'.
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split(const Line& line, std::size_t first) const
    {
        std::vector<std::size_t> before;
        std::vector<std::size_t> after;
        bool seen = false;
        for (std::size_t i = first; i < line.tokens.size(); ++i) {
            if (line.tokens[i] == ":") {
                if (seen) throw ParseError(line.number, "more than one ':'");
                seen = true;
                continue;
            }
            (seen ? after : before).push_back(qubit(line, i));
        }
        if (!seen || before.empty() || after.empty()) {
            throw ParseError(line.number, line.tokens[0] + " expects '<controls> : <targets>'");
        }
        return {std::move(before), std::move(after)};
    }

    static std::string join_tokens(const Line& line)
    {
        std::string out = line.tokens[0];
        for (std::size_t i = 1; i < line.tokens.size(); ++i) out += " " + line.tokens[i];
        return out;
    }

    std::optional<Circuit> circuit_;
};

}  // namespace

Circuit parse_circuit(std::istream& in)
{
    return Parser{}.run(in);
}

Circuit parse_circuit_string(const std::string& text)
{
    std::istringstream in(text);
    return parse_circuit(in);
}

Circuit parse_circuit_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open circuit file " + path.string());
    return parse_circuit(in);
}

}  // namespace hqcm
