#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "hqcm/circuit.hpp"

namespace hqcm {

/// Reads the line-oriented circuit format. Qubit labels are 1-based.
///
///   qubits <n> [work <w> [: <w1> ... <ww>]]   # n logical, w work qubits
///   H q | X q | Z q | RZ q <angle>
///   SQ q <theta> <phi> <alpha>
///   CZ a b
///   MZROT <angle> q1 q2 ...
///   LAMBDA1 <angle> c : t1 t2 ...
///   LAMBDA2 <angle> c1 c2 : t1 ...
///   LAMBDAZ c1 c2 ... : t                 # uses the first c-1 work qubits
///   GROVER <n> <j> [iterations]           # logical 1..n, first n-2 work qubits
///
/// Work qubits are the last w labels unless listed after ':'. Text after
/// '#' is ignored. Angles accept decimals and pi multiples such as pi/4,
/// -pi, 3pi/4 or 3*pi/4. Errors throw ParseError with the line number.
Circuit parse_circuit(std::istream& in);
Circuit parse_circuit_string(const std::string& text);
Circuit parse_circuit_file(const std::filesystem::path& path);

/// Parses a single angle expression; throws InputError if malformed.
double parse_angle(const std::string& text);

}  // namespace hqcm
