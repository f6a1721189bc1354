#pragma once

#include <string>

#include <json.hpp>

#include "flatfront/moduli_solver.hpp"

namespace flatfront {

using Json = nlohmann::ordered_json;

Json moduli_to_json(const CanonicalModuli& mod);
/// Throws IoError on a missing or non-numeric field.
CanonicalModuli moduli_from_json(const Json& j);

Json trace_to_json(const SolverTrace& trace);

/// Pretty-printed with a trailing newline. Doubles use the shortest
/// round-trip form, so output is byte-stable.
void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

CanonicalModuli read_moduli_file(const std::string& path);

}  // namespace flatfront
