#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scde/de_system.hpp"
#include "scde/ensemble.hpp"
#include "scde/protograph.hpp"

namespace scde {

// Flat key=value schema shared by config files, CSV provenance comments and
// JSON reports. Keys: dv, dc, L, nu (comma-separated weights), alpha_upper,
// alpha_lower, b1, b2. The keys present decide which system is meant.
using KvPairs = std::vector<std::pair<std::string, std::string>>;

using SystemSpec = std::variant<CoupledEnsembleSpec, TwoTypeSpec, ProtographChain>;

// Shortest decimal form that parses back to the same double (at least 12
// significant digits whenever they matter).
std::string format_number(double v);
double parse_number(const std::string& text);
std::vector<double> parse_number_list(const std::string& text);
std::string join_numbers(const std::vector<double>& values);

KvPairs to_kv(const SystemSpec& spec);

// Builds the system description from parsed key=value pairs; rejects
// missing, mixed or malformed keys.
SystemSpec parse_system(const std::map<std::string, std::string>& kv);

std::unique_ptr<DeSystem> make_system(const SystemSpec& spec);

}  // namespace scde
