#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "sectorlab/linalg.hpp"
#include "sectorlab/quadrature.hpp"
#include "sectorlab/verify.hpp"

namespace sectorlab {

using Json = nlohmann::ordered_json;

/// {"dim": n, "entries": [[[re, im], ...], ...]}; rejects shape errors and
/// non-finite values with ParseError.
ComplexMatrix matrix_from_json(const Json& doc);
Json matrix_to_json(const ComplexMatrix& m);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);
ComplexMatrix parse_matrix(const std::string& text);

/// Serializes with every float printed to 17 significant digits, so written
/// values read back bit-exactly. Key order is insertion order.
std::string dump_json(const Json& doc, int indent = 2);

Json rule_to_json(const QuadratureRule& rule);

Json spec_to_json(const EnsembleSpec& spec);
Json report_to_json(const PropertyReport& report);
/// {"spec": {...}, "reports": [...]}
Json verify_document(const EnsembleSpec& spec, std::span<const PropertyReport> reports);

}  // namespace sectorlab
