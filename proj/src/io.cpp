#include "sectorlab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace sectorlab {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

double finite_number(const Json& v, const char* where) {
  if (!v.is_number()) parse_fail(std::string(where) + " is not a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_fail(std::string(where) + " is not finite");
  return x;
}

void write_double(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

void write_value(std::string& out, const Json& v, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write_value(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; nested structure gets broken up.
      const bool flat = std::none_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); });
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write_value(out, e, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      write_double(out, v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

ComplexMatrix matrix_from_json(const Json& doc) {
  if (!doc.is_object()) parse_fail("matrix document must be an object");
  if (!doc.contains("dim") || !doc.contains("entries")) parse_fail("matrix document needs 'dim' and 'entries'");
  const Json& dim_node = doc.at("dim");
  if (!dim_node.is_number_integer() || dim_node.get<long long>() < 1) parse_fail("'dim' must be a positive integer");
  const auto n = static_cast<std::size_t>(dim_node.get<long long>());
  const Json& rows = doc.at("entries");
  if (!rows.is_array() || rows.size() != n) parse_fail("'entries' must have dim rows");
  std::vector<Complex> data;
  data.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || row.size() != n) parse_fail("row " + std::to_string(i) + " must have dim entries");
    for (std::size_t j = 0; j < n; ++j) {
      const Json& z = row[j];
      if (!z.is_array() || z.size() != 2) {
        parse_fail("entry (" + std::to_string(i) + "," + std::to_string(j) + ") must be [re, im]");
      }
      data.emplace_back(finite_number(z[0], "real part"), finite_number(z[1], "imaginary part"));
    }
  }
  return ComplexMatrix(n, std::move(data));
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  Json doc;
  doc["dim"] = m.dim();
  doc["entries"] = std::move(rows);
  return doc;
}

ComplexMatrix parse_matrix(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    parse_fail(e.what());
  }
  return matrix_from_json(doc);
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

std::string dump_json(const Json& doc, int indent) {
  std::string out;
  write_value(out, doc, indent, 0);
  return out;
}

Json rule_to_json(const QuadratureRule& rule) {
  Json doc;
  const bool jacobi = rule.kind().family == RuleKind::Family::Jacobi;
  doc["kind"] = jacobi ? "jacobi" : "legendre";
  if (jacobi) {
    doc["alpha"] = rule.kind().alpha;
    doc["beta"] = rule.kind().beta;
  }
  doc["nodes"] = rule.nodes();
  doc["weights"] = rule.weights();
  doc["weight_sum"] = rule.weight_sum();
  return doc;
}

Json spec_to_json(const EnsembleSpec& spec) {
  Json doc;
  doc["dim"] = spec.dim;
  doc["trials"] = spec.trials;
  doc["seed"] = spec.seed;
  doc["sector_angle"] = spec.sector_angle;
  doc["angle_fraction"] = spec.sector_angle / (std::numbers::pi / 2.0);
  Json grid = Json::array();
  for (const Weight& w : spec.lambda_grid) grid.push_back(w.value());
  doc["lambda_grid"] = std::move(grid);
  doc["cond_cap"] = spec.cond_cap;
  doc["generator"] = std::string(kGeneratorName);
  return doc;
}

Json report_to_json(const PropertyReport& report) {
  Json doc;
  doc["property_id"] = report.property_id;
  doc["trials"] = report.trials;
  doc["violations"] = report.violations;
  doc["worst_margin"] = report.worst_margin;
  doc["worst_seed"] = report.worst_seed;
  doc["tolerance"] = Json{{"absolute", report.tolerance.absolute}, {"relative", report.tolerance.relative}};
  doc["status"] = std::string(to_string(report.status));
  doc["detail"] = report.detail;
  return doc;
}

Json verify_document(const EnsembleSpec& spec, std::span<const PropertyReport> reports) {
  Json doc;
  doc["spec"] = spec_to_json(spec);
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  doc["reports"] = std::move(arr);
  return doc;
}

}  // namespace sectorlab
