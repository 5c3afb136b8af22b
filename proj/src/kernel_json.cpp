#include "pirg/kernel_json.hpp"

#include <cmath>
#include <vector>

#include "pirg/errors.hpp"

namespace pirg {
namespace {

using nlohmann::json;

const json& require(const json& doc, const std::string& path, const char* key) {
  if (!doc.contains(key)) throw ParseError(path + "." + key, "missing required field");
  return doc.at(key);
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ParseError(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(field, "expected a finite number");
  return d;
}

std::vector<double> as_vector(const json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(as_number(v[k], field + "[" + std::to_string(k) + "]"));
  }
  return out;
}

std::vector<std::vector<double>> as_matrix(const json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError(field, "expected an array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < v.size(); ++r) {
    out.push_back(as_vector(v[r], field + "[" + std::to_string(r) + "]"));
  }
  return out;
}

// Kernel factory messages start with the offending field name
// ("matrix[0][1]: ..."); re-anchor them under `path`.
[[noreturn]] void rethrow(const ArgumentError& e, const std::string& path) {
  const std::string msg = e.what();
  const auto colon = msg.find(':');
  if (colon == std::string::npos) throw ParseError(path, msg);
  throw ParseError(path + "." + msg.substr(0, colon), msg.substr(colon + 2));
}

}  // namespace

Kernel kernel_from_json(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw ParseError(path, "expected a JSON object");
  const json& kind_v = require(doc, path, "kind");
  if (!kind_v.is_string()) throw ParseError(path + ".kind", "expected a string");
  const std::string kind = kind_v.get<std::string>();
  try {
    if (kind == "constant") {
      return Kernel::constant(as_number(require(doc, path, "a"), path + ".a"));
    }
    if (kind == "product") {
      std::vector<double> bps{0.0, 1.0};
      if (doc.contains("breakpoints")) {
        bps = as_vector(doc.at("breakpoints"), path + ".breakpoints");
      }
      return Kernel::product(std::move(bps),
                             as_matrix(require(doc, path, "coeffs"), path + ".coeffs"));
    }
    if (kind == "block") {
      return Kernel::block(as_vector(require(doc, path, "breakpoints"), path + ".breakpoints"),
                           as_matrix(require(doc, path, "matrix"), path + ".matrix"));
    }
    if (kind == "grid") {
      const json& m = require(doc, path, "m");
      if (!m.is_number_integer() || m.get<long long>() < 1) {
        throw ParseError(path + ".m", "expected a positive integer");
      }
      return Kernel::grid(m.get<std::size_t>(),
                          as_matrix(require(doc, path, "matrix"), path + ".matrix"));
    }
  } catch (const ArgumentError& e) {
    rethrow(e, path);
  }
  throw ParseError(path + ".kind",
                   "unknown kernel kind '" + kind + "' (expected constant|product|block|grid)");
}

json kernel_to_json(const Kernel& w) {
  json out;
  switch (w.kind()) {
    case KernelKind::Constant:
      out = {{"kind", "constant"}, {"a", std::get<ConstantKernel>(w.variant()).a}};
      break;
    case KernelKind::Product: {
      const auto& p = std::get<ProductKernel>(w.variant());
      json coeffs = json::array();
      for (const auto& piece : p.pieces) coeffs.push_back(piece.coeffs());
      out = {{"kind", "product"}, {"breakpoints", p.breakpoints}, {"coeffs", coeffs}};
      break;
    }
    case KernelKind::Block:
    case KernelKind::Grid: {
      const StepKernel& s = w.kind() == KernelKind::Block
                                ? static_cast<const StepKernel&>(std::get<BlockKernel>(w.variant()))
                                : static_cast<const StepKernel&>(std::get<GridKernel>(w.variant()));
      json rows = json::array();
      for (std::size_t r = 0; r < s.blocks(); ++r) {
        rows.push_back(std::vector<double>(s.matrix.begin() + static_cast<long>(r * s.blocks()),
                                           s.matrix.begin() + static_cast<long>((r + 1) * s.blocks())));
      }
      if (w.kind() == KernelKind::Block) {
        out = {{"kind", "block"}, {"breakpoints", s.breakpoints}, {"matrix", rows}};
      } else {
        out = {{"kind", "grid"}, {"m", std::get<GridKernel>(w.variant()).m}, {"matrix", rows}};
      }
      break;
    }
  }
  return out;
}

}  // namespace pirg
