#pragma once

#include <string>

#include <json.hpp>

#include "pirg/kernel.hpp"

namespace pirg {

// Kernel documents:
//   {"kind": "constant", "a": 1.0}
//   {"kind": "product", "breakpoints": [0, 1], "coeffs": [[1, 1]]}
//   {"kind": "block", "breakpoints": [0, 0.5, 1], "matrix": [[2, 1], [1, 2]]}
//   {"kind": "grid", "m": 2, "matrix": [[2, 1], [1, 2]]}
// "breakpoints" may be omitted for a single-piece product kernel.
// Throws ParseError naming the offending field, prefixed by `path`.
Kernel kernel_from_json(const nlohmann::json& doc, const std::string& path = "kernel");

nlohmann::json kernel_to_json(const Kernel& w);

}  // namespace pirg
