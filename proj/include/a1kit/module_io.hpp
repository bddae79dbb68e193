#pragma once

#include "a1kit/module.hpp"

#include <iosfwd>
#include <string>

namespace a1kit {

// Module interchange format (JSON):
// {
//   "window": [lo, hi], "reliable_hi": R, "complete": bool,
//   "dims": {"<degree>": n, ...},
//   "sq1": {"<source degree>": ["<hex row>", ...], ...},
//   "sq2": { ... }
// }
// Matrix rows are hex-encoded little-endian by byte: bit j of a row is bit
// (j % 8) of byte (j / 8); two hex digits per byte, low nibble first within
// the byte pair written high-digit-first (standard %02x). Rows are listed
// target-index ascending.
std::string module_to_json(const A1Module& m, int indent = 2);
A1Module module_from_json(const std::string& text);
A1Module load_module(const std::string& path);
void save_module(const A1Module& m, const std::string& path);

std::string hex_encode_row(const GF2Vector& v);
GF2Vector hex_decode_row(const std::string& hex, std::size_t bits);

} // namespace a1kit
