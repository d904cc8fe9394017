#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "kmn/structure.hpp"

namespace kmn {

/// `.kmn` documents are JSON:
///
///   {"format": "kmn/1", "name": ..., "m": 3, "n": 3,
///    "elements": ["0", "1", "x"], "zero": "0", "one": "1",
///    "f": [{"args": ["0","0","1"], "value": ["1"]}, ...],
///    "g": [{"args": ["1","1","x"], "value": "x"}, ...]}
///
/// "one" is optional. Entries may list arguments in any order; duplicates
/// must agree. Throws StructureError with the offending entry.
Structure parse_structure(std::string_view text);
Structure load_structure(const std::filesystem::path& path);

/// One entry per line, multisets sorted, values in element order.
std::string export_structure(const Structure& s);
void save_structure(const Structure& s, const std::filesystem::path& path);

}  // namespace kmn
