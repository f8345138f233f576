#pragma once

#include "skt/hermitian.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace skt {

/// Reads a structure document
///
///   {"factors": [{"family": "A", "rank": 2, "normalization": "long2", "z": 1, "x": [...]}],
///    "torus": "killing" | {"blocks": [...]} | {"matrix": [[...]]},
///    "jt": [[...]]}
///
/// `x` lists every positive root of the factor in library order and defaults
/// to all ones; `normalization` defaults to long2, `z` to 1, `torus` to
/// "killing" (scaled by z). Malformed documents throw ParseError; values that
/// fail validation throw DomainError.
HermitianStructure read_structure(std::istream& is);
HermitianStructure read_structure_file(const std::string& path);

/// Inverse of read_structure; numbers keep full round-trip precision.
void write_structure(std::ostream& os, const HermitianStructure& h);

/// "2,2.5,3" -> {2, 2.5, 3}. Throws ParseError.
std::vector<double> parse_list(const std::string& text);

}  // namespace skt
