#pragma once

#include <string>
#include <string_view>

#include "proofbench/calculus/schema.hpp"

namespace proofbench::parsers {

bool is_gzip(std::string_view bytes);
std::string gunzip(std::string_view bytes);
std::string gzip(std::string_view bytes);

// File contents, decompressed when the gzip magic bytes are present.
// Throws IoError.
std::string read_source(const std::string& path);

// Picks the format from the content: XML if the first non-blank
// character is '<', Handy LKS otherwise.
calculus::ProofDatabase parse_database(std::string_view text, const std::string& file = {});
calculus::ProofDatabase load_database(const std::string& path);

} // namespace proofbench::parsers
