#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "infbern/geometry.hpp"

namespace infbern {

/// Parses a domain description:
///   {"type":"ball","n":2,"radius":1.0}
///   {"type":"rectangle","a":2.0,"b":1.0}
///   {"type":"polygon","vertices":[[x,y],...]}
/// Throws ParseError for malformed text and InvalidDomain for bad geometry.
ConvexDomain parse_domain(std::string_view text);

ConvexDomain load_domain(const std::filesystem::path& path);

std::string domain_to_json(const ConvexDomain& domain);

}  // namespace infbern
