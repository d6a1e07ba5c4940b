#pragma once

#include <string>

#include "omt/space.hpp"

namespace omt {

// Canonical .space text.  Canonicalizes a copy first.
std::string serialize(const Space& s);

// Parses, checks well-formedness and validates the topology.
// Errors carry 1-based line numbers where they apply.
Space parse_space_file(const std::string& text);

// Parses without validating (for tools that report violations themselves).
Space parse_space_unchecked(const std::string& text);

}  // namespace omt
