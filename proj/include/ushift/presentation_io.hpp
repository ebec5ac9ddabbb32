#pragma once

#include <string>

#include "ushift/ultragraph.hpp"

namespace ushift {

// Parses the `.ug` presentation format (see FORMATS.md).  Errors are
// reported as ParseError with the offending line and column.
Presentation parse_presentation(const std::string& text, const std::string& name = "");
Presentation load_presentation(const std::string& path);

// Canonical `.ug` text; parse_presentation(write_presentation(p)) == p.
std::string write_presentation(const Presentation& p);

AffineRule parse_affine_rule(const std::string& text, int line = 1, int column = 1);
std::string to_string(const AffineRule& rule);

}  // namespace ushift
