#pragma once

#include <string>

#include "stabma/synthesis.hpp"

namespace stabma::io {

/// "index,t,value" rows with 17 significant digits and LF line endings.
std::string to_csv(const Path& path);
Path parse_csv(const std::string& text);
Path read_csv(const std::string& filename);

/// Polyline plot with axes and a one-line caption.
std::string to_svg(const Path& path, const std::string& caption);

/// Writes through a temporary file in the same directory, then renames it
/// over the target. Throws ValidationError when the target is not writable.
void write_file_atomic(const std::string& filename, const std::string& content);

}  // namespace stabma::io
