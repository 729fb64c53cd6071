#pragma once

// Instance files: one JSON header line describing the problem and the layout
// of its numeric payload, followed by the payload as contiguous little-endian
// float64 blocks (matrices column-major).

#include <filesystem>
#include <iosfwd>

#include "sfw/problems.hpp"

namespace sfw {

void write_instance(std::ostream& out, const ProblemInstance& inst);
ProblemInstance read_instance(std::istream& in);

void save_instance(const std::filesystem::path& path, const ProblemInstance& inst);
ProblemInstance load_instance(const std::filesystem::path& path);

}  // namespace sfw
