#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "qpj/model.hpp"

namespace qpj {

// Line-oriented model format; '#' starts a comment.
//   alpha = a1 ... ad
//   c: k1 ... kd re im
//   v: k1 ... kd re im
// alpha comes first; repeated frequencies add up. Syntax errors throw ParseError
// with the line number; model invariants throw ValidationError.
JacobiModel parse_model(std::istream& is, const std::string& label = "model");
JacobiModel load_model(const std::filesystem::path& path);

// Writes a model back in the same format (shortest round-trip numbers).
void write_model(std::ostream& os, const JacobiModel& m);

}  // namespace qpj
