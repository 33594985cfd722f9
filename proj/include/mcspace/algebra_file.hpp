#pragma once

// Text format for finite dg Lie algebras. Degrees in files are chain degrees
// (a generator of chain degree k has cohomological degree -k). See
// docs/algebra-file.md for the grammar.
//
//   algebra xab
//   gen x 0
//   gen a -1
//   gen b -1
//   d x = a
//   [x,a] = b
//
// Brackets are listed once per unordered pair; the mirror [h,g] is implied.

#include <string>

#include "mcspace/dgla.hpp"

namespace mcspace {

struct AlgebraFile {
    std::string name;
    Dgla algebra;
};

/// Throws ParseError ("line N: ...") or ValidationError (first failed check and witness).
AlgebraFile parse_algebra_file(const std::string& text);
AlgebraFile load_algebra_file(const std::string& path);

/// Canonical text: generators in basis order, then d lines, brackets for i <= j,
/// and weight lines unless the weights come from the lower central series.
std::string write_algebra_file(const std::string& name, const Dgla& L);

} // namespace mcspace
