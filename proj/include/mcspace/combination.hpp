#pragma once

// Linear combinations of symbols, e.g. "-a - 1/2*b + 3 c". Shared by element
// arguments and the algebra file format.

#include <string>
#include <string_view>
#include <vector>

#include "mcspace/scalar_linear.hpp"

namespace mcspace {

struct CombinationTerm {
    Scalar coefficient;
    std::string symbol; // empty for a bare number
};

/// combo := "0" | ["+"|"-"] term {("+"|"-") term}
/// term  := rational ["*"] symbol | symbol | rational
/// Throws ParseError with a column hint.
std::vector<CombinationTerm> parse_combination(std::string_view text);

bool is_symbol_start(char c);
bool is_symbol_char(char c);

} // namespace mcspace
