#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nilkit/word.hpp"

namespace nilkit {

/* Grammar:
 *   commutator := letter | "[" commutator "," commutator "]"
 *   letter     := "x" integer
 *   occurrence := commutator ["^-1"]
 *   word       := occurrence { whitespace occurrence }
 * Whitespace (including newlines) is also allowed around brackets and commas.
 * Errors are SyntaxError with 1-based line and column.
 */
FormalCommutator parse_commutator(std::string_view text);
std::vector<Occurrence> parse_occurrences(std::string_view text);

// rank 0 means the largest letter used; step 0 means the largest weight used,
// so nothing is dropped. Empty text is rejected.
Word parse_word(std::string_view text, int rank = 0, int step = 0);

// "1,2,3" -> {1,2,3}; surrounding spaces allowed.
std::vector<std::int64_t> parse_int_list(std::string_view text, char separator = ',');

std::vector<std::string> split(std::string_view text, char separator);
std::string trim(std::string_view text);

}  // namespace nilkit
