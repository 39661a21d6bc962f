#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pppca::csv {

// Raw rectangular cell grid (RFC-4180-style quoting, LF or CRLF endings).
// Throws ParseError on ragged rows or unterminated quotes.
std::vector<std::vector<std::string>> read_table(const std::string& path, char sep);

// Parses one numeric cell; throws ParseError naming the 1-based row/column on
// NA-like tokens, empty cells, trailing garbage, or non-finite values.
double parse_cell(const std::string& cell, std::size_t row, std::size_t col);

bool is_na_token(const std::string& cell);
bool parses_as_number(const std::string& cell);

std::string format_full(double v);  // 17 significant digits, round-trippable

}  // namespace pppca::csv
