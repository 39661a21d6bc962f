#include "pppca/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pppca/errors.hpp"

namespace pppca::csv {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line, char sep, std::size_t lineno) {
  std::vector<std::string> cells;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == sep) {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (in_quotes) {
    throw ParseError("unterminated quote on line " + std::to_string(lineno));
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

std::vector<std::vector<std::string>> read_table(const std::string& path, char sep) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    rows.push_back(split_line(line, sep, lineno));
  }
  if (rows.empty()) throw ParseError("empty file: " + path);
  const std::size_t width = rows.front().size();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != width) {
      throw ParseError("ragged row " + std::to_string(i + 1) + ": expected " +
                       std::to_string(width) + " cells, got " +
                       std::to_string(rows[i].size()));
    }
  }
  return rows;
}

bool is_na_token(const std::string& cell) {
  std::string t = trim(cell);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return t == "na" || t == "nan" || t == "n/a" || t == "null" || t == "none";
}

bool parses_as_number(const std::string& cell) {
  const std::string t = trim(cell);
  if (t.empty() || is_na_token(t)) return false;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && std::isfinite(v);
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  const std::string t = trim(cell);
  const std::string at = " at row " + std::to_string(row) + ", column " + std::to_string(col);
  if (t.empty()) throw ParseError("empty cell" + at);
  if (is_na_token(t)) throw ParseError("missing value token '" + t + "'" + at);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) throw ParseError("non-numeric cell '" + t + "'" + at);
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + t + "'" + at);
  return v;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace pppca::csv
