#ifndef COOCNET_CSV_HPP_
#define COOCNET_CSV_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace coocnet::csv {

// RFC-4180: fields containing comma, quote or newline are quoted, quotes doubled.
std::string escape_field(const std::string& field);

void write_row(std::ostream& os, const std::vector<std::string>& fields);

// Parses a whole CSV file (LF or CRLF line ends, quoted fields allowed).
// Throws std::runtime_error on unterminated quotes or unreadable files.
std::vector<std::vector<std::string>> read_file(const std::string& path);
std::vector<std::vector<std::string>> parse(const std::string& content);

// Numeric rendering used by the report writers: '.' decimal separator,
// C locale, no grouping.
std::string format_sig(double value, int significant_digits = 6);

// Fraction -> percent with two decimals ("0.153846" -> "15.38").
std::string format_percent2(double fraction);

} // namespace coocnet::csv

#endif
