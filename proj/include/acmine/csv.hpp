#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace acmine {

// Minimal RFC-4180-ish CSV handling: comma separated, double-quoted fields
// with doubled inner quotes, no embedded newlines.
std::vector<std::string> split_csv_line(const std::string& line);
std::string csv_escape(const std::string& field);

// Reads one line, stripping a trailing CR. Returns false at end of stream.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace acmine
