#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace rbm::cli {

/// Shortest round-trip decimal form, independent of the C locale.
std::string format_number(double x);

/// A table kept column-major-agnostic: header plus rows of numbers.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& os, const Table& t);

/// Rows as an array of objects keyed by the header.
nlohmann::ordered_json table_rows_json(const Table& t);

/// Writes to `path`, or stdout when path is empty or "-". Throws
/// std::runtime_error if the file cannot be opened or written.
void write_text(const std::string& path, const std::string& text);

}  // namespace rbm::cli
