#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kerrosc/quasidist.hpp"

namespace kerrosc {

/// 17 significant digits, '.' decimal; "nan" / "inf" / "-inf" for non-finite values.
std::string format_double(double v);

/// Shortest decimal that parses back to the same double.
std::string format_shortest(double v);

/// Comma-separated table with a header row; LF line endings.
std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

/// Prefixes every line of `text` with "# ".
std::string comment_block(const std::string& text);

/// Writes the file in binary mode (no newline translation). Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

/// Header comment lines, then `s`, `re` and `im` axis lines, then one comma-separated
/// row per imaginary-axis value.
std::string grid_text(const QuasiGrid& grid, const std::string& header);
QuasiGrid parse_grid(const std::string& text);

/// Binary greyscale PGM, top row at the largest imaginary value.
std::string render_pgm(const QuasiGrid& grid);

}  // namespace kerrosc
