#include "kerrosc/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace kerrosc {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_shortest(double v) {
  if (!std::isfinite(v)) return format_double(v);
  char buf[40];
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  for (int digits = 1; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string comment_block(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    out += line.empty() ? "#" : "# " + line;
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw Error(ErrorKind::IoError, "write to " + path.string() + " failed");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string grid_text(const QuasiGrid& grid, const std::string& header) {
  auto axis_line = [](const char* name, const std::vector<double>& axis) {
    return std::string(name) + " " + format_double(axis.front()) + " " + format_double(axis.back()) +
           " " + std::to_string(axis.size()) + "\n";
  };
  std::string out = header;
  out += "s " + format_double(grid.s) + "\n";
  out += axis_line("re", grid.re_axis);
  out += axis_line("im", grid.im_axis);
  for (const auto& row : grid.values) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_double(row[j]);
    }
    out += '\n';
  }
  return out;
}

QuasiGrid parse_grid(const std::string& text) {
  QuasiGrid grid;
  std::istringstream in(text);
  std::string line;
  int seen = 0;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::IoError, "grid line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (seen < 3) {
      std::istringstream ls(line);
      std::string key;
      ls >> key;
      if (key == "s") {
        if (!(ls >> grid.s)) fail("bad s line");
      } else if (key == "re" || key == "im") {
        double lo, hi;
        int count;
        if (!(ls >> lo >> hi >> count)) fail("bad axis line");
        (key == "re" ? grid.re_axis : grid.im_axis) = uniform_axis(lo, hi, count);
      } else {
        fail("expected s, re or im before the values");
      }
      ++seen;
      continue;
    }
    std::vector<double> row;
    row.reserve(grid.re_axis.size());
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t comma = std::min(line.find(',', pos), line.size());
      const std::string cell = line.substr(pos, comma - pos);
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) fail("bad value '" + cell + "'");
      row.push_back(v);
      pos = comma + 1;
    }
    if (row.size() != grid.re_axis.size()) fail("row has " + std::to_string(row.size()) + " values");
    grid.values.push_back(std::move(row));
  }
  if (seen < 3) fail("missing header lines");
  if (grid.values.size() != grid.im_axis.size()) fail("row count does not match im axis");
  return grid;
}

std::string render_pgm(const QuasiGrid& grid) {
  const int rows = static_cast<int>(grid.values.size());
  const int cols = rows ? static_cast<int>(grid.values[0].size()) : 0;
  const double lo = grid.min_value();
  const double hi = grid.max_value();
  const double span = hi > lo ? hi - lo : 1.0;
  std::string out = "P5\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n255\n";
  for (int i = rows - 1; i >= 0; --i) {
    for (int j = 0; j < cols; ++j) {
      const double level = std::round(255.0 * (grid.values[i][j] - lo) / span);
      out += static_cast<char>(static_cast<unsigned char>(std::clamp(level, 0.0, 255.0)));
    }
  }
  return out;
}

}  // namespace kerrosc
