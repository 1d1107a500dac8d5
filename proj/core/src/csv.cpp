#include "extint/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "extint/error.hpp"

namespace extint {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError("line " + std::to_string(line) + ": cannot parse '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

SampleMatrix read_csv(std::istream& in, bool header) {
  std::string line;
  std::vector<double> data;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (header && line_no == 1) continue;
    if (trim(line).empty()) continue;
    std::size_t count = 0;
    std::string_view rest(line);
    while (true) {
      const std::size_t comma = rest.find(',');
      data.push_back(parse_field(rest.substr(0, comma), line_no));
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                       " fields, found " + std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw InputError("no data rows");
  return SampleMatrix(rows, cols, std::move(data));
}

SampleMatrix read_csv_file(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_csv(in, header);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const SampleMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const SampleMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  write_csv(out, m);
}

}  // namespace extint
