#pragma once

#include <iosfwd>
#include <string>

#include "extint/pairstats.hpp"

namespace extint {

/// Comma-separated rows, '.' decimal point, no locale dependence. Throws
/// InputError on ragged rows, empty input or unparsable fields.
SampleMatrix read_csv(std::istream& in, bool header = false);
SampleMatrix read_csv_file(const std::string& path, bool header = false);

/// Each value with 17 significant digits, so a re-read matrix is bit-identical.
void write_csv(std::ostream& out, const SampleMatrix& m);
void write_csv_file(const std::string& path, const SampleMatrix& m);

/// Shortest-roundtrip-safe decimal form with 17 significant digits.
std::string format_double(double v);

}  // namespace extint
