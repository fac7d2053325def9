#pragma once

// Text formats: complex literals on the command line, and CSV / JSON / SVG
// renderings of traces.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "levelpath/complex_jet.hpp"
#include "levelpath/tracer.hpp"

namespace levelpath {

/// Accepts A, Bi, A+Bi, A-Bi, i, -i (A and B decimal literals, optionally
/// signed in front). Throws ErrorKind::Format on anything else, including
/// embedded whitespace.
Complex parse_complex_literal(std::string_view text);

/// Inverse of parse_complex_literal for finite values, 17 significant digits.
std::string format_complex_literal(Complex z);

/// 17 significant digits, enough to round-trip any binary64 value.
std::string format_number(double x);

enum class OutputFormat { Csv, Json, Svg };

/// One trace plus the metadata that goes into the JSON header fields.
struct TraceRecord {
  int trace_index = 0;
  std::string function;
  std::string seed;
  Method method = Method::RK4;
  Orientation orientation = Orientation::Positive;
  TraceResult result;
};

/// Header `trace_index,s,re,im,abs_f,drift`, one row per point, LF endings.
void write_csv(std::ostream& out, std::span<const TraceRecord> records);

/// A single record is written as one object; with `as_array` every record
/// becomes an element of a top-level array and carries its trace_index.
void write_json(std::ostream& out, std::span<const TraceRecord> records, bool as_array);

/// 800x800 viewBox, one polyline per trace, y axis pointing up.
void write_svg(std::ostream& out, std::span<const TraceRecord> records);

}  // namespace levelpath
