#include "levelpath/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <system_error>

#include "json.hpp"

#include "levelpath/expr.hpp"

namespace levelpath {

namespace {

[[noreturn]] void bad_literal(std::string_view text, const std::string& why) {
  throw Error(ErrorKind::Format, "invalid complex literal '" + std::string(text) + "': " + why);
}

double to_double(std::string_view digits) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || !std::isfinite(value)) {
    throw Error(ErrorKind::Format, "number out of range: " + std::string(digits));
  }
  return value;
}

}  // namespace

Complex parse_complex_literal(std::string_view text) {
  if (text.empty()) bad_literal(text, "empty");
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) != 0) bad_literal(text, "whitespace not allowed");
  }
  std::size_t pos = 0;
  double lead_sign = 1.0;
  if (text[pos] == '+' || text[pos] == '-') {
    lead_sign = text[pos] == '-' ? -1.0 : 1.0;
    ++pos;
  }
  const auto rest = [&] { return text.substr(pos); };
  if (rest() == "i") return {0.0, lead_sign};

  const std::size_t a_len = scan_decimal(rest());
  if (a_len == 0) bad_literal(text, "expected a number or 'i'");
  const double a = lead_sign * to_double(rest().substr(0, a_len));
  pos += a_len;
  if (pos == text.size()) return {a, 0.0};
  if (rest() == "i") return {0.0, a};

  if (text[pos] != '+' && text[pos] != '-') bad_literal(text, "expected '+', '-' or 'i' after the real part");
  const double im_sign = text[pos] == '-' ? -1.0 : 1.0;
  ++pos;
  if (rest() == "i") return {a, im_sign};
  const std::size_t b_len = scan_decimal(rest());
  if (b_len == 0) bad_literal(text, "expected the imaginary coefficient");
  const double b = im_sign * to_double(rest().substr(0, b_len));
  pos += b_len;
  if (rest() != "i") bad_literal(text, "imaginary part must end in 'i'");
  return {a, b};
}

std::string format_number(double x) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::string format_complex_literal(Complex z) {
  std::string out = format_number(z.real());
  if (z.imag() != 0.0) {
    if (!std::signbit(z.imag())) out += '+';
    out += format_number(z.imag());
    out += 'i';
  }
  return out;
}

// ---------------------------------------------------------------------------

void write_csv(std::ostream& out, std::span<const TraceRecord> records) {
  out << "trace_index,s,re,im,abs_f,drift\n";
  for (const TraceRecord& rec : records) {
    for (const LevelPoint& p : rec.result.points) {
      out << rec.trace_index << ',' << format_number(p.s) << ',' << format_number(p.z.real()) << ','
          << format_number(p.z.imag()) << ',' << format_number(p.modulus) << ',' << format_number(p.drift)
          << '\n';
    }
  }
}

namespace {

nlohmann::json record_to_json(const TraceRecord& rec, bool with_index) {
  nlohmann::json j;
  if (with_index) j["trace_index"] = rec.trace_index;
  j["function"] = rec.function;
  j["seed"] = rec.seed;
  j["c"] = rec.result.c;
  j["method"] = std::string(to_string(rec.method));
  j["orientation"] = static_cast<int>(rec.orientation);
  j["termination"] = std::string(to_string(rec.result.termination));
  nlohmann::json points = nlohmann::json::array();
  for (const LevelPoint& p : rec.result.points) {
    points.push_back({{"s", p.s}, {"re", p.z.real()}, {"im", p.z.imag()}, {"abs_f", p.modulus}, {"drift", p.drift}});
  }
  j["points"] = std::move(points);
  return j;
}

}  // namespace

void write_json(std::ostream& out, std::span<const TraceRecord> records, bool as_array) {
  nlohmann::json doc;
  if (as_array) {
    doc = nlohmann::json::array();
    for (const TraceRecord& rec : records) doc.push_back(record_to_json(rec, true));
  } else if (!records.empty()) {
    doc = record_to_json(records.front(), false);
  } else {
    doc = nlohmann::json::object();
  }
  out << doc.dump(2) << '\n';
}

void write_svg(std::ostream& out, std::span<const TraceRecord> records) {
  constexpr double kSize = 800.0;
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const TraceRecord& rec : records) {
    for (const LevelPoint& p : rec.result.points) {
      xmin = std::min(xmin, p.z.real());
      xmax = std::max(xmax, p.z.real());
      ymin = std::min(ymin, p.z.imag());
      ymax = std::max(ymax, p.z.imag());
    }
  }
  if (!(xmin <= xmax)) {
    xmin = ymin = -1.0;
    xmax = ymax = 1.0;
  }
  // Square box around the data, grown by 5% in total extent.
  double span = std::max(xmax - xmin, ymax - ymin);
  if (!(span > 0.0)) span = 1.0;
  span *= 1.05;
  const double left = 0.5 * (xmin + xmax) - 0.5 * span;
  const double top = 0.5 * (ymin + ymax) + 0.5 * span;
  const double scale = kSize / span;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  char buf[64];
  for (const TraceRecord& rec : records) {
    out << "<polyline data-trace-index=\"" << rec.trace_index
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    bool first = true;
    for (const LevelPoint& p : rec.result.points) {
      const double x = (p.z.real() - left) * scale;
      const double y = (top - p.z.imag()) * scale;
      const int n = std::snprintf(buf, sizeof buf, "%s%.4f,%.4f", first ? "" : " ", x, y);
      out.write(buf, n);
      first = false;
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace levelpath
