#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace equiroute {

// Shortest decimal form that parses back to the same double; the one stable
// choice when outputs must be byte-identical across runs and machines.
inline std::string format_double(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, end);
}

// Minimal RFC-4180 writer: comma separation, CRLF-free (LF) line endings,
// quoting only when a field needs it.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  CsvWriter& field(std::string_view text) {
    if (!first_) {
      out_ << ',';
    }
    first_ = false;
    if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
      out_ << text;
    } else {
      out_ << '"';
      for (char c : text) {
        if (c == '"') {
          out_ << '"';
        }
        out_ << c;
      }
      out_ << '"';
    }
    return *this;
  }

  CsvWriter& field(double value) { return field(format_double(value)); }
  CsvWriter& field(std::int64_t value) { return field(std::to_string(value)); }
  CsvWriter& field(int value) { return field(static_cast<std::int64_t>(value)); }

  void end_row() {
    out_ << '\n';
    first_ = true;
  }

  void row(const std::vector<std::string>& fields) {
    for (const auto& f : fields) {
      field(f);
    }
    end_row();
  }

 private:
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace equiroute
