#include "sphangle/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace sphangle {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return {buf, res.ptr};
}

std::string matrix_to_csv(std::size_t n, std::size_t p, const double* values) {
  std::string out;
  out.reserve(n * p * 20);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < p; ++k) {
      if (k) out.push_back(',');
      out += format_double(values[i * p + k]);
    }
    out.push_back('\n');
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << content;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

namespace {

bool parse_token(std::string_view token, double& out) {
  // Trim spaces and an optional CR left by Windows line endings.
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) {
    token.remove_prefix(1);
  }
  while (!token.empty() &&
         (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) {
    token.remove_suffix(1);
  }
  if (token.empty()) return false;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), out);
  return res.ec == std::errc{} && res.ptr == token.data() + token.size();
}

bool parse_line(std::string_view line, std::vector<double>& row) {
  row.clear();
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    const std::string_view token =
        line.substr(start, comma == std::string_view::npos ? comma : comma - start);
    double v = 0.0;
    if (!parse_token(token, v)) return false;
    row.push_back(v);
    if (comma == std::string_view::npos) return true;
    start = comma + 1;
  }
}

bool blank_line(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

DataMatrix parse_matrix_csv(const std::string& text, const std::string& origin) {
  DataMatrix m;
  std::vector<double> row;
  std::size_t lineno = 0;
  std::size_t start = 0;
  bool saw_data = false;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::string_view line(text.data() + start,
                                (nl == std::string::npos ? text.size() : nl) - start);
    start = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (blank_line(line)) continue;
    if (!parse_line(line, row)) {
      if (!saw_data && lineno == 1) continue;  // optional header row
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": cannot parse CSV row");
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                                 ": non-finite value in CSV");
      }
    }
    if (!saw_data) {
      m.p = row.size();
      saw_data = true;
    } else if (row.size() != m.p) {
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(m.p) + " columns, got " +
                               std::to_string(row.size()));
    }
    m.values.insert(m.values.end(), row.begin(), row.end());
    ++m.n;
  }
  if (!saw_data) throw std::runtime_error(origin + ": no data rows");
  return m;
}

DataMatrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_matrix_csv(buf.str(), path.string());
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

}  // namespace sphangle
