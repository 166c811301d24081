#include "ifbc/signal.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>

#include "ifbc/error.hpp"

namespace ifbc {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

Signal::Signal(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < kMinLength) {
    throw InvalidArgument("signal needs at least 3 samples, got " + std::to_string(values_.size()));
  }
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) {
      throw InvalidArgument("sample " + std::to_string(j) + " is not finite");
    }
  }
}

Signal parse_signal(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t row = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++row;
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto value = parse_number(text);
    if (!value) {
      // header is only allowed as the first non-blank line
      if (!seen_content) {
        seen_content = true;
        continue;
      }
      throw ParseError(row, "cannot parse '" + std::string(text) + "' as a real number");
    }
    seen_content = true;
    if (!std::isfinite(*value)) throw ParseError(row, "non-finite value");
    values.push_back(*value);
  }
  if (values.size() < Signal::kMinLength) {
    throw ParseError(row, "expected at least 3 samples, found " + std::to_string(values.size()));
  }
  return Signal(std::move(values));
}

Signal load_signal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_signal(in);
}

double norm2(std::span<const double> v) {
  // scaled accumulation keeps tiny and huge inputs finite
  double scale = 0.0;
  double ssq = 1.0;
  for (double x : v) {
    if (x == 0.0) continue;
    const double a = std::abs(x);
    if (scale < a) {
      ssq = 1.0 + ssq * (scale / a) * (scale / a);
      scale = a;
    } else {
      ssq += (a / scale) * (a / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Signal normalize(const Signal& s) {
  const double nrm = norm2(s.values());
  if (nrm == 0.0) throw DomainError("cannot normalize the zero signal");
  std::vector<double> out(s.values().begin(), s.values().end());
  for (double& x : out) x /= nrm;
  return Signal(std::move(out));
}

std::size_t count_extrema(std::span<const double> v) {
  const std::size_t n = v.size();
  std::size_t count = 0;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start;
    while (end + 1 < n && v[end + 1] == v[start]) ++end;
    if (start > 0 && end + 1 < n) {
      const double left = v[start - 1];
      const double right = v[end + 1];
      const double mid = v[start];
      if ((mid > left && mid > right) || (mid < left && mid < right)) ++count;
    }
    start = end + 1;
  }
  return count;
}

}  // namespace ifbc
