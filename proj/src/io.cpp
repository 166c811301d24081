#include "ifbc/io.hpp"

#include <cstdio>
#include <fstream>

#include "ifbc/error.hpp"

namespace ifbc::io {

std::string format_double(double value) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_imfs_csv(std::ostream& out, std::span<const std::vector<double>> imfs) {
  std::vector<std::string> header;
  header.reserve(imfs.size());
  for (std::size_t m = 0; m < imfs.size(); ++m) header.push_back("imf_" + std::to_string(m + 1));
  write_columns_csv(out, header, imfs);
}

void write_columns_csv(std::ostream& out, std::span<const std::string> header,
                       std::span<const std::vector<double>> columns) {
  if (header.size() != columns.size()) throw InvalidArgument("csv header and column count differ");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw InvalidArgument("csv columns differ in length");
  }
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_double(columns[c][r]);
    out << '\n';
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace ifbc::io
