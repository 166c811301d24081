#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace ifbc::io {

/// printf("%.17g"): round-trip exact and byte-stable across runs.
std::string format_double(double value);

/// Header imf_1..imf_M, then one row per sample.
void write_imfs_csv(std::ostream& out, std::span<const std::vector<double>> imfs);

/// Columns given by `header`, one row per index; all columns equal length.
void write_columns_csv(std::ostream& out, std::span<const std::string> header,
                       std::span<const std::vector<double>> columns);

/// Write `content` to `path`; throws IoError on failure.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace ifbc::io
