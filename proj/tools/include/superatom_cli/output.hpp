#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace superatom::cli {

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Collects the files one run writes, relative to the output directory.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }
  const std::vector<std::string>& files() const noexcept { return files_; }

  /// Opens root/name for writing and records it.
  std::ofstream open(const std::string& name);
  void write_json(const std::string& name, const nlohmann::json& value);

 private:
  std::filesystem::path root_;
  std::vector<std::string> files_;
};

/// CSV with a header row: numbers as %.17g, text fields quoted when they need it.
class CsvWriter {
 public:
  CsvWriter(std::ofstream out, const std::vector<std::string>& header);

  CsvWriter& add(double value);
  CsvWriter& add(long long value);
  CsvWriter& add(const std::string& value);
  void end_row();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

std::string csv_field(const std::string& text);

/// Writes root/manifest.json atomically (temporary file, then rename).
void write_manifest(const OutputDir& dir, const nlohmann::json& body);

}  // namespace superatom::cli
