#include "superatom_cli/output.hpp"

#include <array>
#include <stdexcept>

#include <fmt/format.h>
#include <openssl/evp.h>

namespace superatom::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md.data(), &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

OutputDir::OutputDir(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_);
  // A manifest from an earlier run must not vouch for this one's files.
  std::filesystem::remove(root_ / "manifest.json");
}

std::ofstream OutputDir::open(const std::string& name) {
  std::ofstream out(root_ / name, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + (root_ / name).string());
  files_.push_back(name);
  return out;
}

void OutputDir::write_json(const std::string& name, const nlohmann::json& value) {
  auto out = open(name);
  out << value.dump(2) << '\n';
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

CsvWriter::CsvWriter(std::ofstream out, const std::vector<std::string>& header)
    : out_(std::move(out)), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << csv_field(header[i]);
  out_ << '\n';
}

CsvWriter& CsvWriter::add(double value) {
  out_ << (in_row_++ ? "," : "") << fmt::format("{:.17g}", value);
  return *this;
}

CsvWriter& CsvWriter::add(long long value) {
  out_ << (in_row_++ ? "," : "") << value;
  return *this;
}

CsvWriter& CsvWriter::add(const std::string& value) {
  out_ << (in_row_++ ? "," : "") << csv_field(value);
  return *this;
}

void CsvWriter::end_row() {
  if (in_row_ != columns_) {
    throw std::logic_error(fmt::format("csv row has {} fields, header has {}", in_row_, columns_));
  }
  out_ << '\n';
  in_row_ = 0;
}

void write_manifest(const OutputDir& dir, const nlohmann::json& body) {
  nlohmann::json manifest = body;
  manifest["files"] = nlohmann::json::array();
  for (const auto& name : dir.files()) {
    const auto path = dir.root() / name;
    manifest["files"].push_back(
        {{"path", name}, {"sha256", sha256_file(path)}, {"bytes", std::filesystem::file_size(path)}});
  }
  const auto tmp = dir.root() / "manifest.json.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << manifest.dump(2) << '\n';
    out.close();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, dir.root() / "manifest.json");
}

}  // namespace superatom::cli
