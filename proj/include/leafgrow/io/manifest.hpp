#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "leafgrow/error.hpp"
#include "leafgrow/io/json.hpp"

namespace leafgrow::io {

inline constexpr std::string_view tool_version = "0.1.0";

class io_error : public error {
 public:
  io_error(const std::filesystem::path& path, const std::string& what)
      : error(path.string() + ": " + what), path_(path) {}
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw error("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error(path, "cannot open for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw io_error(path, "write failed");
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path, "cannot open for reading");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw io_error(dir, "cannot create directory");
}

struct ManifestEntry {
  std::string path;  // relative to the manifest's directory
  std::string sha256;
  std::size_t bytes = 0;
};

// Inventory of emitted files plus the configuration that produced them.
struct RunManifest {
  json config;
  std::string version{tool_version};
  std::vector<ManifestEntry> files;

  // Writes content under dir and records its digest.
  void emit(const std::filesystem::path& dir, const std::string& relative, std::string_view content) {
    write_file(dir / relative, content);
    files.push_back({relative, sha256_hex(content), content.size()});
  }

  json to_json() const {
    json entries = json::array();
    for (const auto& f : files) entries.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    return {{"tool", "leafgrow"}, {"version", version}, {"config", config}, {"files", entries}};
  }

  std::string dump() const { return canonical_dump(to_json()) + "\n"; }

  void write(const std::filesystem::path& dir, const std::string& name = "manifest.json") const {
    write_file(dir / name, dump());
  }
};

// Recomputes every digest in a manifest against the files on disk.
inline bool verify_manifest(const std::filesystem::path& dir, const json& manifest) {
  for (const auto& f : manifest.at("files")) {
    const auto content = read_file(dir / f.at("path").get<std::string>());
    if (sha256_hex(content) != f.at("sha256").get<std::string>()) return false;
  }
  return true;
}

}  // namespace leafgrow::io
