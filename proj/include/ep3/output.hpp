// output.hpp - deterministic CSV/JSON emission, atomic file writes, content
// digests, and the per-run manifest.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ep3 {

inline constexpr const char* kToolVersion = "0.1.0";

// Numbers are rendered with 12 significant digits so reruns are
// byte-identical without losing double precision in the plots.
std::string format_number(double v);

struct CsvWriter {
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(const std::vector<double>& values);
    const std::string& text() const { return body_; }

  private:
    std::string body_;
    size_t columns_;
};

// FNV-1a, 64-bit; a stable non-cryptographic content fingerprint.
std::uint64_t fnv1a64(const std::string& data);
std::string fnv1a64_hex(const std::string& data);

// Writes through a temporary file in the same directory, then renames.
void atomic_write(const std::string& path, const std::string& contents);

struct ManifestEntry {
    std::string path;     // relative to the output directory
    std::string digest;   // fnv1a64 of the bytes written
    std::uint64_t bytes = 0;
};

struct RunManifest {
    std::string subcommand;
    std::string config_snapshot;
    std::vector<std::string> flags;
    std::vector<ManifestEntry> outputs;
    double wall_seconds = 0.0;

    std::string to_json() const;
};

// Emits one file into out_dir and records it in the manifest.
void emit(RunManifest& manifest, const std::string& out_dir, const std::string& name,
          const std::string& contents);

void write_manifest(const RunManifest& manifest, const std::string& out_dir);

}  // namespace ep3
