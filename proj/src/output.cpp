#include "ep3/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace ep3 {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) body_ += ',';
        body_ += header[i];
    }
    body_ += '\n';
}

void CsvWriter::add_row(const std::vector<double>& values) {
    if (values.size() != columns_) throw std::logic_error("CsvWriter: column count mismatch");
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ',';
        body_ += format_number(values[i]);
    }
    body_ += '\n';
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& data) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

void atomic_write(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << contents;
    }
    fs::rename(tmp, target);
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["subcommand"] = subcommand;
    j["config"] = config_snapshot;
    j["flags"] = flags;
    j["wall_seconds"] = wall_seconds;
    j["outputs"] = nlohmann::json::array();
    for (const auto& e : outputs)
        j["outputs"].push_back({{"path", e.path}, {"fnv1a64", e.digest}, {"bytes", e.bytes}});
    return j.dump(2) + "\n";
}

void emit(RunManifest& manifest, const std::string& out_dir, const std::string& name,
          const std::string& contents) {
    atomic_write((std::filesystem::path(out_dir) / name).string(), contents);
    manifest.outputs.push_back({name, fnv1a64_hex(contents), contents.size()});
}

void write_manifest(const RunManifest& manifest, const std::string& out_dir) {
    atomic_write((std::filesystem::path(out_dir) / "manifest.json").string(), manifest.to_json());
}

}  // namespace ep3
