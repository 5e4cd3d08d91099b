#include "run_io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ratchet::cli {

OutputDir::OutputDir(std::string dir, bool force) : dir_(std::move(dir)), force_(force) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path OutputDir::claim(const std::string& name) {
  std::filesystem::path p = dir_ / name;
  if (!force_ && std::filesystem::exists(p)) {
    throw std::invalid_argument("refusing to overwrite " + p.string() +
                                " (pass --force to allow)");
  }
  names_.push_back(name);
  return p;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::filesystem::path path, const std::vector<std::string>& header)
    : path_(std::move(path)) {
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += header[i];
  }
  buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += format_double(values[i]);
  }
  buffer_ += '\n';
}

void CsvWriter::raw_row(const std::string& line) {
  buffer_ += line;
  buffer_ += '\n';
}

void CsvWriter::close() {
  if (closed_) return;
  std::ofstream out(path_, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path_.string());
  out << buffer_;
  closed_ = true;
}

void Manifest::set(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) {
  entries_.emplace_back(key, format_double(value));
}

void Manifest::set(const std::string& key, long long value) {
  entries_.emplace_back(key, std::to_string(value));
}

void Manifest::write(const std::filesystem::path& path,
                     const std::vector<std::string>& outputs) {
  auto now = std::chrono::system_clock::now();
  std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
  out << "timestamp=" << stamp << '\n';
  std::string files;
  for (const auto& name : outputs) {
    if (name == path.filename().string()) continue;
    if (!files.empty()) files += ';';
    files += name;
  }
  out << "outputs=" << files << '\n';
}

}  // namespace ratchet::cli
