#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace ratchet::cli {

// Where a command writes its files. Refuses to overwrite anything unless
// --force was given; the refusal is a usage error (exit 2).
class OutputDir {
 public:
  OutputDir(std::string dir, bool force);

  // Registers a file name, enforcing the overwrite policy, and returns the
  // full path. Call for every output before writing the first one.
  std::filesystem::path claim(const std::string& name);

  const std::vector<std::string>& names() const { return names_; }

 private:
  std::filesystem::path dir_;
  bool force_;
  std::vector<std::string> names_;
};

// Column-oriented CSV with 17 significant digits, '.' decimal point, Unix
// newlines and a header row: doubles round-trip losslessly.
class CsvWriter {
 public:
  explicit CsvWriter(std::filesystem::path path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);
  void close();

 private:
  std::filesystem::path path_;
  std::string buffer_;
  bool closed_ = false;
};

// Flat key=value run manifest. One manifest per command invocation; it lists
// every file the run emitted.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);
  void write(const std::filesystem::path& path, const std::vector<std::string>& outputs);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string format_double(double v);  // %.17g

}  // namespace ratchet::cli
