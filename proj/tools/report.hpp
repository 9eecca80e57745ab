#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

// Plain-text run report: one "key = value [unit]" pair per line. Numbers carry
// a unit ("nondim", "mm" or "ms"); strings and booleans do not.
class RunReport {
 public:
  RunReport(std::string command, std::string version);

  void input(const std::string& key, double value, const std::string& unit);
  void input(const std::string& key, const std::string& value);
  void output(const std::string& key, double value, const std::string& unit);
  void output(const std::string& key, bool value);
  void output(const std::string& key, const std::string& value);

  /// Stamps the elapsed time since construction.
  void finish();
  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;

 private:
  void add(const std::string& key, const std::string& value, const std::string& unit);

  std::vector<std::string> lines_;
  std::chrono::steady_clock::time_point start_;
};

/// Shortest decimal form that reads back as the same double.
std::string format_number(double value);
/// Decimal form with 17 significant digits.
std::string format_csv_number(double value);

/// Reads "key = value [unit]" lines into key -> value. Throws cornea::ParseError.
std::map<std::string, std::string> read_report(const std::filesystem::path& path);
double report_number(const std::map<std::string, std::string>& report, const std::string& key);

/// Comma-separated table with a header row; numbers use format_csv_number.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void close();

 private:
  std::filesystem::path path_;
  std::string buffer_;
  std::size_t columns_;
};
