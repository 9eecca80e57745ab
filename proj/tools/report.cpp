#include "report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cornea/error.hpp"

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_csv_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

RunReport::RunReport(std::string command, std::string version)
    : start_(std::chrono::steady_clock::now()) {
  add("command", command, "");
  add("version", version, "");
}

void RunReport::add(const std::string& key, const std::string& value, const std::string& unit) {
  lines_.push_back(key + " = " + value + (unit.empty() ? "" : " " + unit));
}

void RunReport::input(const std::string& key, double value, const std::string& unit) {
  add("input." + key, format_number(value), unit);
}

void RunReport::input(const std::string& key, const std::string& value) {
  add("input." + key, value, "");
}

void RunReport::output(const std::string& key, double value, const std::string& unit) {
  add(key, format_number(value), unit);
}

void RunReport::output(const std::string& key, bool value) {
  add(key, value ? "true" : "false", "");
}

void RunReport::output(const std::string& key, const std::string& value) { add(key, value, ""); }

void RunReport::finish() {
  const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start_;
  add("elapsed", format_number(ms.count()), "ms");
}

void RunReport::write(std::ostream& out) const {
  for (const auto& line : lines_) out << line << '\n';
}

void RunReport::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw cornea::IoError("cannot open '" + path.string() + "' for writing");
  write(out);
  out.close();
  if (!out) throw cornea::IoError("write to '" + path.string() + "' failed");
}

std::map<std::string, std::string> read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw cornea::IoError("cannot open '" + path.string() + "'");
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw cornea::ParseError("expected 'key = value'", line_no, 1);
    std::istringstream value(line.substr(eq + 3));
    std::string first;
    value >> first;
    out[line.substr(0, eq)] = first;
  }
  return out;
}

double report_number(const std::map<std::string, std::string>& report, const std::string& key) {
  const auto it = report.find(key);
  if (it == report.end()) throw cornea::ParseError("report lacks key '" + key + "'", 0, 0);
  double value = 0.0;
  const std::string& s = it->second;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw cornea::ParseError("report key '" + key + "' is not a number: '" + s + "'", 0, 0);
  }
  return value;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) buffer_ += (i ? "," : "") + header[i];
  buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw std::logic_error("CsvWriter: row width differs from header");
  for (std::size_t i = 0; i < values.size(); ++i) buffer_ += (i ? "," : "") + format_csv_number(values[i]);
  buffer_ += '\n';
}

void CsvWriter::close() {
  std::ofstream out(path_);
  if (!out) throw cornea::IoError("cannot open '" + path_.string() + "' for writing");
  out << buffer_;
  out.close();
  if (!out) throw cornea::IoError("write to '" + path_.string() + "' failed");
}
