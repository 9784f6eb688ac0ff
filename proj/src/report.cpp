#include "scde/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "scde/version.hpp"

namespace scde {

std::string fmt_general(double v, int sig) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", sig, v);
  return buf;
}

std::string fmt_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
  os_ << "# " << key << ": " << value << "\n";
}

namespace {

std::string escape_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void CsvWriter::line(const std::vector<std::string>& cells) {
  for (unsigned i = 0; i < cells.size(); ++i) {
    if (i > 0) os_ << ',';
    os_ << escape_cell(cells[i]);
  }
  os_ << '\n';
}

void CsvWriter::header(const std::vector<std::string>& cols) { line(cols); }
void CsvWriter::row(const std::vector<std::string>& cells) { line(cells); }

nlohmann::ordered_json tool_block() {
  return nlohmann::ordered_json{{"name", kToolName}, {"version", kToolVersion}};
}

nlohmann::ordered_json config_block(const KvPairs& kv) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [key, value] : kv) j[key] = value;
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace scde
