#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "scde/config_io.hpp"

namespace scde {

// printf-style %.{sig}g / %.{dec}f wrappers used for the report columns.
std::string fmt_general(double v, int sig);
std::string fmt_fixed(double v, int decimals);

// CSV output with "# key: value" provenance lines before the header row.
// Cells containing separators are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void comment(const std::string& key, const std::string& value);
  void header(const std::vector<std::string>& cols);
  void row(const std::vector<std::string>& cells);

 private:
  void line(const std::vector<std::string>& cells);
  std::ostream& os_;
};

// Standard provenance blocks embedded in every report.
nlohmann::ordered_json tool_block();
nlohmann::ordered_json config_block(const KvPairs& kv);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace scde
