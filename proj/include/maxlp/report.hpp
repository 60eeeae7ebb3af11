#pragma once

// Tabular report emission. One Table per subcommand run; every row carries
// the schema_version column plus the resolved configuration fields, so a
// saved file is self-describing. CSV prints floats with 17 significant
// digits; JSON mirrors the same rows one-to-one as an array of objects.

#include <string>
#include <vector>

#include "json.hpp"

namespace maxlp {

inline constexpr int kSchemaVersion = 1;

class Table {
 public:
  explicit Table(std::vector<std::string> columns);

  // row must provide exactly the declared columns.
  void add_row(const nlohmann::ordered_json& row);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<nlohmann::ordered_json>& rows() const { return rows_; }

 private:
  std::vector<std::string> columns_;
  std::vector<nlohmann::ordered_json> rows_;
};

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

// format is "csv" or "json"; out_path empty writes to stdout.
void write_report(const Table& table, const std::string& format,
                  const std::string& out_path);

}  // namespace maxlp
