#include "maxlp/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace maxlp {

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("table needs columns");
}

void Table::add_row(const nlohmann::ordered_json& row) {
  if (!row.is_object() || row.size() != columns_.size())
    throw std::invalid_argument("row does not match the declared columns");
  for (const auto& c : columns_)
    if (!row.contains(c))
      throw std::invalid_argument("row is missing column " + c);
  rows_.push_back(row);
}

namespace {

std::string csv_cell(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned())
    return std::to_string(v.get<unsigned long long>());
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  std::string s = v.get<std::string>();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns().size(); ++i) {
    if (i) out += ',';
    out += table.columns()[i];
  }
  out += '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < table.columns().size(); ++i) {
      if (i) out += ',';
      out += csv_cell(row.at(table.columns()[i]));
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : table.rows()) arr.push_back(row);
  return arr.dump(2) + "\n";
}

void write_report(const Table& table, const std::string& format,
                  const std::string& out_path) {
  std::string text;
  if (format == "csv") {
    text = to_csv(table);
  } else if (format == "json") {
    text = to_json(table);
  } else {
    throw std::domain_error("unknown format '" + format +
                            "' (expected csv or json)");
  }
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
    if (!f) throw std::runtime_error("failed writing " + out_path);
  }
}

}  // namespace maxlp
