#include "parobs/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "parobs/errors.hpp"

namespace parobs {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error("short write to '" + path + "'");
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void Record::add(const std::string& key, const std::string& value) {
  cells_.push_back({key, Kind::Text, value});
}

void Record::add(const std::string& key, const char* value) {
  cells_.push_back({key, Kind::Text, value});
}

void Record::add(const std::string& key, double value) {
  cells_.push_back({key, Kind::Number, format_double(value)});
}

void Record::add(const std::string& key, bool value) {
  cells_.push_back({key, Kind::Boolean, value ? "true" : "false"});
}

void Record::add(const std::string& key, long long value) {
  cells_.push_back({key, Kind::Integer, std::to_string(value)});
}

void Record::add(const std::string& key, std::size_t value) {
  cells_.push_back({key, Kind::Integer, std::to_string(value)});
}

std::string Record::json_line() const {
  std::string out = "{";
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i) out += ", ";
    out += json_quote(cells_[i].key);
    out += ": ";
    switch (cells_[i].kind) {
      case Kind::Text:
        out += json_quote(cells_[i].text);
        break;
      case Kind::Number:
        // JSON has no inf/nan literals.
        if (cells_[i].text.find("inf") != std::string::npos ||
            cells_[i].text.find("nan") != std::string::npos)
          out += "null";
        else
          out += cells_[i].text;
        break;
      case Kind::Integer:
      case Kind::Boolean:
        out += cells_[i].text;
        break;
    }
  }
  out += "}";
  return out;
}

std::vector<std::pair<std::string, std::string>> Record::cells() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(cells_.size());
  for (const auto& cell : cells_) out.emplace_back(cell.key, cell.text);
  return out;
}

void write_jsonl(const std::string& path, const std::vector<Record>& records) {
  std::string text;
  for (const auto& record : records) {
    text += record.json_line();
    text += '\n';
  }
  write_text(path, text);
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::string text;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) text += ',';
    text += csv_quote(table.columns[i]);
  }
  text += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += ',';
      text += csv_quote(row[i]);
    }
    text += '\n';
  }
  write_text(path, text);
}

void append_constants(Record& record, const ObservabilityConstants& constants) {
  const auto& in = constants.inputs;
  record.add("d0", in.d0);
  record.add("d1", in.d1);
  record.add("d2", in.d2);
  record.add("d3", in.d3);
  record.add("gamma1", in.gamma1);
  record.add("gamma2", in.gamma2);
  record.add("gamma3", in.gamma3);
  record.add("lambda_star", in.lambda_star);
  record.add("M", in.M);
  record.add("omega", in.omega);
  record.add("obs_norm", in.obs_norm);
  record.add("T", in.horizon);
  record.add("r", in.r);
  record.add("C1", constants.c1);
  record.add("C2", constants.c2);
  record.add("C3", constants.c3);
  record.add("log_C1", constants.log_c1);
  record.add("log_C_obs", constants.log_cobs);
  record.add("C_obs", constants.cobs);
}

std::size_t emit_summary(const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(out_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());

  std::vector<ordered_json> records;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      ordered_json parsed = ordered_json::parse(line, nullptr, false);
      if (parsed.is_discarded() || !parsed.is_object())
        throw Error("malformed record in '" + file + "'");
      records.push_back(std::move(parsed));
    }
  }

  const auto numeric = [](const ordered_json& rec, const char* key) {
    if (!rec.contains(key) || !rec[key].is_number())
      return -std::numeric_limits<double>::infinity();
    return rec[key].get<double>();
  };
  const auto text = [](const ordered_json& rec, const char* key) {
    if (!rec.contains(key) || !rec[key].is_string()) return std::string();
    return rec[key].get<std::string>();
  };
  std::stable_sort(records.begin(), records.end(),
                   [&](const ordered_json& a, const ordered_json& b) {
                     const std::string ka = text(a, "kind");
                     const std::string kb = text(b, "kind");
                     if (ka != kb) return ka < kb;
                     for (const char* key : {"T", "lambda", "t"}) {
                       const double va = numeric(a, key);
                       const double vb = numeric(b, key);
                       if (va != vb) return va < vb;
                     }
                     return a.dump() < b.dump();
                   });

  // Canonical sweep columns first, every other key alphabetically after.
  const std::vector<std::string> canonical = {
      "kind",   "T",      "rho",     "L1",       "lambda_star", "C1",
      "C2",     "C3",     "C_obs",   "C_emp",    "inv_T_pow",   "log_C_obs",
      "log_C_emp", "lambda", "t",    "ratio",    "log_ratio",   "pass"};
  std::vector<std::string> columns;
  std::map<std::string, bool> seen;
  for (const auto& rec : records)
    for (const auto& [key, value] : rec.items()) seen[key] = true;
  for (const auto& name : canonical)
    if (seen.count(name)) {
      columns.push_back(name);
      seen.erase(name);
    }
  for (const auto& [key, flag] : seen) columns.push_back(key);

  CsvTable table;
  table.columns = columns;
  for (const auto& rec : records) {
    std::vector<std::string> row;
    row.reserve(columns.size());
    for (const auto& column : columns) {
      if (!rec.contains(column)) {
        row.emplace_back();
      } else if (rec[column].is_string()) {
        row.push_back(rec[column].get<std::string>());
      } else if (rec[column].is_null()) {
        row.emplace_back();  // nonfinite on the producing side
      } else {
        row.push_back(rec[column].dump());
      }
    }
    table.rows.push_back(std::move(row));
  }

  const fs::path dir(out_dir);
  write_csv((dir / "summary.csv").string(), table);
  ordered_json merged = ordered_json::array();
  for (auto& rec : records) merged.push_back(std::move(rec));
  write_text((dir / "summary.json").string(), merged.dump(2) + "\n");
  return table.rows.size();
}

}  // namespace parobs
