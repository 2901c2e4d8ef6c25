#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "parobs/observability.hpp"

namespace parobs {

// Flat record with insertion-ordered fields, rendered at insertion time so
// JSONL and CSV output is byte-deterministic: no locale, no formatting state,
// no timestamps.
class Record {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const char* value);
  void add(const std::string& key, double value);
  void add(const std::string& key, bool value);
  void add(const std::string& key, long long value);
  void add(const std::string& key, std::size_t value);

  /// One JSON object, single line.  Nonfinite numbers render as null.
  std::string json_line() const;

  /// Cells in field order, CSV-ready (nonfinite numbers stay inf/nan).
  std::vector<std::pair<std::string, std::string>> cells() const;

 private:
  enum class Kind { Text, Number, Integer, Boolean };
  struct Cell {
    std::string key;
    Kind kind;
    std::string text;
  };
  std::vector<Cell> cells_;
};

/// %.17g: round-trips every double and prints identically across runs.
std::string format_double(double value);

/// One record per line; truncates the file.
void write_jsonl(const std::string& path, const std::vector<Record>& records);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// RFC-style minimal quoting, LF line ends, truncates the file.
void write_csv(const std::string& path, const CsvTable& table);

/// Append the full constant chain (inputs and derived values, plus log
/// forms) to a record.
void append_constants(Record& record, const ObservabilityConstants& constants);

// Merge every *.jsonl under out_dir into summary.json (one sorted array)
// and summary.csv (stable column order: the canonical sweep columns first,
// anything else alphabetical; rows sorted by kind, then T, lambda, t).
// Returns the number of records merged.  Reading sorted file names and
// sorting rows makes repeated merges byte-identical.
std::size_t emit_summary(const std::string& out_dir);

}  // namespace parobs
