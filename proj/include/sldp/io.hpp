#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sldp/ensemble.hpp"

namespace sldp::io {

/// Library version recorded in every output file.
const char* version();

enum class Format { Csv, Json };

Format parse_format(const std::string& text);
std::string to_string(Format format);

/// Ordered key/value pairs written as `# key: value` lines.
struct Metadata {
  std::vector<std::pair<std::string, std::string>> entries;

  /// Replaces an existing key in place, otherwise appends.
  void set(const std::string& key, const std::string& value);
  const std::string* find(const std::string& key) const;
};

/// Key of the wall-clock entry; the only metadata line that varies between
/// otherwise identical runs.
inline constexpr const char* kWallClockKey = "wall_clock_s";

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

/// FNV-1a 64 of a canonical config string, as 16 hex digits.
std::string config_hash(const std::string& canonical);

/// Shortest text that round-trips the double; "inf", "-inf", "nan" otherwise.
std::string format_double(double x);

void write_csv(std::ostream& out, const Metadata& meta, const Table& table);
nlohmann::ordered_json to_json(const Metadata& meta, const Table& table);

/// Writes `<base>_<table.name>.csv` plus a `.json` mirror for Format::Csv,
/// or only the `.json` file for Format::Json. Returns the paths written.
std::vector<std::filesystem::path> write_table(const std::filesystem::path& base, Format format,
                                               const Metadata& meta, const Table& table);

/// Binary matrix dump:
///   8 bytes  magic "SLDPMAT1"
///   4 bytes  endianness tag 0x01020304 in the writer's byte order
///   8 bytes  rows (uint64), 8 bytes cols (uint64)
///   rows*cols*2 doubles, row-major, real then imaginary part.
/// The reader byte-swaps when the tag shows the other order.
void write_matrix(std::ostream& out, const ComplexMatrix& m);
ComplexMatrix read_matrix(std::istream& in);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);
ComplexMatrix read_matrix_file(const std::filesystem::path& path);

}  // namespace sldp::io
