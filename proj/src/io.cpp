#include "sldp/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>

#ifndef SLDP_VERSION
#define SLDP_VERSION "0.0.0"
#endif

namespace sldp::io {

namespace {

constexpr std::array<char, 8> kMagic = {'S', 'L', 'D', 'P', 'M', 'A', 'T', '1'};
constexpr std::uint32_t kEndianTag = 0x01020304u;

template <class T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in, bool swap) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), bytes.size())) throw DomainError("truncated matrix dump");
  if (swap) std::reverse(bytes.begin(), bytes.end());
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const char* version() { return SLDP_VERSION; }

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw DomainError("unknown format '" + text + "' (expected csv or json)");
}

std::string to_string(Format format) { return format == Format::Csv ? "csv" : "json"; }

void Metadata::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries)
    if (k == key) {
      v = value;
      return;
    }
  entries.emplace_back(key, value);
}

const std::string* Metadata::find(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return &v;
  return nullptr;
}

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw DomainError("row has " + std::to_string(row.size()) + " fields, table '" + name +
                      "' has " + std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& out, const Metadata& meta, const Table& table) {
  for (const auto& [k, v] : meta.entries) out << "# " << k << ": " << v << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << csv_field(table.columns[c]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << '\n';
  }
}

nlohmann::ordered_json to_json(const Metadata& meta, const Table& table) {
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta.entries) m[k] = v;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    // JSON has no inf or nan; emit them as strings like the CSV does
    for (double x : row) r.push_back(std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(format_double(x)));
    rows.push_back(std::move(r));
  }
  nlohmann::ordered_json out;
  out["table"] = table.name;
  out["metadata"] = std::move(m);
  out["columns"] = table.columns;
  out["rows"] = std::move(rows);
  return out;
}

std::vector<std::filesystem::path> write_table(const std::filesystem::path& base, Format format,
                                               const Metadata& meta, const Table& table) {
  const std::filesystem::path stem = base.string() + "_" + table.name;
  if (stem.has_parent_path()) std::filesystem::create_directories(stem.parent_path());
  std::vector<std::filesystem::path> written;
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
    return f;
  };
  if (format == Format::Csv) {
    const std::filesystem::path p = stem.string() + ".csv";
    std::ofstream f = open(p);
    write_csv(f, meta, table);
    written.push_back(p);
  }
  const std::filesystem::path p = stem.string() + ".json";
  std::ofstream f = open(p);
  f << to_json(meta, table).dump(1) << '\n';
  written.push_back(p);
  return written;
}

void write_matrix(std::ostream& out, const ComplexMatrix& m) {
  out.write(kMagic.data(), kMagic.size());
  put(out, kEndianTag);
  put(out, static_cast<std::uint64_t>(m.rows()));
  put(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      put(out, m(i, j).real());
      put(out, m(i, j).imag());
    }
  if (!out) throw std::runtime_error("matrix dump write failed");
}

ComplexMatrix read_matrix(std::istream& in) {
  std::array<char, 8> magic;
  if (!in.read(magic.data(), magic.size()) || magic != kMagic)
    throw DomainError("not a matrix dump (bad magic)");
  const std::uint32_t tag = get<std::uint32_t>(in, false);
  bool swap = false;
  if (tag != kEndianTag) {
    if (__builtin_bswap32(tag) != kEndianTag)
      throw DomainError("matrix dump has a bad endianness tag");
    swap = true;
  }
  const auto rows = get<std::uint64_t>(in, swap);
  const auto cols = get<std::uint64_t>(in, swap);
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double re = get<double>(in, swap);
      m(i, j) = {re, get<double>(in, swap)};
    }
  return m;
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_matrix(f, m);
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  return read_matrix(f);
}

}  // namespace sldp::io
