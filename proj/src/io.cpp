#include "toa/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace toa {

std::string format_sig17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string hash_hex(const std::string& bytes) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buffer;
}

namespace {

void dump_value(const Json& value, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
  switch (value.type()) {
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = value.begin(); it != value.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump_value(it.value(), out, indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : value) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_value(item, out, indent, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = value.get<double>();
      if (!std::isfinite(d)) fail("ValidationError", "non-finite value in JSON output");
      out += format_sig17(d);
      return;
    }
    default:
      out += value.dump();
      return;
  }
}

}  // namespace

std::string dump_json_sig17(const Json& value, int indent) {
  std::string out;
  dump_value(value, out, indent, 0);
  out += "\n";
  return out;
}

std::string CsvTable::to_string() const {
  std::ostringstream out;
  for (const auto& line : header_comments) out << "# " << line << "\n";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out << ",";
    out << columns[c];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      out << row[c];
    }
    out << "\n";
  }
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream stream(path, std::ios::binary);
  if (!stream) fail("ValidationError", "cannot open " + path.string() + " for writing");
  stream << contents;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) fail("ValidationError", "cannot open " + path.string());
  std::ostringstream out;
  out << stream.rdbuf();
  return out.str();
}

}  // namespace toa
