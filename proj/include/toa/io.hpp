#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "toa/common.hpp"

namespace toa {

using Json = nlohmann::ordered_json;

/// %.17g: round-trip exact for double, fixed across runs.
std::string format_sig17(double value);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(const std::string& bytes);

/// JSON text with every floating value printed to 17 significant digits.
std::string dump_json_sig17(const Json& value, int indent = 2);

struct CsvTable {
  std::vector<std::string> header_comments;  // emitted as "# ..." lines
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
};

void write_text_file(const std::filesystem::path& path, const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace toa
