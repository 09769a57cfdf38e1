#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace grl::cli {

enum class Format { kJson, kCsv };

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  Format format = Format::kJson;
  std::uint64_t max_arcs = 0;    // 0: library default
  std::uint64_t max_copies = 0;  // 0: library default
};

enum class RemovalMode { kPipeline, kExact, kSweep };

struct Result {
  nlohmann::json json;
  std::optional<std::string> csv;  // a command's own table, when it has one
};

// Each command validates its whole input and computes the full result before
// returning it, so nothing partial reaches standard output.
Result cmd_count(const std::string& path, const GlobalOptions& opts);
Result cmd_represent(const std::string& path, const GlobalOptions& opts);
Result cmd_verify(const std::string& path, const GlobalOptions& opts);
Result cmd_removal(const std::string& path, RemovalMode mode, const GlobalOptions& opts);
Result cmd_app(const std::string& which, const std::string& path,
                       const GlobalOptions& opts);

/// JSON: pretty-printed. CSV: the command's own table if it has one, else the
/// top-level scalar fields as a header line and one row.
void emit(std::ostream& out, const Result& result, Format format);

}  // namespace grl::cli
