#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "homotope/algebra.hpp"
#include "homotope/homological.hpp"

namespace homotope::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kTool = "homotope";
inline constexpr const char* kVersion = "0.1.0";

enum class Status { Pass, Fail, Error, Inconclusive };
const char* to_string(Status s);
Status parse_status(std::string_view text);

struct Check {
  std::string name;
  Status status;
  Json data;
};

struct Report {
  std::string tool = kTool;
  std::string version = kVersion;
  std::string command;
  std::string input_digest;
  std::optional<std::uint64_t> seed;
  std::vector<Check> checks;

  void add(std::string name, Status status, Json data = Json::object());
  void add(std::string name, bool passed, Json data = Json::object());
  /// Some check failed or errored.
  bool failed() const;
};

enum class Format { Human, Structured };

Json to_json(const Report& r);
Report report_from_json(const Json& j);
std::string emit(const Report& r, Format format);

std::string sha256_hex(std::string_view bytes);

// Files.
std::string read_file(const std::filesystem::path& path);
Json scalar_json(const Scalar& s);
Json element_json(const Element& x);
Json matrix_json(const Matrix& m);
Json algebra_json(const Algebra& a);
/// Validates indices, scalars, the declared unit and any Wedderburn lift.
/// Errors are ParseError with a location prefix.
Algebra parse_algebra(const Json& doc, std::string_view where = "algebra");
/// `algebra` may be inline, a path relative to base_dir, or absent (then
/// `fallback` is used).
ModuleRep parse_module(const Json& doc, const std::filesystem::path& base_dir, const AlgebraPtr& fallback,
                       std::string_view where = "module");

/// Parses argv, runs one subcommand and writes the report. Returns the exit
/// code: 0 when no check failed, 1 when some check failed or errored, 2 on
/// usage or input errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homotope::cli
