#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nexp/real.hpp"
#include "nexp/scalar.hpp"

namespace nexp::cli {

inline constexpr std::string_view kToolName = "nexp";
inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// Resolves a value expression for numerator n:
///   decimal "6.5", rational "13/5", surd "(p+q*sqrt(D))/r",
///   "fmax" (sqrt(N)-1), "fix:i" (fixed point of digit i),
///   "astar:d" (alpha with T(alpha) = f_{d-1}),
///   "gap:lower" / "gap:upper" (four-cylinder gap bracket).
/// Every form but decimal literals with exponents beyond 4096 is exact.
Scalar resolve_value(long n, std::string_view expr, Precision prec);
/// resolve_value, then checked against (0, sqrt(N)-1].
Scalar resolve_alpha(long n, std::string_view expr, Precision prec);

enum class Format { Json, Csv, Svg };
std::string_view to_string(Format format);
Format parse_format(std::string_view text);

/// {"exact": surd text, "decimal": ...}, or just "decimal" when inexact.
nlohmann::json dual(const Scalar& value);
nlohmann::json dual(const Real& value);

struct Metadata {
  std::string tool{kToolName};
  std::string version{kToolVersion};
  int schema_version = kSchemaVersion;
  int precision = kDefaultPrecisionBits;
  std::uint64_t seed = 0;
  /// Echo of the command's inputs and options.
  nlohmann::json config = nlohmann::json::object();

  friend bool operator==(const Metadata&, const Metadata&) = default;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const Table&, const Table&) = default;
};

/// One command result. payload is always filled; table backs the CSV form
/// and svg the SVG form of commands that have one.
struct OutputDoc {
  std::string command;
  Format format = Format::Json;
  Metadata metadata;
  nlohmann::json payload;
  std::optional<Table> table;
  std::optional<std::string> svg;

  friend bool operator==(const OutputDoc&, const OutputDoc&) = default;
};

nlohmann::json to_json(const OutputDoc& doc);
/// Inverse of to_json. Throws DomainError on a malformed or foreign document.
OutputDoc doc_from_json(const nlohmann::json& j);

/// The document in its own format. CSV output starts with "# key: value"
/// metadata lines; SVG carries the metadata as JSON in <metadata>.
std::string serialize(const OutputDoc& doc);

std::string csv_field(std::string_view text);

/// Entry point of the command-line tool. Returns the exit code:
/// 0 success, 2 usage or domain error, 3 internal invariant violation.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nexp::cli
