#include <sstream>
#include <string>

#include "nexp/cli.hpp"
#include "nexp/errors.hpp"

namespace nexp::cli {

using nlohmann::json;

std::string_view to_string(Format format) {
  switch (format) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Svg: return "svg";
  }
  return "json";
}

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "svg") return Format::Svg;
  throw DomainError("unknown format '" + std::string(text) + "' (json, csv or svg)");
}

json dual(const Scalar& value) {
  json out = json::object();
  if (value.exact()) out["exact"] = value.exact()->str();
  out["decimal"] = value.decimal();
  return out;
}

json dual(const Real& value) { return json{{"decimal", value.str()}}; }

namespace {

json metadata_json(const Metadata& m) {
  return {{"tool", m.tool},         {"version", m.version}, {"schema_version", m.schema_version},
          {"precision", m.precision}, {"seed", m.seed},       {"config", m.config}};
}

Metadata metadata_from(const json& j) {
  Metadata m;
  m.tool = j.at("tool").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.schema_version = j.at("schema_version").get<int>();
  m.precision = j.at("precision").get<int>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.config = j.at("config");
  return m;
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_field(fields[i]);
  }
  os << '\n';
}

}  // namespace

json to_json(const OutputDoc& doc) {
  json out{{"schema_version", kSchemaVersion},
           {"command", doc.command},
           {"format", to_string(doc.format)},
           {"metadata", metadata_json(doc.metadata)},
           {"result", doc.payload}};
  if (doc.table) out["table"] = {{"header", doc.table->header}, {"rows", doc.table->rows}};
  if (doc.svg) out["svg"] = *doc.svg;
  return out;
}

OutputDoc doc_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
      throw DomainError("unsupported schema version " + j.at("schema_version").dump());
    }
    OutputDoc doc;
    doc.command = j.at("command").get<std::string>();
    doc.format = parse_format(j.at("format").get<std::string>());
    doc.metadata = metadata_from(j.at("metadata"));
    doc.payload = j.at("result");
    if (j.contains("table")) {
      doc.table = Table{j["table"].at("header").get<std::vector<std::string>>(),
                        j["table"].at("rows").get<std::vector<std::vector<std::string>>>()};
    }
    if (j.contains("svg")) doc.svg = j["svg"].get<std::string>();
    return doc;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed output document: ") + e.what());
  }
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string serialize(const OutputDoc& doc) {
  std::ostringstream os;
  switch (doc.format) {
    case Format::Json:
      os << to_json(doc).dump(2) << '\n';
      break;
    case Format::Csv: {
      if (!doc.table) throw DomainError(doc.command + " has no csv form");
      const Metadata& m = doc.metadata;
      os << "# tool: " << m.tool << ' ' << m.version << '\n'
         << "# schema_version: " << m.schema_version << '\n'
         << "# command: " << doc.command << '\n'
         << "# precision: " << m.precision << '\n'
         << "# seed: " << m.seed << '\n'
         << "# config: " << m.config.dump() << '\n';
      write_row(os, doc.table->header);
      for (const auto& row : doc.table->rows) write_row(os, row);
      break;
    }
    case Format::Svg: {
      if (!doc.svg) throw DomainError(doc.command + " has no svg form");
      std::string body = *doc.svg;
      // The metadata goes right after the opening <svg ...> tag.
      const size_t at = body.find('>');
      if (at == std::string::npos) throw InvariantError("svg body has no root element");
      std::string meta = metadata_json(doc.metadata).dump();
      std::string escaped;
      for (char c : meta) {
        if (c == '<') escaped += "&lt;";
        else if (c == '&') escaped += "&amp;";
        else escaped += c;
      }
      body.insert(at + 1, "\n<metadata>" + escaped + "</metadata>");
      os << body;
      break;
    }
  }
  return os.str();
}

}  // namespace nexp::cli
