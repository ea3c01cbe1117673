#include "qda/report.hpp"

#include <stdexcept>

#include "json.hpp"

namespace qda {

using nlohmann::ordered_json;

const std::string& report_schema_json() {
  static const std::string schema = R"SCHEMA({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "qda run report",
  "type": "object",
  "required": ["schema", "provenance", "oracle", "results"],
  "properties": {
    "schema": { "type": "integer", "enum": [1] },
    "provenance": {
      "type": "object",
      "required": ["config", "seed", "version", "timestamp"],
      "properties": {
        "config": { "type": "object" },
        "seed": { "type": "integer" },
        "version": { "type": "string" },
        "timestamp": { "type": "string" }
      }
    },
    "oracle": {
      "type": "object",
      "required": ["target_accuracy", "non_adapted_accuracy", "adaptation_gain"],
      "properties": {
        "target_accuracy": { "type": ["number", "null"] },
        "non_adapted_accuracy": { "type": ["number", "null"] },
        "adaptation_gain": { "type": ["number", "null"] }
      }
    },
    "results": {
      "type": "object",
      "properties": {
        "classical": { "$ref": "#/definitions/pipeline" },
        "qblas": { "$ref": "#/definitions/pipeline" },
        "vqdac": { "$ref": "#/definitions/pipeline" }
      }
    }
  },
  "definitions": {
    "pipeline": {
      "type": "object",
      "required": ["per_sample", "aggregates"],
      "properties": {
        "per_sample": { "type": "array", "items": { "$ref": "#/definitions/sample" } },
        "aggregates": {
          "type": "object",
          "required": ["agreement_rate", "mean_fidelity", "vqsd_residuals", "cost_traces"],
          "properties": {
            "agreement_rate": { "type": ["number", "null"] },
            "mean_fidelity": { "type": ["number", "null"] },
            "vqsd_residuals": { "type": "array", "items": { "type": "number" } },
            "cost_traces": { "type": "object" },
            "weight_fidelity": { "type": ["number", "null"] },
            "weight_success_probability": { "type": ["number", "null"] },
            "all_converged": { "type": ["boolean", "null"] }
          }
        }
      }
    },
    "sample": {
      "type": "object",
      "required": [
        "index",
        "oracle_score",
        "oracle_label",
        "quantum_score",
        "quantum_label",
        "fidelity",
        "success_probability"
      ],
      "properties": {
        "index": { "type": "integer" },
        "oracle_score": { "type": "number" },
        "oracle_label": { "type": "integer", "enum": [0, 1] },
        "quantum_score": { "type": ["number", "null"] },
        "quantum_label": { "type": ["integer", "null"] },
        "fidelity": { "type": ["number", "null"] },
        "success_probability": { "type": ["number", "null"] },
        "vqls_cost": { "type": ["number", "null"] }
      }
    }
  }
}
)SCHEMA";
  return schema;
}

namespace {

bool matches_type(const ordered_json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
  if (type == "number") return value.is_number();
  throw std::runtime_error("schema uses unsupported type: " + type);
}

void validate_node(const ordered_json& value, const ordered_json& schema,
                   const ordered_json& root, const std::string& path) {
  if (schema.contains("$ref")) {
    const std::string ref = schema["$ref"].get<std::string>();
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) != 0) throw std::runtime_error("unsupported $ref: " + ref);
    const auto& target = root.at("definitions").at(ref.substr(prefix.size()));
    validate_node(value, target, root, path);
    return;
  }

  if (schema.contains("type")) {
    const auto& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = matches_type(value, t.get<std::string>());
    } else {
      for (const auto& alt : t) ok = ok || matches_type(value, alt.get<std::string>());
    }
    if (!ok) throw std::runtime_error("schema violation at " + path + ": wrong type");
  }

  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& allowed : schema["enum"]) ok = ok || (value == allowed);
    if (!ok) throw std::runtime_error("schema violation at " + path + ": value not in enum");
  }

  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"])
        if (!value.contains(key.get<std::string>()))
          throw std::runtime_error("schema violation at " + path + ": missing key " +
                                   key.get<std::string>());
    }
    if (schema.contains("properties")) {
      for (const auto& [key, sub] : schema["properties"].items())
        if (value.contains(key)) validate_node(value.at(key), sub, root, path + "/" + key);
    }
  }

  if (value.is_array() && schema.contains("items")) {
    std::size_t i = 0;
    for (const auto& item : value) {
      validate_node(item, schema["items"], root, path + "/" + std::to_string(i));
      ++i;
    }
  }
}

}  // namespace

void validate_report(const std::string& report_json) {
  ordered_json report;
  try {
    report = ordered_json::parse(report_json);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("report is not valid JSON: ") + e.what());
  }
  const ordered_json schema = ordered_json::parse(report_schema_json());
  validate_node(report, schema, schema, "");
}

std::string canonical_report_json(const std::string& report_json) {
  ordered_json report = ordered_json::parse(report_json);
  if (report.contains("provenance") && report["provenance"].contains("timestamp"))
    report["provenance"].erase("timestamp");
  return report.dump(2);
}

}  // namespace qda
