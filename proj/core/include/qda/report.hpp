#pragma once

#include <string>

namespace qda {

inline constexpr const char* kProjectVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

// The published report schema (identical to core/schema/run_report.schema.json;
// a test keeps the two in sync).
const std::string& report_schema_json();

// Structural validation of a report against the schema (type / required /
// enum / items / $ref subset of JSON Schema). Throws std::runtime_error with
// a path-qualified message on the first violation.
void validate_report(const std::string& report_json);

// Canonical form for reproducibility comparisons: provenance.timestamp is
// dropped, everything else is preserved byte for byte (stable key order).
std::string canonical_report_json(const std::string& report_json);

}  // namespace qda
