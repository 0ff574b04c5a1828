#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "telsam/model.hpp"

#include <nlohmann/json.hpp>

namespace telsam {

// Raised on malformed or inconsistent input files; the CLI maps it to the
// data-error exit code.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json span_to_json(const SpanRecord& span);
SpanRecord span_from_json(const nlohmann::json& j);

nlohmann::json log_to_json(const LogRecord& log);
LogRecord log_from_json(const nlohmann::json& j);

nlohmann::json metric_to_json(const MetricVector& vec, const std::vector<std::string>& metric_names);
MetricVector metric_from_json(const nlohmann::json& j, std::vector<std::string>* metric_names);

void write_spans_jsonl(const std::filesystem::path& path, const std::vector<TraceGraph>& traces);
void write_logs_jsonl(const std::filesystem::path& path, const std::vector<LogRecord>& logs);
void write_metrics_jsonl(const std::filesystem::path& path, const std::vector<MetricVector>& metrics,
                         const std::vector<std::string>& metric_names);

std::vector<SpanRecord> read_spans_jsonl(const std::filesystem::path& path);
// Logs missing a log_id (foreign data) get a stable line-derived one.
std::vector<LogRecord> read_logs_jsonl(const std::filesystem::path& path);
std::vector<MetricVector> read_metrics_jsonl(const std::filesystem::path& path,
                                             std::vector<std::string>* metric_names);

// Groups spans by trace_id, preserving first-seen trace order and span file
// order. Does not validate; callers run validate_trace where required.
std::vector<TraceGraph> group_traces(std::vector<SpanRecord> spans);

// Reads spans.jsonl / logs.jsonl / metrics.jsonl from a directory.
TelemetryData load_telemetry_dir(const std::filesystem::path& dir);
void write_telemetry_dir(const std::filesystem::path& dir, const TelemetryData& data);

}  // namespace telsam
