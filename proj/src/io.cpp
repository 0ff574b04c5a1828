#include "telsam/io.hpp"

#include <fstream>
#include <unordered_map>

namespace telsam {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

nlohmann::json span_to_json(const SpanRecord& span) {
  nlohmann::json j{
      {"span_id", span.span_id},
      {"trace_id", span.trace_id},
      {"service", span.service},
      {"operation", span.operation},
      {"start_ns", span.start_ns},
      {"duration_ms", span.duration_ms},
  };
  if (span.parent_span_id) j["parent_span_id"] = *span.parent_span_id;
  return j;
}

SpanRecord span_from_json(const nlohmann::json& j) {
  SpanRecord span;
  span.span_id = j.at("span_id").get<std::string>();
  span.trace_id = j.at("trace_id").get<std::string>();
  if (j.contains("parent_span_id") && !j["parent_span_id"].is_null()) {
    span.parent_span_id = j["parent_span_id"].get<std::string>();
  }
  span.service = j.at("service").get<std::string>();
  span.operation = j.at("operation").get<std::string>();
  span.start_ns = j.at("start_ns").get<int64_t>();
  span.duration_ms = j.at("duration_ms").get<double>();
  if (span.duration_ms < 0) throw DataError("negative duration for span " + span.span_id);
  return span;
}

nlohmann::json log_to_json(const LogRecord& log) {
  nlohmann::json j{
      {"log_id", log.log_id},
      {"timestamp_ns", log.timestamp_ns},
      {"service", log.service},
      {"level", to_string(log.level)},
      {"message", log.message},
  };
  if (log.trace_id) j["trace_id"] = *log.trace_id;
  return j;
}

LogRecord log_from_json(const nlohmann::json& j) {
  LogRecord log;
  if (j.contains("log_id")) log.log_id = j["log_id"].get<std::string>();
  log.timestamp_ns = j.at("timestamp_ns").get<int64_t>();
  log.service = j.at("service").get<std::string>();
  log.level = log_level_from_string(j.at("level").get<std::string>());
  log.message = j.at("message").get<std::string>();
  if (j.contains("trace_id") && !j["trace_id"].is_null()) {
    log.trace_id = j["trace_id"].get<std::string>();
  }
  return log;
}

nlohmann::json metric_to_json(const MetricVector& vec, const std::vector<std::string>& metric_names) {
  return nlohmann::json{
      {"service", vec.service},
      {"window_start_ns", vec.window_start_ns},
      {"values", vec.values},
      {"metric_names", metric_names},
  };
}

MetricVector metric_from_json(const nlohmann::json& j, std::vector<std::string>* metric_names) {
  MetricVector vec;
  vec.service = j.at("service").get<std::string>();
  vec.window_start_ns = j.at("window_start_ns").get<int64_t>();
  vec.values = j.at("values").get<std::vector<double>>();
  if (metric_names != nullptr) {
    auto names = j.at("metric_names").get<std::vector<std::string>>();
    if (metric_names->empty()) {
      *metric_names = std::move(names);
    } else if (*metric_names != names) {
      throw DataError("metric_names schema differs between readings");
    }
  }
  return vec;
}

void write_spans_jsonl(const std::filesystem::path& path, const std::vector<TraceGraph>& traces) {
  auto out = open_output(path);
  for (const auto& trace : traces) {
    for (const auto& span : trace.spans) out << span_to_json(span).dump() << '\n';
  }
}

void write_logs_jsonl(const std::filesystem::path& path, const std::vector<LogRecord>& logs) {
  auto out = open_output(path);
  for (const auto& log : logs) out << log_to_json(log).dump() << '\n';
}

void write_metrics_jsonl(const std::filesystem::path& path, const std::vector<MetricVector>& metrics,
                         const std::vector<std::string>& metric_names) {
  auto out = open_output(path);
  for (const auto& vec : metrics) out << metric_to_json(vec, metric_names).dump() << '\n';
}

std::vector<SpanRecord> read_spans_jsonl(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<SpanRecord> spans;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      spans.push_back(span_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return spans;
}

std::vector<LogRecord> read_logs_jsonl(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<LogRecord> logs;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      LogRecord log = log_from_json(nlohmann::json::parse(line));
      if (log.log_id.empty()) log.log_id = "line-" + std::to_string(line_no);
      logs.push_back(std::move(log));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return logs;
}

std::vector<MetricVector> read_metrics_jsonl(const std::filesystem::path& path,
                                             std::vector<std::string>* metric_names) {
  auto in = open_input(path);
  std::vector<MetricVector> metrics;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      metrics.push_back(metric_from_json(nlohmann::json::parse(line), metric_names));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return metrics;
}

std::vector<TraceGraph> group_traces(std::vector<SpanRecord> spans) {
  std::vector<TraceGraph> traces;
  std::unordered_map<std::string, size_t> index;
  for (auto& span : spans) {
    auto it = index.find(span.trace_id);
    if (it == index.end()) {
      index.emplace(span.trace_id, traces.size());
      traces.push_back(TraceGraph{span.trace_id, {}});
      it = index.find(span.trace_id);
    }
    traces[it->second].spans.push_back(std::move(span));
  }
  return traces;
}

TelemetryData load_telemetry_dir(const std::filesystem::path& dir) {
  TelemetryData data;
  data.traces = group_traces(read_spans_jsonl(dir / "spans.jsonl"));
  data.logs = read_logs_jsonl(dir / "logs.jsonl");
  data.metrics = read_metrics_jsonl(dir / "metrics.jsonl", &data.metric_names);
  return data;
}

void write_telemetry_dir(const std::filesystem::path& dir, const TelemetryData& data) {
  std::filesystem::create_directories(dir);
  write_spans_jsonl(dir / "spans.jsonl", data.traces);
  write_logs_jsonl(dir / "logs.jsonl", data.logs);
  write_metrics_jsonl(dir / "metrics.jsonl", data.metrics, data.metric_names);
}

}  // namespace telsam
