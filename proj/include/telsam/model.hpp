#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace telsam {

// Service names double as map keys throughout; they are validated non-empty
// at ingestion boundaries rather than wrapped in a dedicated class.
using ServiceId = std::string;

inline constexpr int64_t kNsPerSecond = 1'000'000'000;
inline constexpr int64_t kDefaultWindowNs = 60 * kNsPerSecond;

enum class LogLevel { Info, Warn, Error };

const char* to_string(LogLevel level);
LogLevel log_level_from_string(const std::string& s);

// One operation execution inside a request. Timestamps are integer
// nanoseconds since epoch; durations are float milliseconds.
struct SpanRecord {
  std::string span_id;
  std::string trace_id;
  std::optional<std::string> parent_span_id;
  ServiceId service;
  std::string operation;
  int64_t start_ns = 0;
  double duration_ms = 0.0;

  bool operator==(const SpanRecord&) const = default;
};

// The set of spans produced by one request. Edges are implied by
// parent_span_id links; a well-formed trace has exactly one root and no
// cycles (see validate_trace).
struct TraceGraph {
  std::string trace_id;
  std::vector<SpanRecord> spans;

  bool operator==(const TraceGraph&) const = default;
};

// Ordered (service, operation) sequence from a trace's root span to one leaf.
struct CallPath {
  using Element = std::pair<ServiceId, std::string>;
  std::vector<Element> elements;

  bool operator==(const CallPath&) const = default;
  bool operator<(const CallPath& other) const { return elements < other.elements; }

  // Canonical textual form, usable as a hash/set key.
  std::string key() const;
};

struct LogRecord {
  std::string log_id;
  int64_t timestamp_ns = 0;
  ServiceId service;
  LogLevel level = LogLevel::Info;
  std::string message;
  std::optional<std::string> trace_id;
  std::optional<int64_t> template_id;

  bool operator==(const LogRecord&) const = default;
};

struct LogTemplate {
  int64_t template_id = 0;
  ServiceId service;
  std::vector<std::string> tokens;  // literal tokens and "<*>" slots

  // Human-readable pattern. Tokens ending in '=' attach to the next token
  // so "host=" + "<*>" renders as "host=<*>".
  std::string pattern() const;

  bool operator==(const LogTemplate&) const = default;
};

// One multivariate metric reading (or window aggregate) for a service.
// The metric-name schema is carried once per dataset, not per vector.
struct MetricVector {
  ServiceId service;
  int64_t window_start_ns = 0;
  std::vector<double> values;

  bool operator==(const MetricVector&) const = default;
};

struct Window {
  int64_t start_ns = 0;
  int64_t length_ns = kDefaultWindowNs;

  int64_t end_ns() const { return start_ns + length_ns; }
  bool contains(int64_t ts) const { return ts >= start_ns && ts < end_ns(); }
};

// Index of the window containing ts, for windows tiling the timeline at
// multiples of length_ns. Correct for negative timestamps too.
int64_t window_index(int64_t ts_ns, int64_t length_ns);

struct TelemetryData {
  std::vector<TraceGraph> traces;
  std::vector<LogRecord> logs;
  std::vector<MetricVector> metrics;
  std::vector<std::string> metric_names;

  bool empty() const { return traces.empty() && logs.empty() && metrics.empty(); }
};

enum class TraceError {
  None,
  EmptyTrace,
  DuplicateSpanId,
  MultipleRoots,
  OrphanSpan,
  CyclicTrace,
};

const char* to_string(TraceError error);

struct TraceValidation {
  TraceError error = TraceError::None;
  std::vector<std::string> offending_spans;

  bool ok() const { return error == TraceError::None; }
};

// Checks the TraceGraph invariants: exactly one root, every parent link
// resolves within the trace, and parent chains are acyclic.
TraceValidation validate_trace(const TraceGraph& trace);

// Spans that belong to no valid parent chain cannot occur after a trace
// passed validation, so helpers below assume valid input.
const SpanRecord* find_root(const TraceGraph& trace);
std::vector<ServiceId> services_on_trace(const TraceGraph& trace);

}  // namespace telsam
