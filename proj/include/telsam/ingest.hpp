#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "telsam/model.hpp"

namespace telsam {

struct InvalidTrace : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchemaMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Splits a raw message into tokens: whitespace-separated, with "k=v" split
// into "k=" and "v", and purely numeric-looking value tokens generalized to
// "<*>" up front.
std::vector<std::string> tokenize_message(const std::string& message);
bool is_numeric_token(const std::string& token);

// Online log template miner. Messages are bucketed by (token count, first
// two tokens); within a bucket a message merges into the template with the
// highest token-wise similarity when it reaches the threshold, wildcarding
// the disagreeing positions. Template ids are never reused or merged away.
//
// Stores are service-scoped: one TemplateStore instance covers a whole
// dataset and keeps independent trees per service, since template statistics
// downstream are all per service.
class TemplateStore {
 public:
  explicit TemplateStore(double similarity_threshold = 0.5)
      : similarity_threshold_(similarity_threshold) {}

  // Assigns (and possibly creates or generalizes) the template for one log
  // message. Single writer per store.
  int64_t mine(const ServiceId& service, const std::string& message);

  const std::vector<LogTemplate>& templates() const { return templates_; }
  const LogTemplate& of(int64_t template_id) const { return templates_.at(static_cast<size_t>(template_id)); }
  int64_t next_id() const { return static_cast<int64_t>(templates_.size()); }

  // Rebuilds the bucket index from a deserialized template list.
  static TemplateStore from_templates(std::vector<LogTemplate> templates, double similarity_threshold = 0.5);

 private:
  struct Bucket {
    std::vector<size_t> template_indices;
  };
  std::string bucket_key(const ServiceId& service, const std::vector<std::string>& tokens) const;

  double similarity_threshold_;
  std::vector<LogTemplate> templates_;
  std::unordered_map<std::string, Bucket> buckets_;
};

int64_t mine_template(LogRecord& log, TemplateStore& store);

// One root-to-leaf path per leaf span, duplicates collapsed. Throws
// InvalidTrace when the trace fails validation.
std::vector<CallPath> extract_call_paths(const TraceGraph& trace);

struct AggregatedMetrics {
  // Per service: window-aligned vectors covering [first, last] window of the
  // whole reading set, empty windows forward-filled (zeros before the first
  // reading of that service).
  std::map<ServiceId, std::vector<MetricVector>> per_service;
  // Raw reading count per (service, window start).
  std::map<std::pair<ServiceId, int64_t>, size_t> reading_counts;
};

// Buckets raw readings into fixed windows and averages per dimension.
// All readings must follow the same metric-name schema (checked upstream at
// parse time); dimensionality mismatches throw SchemaMismatch.
AggregatedMetrics aggregate_metrics(const std::vector<MetricVector>& readings, int64_t window_ns,
                                    size_t dimensions);

struct CorrelationContext {
  struct Entry {
    const TraceGraph* trace = nullptr;
    std::vector<const LogRecord*> logs;
  };
  std::unordered_map<std::string, Entry> by_trace_id;
  std::vector<const LogRecord*> uncorrelated;

  const Entry* find(const std::string& trace_id) const {
    auto it = by_trace_id.find(trace_id);
    return it == by_trace_id.end() ? nullptr : &it->second;
  }
};

// Links each trace with the logs carrying its trace_id. Logs without a
// trace_id or with an id that matches no trace land in `uncorrelated`.
// The returned context borrows from the inputs; keep them alive.
CorrelationContext correlate(const std::vector<TraceGraph>& traces, const std::vector<LogRecord>& logs);

}  // namespace telsam
