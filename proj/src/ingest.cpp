#include "telsam/ingest.hpp"

#include <algorithm>
#include <cctype>

namespace telsam {

namespace {
constexpr const char* kWildcard = "<*>";
}

bool is_numeric_token(const std::string& token) {
  if (token.empty()) return false;
  size_t start = 0;
  if (token[0] == '+' || token[0] == '-') start = 1;
  if (start >= token.size()) return false;
  // Hex constants.
  if (token.size() - start > 2 && token[start] == '0' &&
      (token[start + 1] == 'x' || token[start + 1] == 'X')) {
    for (size_t i = start + 2; i < token.size(); ++i) {
      if (!std::isxdigit(static_cast<unsigned char>(token[i]))) return false;
    }
    return true;
  }
  // Plain integers and decimals. Dotted quads (10.0.0.1) stay literal.
  int dots = 0;
  for (size_t i = start; i < token.size(); ++i) {
    char c = token[i];
    if (c == '.') {
      if (++dots > 1) return false;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::string> tokenize_message(const std::string& message) {
  std::vector<std::string> tokens;
  size_t i = 0;
  const size_t n = message.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(message[i]))) ++i;
    if (i >= n) break;
    size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(message[j]))) ++j;
    std::string word = message.substr(i, j - i);
    i = j;

    // "key=value" splits into "key=" and "value" so values generalize
    // independently of their keys.
    size_t eq = word.find('=');
    if (eq != std::string::npos && eq + 1 < word.size() && eq > 0) {
      tokens.push_back(word.substr(0, eq + 1));
      word = word.substr(eq + 1);
    }
    tokens.push_back(is_numeric_token(word) ? kWildcard : std::move(word));
  }
  return tokens;
}

std::string TemplateStore::bucket_key(const ServiceId& service, const std::vector<std::string>& tokens) const {
  std::string key = service;
  key += '\x1f';
  key += std::to_string(tokens.size());
  for (size_t i = 0; i < 2 && i < tokens.size(); ++i) {
    key += '\x1f';
    key += tokens[i];
  }
  return key;
}

int64_t TemplateStore::mine(const ServiceId& service, const std::string& message) {
  std::vector<std::string> tokens = tokenize_message(message);
  if (tokens.empty()) tokens.push_back(kWildcard);

  Bucket& bucket = buckets_[bucket_key(service, tokens)];

  size_t best_index = 0;
  double best_similarity = -1.0;
  for (size_t idx : bucket.template_indices) {
    const auto& candidate = templates_[idx].tokens;
    size_t matches = 0;
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (candidate[i] == tokens[i] || candidate[i] == kWildcard) ++matches;
    }
    double similarity = static_cast<double>(matches) / static_cast<double>(tokens.size());
    if (similarity > best_similarity) {
      best_similarity = similarity;
      best_index = idx;
    }
  }

  if (best_similarity >= similarity_threshold_) {
    auto& slot = templates_[best_index].tokens;
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (slot[i] != tokens[i]) slot[i] = kWildcard;
    }
    return templates_[best_index].template_id;
  }

  LogTemplate created;
  created.template_id = next_id();
  created.service = service;
  created.tokens = std::move(tokens);
  bucket.template_indices.push_back(templates_.size());
  templates_.push_back(std::move(created));
  return templates_.back().template_id;
}

TemplateStore TemplateStore::from_templates(std::vector<LogTemplate> templates, double similarity_threshold) {
  TemplateStore store(similarity_threshold);
  store.templates_ = std::move(templates);
  for (size_t idx = 0; idx < store.templates_.size(); ++idx) {
    const auto& t = store.templates_[idx];
    store.buckets_[store.bucket_key(t.service, t.tokens)].template_indices.push_back(idx);
  }
  return store;
}

int64_t mine_template(LogRecord& log, TemplateStore& store) {
  int64_t id = store.mine(log.service, log.message);
  log.template_id = id;
  return id;
}

std::vector<CallPath> extract_call_paths(const TraceGraph& trace) {
  TraceValidation validation = validate_trace(trace);
  if (!validation.ok()) {
    throw InvalidTrace(std::string("trace ") + trace.trace_id + ": " + to_string(validation.error));
  }

  std::unordered_map<std::string, const SpanRecord*> by_id;
  std::unordered_map<std::string, bool> has_children;
  by_id.reserve(trace.spans.size());
  for (const auto& span : trace.spans) by_id.emplace(span.span_id, &span);
  for (const auto& span : trace.spans) {
    if (span.parent_span_id) has_children[*span.parent_span_id] = true;
  }

  std::set<CallPath> unique_paths;
  for (const auto& span : trace.spans) {
    if (has_children.count(span.span_id)) continue;  // not a leaf
    CallPath path;
    const SpanRecord* cursor = &span;
    while (true) {
      path.elements.emplace_back(cursor->service, cursor->operation);
      if (!cursor->parent_span_id) break;
      cursor = by_id.at(*cursor->parent_span_id);
    }
    std::reverse(path.elements.begin(), path.elements.end());
    unique_paths.insert(std::move(path));
  }
  return {unique_paths.begin(), unique_paths.end()};
}

AggregatedMetrics aggregate_metrics(const std::vector<MetricVector>& readings, int64_t window_ns,
                                    size_t dimensions) {
  AggregatedMetrics out;
  if (readings.empty()) return out;

  int64_t min_window = window_index(readings.front().window_start_ns, window_ns);
  int64_t max_window = min_window;
  std::map<ServiceId, std::map<int64_t, std::pair<std::vector<double>, size_t>>> sums;
  for (const auto& reading : readings) {
    if (reading.values.size() != dimensions) {
      throw SchemaMismatch("reading for " + reading.service + " has " +
                           std::to_string(reading.values.size()) + " values, schema has " +
                           std::to_string(dimensions));
    }
    int64_t w = window_index(reading.window_start_ns, window_ns);
    min_window = std::min(min_window, w);
    max_window = std::max(max_window, w);
    auto& slot = sums[reading.service][w];
    if (slot.first.empty()) slot.first.assign(dimensions, 0.0);
    for (size_t d = 0; d < dimensions; ++d) slot.first[d] += reading.values[d];
    slot.second += 1;
  }

  for (auto& [service, windows] : sums) {
    std::vector<double> carry(dimensions, 0.0);
    auto& series = out.per_service[service];
    series.reserve(static_cast<size_t>(max_window - min_window + 1));
    for (int64_t w = min_window; w <= max_window; ++w) {
      MetricVector vec;
      vec.service = service;
      vec.window_start_ns = w * window_ns;
      auto it = windows.find(w);
      if (it != windows.end()) {
        vec.values = it->second.first;
        for (auto& v : vec.values) v /= static_cast<double>(it->second.second);
        carry = vec.values;
        out.reading_counts[{service, vec.window_start_ns}] = it->second.second;
      } else {
        vec.values = carry;  // previous window's value, zeros before the first
      }
      series.push_back(std::move(vec));
    }
  }
  return out;
}

CorrelationContext correlate(const std::vector<TraceGraph>& traces, const std::vector<LogRecord>& logs) {
  CorrelationContext ctx;
  ctx.by_trace_id.reserve(traces.size());
  for (const auto& trace : traces) {
    ctx.by_trace_id[trace.trace_id].trace = &trace;
  }
  for (const auto& log : logs) {
    if (!log.trace_id) {
      ctx.uncorrelated.push_back(&log);
      continue;
    }
    auto it = ctx.by_trace_id.find(*log.trace_id);
    if (it == ctx.by_trace_id.end()) {
      ctx.uncorrelated.push_back(&log);
    } else {
      it->second.logs.push_back(&log);
    }
  }
  return ctx;
}

}  // namespace telsam
