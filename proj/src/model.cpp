#include "telsam/model.hpp"

#include <unordered_map>
#include <unordered_set>

namespace telsam {

const char* to_string(LogLevel level) {
  switch (level) {
    case LogLevel::Info: return "INFO";
    case LogLevel::Warn: return "WARN";
    case LogLevel::Error: return "ERROR";
  }
  return "INFO";
}

LogLevel log_level_from_string(const std::string& s) {
  if (s == "INFO") return LogLevel::Info;
  if (s == "WARN") return LogLevel::Warn;
  if (s == "ERROR") return LogLevel::Error;
  throw std::invalid_argument("unknown log level: " + s);
}

std::string CallPath::key() const {
  std::string out;
  for (const auto& [service, operation] : elements) {
    if (!out.empty()) out += '|';
    out += service;
    out += ':';
    out += operation;
  }
  return out;
}

std::string LogTemplate::pattern() const {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty() && !(out.back() == '=')) out += ' ';
    out += token;
  }
  return out;
}

int64_t window_index(int64_t ts_ns, int64_t length_ns) {
  int64_t q = ts_ns / length_ns;
  if (ts_ns % length_ns < 0) --q;
  return q;
}

const char* to_string(TraceError error) {
  switch (error) {
    case TraceError::None: return "None";
    case TraceError::EmptyTrace: return "EmptyTrace";
    case TraceError::DuplicateSpanId: return "DuplicateSpanId";
    case TraceError::MultipleRoots: return "MultipleRoots";
    case TraceError::OrphanSpan: return "OrphanSpan";
    case TraceError::CyclicTrace: return "CyclicTrace";
  }
  return "None";
}

TraceValidation validate_trace(const TraceGraph& trace) {
  TraceValidation result;
  if (trace.spans.empty()) {
    result.error = TraceError::EmptyTrace;
    return result;
  }

  std::unordered_map<std::string, const SpanRecord*> by_id;
  by_id.reserve(trace.spans.size());
  for (const auto& span : trace.spans) {
    auto [it, inserted] = by_id.emplace(span.span_id, &span);
    if (!inserted) {
      result.error = TraceError::DuplicateSpanId;
      result.offending_spans.push_back(span.span_id);
      return result;
    }
  }

  std::vector<std::string> roots;
  for (const auto& span : trace.spans) {
    if (!span.parent_span_id.has_value()) {
      roots.push_back(span.span_id);
      continue;
    }
    if (by_id.find(*span.parent_span_id) == by_id.end()) {
      result.error = TraceError::OrphanSpan;
      result.offending_spans.push_back(span.span_id);
    }
  }
  if (result.error == TraceError::OrphanSpan) return result;

  if (roots.size() > 1) {
    result.error = TraceError::MultipleRoots;
    result.offending_spans = roots;
    return result;
  }

  // Walk parent chains with tri-state marks. Every span must reach the root
  // without revisiting a span that is already on the current chain.
  enum class Mark { Unvisited, InProgress, Done };
  std::unordered_map<std::string, Mark> marks;
  marks.reserve(trace.spans.size());
  for (const auto& span : trace.spans) marks[span.span_id] = Mark::Unvisited;

  for (const auto& span : trace.spans) {
    if (marks[span.span_id] != Mark::Unvisited) continue;
    std::vector<const SpanRecord*> chain;
    const SpanRecord* cursor = &span;
    while (true) {
      Mark& mark = marks[cursor->span_id];
      if (mark == Mark::Done) break;
      if (mark == Mark::InProgress) {
        result.error = TraceError::CyclicTrace;
        for (const auto* link : chain) result.offending_spans.push_back(link->span_id);
        return result;
      }
      mark = Mark::InProgress;
      chain.push_back(cursor);
      if (!cursor->parent_span_id.has_value()) break;
      cursor = by_id.at(*cursor->parent_span_id);
    }
    for (const auto* link : chain) marks[link->span_id] = Mark::Done;
  }

  // A non-empty trace where every span has a parent is all cycles; the walk
  // above catches it, so reaching here with zero roots is impossible. Guard
  // anyway for clarity.
  if (roots.empty()) {
    result.error = TraceError::CyclicTrace;
    return result;
  }
  return result;
}

const SpanRecord* find_root(const TraceGraph& trace) {
  for (const auto& span : trace.spans) {
    if (!span.parent_span_id.has_value()) return &span;
  }
  return nullptr;
}

std::vector<ServiceId> services_on_trace(const TraceGraph& trace) {
  std::vector<ServiceId> out;
  std::unordered_set<std::string> seen;
  for (const auto& span : trace.spans) {
    if (seen.insert(span.service).second) out.push_back(span.service);
  }
  return out;
}

}  // namespace telsam
