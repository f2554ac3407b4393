#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flowkit/events.hpp"

namespace flowkit {

struct Diagnostic {
  std::size_t line = 0;  // 1-based; record header line for multi-line records
  std::string code;      // MalformedLine, MalformedTemplate, UnknownHandle, ...
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Adapter output. Every non-blank input line (or record) yields either an
/// event or an entry in `errors`; `warnings` annotate events that were kept.
struct ParseResult {
  Timeline events;
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;
};

std::optional<ParsedStatus> parse_status_text(std::string_view text);
std::optional<CommitFields> parse_commit_message(std::string_view message);

/// Status log: `<timestamp> <workstation> "<status text>"` per line.
ParseResult parse_status_log(std::string_view text, const Directory& directory,
                             std::string_view source = "status");

/// `svn log` text export. Each record is one commit event.
ParseResult parse_vcs_log(std::string_view text, const Directory& directory,
                          std::string_view source = "vcs");

/// Call/chat export: `<call|chat>,<start>,<end>,<handle;handle...>[,<medium>]`.
ParseResult parse_call_log(std::string_view text, const Directory& directory,
                           std::string_view source = "calls");

/// Normalized JSONL, one event per line. `site_span` is derived from the
/// directory when a line omits it.
ParseResult read_jsonl(std::string_view text, const Directory& directory,
                       std::string_view source = "events");
std::string write_jsonl(const Timeline& events);

/// One list ordered by start; ties keep stream order, then input order.
Timeline merge_timeline(const std::vector<Timeline>& streams);

/// Collapses chat messages between the same participants into one event per
/// burst. A gap longer than `gap` starts a new burst; a zero gap disables
/// grouping. Input must be time ordered.
Timeline group_chat_bursts(const Timeline& events, Minutes gap);

}  // namespace flowkit
