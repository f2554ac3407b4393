#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "flowkit/timeutil.hpp"

namespace flowkit {

struct TeamSpec;
struct FlowMap;

enum class CommKind { Call, Chat, StatusChange, Commit, Meeting, CustomerContact, ManualObservation };
enum class SiteSpan { Local, CrossSite };

inline constexpr std::array<CommKind, 7> kAllCommKinds{
    CommKind::Call,    CommKind::Chat,            CommKind::StatusChange,     CommKind::Commit,
    CommKind::Meeting, CommKind::CustomerContact, CommKind::ManualObservation};

/// A status message that follows `US<digits>: <name> & <name>`.
struct ParsedStatus {
  int story_id = 0;
  std::array<std::string, 2> pair_names;

  friend bool operator==(const ParsedStatus&, const ParsedStatus&) = default;
};

struct StatusPayload {
  std::string raw;
  std::optional<ParsedStatus> parsed;

  friend bool operator==(const StatusPayload&, const StatusPayload&) = default;
};

/// Fields of a commit message written as `US<digits>|<name>,<name>|[done]<text>`.
struct CommitFields {
  std::array<std::string, 2> pair_names;
  int story_id = 0;
  bool completed_flag = false;
  std::string text;

  friend bool operator==(const CommitFields&, const CommitFields&) = default;
};

struct CommitPayload {
  std::string revision;
  std::string author;
  std::string message;
  std::optional<CommitFields> fields;

  friend bool operator==(const CommitPayload&, const CommitPayload&) = default;
};

struct MeetingPayload {
  std::string name;

  friend bool operator==(const MeetingPayload&, const MeetingPayload&) = default;
};

struct NotePayload {
  std::string text;

  friend bool operator==(const NotePayload&, const NotePayload&) = default;
};

using Payload = std::variant<std::monostate, StatusPayload, CommitPayload, MeetingPayload, NotePayload>;

/// One normalized communication fact. Calls and meetings have an end; chats,
/// status changes and commits do not.
struct CommEvent {
  std::string id;
  CommKind kind = CommKind::ManualObservation;
  Timestamp start{};
  std::optional<Timestamp> end;
  std::set<std::string> participants;  // person ids
  std::set<std::string> unresolved;    // handles or names with no matching person
  SiteSpan site_span = SiteSpan::Local;
  std::optional<std::string> medium_id;
  std::optional<int> story_id;
  std::optional<std::string> workstation;
  Payload payload;

  const StatusPayload* status() const { return std::get_if<StatusPayload>(&payload); }
  const CommitPayload* commit() const { return std::get_if<CommitPayload>(&payload); }
  const MeetingPayload* meeting() const { return std::get_if<MeetingPayload>(&payload); }

  std::optional<Minutes> duration() const;

  friend bool operator==(const CommEvent&, const CommEvent&) = default;
};

using Timeline = std::vector<CommEvent>;

/// Person lookup used by the adapters: display names, ids and contact
/// addresses to person ids, and person ids to sites.
class Directory {
 public:
  Directory() = default;
  explicit Directory(const TeamSpec& team);
  explicit Directory(const FlowMap& map);

  void add_person(const std::string& id, const std::string& name, const std::string& site_id,
                  const std::map<std::string, std::string>& contact);

  // Case-insensitive; matches id, full name or first name.
  std::optional<std::string> resolve_name(std::string_view name) const;
  // Exact match against any contact address.
  std::optional<std::string> resolve_handle(std::string_view handle) const;
  std::optional<std::string> site_of(std::string_view person_id) const;

  SiteSpan span_of(const std::set<std::string>& person_ids) const;

  bool empty() const { return site_by_person_.empty(); }

 private:
  std::map<std::string, std::string> by_name_;
  std::map<std::string, std::string> by_handle_;
  std::map<std::string, std::string, std::less<>> site_by_person_;
};

const char* to_string(CommKind k);
const char* to_string(SiteSpan s);
std::optional<CommKind> parse_comm_kind(std::string_view text);
std::optional<SiteSpan> parse_site_span(std::string_view text);

}  // namespace flowkit
