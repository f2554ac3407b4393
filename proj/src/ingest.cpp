#include "flowkit/ingest.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include <nlohmann/json.hpp>

#include "strings.hpp"

namespace flowkit {
namespace {

using detail::trim;
using ojson = nlohmann::ordered_json;

std::string event_id(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

std::optional<int> parse_story_token(std::string_view token) {
  token = trim(token);
  if (token.size() < 3 || !detail::iequals(token.substr(0, 2), "us")) return std::nullopt;
  auto digits = token.substr(2);
  if (!detail::all_digits(digits) || digits.size() > 9) return std::nullopt;
  int id = std::stoi(std::string(digits));
  if (id <= 0) return std::nullopt;
  return id;
}

std::optional<std::array<std::string, 2>> parse_name_pair(std::string_view text, char sep) {
  auto parts = detail::split(text, sep);
  if (parts.size() != 2) return std::nullopt;
  std::array<std::string, 2> names{std::string(trim(parts[0])), std::string(trim(parts[1]))};
  if (names[0].empty() || names[1].empty()) return std::nullopt;
  return names;
}

// Resolves names into `event`, reporting the ones that match nobody.
void resolve_names(const std::array<std::string, 2>& names, const Directory& directory, CommEvent& event,
                   std::size_t line, std::vector<Diagnostic>& warnings) {
  for (const auto& n : names) {
    if (auto id = directory.resolve_name(n)) {
      event.participants.insert(*id);
    } else {
      event.unresolved.insert(n);
      warnings.push_back({line, "UnknownName", "'" + n + "' matches no team member"});
    }
  }
}

bool is_separator(std::string_view line) {
  line = trim(line);
  return line.size() >= 20 && std::all_of(line.begin(), line.end(), [](char c) { return c == '-'; });
}

}  // namespace

std::optional<ParsedStatus> parse_status_text(std::string_view text) {
  text = trim(text);
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  auto story = parse_story_token(text.substr(0, colon));
  if (!story) return std::nullopt;
  auto names = parse_name_pair(text.substr(colon + 1), '&');
  if (!names) return std::nullopt;
  return ParsedStatus{*story, *names};
}

std::optional<CommitFields> parse_commit_message(std::string_view message) {
  message = trim(message);
  auto first = message.find('|');
  if (first == std::string_view::npos) return std::nullopt;
  auto second = message.find('|', first + 1);
  if (second == std::string_view::npos) return std::nullopt;
  auto story = parse_story_token(message.substr(0, first));
  auto names = parse_name_pair(message.substr(first + 1, second - first - 1), ',');
  if (!story || !names) return std::nullopt;
  CommitFields fields;
  fields.story_id = *story;
  fields.pair_names = *names;
  auto rest = trim(message.substr(second + 1));
  constexpr std::string_view marker = "[done]";
  if (rest.size() >= marker.size() && detail::iequals(rest.substr(0, marker.size()), marker)) {
    fields.completed_flag = true;
    rest = trim(rest.substr(marker.size()));
  }
  fields.text = std::string(rest);
  return fields;
}

ParseResult parse_status_log(std::string_view text, const Directory& directory, std::string_view source) {
  ParseResult result;
  auto all = detail::lines(text);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto line = trim(all[i]);
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) { result.errors.push_back({line_no, "MalformedLine", why}); };

    auto ts_end = line.find_first_of(" \t");
    if (ts_end == std::string_view::npos) {
      fail("expected `<timestamp> <workstation> \"<status>\"`");
      continue;
    }
    auto ts = parse_timestamp(line.substr(0, ts_end));
    if (!ts) {
      fail("bad timestamp '" + std::string(line.substr(0, ts_end)) + "'");
      continue;
    }
    auto rest = trim(line.substr(ts_end));
    auto ws_end = rest.find_first_of(" \t");
    if (ws_end == std::string_view::npos) {
      fail("missing status text");
      continue;
    }
    auto workstation = rest.substr(0, ws_end);
    auto quoted = trim(rest.substr(ws_end));
    if (quoted.size() < 2 || quoted.front() != '"' || quoted.back() != '"') {
      fail("status text must be double quoted");
      continue;
    }
    auto raw = quoted.substr(1, quoted.size() - 2);

    CommEvent e;
    e.id = event_id(source, line_no);
    e.kind = CommKind::StatusChange;
    e.start = *ts;
    e.workstation = std::string(workstation);
    StatusPayload payload{std::string(raw), parse_status_text(raw)};
    if (payload.parsed) {
      e.story_id = payload.parsed->story_id;
      resolve_names(payload.parsed->pair_names, directory, e, line_no, result.warnings);
    }
    e.payload = std::move(payload);
    e.site_span = directory.span_of(e.participants);
    result.events.push_back(std::move(e));
  }
  return result;
}

ParseResult parse_vcs_log(std::string_view text, const Directory& directory, std::string_view source) {
  ParseResult result;
  auto all = detail::lines(text);
  std::size_t i = 0;
  while (i < all.size()) {
    if (trim(all[i]).empty() || is_separator(all[i])) {
      ++i;
      continue;
    }
    const std::size_t header_line = i + 1;
    auto header = all[i++];
    // Message: everything up to the next separator.
    std::vector<std::string_view> body;
    while (i < all.size() && !is_separator(all[i])) body.push_back(all[i++]);
    while (!body.empty() && trim(body.front()).empty()) body.erase(body.begin());
    while (!body.empty() && trim(body.back()).empty()) body.pop_back();

    auto fields = detail::split(header, '|');
    if (fields.size() < 3) {
      result.errors.push_back({header_line, "MalformedLine", "expected `r<rev> | <author> | <date> | <n> lines`"});
      continue;
    }
    auto rev = trim(fields[0]);
    auto author = trim(fields[1]);
    auto ts = parse_timestamp(trim(fields[2]));
    if (rev.size() < 2 || rev.front() != 'r' || !detail::all_digits(rev.substr(1)) || !ts) {
      result.errors.push_back({header_line, "MalformedLine", "bad revision or date in commit header"});
      continue;
    }

    std::string message;
    for (auto l : body) {
      if (!message.empty()) message += '\n';
      message += l;
    }

    CommEvent e;
    e.id = std::string(source) + ":" + std::string(rev);
    e.kind = CommKind::Commit;
    e.start = *ts;
    CommitPayload payload{std::string(rev), std::string(author), message, std::nullopt};
    auto first_line = body.empty() ? std::string_view{} : body.front();
    payload.fields = parse_commit_message(first_line);
    if (payload.fields) {
      e.story_id = payload.fields->story_id;
      resolve_names(payload.fields->pair_names, directory, e, header_line, result.warnings);
    } else {
      result.warnings.push_back({header_line, "MalformedTemplate", "commit " + std::string(rev) +
                                                                       " does not follow `US<id>|<name>,<name>|[done]<text>`"});
      if (auto id = directory.resolve_handle(author)) e.participants.insert(*id);
      else if (auto by_name = directory.resolve_name(author)) e.participants.insert(*by_name);
    }
    e.payload = std::move(payload);
    e.site_span = directory.span_of(e.participants);
    result.events.push_back(std::move(e));
  }
  return result;
}

ParseResult parse_call_log(std::string_view text, const Directory& directory, std::string_view source) {
  ParseResult result;
  auto all = detail::lines(text);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto line = trim(all[i]);
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) { result.errors.push_back({line_no, "MalformedLine", why}); };

    auto cols = detail::split(line, ',');
    if (cols.size() != 4 && cols.size() != 5) {
      fail("expected `<call|chat>,<start>,<end>,<handles>[,<medium>]`");
      continue;
    }
    auto kind = trim(cols[0]);
    const bool is_call = detail::iequals(kind, "call");
    if (!is_call && !detail::iequals(kind, "chat")) {
      fail("record type must be call or chat");
      continue;
    }
    auto start = parse_timestamp(trim(cols[1]));
    auto end_text = trim(cols[2]);
    std::optional<Timestamp> end;
    if (!end_text.empty()) end = parse_timestamp(end_text);
    if (!start || (!end_text.empty() && !end)) {
      fail("bad timestamp");
      continue;
    }
    if (is_call && !end) {
      fail("call record without end time");
      continue;
    }
    if (!is_call && end) {
      fail("chat record must not have an end time");
      continue;
    }
    if (end && *end < *start) {
      fail("end before start");
      continue;
    }

    CommEvent e;
    e.id = event_id(source, line_no);
    e.kind = is_call ? CommKind::Call : CommKind::Chat;
    e.start = *start;
    e.end = end;
    bool any_handle = false;
    for (auto h : detail::split(cols[3], ';')) {
      h = trim(h);
      if (h.empty()) continue;
      any_handle = true;
      if (auto id = directory.resolve_handle(h)) {
        e.participants.insert(*id);
      } else {
        e.unresolved.insert(std::string(h));
        result.warnings.push_back({line_no, "UnknownHandle", "handle '" + std::string(h) + "' is not in the yellow pages"});
      }
    }
    if (!any_handle) {
      fail("record lists no participants");
      continue;
    }
    if (cols.size() == 5 && !trim(cols[4]).empty()) e.medium_id = std::string(trim(cols[4]));
    e.site_span = directory.span_of(e.participants);
    result.events.push_back(std::move(e));
  }
  return result;
}

namespace {

ojson payload_json(const Payload& payload) {
  ojson j = ojson::object();
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, StatusPayload>) {
          j["raw"] = p.raw;
          if (p.parsed) j["parsed"] = {{"story_id", p.parsed->story_id}, {"pair_names", p.parsed->pair_names}};
        } else if constexpr (std::is_same_v<T, CommitPayload>) {
          j["revision"] = p.revision;
          j["author"] = p.author;
          j["message"] = p.message;
          if (p.fields)
            j["fields"] = {{"pair_names", p.fields->pair_names},
                           {"story_id", p.fields->story_id},
                           {"completed_flag", p.fields->completed_flag},
                           {"text", p.fields->text}};
        } else if constexpr (std::is_same_v<T, MeetingPayload>) {
          j["name"] = p.name;
        } else if constexpr (std::is_same_v<T, NotePayload>) {
          j["text"] = p.text;
        }
      },
      payload);
  return j;
}

Payload payload_from_json(const nlohmann::json& j) {
  if (j.contains("raw")) {
    StatusPayload p{j.at("raw").get<std::string>(), std::nullopt};
    if (j.contains("parsed"))
      p.parsed = ParsedStatus{j["parsed"].at("story_id").get<int>(),
                              j["parsed"].at("pair_names").get<std::array<std::string, 2>>()};
    return p;
  }
  if (j.contains("message")) {
    CommitPayload p{j.value("revision", ""), j.value("author", ""), j.at("message").get<std::string>(), std::nullopt};
    if (j.contains("fields")) {
      const auto& f = j["fields"];
      p.fields = CommitFields{f.at("pair_names").get<std::array<std::string, 2>>(), f.at("story_id").get<int>(),
                              f.at("completed_flag").get<bool>(), f.value("text", "")};
    }
    return p;
  }
  if (j.contains("name")) return MeetingPayload{j.at("name").get<std::string>()};
  if (j.contains("text")) return NotePayload{j.at("text").get<std::string>()};
  return std::monostate{};
}

}  // namespace

std::string write_jsonl(const Timeline& events) {
  std::string out;
  for (const auto& e : events) {
    ojson j;
    j["id"] = e.id;
    j["kind"] = to_string(e.kind);
    j["start"] = format_timestamp(e.start);
    if (e.end) j["end"] = format_timestamp(*e.end);
    j["participants"] = e.participants;
    if (!e.unresolved.empty()) j["unresolved"] = e.unresolved;
    j["site_span"] = to_string(e.site_span);
    if (e.medium_id) j["medium_id"] = *e.medium_id;
    if (e.story_id) j["story_id"] = *e.story_id;
    if (e.workstation) j["workstation"] = *e.workstation;
    if (!std::holds_alternative<std::monostate>(e.payload)) j["payload"] = payload_json(e.payload);
    out += j.dump();
    out += '\n';
  }
  return out;
}

ParseResult read_jsonl(std::string_view text, const Directory& directory, std::string_view source) {
  ParseResult result;
  auto all = detail::lines(text);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::size_t line_no = i + 1;
    auto line = trim(all[i]);
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) { result.errors.push_back({line_no, "MalformedLine", why}); };
    try {
      auto j = nlohmann::json::parse(line);
      if (!j.is_object()) {
        fail("event must be a JSON object");
        continue;
      }
      CommEvent e;
      e.id = j.contains("id") ? j["id"].get<std::string>() : event_id(source, line_no);
      auto kind = parse_comm_kind(j.at("kind").get<std::string>());
      auto start = parse_timestamp(j.at("start").get<std::string>());
      if (!kind || !start) {
        fail("unknown kind or bad start timestamp");
        continue;
      }
      e.kind = *kind;
      e.start = *start;
      if (j.contains("end") && !j["end"].is_null()) {
        e.end = parse_timestamp(j["end"].get<std::string>());
        if (!e.end) {
          fail("bad end timestamp");
          continue;
        }
      }
      const bool needs_end = e.kind == CommKind::Call || e.kind == CommKind::Meeting;
      const bool forbids_end =
          e.kind == CommKind::Chat || e.kind == CommKind::StatusChange || e.kind == CommKind::Commit;
      if ((needs_end && !e.end) || (forbids_end && e.end) || (e.end && *e.end < e.start)) {
        fail(std::string("invalid end time for ") + to_string(e.kind) + " event");
        continue;
      }
      for (const auto& p : j.value("participants", std::vector<std::string>{})) {
        if (directory.empty()) {
          e.participants.insert(p);
        } else if (auto id = directory.resolve_name(p)) {
          e.participants.insert(*id);
        } else {
          e.unresolved.insert(p);
          result.warnings.push_back({line_no, "UnknownHandle", "'" + p + "' matches no team member"});
        }
      }
      for (const auto& u : j.value("unresolved", std::vector<std::string>{})) e.unresolved.insert(u);
      if (j.contains("site_span")) {
        auto span = parse_site_span(j["site_span"].get<std::string>());
        if (!span) {
          fail("bad site_span");
          continue;
        }
        e.site_span = *span;
      } else {
        e.site_span = directory.span_of(e.participants);
      }
      if (j.contains("medium_id")) e.medium_id = j["medium_id"].get<std::string>();
      if (j.contains("story_id")) e.story_id = j["story_id"].get<int>();
      if (j.contains("workstation")) e.workstation = j["workstation"].get<std::string>();
      if (j.contains("payload")) e.payload = payload_from_json(j["payload"]);
      result.events.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      fail(ex.what());
    }
  }
  return result;
}

Timeline merge_timeline(const std::vector<Timeline>& streams) {
  std::vector<Timeline> sorted = streams;
  for (auto& s : sorted)
    std::stable_sort(s.begin(), s.end(), [](const CommEvent& a, const CommEvent& b) { return a.start < b.start; });

  struct Cursor {
    Timestamp start;
    std::size_t stream;
    std::size_t index;
    bool operator>(const Cursor& o) const { return std::tie(start, stream, index) > std::tie(o.start, o.stream, o.index); }
  };
  std::priority_queue<Cursor, std::vector<Cursor>, std::greater<>> heap;
  std::size_t total = 0;
  for (std::size_t s = 0; s < sorted.size(); ++s) {
    total += sorted[s].size();
    if (!sorted[s].empty()) heap.push({sorted[s][0].start, s, 0});
  }
  Timeline out;
  out.reserve(total);
  while (!heap.empty()) {
    auto c = heap.top();
    heap.pop();
    out.push_back(std::move(sorted[c.stream][c.index]));
    if (c.index + 1 < sorted[c.stream].size())
      heap.push({sorted[c.stream][c.index + 1].start, c.stream, c.index + 1});
  }
  return out;
}

Timeline group_chat_bursts(const Timeline& events, Minutes gap) {
  if (gap.count() <= 0) return events;
  using Key = std::pair<std::set<std::string>, std::set<std::string>>;
  std::map<Key, Timestamp> last_message;
  Timeline out;
  for (const auto& e : events) {
    if (e.kind != CommKind::Chat) {
      out.push_back(e);
      continue;
    }
    Key key{e.participants, e.unresolved};
    auto it = last_message.find(key);
    if (it != last_message.end() && e.start - it->second <= gap) {
      it->second = e.start;
      continue;
    }
    last_message[key] = e.start;
    out.push_back(e);
  }
  return out;
}

}  // namespace flowkit
