#include "flowkit/config_io.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "flowkit/error.hpp"

namespace flowkit {
namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& message) {
  const auto mark = node.Mark();
  if (mark.is_null()) throw Error(ErrorCode::Parse, message);
  throw Error(ErrorCode::Parse, "line " + std::to_string(mark.line + 1) + ": " + message);
}

YAML::Node need(const YAML::Node& node, const char* key) {
  if (!node.IsMap()) fail(node, "expected a mapping");
  auto child = node[key];
  if (!child) fail(node, std::string("missing key '") + key + "'");
  return child;
}

std::string str(const YAML::Node& node) {
  if (!node.IsScalar()) fail(node, "expected a scalar");
  return node.Scalar();
}

template <typename T>
T as(const YAML::Node& node) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(node, "value '" + (node.IsScalar() ? node.Scalar() : std::string("?")) + "' has the wrong type");
  }
}

std::string opt_str(const YAML::Node& node, const char* key, std::string fallback = {}) {
  auto child = node[key];
  return child ? str(child) : fallback;
}

template <typename T>
T opt(const YAML::Node& node, const char* key, T fallback) {
  auto child = node[key];
  return child ? as<T>(child) : fallback;
}

std::vector<std::string> strings(const YAML::Node& node) {
  std::vector<std::string> out;
  if (!node) return out;
  if (!node.IsSequence()) fail(node, "expected a list");
  for (const auto& n : node) out.push_back(str(n));
  return out;
}

std::set<std::string> string_set(const YAML::Node& node) {
  auto v = strings(node);
  return {v.begin(), v.end()};
}

template <typename E, typename Parse>
E enum_value(const YAML::Node& node, Parse parse, const char* what) {
  auto value = parse(str(node));
  if (!value) fail(node, std::string("unknown ") + what + " '" + node.Scalar() + "'");
  return *value;
}

Date date_value(const YAML::Node& node) {
  auto d = parse_date(str(node));
  if (!d) fail(node, "invalid date '" + node.Scalar() + "'");
  return *d;
}

std::vector<Date> dates(const YAML::Node& node) {
  std::vector<Date> out;
  if (!node) return out;
  if (!node.IsSequence()) fail(node, "expected a list of dates");
  for (const auto& n : node) out.push_back(date_value(n));
  return out;
}

ClockTime clock_value(const YAML::Node& node) {
  auto t = parse_clock_time(str(node));
  if (!t) fail(node, "invalid time of day '" + node.Scalar() + "'");
  return *t;
}

YAML::Node load(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

template <typename T>
std::vector<T> each(const YAML::Node& node, T (*item)(const YAML::Node&)) {
  std::vector<T> out;
  if (!node) return out;
  if (!node.IsSequence()) fail(node, "expected a list");
  for (const auto& n : node) out.push_back(item(n));
  return out;
}

WorkItemRef work_item(const YAML::Node& n) {
  if (n.IsScalar()) return {as<int>(n), ""};
  return {as<int>(need(n, "id")), opt_str(n, "title")};
}

Site site(const YAML::Node& n) {
  return {str(need(n, "id")), opt_str(n, "name", str(need(n, "id"))), opt(n, "timezone_offset_minutes", 0)};
}

Person person(const YAML::Node& n) {
  Person p;
  p.id = str(need(n, "id"));
  p.name = opt_str(n, "name", p.id);
  p.site_id = str(need(n, "site"));
  for (const auto& r : n["roles"]) p.roles.insert(enum_value<Role>(r, parse_role, "role"));
  auto& yp = p.yellow_pages;
  if (n["picture"]) yp.picture_ref = str(n["picture"]);
  if (auto c = n["contact"]) {
    if (!c.IsMap()) fail(c, "contact must be a mapping of channel to address");
    for (const auto& kv : c) yp.contact[str(kv.first)] = str(kv.second);
  }
  if (n["status"]) yp.status = str(n["status"]);
  yp.skills = strings(n["skills"]);
  if (n["work_item"]) yp.current_work_item = work_item(n["work_item"]);
  return p;
}

PairStore pair(const YAML::Node& n) {
  PairStore p{str(need(n, "id")), strings(need(n, "members")), {}};
  if (n["work_item"]) p.current_work_item = work_item(n["work_item"]);
  return p;
}

DocumentSpec document(const YAML::Node& n) {
  DocumentSpec d;
  d.document.id = str(need(n, "id"));
  d.document.name = opt_str(n, "name", d.document.id);
  d.document.responsible_site_id = str(need(n, "responsible_site"));
  auto c = need(n, "criteria");
  d.document.criteria = {as<bool>(need(c, "long_term_accessible")), as<bool>(need(c, "repeatably_accessible")),
                         as<bool>(need(c, "third_party_comprehensible"))};
  if (n["access_medium"]) d.access_medium_id = str(n["access_medium"]);
  d.writers = strings(n["writers"]);
  d.readers = strings(n["readers"]);
  return d;
}

Medium medium(const YAML::Node& n) {
  Medium m;
  m.id = str(need(n, "id"));
  m.name = opt_str(n, "name", m.id);
  m.richness_rank = as<int>(need(n, "rank"));
  m.requires_colocation = opt(n, "requires_colocation", false);
  m.available_at = string_set(n["available_at"]);
  m.extra_channels = string_set(n["channels"]);
  if (n["setup_cost"]) m.setup_cost = enum_value<SetupCost>(n["setup_cost"], parse_setup_cost, "setup cost");
  if (n["monetary_cost"])
    m.monetary_cost = enum_value<MonetaryCost>(n["monetary_cost"], parse_monetary_cost, "monetary cost");
  return m;
}

Session session(const YAML::Node& n) {
  Session s;
  s.name = opt_str(n, "name");
  s.cadence = enum_value<Cadence>(need(n, "cadence"), parse_cadence, "cadence");
  s.time_of_day = clock_value(need(n, "time"));
  s.days = dates(n["days"]);
  return s;
}

Trigger trigger(const YAML::Node& n) {
  if (!n.IsMap() || n.size() != 1) fail(n, "trigger must be {scheduled: ...} or {event: ...}");
  if (auto s = n["scheduled"]) return ScheduledTrigger{each(need(s, "sessions"), session), dates(s["days"])};
  if (auto e = n["event"]) return EventTrigger{enum_value<EventKind>(e, parse_event_kind, "event kind")};
  fail(n, "trigger must be {scheduled: ...} or {event: ...}");
}

ParticipantScope scope(const YAML::Node& n) {
  if (n.IsScalar()) return {enum_value<ScopeKind>(n, parse_scope_kind, "participant scope"), {}};
  return {ScopeKind::Custom, strings(need(n, "custom"))};
}

ActivityArtifact artifact(const YAML::Node& n) {
  return {str(need(n, "id")), opt_str(n, "name", str(need(n, "id"))), str(need(n, "responsible_site")),
          strings(n["writers"]), strings(n["readers"])};
}

CommunicationActivity activity(const YAML::Node& n) {
  CommunicationActivity a;
  a.id = str(need(n, "id"));
  a.name = opt_str(n, "name", a.id);
  a.goal = opt_str(n, "goal");
  a.trigger = trigger(need(n, "trigger"));
  a.participants = scope(need(n, "participants"));
  a.required_channels = string_set(n["required_channels"]);
  if (n["moderator"]) a.moderator = str(n["moderator"]);
  a.artifacts = each(n["artifacts"], artifact);
  return a;
}

MediumAssignment assignment(const YAML::Node& n) {
  return {str(need(n, "activity")), str(need(n, "medium")), string_set(n["added_channels"])};
}

std::vector<CommKind> kinds(const YAML::Node& node) {
  std::vector<CommKind> out;
  if (!node) return out;
  for (const auto& n : node) out.push_back(enum_value<CommKind>(n, parse_comm_kind, "event kind"));
  return out;
}

ViolationRule rule(const YAML::Node& n) {
  return {str(need(n, "id")), enum_value<ViolationCategory>(need(n, "category"), parse_violation_category, "category"),
          opt_str(n, "description"), kinds(n["uses"])};
}

ConformanceTemplate conformance_template(const YAML::Node& n) {
  ConformanceTemplate t;
  t.activity_id = str(need(n, "activity"));
  t.analyzer = enum_value<AnalyzerKind>(need(n, "analyzer"), parse_analyzer_kind, "analyzer");
  t.goal = opt_str(n, "goal");
  t.definition = opt_str(n, "definition");
  t.collected_data = kinds(n["collected_data"]);
  t.rules = each(n["rules"], rule);
  return t;
}

void apply_config(const YAML::Node& n, AnalysisConfig& c) {
  if (!n) return;
  if (!n.IsMap()) fail(n, "analysis must be a mapping");
  if (n["workday_start"]) c.workday_start = clock_value(n["workday_start"]);
  if (n["workday_end"]) c.workday_end = clock_value(n["workday_end"]);
  c.slot_minutes = opt(n, "slot_minutes", c.slot_minutes);
  c.staleness_limit_minutes = opt(n, "staleness_limit_minutes", c.staleness_limit_minutes);
  if (n["acceptance_lookback"])
    c.acceptance_lookback = enum_value<Lookback>(n["acceptance_lookback"], parse_lookback, "lookback");
  c.schedule_tolerance_days = opt(n, "schedule_tolerance_days", c.schedule_tolerance_days);
  c.timezone_offset_minutes = opt(n, "timezone_offset_minutes", c.timezone_offset_minutes);
  if (n["days"]) c.days = dates(n["days"]);
  c.chat_burst_gap_minutes = opt(n, "chat_burst_gap_minutes", c.chat_burst_gap_minutes);
}

}  // namespace

TeamSpec parse_team(std::string_view yaml) {
  auto root = load(yaml);
  if (!root.IsMap()) throw Error(ErrorCode::Parse, "team file must be a mapping");
  TeamSpec team;
  team.name = opt_str(root, "name");
  team.common_language = opt_str(root, "common_language");
  team.sites = each(need(root, "sites"), site);
  team.persons = each(root["persons"], person);
  team.pairs = each(root["pairs"], pair);
  team.documents = each(root["documents"], document);
  team.backlog = each(root["backlog"], work_item);
  return team;
}

StrategyDocument parse_strategy(std::string_view yaml) {
  auto root = load(yaml);
  if (!root.IsMap()) throw Error(ErrorCode::Parse, "strategy file must be a mapping");
  StrategyDocument doc;
  auto& s = doc.strategy;
  s.project_days = dates(root["project_days"]);
  s.catalog = root["catalog"] ? each(root["catalog"], medium) : default_catalog();
  s.activities = each(root["activities"], activity);
  s.assignments = each(root["assignments"], assignment);
  doc.templates = root["templates"] ? each(root["templates"], conformance_template) : default_templates();
  apply_config(root["analysis"], doc.config);
  if (doc.config.days.empty()) doc.config.days = s.project_days;
  return doc;
}

AnalysisConfig parse_config_overrides(std::string_view yaml, AnalysisConfig base) {
  auto root = load(yaml);
  if (root.IsNull()) return base;
  if (!root.IsMap()) throw Error(ErrorCode::Parse, "config file must be a mapping");
  apply_config(root["analysis"] ? root["analysis"] : root, base);
  return base;
}

TeamSpec load_team(const std::filesystem::path& path) {
  try {
    return parse_team(read_file(path));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Parse) throw;
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

StrategyDocument load_strategy(const std::filesystem::path& path) {
  try {
    return parse_strategy(read_file(path));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Parse) throw;
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace flowkit
