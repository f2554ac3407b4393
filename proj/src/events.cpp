#include "flowkit/events.hpp"

#include "flowkit/flow_model.hpp"
#include "flowkit/map_builder.hpp"
#include "strings.hpp"

namespace flowkit {

std::optional<Minutes> CommEvent::duration() const {
  if (!end) return std::nullopt;
  return std::chrono::duration_cast<Minutes>(*end - start);
}

Directory::Directory(const TeamSpec& team) {
  for (const auto& p : team.persons) add_person(p.id, p.name, p.site_id, p.yellow_pages.contact);
}

Directory::Directory(const FlowMap& map) {
  for (const auto& p : map.persons) add_person(p.id, p.name, p.site_id, p.yellow_pages.contact);
}

void Directory::add_person(const std::string& id, const std::string& name, const std::string& site_id,
                           const std::map<std::string, std::string>& contact) {
  by_name_[detail::lower(id)] = id;
  by_name_.emplace(detail::lower(name), id);
  auto first = detail::trim(name).substr(0, detail::trim(name).find(' '));
  by_name_.emplace(detail::lower(first), id);
  for (const auto& [channel, address] : contact) by_handle_.emplace(address, id);
  site_by_person_[id] = site_id;
}

std::optional<std::string> Directory::resolve_name(std::string_view name) const {
  auto it = by_name_.find(detail::lower(detail::trim(name)));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Directory::resolve_handle(std::string_view handle) const {
  auto it = by_handle_.find(std::string(detail::trim(handle)));
  if (it == by_handle_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Directory::site_of(std::string_view person_id) const {
  auto it = site_by_person_.find(person_id);
  if (it == site_by_person_.end()) return std::nullopt;
  return it->second;
}

SiteSpan Directory::span_of(const std::set<std::string>& person_ids) const {
  std::optional<std::string> seen;
  for (const auto& id : person_ids) {
    auto site = site_of(id);
    if (!site) continue;
    if (seen && *seen != *site) return SiteSpan::CrossSite;
    seen = site;
  }
  return SiteSpan::Local;
}

const char* to_string(CommKind k) {
  switch (k) {
    case CommKind::Call: return "call";
    case CommKind::Chat: return "chat";
    case CommKind::StatusChange: return "status_change";
    case CommKind::Commit: return "commit";
    case CommKind::Meeting: return "meeting";
    case CommKind::CustomerContact: return "customer_contact";
    case CommKind::ManualObservation: return "manual_observation";
  }
  return "?";
}

const char* to_string(SiteSpan s) { return s == SiteSpan::Local ? "local" : "cross_site"; }

std::optional<CommKind> parse_comm_kind(std::string_view text) {
  static constexpr CommKind all[] = {CommKind::Call,    CommKind::Chat,            CommKind::StatusChange,
                                     CommKind::Commit,  CommKind::Meeting,         CommKind::CustomerContact,
                                     CommKind::ManualObservation};
  return detail::parse_enum(text, all);
}

std::optional<SiteSpan> parse_site_span(std::string_view text) {
  static constexpr SiteSpan all[] = {SiteSpan::Local, SiteSpan::CrossSite};
  return detail::parse_enum(text, all);
}

}  // namespace flowkit
