#include "flowkit/json_io.hpp"

#include "flowkit/error.hpp"

namespace flowkit {
namespace {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

template <typename T>
T required(std::optional<T> value, std::string_view what) {
  if (!value) throw Error(ErrorCode::Parse, "invalid " + std::string(what));
  return *value;
}

ojson work_item_json(const WorkItemRef& w) { return {{"story_id", w.story_id}, {"title", w.title}}; }

WorkItemRef work_item_from(const json& j) { return {j.at("story_id").get<int>(), j.value("title", "")}; }

Timestamp ts_from(const json& j) { return required(parse_timestamp(j.get<std::string>()), "timestamp"); }

// Rethrows JSON library errors under our error type.
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

}  // namespace

ojson to_json(const FlowMap& map) {
  ojson j;
  j["kind"] = to_string(map.kind);
  j["title"] = map.title;
  j["as_of"] = format_timestamp(map.as_of);
  j["sites"] = ojson::array();
  for (const auto& s : map.sites)
    j["sites"].push_back({{"id", s.id}, {"name", s.name}, {"timezone_offset_minutes", s.timezone_offset_minutes}});
  j["persons"] = ojson::array();
  for (const auto& p : map.persons) {
    ojson roles = ojson::array();
    for (auto r : p.roles) roles.push_back(to_string(r));
    const auto& yp = p.yellow_pages;
    ojson pages;
    if (yp.picture_ref) pages["picture_ref"] = *yp.picture_ref;
    pages["contact"] = ojson::object();
    for (const auto& [k, v] : yp.contact) pages["contact"][k] = v;
    if (yp.status) pages["status"] = *yp.status;
    pages["skills"] = yp.skills;
    if (yp.current_work_item) pages["current_work_item"] = work_item_json(*yp.current_work_item);
    j["persons"].push_back(
        {{"id", p.id}, {"name", p.name}, {"site_id", p.site_id}, {"roles", roles}, {"yellow_pages", pages}});
  }
  j["pairs"] = ojson::array();
  for (const auto& p : map.pairs) {
    ojson o{{"id", p.id}, {"member_ids", p.member_ids}};
    if (p.current_work_item) o["current_work_item"] = work_item_json(*p.current_work_item);
    j["pairs"].push_back(o);
  }
  j["documents"] = ojson::array();
  for (const auto& d : map.documents)
    j["documents"].push_back({{"id", d.id},
                              {"name", d.name},
                              {"responsible_site_id", d.responsible_site_id},
                              {"criteria",
                               {{"long_term_accessible", d.criteria.long_term_accessible},
                                {"repeatably_accessible", d.criteria.repeatably_accessible},
                                {"third_party_comprehensible", d.criteria.third_party_comprehensible}}}});
  j["flows"] = ojson::array();
  for (const auto& f : map.flows) {
    ojson o{{"from", f.from},
            {"to", f.to},
            {"state", to_string(f.state)},
            {"direction", to_string(f.direction)},
            {"strength", to_string(f.strength)},
            {"width", to_string(f.width)}};
    if (f.medium_id) o["medium_id"] = *f.medium_id;
    if (f.label) o["label"] = *f.label;
    j["flows"].push_back(o);
  }
  j["media"] = ojson::array();
  for (const auto& m : map.media)
    j["media"].push_back(
        {{"id", m.id}, {"name", m.name}, {"richness_rank", m.richness_rank}, {"channels", m.channels}});
  return j;
}

FlowMap flowmap_from_json(const json& j) {
  return guarded([&] {
    FlowMap map;
    map.kind = required(parse_map_kind(j.at("kind").get<std::string>()), "map kind");
    map.title = j.value("title", "");
    if (j.contains("as_of")) map.as_of = ts_from(j["as_of"]);
    for (const auto& s : j.value("sites", json::array()))
      map.sites.push_back({s.at("id"), s.at("name"), s.value("timezone_offset_minutes", 0)});
    for (const auto& p : j.value("persons", json::array())) {
      Person person{p.at("id"), p.at("name"), p.at("site_id"), {}, {}};
      for (const auto& r : p.value("roles", json::array()))
        person.roles.insert(required(parse_role(r.get<std::string>()), "role"));
      if (p.contains("yellow_pages")) {
        const auto& yp = p["yellow_pages"];
        auto& out = person.yellow_pages;
        if (yp.contains("picture_ref")) out.picture_ref = yp["picture_ref"].get<std::string>();
        out.contact = yp.value("contact", std::map<std::string, std::string>{});
        if (yp.contains("status")) out.status = yp["status"].get<std::string>();
        out.skills = yp.value("skills", std::vector<std::string>{});
        if (yp.contains("current_work_item")) out.current_work_item = work_item_from(yp["current_work_item"]);
      }
      map.persons.push_back(std::move(person));
    }
    for (const auto& p : j.value("pairs", json::array())) {
      PairStore pair{p.at("id"), p.at("member_ids").get<std::vector<std::string>>(), {}};
      if (p.contains("current_work_item")) pair.current_work_item = work_item_from(p["current_work_item"]);
      map.pairs.push_back(std::move(pair));
    }
    for (const auto& d : j.value("documents", json::array())) {
      const auto& c = d.at("criteria");
      map.documents.push_back({d.at("id"),
                               d.at("name"),
                               d.at("responsible_site_id"),
                               {c.at("long_term_accessible"), c.at("repeatably_accessible"),
                                c.at("third_party_comprehensible")}});
    }
    for (const auto& f : j.value("flows", json::array())) {
      Flow flow;
      flow.from = f.at("from");
      flow.to = f.at("to");
      const auto state = f.at("state").get<std::string>();
      if (state != "solid" && state != "fluid") throw Error(ErrorCode::Parse, "invalid flow state");
      flow.state = state == "solid" ? InformationState::Solid : InformationState::Fluid;
      const auto dir = f.at("direction").get<std::string>();
      if (dir != "one-way" && dir != "both-ways") throw Error(ErrorCode::Parse, "invalid flow direction");
      flow.direction = dir == "one-way" ? Direction::OneWay : Direction::BothWays;
      flow.strength = required(parse_strength(f.at("strength").get<std::string>()), "strength");
      flow.width = required(parse_width(f.at("width").get<std::string>()), "width");
      if (f.contains("medium_id")) flow.medium_id = f["medium_id"].get<std::string>();
      if (f.contains("label")) flow.label = f["label"].get<std::string>();
      map.flows.push_back(std::move(flow));
    }
    for (const auto& m : j.value("media", json::array()))
      map.media.push_back({m.at("id"), m.at("name"), m.at("richness_rank"),
                           m.value("channels", std::set<std::string>{})});
    return map;
  });
}

ojson to_json(const ViolationRecord& v) {
  ojson j{{"rule_id", v.rule_id},
          {"category", to_string(v.category)},
          {"occurred_at", format_timestamp(v.occurred_at)},
          {"day", format_date(v.day)},
          {"subject", v.subject},
          {"evidence", v.evidence}};
  if (v.expected_slot) j["expected_slot"] = format_timestamp(*v.expected_slot);
  return j;
}

ViolationRecord violation_from_json(const json& j) {
  return guarded([&] {
    ViolationRecord v;
    v.rule_id = j.at("rule_id");
    v.category = required(parse_violation_category(j.at("category").get<std::string>()), "category");
    v.occurred_at = ts_from(j.at("occurred_at"));
    v.day = required(parse_date(j.at("day").get<std::string>()), "day");
    v.subject = j.at("subject");
    v.evidence = j.value("evidence", std::vector<std::string>{});
    if (j.contains("expected_slot")) v.expected_slot = ts_from(j["expected_slot"]);
    return v;
  });
}

namespace {
ojson counts_json(const Counts& c) {
  return {{"ok", c.ok}, {"temporal", c.temporal}, {"qualitative", c.qualitative}};
}
Counts counts_from(const json& j) { return {j.at("ok"), j.at("temporal"), j.at("qualitative")}; }
}  // namespace

ojson to_json(const ComplianceResult& r) {
  ojson days = ojson::array();
  for (const auto& d : r.per_day) {
    auto o = counts_json(d.counts);
    ojson row{{"day", format_date(d.day)}};
    row.update(o);
    days.push_back(row);
  }
  return {{"activity_id", r.activity_id},
          {"per_day", days},
          {"totals", counts_json(r.totals)},
          {"compliance_pct", r.pct.ok},
          {"temporal_pct", r.pct.temporal},
          {"qualitative_pct", r.pct.qualitative},
          {"vacuous", r.vacuous}};
}

ComplianceResult compliance_from_json(const json& j) {
  return guarded([&] {
    ComplianceResult r;
    r.activity_id = j.at("activity_id");
    for (const auto& d : j.at("per_day"))
      r.per_day.push_back({required(parse_date(d.at("day").get<std::string>()), "day"), counts_from(d)});
    r.totals = counts_from(j.at("totals"));
    r.pct = {j.at("compliance_pct"), j.at("temporal_pct"), j.at("qualitative_pct")};
    r.vacuous = j.value("vacuous", false);
    return r;
  });
}

ojson to_json(const AnalysisResult& r) {
  ojson violations = ojson::array();
  for (const auto& v : r.violations) violations.push_back(to_json(v));
  return {{"compliance", to_json(r.compliance)}, {"violations", violations}};
}

AnalysisResult analysis_from_json(const json& j) {
  return guarded([&] {
    AnalysisResult r;
    r.compliance = compliance_from_json(j.at("compliance"));
    for (const auto& v : j.value("violations", json::array())) r.violations.push_back(violation_from_json(v));
    return r;
  });
}

ojson to_json(const ChartModel& chart) {
  ojson series = ojson::array();
  for (const auto& s : chart.series) {
    ojson points = ojson::array();
    for (const auto& p : s.points) {
      ojson o{{"label", p.label}, {"value", p.value}};
      if (p.begin) o["begin"] = *p.begin;
      if (p.end) o["end"] = *p.end;
      if (!p.style.empty()) o["style"] = p.style;
      points.push_back(o);
    }
    series.push_back({{"label", s.label}, {"points", points}});
  }
  return {{"kind", to_string(chart.kind)},
          {"title", chart.title},
          {"x_label", chart.x_label},
          {"y_label", chart.y_label},
          {"series", series},
          {"legend", chart.legend}};
}

ChartModel chart_from_json(const json& j) {
  return guarded([&] {
    ChartModel c;
    c.kind = required(parse_chart_kind(j.at("kind").get<std::string>()), "chart kind");
    c.title = j.value("title", "");
    c.x_label = j.value("x_label", "");
    c.y_label = j.value("y_label", "");
    for (const auto& s : j.value("series", json::array())) {
      ChartSeries series{s.at("label"), {}};
      for (const auto& p : s.value("points", json::array())) {
        ChartPoint point{p.at("label"), p.value("value", 0.0), {}, {}, p.value("style", "")};
        if (p.contains("begin")) point.begin = p["begin"].get<double>();
        if (p.contains("end")) point.end = p["end"].get<double>();
        series.points.push_back(std::move(point));
      }
      c.series.push_back(std::move(series));
    }
    c.legend = j.value("legend", std::vector<std::string>{});
    return c;
  });
}

}  // namespace flowkit
