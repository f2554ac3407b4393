#include "flowkit/render.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "flowkit/error.hpp"

namespace flowkit {
namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

int pen_width(WidthClass w) {
  switch (w) {
    case WidthClass::Thin: return 1;
    case WidthClass::Medium: return 2;
    case WidthClass::Thick: return 3;
  }
  return 1;
}

std::string utc_offset(int minutes) {
  const char sign = minutes < 0 ? '-' : '+';
  const int m = std::abs(minutes);
  return fmt::format("UTC{}{:02}:{:02}", sign, m / 60, m % 60);
}

std::string num(double v) {
  auto s = fmt::format("{:.2f}", v);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

template <typename T>
std::vector<const T*> sorted_by_id(const std::vector<T>& items) {
  std::vector<const T*> out;
  for (const auto& i : items) out.push_back(&i);
  std::sort(out.begin(), out.end(), [](const T* a, const T* b) { return a->id < b->id; });
  return out;
}

}  // namespace

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string to_graph_description(const FlowMap& map) {
  if (auto issues = validate_map(map); !issues.empty())
    throw Error(ErrorCode::InvalidMap, "cannot render invalid map: " + describe(issues.front()));

  std::string out;
  out += "digraph " + dot_quote(map.title.empty() ? "flowmap" : map.title) + " {\n";
  out += fmt::format("  graph [label={}, fontname=\"Helvetica\", compound=true];\n",
                     dot_quote(std::string(map.title) + " (" + to_string(map.kind) + ")"));
  out += "  node [fontname=\"Helvetica\"];\n";
  out += "  edge [fontname=\"Helvetica\"];\n";

  for (const auto* site : sorted_by_id(map.sites)) {
    out += "  subgraph " + dot_quote("cluster_" + site->id) + " {\n";
    out += "    label=" + dot_quote(site->name + " (" + utc_offset(site->timezone_offset_minutes) + ")") + ";\n";
    for (const auto* p : sorted_by_id(map.persons)) {
      if (p->site_id != site->id) continue;
      out += "    " + dot_quote(p->id) + " [shape=ellipse, label=" + dot_quote(p->name) + "];\n";
    }
    for (const auto* pair : sorted_by_id(map.pairs)) {
      if (map.site_of_store(pair->id) != site->id) continue;
      std::string label;
      for (const auto& m : pair->member_ids) {
        if (!label.empty()) label += " & ";
        label += map.find_person(m)->name;
      }
      if (pair->current_work_item) label += "\nUS" + std::to_string(pair->current_work_item->story_id);
      out += "    " + dot_quote(pair->id) + " [shape=ellipse, peripheries=2, label=" + dot_quote(label) + "];\n";
    }
    for (const auto* d : sorted_by_id(map.documents)) {
      if (d->responsible_site_id != site->id) continue;
      out += "    " + dot_quote(d->id) + " [shape=box, label=" + dot_quote(d->name) + "];\n";
    }
    out += "  }\n";
  }

  std::vector<const Flow*> flows;
  for (const auto& f : map.flows) flows.push_back(&f);
  std::stable_sort(flows.begin(), flows.end(), [](const Flow* a, const Flow* b) {
    return std::tie(a->from, a->to, a->state, a->label) < std::tie(b->from, b->to, b->state, b->label);
  });
  for (const auto* f : flows) {
    std::vector<std::string> attrs;
    attrs.push_back(f->state == InformationState::Fluid ? "style=dashed" : "style=solid");
    attrs.push_back("penwidth=" + std::to_string(pen_width(f->width)));
    if (f->direction == Direction::BothWays) attrs.push_back("dir=none");
    const bool cross = map.site_of_store(f->from) != map.site_of_store(f->to);
    if (cross && f->medium_id) {
      attrs.push_back("label=" + dot_quote(map.find_medium(*f->medium_id)->name));
    } else if (f->label) {
      attrs.push_back("label=" + dot_quote(*f->label));
    }
    if (f->label) attrs.push_back("tooltip=" + dot_quote(*f->label));
    std::string joined;
    for (const auto& a : attrs) joined += (joined.empty() ? "" : ", ") + a;
    out += "  " + dot_quote(f->from) + " -> " + dot_quote(f->to) + " [" + joined + "];\n";
  }
  out += "}\n";
  return out;
}

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 400;
constexpr int kLeft = 70;
constexpr int kRight = 20;
constexpr int kTop = 40;
constexpr int kBottom = 60;

const char* series_colour(std::string_view label) {
  if (label == "ok") return "#4caf50";
  if (label == "temporal") return "#ffb300";
  if (label == "qualitative") return "#e53935";
  return "#5c6bc0";
}

void svg_frame(std::string& out, const ChartModel& chart) {
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "class=\"chart {2}\">\n",
      kWidth, kHeight, to_string(chart.kind));
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", kWidth, kHeight);
  out += fmt::format("<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n", kWidth / 2,
                     html_escape(chart.title));
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#333\"/>\n", kLeft, kTop,
                     kHeight - kBottom);
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#333\"/>\n", kLeft,
                     kHeight - kBottom, kWidth - kRight);
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{}</text>\n",
                     (kLeft + kWidth - kRight) / 2, kHeight - 10, html_escape(chart.x_label));
  out += fmt::format("<text x=\"14\" y=\"{0}\" transform=\"rotate(-90 14 {0})\" text-anchor=\"middle\" "
                     "font-size=\"12\">{1}</text>\n",
                     (kTop + kHeight - kBottom) / 2, html_escape(chart.y_label));
}

void svg_bars(std::string& out, const ChartModel& chart, bool stacked) {
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  std::size_t groups = 0;
  for (const auto& s : chart.series) groups = std::max(groups, s.points.size());
  if (groups == 0) return;
  double max = stacked ? 100.0 : 0.0;
  if (!stacked)
    for (const auto& s : chart.series)
      for (const auto& p : s.points) max = std::max(max, p.value);
  if (max <= 0) max = 1;
  const double slot = plot_w / static_cast<double>(groups);
  const double bar_w = slot * 0.6;
  for (std::size_t g = 0; g < groups; ++g) {
    const double x = kLeft + slot * static_cast<double>(g) + (slot - bar_w) / 2;
    double base = kHeight - kBottom;
    std::string label;
    for (const auto& s : chart.series) {
      if (g >= s.points.size()) continue;
      const auto& p = s.points[g];
      label = p.label;
      const double h = plot_h * p.value / max;
      out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" class=\"{}\"><title>{}: {}</title></rect>\n",
                         num(x), num(base - h), num(bar_w), num(h), series_colour(s.label), html_escape(s.label),
                         html_escape(p.label), num(p.value));
      if (!stacked)
        out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"11\">{}</text>\n",
                           num(x + bar_w / 2), num(base - h - 4), num(p.value));
      if (stacked) base -= h;
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"11\">{}</text>\n",
                       num(x + bar_w / 2), kHeight - kBottom + 16, html_escape(label));
  }
}

void svg_gantt(std::string& out, const ChartModel& chart) {
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  if (chart.series.empty()) return;
  const double row_h = plot_h / static_cast<double>(chart.series.size());
  for (std::size_t r = 0; r < chart.series.size(); ++r) {
    const auto& row = chart.series[r];
    const double y = kTop + row_h * static_cast<double>(r);
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">{}</text>\n", kLeft - 4,
                       num(y + row_h / 2 + 4), html_escape(row.label));
    for (const auto& p : row.points) {
      const bool cross = p.style.find("cross-site") != std::string::npos;
      const char* colour = cross ? "#1e63c4" : "#2e8b57";
      const double x0 = kLeft + plot_w * p.begin.value_or(0) / 1440.0;
      const double x1 = kLeft + plot_w * p.end.value_or(0) / 1440.0;
      if (p.style.rfind("mark", 0) == 0) {
        const bool status = p.style.find("status_change") != std::string::npos;
        out += fmt::format(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"{3}\"{4} class=\"{5}\"><title>{6}</title></line>\n",
            num(x0), num(y + 2), num(y + row_h - 2), colour, status ? " stroke-dasharray=\"3,2\"" : "",
            html_escape(p.style), html_escape(p.label));
      } else {
        out += fmt::format(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" fill-opacity=\"0.6\" class=\"{}\"><title>{}</title></rect>\n",
            num(x0), num(y + row_h * 0.25), num(std::max(1.0, x1 - x0)), num(row_h * 0.5), colour,
            html_escape(p.style), html_escape(p.label));
      }
    }
  }
  for (int h = 0; h <= 24; h += 3)
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"10\">{:02}:00</text>\n",
                       num(kLeft + plot_w * h / 24.0), kHeight - kBottom + 14, h);
}

}  // namespace

std::string render_chart_svg(const ChartModel& chart) {
  std::string out;
  svg_frame(out, chart);
  switch (chart.kind) {
    case ChartKind::BarFrequency:
    case ChartKind::BarDuration: svg_bars(out, chart, false); break;
    case ChartKind::StackedCompliance: svg_bars(out, chart, true); break;
    case ChartKind::TimelineGantt: svg_gantt(out, chart); break;
  }
  for (std::size_t i = 0; i < chart.legend.size(); ++i)
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\" class=\"legend\">{}</text>\n",
                       kWidth - kRight, kTop + 12 * static_cast<int>(i), html_escape(chart.legend[i]));
  out += "</svg>\n";
  return out;
}

std::string render_report(const ReportInput& in) {
  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>" + html_escape(in.title.empty() ? "flowkit report" : in.title) + "</title>\n";
  out += "<style>\nbody{font-family:Helvetica,Arial,sans-serif;margin:2em;}\n"
         "table{border-collapse:collapse;}\ntd,th{border:1px solid #ccc;padding:4px 8px;text-align:left;}\n"
         "pre.graph{background:#f6f6f6;padding:1em;overflow:auto;}\n</style>\n</head>\n<body>\n";
  out += "<h1>" + html_escape(in.title.empty() ? "flowkit report" : in.title) + "</h1>\n";

  out += "<section id=\"compliance\">\n<h2>Compliance</h2>\n<ul class=\"legend\">\n";
  for (const auto& a : in.analyses) {
    const auto& c = a.compliance;
    out += fmt::format(
        "<li class=\"compliance\" data-activity=\"{0}\" data-ok=\"{1}\" data-temporal=\"{2}\" "
        "data-qualitative=\"{3}\">{0}: {1}% ok, {2}% temporal, {3}% qualitative ({4} of {5} opportunities{6})</li>\n",
        html_escape(c.activity_id), c.pct.ok, c.pct.temporal, c.pct.qualitative, c.totals.ok, c.totals.total(),
        c.vacuous ? ", vacuous" : "");
  }
  out += "</ul>\n</section>\n";

  out += "<section id=\"map\">\n<h2>FLOW Map</h2>\n<pre class=\"graph\">" + html_escape(in.map_text) + "</pre>\n</section>\n";

  out += "<section id=\"yellow-pages\">\n<h2>Yellow pages</h2>\n<table>\n";
  out += "<tr><th>Name</th><th>Picture</th><th>Role</th><th>Contact</th><th>Skills</th><th>Current work item</th><th>Status</th></tr>\n";
  for (const auto& p : in.yellow_pages) {
    const auto& yp = p.yellow_pages;
    std::string roles, contact, skills;
    for (auto r : p.roles) roles += (roles.empty() ? "" : ", ") + std::string(to_string(r));
    for (const auto& [ch, addr] : yp.contact) contact += (contact.empty() ? "" : ", ") + ch + ": " + addr;
    for (const auto& s : yp.skills) skills += (skills.empty() ? "" : ", ") + s;
    std::string work;
    if (yp.current_work_item)
      work = "US" + std::to_string(yp.current_work_item->story_id) +
             (yp.current_work_item->title.empty() ? "" : " " + yp.current_work_item->title);
    out += "<tr class=\"person\"><td>" + html_escape(p.name) + "</td><td>" + html_escape(yp.picture_ref.value_or("")) +
           "</td><td>" + html_escape(roles) + "</td><td>" + html_escape(contact) + "</td><td>" + html_escape(skills) +
           "</td><td>" + html_escape(work) + "</td><td>" + html_escape(yp.status.value_or("")) + "</td></tr>\n";
  }
  out += "</table>\n</section>\n";

  out += "<section id=\"charts\">\n<h2>Charts</h2>\n";
  for (const auto& chart : in.charts) {
    out += "<figure>\n" + render_chart_svg(chart) + "<figcaption>" + html_escape(chart.title) + "</figcaption>\n</figure>\n";
  }
  out += "</section>\n";

  out += "<section id=\"violations\">\n<h2>Violations</h2>\n<table>\n";
  out += "<tr><th>Activity</th><th>Rule</th><th>Category</th><th>When</th><th>Subject</th><th>Evidence</th></tr>\n";
  for (const auto& a : in.analyses) {
    for (const auto& v : a.violations) {
      std::string evidence;
      for (const auto& e : v.evidence) evidence += (evidence.empty() ? "" : ", ") + e;
      if (evidence.empty() && v.expected_slot) evidence = "expected " + format_timestamp(*v.expected_slot);
      out += "<tr class=\"violation\"><td>" + html_escape(a.compliance.activity_id) + "</td><td>" +
             html_escape(v.rule_id) + "</td><td>" + to_string(v.category) + "</td><td>" +
             format_timestamp(v.occurred_at) + "</td><td>" + html_escape(v.subject) + "</td><td>" +
             html_escape(evidence) + "</td></tr>\n";
    }
  }
  out += "</table>\n</section>\n</body>\n</html>\n";
  return out;
}

}  // namespace flowkit
