#include "capmass/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "capmass/errors.hpp"

namespace capmass {
namespace {

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(std::ostringstream& out, const OrderedJson& v, int depth) {
  const std::string pad(std::size_t(2 * (depth + 1)), ' ');
  const std::string close(std::size_t(2 * depth), ' ');
  switch (v.type()) {
    case OrderedJson::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      std::size_t i = 0;
      for (const auto& [key, item] : v.items()) {
        out << pad << OrderedJson(key).dump() << ": ";
        write(out, item, depth + 1);
        out << (++i < v.size() ? ",\n" : "\n");
      }
      out << close << "}";
      return;
    }
    case OrderedJson::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << pad;
        write(out, v[i], depth + 1);
        out << (i + 1 < v.size() ? ",\n" : "\n");
      }
      out << close << "]";
      return;
    }
    case OrderedJson::value_t::number_float:
      out << format_real(v.get<double>());
      return;
    default:
      out << v.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

double get_real(const OrderedJson& v) { return v.is_null() ? std::nan("") : v.get<double>(); }

OrderedJson point_to_json(const PointRecord& p) {
  OrderedJson j = OrderedJson::object();
  j["index"] = p.index;
  OrderedJson params = OrderedJson::object();
  params["dimension"] = p.dimension;
  params["mass"] = p.mass ? real(*p.mass) : OrderedJson(nullptr);
  params["boundary_r0"] = real(p.boundary_r0);
  j["parameters"] = params;
  OrderedJson s = OrderedJson::object();
  s["capacity"] = real(p.summary.capacity);
  s["mass"] = real(p.summary.mass);
  s["Lambda"] = real(p.summary.lambda);
  s["c"] = real(p.summary.c);
  s["alpha"] = real(p.summary.alpha);
  s["rhs"] = real(p.summary.rhs);
  s["gap"] = real(p.summary.gap);
  s["verdict"] = p.summary.verdict;
  j["summary"] = s;
  OrderedJson checks = OrderedJson::array();
  for (const auto& c : p.checks) {
    OrderedJson r = OrderedJson::object();
    r["check"] = to_string(c.check);
    r["status"] = to_string(c.status);
    r["verdict"] = c.verdict;
    r["note"] = c.note;
    r["values"] = c.values;
    checks.push_back(std::move(r));
  }
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace

OrderedJson real(double value) { return std::isfinite(value) ? OrderedJson(value) : OrderedJson(nullptr); }

std::string dump_json(const OrderedJson& value) {
  std::ostringstream out;
  write(out, value, 0);
  out << "\n";
  return out.str();
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "Pass";
    case CheckStatus::kHypothesisViolated: return "HypothesisViolated";
    case CheckStatus::kFail: return "Fail";
  }
  return "Unknown";
}

CheckStatus check_status_from_string(const std::string& name) {
  for (CheckStatus s : {CheckStatus::kPass, CheckStatus::kHypothesisViolated, CheckStatus::kFail})
    if (to_string(s) == name) return s;
  throw ParseError("report", 0, "status", "unknown check status '" + name + "'");
}

bool Report::has_failure() const {
  for (const auto& p : points)
    for (const auto& c : p.checks)
      if (c.status == CheckStatus::kFail) return true;
  return false;
}

std::optional<ReportFormat> report_format_from_string(const std::string& name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "text") return ReportFormat::kText;
  return std::nullopt;
}

std::string extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson: return "json";
    case ReportFormat::kCsv: return "csv";
    case ReportFormat::kText: return "txt";
  }
  return "out";
}

std::string emit(const Report& report, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    OrderedJson j = OrderedJson::object();
    j["scenario"] = report.scenario;
    j["provenance"] = report.provenance;
    OrderedJson points = OrderedJson::array();
    for (const auto& p : report.points) points.push_back(point_to_json(p));
    j["points"] = std::move(points);
    if (report.wall_time_seconds) j["timing"] = OrderedJson{{"wall_time_seconds", *report.wall_time_seconds}};
    return dump_json(j);
  }

  std::ostringstream out;
  if (format == ReportFormat::kCsv) {
    out << csv_header() << "\n";
    for (const auto& p : report.points) {
      const auto& s = p.summary;
      out << csv_field(report.scenario) << ',' << p.dimension << ',' << (p.mass ? format_real(*p.mass) : "")
          << ',' << format_real(p.boundary_r0) << ',' << format_real(s.capacity) << ',' << format_real(s.mass)
          << ',' << format_real(s.lambda) << ',' << format_real(s.c) << ',' << format_real(s.alpha) << ','
          << format_real(s.rhs) << ',' << format_real(s.gap) << ',' << csv_field(s.verdict) << "\n";
    }
    return out.str();
  }

  for (const auto& p : report.points) {
    char where[160];
    std::snprintf(where, sizeof where, "n=%d m=%s r0=%.10g", p.dimension,
                  p.mass ? format_real(*p.mass).c_str() : "-", p.boundary_r0);
    for (const auto& c : p.checks) {
      out << (c.status == CheckStatus::kFail ? "FAIL" : "PASS") << ' ' << report.scenario << '[' << p.index
          << "] " << to_string(c.check) << " (" << where << ") " << c.verdict;
      if (!c.note.empty()) out << ": " << c.note;
      out << "\n";
    }
  }
  return out.str();
}

Report report_from_json(const std::string& text) {
  OrderedJson j;
  try {
    j = OrderedJson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("report", 0, "", e.what());
  }
  try {
    Report r;
    r.scenario = j.at("scenario").get<std::string>();
    r.provenance = j.at("provenance");
    for (const auto& pj : j.at("points")) {
      PointRecord p;
      p.index = pj.at("index").get<std::size_t>();
      const auto& params = pj.at("parameters");
      p.dimension = params.at("dimension").get<int>();
      if (!params.at("mass").is_null()) p.mass = params.at("mass").get<double>();
      p.boundary_r0 = params.at("boundary_r0").get<double>();
      const auto& s = pj.at("summary");
      p.summary = {get_real(s.at("capacity")), get_real(s.at("mass")), get_real(s.at("Lambda")),
                   get_real(s.at("c")),        get_real(s.at("alpha")), get_real(s.at("rhs")),
                   get_real(s.at("gap")),      s.at("verdict").get<std::string>()};
      for (const auto& cj : pj.at("checks")) {
        CheckRecord c;
        const auto kind = check_kind_from_string(cj.at("check").get<std::string>());
        if (!kind) throw ParseError("report", 0, "check", "unknown check");
        c.check = *kind;
        c.status = check_status_from_string(cj.at("status").get<std::string>());
        c.verdict = cj.at("verdict").get<std::string>();
        c.note = cj.at("note").get<std::string>();
        c.values = cj.at("values");
        p.checks.push_back(std::move(c));
      }
      r.points.push_back(std::move(p));
    }
    if (j.contains("timing")) r.wall_time_seconds = j.at("timing").at("wall_time_seconds").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("report", 0, "", e.what());
  }
}

}  // namespace capmass
