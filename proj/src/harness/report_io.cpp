#include "tqsl/harness/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace tqsl::harness {

namespace {

constexpr double kEmitSlack = 1e-9;

using nlohmann::json;

std::string format_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void check_certificate(double bound, double actual, const char* name, double t) {
  if (bound >= actual - kEmitSlack) return;
  throw std::runtime_error("report emission: bound '" + std::string(name) + "' = " +
                           format_double(bound) + " below actual " + format_double(actual) +
                           " at t = " + format_double(t));
}

json fit_json(const ColumnSummary& column) {
  json j;
  j["name"] = column.name;
  j["classification"] = classification_name(column.classification);
  if (column.fit) {
    j["exponent"] = column.fit->exponent;
    j["stderr"] = column.fit->stderr_;
  }
  return j;
}

// --- minimal SVG plotting -------------------------------------------------

struct Series {
  std::string label;
  std::string color;
  std::vector<double> xs, ys;
};

std::string svg_plot(const std::string& title, const std::string& x_label,
                     const std::vector<Series>& series) {
  constexpr double kW = 640.0, kH = 400.0;
  constexpr double kL = 60.0, kR = 500.0, kT = 30.0, kB = 360.0;

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool first = true;
  for (const Series& s : series)
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (first) {
        xmin = xmax = s.xs[i];
        ymin = ymax = s.ys[i];
        first = false;
      }
      xmin = std::min(xmin, s.xs[i]);
      xmax = std::max(xmax, s.xs[i]);
      ymin = std::min(ymin, s.ys[i]);
      ymax = std::max(ymax, s.ys[i]);
    }
  if (xmax - xmin < 1e-300) xmax = xmin + 1.0;
  if (ymax - ymin < 1e-300) ymax = ymin + 1.0;

  auto px = [&](double x) { return kL + (x - xmin) / (xmax - xmin) * (kR - kL); };
  auto py = [&](double y) { return kB - (y - ymin) / (ymax - ymin) * (kB - kT); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_short(kW) +
         "\" height=\"" + format_short(kH) + "\" viewBox=\"0 0 " + format_short(kW) + " " +
         format_short(kH) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + format_short(kL) + "\" y=\"18\" font-family=\"monospace\" "
         "font-size=\"13\">" + title + "</text>\n";
  out += "<line x1=\"" + format_short(kL) + "\" y1=\"" + format_short(kB) + "\" x2=\"" +
         format_short(kR) + "\" y2=\"" + format_short(kB) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + format_short(kL) + "\" y1=\"" + format_short(kT) + "\" x2=\"" +
         format_short(kL) + "\" y2=\"" + format_short(kB) + "\" stroke=\"black\"/>\n";
  out += "<text x=\"" + format_short(kL) + "\" y=\"380\" font-family=\"monospace\" "
         "font-size=\"11\">" + x_label + ": " + format_short(xmin) + " .. " +
         format_short(xmax) + "  |  y: " + format_short(ymin) + " .. " + format_short(ymax) +
         "</text>\n";

  double legend_y = kT + 10.0;
  for (const Series& s : series) {
    if (!s.xs.empty()) {
      std::string points;
      for (std::size_t i = 0; i < s.xs.size(); ++i) {
        points += format_short(px(s.xs[i])) + "," + format_short(py(s.ys[i]));
        if (i + 1 < s.xs.size()) points += " ";
      }
      out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\" points=\"" +
             points + "\"/>\n";
    }
    out += "<text x=\"" + format_short(kR + 12.0) + "\" y=\"" + format_short(legend_y) +
           "\" font-family=\"monospace\" font-size=\"11\" fill=\"" + s.color + "\">" + s.label +
           "</text>\n";
    legend_y += 16.0;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quench_csv(const BoundReport& report) {
  std::string out = "t,D_tr,L,tqsl,tqsl_bures,mt,ml,mds_orig,mds_orig_domain_ok,mds_simpl\n";
  for (std::size_t i = 0; i < report.times.size(); ++i) {
    const double t = report.times[i];
    const double d_tr = report.actual_trace_distance[i];
    check_certificate(report.tqsl_trace.clamped[i], d_tr, "tqsl", t);
    check_certificate(report.tqsl_bures.clamped[i], report.actual_bures_angle[i], "tqsl_bures", t);
    check_certificate(report.mt.clamped[i], d_tr, "mt", t);
    check_certificate(report.ml.clamped[i], d_tr, "ml", t);
    if (report.mds_domain_ok[i])
      check_certificate(report.mds_original_trace.clamped[i], d_tr, "mds_orig", t);
    check_certificate(report.mds_simplified.clamped[i], d_tr, "mds_simpl", t);

    out += format_double(t);
    out += ',';
    out += format_double(d_tr);
    out += ',';
    out += format_double(report.actual_bures_angle[i]);
    out += ',';
    out += format_double(report.tqsl_trace.clamped[i]);
    out += ',';
    out += format_double(report.tqsl_bures.clamped[i]);
    out += ',';
    out += format_double(report.mt.clamped[i]);
    out += ',';
    out += format_double(report.ml.clamped[i]);
    out += ',';
    out += format_double(report.mds_original_trace.clamped[i]);
    out += ',';
    out += report.mds_domain_ok[i] ? '1' : '0';
    out += ',';
    out += format_double(report.mds_simplified.clamped[i]);
    out += '\n';
  }
  return out;
}

std::string quench_json(const BoundReport& report) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["library_version"] = kLibraryVersion;
  j["kind"] = "quench";
  j["model_id"] = report.model_id;
  j["seed"] = report.seed;
  j["parameters"] = json(report.parameters);
  j["rows"] = report.times.size();
  j["columns"] = {"t",  "D_tr", "L",        "tqsl",               "tqsl_bures",
                  "mt", "ml",   "mds_orig", "mds_orig_domain_ok", "mds_simpl"};
  return j.dump(2) + "\n";
}

std::string quench_svg(const BoundReport& report) {
  auto series = [&](const char* label, const char* color,
                    const std::vector<double>& ys) {
    return Series{label, color, report.times, ys};
  };
  return svg_plot("quench: " + report.model_id, "t",
                  {series("D_tr", "#000000", report.actual_trace_distance),
                   series("L", "#777777", report.actual_bures_angle),
                   series("tqsl", "#1f77b4", report.tqsl_trace.clamped),
                   series("tqsl_bures", "#17becf", report.tqsl_bures.clamped),
                   series("mt", "#2ca02c", report.mt.clamped),
                   series("ml", "#d62728", report.ml.clamped),
                   series("mds_orig", "#9467bd", report.mds_original_trace.clamped),
                   series("mds_simpl", "#ff7f0e", report.mds_simplified.clamped)});
}

std::string sweep_csv(const ScalingResult& result) {
  std::string out = "N,dim,actual,tqsl,tqsl_bures,mt,ml,mds_orig,mds_simpl\n";
  for (const SweepRow& row : result.rows) {
    if (!row.ok) continue;
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.dim);
    out += ',';
    out += format_double(row.actual);
    out += ',';
    out += format_double(row.tqsl);
    out += ',';
    out += format_double(row.tqsl_bures);
    out += ',';
    out += format_double(row.mt);
    out += ',';
    out += format_double(row.ml);
    out += ',';
    out += format_double(row.mds_orig);
    out += ',';
    out += format_double(row.mds_simpl);
    out += '\n';
  }
  return out;
}

std::string sweep_json(const ScalingResult& result) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["library_version"] = kLibraryVersion;
  j["kind"] = "sweep";
  j["model_id"] = "spin-boson";
  j["seed"] = result.spec.seed;
  j["parameters"] = {{"beta", result.spec.beta},
                     {"t_star", result.spec.t_star},
                     {"cutoff", result.spec.cutoff},
                     {"omega_spin", result.spec.omega_spin},
                     {"omega_min", result.spec.omega_min},
                     {"omega_max", result.spec.omega_max},
                     {"g_min", result.spec.g_min},
                     {"g_max", result.spec.g_max}};

  json rows = json::array();
  for (const SweepRow& row : result.rows) {
    json r;
    r["n"] = row.n;
    r["dim"] = row.dim;
    r["ok"] = row.ok;
    if (row.ok) {
      r["actual"] = row.actual;
      r["tqsl"] = row.tqsl;
      r["tqsl_bures"] = row.tqsl_bures;
      r["mt"] = row.mt;
      r["ml"] = row.ml;
      r["mds_orig"] = row.mds_orig;
      r["mds_simpl"] = row.mds_simpl;
    } else {
      r["error"] = row.error;
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);

  json columns = json::array();
  for (const ColumnSummary& column : result.columns) columns.push_back(fit_json(column));
  j["fits"] = std::move(columns);
  return j.dump(2) + "\n";
}

std::string sweep_svg(const ScalingResult& result) {
  const std::vector<std::pair<std::string, std::string>> palette = {
      {"actual", "#000000"},   {"tqsl", "#1f77b4"}, {"tqsl_bures", "#17becf"},
      {"mt", "#2ca02c"},       {"ml", "#d62728"},   {"mds_orig", "#9467bd"},
      {"mds_simpl", "#ff7f0e"}};
  auto values_of = [](const SweepRow& row, const std::string& name) {
    if (name == "actual") return row.actual;
    if (name == "tqsl") return row.tqsl;
    if (name == "tqsl_bures") return row.tqsl_bures;
    if (name == "mt") return row.mt;
    if (name == "ml") return row.ml;
    if (name == "mds_orig") return row.mds_orig;
    return row.mds_simpl;
  };
  std::vector<Series> series;
  for (const auto& [name, color] : palette) {
    Series s{name, color, {}, {}};
    for (const SweepRow& row : result.rows) {
      if (!row.ok) continue;
      const double v = values_of(row, name);
      if (!(v > 0.0)) continue;  // log scale
      s.xs.push_back(std::log(static_cast<double>(row.n)));
      s.ys.push_back(std::log(v));
    }
    series.push_back(std::move(s));
  }
  return svg_plot("sweep: spin-boson (log-log)", "ln N", series);
}

std::string verify_json(const VerifyReport& report) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["library_version"] = kLibraryVersion;
  j["kind"] = "verify";
  j["seed"] = report.seed;
  j["passed"] = report.passed;
  json suites = json::array();
  for (const SuiteResult& suite : report.suites) {
    json s;
    s["suite"] = suite.suite;
    s["cases"] = suite.cases;
    s["failures"] = suite.failures;
    s["worst_slack"] = suite.worst_slack;
    s["messages"] = json(suite.messages);
    suites.push_back(std::move(s));
  }
  j["suites"] = std::move(suites);
  return j.dump(2) + "\n";
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(dir), ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
  const fs::path path = fs::path(dir) / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

}  // namespace tqsl::harness
