#include "nflab/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

namespace nflab {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "fail";
    case Outcome::ReportOnly:
      return "report-only";
  }
  return "report-only";
}

std::string build_git_describe() { return NFLAB_GIT_DESCRIBE; }
std::string build_version() { return NFLAB_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunManifest RunManifest::make(std::string subcommand, nlohmann::ordered_json parameters) {
  RunManifest m;
  m.subcommand = std::move(subcommand);
  m.parameters = std::move(parameters);
  m.git_describe = build_git_describe();
  m.timestamp = utc_timestamp();
  return m;
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  j["parameters"] = parameters;
  j["git_describe"] = git_describe;
  j["timestamp"] = timestamp;
  j["outcome"] = to_string(outcome);
  return j;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to " + path + " failed");
}

}  // namespace

void write_csv(const std::string& path, const std::optional<RunManifest>& manifest, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream out = open_out(path);
  if (manifest) out << "# manifest: " << manifest->to_json().dump() << '\n';
  out << header << '\n';
  for (const auto& r : rows) out << r << '\n';
  finish(out, path);
}

void write_json(const std::string& path, const RunManifest& manifest, const nlohmann::ordered_json& data) {
  std::ofstream out = open_out(path);
  nlohmann::ordered_json doc;
  doc["manifest"] = manifest.to_json();
  doc["data"] = data;
  out << doc.dump(2) << '\n';
  finish(out, path);
}

std::vector<PlotPoint> plot_points(const ScalingReport& r) {
  std::vector<PlotPoint> pts;
  const std::string series = "order" + std::to_string(r.order);
  for (std::size_t i = 0; i < r.lambdas.size(); ++i)
    pts.push_back({series, std::log2(r.lambdas[i]), std::log10(r.residuals[i])});
  return pts;
}

std::vector<PlotPoint> plot_points(const StabilityReport& r) {
  std::vector<PlotPoint> pts;
  for (const auto& row : r.rows) pts.push_back({"norm_ratio", row.t, row.norm_ratio});
  return pts;
}

void emit_plotdata(const std::vector<PlotPoint>& points, const std::string& path,
                   const std::optional<RunManifest>& manifest) {
  std::vector<std::string> rows;
  for (const auto& p : points) {
    std::ostringstream os;
    os.precision(17);
    os << p.series << ',' << p.x << ',' << p.y;
    rows.push_back(os.str());
  }
  write_csv(path, manifest, "series,x,y", rows);
}

}  // namespace nflab
