#pragma once

#include "nflab/flows.hpp"
#include "nflab/stability.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nflab {

enum class Outcome { Pass, Fail, ReportOnly };

std::string to_string(Outcome o);

struct RunManifest {
  std::string subcommand;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::string git_describe;
  std::string timestamp;
  Outcome outcome = Outcome::ReportOnly;

  /// git_describe from the build and the current UTC time.
  static RunManifest make(std::string subcommand, nlohmann::ordered_json parameters);

  nlohmann::ordered_json to_json() const;
};

std::string build_git_describe();
std::string build_version();

/// ISO 8601, seconds resolution, trailing Z.
std::string utc_timestamp();

/// Failure to write or read a report file; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "# manifest: {...}", the header line, then one line per row.
void write_csv(const std::string& path, const std::optional<RunManifest>& manifest, const std::string& header,
               const std::vector<std::string>& rows);

/// {"manifest": ..., "data": ...}, pretty printed.
void write_json(const std::string& path, const RunManifest& manifest, const nlohmann::ordered_json& data);

struct PlotPoint {
  std::string series;
  double x;
  double y;
};

/// series = order4 | order6, x = log2(lambda), y = log10(residual).
std::vector<PlotPoint> plot_points(const ScalingReport& r);

/// series = norm_ratio, x = t.
std::vector<PlotPoint> plot_points(const StabilityReport& r);

/// Long-format CSV with columns series,x,y.
void emit_plotdata(const std::vector<PlotPoint>& points, const std::string& path,
                   const std::optional<RunManifest>& manifest = std::nullopt);

}  // namespace nflab
