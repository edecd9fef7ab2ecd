#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "lgkac/correlations.hpp"
#include "lgkac/dirac.hpp"
#include "lgkac/lg_theory.hpp"
#include "lgkac/observables.hpp"
#include "lgkac/stochastic_processes.hpp"
#include "lgkac/telegrapher.hpp"

namespace lgkac::io {

using nlohmann::json;

/// Shortest round-trip-safe decimal form (17 significant digits).
std::string format_double(double x);

/// Recorded or simulated trajectories keyed by trial id. Trials whose grid
/// differs from the first trial's are left out and listed in `rejected`.
struct RecordingSet {
    std::vector<std::int64_t> trial_ids;
    std::vector<Trajectory> trajectories;
    std::vector<std::string> rejected;
};

struct KacRecordingSet {
    std::vector<std::int64_t> trial_ids;
    std::vector<KacTrajectory> trajectories;
    std::vector<std::string> rejected;
};

/// CSV files may begin with '#' comment lines (the config echo); the first
/// other line must be the exact header.
RecordingSet ingest_csv(const std::filesystem::path& path);
RecordingSet read_trajectories(std::istream& in);

/// `trial,t,v,s` files written by `simulate kac`.
KacRecordingSet ingest_kac_csv(const std::filesystem::path& path);
KacRecordingSet read_kac_trajectories(std::istream& in);

/// `trial,t,q` files. All series must share one grid.
std::vector<BinarySeries> ingest_binary_csv(const std::filesystem::path& path);
std::vector<BinarySeries> read_binary_series(std::istream& in);

void write_config_comment(std::ostream& out, const json& config);
void write_trajectories(std::ostream& out, std::span<const Trajectory> trajectories,
                        std::span<const std::int64_t> trial_ids = {});
void write_kac_trajectories(std::ostream& out, std::span<const KacTrajectory> trajectories,
                            std::span<const std::int64_t> trial_ids = {});
void write_binary_series(std::ostream& out, std::span<const BinarySeries> series);
void write_scan(std::ostream& out, std::span<const ScanPoint> points);
void write_field(std::ostream& out, const Field1D& field);
void write_spinor(std::ostream& out, const SpinorField& field);

json to_json(const CorrelationEstimate& c);
json to_json(const LGResult& r);
json to_json(const ViolationReport& r);
json to_json(const Moments& m);

struct Curve {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label = "tau";
    std::string y_label = "K";
    std::optional<double> bound_line;
    /// Embedded verbatim (escaped) in the SVG <metadata> element.
    std::string metadata;
};

/// Self-contained SVG line plot, one polyline per curve. The optional bound is
/// drawn as the only dashed element. Identical input gives identical bytes.
std::string render_svg_plot(std::span<const Curve> curves, const PlotOptions& options);
void emit_svg_plot(std::span<const Curve> curves, const PlotOptions& options,
                   const std::filesystem::path& path);

/// Writes `text` to `path`, throwing io_error on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace lgkac::io
