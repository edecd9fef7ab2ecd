#include "lgkac/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "lgkac/error.hpp"

namespace lgkac::io {

namespace {

constexpr double grid_tolerance = 1e-6;

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

template <class T>
T parse_number(std::string_view text, std::size_t line_no, std::string_view column) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        fail(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": cannot parse " +
                                         std::string(column) + " from '" + std::string(text) + "'");
    return value;
}

struct Row {
    std::int64_t trial;
    double t;
    std::vector<double> values;
    std::size_t line_no;
};

// Reads the rows of a `trial,t,...` table with the given exact header.
std::vector<Row> read_table(std::istream& in, std::string_view header) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() == '#') continue;
        if (line != header)
            fail(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": expected header '" +
                                             std::string(header) + "', found '" + line + "'");
        have_header = true;
        break;
    }
    if (!have_header) fail(ErrorKind::parse_error, "missing header '" + std::string(header) + "'");

    const auto columns = split_fields(header);
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != columns.size())
            fail(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(columns.size()) + " fields, found " +
                                             std::to_string(fields.size()));
        Row row{parse_number<std::int64_t>(fields[0], line_no, columns[0]),
                parse_number<double>(fields[1], line_no, columns[1]),
                {},
                line_no};
        for (std::size_t c = 2; c < fields.size(); ++c) {
            row.values.push_back(parse_number<double>(fields[c], line_no, columns[c]));
            if (!std::isfinite(row.values.back()))
                fail(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": non-finite " +
                                                 std::string(columns[c]));
        }
        if (!std::isfinite(row.t))
            fail(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": non-finite time");
        rows.push_back(std::move(row));
    }
    return rows;
}

struct TrialRows {
    std::int64_t trial;
    std::vector<const Row*> rows;
};

// Groups rows by trial in order of first appearance.
std::vector<TrialRows> group_trials(const std::vector<Row>& rows) {
    std::vector<TrialRows> trials;
    std::map<std::int64_t, std::size_t> slot;
    for (const Row& r : rows) {
        const auto [it, inserted] = slot.emplace(r.trial, trials.size());
        if (inserted) trials.push_back({r.trial, {}});
        trials[it->second].rows.push_back(&r);
    }
    return trials;
}

TimeGrid infer_grid(const TrialRows& trial) {
    const auto& rows = trial.rows;
    const std::string name = "trial " + std::to_string(trial.trial);
    require(rows.size() >= 2, ErrorKind::insufficient_data, name + " has fewer than 2 samples");
    for (std::size_t k = 1; k < rows.size(); ++k)
        require(rows[k]->t > rows[k - 1]->t, ErrorKind::invalid_input,
                name + ": timestamps not strictly increasing at line " + std::to_string(rows[k]->line_no));
    TimeGrid grid{rows.front()->t, (rows.back()->t - rows.front()->t) / static_cast<double>(rows.size() - 1),
                  rows.size() - 1};
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double step = rows[k]->t - rows[k - 1]->t;
        require(std::abs(step - grid.dt) <= grid_tolerance * grid.dt, ErrorKind::invalid_input,
                name + ": non-uniform time grid at line " + std::to_string(rows[k]->line_no));
    }
    return grid;
}

std::optional<std::string> grid_mismatch(const TimeGrid& ref, const TimeGrid& g) {
    if (g.n_steps != ref.n_steps)
        return "has " + std::to_string(g.size()) + " samples, expected " + std::to_string(ref.size());
    if (std::abs(g.dt - ref.dt) > grid_tolerance * ref.dt) return "time step differs from the first trial";
    if (std::abs(g.t0 - ref.t0) > grid_tolerance * ref.dt) return "start time differs from the first trial";
    return std::nullopt;
}

// Builds one item per trial, rejecting trials whose grid differs from the first.
template <class Item, class Make>
void collect(const std::vector<TrialRows>& trials, std::vector<std::int64_t>& ids, std::vector<Item>& items,
             std::vector<std::string>& rejected, Make&& make) {
    std::optional<TimeGrid> reference;
    for (const TrialRows& trial : trials) {
        const TimeGrid grid = infer_grid(trial);
        if (!reference) reference = grid;
        if (auto why = grid_mismatch(*reference, grid)) {
            rejected.push_back("trial " + std::to_string(trial.trial) + ": " + *why);
            continue;
        }
        ids.push_back(trial.trial);
        items.push_back(make(*reference, trial));
    }
    require(!items.empty(), ErrorKind::insufficient_data, "no usable trials in input");
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::io_error, "cannot open '" + path.string() + "'");
    return in;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string fixed(double x, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

} // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

RecordingSet read_trajectories(std::istream& in) {
    const auto rows = read_table(in, "trial,t,v");
    RecordingSet set;
    collect(group_trials(rows), set.trial_ids, set.trajectories, set.rejected,
            [](const TimeGrid& grid, const TrialRows& trial) {
                Trajectory t{grid, {}};
                for (const Row* r : trial.rows) t.values.push_back(r->values[0]);
                return t;
            });
    return set;
}

RecordingSet ingest_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_trajectories(in);
}

KacRecordingSet read_kac_trajectories(std::istream& in) {
    const auto rows = read_table(in, "trial,t,v,s");
    KacRecordingSet set;
    collect(group_trials(rows), set.trial_ids, set.trajectories, set.rejected,
            [](const TimeGrid& grid, const TrialRows& trial) {
                KacTrajectory t{grid, {}, {}};
                for (const Row* r : trial.rows) {
                    const double s = r->values[1];
                    require(s == 1.0 || s == -1.0, ErrorKind::parse_error,
                            "line " + std::to_string(r->line_no) + ": state s must be +1 or -1");
                    t.x.push_back(r->values[0]);
                    t.s.push_back(static_cast<std::int8_t>(s));
                }
                return t;
            });
    return set;
}

KacRecordingSet ingest_kac_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_kac_trajectories(in);
}

std::vector<BinarySeries> read_binary_series(std::istream& in) {
    const auto rows = read_table(in, "trial,t,q");
    std::vector<std::int64_t> ids;
    std::vector<BinarySeries> series;
    std::vector<std::string> rejected;
    collect(group_trials(rows), ids, series, rejected, [](const TimeGrid& grid, const TrialRows& trial) {
        BinarySeries s{grid, {}, trial.trial};
        for (const Row* r : trial.rows) {
            const double q = r->values[0];
            require(q == 1.0 || q == -1.0, ErrorKind::parse_error,
                    "line " + std::to_string(r->line_no) + ": q must be +1 or -1");
            s.q.push_back(static_cast<std::int8_t>(q));
        }
        return s;
    });
    if (!rejected.empty()) fail(ErrorKind::invalid_input, "binary series are on mismatched grids: " + rejected.front());
    return series;
}

std::vector<BinarySeries> ingest_binary_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_binary_series(in);
}

void write_config_comment(std::ostream& out, const json& config) {
    out << "# config: " << config.dump() << '\n';
}

void write_trajectories(std::ostream& out, std::span<const Trajectory> trajectories,
                        std::span<const std::int64_t> trial_ids) {
    out << "trial,t,v\n";
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        const auto id = trial_ids.empty() ? static_cast<std::int64_t>(i) : trial_ids[i];
        const Trajectory& t = trajectories[i];
        for (std::size_t k = 0; k < t.values.size(); ++k)
            out << id << ',' << format_double(t.grid.time(k)) << ',' << format_double(t.values[k]) << '\n';
    }
}

void write_kac_trajectories(std::ostream& out, std::span<const KacTrajectory> trajectories,
                            std::span<const std::int64_t> trial_ids) {
    out << "trial,t,v,s\n";
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        const auto id = trial_ids.empty() ? static_cast<std::int64_t>(i) : trial_ids[i];
        const KacTrajectory& t = trajectories[i];
        for (std::size_t k = 0; k < t.x.size(); ++k)
            out << id << ',' << format_double(t.grid.time(k)) << ',' << format_double(t.x[k]) << ','
                << static_cast<int>(t.s[k]) << '\n';
    }
}

void write_binary_series(std::ostream& out, std::span<const BinarySeries> series) {
    out << "trial,t,q\n";
    for (const BinarySeries& s : series)
        for (std::size_t k = 0; k < s.q.size(); ++k)
            out << s.trial_id << ',' << format_double(s.grid.time(k)) << ',' << static_cast<int>(s.q[k]) << '\n';
}

void write_scan(std::ostream& out, std::span<const ScanPoint> points) {
    out << "tau,k,std_err\n";
    for (const ScanPoint& p : points)
        out << format_double(p.tau) << ',' << format_double(p.k) << ',' << format_double(p.std_error) << '\n';
}

void write_field(std::ostream& out, const Field1D& field) {
    out << "x,p_plus,p_minus,p_total\n";
    for (std::size_t j = 0; j < field.grid.n_cells; ++j)
        out << format_double(field.grid.x(j)) << ',' << format_double(field.p_plus[j]) << ','
            << format_double(field.p_minus[j]) << ',' << format_double(field.p_plus[j] + field.p_minus[j]) << '\n';
}

void write_spinor(std::ostream& out, const SpinorField& field) {
    out << "x,re_u_plus,im_u_plus,re_u_minus,im_u_minus,density\n";
    for (std::size_t j = 0; j < field.grid.n_cells; ++j) {
        const complex p = field.u_plus[j], m = field.u_minus[j];
        out << format_double(field.grid.x(j)) << ',' << format_double(p.real()) << ',' << format_double(p.imag())
            << ',' << format_double(m.real()) << ',' << format_double(m.imag()) << ','
            << format_double(std::norm(p) + std::norm(m)) << '\n';
    }
}

json to_json(const CorrelationEstimate& c) {
    return {{"value", c.value}, {"std_error", c.std_error}, {"n_samples", c.n_samples}};
}

json to_json(const LGResult& r) {
    return {{"t1", r.t1},
            {"t2", r.t2},
            {"t3", r.t3},
            {"c12", to_json(r.c12)},
            {"c23", to_json(r.c23)},
            {"c13", to_json(r.c13)},
            {"k", r.k},
            {"k_std_error", r.k_std_error},
            {"verdict", std::string(to_string(r.verdict))},
            {"error_model", "C12, C23, C13 combined in quadrature as independent estimates"}};
}

json to_json(const ViolationReport& r) {
    json intervals = json::array();
    for (const auto& [lo, hi] : r.violating_intervals) intervals.push_back({lo, hi});
    return {{"tau_star", r.tau_star}, {"k_max", r.k_max}, {"violating_intervals", intervals}};
}

json to_json(const Moments& m) {
    return {{"mass", m.mass}, {"mean", m.mean}, {"variance", m.variance}};
}

std::string render_svg_plot(std::span<const Curve> curves, const PlotOptions& options) {
    require(!curves.empty(), ErrorKind::invalid_input, "plot needs at least one curve");
    double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
    for (const Curve& c : curves) {
        require(!c.x.empty() && c.x.size() == c.y.size(), ErrorKind::invalid_input,
                "curve '" + c.label + "' is empty or has mismatched x/y lengths");
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            require(std::isfinite(c.x[i]) && std::isfinite(c.y[i]), ErrorKind::invalid_input,
                    "curve '" + c.label + "' has non-finite values");
            x_lo = std::min(x_lo, c.x[i]);
            x_hi = std::max(x_hi, c.x[i]);
            y_lo = std::min(y_lo, c.y[i]);
            y_hi = std::max(y_hi, c.y[i]);
        }
    }
    if (options.bound_line) {
        require(std::isfinite(*options.bound_line), ErrorKind::invalid_input, "bound line must be finite");
        y_lo = std::min(y_lo, *options.bound_line);
        y_hi = std::max(y_hi, *options.bound_line);
    }
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    constexpr double width = 640, height = 400, left = 70, right = 20, top = 40, bottom = 50;
    const auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * (width - left - right); };
    const auto py = [&](double y) { return height - bottom - (y - y_lo) / (y_hi - y_lo) * (height - top - bottom); };
    static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    if (!options.metadata.empty()) svg << "<metadata>" << xml_escape(options.metadata) << "</metadata>\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">"
        << xml_escape(options.title) << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right << "\" height=\""
        << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 4.0;
        const double yv = y_lo + (y_hi - y_lo) * i / 4.0;
        svg << "<text x=\"" << fixed(px(xv)) << "\" y=\"" << height - bottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fixed(xv, 3) << "</text>\n";
        svg << "<text x=\"" << left - 6 << "\" y=\"" << fixed(py(yv) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fixed(yv, 3) << "</text>\n";
    }
    svg << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(options.x_label)
        << "</text>\n";
    svg << "<text x=\"16\" y=\"" << (top + height - bottom) / 2 << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 " << (top + height - bottom) / 2
        << ")\">" << xml_escape(options.y_label) << "</text>\n";
    if (options.bound_line) {
        const std::string y = fixed(py(*options.bound_line));
        svg << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << width - right << "\" y2=\"" << y
            << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
    }
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const char* color = palette[c % std::size(palette)];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < curves[c].x.size(); ++i)
            svg << (i ? " " : "") << fixed(px(curves[c].x[i])) << ',' << fixed(py(curves[c].y[i]));
        svg << "\"/>\n";
        if (!curves[c].label.empty())
            svg << "<text x=\"" << width - right - 8 << "\" y=\"" << top + 16 + 16 * static_cast<double>(c)
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">"
                << xml_escape(curves[c].label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_svg_plot(std::span<const Curve> curves, const PlotOptions& options, const std::filesystem::path& path) {
    write_text_file(path, render_svg_plot(curves, options));
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorKind::io_error, "cannot open '" + path.string() + "' for writing");
    out << text;
    require(out.good(), ErrorKind::io_error, "failed writing '" + path.string() + "'");
}

} // namespace lgkac::io
