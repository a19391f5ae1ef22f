#include "hashchem/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "hashchem/error.hpp"

namespace hashchem {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << content;
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json fit_to_json(const FitDiagnostics& fit) {
    return {{"model", std::string(to_string(fit.model))},
            {"a", finite_or_null(fit.a)},
            {"b", finite_or_null(fit.b)},
            {"r_squared", finite_or_null(fit.r_squared)},
            {"aic", finite_or_null(fit.aic)},
            {"bic", finite_or_null(fit.bic)},
            {"n_points", fit.n_points}};
}

struct Frame {
    double width = 800;
    double height = 420;
    double left = 70;
    double right = 20;
    double top = 40;
    double bottom = 50;
    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;

    double px(double x) const { return left + (x - x_min) / (x_max - x_min) * (width - left - right); }
    double py(double y) const { return height - bottom - (y - y_min) / (y_max - y_min) * (height - top - bottom); }
};

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string polyline(const Frame& f, const Series& s, const char* style) {
    std::string pts;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (!s.values[i]) continue;
        const double t = static_cast<double>(s.first_tick + static_cast<std::int64_t>(i));
        pts += fmt2(f.px(t)) + "," + fmt2(f.py(*s.values[i])) + " ";
    }
    if (pts.empty()) return {};
    return "<polyline fill=\"none\" " + std::string(style) + " points=\"" + pts + "\"/>\n";
}

std::string hsv_color(double hue) {
    const double h = hue * 6.0;
    const int sector = static_cast<int>(h) % 6;
    const double frac = h - std::floor(h);
    double r = 0, g = 0, b = 0;
    const double q = 1.0 - frac;
    switch (sector) {
    case 0: r = 1; g = frac; b = 0; break;
    case 1: r = q; g = 1; b = 0; break;
    case 2: r = 0; g = 1; b = frac; break;
    case 3: r = 0; g = q; b = 1; break;
    case 4: r = frac; g = 0; b = 1; break;
    default: r = 1; g = 0; b = q; break;
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(r * 215), static_cast<int>(g * 215),
                  static_cast<int>(b * 215));
    return buf;
}

} // namespace

std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf, ptr);
}

std::string csv_row(const StepRecord& r) {
    std::string row;
    row += std::to_string(r.tick);
    row += ',';
    row += std::to_string(r.population);
    row += ',';
    row += std::to_string(r.replicated_individuals);
    row += ',';
    row += optional_cell(r.max_event_fitness);
    row += ',';
    row += optional_cell(r.mean_event_fitness);
    row += ',';
    row += r.max_event_size ? std::to_string(*r.max_event_size) : std::string();
    row += ',';
    row += optional_cell(r.mean_event_size);
    row += ',';
    row += std::to_string(r.cum_unique_individual_types);
    row += ',';
    row += std::to_string(r.cum_unique_higher_order_types);
    return row;
}

void write_records_csv(std::ostream& out, std::span<const StepRecord> records) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << csv_row(r) << '\n';
    }
}

std::vector<StepRecord> padded_records(const RunResult& run, std::int64_t steps) {
    std::vector<StepRecord> out = run.records;
    StepRecord last;
    if (!out.empty()) {
        last = out.back();
    }
    for (auto t = static_cast<std::int64_t>(out.size()) + 1; t <= steps; ++t) {
        out.push_back(extinct_record(last, t));
    }
    return out;
}

Series average_field(std::span<const RunResult> runs, Field field, std::int64_t steps) {
    std::vector<Series> series;
    series.reserve(runs.size());
    for (const auto& run : runs) {
        const auto padded = padded_records(run, steps);
        Series s = extract_series(padded, field);
        s.first_tick = 1;
        series.push_back(std::move(s));
    }
    return average_series(series);
}

void write_average_csv(std::ostream& out, std::span<const RunResult> runs, std::int64_t steps) {
    out << kCsvHeader << '\n';
    if (runs.empty()) {
        return;
    }
    std::vector<Series> columns;
    for (const Field f : kAllFields) {
        columns.push_back(average_field(runs, f, steps));
    }
    for (std::int64_t t = 1; t <= steps; ++t) {
        out << t;
        for (const auto& c : columns) {
            out << ',' << optional_cell(c.at(t));
        }
        out << '\n';
    }
}

std::string fits_json(std::span<const RunResult> runs, const Config& config) {
    const std::int64_t steps = config.campaign.params.steps;
    json doc;
    doc["t_lo"] = 100;
    doc["t_hi"] = std::min<std::int64_t>(2000, steps);
    doc["log"] = "natural";
    doc["aic_bic_parameters"] = kFitParameters;
    json series_doc = json::object();

    std::vector<TickSampling> samplings;
    if (config.fit_sampling != FitSampling::log_spaced) samplings.push_back(TickSampling::every_tick);
    if (config.fit_sampling != FitSampling::every_tick) samplings.push_back(TickSampling::log_spaced);

    const std::pair<const char*, Field> targets[] = {{"mean_size", Field::mean_size}, {"max_size", Field::max_size}};
    for (const auto& [name, field] : targets) {
        json entry = json::object();
        for (const auto sampling : samplings) {
            FitOptions options;
            options.t_lo = 100;
            options.t_hi = std::min<std::int64_t>(2000, steps);
            options.sampling = sampling;
            options.log_points = config.fit_log_points;
            json block;
            try {
                if (runs.empty()) {
                    throw PreconditionError("no runs to average");
                }
                const Series avg = average_field(runs, field, steps);
                const auto bounded = fit_growth(avg, GrowthModel::bounded, options);
                const auto unbounded = fit_growth(avg, GrowthModel::unbounded, options);
                block["bounded"] = fit_to_json(bounded);
                block["unbounded"] = fit_to_json(unbounded);
                block["preferred_by_aic"] = unbounded.aic < bounded.aic ? "unbounded" : "bounded";
                block["preferred_by_bic"] = unbounded.bic < bounded.bic ? "unbounded" : "bounded";
            } catch (const std::exception& e) {
                block["error"] = e.what();
            }
            entry[std::string(to_string(sampling))] = block;
        }
        series_doc[name] = entry;
    }
    doc["series"] = series_doc;
    return doc.dump(2) + "\n";
}

std::string campaign_json(const Config& config, const CampaignResult& result, double wall_seconds) {
    json doc;
    doc["config"] = json::parse(config_to_json(config));
    doc["status"] = result.complete ? "ok" : "incomplete";
    doc["attempts"] = result.attempts;
    doc["accepted"] = result.accepted_runs.size();
    doc["extinct_attempts"] = result.extinct_attempts;
    doc["extinction_probability"] = result.extinction_probability;
    doc["extinction_ticks"] = result.extinction_ticks;
    json indices = json::array();
    for (const auto& run : result.accepted_runs) {
        indices.push_back(run.attempt_index);
    }
    doc["accepted_attempt_indices"] = indices;
    doc["wall_time_seconds"] = wall_seconds;
    return doc.dump(2) + "\n";
}

std::string line_chart_svg(const std::string& title, const std::string& y_label, std::span<const Series> runs,
                           const Series& average, std::span<const FitDiagnostics> fits) {
    Frame f;
    double y_lo = std::numeric_limits<double>::infinity();
    double y_hi = -std::numeric_limits<double>::infinity();
    std::int64_t t_max = std::max<std::int64_t>(average.last_tick(), 1);
    auto scan = [&](const Series& s) {
        for (const auto& v : s.values) {
            if (v) {
                y_lo = std::min(y_lo, *v);
                y_hi = std::max(y_hi, *v);
            }
        }
        t_max = std::max(t_max, s.last_tick());
    };
    for (const auto& s : runs) scan(s);
    scan(average);
    if (!std::isfinite(y_lo)) {
        y_lo = 0.0;
        y_hi = 1.0;
    }
    y_lo = std::min(y_lo, 0.0);
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;
    f.x_min = 0;
    f.x_max = static_cast<double>(t_max);
    f.y_min = y_lo;
    f.y_max = y_hi * 1.05;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\"" << f.height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << f.width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
        << "</text>\n";
    svg << "<line x1=\"" << f.left << "\" y1=\"" << f.py(f.y_min) << "\" x2=\"" << f.width - f.right << "\" y2=\""
        << f.py(f.y_min) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << f.left << "\" y1=\"" << f.top << "\" x2=\"" << f.left << "\" y2=\"" << f.py(f.y_min)
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double t = f.x_min + (f.x_max - f.x_min) * i / 4.0;
        const double y = f.y_min + (f.y_max - f.y_min) * i / 4.0;
        svg << "<text x=\"" << fmt2(f.px(t)) << "\" y=\"" << f.height - f.bottom + 18
            << "\" text-anchor=\"middle\">" << std::llround(t) << "</text>\n";
        svg << "<text x=\"" << f.left - 6 << "\" y=\"" << fmt2(f.py(y) + 4) << "\" text-anchor=\"end\">"
            << format_number(std::round(y * 1000.0) / 1000.0) << "</text>\n";
    }
    svg << "<text x=\"" << f.width / 2 << "\" y=\"" << f.height - 10 << "\" text-anchor=\"middle\">time step</text>\n";
    svg << "<text x=\"16\" y=\"" << f.height / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << f.height / 2 << ")\">" << y_label << "</text>\n";
    for (const auto& s : runs) {
        svg << polyline(f, s, "stroke=\"#e03030\" stroke-opacity=\"0.35\" stroke-width=\"0.6\"");
    }
    svg << polyline(f, average, "stroke=\"black\" stroke-width=\"1.6\"");
    for (const auto& fit : fits) {
        Series curve;
        curve.first_tick = 100;
        for (std::int64_t t = 100; t <= std::min<std::int64_t>(t_max, 2000); t += 10) {
            curve.values.push_back(growth_predict(fit, static_cast<double>(t)));
            for (int pad = 1; pad < 10 && t + pad <= t_max; ++pad) curve.values.push_back(std::nullopt);
        }
        const char* style = fit.model == GrowthModel::bounded
                                ? "stroke=\"#d4b000\" stroke-width=\"1.6\" stroke-dasharray=\"6,4\""
                                : "stroke=\"#20a020\" stroke-width=\"1.6\"";
        svg << polyline(f, curve, style);
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string snapshot_svg(const Snapshot& snapshot, std::int64_t types) {
    const double size = 500.0;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size + 30
        << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << size / 2 << "\" y=\"18\" text-anchor=\"middle\">t = " << snapshot.tick << " ("
        << snapshot.particles.size() << " particles)</text>\n";
    svg << "<rect x=\"0\" y=\"30\" width=\"" << size << "\" height=\"" << size
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (const auto& p : snapshot.particles) {
        const double hue = static_cast<double>(p.type - 1) / static_cast<double>(std::max<std::int64_t>(types, 1));
        svg << "<circle cx=\"" << fmt2(p.pos.x * size) << "\" cy=\"" << fmt2(30 + (1.0 - p.pos.y) * size)
            << "\" r=\"2\" fill=\"" << hsv_color(hue) << "\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_campaign_outputs(const Config& config, const CampaignResult& result, double wall_seconds) {
    const fs::path dir(config.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'");
    }
    const std::int64_t steps = config.campaign.params.steps;
    const auto& runs = result.accepted_runs;

    for (std::size_t i = 0; i < runs.size(); ++i) {
        std::ostringstream csv;
        write_records_csv(csv, runs[i].records);
        write_file(dir / ("run_" + std::to_string(i) + ".csv"), csv.str());
    }
    {
        std::ostringstream csv;
        write_average_csv(csv, runs, steps);
        write_file(dir / "average.csv", csv.str());
    }
    write_file(dir / "campaign.json", campaign_json(config, result, wall_seconds));
    write_file(dir / "fits.json", fits_json(runs, config));

    if (!config.plot || runs.empty()) {
        return;
    }
    struct Chart {
        const char* file;
        const char* title;
        const char* label;
        Field field;
        bool with_fits;
    };
    const Chart charts[] = {
        {"fig2_max_fitness.svg", "Maximum fitness of replicated individuals", "max fitness", Field::max_fitness, false},
        {"fig2_replicated.svg", "Individuals replicated per time step", "replicated", Field::replicated, false},
        {"fig3_max_size.svg", "Maximum individuals per replication event", "max size", Field::max_size, true},
        {"fig3_mean_size.svg", "Average individuals per replication event", "mean size", Field::mean_size, true},
        {"fig5_individual_types.svg", "Cumulative unique individual types", "types", Field::cum_individual_types, false},
        {"fig5_higher_order_types.svg", "Cumulative unique higher-order types", "types", Field::cum_higher_order_types,
         false},
    };
    for (const auto& chart : charts) {
        std::vector<Series> per_run;
        for (const auto& run : runs) {
            per_run.push_back(extract_series(run.records, chart.field));
        }
        const Series avg = average_field(runs, chart.field, steps);
        std::vector<FitDiagnostics> fits;
        if (chart.with_fits && steps >= 2000) {
            try {
                fits.push_back(fit_growth(avg, GrowthModel::bounded));
                fits.push_back(fit_growth(avg, GrowthModel::unbounded));
            } catch (const PreconditionError&) {
                fits.clear();
            }
        }
        write_file(dir / chart.file, line_chart_svg(chart.title, chart.label, per_run, avg, fits));
    }
    for (const auto& snap : runs.front().snapshots) {
        write_file(dir / ("snapshot_t" + std::to_string(snap.tick) + ".svg"),
                   snapshot_svg(snap, config.campaign.params.types));
    }
}

} // namespace hashchem
