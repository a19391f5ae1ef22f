#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "hashchem/analysis.hpp"
#include "hashchem/config.hpp"
#include "hashchem/harness.hpp"
#include "hashchem/metrics.hpp"

namespace hashchem {

inline constexpr const char* kCsvHeader =
    "tick,population,replicated,max_f,mean_f,max_size,mean_size,cum_ind_types,cum_ho_types";

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

/// One CSV row, no trailing newline. Absent optional fields are blank cells.
std::string csv_row(const StepRecord& record);

void write_records_csv(std::ostream& out, std::span<const StepRecord> records);

/// Per-run records padded past extinction up to `steps` with
/// extinct_record rows, so every run covers ticks 1..steps.
std::vector<StepRecord> padded_records(const RunResult& run, std::int64_t steps);

/// Pointwise average of every field over `runs`, as CSV.
void write_average_csv(std::ostream& out, std::span<const RunResult> runs, std::int64_t steps);

/// Averages one field across runs (padded to `steps`).
Series average_field(std::span<const RunResult> runs, Field field, std::int64_t steps);

/// Growth fits for the averaged mean_size and max_size series, as JSON.
std::string fits_json(std::span<const RunResult> runs, const Config& config);

std::string campaign_json(const Config& config, const CampaignResult& result, double wall_seconds);

/// SVG line chart: one thin red polyline per run, black average, optional
/// fitted curves.
std::string line_chart_svg(const std::string& title, const std::string& y_label, std::span<const Series> runs,
                           const Series& average, std::span<const FitDiagnostics> fits = {});

/// Scatter plot of particle positions, hue by type.
std::string snapshot_svg(const Snapshot& snapshot, std::int64_t types);

/// Writes run_<i>.csv, average.csv, campaign.json, fits.json and, when
/// config.plot is set, the SVG charts into config.output_dir. Throws IoError.
void write_campaign_outputs(const Config& config, const CampaignResult& result, double wall_seconds);

} // namespace hashchem
