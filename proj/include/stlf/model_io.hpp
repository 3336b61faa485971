#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "stlf/comparison.hpp"
#include "stlf/pipeline.hpp"
#include "stlf/tuning.hpp"

namespace stlf::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kModelFormat = "stlf.model";
inline constexpr int kModelVersion = 1;
inline constexpr const char* kReportSchema = "stlf.report/1";
inline constexpr const char* kComparisonSchema = "stlf.comparison/1";

/// Text artifact holding config, weights, heads, normalization and the
/// feature layout. Doubles are written in shortest round-trip form, so
/// load(save(m)) reproduces every bit.
Json model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const Json& j);
std::string dump_model(const TrainedModel& model);
void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

Json trace_to_json(const TuningTrace& trace);
/// Columns: layer, nodes, activation, lambda, rmse, chosen (layer is 1-based).
void write_trace_csv(std::ostream& os, const TuningTrace& trace);

/// Columns: t, actual, forecast, layer_1 .. layer_L.
void write_segment_csv(std::ostream& os, const SegmentForecast& seg);

struct ReportMeta {
    std::string input;
    std::uint64_t seed = 0;
    PipelineConfig config;
};

/// Machine-readable training report. Wall-clock timings are kept out so the
/// report is reproducible byte for byte.
Json report_to_json(const TrainOutcome& outcome, const ReportMeta& meta);
std::string report_text(const TrainOutcome& outcome, const ReportMeta& meta);

Json comparison_to_json(const stats::ComparisonTable& table, double alpha);

/// Writes text to a file, throwing IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace stlf::io
