#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stlf/comparison.hpp"
#include "stlf/csv_io.hpp"
#include "stlf/errors.hpp"
#include "stlf/ewt.hpp"
#include "stlf/model_io.hpp"
#include "stlf/pipeline.hpp"
#include "stlf/series.hpp"

namespace fs = std::filesystem;
using stlf::io::format_double;
using stlf::io::Json;

namespace {

struct InputOptions {
    std::string path;
    std::string value_column = "value";
    std::string time_column;

    stlf::TimeSeries load() const
    {
        return stlf::io::read_series_csv(fs::path(path), {value_column, time_column});
    }
};

void add_input_options(CLI::App* cmd, InputOptions& in)
{
    cmd->add_option("-i,--input", in.path, "Series CSV (header row required)")->required();
    cmd->add_option("--value-column", in.value_column, "Name of the load column")->capture_default_str();
    cmd->add_option("--time-column", in.time_column, "Name of the timestamp column (optional)");
}

fs::path prepare_dir(const std::string& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw stlf::IoError("cannot create output directory '" + dir + "': " + ec.message());
    return fs::path(dir);
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer)
{
    std::ostringstream os;
    writer(os);
    stlf::io::write_text(path, os.str());
}

// decompose

struct DecomposeOptions {
    InputOptions input;
    std::string output_dir = ".";
    std::size_t window = 0;
    std::size_t end = 0;
    std::size_t num_components = 2;
    std::optional<double> gamma;
    std::size_t grid_size = stlf::ewt::FilterBank::kDefaultGridSize;
};

int run_decompose(const DecomposeOptions& o)
{
    const auto series = o.input.load();
    const std::size_t end = o.end == 0 ? series.size() : o.end;
    if (end > series.size()) throw stlf::IndexError("--end exceeds the series length " + std::to_string(series.size()));
    const std::size_t window = o.window == 0 ? end : o.window;
    if (window > end) throw stlf::SizingError("--window is longer than the data before --end");
    const std::size_t begin = end - window;
    const auto values = series.values().subspan(begin, window);

    const auto bounds = stlf::ewt::detect_boundaries(values, o.num_components);
    const stlf::ewt::FilterBank bank(bounds, o.gamma, o.grid_size);
    const auto comps = stlf::ewt::decompose(values, bank);
    const auto rebuilt = stlf::ewt::reconstruct(comps, bank);

    double recon_err = 0.0;
    double sum_err = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
        double sum = 0.0;
        for (const auto& c : comps.sub_series) sum += c[i];
        recon_err = std::max(recon_err, std::abs(rebuilt[i] - values[i]));
        sum_err = std::max(sum_err, std::abs(sum - values[i]));
    }

    const fs::path dir = prepare_dir(o.output_dir);
    for (std::size_t n = 0; n < comps.count(); ++n) {
        write_file(dir / ("component_" + std::to_string(n) + ".csv"), [&](std::ostream& os) {
            os << "t,value\n";
            for (std::size_t i = 0; i < window; ++i) os << begin + i << ',' << format_double(comps.sub_series[n][i]) << '\n';
        });
    }
    write_file(dir / "filter_bank.csv", [&](std::ostream& os) { bank.write_csv(os); });
    Json j{{"input", o.input.path},
           {"begin", begin},
           {"end", end},
           {"num_components", o.num_components},
           {"boundaries", bounds.omegas},
           {"uniform_fallback", bounds.uniform_fallback},
           {"gamma", bank.gamma()},
           {"components", comps.count()},
           {"reconstruction_max_abs_error", recon_err},
           {"component_sum_max_abs_error", sum_err}};
    stlf::io::write_text(dir / "decompose.json", j.dump(2) + "\n");

    std::cout << "window [" << begin << ", " << end << "), " << comps.count() << " components, gamma "
              << format_double(bank.gamma()) << '\n';
    std::cout << "boundaries:";
    for (double w : bounds.omegas) std::cout << ' ' << format_double(w);
    if (bounds.uniform_fallback) std::cout << " (uniform fallback)";
    std::cout << "\nreconstruction max abs error " << format_double(recon_err) << '\n';
    return 0;
}

// train

struct TrainOptions {
    InputOptions input;
    std::string output_dir = "stlf_out";
    std::vector<std::string> models{"EWTMea-edRVFL"};
    std::size_t order = 48;
    std::size_t window = 336;
    std::size_t num_components = 2;
    bool include_raw = true;
    bool drop_highest_band = false;
    std::optional<double> gamma;
    bool freeze_boundaries = false;
    std::size_t layers = 5;
    std::vector<std::size_t> nodes{50, 100, 150, 200};
    std::vector<double> lambdas{0.0, 0.00390625, 0.0625};
    std::vector<std::string> activations{"sigmoid"};
    std::size_t repeats = 1;
    double weight_scale = 1.0;
    bool bias = true;
    std::vector<double> split{0.7, 0.1, 0.2};
};

stlf::PipelineConfig pipeline_config(const TrainOptions& o, const std::string& model, std::uint64_t seed)
{
    stlf::PipelineConfig cfg;
    cfg.model = stlf::parse_model_kind(model);
    cfg.walk_forward.order = o.order;
    cfg.walk_forward.window = o.window;
    cfg.walk_forward.num_components = o.num_components;
    cfg.walk_forward.include_raw = o.include_raw;
    cfg.walk_forward.drop_highest_band = o.drop_highest_band;
    cfg.walk_forward.gamma = o.gamma;
    cfg.freeze_boundaries_from_train = o.freeze_boundaries;
    cfg.split = {o.split.at(0), o.split.at(1), o.split.at(2)};
    cfg.layers = o.layers;
    cfg.search.node_grid = o.nodes;
    cfg.search.lambda_grid = o.lambdas;
    cfg.search.activations.clear();
    for (const auto& a : o.activations) cfg.search.activations.push_back(stlf::parse_activation(a));
    if (o.repeats == 0) throw stlf::ConfigError("--repeats must be at least 1");
    cfg.search.seeds.clear();
    for (std::size_t r = 0; r < o.repeats; ++r) cfg.search.seeds.push_back(seed + r);
    cfg.weight_scale = o.weight_scale;
    cfg.use_bias = o.bias;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
}

int run_train(const TrainOptions& o, std::uint64_t seed)
{
    const auto started = std::chrono::steady_clock::now();
    const auto series = o.input.load();
    const fs::path root = prepare_dir(o.output_dir);
    Json timings = Json::object();
    for (const auto& model : o.models) {
        const auto cfg = pipeline_config(o, model, seed);
        const fs::path dir = o.models.size() == 1 ? root : prepare_dir((root / stlf::model_name(cfg.model)).string());
        const auto t0 = std::chrono::steady_clock::now();
        const auto outcome = stlf::train_model(series, cfg);
        const double fit_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        const stlf::io::ReportMeta meta{o.input.path, seed, cfg};
        stlf::io::save_model(outcome.model, dir / "model.json");
        stlf::io::write_text(dir / "report.json", stlf::io::report_to_json(outcome, meta).dump(2) + "\n");
        const std::string text = stlf::io::report_text(outcome, meta);
        stlf::io::write_text(dir / "report.txt", text);
        for (const auto* seg : {&outcome.train, &outcome.valid, &outcome.test}) {
            write_file(dir / ("forecasts_" + seg->name + ".csv"),
                       [&](std::ostream& os) { stlf::io::write_segment_csv(os, *seg); });
        }
        if (outcome.trace) {
            write_file(dir / "tuning_trace.csv", [&](std::ostream& os) { stlf::io::write_trace_csv(os, *outcome.trace); });
        }
        timings[std::string(stlf::model_name(cfg.model))] = {
            {"train_seconds", fit_seconds},
            {"tuning_seconds", outcome.trace ? outcome.trace->elapsed_seconds : 0.0}};
        std::cout << text << '\n';
    }
    timings["total_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    stlf::io::write_text(root / "timings.json", timings.dump(2) + "\n");
    return 0;
}

// forecast

struct ForecastOptions {
    InputOptions input;
    std::string model_file;
    std::optional<std::size_t> start;
    std::optional<std::size_t> horizon;
    std::string output;
    std::optional<std::size_t> order;
    std::optional<std::size_t> window;
    std::optional<std::size_t> num_components;
};

int run_forecast(const ForecastOptions& o)
{
    const auto model = stlf::io::load_model(o.model_file);
    const auto& wf = model.features.walk_forward;
    auto check = [](const char* name, const std::optional<std::size_t>& want, std::size_t have) {
        if (want && *want != have) {
            throw stlf::ShapeError(std::string("--") + name + " " + std::to_string(*want) +
                                   " does not match the artifact's " + std::to_string(have));
        }
    };
    check("order", o.order, wf.order);
    check("window", o.window, wf.window);
    check("num-components", o.num_components, wf.num_components);

    const auto series = o.input.load();
    const std::size_t first = model.kind == stlf::ModelKind::Persistence ? 1 : model.features.first_origin();
    const std::size_t begin = o.start.value_or(first);
    const std::size_t end = o.horizon ? begin + *o.horizon : series.size();
    const auto fc = model.forecast(series, begin, end);

    std::ostringstream os;
    const auto& stamps = series.timestamps();
    os << (stamps ? "t,time,forecast,actual\n" : "t,forecast,actual\n");
    for (std::size_t t = begin; t < end; ++t) {
        os << t << ',';
        if (stamps) {
            const auto tp = t < series.size() ? (*stamps)[t] : stamps->back() + series.sampling_period();
            os << stlf::io::format_timestamp(tp) << ',';
        }
        os << format_double(fc[t - begin]) << ',';
        if (t < series.size()) os << format_double(series[t]);
        os << '\n';
    }
    if (o.output.empty() || o.output == "-") {
        std::cout << os.str();
    } else {
        stlf::io::write_text(o.output, os.str());
    }
    return 0;
}

// compare

struct CompareOptions {
    std::string errors;
    std::vector<std::string> reports;
    std::string metric = "rmse";
    std::string segment = "test";
    double alpha = 0.05;
    std::string output_dir = "stlf_compare";
};

stlf::io::ErrorMatrix matrix_from_reports(const CompareOptions& o)
{
    std::vector<std::string> models;
    std::vector<std::string> datasets;
    std::map<std::pair<std::string, std::string>, double> cells;
    auto index_of = [](std::vector<std::string>& names, const std::string& n) {
        if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    };
    for (const auto& path : o.reports) {
        Json j;
        try {
            j = Json::parse(stlf::io::read_text(path));
            const std::string model = j.at("model").get<std::string>();
            const std::string dataset = fs::path(j.at("input").get<std::string>()).stem().string();
            const auto& m = j.at("metrics").at(o.segment);
            if (m.is_null()) throw stlf::DataError(path + ": no " + o.segment + " metrics");
            index_of(models, model);
            index_of(datasets, dataset);
            if (!cells.emplace(std::make_pair(dataset, model), m.at(o.metric).get<double>()).second) {
                throw stlf::DataError(path + ": duplicate entry for " + model + " on " + dataset);
            }
        } catch (const Json::exception& e) {
            throw stlf::DataError(path + ": " + e.what());
        }
    }
    stlf::io::ErrorMatrix out;
    out.models = models;
    out.datasets = datasets;
    out.values.resize(static_cast<Eigen::Index>(datasets.size()), static_cast<Eigen::Index>(models.size()));
    for (std::size_t r = 0; r < datasets.size(); ++r) {
        for (std::size_t c = 0; c < models.size(); ++c) {
            const auto it = cells.find({datasets[r], models[c]});
            if (it == cells.end()) throw stlf::DataError("ragged reports: no " + models[c] + " result for " + datasets[r]);
            out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = it->second;
        }
    }
    return out;
}

void write_square(std::ostream& os, const std::vector<std::string>& names, const Eigen::MatrixXd& m)
{
    os << "model";
    for (const auto& n : names) os << ',' << n;
    os << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        os << names[static_cast<std::size_t>(r)];
        for (Eigen::Index c = 0; c < m.cols(); ++c) os << ',' << format_double(m(r, c));
        os << '\n';
    }
}

int run_compare(const CompareOptions& o)
{
    if (o.errors.empty() == o.reports.empty()) throw stlf::ConfigError("give exactly one of --errors or --reports");
    if (o.metric != "rmse" && o.metric != "mase" && o.metric != "mape") {
        throw stlf::ConfigError("--metric must be rmse, mase or mape");
    }
    const auto matrix = o.errors.empty() ? matrix_from_reports(o) : stlf::io::read_error_matrix_csv(fs::path(o.errors));
    const auto table = stlf::stats::rank_models(matrix.values.transpose(), matrix.models, matrix.datasets);
    const auto fr = stlf::stats::friedman_test(table);
    const double cd = stlf::stats::nemenyi_cd(table.k_models(), table.n_datasets(), o.alpha);
    const auto pw = stlf::stats::nemenyi_pairwise(table);
    const std::string diagram = stlf::stats::rank_diagram(table, o.alpha);

    const fs::path dir = prepare_dir(o.output_dir);
    write_file(dir / "ranks.csv", [&](std::ostream& os) {
        os << "dataset";
        for (const auto& m : table.models) os << ',' << m;
        os << '\n';
        for (std::size_t d = 0; d < table.n_datasets(); ++d) {
            os << table.datasets[d];
            for (std::size_t m = 0; m < table.k_models(); ++m) {
                os << ',' << format_double(table.ranks(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d)));
            }
            os << '\n';
        }
        os << "average";
        for (Eigen::Index m = 0; m < table.avg_ranks.size(); ++m) os << ',' << format_double(table.avg_ranks(m));
        os << '\n';
    });
    write_file(dir / "pairwise_p.csv", [&](std::ostream& os) { write_square(os, table.models, pw.report); });
    write_file(dir / "pairwise_p_raw.csv", [&](std::ostream& os) { write_square(os, table.models, pw.raw); });
    stlf::io::write_text(dir / "comparison.json", stlf::io::comparison_to_json(table, o.alpha).dump(2) + "\n");
    stlf::io::write_text(dir / "rank_diagram.txt", diagram);

    std::cout << "models " << table.k_models() << ", datasets " << table.n_datasets() << '\n';
    std::cout << "average ranks:\n";
    for (std::size_t m = 0; m < table.k_models(); ++m) {
        std::cout << "  " << std::left << std::setw(16) << table.models[m] << std::right << std::fixed
                  << std::setprecision(2) << table.avg_ranks(static_cast<Eigen::Index>(m)) << '\n';
    }
    std::cout << std::defaultfloat << "Friedman chi2 " << format_double(fr.chi2) << " (dof " << fr.dof << "), p "
              << format_double(fr.p_value) << '\n';
    std::cout << "critical distance (alpha " << format_double(o.alpha) << ") " << format_double(cd) << "\n\n";
    std::cout << diagram;
    return 0;
}

// describe

int run_describe(const InputOptions& in, bool as_json)
{
    const auto s = stlf::describe(in.load());
    const std::vector<std::pair<const char*, double>> rows{{"max", s.max},   {"min", s.min},
                                                           {"median", s.median}, {"mean", s.mean},
                                                           {"std", s.std},   {"skewness", s.skewness},
                                                           {"kurtosis", s.kurtosis}};
    if (as_json) {
        Json j = Json::object();
        for (const auto& [k, v] : rows) j[k] = v;
        std::cout << j.dump(2) << '\n';
    } else {
        for (const auto& [k, v] : rows) {
            std::cout << std::left << std::setw(10) << k << std::right << std::fixed << std::setprecision(4) << v << '\n';
        }
    }
    return 0;
}

std::string toml_value(const std::string& v)
{
    double d = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
    if (!v.empty() && ec == std::errc() && ptr == v.data() + v.size()) return v;
    if (v == "true" || v == "false") return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

// One key per option that has a value, as given on the command line or
// from its default; the output can be fed back through --config.
void append_options(std::ostringstream& os, const CLI::App& app)
{
    for (const CLI::Option* opt : app.get_options()) {
        if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
        const std::string key = opt->get_lnames().front();
        if (key == "help" || key == "config") continue;
        std::vector<std::string> values = opt->results();
        if (values.empty()) {
            const std::string def = opt->get_default_str();
            if (def.empty()) continue;
            if (def.front() == '[' && def.back() == ']') {
                std::string cur;
                for (char c : def.substr(1, def.size() - 2)) {
                    if (c == ',') {
                        values.push_back(cur);
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
                values.push_back(cur);
            } else {
                values.push_back(def);
            }
        }
        if (opt->get_type_size_max() == 0 || opt->get_expected_max() <= 1) {
            std::string v = values.back();
            if (opt->get_type_size_max() == 0) v = (v == "0" || v == "false") ? "false" : "true";
            if (opt->get_type_size_max() != 0 && (v == "0" || v == "1") && opt->get_type_name() == "BOOLEAN") {
                v = v == "1" ? "true" : "false";
            }
            os << key << " = " << toml_value(v) << '\n';
        } else {
            os << key << " = [";
            for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << toml_value(values[i]);
            os << "]\n";
        }
    }
}

std::string resolved_config(const CLI::App& app)
{
    std::ostringstream os;
    append_options(os, app);
    for (const CLI::App* sub : app.get_subcommands()) {
        os << "\n[" << sub->get_name() << "]\n";
        append_options(os, *sub);
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Short-term load forecasting with walk-forward EWT features and edRVFL networks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read options from an INI/TOML file; command-line flags win");
    bool print_config = false;
    app.add_flag("--print-config", print_config, "Print the fully resolved configuration and exit")
        ->configurable(false);
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "Seed for every random draw")->capture_default_str();

    DecomposeOptions dec;
    auto* c_dec = app.add_subcommand("decompose", "Decompose one window with EWT and dump the filter bank");
    add_input_options(c_dec, dec.input);
    c_dec->add_option("-o,--output-dir", dec.output_dir, "Output directory")->capture_default_str();
    c_dec->add_option("--window", dec.window, "Window length (0 = everything before --end)")->capture_default_str();
    c_dec->add_option("--end", dec.end, "Exclusive end index of the window (0 = series length)")->capture_default_str();
    c_dec->add_option("--num-components", dec.num_components, "Number of EWT sub-series")->capture_default_str();
    c_dec->add_option("--gamma", dec.gamma, "Transition ratio (default: half the feasible maximum)");
    c_dec->add_option("--grid-size", dec.grid_size, "Points in the filter-bank dump")->capture_default_str();

    TrainOptions tr;
    auto* c_tr = app.add_subcommand("train", "Tune, fit and evaluate a forecaster");
    add_input_options(c_tr, tr.input);
    c_tr->add_option("-o,--output-dir", tr.output_dir, "Output directory")->capture_default_str();
    c_tr->add_option("-m,--model", tr.models,
                     "Mea-edRVFL, Med-edRVFL, EWTMea-edRVFL, EWTMed-edRVFL, RVFL, EWTRVFL or Persistence")
        ->capture_default_str();
    c_tr->add_option("--order", tr.order, "Lagged values per input block")->capture_default_str();
    c_tr->add_option("--window", tr.window, "Walk-forward decomposition window")->capture_default_str();
    c_tr->add_option("--num-components", tr.num_components, "EWT sub-series per window")->capture_default_str();
    c_tr->add_option("--include-raw", tr.include_raw, "Feed the raw lags next to the sub-series")->capture_default_str();
    c_tr->add_option("--drop-highest-band", tr.drop_highest_band, "Discard the highest-frequency sub-series")
        ->capture_default_str();
    c_tr->add_option("--gamma", tr.gamma, "EWT transition ratio (default: half the feasible maximum)");
    c_tr->add_option("--freeze-boundaries", tr.freeze_boundaries, "Reuse the boundaries of the training segment")
        ->capture_default_str();
    c_tr->add_option("--layers", tr.layers, "Enhancement layers")->capture_default_str();
    c_tr->add_option("--nodes", tr.nodes, "Node-count grid")->capture_default_str();
    c_tr->add_option("--lambdas", tr.lambdas, "Regularization grid")->capture_default_str();
    c_tr->add_option("--activations", tr.activations, "Activation grid (sigmoid, tanh, relu)")->capture_default_str();
    c_tr->add_option("--repeats", tr.repeats, "Seeds averaged per tuning candidate")->capture_default_str();
    c_tr->add_option("--weight-scale", tr.weight_scale, "Random weights are drawn from U[-s, s]")
        ->capture_default_str();
    c_tr->add_option("--bias", tr.bias, "Random bias row and output intercept")->capture_default_str();
    c_tr->add_option("--split", tr.split, "Train, validation and test fractions")->expected(3)->capture_default_str();

    ForecastOptions fc;
    auto* c_fc = app.add_subcommand("forecast", "Rolling one-step forecasts from a saved model");
    add_input_options(c_fc, fc.input);
    c_fc->add_option("--model-file", fc.model_file, "model.json written by train")->required();
    c_fc->add_option("--start", fc.start, "First forecast origin (default: first feasible)");
    c_fc->add_option("--horizon", fc.horizon, "Number of origins (default: up to the series end)");
    c_fc->add_option("-o,--output", fc.output, "Output CSV (default: stdout)");
    c_fc->add_option("--order", fc.order, "Expected lag order; must match the model");
    c_fc->add_option("--window", fc.window, "Expected window; must match the model");
    c_fc->add_option("--num-components", fc.num_components, "Expected component count; must match the model");

    CompareOptions cmp;
    auto* c_cmp = app.add_subcommand("compare", "Rank models with the Friedman and Nemenyi tests");
    c_cmp->add_option("--errors", cmp.errors, "CSV with datasets as rows and models as columns");
    c_cmp->add_option("--reports", cmp.reports, "report.json files, one per (dataset, model)");
    c_cmp->add_option("--metric", cmp.metric, "Metric taken from reports: rmse, mase or mape")->capture_default_str();
    c_cmp->add_option("--segment", cmp.segment, "Report segment: train, valid or test")->capture_default_str();
    c_cmp->add_option("--alpha", cmp.alpha, "Significance level (0.05 or 0.10)")->capture_default_str();
    c_cmp->add_option("-o,--output-dir", cmp.output_dir, "Output directory")->capture_default_str();

    InputOptions desc;
    bool desc_json = false;
    auto* c_desc = app.add_subcommand("describe", "Descriptive statistics of a series");
    add_input_options(c_desc, desc);
    c_desc->add_flag("--json", desc_json, "Print JSON instead of a table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : stlf::exit_code(stlf::ErrorKind::Config);
    }

    if (print_config) {
        std::cout << resolved_config(app);
        return 0;
    }

    try {
        if (c_dec->parsed()) return run_decompose(dec);
        if (c_tr->parsed()) return run_train(tr, seed);
        if (c_fc->parsed()) return run_forecast(fc);
        if (c_cmp->parsed()) return run_compare(cmp);
        if (c_desc->parsed()) return run_describe(desc, desc_json);
    } catch (const stlf::Error& e) {
        std::cerr << "error (" << stlf::to_string(e.kind()) << "): " << e.what() << '\n';
        return stlf::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
