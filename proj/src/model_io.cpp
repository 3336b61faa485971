#include "stlf/model_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "stlf/csv_io.hpp"
#include "stlf/errors.hpp"

namespace stlf::io {

namespace {

Json matrix_to_json(const Eigen::MatrixXd& m)
{
    Json data = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Eigen::MatrixXd matrix_from_json(const Json& j)
{
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols)) {
        throw ShapeError("stored matrix size does not match its shape");
    }
    Eigen::MatrixXd m(rows, cols);
    std::size_t i = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[i++].get<double>();
    }
    return m;
}

Json vector_to_json(const Eigen::VectorXd& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Eigen::VectorXd vector_from_json(const Json& j)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

Json boundaries_to_json(const ewt::Boundaries& b)
{
    return Json{{"omegas", b.omegas}, {"uniform_fallback", b.uniform_fallback}};
}

Json walk_forward_to_json(const WalkForwardConfig& wf)
{
    Json j{{"window", wf.window},
           {"order", wf.order},
           {"num_components", wf.num_components},
           {"include_raw", wf.include_raw},
           {"drop_highest_band", wf.drop_highest_band}};
    j["gamma"] = wf.gamma ? Json(*wf.gamma) : Json(nullptr);
    j["frozen_boundaries"] = wf.frozen_boundaries ? boundaries_to_json(*wf.frozen_boundaries) : Json(nullptr);
    return j;
}

WalkForwardConfig walk_forward_from_json(const Json& j)
{
    WalkForwardConfig wf;
    wf.window = j.at("window").get<std::size_t>();
    wf.order = j.at("order").get<std::size_t>();
    wf.num_components = j.at("num_components").get<std::size_t>();
    wf.include_raw = j.at("include_raw").get<bool>();
    wf.drop_highest_band = j.at("drop_highest_band").get<bool>();
    if (!j.at("gamma").is_null()) wf.gamma = j.at("gamma").get<double>();
    if (const auto& b = j.at("frozen_boundaries"); !b.is_null()) {
        ewt::Boundaries bounds;
        bounds.omegas = b.at("omegas").get<std::vector<double>>();
        bounds.uniform_fallback = b.at("uniform_fallback").get<bool>();
        bounds.validate();
        wf.frozen_boundaries = std::move(bounds);
    }
    wf.validate();
    return wf;
}

Json edrvfl_config_to_json(const EdRvflConfig& c)
{
    return Json{{"layers", c.layers},
                {"nodes", c.nodes},
                {"lambdas", c.lambdas},
                {"activation", to_string(c.activation)},
                {"weight_scale", c.weight_scale},
                {"use_bias", c.use_bias},
                {"ensemble_rule", to_string(c.ensemble_rule)},
                {"seed", c.seed}};
}

EdRvflConfig edrvfl_config_from_json(const Json& j)
{
    EdRvflConfig c;
    c.layers = j.at("layers").get<std::size_t>();
    c.nodes = j.at("nodes").get<std::size_t>();
    c.lambdas = j.at("lambdas").get<std::vector<double>>();
    c.activation = parse_activation(j.at("activation").get<std::string>());
    c.weight_scale = j.at("weight_scale").get<double>();
    c.use_bias = j.at("use_bias").get<bool>();
    c.ensemble_rule = parse_ensemble_rule(j.at("ensemble_rule").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    c.validate();
    return c;
}

Json metrics_to_json(const std::optional<MetricReport>& m)
{
    if (!m) return nullptr;
    return Json{{"rmse", m->rmse},
                {"mase", m->mase},
                {"mape", m->mape},
                {"n_test", m->n_test},
                {"mase_denominator", m->mase_denominator}};
}

Json pipeline_config_to_json(const PipelineConfig& c)
{
    std::vector<std::string> acts;
    for (auto a : c.search.activations) acts.emplace_back(to_string(a));
    return Json{{"model", model_name(c.model)},
                {"walk_forward", walk_forward_to_json(c.walk_forward)},
                {"freeze_boundaries_from_train", c.freeze_boundaries_from_train},
                {"split",
                 {{"train", c.split.train_fraction}, {"valid", c.split.valid_fraction}, {"test", c.split.test_fraction}}},
                {"layers", c.layers},
                {"search",
                 {{"node_grid", c.search.node_grid},
                  {"lambda_grid", c.search.lambda_grid},
                  {"activations", acts},
                  {"seeds", c.search.seeds}}},
                {"weight_scale", c.weight_scale},
                {"use_bias", c.use_bias},
                {"seed", c.seed}};
}

std::string fixed(double v, int digits)
{
    if (!std::isfinite(v)) return format_double(v);
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

}  // namespace

Json model_to_json(const TrainedModel& model)
{
    Json j;
    j["format"] = kModelFormat;
    j["version"] = kModelVersion;
    j["model"] = model_name(model.kind);
    j["normalization"] = {{"x_min", model.normalization.x_min}, {"x_max", model.normalization.x_max}};
    j["features"] = {{"use_ewt", model.features.use_ewt},
                     {"walk_forward", walk_forward_to_json(model.features.walk_forward)},
                     {"layout", layout_to_string(model.features.layout())},
                     {"feature_dim", model.features.feature_dim()}};
    if (model.network) {
        const auto& net = *model.network;
        Json weights = Json::array();
        for (const auto& w : net.weights()) weights.push_back(matrix_to_json(w));
        Json heads = Json::array();
        for (const auto& h : net.heads()) heads.push_back(vector_to_json(h));
        j["network"] = {{"config", edrvfl_config_to_json(net.config())},
                        {"feature_dim", net.feature_dim()},
                        {"weights", std::move(weights)},
                        {"heads", std::move(heads)}};
    } else {
        j["network"] = nullptr;
    }
    return j;
}

TrainedModel model_from_json(const Json& j)
{
    try {
        if (j.at("format").get<std::string>() != kModelFormat) throw ConfigError("not a model artifact");
        if (j.at("version").get<int>() != kModelVersion) {
            throw ConfigError("unsupported model artifact version " + j.at("version").dump());
        }
        TrainedModel m;
        m.kind = parse_model_kind(j.at("model").get<std::string>());
        m.normalization.x_min = j.at("normalization").at("x_min").get<double>();
        m.normalization.x_max = j.at("normalization").at("x_max").get<double>();
        m.normalization.validate();
        const auto& f = j.at("features");
        m.features.use_ewt = f.at("use_ewt").get<bool>();
        m.features.walk_forward = walk_forward_from_json(f.at("walk_forward"));
        const std::string stored = f.at("layout").get<std::string>();
        if (stored != layout_to_string(m.features.layout())) {
            throw ShapeError("artifact layout '" + stored + "' does not match its feature config ('" +
                             layout_to_string(m.features.layout()) + "')");
        }
        if (const auto& n = j.at("network"); !n.is_null()) {
            const auto cfg = edrvfl_config_from_json(n.at("config"));
            const auto d = n.at("feature_dim").get<std::size_t>();
            if (d != m.features.feature_dim()) throw ShapeError("network input width does not match the layout");
            std::vector<Eigen::MatrixXd> weights;
            for (const auto& w : n.at("weights")) weights.push_back(matrix_from_json(w));
            std::vector<Eigen::VectorXd> heads;
            for (const auto& h : n.at("heads")) heads.push_back(vector_from_json(h));
            m.network = EdRvflModel::from_parts(cfg, d, std::move(weights), std::move(heads));
        } else if (m.kind != ModelKind::Persistence) {
            throw ConfigError("artifact for " + std::string(model_name(m.kind)) + " has no network");
        }
        return m;
    } catch (const Json::exception& e) {
        throw DataError(std::string("malformed model artifact: ") + e.what());
    }
}

std::string dump_model(const TrainedModel& model)
{
    return model_to_json(model).dump(1) + "\n";
}

void save_model(const TrainedModel& model, const std::filesystem::path& path)
{
    write_text(path, dump_model(model));
}

TrainedModel load_model(const std::filesystem::path& path)
{
    const std::string text = read_text(path);
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return model_from_json(j);
}

Json trace_to_json(const TuningTrace& trace)
{
    Json cands = Json::array();
    for (const auto& c : trace.candidates) {
        cands.push_back({{"layer", c.layer + 1},
                         {"nodes", c.nodes},
                         {"activation", to_string(c.activation)},
                         {"lambda", c.lambda},
                         {"rmse", std::isfinite(c.rmse) ? Json(c.rmse) : Json(nullptr)},
                         {"chosen", c.chosen}});
    }
    return Json{{"chosen_nodes", trace.chosen_nodes},
                {"chosen_activation", to_string(trace.chosen_activation)},
                {"chosen_lambdas", trace.chosen_lambdas},
                {"evaluations", trace.evaluations()},
                {"candidates", std::move(cands)}};
}

void write_trace_csv(std::ostream& os, const TuningTrace& trace)
{
    os << "layer,nodes,activation,lambda,rmse,chosen\n";
    for (const auto& c : trace.candidates) {
        os << c.layer + 1 << ',' << c.nodes << ',' << to_string(c.activation) << ',' << format_double(c.lambda)
           << ',' << format_double(c.rmse) << ',' << (c.chosen ? 1 : 0) << '\n';
    }
}

void write_segment_csv(std::ostream& os, const SegmentForecast& seg)
{
    os << "t,actual,forecast";
    for (std::size_t l = 0; l < seg.per_layer.size(); ++l) os << ",layer_" << l + 1;
    os << '\n';
    for (std::size_t i = 0; i < seg.index.size(); ++i) {
        os << seg.index[i] << ',' << format_double(seg.actual[i]) << ',' << format_double(seg.forecast[i]);
        for (const auto& layer : seg.per_layer) os << ',' << format_double(layer[i]);
        os << '\n';
    }
}

Json report_to_json(const TrainOutcome& outcome, const ReportMeta& meta)
{
    Json j;
    j["schema"] = kReportSchema;
    j["input"] = meta.input;
    j["seed"] = meta.seed;
    j["model"] = model_name(outcome.model.kind);
    j["config"] = pipeline_config_to_json(meta.config);
    j["split"] = {{"train", outcome.sizes.train}, {"valid", outcome.sizes.valid}, {"test", outcome.sizes.test}};
    j["feature_layout"] = layout_to_string(outcome.model.features.layout());
    j["feature_dim"] = outcome.model.features.feature_dim();
    j["normalization"] = {{"x_min", outcome.model.normalization.x_min},
                          {"x_max", outcome.model.normalization.x_max}};
    j["metrics"] = {{"train", metrics_to_json(outcome.train.metrics)},
                    {"valid", metrics_to_json(outcome.valid.metrics)},
                    {"test", metrics_to_json(outcome.test.metrics)}};
    j["per_layer_test_rmse"] = outcome.per_layer_test_rmse;
    j["forecasts"] = {{"train", "forecasts_train.csv"},
                      {"valid", "forecasts_valid.csv"},
                      {"test", "forecasts_test.csv"}};
    j["tuning"] = outcome.trace ? trace_to_json(*outcome.trace) : Json(nullptr);
    return j;
}

std::string report_text(const TrainOutcome& outcome, const ReportMeta& meta)
{
    std::ostringstream os;
    os << "model      " << model_name(outcome.model.kind) << '\n';
    os << "input      " << meta.input << '\n';
    os << "seed       " << meta.seed << '\n';
    os << "split      train " << outcome.sizes.train << ", valid " << outcome.sizes.valid << ", test "
       << outcome.sizes.test << '\n';
    os << "layout     " << layout_to_string(outcome.model.features.layout()) << " (d = "
       << outcome.model.features.feature_dim() << ")\n";
    if (outcome.trace) {
        const auto& t = *outcome.trace;
        os << "tuned      nodes " << t.chosen_nodes << ", activation " << to_string(t.chosen_activation)
           << ", lambdas";
        for (double l : t.chosen_lambdas) os << ' ' << format_double(l);
        os << " (" << t.evaluations() << " evaluations)\n";
    }
    os << '\n' << std::left << std::setw(8) << "segment" << std::right << std::setw(8) << "n" << std::setw(14)
       << "RMSE" << std::setw(10) << "MASE" << std::setw(10) << "MAPE%" << '\n';
    for (const auto* seg : {&outcome.train, &outcome.valid, &outcome.test}) {
        if (!seg->metrics) continue;
        const auto& m = *seg->metrics;
        os << std::left << std::setw(8) << seg->name << std::right << std::setw(8) << m.n_test << std::setw(14)
           << fixed(m.rmse, 4) << std::setw(10) << fixed(m.mase, 4) << std::setw(10) << fixed(100.0 * m.mape, 3)
           << '\n';
    }
    if (!outcome.per_layer_test_rmse.empty()) {
        os << "\nper-layer test RMSE\n";
        for (std::size_t l = 0; l < outcome.per_layer_test_rmse.size(); ++l) {
            os << "  layer " << l + 1 << "  " << fixed(outcome.per_layer_test_rmse[l], 4) << '\n';
        }
    }
    return os.str();
}

Json comparison_to_json(const stats::ComparisonTable& table, double alpha)
{
    Json j;
    j["schema"] = kComparisonSchema;
    j["models"] = table.models;
    j["datasets"] = table.datasets;
    std::vector<double> avg(table.avg_ranks.data(), table.avg_ranks.data() + table.avg_ranks.size());
    j["average_ranks"] = avg;
    j["ranks"] = matrix_to_json(table.ranks);
    const std::size_t k = table.k_models();
    const std::size_t n = table.n_datasets();
    const auto fr = stats::friedman_test(table);
    j["friedman"] = {{"chi2", fr.chi2}, {"p_value", fr.p_value}, {"dof", fr.dof}};
    j["alpha"] = alpha;
    j["q_alpha"] = stats::nemenyi_q(k, alpha);
    j["critical_distance"] = stats::nemenyi_cd(k, n, alpha);
    const auto pw = stats::nemenyi_pairwise(table);
    j["pairwise_p"] = matrix_to_json(pw.report);
    j["pairwise_p_raw"] = matrix_to_json(pw.raw);
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace stlf::io
