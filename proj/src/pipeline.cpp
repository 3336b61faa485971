#include "stlf/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "stlf/errors.hpp"

namespace stlf {

namespace {

struct KindName {
    ModelKind kind;
    std::string_view name;
};

constexpr std::array<KindName, 7> kKindNames{{
    {ModelKind::MeaEdRvfl, "Mea-edRVFL"},
    {ModelKind::MedEdRvfl, "Med-edRVFL"},
    {ModelKind::EwtMeaEdRvfl, "EWTMea-edRVFL"},
    {ModelKind::EwtMedEdRvfl, "EWTMed-edRVFL"},
    {ModelKind::Rvfl, "RVFL"},
    {ModelKind::EwtRvfl, "EWTRVFL"},
    {ModelKind::Persistence, "Persistence"},
}};

std::string lower(std::string_view s)
{
    std::string out(s);
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<double> denormalized(const Eigen::VectorXd& z, const NormalizationParams& p)
{
    std::vector<double> out(static_cast<std::size_t>(z.size()));
    for (Eigen::Index i = 0; i < z.size(); ++i) out[static_cast<std::size_t>(i)] = p.invert(z(i));
    return out;
}

Eigen::MatrixXd stacked_rows(const TrainedModel& m, const TimeSeries& series, std::size_t begin, std::size_t end)
{
    const std::size_t first = m.features.first_origin();
    if (begin < first || begin >= end || end > series.size() + 1) {
        throw IndexError("forecast origins [" + std::to_string(begin) + ", " + std::to_string(end) +
                         ") must lie within [" + std::to_string(first) + ", " + std::to_string(series.size() + 1) +
                         ")");
    }
    const TimeSeries norm = normalize(series, m.normalization);
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(end - begin),
                         static_cast<Eigen::Index>(m.features.feature_dim()));
    for (std::size_t t = begin; t < end; ++t) {
        rows.row(static_cast<Eigen::Index>(t - begin)) = feature_row(norm.values(), t, m.features).transpose();
    }
    return rows;
}

SegmentForecast make_segment(std::string name, const FeatureMatrix& fm, const ForecastSet& pred,
                             const NormalizationParams& norm)
{
    SegmentForecast s;
    s.name = std::move(name);
    s.index = fm.target_index;
    s.actual = denormalized(fm.targets, norm);
    s.forecast = denormalized(pred.combined, norm);
    for (const auto& layer : pred.per_layer) s.per_layer.push_back(denormalized(layer, norm));
    return s;
}

}  // namespace

std::string_view model_name(ModelKind kind) noexcept
{
    for (const auto& kn : kKindNames) {
        if (kn.kind == kind) return kn.name;
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view name)
{
    const std::string key = lower(name);
    for (const auto& kn : kKindNames) {
        if (lower(kn.name) == key) return kn.kind;
    }
    std::string options;
    for (const auto& kn : kKindNames) options += (options.empty() ? "" : ", ") + std::string(kn.name);
    throw ConfigError("unknown model '" + std::string(name) + "' (expected one of: " + options + ")");
}

bool uses_ewt(ModelKind kind) noexcept
{
    return kind == ModelKind::EwtMeaEdRvfl || kind == ModelKind::EwtMedEdRvfl || kind == ModelKind::EwtRvfl;
}

const std::vector<ModelKind>& all_model_kinds()
{
    static const std::vector<ModelKind> kinds = [] {
        std::vector<ModelKind> out;
        for (const auto& kn : kKindNames) out.push_back(kn.kind);
        return out;
    }();
    return kinds;
}

std::size_t FeatureSpec::feature_dim() const noexcept
{
    return use_ewt ? walk_forward.feature_dim() : walk_forward.order;
}

FeatureLayout FeatureSpec::layout() const
{
    return use_ewt ? walk_forward.layout() : FeatureLayout{{"raw", walk_forward.order}};
}

FeatureMatrix build_features(const TimeSeries& normalized, const FeatureSpec& spec)
{
    if (spec.use_ewt) return walk_forward_features(normalized, spec.walk_forward);
    return build_lag_matrix(normalized, spec.order());
}

Eigen::VectorXd feature_row(std::span<const double> normalized, std::size_t t, const FeatureSpec& spec)
{
    if (spec.use_ewt) return walk_forward_row(normalized, t, spec.walk_forward);
    const std::size_t order = spec.order();
    if (t < order || t > normalized.size()) {
        throw IndexError("origin " + std::to_string(t) + " outside [" + std::to_string(order) + ", " +
                         std::to_string(normalized.size()) + "]");
    }
    Eigen::VectorXd row(static_cast<Eigen::Index>(order));
    for (std::size_t j = 0; j < order; ++j) row(static_cast<Eigen::Index>(j)) = normalized[t - order + j];
    return row;
}

void PipelineConfig::validate() const
{
    split.validate();
    walk_forward.validate();
    search.validate();
    if (layers == 0) throw ConfigError("layer count must be positive");
    if (!(weight_scale > 0.0)) throw ConfigError("weight_scale must be positive");
}

std::vector<double> TrainedModel::forecast(const TimeSeries& series, std::size_t begin, std::size_t end) const
{
    if (kind == ModelKind::Persistence) {
        if (begin < 1 || begin >= end || end > series.size() + 1) {
            throw IndexError("persistence origins must lie within [1, " + std::to_string(series.size() + 1) + ")");
        }
        std::vector<double> out;
        for (std::size_t t = begin; t < end; ++t) out.push_back(series[t - 1]);
        return out;
    }
    if (!network) throw StateError("model has no fitted network");
    return denormalized(network->predict(stacked_rows(*this, series, begin, end)).combined, normalization);
}

std::vector<std::vector<double>> TrainedModel::layer_forecasts(const TimeSeries& series, std::size_t begin,
                                                               std::size_t end) const
{
    if (kind == ModelKind::Persistence) return {};
    if (!network) throw StateError("model has no fitted network");
    const auto pred = network->predict(stacked_rows(*this, series, begin, end));
    std::vector<std::vector<double>> out;
    for (const auto& layer : pred.per_layer) out.push_back(denormalized(layer, normalization));
    return out;
}

TrainOutcome train_model(const TimeSeries& series, const PipelineConfig& cfg)
{
    cfg.validate();
    TrainOutcome out;
    out.sizes = split_sizes(series.size(), cfg.split);
    const std::size_t train_end = out.sizes.train;
    const std::size_t valid_end = train_end + out.sizes.valid;
    const auto raw = series.values();
    const auto train_raw = raw.subspan(0, train_end);

    TrainedModel& model = out.model;
    model.kind = cfg.model;
    model.normalization = fit_normalization(series.slice(0, train_end));
    model.features.use_ewt = uses_ewt(cfg.model);
    model.features.walk_forward = cfg.walk_forward;

    auto score = [&](SegmentForecast& seg) {
        if (!seg.actual.empty()) seg.metrics = evaluate(seg.forecast, seg.actual, train_raw);
    };

    if (cfg.model == ModelKind::Persistence) {
        auto segment = [&](std::string name, std::size_t begin, std::size_t end) {
            SegmentForecast s;
            s.name = std::move(name);
            if (begin >= end) return s;
            for (std::size_t t = begin; t < end; ++t) {
                s.index.push_back(t);
                s.actual.push_back(raw[t]);
            }
            s.forecast = model.forecast(series, begin, end);
            score(s);
            return s;
        };
        out.train = segment("train", 1, train_end);
        out.valid = segment("valid", train_end, valid_end);
        out.test = segment("test", valid_end, series.size());
        return out;
    }

    if (out.sizes.valid == 0) throw SizingError("layer-wise tuning needs a non-empty validation segment");
    const TimeSeries normalized = normalize(series, model.normalization);
    if (model.features.use_ewt && cfg.freeze_boundaries_from_train) {
        model.features.walk_forward.frozen_boundaries =
            ewt::detect_boundaries(normalized.values().subspan(0, train_end), cfg.walk_forward.num_components);
    }
    const std::size_t first = model.features.first_origin();
    if (first + 2 > train_end) {
        throw SizingError("training segment (" + std::to_string(train_end) + " points) leaves fewer than 2 rows after " +
                          "the first origin " + std::to_string(first) + "; use a longer series or a smaller " +
                          (model.features.use_ewt ? "window" : "order"));
    }

    const FeatureMatrix all = build_features(normalized, model.features);
    const FeatureMatrix train = all.select_targets(first, train_end);
    const FeatureMatrix valid = all.select_targets(train_end, valid_end);
    const FeatureMatrix test = all.select_targets(valid_end, series.size());

    TuningBase base;
    const bool shallow = cfg.model == ModelKind::Rvfl || cfg.model == ModelKind::EwtRvfl;
    base.layers = shallow ? 1 : cfg.layers;
    base.weight_scale = cfg.weight_scale;
    base.use_bias = cfg.use_bias;
    base.ensemble_rule = (cfg.model == ModelKind::MedEdRvfl || cfg.model == ModelKind::EwtMedEdRvfl)
                             ? EnsembleRule::Median
                             : EnsembleRule::Mean;
    SearchSpace space = cfg.search;
    if (space.seeds.size() <= 1) space.seeds = {cfg.seed};

    TuningResult tuned = layerwise_tune(train, valid, space, base);
    model.network = EdRvflModel::init(tuned.config, train.cols()).fit(train.inputs, train.targets);
    out.trace = std::move(tuned.trace);

    out.train = make_segment("train", train, model.network->predict(train.inputs), model.normalization);
    out.valid = make_segment("valid", valid, model.network->predict(valid.inputs), model.normalization);
    out.test = make_segment("test", test, model.network->predict(test.inputs), model.normalization);
    score(out.train);
    score(out.valid);
    score(out.test);
    for (const auto& layer : out.test.per_layer) out.per_layer_test_rmse.push_back(rmse(layer, out.test.actual));
    return out;
}

}  // namespace stlf
