#include <catch_amalgamated.hpp>

#include "stlf/errors.hpp"
#include "stlf/pipeline.hpp"
#include "support.hpp"

using namespace stlf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

PipelineConfig small_pipeline(ModelKind kind)
{
    PipelineConfig cfg;
    cfg.model = kind;
    cfg.walk_forward.window = 96;
    cfg.walk_forward.order = 12;
    cfg.layers = 3;
    cfg.search.node_grid = {10, 20};
    cfg.seed = 11;
    return cfg;
}

}  // namespace

TEST_CASE("model names")
{
    for (auto kind : all_model_kinds()) CHECK(parse_model_kind(model_name(kind)) == kind);
    CHECK(parse_model_kind("ewtmea-edrvfl") == ModelKind::EwtMeaEdRvfl);
    CHECK(parse_model_kind("PERSISTENCE") == ModelKind::Persistence);
    CHECK_THROWS_AS(parse_model_kind("lstm"), ConfigError);
    CHECK(uses_ewt(ModelKind::EwtRvfl));
    CHECK_FALSE(uses_ewt(ModelKind::Rvfl));
}

TEST_CASE("feature dimension with default settings")
{
    FeatureSpec spec;
    spec.use_ewt = true;
    CHECK(spec.feature_dim() == 144);
    CHECK(layout_to_string(spec.layout()) == "raw:48;ewt_0:48;ewt_1:48");
    CHECK(spec.first_origin() == 336);
    spec.use_ewt = false;
    CHECK(spec.feature_dim() == 48);
    CHECK(spec.first_origin() == 48);
}

TEST_CASE("persistence replays the training series at MASE one")
{
    const TimeSeries s(testsupport::synthetic_load(500, 1));
    const auto out = train_model(s, small_pipeline(ModelKind::Persistence));
    REQUIRE(out.train.metrics);
    CHECK_THAT(out.train.metrics->mase, WithinAbs(1.0, 1e-12));
    CHECK(out.test.index.size() == 100);
    for (std::size_t i = 0; i < out.test.index.size(); ++i) {
        CHECK(out.test.forecast[i] == s[out.test.index[i] - 1]);
    }
    CHECK_FALSE(out.trace);
}

TEST_CASE("segments tile the split and metrics are recomputable")
{
    const TimeSeries s(testsupport::synthetic_load(600, 2));
    for (auto kind : {ModelKind::EwtMeaEdRvfl, ModelKind::MeaEdRvfl, ModelKind::EwtRvfl}) {
        INFO(model_name(kind));
        const auto cfg = small_pipeline(kind);
        const auto out = train_model(s, cfg);
        CHECK(out.sizes.train == 420);
        CHECK(out.valid.index.front() == 420);
        CHECK(out.test.index.front() == 480);
        CHECK(out.test.index.back() == 599);
        CHECK(out.train.index.front() == out.model.features.first_origin());
        const std::size_t layers = kind == ModelKind::EwtRvfl ? 1 : 3;
        CHECK(out.test.per_layer.size() == layers);
        CHECK(out.per_layer_test_rmse.size() == layers);

        const std::vector<double> train_raw(s.values().begin(), s.values().begin() + 420);
        const auto m = evaluate(out.test.forecast, out.test.actual, train_raw);
        CHECK(m.rmse == out.test.metrics->rmse);
        CHECK(m.mase == out.test.metrics->mase);
        for (std::size_t i = 0; i < out.test.index.size(); ++i) CHECK(out.test.actual[i] == s[out.test.index[i]]);
    }
}

TEST_CASE("forecast over the training tail matches the training predictions")
{
    const TimeSeries s(testsupport::synthetic_load(600, 3));
    const auto out = train_model(s, small_pipeline(ModelKind::EwtMedEdRvfl));
    const auto& seg = out.train;
    const std::size_t begin = seg.index[seg.index.size() - 50];
    const auto f = out.model.forecast(s, begin, begin + 50);
    REQUIRE(f.size() == 50);
    for (std::size_t i = 0; i < 50; ++i) {
        CHECK_THAT(f[i], WithinRel(seg.forecast[seg.index.size() - 50 + i], 1e-9));
    }
    const auto layers = out.model.layer_forecasts(s, begin, begin + 50);
    REQUIRE(layers.size() == 3);
    CHECK_THAT(layers[2][7], WithinRel(seg.per_layer[2][seg.index.size() - 50 + 7], 1e-9));
}

TEST_CASE("forecasts ignore values at and after their origin")
{
    const auto base = testsupport::synthetic_load(600, 4);
    const TimeSeries s(base);
    const auto out = train_model(s, small_pipeline(ModelKind::EwtMeaEdRvfl));
    const auto ref = out.model.forecast(s, 500, 601);
    REQUIRE(ref.size() == 101);
    for (std::size_t cut : {500u, 530u, 599u}) {
        auto mutated = base;
        for (std::size_t t = cut; t < mutated.size(); ++t) mutated[t] = -5000.0 + 3.0 * static_cast<double>(t);
        const auto f = out.model.forecast(TimeSeries(mutated), 500, 601);
        for (std::size_t i = 0; i + 500 <= cut; ++i) CHECK(f[i] == ref[i]);
    }
}

TEST_CASE("forecast range checks")
{
    const TimeSeries s(testsupport::synthetic_load(600, 5));
    const auto out = train_model(s, small_pipeline(ModelKind::EwtMeaEdRvfl));
    CHECK(out.model.forecast(s, 550, 560).size() == 10);
    CHECK(out.model.forecast(s, 600, 601).size() == 1);
    CHECK_THROWS_AS(out.model.forecast(s, 95, 100), IndexError);
    CHECK_THROWS_AS(out.model.forecast(s, 590, 602), IndexError);
}

TEST_CASE("sizing errors")
{
    const TimeSeries tiny(testsupport::synthetic_load(100, 6));
    CHECK_THROWS_AS(train_model(tiny, small_pipeline(ModelKind::EwtMeaEdRvfl)), SizingError);
    auto cfg = small_pipeline(ModelKind::MeaEdRvfl);
    cfg.split = SplitSpec{0.9, 0.0, 0.1};
    CHECK_THROWS_AS(train_model(TimeSeries(testsupport::synthetic_load(400, 6)), cfg), SizingError);
    cfg = small_pipeline(ModelKind::MeaEdRvfl);
    cfg.layers = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("training is deterministic")
{
    const TimeSeries s(testsupport::synthetic_load(500, 7));
    const auto a = train_model(s, small_pipeline(ModelKind::EwtMeaEdRvfl));
    const auto b = train_model(s, small_pipeline(ModelKind::EwtMeaEdRvfl));
    CHECK(a.test.forecast == b.test.forecast);
    CHECK(a.model.network->config().lambdas == b.model.network->config().lambdas);
}

TEST_CASE("frozen boundaries come from the training segment")
{
    const TimeSeries s(testsupport::synthetic_load(600, 8));
    auto cfg = small_pipeline(ModelKind::EwtMeaEdRvfl);
    cfg.freeze_boundaries_from_train = true;
    const auto out = train_model(s, cfg);
    REQUIRE(out.model.features.walk_forward.frozen_boundaries);
    CHECK(out.model.features.walk_forward.frozen_boundaries->omegas.size() == 1);
    CHECK(std::isfinite(out.test.metrics->rmse));
}
