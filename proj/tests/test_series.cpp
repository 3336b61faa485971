#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "stlf/errors.hpp"
#include "stlf/series.hpp"
#include "support.hpp"

using namespace stlf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("time series rejects empty and non-finite input")
{
    CHECK_THROWS_AS(TimeSeries(std::vector<double>{}), SizingError);
    CHECK_THROWS_AS(TimeSeries(std::vector<double>{1.0, NAN}), DataError);
    CHECK_THROWS_AS(TimeSeries(std::vector<double>{1.0, INFINITY}), DataError);
    CHECK_NOTHROW(TimeSeries(std::vector<double>{1.0}));
}

TEST_CASE("timestamps must be regular and increasing")
{
    using namespace std::chrono;
    const TimePoint t0 = sys_days{year{2020} / 1 / 1};
    const TimeSeries ok({1.0, 2.0, 3.0}, {t0, t0 + minutes(30), t0 + minutes(60)});
    CHECK(ok.sampling_period() == seconds(1800));
    CHECK_THROWS_AS(TimeSeries({1.0, 2.0, 3.0}, {t0, t0 + minutes(30), t0 + minutes(90)}), DataError);
    CHECK_THROWS_AS(TimeSeries({1.0, 2.0}, {t0, t0}), DataError);
    CHECK_THROWS_AS(TimeSeries({1.0, 2.0}, {t0}), ShapeError);
}

TEST_CASE("normalize maps the training range onto [0, 1]")
{
    const NormalizationParams p{0.0, 10.0};
    CHECK(p.apply(5.0) == 0.5);
    CHECK(p.apply(0.0) == 0.0);
    CHECK(p.apply(10.0) == 1.0);
    CHECK(p.invert(0.5) == 5.0);
    CHECK(p.invert(0.0) == 0.0);
    CHECK(p.invert(1.0) == 10.0);

    CHECK_THROWS_AS(normalize(TimeSeries({1.0, 2.0}), NormalizationParams{3.0, 3.0}), ConfigError);
    CHECK_THROWS_AS(fit_normalization(TimeSeries({4.0, 4.0, 4.0})), ConfigError);
}

TEST_CASE("normalization round trip within 1e-12 relative")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto v = testsupport::uniform_values(200, rng, -500.0, 3000.0);
        const TimeSeries s(v);
        const auto p = fit_normalization(s.slice(0, 140));
        const auto back = denormalize(normalize(s, p), p);
        for (std::size_t i = 0; i < v.size(); ++i) {
            CHECK_THAT(back[i], WithinRel(v[i], 1e-12) || WithinAbs(v[i], 1e-12));
        }
    }
}

TEST_CASE("normalization params ignore the test segment")
{
    std::vector<double> v{3, 1, 4, 1, 5, 9, 2, 6, 5, 3};
    const TimeSeries s(v);
    const auto p1 = fit_normalization(s.slice(0, 7));
    v[8] = 1e6;
    v[9] = -1e6;
    const auto p2 = fit_normalization(TimeSeries(v).slice(0, 7));
    CHECK(p1.x_min == p2.x_min);
    CHECK(p1.x_max == p2.x_max);
    const auto z = normalize(TimeSeries(v), p2);
    CHECK(z[8] > 1.0);
    CHECK(z[9] < 0.0);
}

TEST_CASE("split sizes follow floor with remainder to training")
{
    const SplitSpec spec;
    auto s = split_sizes(100, spec);
    CHECK(s.train == 70);
    CHECK(s.valid == 10);
    CHECK(s.test == 20);

    s = split_sizes(101, spec);
    CHECK(s.train == 71);
    CHECK(s.valid == 10);
    CHECK(s.test == 20);

    s = split_sizes(1490, spec);
    CHECK(s.train == 1043);
    CHECK(s.valid == 149);
    CHECK(s.test == 298);

    // independent oracle over many lengths
    for (std::size_t n = 20; n < 2000; n += 37) {
        const auto sz = split_sizes(n, spec);
        CHECK(sz.valid == n / 10);
        CHECK(sz.test == n / 5);
        CHECK(sz.train + sz.valid + sz.test == n);
    }
    CHECK_THROWS_AS(split_sizes(3, spec), SizingError);
    CHECK_THROWS_AS(split_sizes(100, SplitSpec{0.5, 0.1, 0.2}), ConfigError);
}

TEST_CASE("split is a chronological partition")
{
    std::vector<double> v(101);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    const auto [tr, va, te] = split(TimeSeries(v), SplitSpec{});
    REQUIRE(tr.size() + va.size() + te.size() == v.size());
    std::vector<double> joined;
    for (const auto* part : {&tr, &va, &te}) joined.insert(joined.end(), part->values().begin(), part->values().end());
    CHECK(joined == v);
}

TEST_CASE("lag matrix enumerates windows")
{
    const auto fm = build_lag_matrix(TimeSeries({1.0, 2.0, 3.0, 4.0}), 2);
    REQUIRE(fm.rows() == 2);
    CHECK(fm.inputs(0, 0) == 1.0);
    CHECK(fm.inputs(0, 1) == 2.0);
    CHECK(fm.inputs(1, 0) == 2.0);
    CHECK(fm.inputs(1, 1) == 3.0);
    CHECK(fm.targets(0) == 3.0);
    CHECK(fm.targets(1) == 4.0);
    CHECK(layout_to_string(fm.layout) == "raw:2");

    std::vector<double> v(1490);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    const auto big = build_lag_matrix(TimeSeries(v), 48);
    CHECK(big.rows() == 1442);
    for (std::size_t i = 0; i < big.rows(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        CHECK(big.inputs(r, 47) + 1.0 == big.targets(r));
        CHECK(big.target_index[i] == i + 48);
    }

    CHECK_THROWS_AS(build_lag_matrix(TimeSeries({1.0, 2.0}), 2), SizingError);
    CHECK_THROWS_AS(build_lag_matrix(TimeSeries({1.0, 2.0}), 0), SizingError);
}

TEST_CASE("select_targets keeps rows by target index")
{
    std::vector<double> v(30);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i * i);
    const auto fm = build_lag_matrix(TimeSeries(v), 5);
    const auto sub = fm.select_targets(10, 20);
    REQUIRE(sub.rows() == 10);
    CHECK(sub.target_index.front() == 10);
    CHECK(sub.target_index.back() == 19);
    CHECK(sub.targets(0) == 100.0);
    CHECK(sub.inputs(0, 4) == 81.0);
}

TEST_CASE("describe uses bias-corrected moments")
{
    const TimeSeries s({1, 2, 3, 4, 10, 7, 7, 2});
    const auto d = describe(s);
    CHECK(d.max == 10.0);
    CHECK(d.min == 1.0);
    CHECK(d.median == 3.5);
    CHECK_THAT(d.mean, WithinAbs(4.5, 1e-12));
    // reference values from an independent statistics package
    CHECK_THAT(d.std, WithinAbs(3.1622776601683795, 1e-12));
    CHECK_THAT(d.skewness, WithinAbs(0.722806322324201, 1e-12));
    CHECK_THAT(d.kurtosis, WithinAbs(-0.6948571428571428, 1e-12));
}

TEST_CASE("describe degenerate and symmetric cases")
{
    const auto c = describe(TimeSeries({5.0, 5.0, 5.0, 5.0}));
    CHECK(c.std == 0.0);
    CHECK(c.skewness == 0.0);
    CHECK(c.kurtosis == 0.0);

    const auto sym = describe(TimeSeries({-1.0, 0.0, 1.0}));
    CHECK_THAT(sym.skewness, WithinAbs(0.0, 1e-15));

    CHECK_THROWS_AS(describe(TimeSeries({1.0})), SizingError);
}

TEST_CASE("describe ordering invariants on random data")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = describe(TimeSeries(testsupport::uniform_values(37, rng, 0.0, 100.0)));
        CHECK(d.min <= d.median);
        CHECK(d.median <= d.max);
        CHECK(d.std >= 0.0);
    }
}

TEST_CASE("median averages the middle pair")
{
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 3.0, 2.0}) == 2.5);
    CHECK_THROWS_AS(median({}), SizingError);
}
