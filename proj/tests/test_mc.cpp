#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "epnet/errors.hpp"
#include "epnet/mc.hpp"

using namespace epnet;

namespace {

SweepConfig small_config() {
    SweepConfig c;
    c.topology = {TopologyTag::Square, 24, 1};
    c.p_mean = {0.3, 0.7, 0.05};
    c.widths = {0.0, 0.4};
    c.trials = 6;
    c.master_seed = 99;
    c.workers = 1;
    return c;
}

std::vector<std::pair<double, double>> logistic(double center, double steepness, double step) {
    std::vector<std::pair<double, double>> c;
    for (double p = 0.0; p <= 1.0 + 1e-12; p += step) c.emplace_back(p, 1.0 / (1.0 + std::exp(-steepness * (p - center))));
    return c;
}

}  // namespace

TEST(Family, LawsHaveTheRequestedMeanAndWidth) {
    for (auto f : {Family::Uniform, Family::Gauss, Family::Bimodal}) {
        for (double w : {0.1, 0.4, 0.8}) {
            const auto d = family_distribution(f, 0.5, w);
            const auto s = summarize(d);
            EXPECT_NEAR(s.mean, 0.5, 1e-9) << to_string(f) << " " << w;
            EXPECT_NEAR(s.width, w, 1e-12) << to_string(f) << " " << w;
        }
    }
    EXPECT_TRUE(std::holds_alternative<Degenerate>(family_distribution(Family::Uniform, 0.4, 0.0).law));
    EXPECT_TRUE(std::holds_alternative<Degenerate>(family_distribution(Family::Const, 0.4, 0.0).law));
    const auto g = std::get<TruncatedGaussian>(family_distribution(Family::Gauss, 0.5, 0.4).law);
    EXPECT_DOUBLE_EQ(g.sigma, 0.1);
}

TEST(Family, RejectsSupportOutsideUnitInterval) {
    EXPECT_THROW(family_distribution(Family::Uniform, 0.2, 0.6), InvalidArgument);
    EXPECT_THROW(family_distribution(Family::Bimodal, 0.9, 0.4), InvalidArgument);
    EXPECT_THROW(family_distribution(Family::Const, 0.5, 0.1), InvalidArgument);
    EXPECT_FALSE(in_support(Family::Uniform, 0.2, 0.6));
    EXPECT_TRUE(in_support(Family::Uniform, 0.3, 0.6));
    EXPECT_TRUE(in_support(Family::Uniform, 0.6, 0.8));  // float slack at the edge
    EXPECT_NO_THROW(family_distribution(Family::Uniform, 0.6, 0.8));
}

TEST(Grid, PointsAndParse) {
    const auto pts = Grid::parse("0.3:0.7:0.01").points();
    ASSERT_EQ(pts.size(), 41u);
    EXPECT_EQ(pts.front(), 0.3);
    EXPECT_EQ(pts[17], 0.47);
    EXPECT_EQ(pts.back(), 0.7);
    EXPECT_EQ(Grid::parse("0.5:0.5:0.1").points().size(), 1u);
    for (const char* bad : {"0.3:0.7", "0.3:0.7:0", "0.7:0.3:0.1", "a:b:c", "0.3:0.7:0.01x"})
        EXPECT_THROW(Grid::parse(bad).points(), InvalidArgument) << bad;
}

TEST(SweepConfig, Validation) {
    auto c = small_config();
    EXPECT_NO_THROW(c.validate());

    c.trials = 0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = small_config();
    c.widths = {1.2};
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = small_config();
    c.p_mean = {0.9, 0.99, 0.01};
    c.widths = {0.5};  // no grid point keeps U(p - w/2, p + w/2) inside [0, 1]
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = small_config();
    c.family = Family::Const;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = small_config();
    c.protocol = Protocol::QEP;
    EXPECT_THROW(c.validate(), UnsupportedOperation);
    c.topology = {TopologyTag::Honeycomb, 10, 1};
    EXPECT_THROW(c.validate(), UnsupportedOperation);
    c.topology.bonds = 2;
    EXPECT_NO_THROW(c.validate());
}

TEST(Sweep, SkipsOutOfSupportPointsPerWidth) {
    auto c = small_config();
    c.widths = {0.0, 0.8};
    const auto r = run_sweep(c);
    std::size_t w0 = 0, w8 = 0;
    for (const auto& row : r.rows) {
        (row.width == 0.0 ? w0 : w8)++;
        if (row.width == 0.8) EXPECT_TRUE(in_support(Family::Uniform, row.p_mean, 0.8));
    }
    EXPECT_EQ(w0, 9u);
    EXPECT_EQ(w8, 5u);  // 0.4 .. 0.6
    EXPECT_EQ(r.thresholds.size(), 2u);

    c.p_mean = {0.3, 0.45, 0.05};
    EXPECT_FALSE(run_sweep(c).thresholds[1].has_value());  // 2 points: no estimate
}

TEST(Sweep, RowsAreWellFormed) {
    const auto c = small_config();
    const auto r = run_sweep(c);
    ASSERT_EQ(r.rows.size(), 18u);
    ASSERT_EQ(r.thresholds.size(), 2u);
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
        const auto& row = r.rows[k];
        EXPECT_EQ(row.width, c.widths[k / 9]);
        EXPECT_EQ(row.p_mean, c.p_mean.points()[k % 9]);
        EXPECT_EQ(row.trials, 6);
        EXPECT_GE(row.p_inf_mean, 0.0);
        EXPECT_LE(row.p_inf_mean, 1.0);
        EXPECT_GE(row.p_inf_std, 0.0);
    }
    EXPECT_EQ(r.curve(1).size(), 9u);
}

TEST(Sweep, BitExactAcrossWorkerCounts) {
    auto c = small_config();
    const auto a = run_sweep(c);
    c.workers = 4;
    const auto b = run_sweep(c);
    c.workers = 3;
    const auto d = run_sweep(c);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        EXPECT_EQ(a.rows[k].p_inf_mean, b.rows[k].p_inf_mean);
        EXPECT_EQ(a.rows[k].p_inf_std, b.rows[k].p_inf_std);
        EXPECT_EQ(a.rows[k].p_inf_mean, d.rows[k].p_inf_mean);
        EXPECT_EQ(a.rows[k].edges_converted_mean, d.rows[k].edges_converted_mean);
    }
    EXPECT_EQ(a.thresholds, b.thresholds);
}

TEST(Sweep, QepAndRandomGraphsAreReproducible) {
    SweepConfig c;
    c.topology = {TopologyTag::Honeycomb, 8, 2};
    c.protocol = Protocol::QEP;
    c.p_mean = {0.3, 0.5, 0.05};
    c.trials = 3;
    c.workers = 2;
    EXPECT_EQ(run_sweep(c).rows.back().p_inf_mean, run_sweep(c).rows.back().p_inf_mean);

    c = SweepConfig{};
    c.topology.kind = TopologyTag::WattsStrogatz;
    c.topology.size = 200;
    c.p_mean = {0.3, 0.5, 0.05};
    c.trials = 3;
    const auto a = run_sweep(c);
    c.workers = 3;
    const auto b = run_sweep(c);
    for (std::size_t k = 0; k < a.rows.size(); ++k) EXPECT_EQ(a.rows[k].p_inf_mean, b.rows[k].p_inf_mean);
}

TEST(Sweep, SeedsDoNotDependOnGridExtent) {
    EXPECT_EQ(trial_seed(5, 2, 1, 7), trial_seed(5, 2, 1, 7));
    EXPECT_NE(trial_seed(5, 2, 1, 7), trial_seed(5, 1, 2, 7));
    EXPECT_NE(trial_seed(5, 2, 1, 7), trial_seed(6, 2, 1, 7));

    // extending the grid upwards keeps the existing rows
    auto c = small_config();
    const auto a = run_sweep(c);
    c.p_mean.stop = 0.8;
    const auto b = run_sweep(c);
    EXPECT_EQ(a.rows[0].p_inf_mean, b.rows[0].p_inf_mean);
    EXPECT_EQ(a.rows[8].p_inf_mean, b.rows[8].p_inf_mean);
}

TEST(Sweep, MonotoneUpToNoise) {
    SweepConfig c;
    c.topology = {TopologyTag::Square, 40, 1};
    c.p_mean = {0.3, 0.7, 0.02};
    c.widths = {0.0, 0.6};
    c.trials = 20;
    c.workers = 1;
    const auto r = run_sweep(c);
    for (std::size_t wi = 0; wi < c.widths.size(); ++wi) {
        std::vector<const SweepRow*> rows;
        for (const auto& row : r.rows)
            if (row.width == c.widths[wi]) rows.push_back(&row);
        for (std::size_t k = 1; k < rows.size(); ++k) {
            const double pooled =
                std::sqrt((rows[k]->p_inf_std * rows[k]->p_inf_std + rows[k - 1]->p_inf_std * rows[k - 1]->p_inf_std) /
                          c.trials);
            EXPECT_GE(rows[k]->p_inf_mean, rows[k - 1]->p_inf_mean - 3 * pooled - 1e-12);
        }
    }
}

TEST(Sweep, TriangularDegenerateThreshold) {
    SweepConfig c;
    c.topology = {TopologyTag::Triangular, 100, 1};
    c.family = Family::Const;
    c.p_mean = {0.25, 0.45, 0.01};
    c.trials = 20;
    c.master_seed = 4;
    const auto r = run_sweep(c);
    ASSERT_TRUE(r.thresholds[0]);
    EXPECT_NEAR(*r.thresholds[0], triangular_threshold(), 0.015);
}

TEST(Threshold, RecoversLogisticInflection) {
    for (double center : {0.2, 0.347, 0.5, 0.6527, 0.73})
        for (double k : {20.0, 60.0, 200.0}) {
            const auto curve = logistic(center, k, 0.01);
            EXPECT_NEAR(estimate_threshold(curve), center, 0.01) << center << " " << k;
        }
}

TEST(Threshold, TiesGoToLowerPoint) {
    const std::vector<std::pair<double, double>> step{{0.1, 0}, {0.2, 0}, {0.3, 1}, {0.4, 1}, {0.5, 1}};
    EXPECT_DOUBLE_EQ(estimate_threshold(step), 0.2);
}

TEST(Threshold, Errors) {
    const std::vector<std::pair<double, double>> flat{{0.1, 0.3}, {0.2, 0.3}, {0.3, 0.3}, {0.4, 0.3}, {0.5, 0.3}};
    EXPECT_THROW(estimate_threshold(flat), NoTransition);
    const std::vector<std::pair<double, double>> few{{0.1, 0}, {0.2, 0.5}, {0.3, 1}};
    EXPECT_THROW(estimate_threshold(few), InvalidArgument);
    const std::vector<std::pair<double, double>> unsorted{{0.1, 0}, {0.3, 0}, {0.2, 1}, {0.4, 1}, {0.5, 1}};
    EXPECT_THROW(estimate_threshold(unsorted), InvalidArgument);
}

TEST(Predict, AnalyticValues) {
    const double tri = 2 * std::sin(std::numbers::pi / 18);
    EXPECT_NEAR(triangular_threshold(), 0.347296, 1e-6);
    EXPECT_NEAR(honeycomb_threshold() + triangular_threshold(), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(predict(TopologyTag::Square, 1, Protocol::CEP, 0.3).value, 0.5);
    EXPECT_NEAR(predict(TopologyTag::Honeycomb, 2, Protocol::CEP, 0.4).value, 0.358, 1e-3);
    EXPECT_NEAR(predict(TopologyTag::Honeycomb, 2, Protocol::QEP, 0.0).value, tri, 1e-15);
    EXPECT_NEAR(predict(TopologyTag::Honeycomb, 2, Protocol::QEP, 0.6).value, 0.447, 1e-3);
    EXPECT_NEAR(predict(TopologyTag::Square, 2, Protocol::CEP, 0.0).value, 2 - std::sqrt(3.0), 1e-15);
    EXPECT_THROW(predict(TopologyTag::Square, 2, Protocol::QEP, 0.0), UnsupportedOperation);
    EXPECT_THROW(predict(TopologyTag::ErdosRenyi, 1, Protocol::CEP, 0.0), UnsupportedOperation);
    EXPECT_THROW(predict(TopologyTag::Square, 3, Protocol::CEP, 0.0), UnsupportedOperation);
}

TEST(Predict, Crossover) {
    EXPECT_NEAR(*crossover_width(0.358, 0.347), 0.066, 1e-12);
    const double exact = *crossover_width(predict(TopologyTag::Honeycomb, 2, Protocol::CEP, 0).value, triangular_threshold());
    EXPECT_NEAR(exact, 0.067, 1e-3);
    EXPECT_FALSE(crossover_width(0.3, 0.347).has_value());
    EXPECT_THROW(crossover_width(1.3, 0.3), InvalidArgument);
}

TEST(Names, RoundTrip) {
    for (auto p : {Protocol::CEP, Protocol::QEP}) EXPECT_EQ(parse_protocol(to_string(p)), p);
    for (auto f : {Family::Uniform, Family::Gauss, Family::Bimodal, Family::Const}) EXPECT_EQ(parse_family(to_string(f)), f);
    EXPECT_THROW(parse_protocol("dep"), InvalidArgument);
    EXPECT_THROW(parse_family("poisson"), InvalidArgument);
}
