#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "expsel/errors.hpp"
#include "expsel/model.hpp"
#include "expsel/numerics.hpp"
#include "expsel/rng.hpp"

namespace {

using namespace expsel;

TEST(Philox, KnownAnswerVectors) {
    // Random123 kat_vectors, philox4x32 with 10 rounds.
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
              (PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
    EXPECT_EQ(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                            {0xffffffffu, 0xffffffffu}),
              (PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
    EXPECT_EQ(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                            {0xa4093822u, 0x299f31d0u}),
              (PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(UniformStream, OpenInterval) {
    UniformStream stream({1, 2}, 3, 4);
    for (int i = 0; i < 100000; ++i) {
        const double u = stream.next_open01();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

PopulationSet two_pop(int n, double r1, double r2) { return PopulationSet::from_rates(n, {r1, r2}); }

TEST(PopulationSet, Validation) {
    EXPECT_THROW(PopulationSet::from_rates(5, {1.0}), DomainError);
    EXPECT_THROW(PopulationSet::from_rates(1, {1.0, 2.0}), DomainError);
    EXPECT_THROW(PopulationSet::from_rates(5, {1.0, 0.0}), DomainError);
    EXPECT_THROW(PopulationSet::from_rates(5, {1.0, -2.0}), DomainError);
    const std::vector<double> scales{0.5, 0.25};
    const auto pop = PopulationSet::from_scales(5, scales);
    EXPECT_EQ(pop.k, 2);
    EXPECT_DOUBLE_EQ(pop.rates[0], 2.0);
    EXPECT_DOUBLE_EQ(pop.rates[1], 4.0);
    const std::vector<double> bad{0.5, 0.0};
    EXPECT_THROW(PopulationSet::from_scales(5, bad), DomainError);
}

TEST(DrawSums, Deterministic) {
    const auto pop = two_pop(5, 1.0, 2.0);
    const RngSpec rng{1, 0};
    EXPECT_EQ(draw_sums(pop, rng, 0), draw_sums(pop, rng, 0));
    EXPECT_NE(draw_sums(pop, rng, 0), draw_sums(pop, rng, 1));
    EXPECT_NE(draw_sums(pop, rng, 0), draw_sums(pop, RngSpec{2, 0}, 0));
    EXPECT_NE(draw_sums(pop, rng, 0), draw_sums(pop, RngSpec{1, 1}, 0));
}

TEST(DrawSums, IndependentOfCallOrderAndThread) {
    const auto pop = PopulationSet::from_rates(4, {1.0, 0.5, 3.0});
    const RngSpec rng{99, 7};
    std::vector<std::vector<double>> serial;
    for (std::uint64_t r = 0; r < 64; ++r) serial.push_back(draw_sums(pop, rng, r));

    std::vector<std::vector<double>> threaded(64);
    std::vector<std::thread> workers;
    for (int w = 0; w < 4; ++w) {
        workers.emplace_back([&, w] {
            // Worker w takes every fourth replication, highest first.
            for (int r = 63 - w; r >= 0; r -= 4) threaded[r] = draw_sums(pop, rng, r);
        });
    }
    for (auto& t : workers) t.join();
    EXPECT_EQ(serial, threaded);
}

TEST(DrawSums, MeanMatchesLawOfLargeNumbers) {
    const int n = 5;
    const auto pop = two_pop(n, 2.0, 1.0);
    const RngSpec rng{1, 0};
    const int reps = 100000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int r = 0; r < reps; ++r) {
        const double x = draw_sums(pop, rng, r)[0] / n;
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / reps;
    const double se = std::sqrt((sum_sq / reps - mean * mean) / reps);
    EXPECT_NEAR(mean, 0.5, 4 * se);
}

TEST(DrawSums, KolmogorovSmirnovAgainstGammaCdf) {
    const auto pop = two_pop(2, 1.0, 1.0);
    const RngSpec rng{2024, 3};
    const int draws = 10000;
    std::vector<double> ys;
    for (int r = 0; r < draws; ++r) ys.push_back(draw_sums(pop, rng, r)[0]);
    std::sort(ys.begin(), ys.end());
    double d = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double f = gamma_cdf(ys[i], 1.0, 2);
        d = std::max({d, std::fabs(f - static_cast<double>(i) / draws),
                      std::fabs(f - static_cast<double>(i + 1) / draws)});
    }
    // 1% critical value, asymptotic 1.628 / sqrt(N)
    EXPECT_LT(d, 1.628 / std::sqrt(draws));
}

TEST(Select, SpecExamples) {
    const auto pop = two_pop(5, 1.0, 2.0);
    auto out = select(pop, {3.2, 5.1});
    EXPECT_EQ(out.selected, 1u);  // J = 2
    EXPECT_DOUBLE_EQ(out.y_selected, 5.1);
    EXPECT_DOUBLE_EQ(out.sigma_selected, 2.0);

    out = select(pop, {7.0, 7.0});
    EXPECT_EQ(out.selected, 0u);

    const auto pop3 = PopulationSet::from_rates(5, {5.0, 6.0, 7.0});
    out = select(pop3, {1.0, 9.0, 4.0});
    EXPECT_EQ(out.selected, 1u);
    EXPECT_DOUBLE_EQ(out.sigma_selected, 6.0);
}

TEST(Select, Errors) {
    const auto pop = two_pop(5, 1.0, 2.0);
    EXPECT_THROW(select(pop, {1.0, 2.0, 3.0}), DomainError);
    EXPECT_THROW(select(pop, {1.0, 0.0}), DomainError);
}

TEST(Select, ScaleCovariantAndConsistent) {
    std::mt19937_64 gen(41);
    std::uniform_int_distribution<int> kdist(2, 8);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const int k = kdist(gen);
        std::vector<double> rates(k);
        std::vector<double> sums(k);
        for (int i = 0; i < k; ++i) {
            rates[i] = u(gen);
            sums[i] = u(gen);
        }
        const auto pop = PopulationSet::from_rates(3, rates);
        const double lambda = u(gen);
        std::vector<double> scaled(sums);
        for (double& s : scaled) s *= lambda;
        const auto a = select(pop, sums);
        const auto b = select(pop, scaled);
        EXPECT_EQ(a.selected, b.selected);
        EXPECT_EQ(a.sigma_selected, rates[a.selected]);
        EXPECT_EQ(a.y_selected, *std::max_element(sums.begin(), sums.end()));
        EXPECT_EQ(a.y_selected, a.sums[a.selected]);
    }
}

TEST(Select, EqualRatesSelectUniformly) {
    const int k = 3;
    const auto pop = PopulationSet::from_rates(4, {1.5, 1.5, 1.5});
    const RngSpec rng{7, 0};
    const int reps = 100000;
    std::vector<int> counts(k, 0);
    for (int r = 0; r < reps; ++r) ++counts[select(pop, draw_sums(pop, rng, r)).selected];
    const double p = 1.0 / k;
    const double se = std::sqrt(p * (1 - p) / reps);
    for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / reps, p, 4 * se);
}

TEST(GeometricMean, SpecExamples) {
    EXPECT_NEAR(geometric_mean_stat(std::vector<double>{4, 9}, 2), 6.0, 1e-14);
    EXPECT_NEAR(geometric_mean_stat(std::vector<double>{1, 1, 1}, 3), 1.0, 1e-15);
    EXPECT_NEAR(geometric_mean_stat(std::vector<double>{8, 2, 4}, 2), std::sqrt(32.0), 1e-14);
}

TEST(GeometricMean, Errors) {
    EXPECT_THROW(geometric_mean_stat(std::vector<double>{4, 9}, 1), DomainError);
    EXPECT_THROW(geometric_mean_stat(std::vector<double>{4, 9}, 3), DomainError);
    EXPECT_THROW(geometric_mean_stat(std::vector<double>{4, 0}, 2), DomainError);
}

}  // namespace
