#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "expsel/rng.hpp"

namespace expsel {

/// k independent exponential populations with common sample size n.
/// Rates are hazard rates sigma_i (the reciprocal of the exponential scale).
struct PopulationSet {
    int k = 2;
    int n = 2;
    std::vector<double> rates;

    /// Builds a population set from scale parameters 1 / sigma_i.
    static PopulationSet from_scales(int n, std::span<const double> scales);
    static PopulationSet from_rates(int n, std::vector<double> rates);

    /// Throws DomainError unless k >= 2, n >= 2, rates.size() == k and every rate > 0.
    void validate() const;
};

struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    PhiloxKey key() const noexcept;
};

/// Result of the natural selection rule on one replication.
/// `selected` is zero-based; `sums[selected]` is the largest sum.
struct SelectionOutcome {
    std::vector<double> sums;
    std::size_t selected = 0;
    double y_selected = 0.0;
    double sigma_selected = 0.0;
};

/// Sufficient sums Y_i = sum_j Y_ij, Y_ij ~ Exp(rate sigma_i), so Y_i ~ Gamma(sigma_i, n).
/// Pure function of (rng.seed, rng.stream_id, replication, i).
std::vector<double> draw_sums(const PopulationSet& pop, const RngSpec& rng,
                              std::uint64_t replication);

/// Allocation-free variant; `out.size()` must equal pop.k. Does not validate `pop`.
void draw_sums_into(const PopulationSet& pop, const RngSpec& rng, std::uint64_t replication,
                    std::span<double> out);

/// One Gamma(rate, n) sum drawn as the sum of n exponentials on lane `lane`.
double draw_gamma_sum(double rate, int n, const PhiloxKey& key, std::uint64_t replication,
                      std::uint32_t lane);

/// Index of the largest entry; ties go to the lowest index.
std::size_t argmax_index(std::span<const double> sums);

SelectionOutcome select(const PopulationSet& pop, std::vector<double> sums);

/// Geometric mean of the h largest sums, 2 <= h <= sums.size().
double geometric_mean_stat(std::span<const double> sums, int h);

}  // namespace expsel
