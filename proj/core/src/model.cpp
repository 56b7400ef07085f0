#include "expsel/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "expsel/errors.hpp"

namespace expsel {

PopulationSet PopulationSet::from_scales(int n, std::span<const double> scales) {
    std::vector<double> rates;
    rates.reserve(scales.size());
    for (double s : scales) {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw DomainError("PopulationSet: every scale must be a positive finite number");
        }
        rates.push_back(1.0 / s);
    }
    return from_rates(n, std::move(rates));
}

PopulationSet PopulationSet::from_rates(int n, std::vector<double> rates) {
    PopulationSet pop;
    pop.k = static_cast<int>(rates.size());
    pop.n = n;
    pop.rates = std::move(rates);
    pop.validate();
    return pop;
}

void PopulationSet::validate() const {
    if (k < 2) throw DomainError("PopulationSet: k must be at least 2");
    if (n < 2) throw DomainError("PopulationSet: n must be at least 2");
    if (rates.size() != static_cast<std::size_t>(k)) {
        throw DomainError("PopulationSet: expected " + std::to_string(k) + " rates, got " +
                          std::to_string(rates.size()));
    }
    for (double r : rates) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw DomainError("PopulationSet: every rate must be a positive finite number");
        }
    }
}

PhiloxKey RngSpec::key() const noexcept {
    const std::uint64_t folded = mix64(seed ^ mix64(stream_id));
    return {static_cast<std::uint32_t>(folded), static_cast<std::uint32_t>(folded >> 32)};
}

double draw_gamma_sum(double rate, int n, const PhiloxKey& key, std::uint64_t replication,
                      std::uint32_t lane) {
    UniformStream stream(key, replication, lane);
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        total -= std::log(stream.next_open01());
    }
    return total / rate;
}

void draw_sums_into(const PopulationSet& pop, const RngSpec& rng, std::uint64_t replication,
                    std::span<double> out) {
    const PhiloxKey key = rng.key();
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = draw_gamma_sum(pop.rates[i], pop.n, key, replication,
                                static_cast<std::uint32_t>(i));
    }
}

std::vector<double> draw_sums(const PopulationSet& pop, const RngSpec& rng,
                              std::uint64_t replication) {
    pop.validate();
    std::vector<double> sums(pop.rates.size());
    draw_sums_into(pop, rng, replication, sums);
    return sums;
}

std::size_t argmax_index(std::span<const double> sums) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < sums.size(); ++i) {
        if (sums[i] > sums[best]) best = i;
    }
    return best;
}

SelectionOutcome select(const PopulationSet& pop, std::vector<double> sums) {
    if (sums.size() != pop.rates.size()) {
        throw DomainError("select: expected " + std::to_string(pop.rates.size()) +
                          " sums, got " + std::to_string(sums.size()));
    }
    for (double y : sums) {
        if (!(y > 0.0)) throw DomainError("select: sums must be positive");
    }
    SelectionOutcome out;
    out.selected = argmax_index(sums);
    out.y_selected = sums[out.selected];
    out.sigma_selected = pop.rates[out.selected];
    out.sums = std::move(sums);
    return out;
}

double geometric_mean_stat(std::span<const double> sums, int h) {
    if (h < 2 || static_cast<std::size_t>(h) > sums.size()) {
        throw DomainError("geometric_mean_stat: h must satisfy 2 <= h <= k");
    }
    for (double y : sums) {
        if (!(y > 0.0)) throw DomainError("geometric_mean_stat: sums must be positive");
    }
    double log_sum = 0.0;
    if (static_cast<std::size_t>(h) == sums.size()) {
        for (double y : sums) log_sum += std::log(y);
    } else {
        std::vector<double> sorted(sums.begin(), sums.end());
        std::partial_sort(sorted.begin(), sorted.begin() + h, sorted.end(), std::greater<>());
        for (int i = 0; i < h; ++i) log_sum += std::log(sorted[i]);
    }
    return std::exp(log_sum / h);
}

}  // namespace expsel
