#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <memory>
#include <span>
#include <thread>
#include <vector>

#include "expsel/errors.hpp"
#include "expsel/risk.hpp"

namespace expsel {

namespace {

// Block size is part of the reduction order; changing it changes the low
// bits of every reported mean.
constexpr std::uint64_t kBlockSize = 2048;

struct Moments {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const double total = static_cast<double>(count + other.count);
        const double delta = other.mean - mean;
        mean += delta * static_cast<double>(other.count) / total;
        m2 += other.m2 + delta * delta * static_cast<double>(count) *
                             static_cast<double>(other.count) / total;
        count += other.count;
    }

    double std_error() const {
        if (count < 2) return 0.0;
        const double n = static_cast<double>(count);
        return std::sqrt(m2 / (n - 1.0) / n);
    }
};

/// Fills `out` (one slot per statistic) for replication `rep`.
using ReplicationFn = std::function<void(std::uint64_t rep, std::span<double> out)>;

unsigned resolve_workers(const ExecutionOptions& exec, std::uint64_t blocks) {
    unsigned workers = exec.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(blocks, 1)));
}

std::vector<Moments> run_replications(std::uint64_t replications, std::size_t statistics,
                                      const ExecutionOptions& exec,
                                      const std::function<ReplicationFn()>& make_fn) {
    if (replications == 0) throw DomainError("Monte Carlo: replications must be positive");
    const std::uint64_t blocks = (replications + kBlockSize - 1) / kBlockSize;
    std::vector<std::vector<Moments>> per_block(blocks, std::vector<Moments>(statistics));
    std::atomic<std::uint64_t> next{0};

    auto worker = [&]() {
        // Each worker owns its own functor so scratch buffers are not shared.
        ReplicationFn fn = make_fn();
        std::vector<double> values(statistics);
        for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
            const std::uint64_t begin = b * kBlockSize;
            const std::uint64_t end = std::min(replications, begin + kBlockSize);
            auto& acc = per_block[b];
            for (std::uint64_t rep = begin; rep < end; ++rep) {
                fn(rep, values);
                for (std::size_t s = 0; s < statistics; ++s) acc[s].add(values[s]);
            }
        }
    };

    const unsigned workers = resolve_workers(exec, blocks);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        for (unsigned w = 0; w < workers; ++w) {
            threads.emplace_back([&]() {
                try {
                    worker();
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                    next.store(blocks);
                }
            });
        }
        for (auto& t : threads) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<Moments> total(statistics);
    for (const auto& block : per_block) {
        for (std::size_t s = 0; s < statistics; ++s) total[s].merge(block[s]);
    }
    return total;
}

/// Per-replication losses of several estimators on shared draws.
std::function<ReplicationFn()> loss_kernel(const std::vector<EstimatorSpec>& specs,
                                           const PopulationSet& pop, const RngSpec& rng) {
    return [&specs, &pop, rng]() -> ReplicationFn {
        auto sums = std::make_shared<std::vector<double>>(pop.rates.size());
        return [&specs, &pop, rng, sums](std::uint64_t rep, std::span<double> out) {
            draw_sums_into(pop, rng, rep, *sums);
            const std::size_t selected = argmax_index(*sums);
            const double sigma = pop.rates[selected];
            for (std::size_t e = 0; e < specs.size(); ++e) {
                const double d = evaluate_unchecked(specs[e], *sums, selected, pop.n);
                out[e] = entropy_loss(d, sigma);
            }
        };
    };
}

}  // namespace

std::vector<RiskEstimate> mc_risks(const std::vector<EstimatorSpec>& specs,
                                   const PopulationSet& pop, std::uint64_t replications,
                                   const RngSpec& rng, const ExecutionOptions& exec) {
    pop.validate();
    for (const auto& spec : specs) validate(spec, pop.n, pop.k);
    if (specs.empty()) return {};
    const auto moments = run_replications(replications, specs.size(), exec,
                                          loss_kernel(specs, pop, rng));
    std::vector<RiskEstimate> out;
    out.reserve(specs.size());
    for (const auto& m : moments) {
        out.push_back({m.mean, m.std_error(), m.count, rng.seed});
    }
    return out;
}

RiskEstimate mc_risk(const EstimatorSpec& spec, const PopulationSet& pop,
                     std::uint64_t replications, const RngSpec& rng,
                     const ExecutionOptions& exec) {
    return mc_risks({spec}, pop, replications, rng, exec).front();
}

PairedComparison mc_dominance(const EstimatorSpec& spec_a, const EstimatorSpec& spec_b,
                              const PopulationSet& pop, std::uint64_t replications,
                              const RngSpec& rng, const ExecutionOptions& exec) {
    pop.validate();
    validate(spec_a, pop.n, pop.k);
    validate(spec_b, pop.n, pop.k);
    const std::vector<EstimatorSpec> pair{spec_a, spec_b};
    auto losses = loss_kernel(pair, pop, rng);
    auto make = [&losses]() -> ReplicationFn {
        ReplicationFn inner = losses();
        return [inner](std::uint64_t rep, std::span<double> out) {
            double both[2];
            inner(rep, both);
            out[0] = both[0] - both[1];
        };
    };
    const auto moments = run_replications(replications, 1, exec, make);
    return {moments[0].mean, moments[0].std_error(), moments[0].count};
}

MomentEstimate mc_selected_inverse_moment(const PopulationSet& pop, std::uint64_t replications,
                                          const RngSpec& rng, const ExecutionOptions& exec) {
    pop.validate();
    auto make = [&pop, rng]() -> ReplicationFn {
        auto sums = std::make_shared<std::vector<double>>(pop.rates.size());
        return [&pop, rng, sums](std::uint64_t rep, std::span<double> out) {
            draw_sums_into(pop, rng, rep, *sums);
            const std::size_t selected = argmax_index(*sums);
            out[0] = 1.0 / (pop.rates[selected] * (*sums)[selected]);
        };
    };
    const auto moments = run_replications(replications, 1, exec, make);
    return {moments[0].mean, moments[0].std_error(), moments[0].count};
}

namespace detail {

RiskEstimate mc_risk_single_population(double c, double rate, int n,
                                       std::uint64_t replications, const RngSpec& rng,
                                       const ExecutionOptions& exec) {
    if (!(c > 0.0) || !(rate > 0.0) || n < 1) {
        throw DomainError("mc_risk_single_population: invalid parameters");
    }
    const PhiloxKey key = rng.key();
    auto make = [=]() -> ReplicationFn {
        return [=](std::uint64_t rep, std::span<double> out) {
            const double y = draw_gamma_sum(rate, n, key, rep, 0);
            out[0] = entropy_loss(c / y, rate);
        };
    };
    const auto moments = run_replications(replications, 1, exec, make);
    return {moments[0].mean, moments[0].std_error(), moments[0].count, rng.seed};
}

}  // namespace detail

}  // namespace expsel
