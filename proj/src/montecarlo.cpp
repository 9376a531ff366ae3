#include "afrelay/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <optional>
#include <thread>

#include "afrelay/errors.hpp"

namespace afrelay {

namespace {

double uniform_open(McRng& rng)
{
    // (0, 1]: never zero, so logs stay finite.
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

double fading(int m, McRng& rng)
{
    double prod = 1.0;
    double log_sum = 0.0;
    for (int i = 0; i < m; ++i) {
        prod *= uniform_open(rng);
        if (prod < 1e-280) {
            log_sum += std::log(prod);
            prod = 1.0;
        }
    }
    return -(log_sum + std::log(prod)) / m;
}

// Per-hop sampler with its distributions prepared once.
class HopSampler
{
  public:
    explicit HopSampler(const HopConfig& hop) : hop_(hop)
    {
        hop_.validate();
        if (const auto* r = std::get_if<RandomInterference>(&hop_.interference)) {
            if (r->field) {
                field_ = *r->field;
                if (field_->lambda_mean > 0.0) {
                    count_ = std::poisson_distribution<int>(field_->lambda_mean);
                }
            } else {
                gg_ = r->gga;
                gamma_ = std::gamma_distribution<double>(gg_.gamma_shape(), 1.0);
            }
        } else {
            const FixedField& fixed = std::get<FixedField>(hop_.interference);
            for (std::size_t i = 0; i < fixed.interferers.size(); ++i) {
                omegas_.push_back(fixed.omega(i));
                shapes_.push_back(fixed.interferers[i].fading_m);
            }
        }
    }

    double interference(McRng& rng)
    {
        if (field_) {
            if (field_->lambda_mean == 0.0) {
                return 0.0;
            }
            const int n = count_(rng);
            const DistanceLaw& law = field_->law();
            double y = 0.0;
            for (int i = 0; i < n; ++i) {
                const double l = law.quantile(uniform_open(rng), field_->disc_radius);
                y += field_->power_product * field_->pathloss(l) * fading(field_->fading_m, rng);
            }
            return y;
        }
        if (!omegas_.empty()) {
            double y = 0.0;
            for (std::size_t i = 0; i < omegas_.size(); ++i) {
                y += omegas_[i] * fading(shapes_[i], rng);
            }
            return y;
        }
        return gg_.a * std::pow(gamma_(rng), 1.0 / gg_.p);
    }

    double sinr(McRng& rng)
    {
        const double w = hop_.signal_omega * fading(hop_.signal_m, rng);
        return w / (hop_.noise_power + interference(rng));
    }

  private:
    HopConfig hop_;
    std::optional<RandomField> field_;
    std::vector<double> omegas_;
    std::vector<int> shapes_;
    GGDist gg_;
    std::poisson_distribution<int> count_;
    std::gamma_distribution<double> gamma_;
};

McRng batch_rng(std::uint64_t seed, std::uint64_t batch)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32)};
    return McRng(seq);
}

}  // namespace

void McSpec::validate() const
{
    if (trials < 1) {
        throw DomainError("McSpec: trials must be >= 1");
    }
    if (batch < 1) {
        throw DomainError("McSpec: batch must be >= 1");
    }
}

double sample_fading_power(int m, McRng& rng)
{
    if (m < 1) {
        throw DomainError("sample_fading_power: m must be >= 1");
    }
    return fading(m, rng);
}

double sample_interference(const RandomField& field, McRng& rng)
{
    HopConfig hop;
    hop.interference = RandomInterference{field, GGDist{}};
    return HopSampler(hop).interference(rng);
}

double sample_interference(const FixedField& field, McRng& rng)
{
    HopConfig hop;
    hop.interference = field;
    return HopSampler(hop).interference(rng);
}

double sample_interference(const HopConfig& hop, McRng& rng)
{
    return HopSampler(hop).interference(rng);
}

double sample_hop_sinr(const HopConfig& hop, McRng& rng)
{
    return HopSampler(hop).sinr(rng);
}

std::vector<McEstimate> estimate_outage(const SystemConfig& system, const McSpec& mc)
{
    system.validate();
    mc.validate();
    const std::size_t nt = system.thresholds.size();
    std::vector<std::size_t> order(nt);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return system.thresholds[a] < system.thresholds[b]; });
    std::vector<double> sorted(nt);
    for (std::size_t i = 0; i < nt; ++i) {
        sorted[i] = system.thresholds[order[i]];
    }

    const std::uint64_t batches = (mc.trials + mc.batch - 1) / mc.batch;
    // hist[b][k]: trials of batch b whose best SINR lies below sorted[k] but not sorted[k-1].
    std::vector<std::vector<std::uint64_t>> hist(batches, std::vector<std::uint64_t>(nt + 1, 0));

    auto run_batch = [&](std::uint64_t b) {
        McRng rng = batch_rng(mc.seed, b);
        std::vector<HopSampler> samplers;
        for (const RelayLink& link : system.links) {
            samplers.emplace_back(link.hop_sr);
            samplers.emplace_back(link.hop_rd);
        }
        const std::uint64_t begin = b * mc.batch;
        const std::uint64_t end = std::min(mc.trials, begin + mc.batch);
        auto& h = hist[b];
        for (std::uint64_t t = begin; t < end; ++t) {
            double best = 0.0;
            for (std::size_t j = 0; j < system.links.size(); ++j) {
                const double gs = samplers[2 * j].sinr(rng);
                const double gd = samplers[2 * j + 1].sinr(rng);
                best = std::max(best, gs * gd / (gs + gd + 1.0));
            }
            const auto idx = std::upper_bound(sorted.begin(), sorted.end(), best) - sorted.begin();
            ++h[static_cast<std::size_t>(idx)];
        }
    };

    unsigned threads = mc.threads != 0 ? mc.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, batches));
    if (threads <= 1) {
        for (std::uint64_t b = 0; b < batches; ++b) {
            run_batch(b);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::uint64_t b = next++; b < batches; b = next++) {
                        run_batch(b);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
        for (auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    std::vector<std::uint64_t> counts(nt + 1, 0);
    for (const auto& h : hist) {
        for (std::size_t k = 0; k <= nt; ++k) {
            counts[k] += h[k];
        }
    }
    std::vector<McEstimate> out(nt);
    std::uint64_t cumulative = 0;
    const double n = static_cast<double>(mc.trials);
    for (std::size_t k = 0; k < nt; ++k) {
        cumulative += counts[k];
        const double p = static_cast<double>(cumulative) / n;
        McEstimate& e = out[order[k]];
        e.outage = p;
        e.std_error = std::sqrt(p * (1.0 - p) / n);
        e.trials = mc.trials;
        e.seed = mc.seed;
    }
    return out;
}

}  // namespace afrelay
