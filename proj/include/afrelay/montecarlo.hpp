#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "afrelay/endtoend.hpp"

namespace afrelay {

struct McSpec
{
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 1;
    /// Trials per independently seeded batch.
    std::uint64_t batch = 16384;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;

    void validate() const;
    bool operator==(const McSpec&) const = default;
};

struct McEstimate
{
    double outage = 0.0;
    double std_error = 0.0;  ///< sqrt(p (1 - p) / n)
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

using McRng = std::mt19937_64;

/// Unit-mean Gamma(m, 1/m) power gain.
double sample_fading_power(int m, McRng& rng);

double sample_interference(const RandomField& field, McRng& rng);
double sample_interference(const FixedField& field, McRng& rng);
/// Aggregate interference of a hop: its field when it has one, else its GG law.
double sample_interference(const HopConfig& hop, McRng& rng);

double sample_hop_sinr(const HopConfig& hop, McRng& rng);

/// Relay-selection outage at every threshold from common trials. Results depend
/// only on (seed, trials, batch, config), not on the thread count.
std::vector<McEstimate> estimate_outage(const SystemConfig& system, const McSpec& mc);

}  // namespace afrelay
