#include "flow/randomness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace flow {

std::uint64_t draw_bits(const RandomChannel& channel, std::uint64_t k) {
    std::uint64_t h = mix64(channel.seed);
    h = mix64(h ^ channel.user_id);
    h = mix64(h ^ static_cast<std::uint64_t>(channel.day_index));
    h = mix64(h ^ channel.tag.hash);
    return mix64(h ^ k);
}

double uniform(const RandomChannel& channel, std::uint64_t k) {
    return static_cast<double>(draw_bits(channel, k) >> 11) * 0x1.0p-53;
}

double normal(const RandomChannel& channel, std::uint64_t k, double mean, double sd) {
    if (sd == 0.0) {
        return mean;
    }
    // 1 - u lies in (0, 1], keeping the log finite.
    const double u1 = 1.0 - uniform(channel, 2 * k);
    const double u2 = uniform(channel, 2 * k + 1);
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    return mean + sd * z;
}

bool bernoulli(const RandomChannel& channel, std::uint64_t k, double p) {
    if (p <= 0.0) {
        return false;
    }
    if (p >= 1.0) {
        return true;
    }
    return uniform(channel, k) < p;
}

std::size_t categorical(const RandomChannel& channel, std::uint64_t k, std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("categorical: weights must be finite and nonnegative");
        }
        total += w;
    }
    if (weights.empty() || total <= 0.0) {
        throw std::invalid_argument("categorical: weights must have a positive sum");
    }
    const double target = uniform(channel, k) * total;
    double cumulative = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) {
            continue;
        }
        last_positive = i;
        cumulative += weights[i];
        if (target < cumulative) {
            return i;
        }
    }
    return last_positive;
}

int uniform_int(const RandomChannel& channel, std::uint64_t k, int lo, int hi) {
    if (hi < lo) {
        throw std::invalid_argument("uniform_int: empty range");
    }
    const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo + 1);
    const auto offset = static_cast<std::int64_t>(uniform(channel, k) * static_cast<double>(span));
    return static_cast<int>(lo + std::min<std::int64_t>(offset, static_cast<std::int64_t>(span) - 1));
}

unsigned poisson(const RandomChannel& channel, std::uint64_t k, double lambda) {
    if (!(lambda > 0.0)) {
        return 0;
    }
    if (lambda > 500.0) {
        const double x = normal(channel, k, lambda, std::sqrt(lambda));
        return x <= 0.0 ? 0U : static_cast<unsigned>(std::lround(x));
    }
    const double u = uniform(channel, k);
    double pmf = std::exp(-lambda);
    double cdf = pmf;
    unsigned n = 0;
    // The tail beyond lambda + 40 sqrt(lambda) is below double resolution.
    const auto limit = static_cast<unsigned>(lambda + 40.0 * std::sqrt(lambda) + 40.0);
    while (u >= cdf && n < limit) {
        ++n;
        pmf *= lambda / n;
        cdf += pmf;
    }
    return n;
}

}  // namespace flow
