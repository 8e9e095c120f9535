// SPDX-License-Identifier: Apache-2.0
#include "walklab/local_time.hpp"

#include <cmath>
#include <stdexcept>

namespace walklab {

std::uint64_t stopping_distance(const WalkParams& params, double tolerance) {
    if (!(tolerance > 0.0) || !(tolerance < 1.0)) {
        throw std::invalid_argument("tolerance must lie in (0, 1)");
    }
    const double h = params.q() / params.p;
    return static_cast<std::uint64_t>(std::ceil(std::log(tolerance) / std::log(h)));
}

TotalLocalTimeSample sample_total_local_time(const WalkParams& params, std::uint64_t seed,
                                             std::uint64_t stream_id, std::int64_t z,
                                             double tolerance, std::uint64_t step_cap) {
    const std::int64_t sites[1] = {z};
    VisitCountsSample joint = sample_visit_counts(params, seed, stream_id, sites, tolerance, step_cap);
    TotalLocalTimeSample out;
    out.site = z;
    out.count = joint.counts[0];
    out.stop_position = joint.stop_position;
    out.steps = joint.steps;
    out.bias_bound = joint.bias_bound;
    return out;
}

VisitCountsSample sample_visit_counts(const WalkParams& params, std::uint64_t seed,
                                      std::uint64_t stream_id, std::span<const std::int64_t> sites,
                                      double tolerance, std::uint64_t step_cap) {
    validate(params);
    if (sites.empty()) throw std::invalid_argument("sample_visit_counts: no sites given");
    const std::uint64_t dstar = stopping_distance(params, tolerance);
    std::int64_t top = sites[0];
    for (std::int64_t z : sites) top = std::max(top, z);
    const std::int64_t stop_at = top + static_cast<std::int64_t>(dstar);

    VisitCountsSample out;
    out.counts.assign(sites.size(), 0);
    const double h = params.q() / params.p;
    out.bias_bound = std::pow(h, static_cast<double>(dstar));

    StepStream stream(params, seed, stream_id);
    while (stream.position() < stop_at) {
        if (stream.clock() >= step_cap) {
            throw std::runtime_error("sample_visit_counts: step cap exceeded");
        }
        stream.advance(params);
        for (std::size_t i = 0; i < sites.size(); ++i) {
            if (stream.position() == sites[i]) ++out.counts[i];
        }
    }
    out.stop_position = stream.position();
    out.steps = stream.clock();
    return out;
}

}  // namespace walklab
