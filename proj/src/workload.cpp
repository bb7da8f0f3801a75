#include "edgebandit/workload.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace edgebandit {

void TrafficPattern::validate() const {
    if (means.empty()) {
        throw std::invalid_argument("pattern.means: must be nonempty");
    }
    for (std::size_t i = 0; i < means.size(); ++i) {
        if (!(means[i] > 0.0)) {
            throw std::invalid_argument("pattern.means[" + std::to_string(i) +
                                        "]: must be strictly positive");
        }
    }
    if (!(stable_sigma_factor >= 0.0)) {
        throw std::invalid_argument("pattern.stable_sigma_factor: must be >= 0");
    }
    if (!(unstable_sigma_factor >= 0.0)) {
        throw std::invalid_argument("pattern.unstable_sigma_factor: must be >= 0");
    }
    if (stable_period < 1) {
        throw std::invalid_argument("pattern.stable_period: must be >= 1");
    }
    if (unstable_period < 1) {
        throw std::invalid_argument("pattern.unstable_period: must be >= 1");
    }
}

Phase phase_of(const TrafficPattern& pattern, std::size_t slot) {
    if (slot < 1) {
        throw std::invalid_argument("phase_of: slots are 1-based");
    }
    switch (pattern.mode) {
        case TrafficMode::Stable:
            return Phase::Stable;
        case TrafficMode::Unstable:
            return Phase::Unstable;
        case TrafficMode::Tidal: {
            const std::size_t period = pattern.stable_period + pattern.unstable_period;
            const std::size_t pos = (slot - 1) % period;
            return pos < pattern.stable_period ? Phase::Stable : Phase::Unstable;
        }
    }
    throw std::logic_error("phase_of: unreachable");
}

SlotWorkload draw_slot(const TrafficPattern& pattern, SeededSource& source,
                       std::size_t slot) {
    const Phase phase = phase_of(pattern, slot);
    const double factor = phase == Phase::Stable ? pattern.stable_sigma_factor
                                                 : pattern.unstable_sigma_factor;
    SlotWorkload workload;
    workload.slot = slot;
    workload.sizes.reserve(pattern.means.size());
    for (const double mean : pattern.means) {
        const double scale = factor * mean;
        const double sigma = pattern.sigma_is_variance ? std::sqrt(scale) : scale;
        // Clamp instead of redraw: keeps one draw per user so the stream
        // stays aligned across configurations.
        workload.sizes.push_back(std::max(0.0, mean + sigma * source.next_normal()));
    }
    return workload;
}

std::string_view to_string(Phase phase) {
    return phase == Phase::Stable ? "stable" : "unstable";
}

std::string_view to_string(TrafficMode mode) {
    switch (mode) {
        case TrafficMode::Stable:
            return "stable";
        case TrafficMode::Unstable:
            return "unstable";
        case TrafficMode::Tidal:
            return "tidal";
    }
    return "unknown";
}

}  // namespace edgebandit
