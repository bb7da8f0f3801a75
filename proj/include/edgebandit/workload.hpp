#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "edgebandit/network.hpp"
#include "edgebandit/rng.hpp"

namespace edgebandit {

enum class TrafficMode { Stable, Unstable, Tidal };
enum class Phase { Stable, Unstable };

// Per-user traffic description: normal task sizes whose spread is a fixed
// fraction of the mean, with a tight (stable) and a wide (unstable) regime.
// Tidal mode alternates between the two regimes.
struct TrafficPattern {
    std::vector<double> means;
    double stable_sigma_factor = 0.1;
    double unstable_sigma_factor = 0.5;
    TrafficMode mode = TrafficMode::Stable;
    std::size_t stable_period = 150;    // slots per stable stretch (tidal)
    std::size_t unstable_period = 150;  // slots per unstable stretch (tidal)
    // When set, the factor-derived value is read as a variance instead of a
    // standard deviation (sensitivity toggle; off by default).
    bool sigma_is_variance = false;

    std::size_t num_users() const { return means.size(); }
    void validate() const;

    bool operator==(const TrafficPattern&) const = default;
};

/// Generator phase of a 1-based slot. Tidal traffic starts stable at slot 1
/// and repeats with period stable_period + unstable_period; the fixed modes
/// are constant.
Phase phase_of(const TrafficPattern& pattern, std::size_t slot);

/// Draws one task size per user: Normal(mean, sigma_phase) clamped at 0.
/// Consumes exactly one normal draw per user, in user order, so the stream
/// stays aligned whatever the values are.
SlotWorkload draw_slot(const TrafficPattern& pattern, SeededSource& source,
                       std::size_t slot);

std::string_view to_string(Phase phase);
std::string_view to_string(TrafficMode mode);

}  // namespace edgebandit
