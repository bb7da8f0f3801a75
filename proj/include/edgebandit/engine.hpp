#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "edgebandit/arm_space.hpp"
#include "edgebandit/network.hpp"
#include "edgebandit/policies.hpp"
#include "edgebandit/workload.hpp"

namespace edgebandit {

// Everything one simulation run needs. Workload sizes come from a stream
// keyed only by the seed, so different policies under the same seed face
// identical task sequences; policy-internal randomness uses a second stream.
struct ExperimentConfig {
    NetworkProfile profile;
    TrafficPattern pattern;
    PolicyConfig policy;
    std::size_t horizon = 20000;        // T
    std::size_t explore_slots = 10000;  // S, strictly below T
    double discount = 1.0;              // gamma in (0, 1]
    std::uint64_t seed = 1;
    std::uint64_t arm_cap = ArmSpace::kDefaultCap;
    bool oracle_trace = false;      // also compute the per-slot oracle cost
    std::size_t average_window = 0;  // 0 = running mean from slot 1

    void validate() const;
    bool operator==(const ExperimentConfig&) const = default;
};

struct SlotRecord {
    std::size_t slot = 0;
    bool explore = false;
    ArmIndex arm = 0;
    double cost = 0.0;
    double avg_cost = 0.0;
    std::optional<int> predicted_state;
    Phase true_phase = Phase::Stable;
    std::optional<double> oracle_cost;

    bool operator==(const SlotRecord&) const = default;
};

struct OracleGapStats {
    double mean_gap = 0.0;
    double max_gap = 0.0;
    std::size_t violations = 0;  // slots where the oracle cost exceeded the policy's

    bool operator==(const OracleGapStats&) const = default;
};

struct RunSummary {
    std::size_t slots = 0;
    double final_avg_cost = 0.0;
    double total_cost = 0.0;
    double discounted_cost = 0.0;  // sum of gamma^(T-t) * cost(t)
    std::size_t stable_slots = 0;
    double stable_avg_cost = 0.0;
    std::size_t unstable_slots = 0;
    double unstable_avg_cost = 0.0;
    std::optional<double> effective_threshold;  // resolved detector threshold
    std::optional<OracleGapStats> oracle;

    bool operator==(const RunSummary&) const = default;
};

struct RunResult {
    std::vector<SlotRecord> records;
    RunSummary summary;
};

/// Drives one seeded T-slot simulation: exploration for slots 1..S, then
/// exploration-exploitation; each slot draws the workload first, lets the
/// policy pick an arm, computes the system cost and feeds it back.
RunResult run(const ExperimentConfig& config);

// One sweep entry: a labeled set of config deltas applied on top of the
// base configuration.
struct SweepOverride {
    std::map<std::string, std::string> deltas;  // reporting key
    std::function<void(ExperimentConfig&)> apply;
};

struct SweepEntry {
    std::map<std::string, std::string> deltas;
    std::uint64_t seed = 0;
    RunSummary summary;
    ExperimentConfig config;  // effective configuration of this entry
};

/// Cartesian product of overrides x seeds, each an independent run. An
/// empty override list means one unmodified configuration. Failures abort
/// the sweep with the offending (override, seed) named.
std::vector<SweepEntry> run_sweep(const ExperimentConfig& base,
                                  std::span<const SweepOverride> overrides,
                                  std::span<const std::uint64_t> seeds);

}  // namespace edgebandit
