#include "edgebandit/engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace edgebandit {

namespace {

// Stream tags of the two per-run random sources. The workload stream depends
// only on the seed, so every policy under a given seed sees the same task
// sizes (common random numbers).
constexpr std::uint64_t kWorkloadStream = 0;
constexpr std::uint64_t kPolicyStream = 1;

std::string override_label(const std::map<std::string, std::string>& deltas) {
    if (deltas.empty()) {
        return "(base)";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, value] : deltas) {
        if (!first) {
            out << ',';
        }
        out << key << '=' << value;
        first = false;
    }
    return out.str();
}

}  // namespace

void ExperimentConfig::validate() const {
    profile.validate();
    pattern.validate();
    policy.validate();
    if (pattern.num_users() != profile.num_users()) {
        throw std::invalid_argument(
            "pattern.means: must have one entry per user in the profile");
    }
    if (horizon < 2) {
        throw std::invalid_argument("horizon: must be >= 2");
    }
    if (explore_slots < 1 || explore_slots >= horizon) {
        throw std::invalid_argument(
            "explore_slots: must satisfy 1 <= explore_slots < horizon");
    }
    if (!(discount > 0.0 && discount <= 1.0)) {
        throw std::invalid_argument("discount: must be within (0, 1]");
    }
    if (arm_cap < 1) {
        throw std::invalid_argument("arm_cap: must be >= 1");
    }
}

RunResult run(const ExperimentConfig& config) {
    config.validate();
    const NetworkProfile& profile = config.profile;
    const ArmSpace space(profile.num_users(), profile.num_servers(), config.arm_cap);
    const auto policy =
        make_policy(config.policy, space, profile, config.pattern.means);

    SeededSource workload_rng(config.seed, kWorkloadStream);
    SeededSource policy_rng(config.seed, kPolicyStream);

    RunResult result;
    result.records.reserve(config.horizon);

    double total = 0.0;
    double discounted = 0.0;
    double stable_sum = 0.0;
    double unstable_sum = 0.0;
    std::size_t stable_count = 0;
    std::size_t unstable_count = 0;
    double window_sum = 0.0;
    double oracle_gap_sum = 0.0;
    double oracle_gap_max = 0.0;
    std::size_t oracle_violations = 0;

    for (std::size_t t = 1; t <= config.horizon; ++t) {
        const SlotWorkload workload = draw_slot(config.pattern, workload_rng, t);
        const bool exploring = t <= config.explore_slots;
        const ArmIndex arm = exploring
                                 ? policy->explore(t, workload, policy_rng)
                                 : policy->choose(t, workload, policy_rng);
        const double cost = system_cost(profile, workload, space.arm(arm));
        policy->observe(arm, cost, t, workload);

        total += cost;
        discounted = discounted * config.discount + cost;

        const Phase phase = phase_of(config.pattern, t);
        if (phase == Phase::Stable) {
            stable_sum += cost;
            ++stable_count;
        } else {
            unstable_sum += cost;
            ++unstable_count;
        }

        double avg;
        if (config.average_window == 0) {
            avg = total / static_cast<double>(t);
        } else {
            window_sum += cost;
            if (t > config.average_window) {
                window_sum -= result.records[t - 1 - config.average_window].cost;
            }
            avg = window_sum / static_cast<double>(std::min(t, config.average_window));
        }

        SlotRecord record;
        record.slot = t;
        record.explore = exploring;
        record.arm = arm;
        record.cost = cost;
        record.avg_cost = avg;
        if (!exploring) {
            record.predicted_state = policy->predicted_state();
        }
        record.true_phase = phase;
        if (config.oracle_trace) {
            const double oracle_cost = decomposed_optimum(profile, workload).cost;
            record.oracle_cost = oracle_cost;
            const double gap = cost - oracle_cost;
            oracle_gap_sum += gap;
            oracle_gap_max = std::max(oracle_gap_max, gap);
            if (gap < 0.0) {
                ++oracle_violations;
            }
        }
        result.records.push_back(std::move(record));
    }

    RunSummary& summary = result.summary;
    summary.slots = config.horizon;
    summary.final_avg_cost = result.records.back().avg_cost;
    summary.total_cost = total;
    summary.discounted_cost = discounted;
    summary.stable_slots = stable_count;
    summary.stable_avg_cost =
        stable_count > 0 ? stable_sum / static_cast<double>(stable_count) : 0.0;
    summary.unstable_slots = unstable_count;
    summary.unstable_avg_cost =
        unstable_count > 0 ? unstable_sum / static_cast<double>(unstable_count) : 0.0;
    if (config.policy.kind == PolicyKind::Atoa) {
        summary.effective_threshold =
            config.policy.threshold
                ? *config.policy.threshold
                : default_threshold(config.pattern.means, config.policy.window);
    }
    if (config.oracle_trace) {
        OracleGapStats gap;
        gap.mean_gap = oracle_gap_sum / static_cast<double>(config.horizon);
        gap.max_gap = oracle_gap_max;
        gap.violations = oracle_violations;
        summary.oracle = gap;
    }
    return result;
}

std::vector<SweepEntry> run_sweep(const ExperimentConfig& base,
                                  std::span<const SweepOverride> overrides,
                                  std::span<const std::uint64_t> seeds) {
    if (seeds.empty()) {
        throw std::invalid_argument("run_sweep: need at least one seed");
    }
    static const SweepOverride kIdentity{};
    std::vector<const SweepOverride*> entries;
    if (overrides.empty()) {
        entries.push_back(&kIdentity);
    } else {
        for (const SweepOverride& o : overrides) {
            entries.push_back(&o);
        }
    }

    std::vector<SweepEntry> results;
    results.reserve(entries.size() * seeds.size());
    for (const SweepOverride* o : entries) {
        for (const std::uint64_t seed : seeds) {
            ExperimentConfig config = base;
            if (o->apply) {
                o->apply(config);
            }
            config.seed = seed;
            try {
                RunResult run_result = run(config);
                results.push_back(SweepEntry{o->deltas, seed,
                                             std::move(run_result.summary),
                                             std::move(config)});
            } catch (const std::exception& e) {
                throw std::runtime_error("sweep entry [" + override_label(o->deltas) +
                                         ", seed=" + std::to_string(seed) +
                                         "] failed: " + e.what());
            }
        }
    }
    return results;
}

}  // namespace edgebandit
