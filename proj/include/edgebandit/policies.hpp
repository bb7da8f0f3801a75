#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "edgebandit/arm_space.hpp"
#include "edgebandit/network.hpp"
#include "edgebandit/rng.hpp"

namespace edgebandit {

// Per-arm pull counts and cumulative average costs, plus the bookkeeping
// needed to sample unexplored arms in O(1). The explored set is exactly the
// set of arms with at least one pull.
class ArmStats {
public:
    explicit ArmStats(std::size_t num_arms);

    std::size_t num_arms() const { return pulls_.size(); }
    std::uint64_t pulls(ArmIndex arm) const { return pulls_[arm]; }

    /// Running average of observed costs; 0 until the arm has been pulled.
    double average_cost(ArmIndex arm) const { return avg_cost_[arm]; }

    /// Folds one observation into the running mean and moves the arm into
    /// the explored set on its first pull. Costs must be >= 0.
    void record(ArmIndex arm, double cost);

    std::size_t explored_count() const { return explored_.size(); }
    bool all_explored() const { return explored_.size() == pulls_.size(); }

    /// Explored arms in first-pull order.
    const std::vector<ArmIndex>& explored() const { return explored_; }

    /// Uniform draw from the unexplored set. Requires !all_explored().
    ArmIndex sample_unexplored(SeededSource& rng) const;

private:
    std::vector<std::uint64_t> pulls_;
    std::vector<double> avg_cost_;
    std::vector<ArmIndex> explored_;
    std::vector<ArmIndex> unexplored_;        // swap-remove pool
    std::vector<std::uint32_t> unexplored_pos_;  // arm -> slot in unexplored_
};

// Online estimate of the cost amplitude scaling the UCB1 confidence radius:
// the running range (max - min) of every observed cost, falling back to a
// configured prior until two observations exist.
class AmplitudeEstimate {
public:
    explicit AmplitudeEstimate(double prior = 1.0) : prior_(prior) {}

    void add(double cost);
    double value() const;
    std::uint64_t observations() const { return count_; }

private:
    double prior_;
    std::uint64_t count_ = 0;
    double min_cost_ = 0.0;
    double max_cost_ = 0.0;
};

// Sliding window of the last `window` task sizes per user, feeding the
// traffic-state detector.
class MemoryPool {
public:
    MemoryPool(std::size_t num_users, std::size_t window);

    void append(const SlotWorkload& workload);

    std::size_t num_users() const { return per_user_.size(); }
    std::size_t window() const { return window_; }
    std::size_t stored(std::size_t user) const { return per_user_[user].size(); }

    /// True once every user has at least two samples (the detector needs a
    /// spread to be meaningful).
    bool warmed_up() const;

    const std::deque<double>& samples(std::size_t user) const { return per_user_[user]; }

private:
    std::vector<std::deque<double>> per_user_;
    std::size_t window_;
};

/// Exploration-phase arm selection: uniform over the unexplored set until
/// the space is exhausted, then uniform over all arms. The caller must
/// observe the outcome afterwards for the without-replacement behavior.
ArmIndex explore_step(const ArmStats& stats, SeededSource& rng);

/// Epsilon-greedy selection: with probability epsilon a uniform unexplored
/// arm (uniform over all arms when none remain), otherwise the explored arm
/// with the lowest average cost, ties broken by lowest index. Throws
/// std::logic_error when nothing has been explored yet.
ArmIndex eps_greedy_choose(const ArmStats& stats, double epsilon, SeededSource& rng);

/// Confidence-adjusted cost estimate: avg - amplitude * sqrt(xi * ln(slot) /
/// (1 + pulls)). The scalar core of the UCB1 selection rule.
double ucb1_estimate(double average_cost, std::uint64_t pulls, double amplitude,
                     double xi, double slot);

/// Estimate for one arm of the stats table; unpulled arms use average 0,
/// which makes them look attractive since real costs are positive.
double ucb1_estimate(const ArmStats& stats, ArmIndex arm, double amplitude,
                     double xi, std::size_t slot);

/// Arm with the minimum estimate over the whole space, ties broken by
/// lowest index.
ArmIndex ucb1_choose(const ArmStats& stats, double amplitude, double xi,
                     std::size_t slot);

/// Average over users of the population variance of each user's window.
/// Windows may be partially filled (divisor = stored count); every user
/// needs at least one sample.
double traffic_variance(const MemoryPool& pool);

/// Binary traffic-state prediction: +1 (stable) when the variance is at or
/// below the threshold, -1 (unstable) above it.
int predict_state(double variance, double threshold);

/// Default stability threshold: 0.5 * window * mean(user means).
double default_threshold(std::span<const double> means, std::size_t window);

// ---------------------------------------------------------------------------

enum class PolicyKind { EpsGreedy, Ucb1, Atoa, Oracle };

struct PolicyConfig {
    PolicyKind kind = PolicyKind::Atoa;
    double epsilon = 0.01;
    double xi = 0.1;
    std::size_t window = 10;  // detector window D
    // Stability threshold; when unset the default_threshold formula is
    // applied to the traffic means at construction time.
    std::optional<double> threshold;
    double amplitude_prior = 1.0;

    void validate() const;
    bool operator==(const PolicyConfig&) const = default;
};

// Common selection/update surface of all policies. Slots are 1-based.
// `workload` carries the current slot's sizes for the clairvoyant oracle
// only; learning policies must not read it when choosing.
class Policy {
public:
    virtual ~Policy() = default;

    /// Exploration-phase selection (slots 1..S).
    virtual ArmIndex explore(std::size_t slot, const SlotWorkload& workload,
                             SeededSource& rng);

    /// Exploitation-phase selection (slots S+1..T).
    virtual ArmIndex choose(std::size_t slot, const SlotWorkload& workload,
                            SeededSource& rng) = 0;

    /// Folds the observed cost of the pulled arm into the policy state.
    virtual void observe(ArmIndex arm, double cost, std::size_t slot,
                         const SlotWorkload& workload);

    /// Stable/unstable prediction made by the most recent choose() call;
    /// empty for policies without a detector.
    virtual std::optional<int> predicted_state() const { return std::nullopt; }

    virtual std::string_view name() const = 0;

    const ArmStats& stats() const { return stats_; }
    ArmStats& stats() { return stats_; }

protected:
    explicit Policy(std::size_t num_arms) : stats_(num_arms) {}

    ArmStats stats_;
};

class EpsilonGreedyPolicy final : public Policy {
public:
    EpsilonGreedyPolicy(std::size_t num_arms, double epsilon);

    ArmIndex choose(std::size_t slot, const SlotWorkload& workload,
                    SeededSource& rng) override;
    std::string_view name() const override { return "eps_greedy"; }

private:
    double epsilon_;
};

class Ucb1Policy final : public Policy {
public:
    Ucb1Policy(std::size_t num_arms, double xi, double amplitude_prior);

    ArmIndex choose(std::size_t slot, const SlotWorkload& workload,
                    SeededSource& rng) override;
    void observe(ArmIndex arm, double cost, std::size_t slot,
                 const SlotWorkload& workload) override;
    std::string_view name() const override { return "ucb1"; }

    double amplitude() const { return amplitude_.value(); }

private:
    double xi_;
    AmplitudeEstimate amplitude_;
};

// Adaptive policy: predicts the traffic state from the memory pool's
// variance and delegates to the epsilon-greedy rule when stable, to the
// UCB1 rule when unstable. Both branches read and update the one shared
// ArmStats table, so pull counts reflect all slots regardless of branch.
class AtoaPolicy final : public Policy {
public:
    AtoaPolicy(std::size_t num_arms, std::size_t num_users,
               const PolicyConfig& config, double threshold);

    ArmIndex choose(std::size_t slot, const SlotWorkload& workload,
                    SeededSource& rng) override;
    void observe(ArmIndex arm, double cost, std::size_t slot,
                 const SlotWorkload& workload) override;
    std::optional<int> predicted_state() const override { return last_state_; }
    std::string_view name() const override { return "atoa"; }

    double threshold() const { return threshold_; }
    double amplitude() const { return amplitude_.value(); }
    const MemoryPool& pool() const { return pool_; }

private:
    double epsilon_;
    double xi_;
    double threshold_;
    AmplitudeEstimate amplitude_;
    MemoryPool pool_;
    std::optional<int> last_state_;
};

// Clairvoyant baseline: evaluates every arm on the current slot's workload
// and pulls the argmin. Used to lower-bound the learning policies.
class OraclePolicy final : public Policy {
public:
    OraclePolicy(const NetworkProfile& profile, const ArmSpace& space);

    ArmIndex explore(std::size_t slot, const SlotWorkload& workload,
                     SeededSource& rng) override;
    ArmIndex choose(std::size_t slot, const SlotWorkload& workload,
                    SeededSource& rng) override;
    std::string_view name() const override { return "oracle"; }

private:
    const NetworkProfile* profile_;
    const ArmSpace* space_;
};

/// Brute-force argmin of system_cost over the whole space, lowest index on
/// ties.
ArmIndex oracle_choose(const NetworkProfile& profile, const SlotWorkload& workload,
                       const ArmSpace& space);

// Per-user decomposition of the slot optimum: each user independently picks
// its cheapest action. Its cost equals the joint brute-force optimum because
// servers are uncontended.
struct DecomposedOptimum {
    JointArm arm;
    double cost = 0.0;
};

DecomposedOptimum decomposed_optimum(const NetworkProfile& profile,
                                     const SlotWorkload& workload);

/// Builds the configured policy. `threshold` resolution: explicit value, or
/// the default_threshold formula over `means`.
std::unique_ptr<Policy> make_policy(const PolicyConfig& config, const ArmSpace& space,
                                    const NetworkProfile& profile,
                                    std::span<const double> means);

std::string_view to_string(PolicyKind kind);

}  // namespace edgebandit
