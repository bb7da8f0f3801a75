#include "edgebandit/policies.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace edgebandit {

namespace {

constexpr std::uint32_t kExploredSentinel = std::numeric_limits<std::uint32_t>::max();

}  // namespace

ArmStats::ArmStats(std::size_t num_arms)
    : pulls_(num_arms, 0),
      avg_cost_(num_arms, 0.0),
      unexplored_(num_arms),
      unexplored_pos_(num_arms) {
    if (num_arms == 0) {
        throw std::invalid_argument("ArmStats: need at least one arm");
    }
    std::iota(unexplored_.begin(), unexplored_.end(), ArmIndex{0});
    std::iota(unexplored_pos_.begin(), unexplored_pos_.end(), std::uint32_t{0});
}

void ArmStats::record(ArmIndex arm, double cost) {
    if (!(cost >= 0.0)) {
        throw std::invalid_argument("ArmStats::record: cost must be >= 0");
    }
    if (pulls_[arm] == 0) {
        // First pull: swap-remove from the unexplored pool.
        const std::uint32_t pos = unexplored_pos_[arm];
        const ArmIndex last = unexplored_.back();
        unexplored_[pos] = last;
        unexplored_pos_[last] = pos;
        unexplored_.pop_back();
        unexplored_pos_[arm] = kExploredSentinel;
        explored_.push_back(arm);
    }
    ++pulls_[arm];
    avg_cost_[arm] += (cost - avg_cost_[arm]) / static_cast<double>(pulls_[arm]);
}

ArmIndex ArmStats::sample_unexplored(SeededSource& rng) const {
    assert(!unexplored_.empty());
    return unexplored_[rng.next_below(unexplored_.size())];
}

void AmplitudeEstimate::add(double cost) {
    if (count_ == 0) {
        min_cost_ = max_cost_ = cost;
    } else {
        min_cost_ = std::min(min_cost_, cost);
        max_cost_ = std::max(max_cost_, cost);
    }
    ++count_;
}

double AmplitudeEstimate::value() const {
    return count_ < 2 ? prior_ : max_cost_ - min_cost_;
}

MemoryPool::MemoryPool(std::size_t num_users, std::size_t window)
    : per_user_(num_users), window_(window) {
    if (num_users == 0 || window == 0) {
        throw std::invalid_argument("MemoryPool: need >= 1 user and a window >= 1");
    }
}

void MemoryPool::append(const SlotWorkload& workload) {
    if (workload.num_users() != per_user_.size()) {
        throw std::invalid_argument("MemoryPool::append: user count mismatch");
    }
    for (std::size_t i = 0; i < per_user_.size(); ++i) {
        auto& window = per_user_[i];
        window.push_back(workload.sizes[i]);
        if (window.size() > window_) {
            window.pop_front();
        }
    }
}

bool MemoryPool::warmed_up() const {
    return std::all_of(per_user_.begin(), per_user_.end(),
                       [](const auto& w) { return w.size() >= 2; });
}

ArmIndex explore_step(const ArmStats& stats, SeededSource& rng) {
    if (!stats.all_explored()) {
        return stats.sample_unexplored(rng);
    }
    return static_cast<ArmIndex>(rng.next_below(stats.num_arms()));
}

namespace {

ArmIndex best_explored(const ArmStats& stats) {
    const auto& explored = stats.explored();
    ArmIndex best = explored.front();
    double best_cost = stats.average_cost(best);
    for (const ArmIndex arm : explored) {
        const double cost = stats.average_cost(arm);
        if (cost < best_cost || (cost == best_cost && arm < best)) {
            best = arm;
            best_cost = cost;
        }
    }
    return best;
}

}  // namespace

ArmIndex eps_greedy_choose(const ArmStats& stats, double epsilon, SeededSource& rng) {
    if (stats.explored_count() == 0) {
        throw std::logic_error(
            "eps_greedy_choose: no explored arms at exploitation time; the "
            "exploration phase never ran");
    }
    // The coin is drawn unconditionally (also for epsilon 0 or 1) so the
    // stream consumption per slot does not depend on the parameter value.
    if (rng.next_unit() < epsilon) {
        if (!stats.all_explored()) {
            return stats.sample_unexplored(rng);
        }
        return static_cast<ArmIndex>(rng.next_below(stats.num_arms()));
    }
    return best_explored(stats);
}

double ucb1_estimate(double average_cost, std::uint64_t pulls, double amplitude,
                     double xi, double slot) {
    return average_cost -
           amplitude * std::sqrt(xi * std::log(slot) / (1.0 + static_cast<double>(pulls)));
}

double ucb1_estimate(const ArmStats& stats, ArmIndex arm, double amplitude,
                     double xi, std::size_t slot) {
    const std::uint64_t pulls = stats.pulls(arm);
    const double avg = pulls > 0 ? stats.average_cost(arm) : 0.0;
    return ucb1_estimate(avg, pulls, amplitude, xi, static_cast<double>(slot));
}

ArmIndex ucb1_choose(const ArmStats& stats, double amplitude, double xi,
                     std::size_t slot) {
    ArmIndex best = 0;
    double best_estimate = ucb1_estimate(stats, 0, amplitude, xi, slot);
    for (std::size_t n = 1; n < stats.num_arms(); ++n) {
        const ArmIndex arm = static_cast<ArmIndex>(n);
        const double estimate = ucb1_estimate(stats, arm, amplitude, xi, slot);
        if (estimate < best_estimate) {
            best = arm;
            best_estimate = estimate;
        }
    }
    return best;
}

double traffic_variance(const MemoryPool& pool) {
    double total = 0.0;
    for (std::size_t i = 0; i < pool.num_users(); ++i) {
        const auto& samples = pool.samples(i);
        if (samples.empty()) {
            throw std::logic_error("traffic_variance: empty window for user " +
                                   std::to_string(i));
        }
        const double count = static_cast<double>(samples.size());
        double mean = 0.0;
        for (const double s : samples) {
            mean += s;
        }
        mean /= count;
        double squares = 0.0;
        for (const double s : samples) {
            squares += (s - mean) * (s - mean);
        }
        total += squares / count;
    }
    return total / static_cast<double>(pool.num_users());
}

int predict_state(double variance, double threshold) {
    return variance <= threshold ? 1 : -1;
}

double default_threshold(std::span<const double> means, std::size_t window) {
    if (means.empty() || window == 0) {
        throw std::invalid_argument("default_threshold: need means and a window >= 1");
    }
    const double sum = std::accumulate(means.begin(), means.end(), 0.0);
    return 0.5 * static_cast<double>(window) * sum / static_cast<double>(means.size());
}

void PolicyConfig::validate() const {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("policy.epsilon: must be within [0, 1]");
    }
    if (!(xi > 0.0)) {
        throw std::invalid_argument("policy.xi: must be strictly positive");
    }
    if (window < 1) {
        throw std::invalid_argument("policy.window: must be >= 1");
    }
    if (threshold && !(*threshold >= 0.0)) {
        throw std::invalid_argument("policy.threshold: must be >= 0");
    }
    if (!(amplitude_prior >= 0.0)) {
        throw std::invalid_argument("policy.amplitude_prior: must be >= 0");
    }
}

ArmIndex Policy::explore(std::size_t /*slot*/, const SlotWorkload& /*workload*/,
                         SeededSource& rng) {
    return explore_step(stats_, rng);
}

void Policy::observe(ArmIndex arm, double cost, std::size_t /*slot*/,
                     const SlotWorkload& /*workload*/) {
    stats_.record(arm, cost);
}

EpsilonGreedyPolicy::EpsilonGreedyPolicy(std::size_t num_arms, double epsilon)
    : Policy(num_arms), epsilon_(epsilon) {}

ArmIndex EpsilonGreedyPolicy::choose(std::size_t /*slot*/,
                                     const SlotWorkload& /*workload*/,
                                     SeededSource& rng) {
    return eps_greedy_choose(stats_, epsilon_, rng);
}

Ucb1Policy::Ucb1Policy(std::size_t num_arms, double xi, double amplitude_prior)
    : Policy(num_arms), xi_(xi), amplitude_(amplitude_prior) {}

ArmIndex Ucb1Policy::choose(std::size_t slot, const SlotWorkload& /*workload*/,
                            SeededSource& /*rng*/) {
    return ucb1_choose(stats_, amplitude_.value(), xi_, slot);
}

void Ucb1Policy::observe(ArmIndex arm, double cost, std::size_t slot,
                         const SlotWorkload& workload) {
    Policy::observe(arm, cost, slot, workload);
    amplitude_.add(cost);
}

AtoaPolicy::AtoaPolicy(std::size_t num_arms, std::size_t num_users,
                       const PolicyConfig& config, double threshold)
    : Policy(num_arms),
      epsilon_(config.epsilon),
      xi_(config.xi),
      threshold_(threshold),
      amplitude_(config.amplitude_prior),
      pool_(num_users, config.window) {}

ArmIndex AtoaPolicy::choose(std::size_t slot, const SlotWorkload& /*workload*/,
                            SeededSource& rng) {
    // Too few samples to judge the spread: treat the traffic as stable.
    int state = 1;
    if (pool_.warmed_up()) {
        state = predict_state(traffic_variance(pool_), threshold_);
    }
    last_state_ = state;
    if (state > 0) {
        return eps_greedy_choose(stats_, epsilon_, rng);
    }
    return ucb1_choose(stats_, amplitude_.value(), xi_, slot);
}

void AtoaPolicy::observe(ArmIndex arm, double cost, std::size_t slot,
                         const SlotWorkload& workload) {
    Policy::observe(arm, cost, slot, workload);
    amplitude_.add(cost);
    // Pool update happens strictly after choosing, so slot t's sizes are
    // never visible to slot t's own prediction.
    pool_.append(workload);
}

OraclePolicy::OraclePolicy(const NetworkProfile& profile, const ArmSpace& space)
    : Policy(space.size()), profile_(&profile), space_(&space) {}

ArmIndex OraclePolicy::explore(std::size_t slot, const SlotWorkload& workload,
                               SeededSource& rng) {
    return choose(slot, workload, rng);
}

ArmIndex OraclePolicy::choose(std::size_t /*slot*/, const SlotWorkload& workload,
                              SeededSource& /*rng*/) {
    return oracle_choose(*profile_, workload, *space_);
}

ArmIndex oracle_choose(const NetworkProfile& profile, const SlotWorkload& workload,
                       const ArmSpace& space) {
    ArmIndex best = 0;
    double best_cost = system_cost(profile, workload, space.arm(0));
    for (std::size_t n = 1; n < space.size(); ++n) {
        const ArmIndex arm = static_cast<ArmIndex>(n);
        const double cost = system_cost(profile, workload, space.arm(arm));
        if (cost < best_cost) {
            best = arm;
            best_cost = cost;
        }
    }
    return best;
}

DecomposedOptimum decomposed_optimum(const NetworkProfile& profile,
                                     const SlotWorkload& workload) {
    if (workload.num_users() != profile.num_users()) {
        throw std::invalid_argument("decomposed_optimum: dimension mismatch");
    }
    DecomposedOptimum result;
    result.arm.entries.resize(profile.num_users(), kLocalAction);
    for (std::size_t i = 0; i < profile.num_users(); ++i) {
        const double size = workload.sizes[i];
        double best = local_latency(profile, i, size);
        // Offloading is only an option for the part exceeding the local cap.
        if (size > local_size_cap(profile, i)) {
            for (std::size_t j = 0; j < profile.num_servers(); ++j) {
                const double latency = offload_latency(profile, i, j, size);
                if (latency < best) {
                    best = latency;
                    result.arm.entries[i] = static_cast<int>(j);
                }
            }
        }
        result.cost = std::max(result.cost, best);
    }
    return result;
}

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, const ArmSpace& space,
                                    const NetworkProfile& profile,
                                    std::span<const double> means) {
    config.validate();
    switch (config.kind) {
        case PolicyKind::EpsGreedy:
            return std::make_unique<EpsilonGreedyPolicy>(space.size(), config.epsilon);
        case PolicyKind::Ucb1:
            return std::make_unique<Ucb1Policy>(space.size(), config.xi,
                                                config.amplitude_prior);
        case PolicyKind::Atoa: {
            const double threshold =
                config.threshold ? *config.threshold
                                 : default_threshold(means, config.window);
            return std::make_unique<AtoaPolicy>(space.size(), profile.num_users(),
                                                config, threshold);
        }
        case PolicyKind::Oracle:
            return std::make_unique<OraclePolicy>(profile, space);
    }
    throw std::logic_error("make_policy: unreachable");
}

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::EpsGreedy:
            return "eps_greedy";
        case PolicyKind::Ucb1:
            return "ucb1";
        case PolicyKind::Atoa:
            return "atoa";
        case PolicyKind::Oracle:
            return "oracle";
    }
    return "unknown";
}

}  // namespace edgebandit
