#include "edgebandit/network.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

#include "edgebandit/arm_space.hpp"

namespace edgebandit {

namespace {

void require_positive(double value, const std::string& field) {
    if (!(value > 0.0)) {
        throw std::invalid_argument(field + ": must be strictly positive");
    }
}

}  // namespace

void NetworkProfile::validate() const {
    if (user_capacities.empty()) {
        throw std::invalid_argument("profile.user_capacities: must be nonempty");
    }
    if (server_capacities.empty()) {
        throw std::invalid_argument("profile.server_capacities: must be nonempty");
    }
    if (num_users() < num_servers() + 1) {
        throw std::invalid_argument(
            "profile.user_capacities: need more users than servers (I >= J+1)");
    }
    for (std::size_t i = 0; i < user_capacities.size(); ++i) {
        require_positive(user_capacities[i],
                         "profile.user_capacities[" + std::to_string(i) + "]");
    }
    for (std::size_t j = 0; j < server_capacities.size(); ++j) {
        require_positive(server_capacities[j],
                         "profile.server_capacities[" + std::to_string(j) + "]");
    }
    if (link_capacity.size() != num_users()) {
        throw std::invalid_argument("profile.link_capacity: must have one row per user");
    }
    for (std::size_t i = 0; i < link_capacity.size(); ++i) {
        if (link_capacity[i].size() != num_servers()) {
            throw std::invalid_argument("profile.link_capacity[" + std::to_string(i) +
                                        "]: must have one entry per server");
        }
        for (std::size_t j = 0; j < link_capacity[i].size(); ++j) {
            require_positive(link_capacity[i][j], "profile.link_capacity[" +
                                                      std::to_string(i) + "][" +
                                                      std::to_string(j) + "]");
        }
    }
    require_positive(cycles_per_bit, "profile.cycles_per_bit");
    require_positive(deadline, "profile.deadline");
}

void SlotWorkload::validate() const {
    if (slot < 1) {
        throw std::invalid_argument("workload.slot: slots are 1-based");
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (!(sizes[i] >= 0.0)) {
            throw std::invalid_argument("workload.sizes[" + std::to_string(i) +
                                        "]: must be >= 0");
        }
    }
}

double local_size_cap(const NetworkProfile& profile, std::size_t user) {
    assert(user < profile.num_users());
    return profile.deadline * profile.user_capacities[user] / profile.cycles_per_bit;
}

double offload_size(const NetworkProfile& profile, std::size_t user, double size) {
    return std::max(0.0, size - local_size_cap(profile, user));
}

double local_latency(const NetworkProfile& profile, std::size_t user, double size) {
    assert(user < profile.num_users());
    return profile.cycles_per_bit * size / profile.user_capacities[user];
}

double offload_latency(const NetworkProfile& profile, std::size_t user,
                       std::size_t server, double size) {
    assert(user < profile.num_users());
    assert(server < profile.num_servers());
    const double overflow = offload_size(profile, user, size);
    if (overflow <= 0.0) {
        throw std::invalid_argument(
            "offload_latency: task fits locally; the resolution step must have "
            "routed it to local execution");
    }
    return profile.deadline + overflow / profile.link_capacity[user][server] +
           profile.cycles_per_bit * overflow / profile.server_capacities[server];
}

double system_cost(const NetworkProfile& profile, const SlotWorkload& workload,
                   const JointArm& arm) {
    const std::vector<int> actions = resolve_effective_actions(arm, workload, profile);
    double worst = 0.0;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const double latency =
            actions[i] == kLocalAction
                ? local_latency(profile, i, workload.sizes[i])
                : offload_latency(profile, i, static_cast<std::size_t>(actions[i]),
                                  workload.sizes[i]);
        worst = std::max(worst, latency);
    }
    return worst;
}

}  // namespace edgebandit
