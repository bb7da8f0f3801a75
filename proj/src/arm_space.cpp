#include "edgebandit/arm_space.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>
#include <string>

namespace edgebandit {

ArmSpace::ArmSpace(std::size_t num_users, std::size_t num_servers, std::uint64_t cap)
    : num_users_(num_users), num_servers_(num_servers) {
    if (num_users < 1 || num_servers < 1) {
        throw std::invalid_argument("arm space: need at least one user and one server");
    }
    const std::uint64_t base = static_cast<std::uint64_t>(num_servers) + 1;
    const std::uint64_t limit =
        std::min<std::uint64_t>(cap, std::numeric_limits<ArmIndex>::max());
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < num_users; ++i) {
        if (count > limit / base) {
            throw std::invalid_argument(
                "arm space: (J+1)^I exceeds the arm cap of " + std::to_string(limit) +
                " arms; the joint space is intractable at this size");
        }
        count *= base;
    }
    size_ = static_cast<std::size_t>(count);
}

JointArm ArmSpace::arm(ArmIndex n) const {
    assert(n < size_);
    JointArm result;
    result.entries.resize(num_users_);
    const std::uint64_t base = static_cast<std::uint64_t>(num_servers_) + 1;
    std::uint64_t rem = n;
    for (std::size_t i = 0; i < num_users_; ++i) {
        const int digit = static_cast<int>(rem % base);
        result.entries[i] = digit == 0 ? kLocalAction : digit - 1;
        rem /= base;
    }
    return result;
}

ArmIndex ArmSpace::index_of(const JointArm& arm) const {
    if (arm.num_users() != num_users_) {
        throw std::invalid_argument("index_of: arm dimension does not match the space");
    }
    const std::uint64_t base = static_cast<std::uint64_t>(num_servers_) + 1;
    std::uint64_t index = 0;
    std::uint64_t weight = 1;
    for (std::size_t i = 0; i < num_users_; ++i) {
        const int entry = arm.entries[i];
        if (entry < kLocalAction || entry >= static_cast<int>(num_servers_)) {
            throw std::invalid_argument("index_of: entry " + std::to_string(i) +
                                        " is outside the action range");
        }
        const std::uint64_t digit = entry == kLocalAction ? 0 : entry + 1;
        index += digit * weight;
        weight *= base;
    }
    return static_cast<ArmIndex>(index);
}

std::vector<JointArm> ArmSpace::all() const {
    std::vector<JointArm> arms;
    arms.reserve(size_);
    for (std::size_t n = 0; n < size_; ++n) {
        arms.push_back(arm(static_cast<ArmIndex>(n)));
    }
    return arms;
}

std::vector<int> resolve_effective_actions(const JointArm& arm,
                                           const SlotWorkload& workload,
                                           const NetworkProfile& profile) {
    if (arm.num_users() != profile.num_users() ||
        workload.num_users() != profile.num_users()) {
        throw std::invalid_argument("resolve_effective_actions: dimension mismatch");
    }
    std::vector<int> actions = arm.entries;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (actions[i] != kLocalAction &&
            workload.sizes[i] <= local_size_cap(profile, i)) {
            actions[i] = kLocalAction;
        }
    }
    return actions;
}

}  // namespace edgebandit
