#pragma once

#include <cstdint>
#include <vector>

#include "edgebandit/network.hpp"

namespace edgebandit {

/// Per-user action value for local execution. Server choices use the server
/// index (>= 0).
inline constexpr int kLocalAction = -1;

using ArmIndex = std::uint32_t;

// One joint offloading decision: for every user either local execution or
// the index of the chosen edge server.
struct JointArm {
    std::vector<int> entries;

    std::size_t num_users() const { return entries.size(); }
    bool is_local(std::size_t user) const { return entries[user] == kLocalAction; }
    int server(std::size_t user) const { return entries[user]; }

    bool operator==(const JointArm&) const = default;
};

// The full joint action space: all (J+1)^I assignments in canonical
// mixed-radix order, user 0 least significant, digit 0 = local and digit k =
// server k-1. Arm indices are therefore stable across runs. Immutable after
// construction.
class ArmSpace {
public:
    static constexpr std::uint64_t kDefaultCap = 1'000'000;

    // Throws std::invalid_argument when either count is zero or when
    // (J+1)^I exceeds `cap` (an intractable joint space).
    ArmSpace(std::size_t num_users, std::size_t num_servers,
             std::uint64_t cap = kDefaultCap);

    std::size_t num_users() const { return num_users_; }
    std::size_t num_servers() const { return num_servers_; }
    std::size_t size() const { return size_; }

    /// Decodes arm `n` from its mixed-radix index. Requires n < size().
    JointArm arm(ArmIndex n) const;

    /// Encodes an arm back to its index; validates dimension and entries.
    ArmIndex index_of(const JointArm& arm) const;

    /// Materializes every arm in canonical order.
    std::vector<JointArm> all() const;

private:
    std::size_t num_users_;
    std::size_t num_servers_;
    std::size_t size_;
};

/// Applies the per-slot resolution rule: an offload entry for a user whose
/// task fits locally is replaced by local execution; everything else passes
/// through. Idempotent.
std::vector<int> resolve_effective_actions(const JointArm& arm,
                                           const SlotWorkload& workload,
                                           const NetworkProfile& profile);

}  // namespace edgebandit
