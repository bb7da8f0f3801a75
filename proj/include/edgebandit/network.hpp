#pragma once

#include <cstddef>
#include <vector>

namespace edgebandit {

struct JointArm;

// Static description of the edge network: per-user and per-server compute
// capacities (cycles per time unit), per-pair link rates (bits per time
// unit), the cycle cost of one bit, and the processing deadline. Units are
// abstract; only their ratios matter.
struct NetworkProfile {
    std::vector<double> user_capacities;
    std::vector<double> server_capacities;
    std::vector<std::vector<double>> link_capacity;  // [user][server]
    double cycles_per_bit = 1.0;
    double deadline = 1.0;

    std::size_t num_users() const { return user_capacities.size(); }
    std::size_t num_servers() const { return server_capacities.size(); }

    // Enforces more users than servers, an I x J link matrix, and strict
    // positivity of every capacity, rate, the cycle cost and the deadline.
    // Throws std::invalid_argument naming the offending field.
    void validate() const;

    bool operator==(const NetworkProfile&) const = default;
};

// Task sizes (bits) generated by the users in one slot. Slots are 1-based.
struct SlotWorkload {
    std::vector<double> sizes;
    std::size_t slot = 1;

    std::size_t num_users() const { return sizes.size(); }
    void validate() const;

    bool operator==(const SlotWorkload&) const = default;
};

/// Largest task size the user can finish locally within the deadline.
double local_size_cap(const NetworkProfile& profile, std::size_t user);

/// Portion of `size` exceeding the local cap; 0 when the task fits locally.
double offload_size(const NetworkProfile& profile, std::size_t user, double size);

/// Latency of processing `size` bits purely on the user's own hardware.
double local_latency(const NetworkProfile& profile, std::size_t user, double size);

/// Latency of the split execution: the local processing window plus
/// transmission and remote computation of the overflow part. `size` is the
/// full task size and must exceed the local cap; a call with a task that
/// fits locally throws (it signals a resolution bug upstream).
double offload_latency(const NetworkProfile& profile, std::size_t user,
                       std::size_t server, double size);

/// Per-slot system cost: the maximum per-user latency under the arm's
/// resolved effective actions. This is the quantity every policy minimizes.
double system_cost(const NetworkProfile& profile, const SlotWorkload& workload,
                   const JointArm& arm);

}  // namespace edgebandit
