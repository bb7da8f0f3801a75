#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "edgebandit/arm_space.hpp"
#include "edgebandit/network.hpp"
#include "edgebandit/rng.hpp"

using namespace edgebandit;

namespace {

NetworkProfile single_user(double user_cap, double deadline, double cycles,
                           double server_cap = 100.0, double rate = 100.0) {
    NetworkProfile p;
    p.user_capacities = {user_cap};
    p.server_capacities = {server_cap};
    p.link_capacity = {{rate}};
    p.cycles_per_bit = cycles;
    p.deadline = deadline;
    return p;
}

// Exactness tolerance used for all hand-computed latency values.
doctest::Approx exact(double v) { return doctest::Approx(v).epsilon(1e-12); }

}  // namespace

TEST_CASE("local size cap follows deadline * capacity / cycle cost") {
    CHECK(local_size_cap(single_user(50, 1, 1), 0) == exact(50.0));
    CHECK(local_size_cap(single_user(50, 2, 2), 0) == exact(50.0));
    CHECK(local_size_cap(single_user(30, 1, 3), 0) == exact(10.0));
}

TEST_CASE("offload size is the clamped overflow above the cap") {
    const NetworkProfile p = single_user(50, 1, 1);
    CHECK(offload_size(p, 0, 100) == exact(50.0));
    CHECK(offload_size(p, 0, 50) == 0.0);
    CHECK(offload_size(p, 0, 20) == 0.0);
}

TEST_CASE("local latency is cycles * size / capacity") {
    CHECK(local_latency(single_user(50, 1, 1), 0, 100) == exact(2.0));
    CHECK(local_latency(single_user(50, 1, 1), 0, 0) == 0.0);
    CHECK(local_latency(single_user(30, 1, 2), 0, 60) == exact(4.0));
}

TEST_CASE("offload latency adds the deadline, transmission and remote compute") {
    CHECK(offload_latency(single_user(50, 1, 1, 200, 100), 0, 0, 150) == exact(2.5));
    CHECK(offload_latency(single_user(50, 1, 1, 50, 50), 0, 0, 150) == exact(5.0));
    CHECK(offload_latency(single_user(25, 2, 1, 10, 10), 0, 0, 60) == exact(4.0));
}

TEST_CASE("offload latency rejects tasks that fit locally") {
    const NetworkProfile p = single_user(50, 1, 1);
    CHECK_THROWS_AS(offload_latency(p, 0, 0, 40), std::invalid_argument);
    CHECK_THROWS_AS(offload_latency(p, 0, 0, 50), std::invalid_argument);
}

TEST_CASE("system cost is the maximum per-user latency") {
    SUBCASE("two local users") {
        NetworkProfile p;
        p.user_capacities = {50, 50};
        p.server_capacities = {100};
        p.link_capacity = {{100}, {100}};
        // Sizes 100 and 150 at capacity 50 give latencies 2.0 and 3.0.
        const SlotWorkload w{{100, 150}, 1};
        const JointArm arm{{kLocalAction, kLocalAction}};
        CHECK(system_cost(p, w, arm) == exact(3.0));
    }
    SUBCASE("single user") {
        const NetworkProfile p = single_user(50, 1, 1);
        const SlotWorkload w{{100}, 1};
        CHECK(system_cost(p, w, JointArm{{kLocalAction}}) == exact(2.0));
    }
    SUBCASE("three users, mixed actions") {
        // Hand-computed: user 0 offloads 100 overflow bits to server 0
        // (1 + 100/100 + 100/200 = 2.5), users 1 and 2 run locally
        // (250/50 = 5.0 and 120/30 = 4.0); the slot cost is the max, 5.0.
        NetworkProfile p;
        p.user_capacities = {50, 50, 30};
        p.server_capacities = {200};
        p.link_capacity = {{100}, {100}, {100}};
        const SlotWorkload w{{150, 250, 120}, 1};
        const JointArm arm{{0, kLocalAction, kLocalAction}};
        CHECK(offload_latency(p, 0, 0, 150) == exact(2.5));
        CHECK(local_latency(p, 1, 250) == exact(5.0));
        CHECK(local_latency(p, 2, 120) == exact(4.0));
        CHECK(system_cost(p, w, arm) == exact(5.0));
    }
}

TEST_CASE("offload latency is at least the deadline and monotone in size") {
    SeededSource rng(11, 0);
    NetworkProfile p;
    p.user_capacities = {40, 60, 25};
    p.server_capacities = {120, 30};
    p.link_capacity = {{80, 20}, {80, 20}, {80, 20}};
    p.cycles_per_bit = 2.0;
    p.deadline = 1.5;
    p.validate();
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t user = rng.next_below(3);
        const std::size_t server = rng.next_below(2);
        const double cap = local_size_cap(p, user);
        const double size = cap + 1.0 + 300.0 * rng.next_unit();
        const double latency = offload_latency(p, user, server, size);
        CHECK(latency >= p.deadline);
        CHECK(offload_latency(p, user, server, size + 10.0) >= latency);
        CHECK(local_latency(p, user, size + 10.0) >= local_latency(p, user, size));
    }
}

TEST_CASE("system cost ignores the arm entry of users whose task fits locally") {
    NetworkProfile p;
    p.user_capacities = {50, 50};
    p.server_capacities = {10};  // slow server: offloading would be noticeable
    p.link_capacity = {{5}, {5}};
    const SlotWorkload w{{40, 150}, 1};  // user 0 fits locally (cap 50)
    const double base =
        system_cost(p, w, JointArm{{kLocalAction, kLocalAction}});
    CHECK(system_cost(p, w, JointArm{{0, kLocalAction}}) == base);
}

TEST_CASE("profile validation enforces shape and positivity") {
    NetworkProfile p;
    p.user_capacities = {10, 20};
    p.server_capacities = {100};
    p.link_capacity = {{50}, {50}};
    CHECK_NOTHROW(p.validate());

    SUBCASE("as many servers as users") {
        p.server_capacities = {100, 100};
        p.link_capacity = {{50, 50}, {50, 50}};
        CHECK_THROWS_WITH_AS(p.validate(),
                             doctest::Contains("more users than servers"),
                             std::invalid_argument);
    }
    SUBCASE("nonpositive capacity") {
        p.user_capacities[1] = 0.0;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    }
    SUBCASE("ragged link matrix") {
        p.link_capacity = {{50}, {}};
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    }
    SUBCASE("nonpositive deadline") {
        p.deadline = -1.0;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    }
}

TEST_CASE("workload validation rejects negative sizes and slot zero") {
    SlotWorkload w{{1.0, -0.5}, 1};
    CHECK_THROWS_AS(w.validate(), std::invalid_argument);
    SlotWorkload zero{{1.0}, 0};
    CHECK_THROWS_AS(zero.validate(), std::invalid_argument);
}
