#include <set>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "edgebandit/arm_space.hpp"
#include "edgebandit/rng.hpp"

using namespace edgebandit;

TEST_CASE("enumeration follows the canonical mixed-radix order") {
    const ArmSpace space(2, 1);
    REQUIRE(space.size() == 4);
    const auto arms = space.all();
    CHECK(arms[0] == JointArm{{kLocalAction, kLocalAction}});
    CHECK(arms[1] == JointArm{{0, kLocalAction}});
    CHECK(arms[2] == JointArm{{kLocalAction, 0}});
    CHECK(arms[3] == JointArm{{0, 0}});
}

TEST_CASE("enumeration counts match (J+1)^I") {
    CHECK(ArmSpace(6, 2).size() == 729);
    CHECK(ArmSpace(1, 3).size() == 4);

    // All 729 arms are distinct.
    std::set<std::vector<int>> seen;
    for (const JointArm& arm : ArmSpace(6, 2).all()) {
        seen.insert(arm.entries);
    }
    CHECK(seen.size() == 729);
}

TEST_CASE("index round-trips through decode and encode") {
    const ArmSpace space(3, 2);
    for (std::size_t n = 0; n < space.size(); ++n) {
        const auto arm = space.arm(static_cast<ArmIndex>(n));
        CHECK(space.index_of(arm) == n);
    }

    SeededSource rng(5, 0);
    const ArmSpace big(5, 3);
    for (int trial = 0; trial < 500; ++trial) {
        const ArmIndex n = static_cast<ArmIndex>(rng.next_below(big.size()));
        CHECK(big.index_of(big.arm(n)) == n);
    }
}

TEST_CASE("oversized joint spaces are rejected") {
    CHECK_THROWS_AS(ArmSpace(6, 2, 100), std::invalid_argument);
    CHECK_THROWS_AS(ArmSpace(30, 9), std::invalid_argument);  // 10^30 arms
    CHECK_NOTHROW(ArmSpace(6, 2, 729));
}

TEST_CASE("encode validates dimension and entry range") {
    const ArmSpace space(2, 2);
    CHECK_THROWS_AS(space.index_of(JointArm{{0}}), std::invalid_argument);
    CHECK_THROWS_AS(space.index_of(JointArm{{2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(space.index_of(JointArm{{-2, 0}}), std::invalid_argument);
}

namespace {

NetworkProfile two_user_profile() {
    NetworkProfile p;
    p.user_capacities = {50, 50};
    p.server_capacities = {100};
    p.link_capacity = {{100}, {100}};
    return p;
}

}  // namespace

TEST_CASE("resolution forces local execution for tasks that fit") {
    const NetworkProfile p = two_user_profile();

    SUBCASE("offload entry resolved") {
        NetworkProfile single;
        single.user_capacities = {50, 60};
        single.server_capacities = {100};
        single.link_capacity = {{100}, {100}};
        const SlotWorkload small{{20, 200}, 1};
        const JointArm arm{{0, kLocalAction}};
        CHECK(resolve_effective_actions(arm, small, single) ==
              std::vector<int>{kLocalAction, kLocalAction});
    }
    SUBCASE("offload entry passes through") {
        const SlotWorkload big{{100, 10}, 1};
        const JointArm arm{{0, kLocalAction}};
        CHECK(resolve_effective_actions(arm, big, p) ==
              std::vector<int>{0, kLocalAction});
    }
    SUBCASE("mixed entries") {
        const SlotWorkload w{{200, 30}, 1};
        const JointArm arm{{kLocalAction, 0}};
        CHECK(resolve_effective_actions(arm, w, p) ==
              std::vector<int>{kLocalAction, kLocalAction});
    }
}

TEST_CASE("resolution is idempotent") {
    const NetworkProfile p = two_user_profile();
    SeededSource rng(21, 0);
    const ArmSpace space(2, 1);
    for (int trial = 0; trial < 100; ++trial) {
        const SlotWorkload w{{200.0 * rng.next_unit(), 200.0 * rng.next_unit()}, 1};
        const auto arm = space.arm(static_cast<ArmIndex>(rng.next_below(space.size())));
        const auto once = resolve_effective_actions(arm, w, p);
        const auto twice = resolve_effective_actions(JointArm{once}, w, p);
        CHECK(once == twice);
    }
}

TEST_CASE("arms with identical effective actions cost the same") {
    const NetworkProfile p = two_user_profile();
    const ArmSpace space(2, 1);
    SeededSource rng(22, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const SlotWorkload w{{200.0 * rng.next_unit(), 200.0 * rng.next_unit()}, 1};
        for (std::size_t a = 0; a < space.size(); ++a) {
            for (std::size_t b = a + 1; b < space.size(); ++b) {
                const auto arm_a = space.arm(static_cast<ArmIndex>(a));
                const auto arm_b = space.arm(static_cast<ArmIndex>(b));
                if (resolve_effective_actions(arm_a, w, p) ==
                    resolve_effective_actions(arm_b, w, p)) {
                    CHECK(system_cost(p, w, arm_a) == system_cost(p, w, arm_b));
                }
            }
        }
    }
}
