#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "edgebandit/engine.hpp"
#include "edgebandit/trace_io.hpp"

using namespace edgebandit;

namespace {

// Small three-user scenario (27 arms) that exercises both local and offload
// paths: local caps equal the means, so roughly half of all tasks overflow.
ExperimentConfig small_config() {
    ExperimentConfig config;
    config.profile.user_capacities = {10, 20, 30};
    config.profile.server_capacities = {200, 50};
    config.profile.link_capacity.assign(3, std::vector<double>(2, 100.0));
    config.pattern.means = {10, 20, 30};
    config.pattern.mode = TrafficMode::Tidal;
    config.pattern.stable_period = 30;
    config.pattern.unstable_period = 30;
    config.policy.kind = PolicyKind::EpsGreedy;
    config.policy.epsilon = 0.01;
    config.horizon = 300;
    config.explore_slots = 100;
    config.seed = 7;
    return config;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("a run produces one record per slot with correct phase tags") {
    ExperimentConfig config = small_config();
    config.horizon = 10;
    config.explore_slots = 5;
    const RunResult result = run(config);
    REQUIRE(result.records.size() == 10);
    for (std::size_t t = 1; t <= 10; ++t) {
        const SlotRecord& r = result.records[t - 1];
        CHECK(r.slot == t);
        CHECK(r.explore == (t <= 5));
    }
    CHECK(result.summary.slots == 10);
}

TEST_CASE("constant costs make the discounted sum T times the cost") {
    // Zero spread and oversized local capacity: every arm resolves to local
    // execution and the slot cost is the same constant c each slot.
    ExperimentConfig config;
    config.profile.user_capacities = {100, 50};
    config.profile.server_capacities = {10};
    config.profile.link_capacity = {{5}, {5}};
    config.pattern.means = {20, 30};
    config.pattern.mode = TrafficMode::Stable;
    config.pattern.stable_sigma_factor = 0.0;
    config.pattern.unstable_sigma_factor = 0.0;
    config.policy.kind = PolicyKind::EpsGreedy;
    config.horizon = 10;
    config.explore_slots = 4;
    config.discount = 1.0;
    const RunResult result = run(config);
    const double c = result.records.front().cost;
    CHECK(c == 30.0 / 50.0);
    for (const SlotRecord& r : result.records) {
        CHECK(r.cost == c);
    }
    CHECK(result.summary.discounted_cost == doctest::Approx(10.0 * c).epsilon(1e-12));
    CHECK(result.summary.discounted_cost ==
          doctest::Approx(result.summary.total_cost).epsilon(1e-12));
    CHECK(result.summary.final_avg_cost == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("identical configs and seeds give identical runs and files") {
    const ExperimentConfig config = small_config();
    const RunResult a = run(config);
    const RunResult b = run(config);
    CHECK(a.records == b.records);
    CHECK(a.summary == b.summary);

    const auto dir = std::filesystem::temp_directory_path() / "edgebandit_test";
    std::filesystem::create_directories(dir);
    write_trace(a.records, dir / "a.csv");
    write_trace(b.records, dir / "b.csv");
    CHECK(read_file(dir / "a.csv") == read_file(dir / "b.csv"));
}

TEST_CASE("the cumulative average matches the batch mean and contracts") {
    const RunResult result = run(small_config());
    double sum = 0.0;
    double prev_avg = 0.0;
    for (const SlotRecord& r : result.records) {
        sum += r.cost;
        const double batch = sum / static_cast<double>(r.slot);
        CHECK(std::fabs(r.avg_cost - batch) <= 1e-9 * std::fabs(batch));
        if (r.slot > 1) {
            const double step = std::fabs(r.cost - prev_avg) / static_cast<double>(r.slot);
            CHECK(std::fabs(r.avg_cost - prev_avg) <= step + 1e-12);
        }
        prev_avg = r.avg_cost;
    }
}

TEST_CASE("a windowed average covers only the last slots") {
    ExperimentConfig config = small_config();
    config.average_window = 16;
    const RunResult result = run(config);
    double tail = 0.0;
    const std::size_t total = result.records.size();
    for (std::size_t i = total - 16; i < total; ++i) {
        tail += result.records[i].cost;
    }
    CHECK(result.records.back().avg_cost ==
          doctest::Approx(tail / 16.0).epsilon(1e-12));
}

TEST_CASE("predicted states appear only for the adaptive policy when exploiting") {
    ExperimentConfig config = small_config();

    SUBCASE("plain policies never predict") {
        const RunResult result = run(config);
        for (const SlotRecord& r : result.records) {
            CHECK_FALSE(r.predicted_state.has_value());
        }
    }
    SUBCASE("the adaptive policy predicts at every exploitation slot") {
        config.policy.kind = PolicyKind::Atoa;
        const RunResult result = run(config);
        for (const SlotRecord& r : result.records) {
            if (r.explore) {
                CHECK_FALSE(r.predicted_state.has_value());
            } else {
                REQUIRE(r.predicted_state.has_value());
                CHECK((*r.predicted_state == 1 || *r.predicted_state == -1));
            }
        }
    }
}

TEST_CASE("the oracle trace lower-bounds every policy cost") {
    ExperimentConfig config = small_config();
    config.oracle_trace = true;
    const RunResult result = run(config);
    REQUIRE(result.summary.oracle.has_value());
    CHECK(result.summary.oracle->violations == 0);
    CHECK(result.summary.oracle->mean_gap >= 0.0);
    for (const SlotRecord& r : result.records) {
        REQUIRE(r.oracle_cost.has_value());
        CHECK(*r.oracle_cost <= r.cost);
    }
}

TEST_CASE("the workload stream is policy-independent under a fixed seed") {
    ExperimentConfig eps = small_config();
    eps.oracle_trace = true;
    ExperimentConfig ucb = eps;
    ucb.policy.kind = PolicyKind::Ucb1;
    const RunResult a = run(eps);
    const RunResult b = run(ucb);
    // The per-slot oracle cost is a pure function of the workload, so equal
    // sequences mean equal task sizes (common random numbers).
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(*a.records[i].oracle_cost == *b.records[i].oracle_cost);
    }
}

TEST_CASE("the oracle policy is never beaten by a learning policy per slot") {
    ExperimentConfig config = small_config();
    config.policy.kind = PolicyKind::Oracle;
    config.oracle_trace = true;
    const RunResult result = run(config);
    for (const SlotRecord& r : result.records) {
        CHECK(r.cost == *r.oracle_cost);
    }
}

TEST_CASE("adaptive policy with an infinite threshold replays epsilon-greedy") {
    ExperimentConfig eps = small_config();
    eps.policy.kind = PolicyKind::EpsGreedy;
    eps.policy.epsilon = 0.05;

    ExperimentConfig atoa = eps;
    atoa.policy.kind = PolicyKind::Atoa;
    atoa.policy.threshold = std::numeric_limits<double>::infinity();

    const RunResult a = run(eps);
    const RunResult b = run(atoa);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].arm == b.records[i].arm);
        CHECK(a.records[i].cost == b.records[i].cost);
    }
}

TEST_CASE("adaptive policy with a zero threshold replays ucb1 when exploiting") {
    ExperimentConfig ucb = small_config();
    ucb.policy.kind = PolicyKind::Ucb1;
    ucb.policy.xi = 0.1;

    ExperimentConfig atoa = ucb;
    atoa.policy.kind = PolicyKind::Atoa;
    atoa.policy.threshold = 0.0;

    const RunResult a = run(ucb);
    const RunResult b = run(atoa);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].arm == b.records[i].arm);
    }
}

TEST_CASE("sweeps run the full product of overrides and seeds") {
    ExperimentConfig base = small_config();
    base.horizon = 60;
    base.explore_slots = 30;

    std::vector<SweepOverride> overrides(2);
    overrides[0].deltas = {{"policy.epsilon", "0.01"}};
    overrides[0].apply = [](ExperimentConfig& c) { c.policy.epsilon = 0.01; };
    overrides[1].deltas = {{"policy.epsilon", "0.1"}};
    overrides[1].apply = [](ExperimentConfig& c) { c.policy.epsilon = 0.1; };
    const std::vector<std::uint64_t> seeds{1, 2, 3};

    const auto entries = run_sweep(base, overrides, seeds);
    REQUIRE(entries.size() == 6);
    CHECK(entries[0].deltas.at("policy.epsilon") == "0.01");
    CHECK(entries[0].seed == 1);
    CHECK(entries[5].deltas.at("policy.epsilon") == "0.1");
    CHECK(entries[5].seed == 3);

    SUBCASE("an empty override list runs the base configuration") {
        const std::vector<std::uint64_t> one_seed{base.seed};
        const auto plain = run_sweep(base, {}, one_seed);
        REQUIRE(plain.size() == 1);
        CHECK(plain[0].summary == run(base).summary);
    }
    SUBCASE("no seeds is an error") {
        CHECK_THROWS_AS(run_sweep(base, overrides, {}), std::invalid_argument);
    }
    SUBCASE("a failing entry aborts the sweep and names the key") {
        std::vector<SweepOverride> broken(1);
        broken[0].deltas = {{"policy.epsilon", "2.0"}};
        broken[0].apply = [](ExperimentConfig& c) { c.policy.epsilon = 2.0; };
        CHECK_THROWS_WITH_AS(run_sweep(base, broken, seeds),
                             doctest::Contains("policy.epsilon=2.0"),
                             std::runtime_error);
    }
}

TEST_CASE("config validation catches inconsistent runs") {
    ExperimentConfig config = small_config();
    SUBCASE("explore phase must end before the horizon") {
        config.explore_slots = config.horizon;
        CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("explore_slots"),
                             std::invalid_argument);
    }
    SUBCASE("discount must stay in (0, 1]") {
        config.discount = 0.0;
        CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("discount"),
                             std::invalid_argument);
    }
    SUBCASE("pattern width must match the profile") {
        config.pattern.means = {10, 20};
        CHECK_THROWS_WITH_AS(config.validate(), doctest::Contains("pattern.means"),
                             std::invalid_argument);
    }
}
