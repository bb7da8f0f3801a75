#include "edgebandit/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace edgebandit {

namespace {

using nlohmann::json;

[[noreturn]] void missing(const std::string& key) {
    throw std::invalid_argument("config: missing required key \"" + key + "\"");
}

const json& require(const json& obj, const char* key, const std::string& prefix) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        missing(prefix + key);
    }
    return *it;
}

double as_double(const json& j, const std::string& key) {
    if (!j.is_number()) {
        throw std::invalid_argument("config: key \"" + key + "\" must be a number");
    }
    return j.get<double>();
}

std::uint64_t as_unsigned(const json& j, const std::string& key) {
    if (j.is_number_unsigned()) {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    }
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (v >= 0.0 && std::floor(v) == v) {
            return static_cast<std::uint64_t>(v);
        }
    }
    throw std::invalid_argument("config: key \"" + key +
                                "\" must be a nonnegative integer");
}

bool as_bool(const json& j, const std::string& key) {
    if (!j.is_boolean()) {
        throw std::invalid_argument("config: key \"" + key + "\" must be a boolean");
    }
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& key) {
    if (!j.is_string()) {
        throw std::invalid_argument("config: key \"" + key + "\" must be a string");
    }
    return j.get<std::string>();
}

std::vector<double> as_double_list(const json& j, const std::string& key) {
    if (!j.is_array()) {
        throw std::invalid_argument("config: key \"" + key + "\" must be an array");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& item : j) {
        out.push_back(as_double(item, key));
    }
    return out;
}

void check_unknown(const json& obj, const std::set<std::string>& allowed,
                   const std::string& prefix) {
    for (const auto& [key, value] : obj.items()) {
        if (allowed.find(key) == allowed.end()) {
            throw std::invalid_argument("config: unknown key \"" + prefix + key + "\"");
        }
    }
}

NetworkProfile profile_from_json(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("config: key \"profile\" must be an object");
    }
    check_unknown(j,
                  {"user_capacities", "server_capacities", "link_capacity",
                   "cycles_per_bit", "deadline"},
                  "profile.");
    NetworkProfile profile;
    profile.user_capacities =
        as_double_list(require(j, "user_capacities", "profile."), "profile.user_capacities");
    profile.server_capacities = as_double_list(require(j, "server_capacities", "profile."),
                                               "profile.server_capacities");
    const json& link = require(j, "link_capacity", "profile.");
    if (link.is_number()) {
        // Scalar shorthand: the same rate for every user/server pair.
        const double rate = link.get<double>();
        profile.link_capacity.assign(profile.num_users(),
                                     std::vector<double>(profile.num_servers(), rate));
    } else if (link.is_array()) {
        for (const auto& row : link) {
            profile.link_capacity.push_back(as_double_list(row, "profile.link_capacity"));
        }
    } else {
        throw std::invalid_argument(
            "config: key \"profile.link_capacity\" must be a matrix or a scalar");
    }
    profile.cycles_per_bit =
        as_double(require(j, "cycles_per_bit", "profile."), "profile.cycles_per_bit");
    profile.deadline = as_double(require(j, "deadline", "profile."), "profile.deadline");
    return profile;
}

TrafficMode mode_from_string(const std::string& text) {
    if (text == "stable") return TrafficMode::Stable;
    if (text == "unstable") return TrafficMode::Unstable;
    if (text == "tidal") return TrafficMode::Tidal;
    throw std::invalid_argument("config: key \"pattern.mode\" has unknown value \"" +
                                text + "\" (expected stable, unstable or tidal)");
}

TrafficPattern pattern_from_json(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("config: key \"pattern\" must be an object");
    }
    check_unknown(j,
                  {"means", "stable_sigma_factor", "unstable_sigma_factor", "mode",
                   "stable_period", "unstable_period", "sigma_is_variance"},
                  "pattern.");
    TrafficPattern pattern;
    pattern.means = as_double_list(require(j, "means", "pattern."), "pattern.means");
    pattern.stable_sigma_factor = as_double(require(j, "stable_sigma_factor", "pattern."),
                                            "pattern.stable_sigma_factor");
    pattern.unstable_sigma_factor =
        as_double(require(j, "unstable_sigma_factor", "pattern."),
                  "pattern.unstable_sigma_factor");
    pattern.mode =
        mode_from_string(as_string(require(j, "mode", "pattern."), "pattern.mode"));
    pattern.stable_period = static_cast<std::size_t>(
        as_unsigned(require(j, "stable_period", "pattern."), "pattern.stable_period"));
    pattern.unstable_period = static_cast<std::size_t>(as_unsigned(
        require(j, "unstable_period", "pattern."), "pattern.unstable_period"));
    pattern.sigma_is_variance = as_bool(require(j, "sigma_is_variance", "pattern."),
                                        "pattern.sigma_is_variance");
    return pattern;
}

PolicyKind kind_from_string(const std::string& text) {
    if (text == "eps_greedy") return PolicyKind::EpsGreedy;
    if (text == "ucb1") return PolicyKind::Ucb1;
    if (text == "atoa") return PolicyKind::Atoa;
    if (text == "oracle") return PolicyKind::Oracle;
    throw std::invalid_argument(
        "config: key \"policy.kind\" has unknown value \"" + text +
        "\" (expected eps_greedy, ucb1, atoa or oracle)");
}

PolicyConfig policy_from_json(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("config: key \"policy\" must be an object");
    }
    check_unknown(
        j, {"kind", "epsilon", "xi", "window", "threshold", "amplitude_prior"},
        "policy.");
    PolicyConfig policy;
    policy.kind = kind_from_string(as_string(require(j, "kind", "policy."), "policy.kind"));
    policy.epsilon = as_double(require(j, "epsilon", "policy."), "policy.epsilon");
    policy.xi = as_double(require(j, "xi", "policy."), "policy.xi");
    policy.window = static_cast<std::size_t>(
        as_unsigned(require(j, "window", "policy."), "policy.window"));
    const json& threshold = require(j, "threshold", "policy.");
    if (threshold.is_null()) {
        policy.threshold.reset();
    } else {
        policy.threshold = as_double(threshold, "policy.threshold");
    }
    policy.amplitude_prior =
        as_double(require(j, "amplitude_prior", "policy."), "policy.amplitude_prior");
    return policy;
}

void mark_user_keys(const json& node, const std::string& prefix,
                    std::map<std::string, std::string>& sources) {
    for (const auto& [key, value] : node.items()) {
        if (prefix.empty() && key == "sources") {
            continue;
        }
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        if (value.is_object()) {
            mark_user_keys(value, path, sources);
        } else {
            sources[path] = "user";
        }
    }
}

// Shared backbone of the named scenarios: 6 users and 2 servers (a strong
// and a weak one), per-user means 10i. Device capacity runs against traffic
// volume (the heaviest producers have the weakest hardware), so light users
// finish locally while heavy users depend on the servers; both action types
// stay in play and picking the wrong server or staying local on a heavy
// user carries a real latency penalty.
ExperimentConfig reference_config() {
    ExperimentConfig config;
    config.profile.user_capacities = {60, 50, 40, 30, 20, 10};
    config.profile.server_capacities = {200, 50};
    config.profile.link_capacity.assign(6, std::vector<double>(2, 100.0));
    config.profile.cycles_per_bit = 1.0;
    config.profile.deadline = 1.0;
    config.pattern.means = {10, 20, 30, 40, 50, 60};
    config.pattern.stable_sigma_factor = 0.1;
    config.pattern.unstable_sigma_factor = 0.5;
    config.pattern.mode = TrafficMode::Tidal;
    config.pattern.stable_period = 150;
    config.pattern.unstable_period = 150;
    config.pattern.sigma_is_variance = false;
    config.policy.kind = PolicyKind::Atoa;
    config.policy.epsilon = 0.01;
    config.policy.xi = 0.1;
    config.policy.window = 10;
    config.policy.threshold.reset();  // resolved by the threshold formula
    config.policy.amplitude_prior = 1.0;
    config.horizon = 20000;
    config.explore_slots = 10000;
    config.discount = 1.0;
    config.seed = 1;
    config.arm_cap = ArmSpace::kDefaultCap;
    config.oracle_trace = false;
    config.average_window = 0;
    return config;
}

std::map<std::string, std::string> reference_sources(bool scenario_fixes_policy) {
    std::map<std::string, std::string> sources{
        {"profile.user_capacities", "artifact-default"},
        {"profile.server_capacities", "reference"},
        {"profile.link_capacity", "artifact-default"},
        {"profile.cycles_per_bit", "artifact-default"},
        {"profile.deadline", "artifact-default"},
        {"pattern.means", "reference"},
        {"pattern.stable_sigma_factor", "reference"},
        {"pattern.unstable_sigma_factor", "reference"},
        {"pattern.mode", "reference"},
        {"pattern.stable_period", "reference"},
        {"pattern.unstable_period", "reference"},
        {"pattern.sigma_is_variance", "artifact-default"},
        {"policy.kind", scenario_fixes_policy ? "reference" : "artifact-default"},
        {"policy.epsilon", "reference"},
        {"policy.xi", "reference"},
        {"policy.window", "reference"},
        {"policy.threshold", "reference"},
        {"policy.amplitude_prior", "artifact-default"},
        {"horizon", "reference"},
        {"explore_slots", "reference"},
        {"discount", "artifact-default"},
        {"seed", "artifact-default"},
        {"arm_cap", "artifact-default"},
        {"oracle_trace", "artifact-default"},
        {"average_window", "artifact-default"},
    };
    return sources;
}

}  // namespace

ParsedExperiment load_preset(const std::string& name) {
    ParsedExperiment parsed;
    if (name == "tidal") {
        parsed.config = reference_config();
        parsed.sources = reference_sources(true);
    } else if (name == "stable") {
        parsed.config = reference_config();
        parsed.config.pattern.mode = TrafficMode::Stable;
        parsed.config.policy.kind = PolicyKind::EpsGreedy;
        parsed.sources = reference_sources(false);
    } else if (name == "unstable") {
        parsed.config = reference_config();
        parsed.config.pattern.mode = TrafficMode::Unstable;
        parsed.config.policy.kind = PolicyKind::Ucb1;
        parsed.sources = reference_sources(false);
    } else {
        throw std::invalid_argument("unknown preset \"" + name +
                                    "\" (expected stable, unstable, tidal or custom)");
    }
    return parsed;
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("config: document root must be an object");
    }
    check_unknown(j,
                  {"profile", "pattern", "policy", "horizon", "explore_slots",
                   "discount", "seed", "arm_cap", "oracle_trace", "average_window",
                   "sources"},
                  "");
    ExperimentConfig config;
    config.profile = profile_from_json(require(j, "profile", ""));
    config.pattern = pattern_from_json(require(j, "pattern", ""));
    config.policy = policy_from_json(require(j, "policy", ""));
    config.horizon =
        static_cast<std::size_t>(as_unsigned(require(j, "horizon", ""), "horizon"));
    config.explore_slots = static_cast<std::size_t>(
        as_unsigned(require(j, "explore_slots", ""), "explore_slots"));
    config.discount = as_double(require(j, "discount", ""), "discount");
    config.seed = as_unsigned(require(j, "seed", ""), "seed");
    config.arm_cap = as_unsigned(require(j, "arm_cap", ""), "arm_cap");
    config.oracle_trace = as_bool(require(j, "oracle_trace", ""), "oracle_trace");
    config.average_window = static_cast<std::size_t>(
        as_unsigned(require(j, "average_window", ""), "average_window"));
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    return config;
}

json config_to_json(const ExperimentConfig& config) {
    json j;
    j["profile"]["user_capacities"] = config.profile.user_capacities;
    j["profile"]["server_capacities"] = config.profile.server_capacities;
    j["profile"]["link_capacity"] = config.profile.link_capacity;
    j["profile"]["cycles_per_bit"] = config.profile.cycles_per_bit;
    j["profile"]["deadline"] = config.profile.deadline;
    j["pattern"]["means"] = config.pattern.means;
    j["pattern"]["stable_sigma_factor"] = config.pattern.stable_sigma_factor;
    j["pattern"]["unstable_sigma_factor"] = config.pattern.unstable_sigma_factor;
    j["pattern"]["mode"] = std::string(to_string(config.pattern.mode));
    j["pattern"]["stable_period"] = config.pattern.stable_period;
    j["pattern"]["unstable_period"] = config.pattern.unstable_period;
    j["pattern"]["sigma_is_variance"] = config.pattern.sigma_is_variance;
    j["policy"]["kind"] = std::string(to_string(config.policy.kind));
    j["policy"]["epsilon"] = config.policy.epsilon;
    j["policy"]["xi"] = config.policy.xi;
    j["policy"]["window"] = config.policy.window;
    if (config.policy.threshold) {
        j["policy"]["threshold"] = *config.policy.threshold;
    } else {
        j["policy"]["threshold"] = nullptr;
    }
    j["policy"]["amplitude_prior"] = config.policy.amplitude_prior;
    j["horizon"] = config.horizon;
    j["explore_slots"] = config.explore_slots;
    j["discount"] = config.discount;
    j["seed"] = config.seed;
    j["arm_cap"] = config.arm_cap;
    j["oracle_trace"] = config.oracle_trace;
    j["average_window"] = config.average_window;
    return j;
}

json echo_config(const ParsedExperiment& parsed) {
    json j = config_to_json(parsed.config);
    j["sources"] = parsed.sources;
    return j;
}

void apply_set(json& j, const std::string& key_equals_value) {
    const auto eq = key_equals_value.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("--set expects key=value, got \"" +
                                    key_equals_value + "\"");
    }
    const std::string key = key_equals_value.substr(0, eq);
    const std::string text = key_equals_value.substr(eq + 1);
    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;  // bare words are strings
    }

    json* node = &j;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part =
            key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) {
            throw std::invalid_argument("--set key \"" + key +
                                        "\" has an empty path segment");
        }
        if (dot == std::string::npos) {
            (*node)[part] = value;
            break;
        }
        json& child = (*node)[part];
        if (!child.is_object()) {
            child = json::object();
        }
        node = &child;
        start = dot + 1;
    }
}

ParsedExperiment assemble_config(const std::optional<std::string>& preset,
                                 const std::optional<std::filesystem::path>& config_file,
                                 const std::vector<std::string>& set_overrides) {
    json j = json::object();
    std::map<std::string, std::string> sources;
    if (preset && *preset != "custom") {
        ParsedExperiment base = load_preset(*preset);
        j = config_to_json(base.config);
        sources = std::move(base.sources);
    }
    if (config_file) {
        std::ifstream in(*config_file);
        if (!in) {
            throw std::runtime_error("cannot open config file " + config_file->string());
        }
        json file_json;
        try {
            file_json = json::parse(in);
        } catch (const json::parse_error& e) {
            throw std::runtime_error("config file " + config_file->string() + ": " +
                                     e.what());
        }
        mark_user_keys(file_json, "", sources);
        j.merge_patch(file_json);
    }
    for (const std::string& set : set_overrides) {
        apply_set(j, set);
        sources[set.substr(0, set.find('='))] = "user";
    }
    ParsedExperiment parsed;
    parsed.config = config_from_json(j);
    parsed.sources = std::move(sources);
    return parsed;
}

}  // namespace edgebandit
