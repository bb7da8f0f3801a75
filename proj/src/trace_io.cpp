#include "edgebandit/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "edgebandit/config.hpp"

namespace edgebandit {

namespace {

using nlohmann::json;

std::ofstream open_output(const std::filesystem::path& path, const char* what) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(std::string(what) + ": cannot open " + path.string() +
                                 " for writing");
    }
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path,
                   const char* what) {
    out.flush();
    if (!out) {
        throw std::runtime_error(std::string(what) + ": write to " + path.string() +
                                 " failed");
    }
}

}  // namespace

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_trace(std::span<const SlotRecord> records,
                 const std::filesystem::path& path) {
    if (records.empty()) {
        throw std::invalid_argument("write_trace: no records");
    }
    std::ofstream out = open_output(path, "write_trace");
    out << "slot,phase,arm,cost,avg_cost,pred_state,true_phase\n";
    for (const SlotRecord& r : records) {
        out << r.slot << ',' << (r.explore ? "explore" : "exploit") << ',' << r.arm
            << ',' << format_double(r.cost) << ',' << format_double(r.avg_cost) << ',';
        if (r.predicted_state) {
            out << *r.predicted_state;
        }
        out << ',' << to_string(r.true_phase) << '\n';
    }
    finish_output(out, path, "write_trace");
}

json summary_to_json(const SweepEntry& entry) {
    json j;
    j["overrides"] = entry.deltas;
    j["seed"] = entry.seed;
    j["slots"] = entry.summary.slots;
    j["final_avg_cost"] = entry.summary.final_avg_cost;
    j["total_cost"] = entry.summary.total_cost;
    j["discounted_cost"] = entry.summary.discounted_cost;
    j["stable_slots"] = entry.summary.stable_slots;
    j["stable_avg_cost"] = entry.summary.stable_slots > 0
                               ? json(entry.summary.stable_avg_cost)
                               : json(nullptr);
    j["unstable_slots"] = entry.summary.unstable_slots;
    j["unstable_avg_cost"] = entry.summary.unstable_slots > 0
                                 ? json(entry.summary.unstable_avg_cost)
                                 : json(nullptr);
    j["effective_threshold"] = entry.summary.effective_threshold
                                   ? json(*entry.summary.effective_threshold)
                                   : json(nullptr);
    if (entry.summary.oracle) {
        j["oracle"]["mean_gap"] = entry.summary.oracle->mean_gap;
        j["oracle"]["max_gap"] = entry.summary.oracle->max_gap;
        j["oracle"]["violations"] = entry.summary.oracle->violations;
    } else {
        j["oracle"] = nullptr;
    }
    j["config"] = config_to_json(entry.config);
    return j;
}

void write_summary(std::span<const SweepEntry> entries,
                   const std::filesystem::path& path) {
    if (entries.empty()) {
        throw std::invalid_argument("write_summary: no entries");
    }
    json array = json::array();
    for (const SweepEntry& entry : entries) {
        array.push_back(summary_to_json(entry));
    }
    std::ofstream out = open_output(path, "write_summary");
    out << array.dump(2) << '\n';
    finish_output(out, path, "write_summary");
}

void write_workload_trace(const TrafficPattern& pattern, std::uint64_t seed,
                          std::size_t slots, const std::filesystem::path& path) {
    if (slots == 0) {
        throw std::invalid_argument("write_workload_trace: need at least one slot");
    }
    SeededSource source(seed, 0);
    std::ofstream out = open_output(path, "write_workload_trace");
    out << "slot,user,size,phase\n";
    for (std::size_t t = 1; t <= slots; ++t) {
        const SlotWorkload workload = draw_slot(pattern, source, t);
        const std::string_view phase = to_string(phase_of(pattern, t));
        for (std::size_t i = 0; i < workload.num_users(); ++i) {
            out << t << ',' << i << ',' << format_double(workload.sizes[i]) << ','
                << phase << '\n';
        }
    }
    finish_output(out, path, "write_workload_trace");
}

}  // namespace edgebandit
