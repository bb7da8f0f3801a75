#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "edgebandit/engine.hpp"
#include "edgebandit/workload.hpp"

namespace edgebandit {

/// Shortest exact decimal form of a double (17 significant digits):
/// re-parsing the text recovers the identical bits.
std::string format_double(double value);

/// Per-slot trace CSV with header
/// `slot,phase,arm,cost,avg_cost,pred_state,true_phase`, LF endings, and
/// empty (not zero) pred_state for policies without a detector. Rewriting
/// the same records yields a byte-identical file.
void write_trace(std::span<const SlotRecord> records,
                 const std::filesystem::path& path);

nlohmann::json summary_to_json(const SweepEntry& entry);

/// JSON array with one object per (override, seed): costs, per-phase
/// averages, and the effective config echo. Object keys are sorted, so the
/// output is stable across reruns.
void write_summary(std::span<const SweepEntry> entries,
                   const std::filesystem::path& path);

/// Debugging dump of the raw workload stream: `slot,user,size,phase` rows.
void write_workload_trace(const TrafficPattern& pattern, std::uint64_t seed,
                          std::size_t slots, const std::filesystem::path& path);

}  // namespace edgebandit
