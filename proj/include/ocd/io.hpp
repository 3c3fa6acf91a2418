#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include "ocd/encoding.hpp"
#include "ocd/evolution.hpp"
#include "ocd/graph.hpp"
#include "json.hpp"

namespace ocd {

/// One community per line, members as space separated labels in id order,
/// lines in community id order.
void write_cover(std::ostream& out, const Cover& cover, const Graph& g);

/// Reads the format written by write_cover. Blank and '#' lines are skipped.
/// Primary membership of each node is the first listed community holding
/// it. Throws ParseError for unknown labels and InvalidCover for an invalid
/// cover (uncovered nodes, more than `max_memberships` memberships).
Cover read_cover(std::istream& in, const Graph& g, std::size_t max_memberships);

/// Rounds to 12 significant digits, the precision reports carry.
double round_q(double q);

inline constexpr int kReportVersion = 1;

/// Run report as JSON with keys: version, input, config, seed, best_q,
/// q_trace, generations_run, wall_time_s, overlap_nodes.
nlohmann::json report_to_json(const RunReport& report, const Graph& g, const nlohmann::json& input);

nlohmann::json config_to_json(const GAConfig& cfg);

}  // namespace ocd
