#include "ocd/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

namespace ocd {

void write_cover(std::ostream& out, const Cover& cover, const Graph& g) {
    for (const auto& members : cover.communities()) {
        for (std::size_t k = 0; k < members.size(); ++k) {
            if (k) out << ' ';
            out << g.label(members[k]);
        }
        out << '\n';
    }
}

Cover read_cover(std::istream& in, const Graph& g, std::size_t max_memberships) {
    std::unordered_map<std::string, NodeId> ids;
    for (NodeId i = 0; i < g.size(); ++i) ids.emplace(g.label(i), i);

    std::vector<std::vector<NodeId>> communities;
    std::vector<CommunityId> primary(g.size(), ~CommunityId{0});
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream tokens(line);
        std::vector<NodeId> members;
        for (std::string tok; tokens >> tok;) {
            auto it = ids.find(tok);
            if (it == ids.end()) throw ParseError(line_no, "unknown node label '" + tok + "'");
            members.push_back(it->second);
            if (primary[it->second] == ~CommunityId{0})
                primary[it->second] = static_cast<CommunityId>(communities.size());
        }
        communities.push_back(std::move(members));
    }
    for (NodeId i = 0; i < g.size(); ++i)
        if (primary[i] == ~CommunityId{0}) throw InvalidCover("node " + g.label(i) + " is not covered");
    return Cover(g.size(), std::move(communities), max_memberships, std::move(primary));
}

double round_q(double q) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", q);
    return std::stod(buf);
}

nlohmann::json config_to_json(const GAConfig& cfg) {
    return {
        {"population_size", cfg.population_size},
        {"generations", cfg.generations},
        {"stagnation_window", cfg.stagnation_window},
        {"elitism_count", cfg.elitism_count},
        {"tournament_size", cfg.tournament_size},
        {"crossover_rate", cfg.crossover_rate},
        {"p_min", cfg.p_min},
        {"p_max", cfg.p_max},
        {"p_overlap_init", cfg.p_overlap_init},
        {"max_memberships", cfg.max_memberships},
        {"lambda", cfg.lambda},
        {"reassignment_rate", cfg.reassignment_rate},
        {"seed", cfg.seed},
        {"workers", cfg.workers},
    };
}

nlohmann::json report_to_json(const RunReport& report, const Graph& g, const nlohmann::json& input) {
    nlohmann::json trace = nlohmann::json::array();
    for (double q : report.q_trace) trace.push_back(round_q(q));
    nlohmann::json overlaps = nlohmann::json::array();
    for (NodeId i : report.best_cover.overlap_nodes()) overlaps.push_back(g.label(i));
    return {
        {"version", kReportVersion},
        {"input", input},
        {"config", config_to_json(report.config)},
        {"seed", report.config.seed},
        {"best_q", round_q(report.best_q)},
        {"q_trace", std::move(trace)},
        {"generations_run", report.generations_run},
        {"wall_time_s", report.wall_time_s},
        {"overlap_nodes", std::move(overlaps)},
    };
}

}  // namespace ocd
