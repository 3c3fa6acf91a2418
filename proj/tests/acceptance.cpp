// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ocd/bench.hpp"
#include "ocd/cli.hpp"
#include "ocd/encoding.hpp"
#include "ocd/evolution.hpp"
#include "ocd/fitness.hpp"
#include "ocd/generators.hpp"
#include "ocd/informativeness.hpp"
#include "oracles.hpp"

using namespace ocd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Graph random_connected_enough(std::size_t n, double p, Rng& rng) {
    while (true) {
        Graph g = erdos_renyi(n, p, rng);
        if (g.edge_count() > 0) return g;
    }
}

DisjointPartition random_partition(std::size_t n, Rng& rng) {
    std::uniform_int_distribution<std::uint32_t> blocks(1, static_cast<std::uint32_t>(n));
    std::uniform_int_distribution<std::uint32_t> pick(0, blocks(rng) - 1);
    std::vector<std::uint32_t> labels(n);
    for (auto& l : labels) l = pick(rng);
    return DisjointPartition::from_assignment(labels);
}

Outcome disjoint_reduction() {
    auto t0 = Clock::now();
    Rng rng(20240101);
    std::uniform_int_distribution<std::size_t> size(2, 30);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = random_connected_enough(size(rng), 0.2, rng);
        auto pi = random_partition(g.size(), rng);
        double overlapping = overlapping_modularity(Cover::from_partition(pi), g);
        worst = std::max(worst, std::abs(overlapping - disjoint_modularity(pi, g)));
    }
    double elapsed = seconds_since(t0);
    std::ostringstream d;
    d << "max |diff| = " << worst << ", " << elapsed << " s";
    return {worst <= 1e-12 && elapsed < 5.0, d.str()};
}

Outcome hand_oracle() {
    Graph g = testing::two_triangles();
    Cover natural(g.size(), {{0, 1, 2}, {3, 4, 5}}, 1);
    double q = overlapping_modularity(natural, g);
    double err = std::abs(q - 5.0 / 14.0);

    Rng rng(77);
    double worst_null = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        Graph r = random_connected_enough(5 + trial % 20, 0.3, rng);
        std::vector<NodeId> all(r.size());
        for (NodeId i = 0; i < r.size(); ++i) all[i] = i;
        worst_null = std::max(worst_null, std::abs(overlapping_modularity(Cover(r.size(), {all}, 1), r)));
    }
    std::ostringstream d;
    d << "Q(two triangles) = " << q << " (|err| " << err << "), max |Q(single)| = " << worst_null;
    return {err <= 1e-12 && worst_null <= 1e-12, d.str()};
}

Outcome brute_force_optimality() {
    auto t0 = Clock::now();
    auto corpus = testing::small_graph_corpus();
    std::vector<double> optimum;
    for (const auto& g : corpus) optimum.push_back(brute_force_best(g, 2).q);

    std::ostringstream d;
    bool pass = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        int hits = 0;
        for (std::size_t k = 0; k < corpus.size(); ++k) {
            GAConfig cfg;
            cfg.population_size = 50;
            cfg.generations = 200;
            cfg.max_memberships = 2;
            cfg.seed = seed;
            auto report = run(corpus[k], cfg);
            if (std::abs(report.best_q - optimum[k]) <= 1e-9) ++hits;
        }
        d << "seed " << seed << ": " << hits << "/20  ";
        pass = pass && hits >= 18;
    }
    double elapsed = seconds_since(t0);
    d << elapsed << " s";
    return {pass && elapsed < 60.0, d.str()};
}

Outcome ring_recovery() {
    auto t0 = Clock::now();
    auto planted = ring_of_cliques(3, 4);
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GAConfig cfg;
        cfg.max_memberships = 2;
        cfg.seed = seed;
        auto report = run(planted.graph, cfg);
        double nmi = overlapping_nmi(report.best_cover, planted.truth).value;
        if (report.best_cover.same_communities(planted.truth) && nmi == 1.0) ++hits;
    }
    double elapsed = seconds_since(t0);
    std::ostringstream d;
    d << hits << "/20 seeds recover the planted cover, " << elapsed << " s";
    return {hits >= 16 && elapsed < 30.0, d.str()};
}

Outcome karate_sanity() {
    Graph g = testing::karate();
    double greedy_q = greedy_baseline(g).q;
    std::ostringstream d;
    d << "greedy Q " << greedy_q << "; ";
    bool pass = true;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto t0 = Clock::now();
        GAConfig cfg;
        cfg.seed = seed;
        auto report = run(g, cfg);
        double elapsed = seconds_since(t0);
        double projected = report.best_projected_q;
        bool ok = projected >= greedy_q && report.best_q >= 0.3 && report.best_q <= 0.7 && elapsed < 10.0;
        pass = pass && ok;
        d << "seed " << seed << ": Q " << report.best_q << " projected " << projected << " (" << elapsed << " s)"
          << (ok ? "" : " FAIL") << "; ";
    }
    return {pass, d.str()};
}

Outcome kld_properties() {
    Rng rng(4242);
    std::uniform_int_distribution<std::size_t> alphabet(1, 20);
    std::uniform_int_distribution<std::size_t> count(0, 50);
    double min_kld = 0.0, worst_uniform = 0.0, worst_degenerate = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t size = alphabet(rng);
        std::vector<std::size_t> counts(size);
        for (auto& c : counts) c = count(rng);
        counts[0] += 1;
        min_kld = std::min(min_kld, locus_kld(AlleleDistribution::from_counts(counts, size)));

        std::vector<std::size_t> flat(size, 3);
        worst_uniform = std::max(worst_uniform, locus_kld(AlleleDistribution::from_counts(flat, size)));

        std::vector<std::size_t> spike(size, 0);
        spike[trial % size] = 9;
        double kld = locus_kld(AlleleDistribution::from_counts(spike, size));
        worst_degenerate = std::max(worst_degenerate, std::abs(kld - std::log(static_cast<double>(size))));
    }
    std::ostringstream d;
    d << "min " << min_kld << ", uniform max " << worst_uniform << ", degenerate max |err| " << worst_degenerate;
    return {min_kld >= 0.0 && worst_uniform < 1e-12 && worst_degenerate <= 1e-12, d.str()};
}

Outcome mutation_pressure() {
    auto planted = ring_of_cliques(3, 4);
    const Graph& g = planted.graph;
    GAConfig cfg;
    auto info = InformativenessTable::uniform(g.size(), 0.0);
    for (NodeId i = 0; i < g.size(); ++i) info.combined[i] = static_cast<double>(i) / static_cast<double>(g.size() - 1);

    Rng init(5);
    Chromosome x = random_chromosome(g, 0.05, cfg.max_memberships, init);
    const int trials = 10000;
    std::vector<int> redrawn(g.size(), 0);
    MutationTrace trace;
    for (int t = 0; t < trials; ++t) {
        Rng rng = slot_rng(99, 1, static_cast<std::uint64_t>(t));
        adaptive_mutate(x, g, info, cfg, rng, &trace);
        for (NodeId i = 0; i < g.size(); ++i) redrawn[i] += trace.redrawn[i];
    }
    double worst_z = 0.0;
    for (NodeId i = 0; i < g.size(); ++i) {
        double p = mutation_probability(info.combined[i], cfg);
        double sigma = std::sqrt(p * (1.0 - p) / trials);
        worst_z = std::max(worst_z, std::abs(redrawn[i] / static_cast<double>(trials) - p) / sigma);
    }
    std::ostringstream d;
    d << "max |z| = " << worst_z << " over " << g.size() << " nodes";
    return {worst_z <= 3.0, d.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    fs::path dir = fs::temp_directory_path() / "ocd_acceptance_determinism";
    fs::create_directories(dir);
    bool pass = true;
    std::ostringstream d;
    for (const std::vector<std::string> source :
         {std::vector<std::string>{"--input", testing::data_path("karate.txt")},
          std::vector<std::string>{"--generate", "ring:3,4"}}) {
        std::vector<std::string> outputs, traces;
        for (int r = 0; r < 2; ++r) {
            auto cover = dir / ("cover" + std::to_string(r) + ".txt");
            auto report = dir / ("report" + std::to_string(r) + ".json");
            std::vector<std::string> args{"detect"};
            args.insert(args.end(), source.begin(), source.end());
            args.insert(args.end(), {"--seed", "7", "--generations", "150", "--output", cover.string(), "--report",
                                     report.string()});
            std::ostringstream out, err;
            if (run_cli(args, out, err) != 0) {
                pass = false;
                d << "run failed: " << err.str();
            }
            outputs.push_back(slurp(cover));
            traces.push_back(nlohmann::json::parse(slurp(report))["q_trace"].dump());
        }
        bool same = outputs[0] == outputs[1] && !outputs[0].empty() && traces[0] == traces[1];
        pass = pass && same;
        d << source[1].substr(source[1].find_last_of('/') + 1) << (same ? " identical; " : " DIFFERS; ");
    }
    fs::remove_all(dir);
    return {pass, d.str()};
}

Outcome elitism_and_validity() {
    Rng rng(31337);
    std::uniform_int_distribution<std::size_t> size(6, 25);
    int runs_ok = 0;
    std::size_t checked = 0;
    std::string failure;
    for (int r = 0; r < 50; ++r) {
        Graph g = random_connected_enough(size(rng), 0.25, rng);
        GAConfig cfg;
        cfg.population_size = 20;
        cfg.generations = 40;
        cfg.max_memberships = 1 + static_cast<std::size_t>(r % 3);
        cfg.seed = static_cast<std::uint64_t>(r);
        bool valid = true;
        auto report = run(g, cfg, [&](const Population& pop, const InformativenessTable*) {
            for (std::size_t k = 0; k < pop.individuals.size(); ++k) {
                try {
                    Cover c = decode_cover(pop.individuals[k], g, cfg.max_memberships);
                    for (NodeId i = 0; i < g.size(); ++i)
                        if (c.membership_count(i) < 1 || c.membership_count(i) > cfg.max_memberships) valid = false;
                    if (std::abs(overlapping_modularity(c, g) - pop.fitness[k]) > 1e-12) valid = false;
                } catch (const std::exception& e) {
                    valid = false;
                    failure = e.what();
                }
                ++checked;
            }
        });
        bool monotone = true;
        for (std::size_t t = 1; t < report.q_trace.size(); ++t)
            if (report.q_trace[t] < report.q_trace[t - 1]) monotone = false;
        if (valid && monotone && report.best_q == report.q_trace.back()) ++runs_ok;
    }
    std::ostringstream d;
    d << runs_ok << "/50 runs monotone with valid individuals (" << checked << " individuals checked)";
    if (!failure.empty()) d << "; " << failure;
    return {runs_ok == 50, d.str()};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
    };
    std::vector<Criterion> criteria = {
        {"1 disjoint reduction", disjoint_reduction},
        {"2 hand oracle values", hand_oracle},
        {"3 brute-force optimality", brute_force_optimality},
        {"4 planted ring cover recovery", ring_recovery},
        {"5 karate sanity", karate_sanity},
        {"6 KLD properties", kld_properties},
        {"7 mutation pressure", mutation_pressure},
        {"8 determinism", determinism},
        {"9 elitism and validity", elitism_and_validity},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << o.detail << std::endl;
        if (!o.pass) ++failed;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
