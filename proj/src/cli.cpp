#include "ocd/cli.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "ocd/bench.hpp"
#include "ocd/evolution.hpp"
#include "ocd/fitness.hpp"
#include "ocd/generators.hpp"
#include "ocd/io.hpp"

namespace ocd {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InputOptions {
    std::string path;
    std::string generator;
};

struct LoadedInput {
    Graph graph;
    std::optional<Cover> truth;
    nlohmann::json descriptor;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    auto* file = cmd->add_option("--input", in.path, "Edge list file");
    auto* gen = cmd->add_option("--generate", in.generator, "Synthetic graph, ring:C,S[,W]");
    file->excludes(gen);
    gen->excludes(file);
}

PlantedCover generate(const std::string& spec) {
    const std::string prefix = "ring:";
    if (spec.rfind(prefix, 0) != 0) throw UsageError("unknown generator '" + spec + "', expected ring:C,S[,W]");
    std::vector<std::size_t> params;
    std::istringstream fields(spec.substr(prefix.size()));
    for (std::string tok; std::getline(fields, tok, ',');) {
        std::size_t used = 0;
        unsigned long value = 0;
        try {
            value = std::stoul(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tok.size()) throw UsageError("bad generator parameter '" + tok + "'");
        params.push_back(value);
    }
    if (params.size() < 2 || params.size() > 3) throw UsageError("generator expects ring:C,S[,W]");
    try {
        return params.size() == 2 ? ring_of_cliques(params[0], params[1]) : ring_of_cliques(params[0], params[1], params[2]);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

LoadedInput load_input(const InputOptions& in, std::ostream& err) {
    if (in.path.empty() == in.generator.empty()) throw UsageError("exactly one of --input or --generate is required");
    if (!in.generator.empty()) {
        auto planted = generate(in.generator);
        return {std::move(planted.graph), std::move(planted.truth), {{"generator", in.generator}}};
    }
    auto loaded = load_edge_list_file(in.path);
    if (loaded.stats.dropped() > 0)
        err << "note: dropped " << loaded.stats.self_loops << " self-loop(s) and " << loaded.stats.duplicates
            << " duplicate edge(s)\n";
    return {std::move(loaded.graph), std::nullopt, {{"path", in.path}}};
}

// Writes through `write` to `path`, or to `fallback` when path is empty.
template <typename Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    write(file);
    if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

std::string format_q(double q) {
    std::ostringstream s;
    s << std::setprecision(12) << q;
    return s.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Overlapping community detection with an informativeness-adaptive genetic algorithm", "ocd"};
    app.require_subcommand(1);

    InputOptions input;
    std::string output_path;

    // detect
    auto* detect = app.add_subcommand("detect", "Run the genetic algorithm and print the best cover");
    GAConfig cfg;
    std::optional<std::uint64_t> seed;
    std::string report_path;
    std::string dump_path;
    add_input_options(detect, input);
    detect->add_option("--output", output_path, "Cover output file (default: standard output)");
    detect->add_option("--report", report_path, "JSON run report");
    detect->add_option("--seed", seed, "Random seed (drawn from entropy when absent)");
    detect->add_option("--population", cfg.population_size, "Population size")->capture_default_str();
    detect->add_option("--generations", cfg.generations, "Generation cap")->capture_default_str();
    detect->add_option("--stagnation", cfg.stagnation_window, "Stop after this many generations without improvement")
        ->capture_default_str();
    detect->add_option("--k-max", cfg.max_memberships, "Maximum memberships per node")->capture_default_str();
    detect->add_option("--lambda", cfg.lambda, "Weight of the membership-count term")->capture_default_str();
    detect->add_option("--p-min", cfg.p_min, "Mutation probability of fully informative nodes")->capture_default_str();
    detect->add_option("--p-max", cfg.p_max, "Mutation probability of uninformative nodes")->capture_default_str();
    detect->add_option("--workers", cfg.workers, "Threads building offspring")->capture_default_str();
    detect->add_option("--dump-informativeness", dump_path, "Per-generation informativeness table (TSV)");

    // score
    auto* score = app.add_subcommand("score", "Overlapping modularity of a cover file");
    std::string cover_path;
    std::size_t score_k = 0;
    add_input_options(score, input);
    score->add_option("--cover", cover_path, "Cover file, one community per line")->required();
    score->add_option("--k-max", score_k, "Maximum memberships per node (default: as many as the cover uses)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Run a reference optimizer");
    std::string oracle_kind = "greedy";
    std::size_t oracle_k = 2;
    add_input_options(oracle, input);
    oracle->add_option("--oracle", oracle_kind, "greedy or brute")
        ->check(CLI::IsMember({"greedy", "brute"}))
        ->capture_default_str();
    oracle->add_option("--k-max", oracle_k, "Maximum memberships per node (brute only)")->capture_default_str();
    oracle->add_option("--output", output_path, "Cover output file (default: standard output)");

    // generate
    auto* gen = app.add_subcommand("generate", "Write a synthetic graph and its planted cover");
    std::string truth_path;
    gen->add_option("--generate", input.generator, "ring:C,S[,W]")->required();
    gen->add_option("--output", output_path, "Edge list output file (default: standard output)");
    gen->add_option("--truth", truth_path, "Planted cover output file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kExitUsage;
    }

    try {
        if (detect->parsed()) {
            auto loaded = load_input(input, err);
            if (!seed) {
                seed = std::random_device{}() | (std::uint64_t{std::random_device{}()} << 32);
                err << "seed: " << *seed << '\n';
            }
            cfg.seed = *seed;
            try {
                cfg.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }

            std::ofstream dump;
            if (!dump_path.empty()) {
                dump.open(dump_path);
                if (!dump) throw std::runtime_error("cannot write '" + dump_path + "'");
                write_informativeness_header(dump);
            }
            RunObserver observer;
            if (dump.is_open())
                observer = [&](const Population& pop, const InformativenessTable* info) {
                    if (info) write_informativeness(dump, loaded.graph, *info, pop.generation);
                };

            RunReport report = run(loaded.graph, cfg, observer);
            emit(output_path, out, [&](std::ostream& s) { write_cover(s, report.best_cover, loaded.graph); });
            if (!report_path.empty()) {
                auto json = report_to_json(report, loaded.graph, loaded.descriptor);
                emit(report_path, out, [&](std::ostream& s) { s << json.dump(2) << '\n'; });
            }
            err << "best Q " << format_q(report.best_q) << " after " << report.generations_run << " generations\n";
            return kExitOk;
        }

        if (score->parsed()) {
            auto loaded = load_input(input, err);
            std::ifstream in(cover_path);
            if (!in) throw std::runtime_error("cannot open '" + cover_path + "'");
            Cover cover = read_cover(in, loaded.graph, score_k == 0 ? loaded.graph.size() : score_k);
            out << format_q(overlapping_modularity(cover, loaded.graph)) << '\n';
            return kExitOk;
        }

        if (oracle->parsed()) {
            auto loaded = load_input(input, err);
            OracleResult result = oracle_kind == "brute" ? brute_force_best(loaded.graph, oracle_k)
                                                         : greedy_baseline(loaded.graph);
            emit(output_path, out, [&](std::ostream& s) { write_cover(s, result.cover, loaded.graph); });
            err << oracle_kind << " Q " << format_q(result.q) << '\n';
            return kExitOk;
        }

        if (gen->parsed()) {
            auto planted = generate(input.generator);
            emit(output_path, out, [&](std::ostream& s) { write_edge_list(s, planted.graph); });
            if (!truth_path.empty())
                emit(truth_path, out, [&](std::ostream& s) { write_cover(s, planted.truth, planted.graph); });
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace ocd
