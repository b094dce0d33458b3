#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "uavsim/config.hpp"
#include "uavsim/csvio.hpp"
#include "uavsim/experiments.hpp"
#include "uavsim/metrics.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace uavsim;

namespace {

constexpr const char* kVersion = "uavsim 0.1.0";

RunConfig load_config(const std::string& path) {
    if (path.empty()) return RunConfig{};
    return parse_config_file(path);
}

std::string slot_file_name(int episode) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "slots_ep%03d.csv", episode);
    return buf;
}

// The manifest is written before any episode runs so that every artifact of
// the run is declared up front.
void write_manifest(const fs::path& out_dir, const std::string& command, const RunConfig& config,
                    const std::vector<std::uint64_t>& seeds,
                    const std::vector<std::string>& outputs) {
    json manifest;
    manifest["version"] = kVersion;
    manifest["command"] = command;
    manifest["seeds"] = seeds;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    manifest["started_at"] = stamp;
    manifest["config"] = dump_config(config);
    manifest["outputs"] = outputs;
    std::ofstream out(out_dir / "manifest.json", std::ios::binary);
    out << manifest.dump(2) << '\n';
}

std::vector<EpisodeStats> eval_episode_stats(const EvalOutcome& outcome) {
    std::vector<EpisodeStats> rows;
    for (std::size_t i = 0; i < outcome.episodes.size(); ++i) {
        EpisodeStats row;
        row.episode = static_cast<int>(i);
        row.throughput = outcome.episodes[i].throughput;
        row.violation_rate = outcome.episodes[i].violation_rate;
        row.epsilon = 0.0;
        rows.push_back(row);
    }
    return rows;
}

void write_eval_outputs(const fs::path& dir, const EvalOutcome& outcome, int user_count) {
    write_episodes_csv((dir / "episodes.csv").string(), eval_episode_stats(outcome));
    for (std::size_t i = 0; i < outcome.episodes.size(); ++i) {
        write_slots_csv((dir / slot_file_name(static_cast<int>(i))).string(),
                        outcome.episodes[i].slots, user_count);
    }
}

void save_networks(const fs::path& dir, const TrainOutcome& outcome, Algo algo) {
    if (algo == Algo::Mdqn) {
        save_weights((dir / "weights.txt").string(), outcome.nets[0]);
    } else {
        for (std::size_t i = 0; i < outcome.nets.size(); ++i) {
            save_weights((dir / ("weights_agent" + std::to_string(i) + ".txt")).string(),
                         outcome.nets[i]);
        }
    }
}

int run_train(const std::string& config_path, const std::string& algo_name, std::uint64_t seed,
              const std::string& out, int episodes_override) {
    RunConfig config = load_config(config_path);
    if (episodes_override > 0) config.train.episodes = episodes_override;
    const Algo algo = algo_name == "independent" ? Algo::Independent : Algo::Mdqn;

    fs::create_directories(out);
    std::vector<std::string> outputs = {"episodes.csv", "loss.csv"};
    if (algo == Algo::Mdqn) {
        outputs.push_back("weights.txt");
    } else {
        for (int i = 0; i < config.env.uav_count; ++i) {
            outputs.push_back("weights_agent" + std::to_string(i) + ".txt");
        }
    }
    write_manifest(out, "train --algo " + algo_name, config, {seed}, outputs);

    ExperimentSetup setup{config.env, config.train, algo, BaselineKind::None, seed};
    const TrainOutcome outcome = train_run(setup);

    write_episodes_csv((fs::path(out) / "episodes.csv").string(), outcome.episodes);
    write_loss_csv((fs::path(out) / "loss.csv").string(), outcome.losses);
    save_networks(out, outcome, algo);

    std::cout << "trained " << config.train.episodes << " episodes, final throughput "
              << format_double(outcome.episodes.back().throughput) << " bits, audit "
              << outcome.audit.total() << " violations\n";
    return 0;
}

int run_eval(const std::string& checkpoint, const std::string& config_path, int episodes,
             std::uint64_t seed, const std::string& out, const std::string& kind_name,
             bool no_recluster) {
    const RunConfig config = load_config(config_path);
    BaselineKind kind = BaselineKind::None;
    if (!kind_name.empty()) {
        const auto parsed = baseline_from_name(kind_name);
        if (!parsed) {
            std::cerr << "unknown baseline kind '" << kind_name << "'\n";
            return 2;
        }
        kind = *parsed;
    }

    std::vector<Mlp> nets;
    if (kind != BaselineKind::Circular && kind != BaselineKind::Random) {
        nets.push_back(load_weights(checkpoint));
    }

    fs::create_directories(out);
    std::vector<std::string> outputs = {"episodes.csv"};
    for (int i = 0; i < episodes; ++i) outputs.push_back(slot_file_name(i));
    write_manifest(out, "eval", config, {seed}, outputs);

    ExperimentSetup setup{config.env, config.train, Algo::Mdqn, kind, seed};
    const EvalOutcome outcome = eval_run(setup, nets, episodes, seed, no_recluster);
    write_eval_outputs(out, outcome, config.env.user_count);

    std::cout << "evaluated " << episodes << " episodes, mean throughput "
              << format_double(outcome.mean_throughput) << " bits, audit "
              << outcome.audit.total() << " violations\n";
    return 0;
}

int run_baseline(const std::string& kind_name, const std::string& config_path,
                 std::uint64_t seed, const std::string& out, int episodes_override) {
    const auto kind = baseline_from_name(kind_name);
    if (!kind) {
        std::cerr << "unknown baseline kind '" << kind_name << "'\n";
        return 2;
    }
    RunConfig config = load_config(config_path);
    if (episodes_override > 0) config.train.episodes = episodes_override;
    const ModeBundle mode = resolve_mode(*kind);
    fs::create_directories(out);

    if (mode.trainable) {
        std::vector<std::string> outputs = {"episodes.csv", "loss.csv", "weights.txt"};
        write_manifest(out, "baseline --kind " + kind_name, config, {seed}, outputs);
        ExperimentSetup setup{config.env, config.train, Algo::Mdqn, *kind, seed};
        const TrainOutcome outcome = train_run(setup);
        write_episodes_csv((fs::path(out) / "episodes.csv").string(), outcome.episodes);
        write_loss_csv((fs::path(out) / "loss.csv").string(), outcome.losses);
        save_networks(out, outcome, Algo::Mdqn);
        std::cout << "trained baseline '" << kind_name << "', final throughput "
                  << format_double(outcome.episodes.back().throughput) << " bits\n";
    } else {
        const int episodes = episodes_override > 0 ? episodes_override
                                                   : config.train.eval_episodes;
        std::vector<std::string> outputs = {"episodes.csv"};
        for (int i = 0; i < episodes; ++i) outputs.push_back(slot_file_name(i));
        write_manifest(out, "baseline --kind " + kind_name, config, {seed}, outputs);
        ExperimentSetup setup{config.env, config.train, Algo::Mdqn, *kind, seed};
        const EvalOutcome outcome = eval_run(setup, {}, episodes, seed);
        write_eval_outputs(out, outcome, config.env.user_count);
        std::cout << "ran baseline '" << kind_name << "' for " << episodes
                  << " episodes, mean throughput " << format_double(outcome.mean_throughput)
                  << " bits\n";
    }
    return 0;
}

struct CompareSpec {
    std::string config_path;
    std::vector<std::string> cells;
    std::vector<std::uint64_t> seeds;
    int episodes = 0;       // training episodes override
    int eval_episodes = 0;  // eval episodes override
};

CompareSpec parse_compare_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("compare: cannot open spec '" + path + "'");
    CompareSpec spec;
    std::string raw;
    int line_no = 0;
    std::string section;
    auto trim = [](const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, raw)) {
        line_no++;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            section = line.substr(1, line.size() - 2);
            if (section != "compare") {
                throw std::runtime_error("compare spec line " + std::to_string(line_no) +
                                         ": unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || section != "compare") {
            throw std::runtime_error("compare spec line " + std::to_string(line_no) +
                                     ": expected 'key = value' inside [compare]");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "config") {
            spec.config_path = value;
        } else if (key == "cells") {
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) spec.cells.push_back(trim(item));
        } else if (key == "seeds") {
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) spec.seeds.push_back(std::stoull(trim(item)));
        } else if (key == "episodes") {
            spec.episodes = std::stoi(value);
        } else if (key == "eval_episodes") {
            spec.eval_episodes = std::stoi(value);
        } else {
            throw std::runtime_error("compare spec line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
        }
    }
    if (spec.cells.empty()) throw std::runtime_error("compare: no cells listed");
    if (spec.seeds.empty()) spec.seeds = {1, 2, 3};
    return spec;
}

struct CellResult {
    std::string cell;
    std::uint64_t seed = 0;
    double eval_throughput = 0.0;
    double violation_rate = 0.0;
    long convergence = -1;  // trained cells only
};

CellResult run_cell(const std::string& cell, std::uint64_t seed, const RunConfig& base,
                    const fs::path& dir) {
    RunConfig config = base;
    fs::create_directories(dir);

    CellResult result;
    result.cell = cell;
    result.seed = seed;

    Algo algo = Algo::Mdqn;
    BaselineKind kind = BaselineKind::None;
    if (cell == "independent") {
        algo = Algo::Independent;
    } else if (cell != "mdqn") {
        const auto parsed = baseline_from_name(cell);
        if (!parsed) throw std::runtime_error("compare: unknown cell '" + cell + "'");
        kind = *parsed;
    }

    ExperimentSetup setup{config.env, config.train, algo, kind, seed};
    const ModeBundle mode = resolve_mode(kind);
    std::vector<Mlp> nets;
    if (mode.trainable) {
        const TrainOutcome trained = train_run(setup);
        write_episodes_csv((dir / "episodes.csv").string(), trained.episodes);
        write_loss_csv((dir / "loss.csv").string(), trained.losses);
        result.convergence = convergence_step(trained.losses);
        nets = trained.nets;
    }
    // Independent training keeps per-agent networks; evaluate with them all.
    const EvalOutcome outcome =
        eval_run(setup, nets, config.train.eval_episodes, seed);
    write_eval_outputs(dir, outcome, config.env.user_count);
    result.eval_throughput = outcome.mean_throughput;
    result.violation_rate = outcome.mean_violation_rate;
    return result;
}

int run_compare(const std::string& spec_path, const std::string& out, int jobs) {
    const CompareSpec spec = parse_compare_spec(spec_path);
    RunConfig config = load_config(spec.config_path);
    if (spec.episodes > 0) config.train.episodes = spec.episodes;
    if (spec.eval_episodes > 0) config.train.eval_episodes = spec.eval_episodes;

    fs::create_directories(out);
    write_manifest(out, "compare", config, spec.seeds, {"summary.csv"});

    struct Job {
        std::string cell;
        std::uint64_t seed;
    };
    std::vector<Job> jobs_list;
    for (const std::string& cell : spec.cells) {
        for (std::uint64_t seed : spec.seeds) jobs_list.push_back({cell, seed});
    }

    std::vector<CellResult> results(jobs_list.size());
    const int workers = std::max(1, jobs);
    std::size_t next = 0;
    while (next < jobs_list.size()) {
        std::vector<std::future<CellResult>> batch;
        const std::size_t end = std::min(next + workers, jobs_list.size());
        for (std::size_t i = next; i < end; ++i) {
            const Job& job = jobs_list[i];
            const fs::path dir =
                fs::path(out) / (job.cell + "_seed" + std::to_string(job.seed));
            batch.push_back(std::async(std::launch::async, run_cell, job.cell, job.seed,
                                       std::cref(config), dir));
        }
        for (std::size_t i = next; i < end; ++i) results[i] = batch[i - next].get();
        next = end;
    }

    std::vector<SummaryRow> rows;
    for (const std::string& cell : spec.cells) {
        std::vector<double> throughputs;
        std::vector<double> violations;
        std::vector<double> convergences;
        for (const CellResult& r : results) {
            if (r.cell != cell) continue;
            throughputs.push_back(r.eval_throughput);
            violations.push_back(r.violation_rate);
            if (r.convergence >= 0) convergences.push_back(static_cast<double>(r.convergence));
        }
        const int n = static_cast<int>(throughputs.size());
        rows.push_back({cell, "eval_throughput_bits", n, mean(throughputs),
                        sample_stddev(throughputs)});
        rows.push_back({cell, "violation_rate", n, mean(violations), sample_stddev(violations)});
        if (!convergences.empty()) {
            rows.push_back({cell, "convergence_step", static_cast<int>(convergences.size()),
                            mean(convergences), sample_stddev(convergences)});
        }
    }

    // steps-to-threshold ratio between the two training modes, per seed
    const bool has_pair =
        std::count(spec.cells.begin(), spec.cells.end(), "mdqn") &&
        std::count(spec.cells.begin(), spec.cells.end(), "independent");
    if (has_pair) {
        std::vector<double> ratios;
        for (std::uint64_t seed : spec.seeds) {
            double mdqn = 0.0;
            double indep = 0.0;
            for (const CellResult& r : results) {
                if (r.seed != seed) continue;
                if (r.cell == "mdqn") mdqn = static_cast<double>(r.convergence);
                if (r.cell == "independent") indep = static_cast<double>(r.convergence);
            }
            if (mdqn > 0.0) ratios.push_back(indep / mdqn);
        }
        rows.push_back({"independent_vs_mdqn", "convergence_step_ratio",
                        static_cast<int>(ratios.size()), mean(ratios), sample_stddev(ratios)});
    }

    write_summary_csv((fs::path(out) / "summary.csv").string(), rows);
    std::cout << "compare finished: " << jobs_list.size() << " cells, summary at " << out
              << "/summary.csv\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NOMA multi-UAV offloading simulator and Q-learning harness"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "run";
    std::string algo = "mdqn";
    std::string kind;
    std::string checkpoint;
    std::string spec_path;
    std::uint64_t seed = 1;
    int episodes = 0;
    int eval_episodes = 20;
    bool no_recluster = false;
    int jobs = 2;

    CLI::App* train = app.add_subcommand("train", "Train the shared or independent Q-networks");
    train->add_option("--config", config_path, "Config file (defaults when omitted)");
    train->add_option("--algo", algo, "mdqn or independent")
        ->check(CLI::IsMember({"mdqn", "independent"}));
    train->add_option("--seed", seed, "Master seed");
    train->add_option("--out", out_dir, "Output directory")->required();
    train->add_option("--episodes", episodes, "Override training episode count");

    CLI::App* eval = app.add_subcommand("eval", "Greedy evaluation of a trained checkpoint");
    eval->add_option("--checkpoint", checkpoint, "Weights file from train");
    eval->add_option("--config", config_path, "Config file (defaults when omitted)");
    eval->add_option("--episodes", eval_episodes, "Evaluation episode count");
    eval->add_option("--seed", seed, "Master seed");
    eval->add_option("--out", out_dir, "Output directory")->required();
    eval->add_option("--kind", kind, "Baseline axis the checkpoint was trained with");
    eval->add_flag("--no-recluster", no_recluster, "Disable periodic re-clustering");

    CLI::App* baseline = app.add_subcommand("baseline", "Run a reference policy or ablation");
    baseline
        ->add_option("--kind", kind,
                     "circular|2d|oma|equal-power|static-decoding|no-recluster|random")
        ->required();
    baseline->add_option("--config", config_path, "Config file (defaults when omitted)");
    baseline->add_option("--seed", seed, "Master seed");
    baseline->add_option("--out", out_dir, "Output directory")->required();
    baseline->add_option("--episodes", episodes, "Episode count override");

    CLI::App* compare = app.add_subcommand("compare", "Run an experiment matrix");
    compare->add_option("--spec", spec_path, "Matrix spec file")->required();
    compare->add_option("--out", out_dir, "Output directory")->required();
    compare->add_option("--jobs", jobs, "Parallel cells");

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) return run_train(config_path, algo, seed, out_dir, episodes);
        if (eval->parsed()) {
            return run_eval(checkpoint, config_path, eval_episodes, seed, out_dir, kind,
                            no_recluster);
        }
        if (baseline->parsed()) {
            return run_baseline(kind, config_path, seed, out_dir, episodes);
        }
        if (compare->parsed()) return run_compare(spec_path, out_dir, jobs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
