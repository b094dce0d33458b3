// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Trained cells are cached under the work directory so a re-run
// only repeats what is missing.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "support/cluster_oracle.hpp"
#include "uavsim/csvio.hpp"
#include "uavsim/experiments.hpp"
#include "uavsim/metrics.hpp"

namespace fs = std::filesystem;
using namespace uavsim;

namespace {

struct Options {
    std::string tool;
    fs::path work = "acceptance_work";
    int criterion = 0;  // 0 = all
    int jobs = 2;
};

Options g_opts;
ConstraintAudit g_audit;
std::vector<std::uint64_t> kSeeds = {1, 2, 3};
constexpr std::uint64_t kEvalSeedBase = 9000;
constexpr int kEvalEpisodes = 20;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const auto start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

// -------- trained-cell cache ------------------------------------------------

struct TrainedCell {
    std::vector<Mlp> nets;
    std::vector<LossEntry> losses;
    std::vector<EpisodeStats> episodes;
    long audit_total = 0;
};

std::map<std::string, TrainedCell> g_cells;

std::vector<LossEntry> read_loss_csv(const fs::path& path) {
    std::ifstream in(path);
    std::vector<LossEntry> rows;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        rows.push_back({std::stol(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return rows;
}

std::vector<EpisodeStats> read_episodes_csv(const fs::path& path) {
    std::ifstream in(path);
    std::vector<EpisodeStats> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        EpisodeStats row;
        std::stringstream ss(line);
        std::string item;
        std::getline(ss, item, ',');
        row.episode = std::stoi(item);
        std::getline(ss, item, ',');
        row.throughput = std::stod(item);
        std::getline(ss, item, ',');
        row.violation_rate = std::stod(item);
        std::getline(ss, item, ',');
        row.epsilon = std::stod(item);
        rows.push_back(row);
    }
    return rows;
}

const TrainedCell& trained_cell(const std::string& name, const ExperimentSetup& setup) {
    if (const auto it = g_cells.find(name); it != g_cells.end()) return it->second;

    const fs::path dir = g_opts.work / "cells" / name;
    TrainedCell cell;
    if (fs::exists(dir / "done")) {
        for (int i = 0;; ++i) {
            const fs::path w = dir / ("weights" + std::to_string(i) + ".txt");
            if (!fs::exists(w)) break;
            cell.nets.push_back(load_weights(w.string()));
        }
        cell.losses = read_loss_csv(dir / "loss.csv");
        cell.episodes = read_episodes_csv(dir / "episodes.csv");
        std::ifstream audit(dir / "audit.txt");
        audit >> cell.audit_total;
    } else {
        const TrainOutcome outcome = train_run(setup);
        fs::create_directories(dir);
        for (std::size_t i = 0; i < outcome.nets.size(); ++i) {
            save_weights((dir / ("weights" + std::to_string(i) + ".txt")).string(),
                         outcome.nets[i]);
        }
        write_loss_csv((dir / "loss.csv").string(), outcome.losses);
        write_episodes_csv((dir / "episodes.csv").string(), outcome.episodes);
        std::ofstream audit(dir / "audit.txt");
        audit << outcome.audit.total() << '\n';
        std::ofstream(dir / "done") << "ok\n";
        cell.nets = outcome.nets;
        cell.losses = outcome.losses;
        cell.episodes = outcome.episodes;
        cell.audit_total = outcome.audit.total();
    }
    g_audit.bounds += cell.audit_total;  // fold the cached total into the tally
    return g_cells.emplace(name, std::move(cell)).first->second;
}

void prepare_cells(const std::vector<std::pair<std::string, ExperimentSetup>>& wanted) {
    // Train missing cells, a couple at a time; results land in the disk cache
    // and are re-read single-threaded afterwards.
    std::vector<std::pair<std::string, ExperimentSetup>> missing;
    for (const auto& [name, setup] : wanted) {
        if (!g_cells.count(name) && !fs::exists(g_opts.work / "cells" / name / "done")) {
            missing.push_back({name, setup});
        }
    }
    std::size_t next = 0;
    while (next < missing.size()) {
        const std::size_t end = std::min(next + static_cast<std::size_t>(g_opts.jobs),
                                         missing.size());
        std::vector<std::future<void>> batch;
        for (std::size_t i = next; i < end; ++i) {
            batch.push_back(std::async(std::launch::async, [&missing, i]() {
                const TrainOutcome outcome = train_run(missing[i].second);
                const fs::path dir = g_opts.work / "cells" / missing[i].first;
                fs::create_directories(dir);
                for (std::size_t n = 0; n < outcome.nets.size(); ++n) {
                    save_weights((dir / ("weights" + std::to_string(n) + ".txt")).string(),
                                 outcome.nets[n]);
                }
                write_loss_csv((dir / "loss.csv").string(), outcome.losses);
                write_episodes_csv((dir / "episodes.csv").string(), outcome.episodes);
                std::ofstream audit(dir / "audit.txt");
                audit << outcome.audit.total() << '\n';
                std::ofstream(dir / "done") << "ok\n";
            }));
        }
        for (auto& f : batch) f.get();
        next = end;
    }
    for (const auto& [name, setup] : wanted) trained_cell(name, setup);
}

ExperimentSetup desk_setup(Algo algo, BaselineKind kind, std::uint64_t seed,
                           MobilityModel mobility = MobilityModel::RandomRoam) {
    ExperimentSetup setup;
    setup.algo = algo;
    setup.baseline = kind;
    setup.seed = seed;
    setup.env.mobility = mobility;
    return setup;
}

std::string cell_name(const std::string& tag, std::uint64_t seed) {
    return tag + "_seed" + std::to_string(seed);
}

// -------- criteria ----------------------------------------------------------

bool criterion_channel(std::string& detail) {
    const double t0 = now_seconds();
    bool ok = true;

    const PathLossDb loss = path_loss_db(100.0, 200.0, 2.0);
    ok &= std::abs(loss.los_db - 85.82) <= 0.01;
    ok &= std::abs(loss.nlos_db - 102.85) <= 0.01;
    ok &= std::abs(p_los_d0(100.0) - 155.16) <= 0.01;
    ok &= std::abs(p_los_p1(100.0) - 467.01) <= 0.01;
    const double d3 = std::sqrt(100.0 * 100.0 + 500.0 * 500.0);
    ok &= std::abs(p_los(100.0, d3) - 0.78827) <= 1e-4;

    const double elapsed = now_seconds() - t0;
    ok &= elapsed < 1.0;
    std::ostringstream ss;
    ss << "LoS " << loss.los_db << " dB, NLoS " << loss.nlos_db << " dB, P_LoS "
       << p_los(100.0, d3) << ", " << elapsed << " s";
    detail = ss.str();
    return ok;
}

bool criterion_gradient(std::string& detail) {
    const double t0 = now_seconds();
    Rng rng(4242);
    double worst = 0.0;
    const double h = 1e-5;
    for (int draw = 0; draw < 100; ++draw) {
        Mlp net = Mlp::init({12, 40, 30}, rng);
        std::vector<double> s(12);
        for (double& v : s) v = rng.uniform(-1.0, 1.0);
        const int action = rng.uniform_int(30);
        const double y = rng.uniform(-2.0, 2.0);
        const Gradients g = backward(net, s, action, y);

        auto loss_at = [&](void) {
            const double q = net.forward(s)[action];
            return (y - q) * (y - q);
        };
        for (int l = 0; l < net.layer_count(); ++l) {
            for (std::size_t i = 0; i < net.weights[l].size(); ++i) {
                const double saved = net.weights[l][i];
                net.weights[l][i] = saved + h;
                const double up = loss_at();
                net.weights[l][i] = saved - h;
                const double down = loss_at();
                net.weights[l][i] = saved;
                const double fd = (up - down) / (2.0 * h);
                const double denom = std::max({std::abs(fd), std::abs(g.weights[l][i]), 1e-6});
                worst = std::max(worst, std::abs(fd - g.weights[l][i]) / denom);
            }
            for (std::size_t i = 0; i < net.biases[l].size(); ++i) {
                const double saved = net.biases[l][i];
                net.biases[l][i] = saved + h;
                const double up = loss_at();
                net.biases[l][i] = saved - h;
                const double down = loss_at();
                net.biases[l][i] = saved;
                const double fd = (up - down) / (2.0 * h);
                const double denom = std::max({std::abs(fd), std::abs(g.biases[l][i]), 1e-6});
                worst = std::max(worst, std::abs(fd - g.biases[l][i]) / denom);
            }
        }
    }
    const double elapsed = now_seconds() - t0;
    std::ostringstream ss;
    ss << "max relative error " << worst << " over 100 draws, " << elapsed << " s";
    detail = ss.str();
    return worst < 1e-4 && elapsed < 10.0;
}

bool criterion_sic(std::string& detail) {
    EnvConfig config;
    config.user_vmax = 3.0;
    Environment env(config, {}, 777);
    const ActionCatalog catalog(config.gear_fractions, config.effective_cap(), true);
    RandomPolicy policy(catalog, 777);

    long ordering_checks = 0;
    bool ok = true;
    for (int ep = 0; ep < 10 && ok; ++ep) {
        env.reset(ep);
        policy.begin_episode(env, ep);
        for (int t = 1; t <= config.slots && ok; ++t) {
            env.step(policy.act(env));
            const WorldState& w = env.world();
            std::vector<double> totals(config.uav_count);
            for (int u = 0; u < config.uav_count; ++u) totals[u] = w.powers[u].total();
            for (int u = 0; u < config.uav_count; ++u) {
                double prev = -1.0;
                for (int k : w.decode_order[u]) {
                    const double G = equivalent_gain(k, u, w.gains, totals, config.sigma2_w());
                    if (G < prev) ok = false;
                    prev = G;
                    ordering_checks++;
                }
                if (!w.reports[u].users.empty() && w.reports[u].users.back().intra_w != 0.0) {
                    ok = false;
                }
            }
        }
        g_audit.accumulate(env.audit());
    }

    // single-user NOMA, OMA and Shannon coincide to 1e-12 relative
    GainMatrix gains = {{2.6e-10}};
    std::vector<PowerAllocation> powers(1);
    powers[0].budget = 0.5;
    powers[0].watts = {0.5};
    const double sigma2 = config.sigma2_w();
    const double noma = cluster_rates_noma({0}, 0, gains, powers, sigma2, 1e6).sum_rate;
    const double oma = cluster_rates_oma({0}, 0, gains, powers, sigma2, 1e6).sum_rate;
    const double shannon = shannon_rate(2.6e-10 * 0.5 / sigma2, 1e6);
    ok &= std::abs(noma - shannon) <= 1e-12 * shannon;
    ok &= std::abs(oma - shannon) <= 1e-12 * shannon;

    std::ostringstream ss;
    ss << ordering_checks << " ordering checks across 10 episodes, single-user identity holds";
    detail = ss.str();
    return ok;
}

bool criterion_clustering(std::string& detail) {
    Rng rng(31415);
    double worst_ratio = 1.0;
    bool ok = true;
    for (int instance = 0; instance < 50; ++instance) {
        const int n = 4 + rng.uniform_int(5);
        const int clusters = 2 + rng.uniform_int(2);
        const int cap = (n + clusters - 1) / clusters;
        std::vector<Point2> points(n);
        for (Point2& p : points) {
            p.x = rng.uniform(-200.0, 200.0);
            p.y = rng.uniform(-200.0, 200.0);
        }
        Rng seed_rng(5000 + instance);
        const ClusterAssignment a = kmeans_capped(points, clusters, cap, seed_rng);

        std::vector<int> sizes = a.sizes();
        for (int size : sizes) ok &= size <= cap;
        for (int c : a.cluster_of) ok &= c >= 0 && c < clusters;

        const double got = assignment_objective(points, a.cluster_of, clusters);
        const double best = testing::exhaustive_capped_objective(points, clusters, cap);
        const double ratio = best > 1e-12 ? got / best : 1.0;
        worst_ratio = std::max(worst_ratio, ratio);
        ok &= ratio <= 1.10 + 1e-9;
    }
    std::ostringstream ss;
    ss << "worst objective ratio " << worst_ratio << " over 50 instances";
    detail = ss.str();
    return ok;
}

bool criterion_convergence(std::string& detail) {
    std::vector<std::pair<std::string, ExperimentSetup>> wanted;
    for (std::uint64_t seed : kSeeds) {
        wanted.push_back({cell_name("mdqn", seed), desk_setup(Algo::Mdqn, BaselineKind::None, seed)});
        wanted.push_back(
            {cell_name("indep", seed), desk_setup(Algo::Independent, BaselineKind::None, seed)});
    }
    prepare_cells(wanted);

    int passes = 0;
    std::ostringstream ss;
    for (std::uint64_t seed : kSeeds) {
        const long m = convergence_step(
            g_cells.at(cell_name("mdqn", seed)).losses);
        const long i = convergence_step(
            g_cells.at(cell_name("indep", seed)).losses);
        const double ratio = m > 0 ? static_cast<double>(i) / m : 0.0;
        if (ratio >= 1.5) passes++;
        ss << "seed " << seed << ": indep " << i << " / mdqn " << m << " = " << ratio << "; ";
    }
    ss << passes << "/3 seeds at ratio >= 1.5";
    detail = ss.str();
    return passes >= 2;
}

double mean_eval_slot_rate(const EvalOutcome& outcome, int slots) {
    double acc = 0.0;
    long n = 0;
    for (const EvalResult& ep : outcome.episodes) {
        acc += ep.throughput;
        n += slots + 1;
    }
    return acc / n;
}

bool criterion_noma_vs_oma(std::string& detail) {
    std::vector<std::pair<std::string, ExperimentSetup>> wanted;
    for (std::uint64_t seed : kSeeds) {
        wanted.push_back({cell_name("mdqn", seed), desk_setup(Algo::Mdqn, BaselineKind::None, seed)});
        wanted.push_back({cell_name("oma", seed), desk_setup(Algo::Mdqn, BaselineKind::Oma, seed)});
    }
    prepare_cells(wanted);

    double noma_rate = 0.0;
    double oma_rate = 0.0;
    for (std::uint64_t seed : kSeeds) {
        const ExperimentSetup noma_setup = desk_setup(Algo::Mdqn, BaselineKind::None, seed);
        const ExperimentSetup oma_setup = desk_setup(Algo::Mdqn, BaselineKind::Oma, seed);
        const EvalOutcome noma_eval =
            eval_run(noma_setup, g_cells.at(cell_name("mdqn", seed)).nets, kEvalEpisodes,
                     kEvalSeedBase + seed);
        const EvalOutcome oma_eval =
            eval_run(oma_setup, g_cells.at(cell_name("oma", seed)).nets, kEvalEpisodes,
                     kEvalSeedBase + seed);
        g_audit.accumulate(noma_eval.audit);
        g_audit.accumulate(oma_eval.audit);
        noma_rate += mean_eval_slot_rate(noma_eval, noma_setup.env.slots);
        oma_rate += mean_eval_slot_rate(oma_eval, oma_setup.env.slots);
    }
    noma_rate /= kSeeds.size();
    oma_rate /= kSeeds.size();
    const double gain = noma_rate / oma_rate;
    std::ostringstream ss;
    ss << "mean sum rate: superposition " << format_double(noma_rate) << " vs time-division "
       << format_double(oma_rate) << " bit/s, gain " << gain;
    detail = ss.str();
    return gain >= 1.05;
}

bool criterion_trajectory(std::string& detail) {
    std::vector<std::pair<std::string, ExperimentSetup>> wanted;
    for (std::uint64_t seed : kSeeds) {
        wanted.push_back({cell_name("mdqn", seed), desk_setup(Algo::Mdqn, BaselineKind::None, seed)});
        wanted.push_back(
            {cell_name("2d", seed), desk_setup(Algo::Mdqn, BaselineKind::Mdqn2d, seed)});
    }
    prepare_cells(wanted);

    double full = 0.0;
    double flat = 0.0;
    double circular = 0.0;
    for (std::uint64_t seed : kSeeds) {
        const ExperimentSetup full_setup = desk_setup(Algo::Mdqn, BaselineKind::None, seed);
        const ExperimentSetup flat_setup = desk_setup(Algo::Mdqn, BaselineKind::Mdqn2d, seed);
        const ExperimentSetup circ_setup = desk_setup(Algo::Mdqn, BaselineKind::Circular, seed);
        const EvalOutcome full_eval =
            eval_run(full_setup, g_cells.at(cell_name("mdqn", seed)).nets, kEvalEpisodes,
                     kEvalSeedBase + seed);
        const EvalOutcome flat_eval =
            eval_run(flat_setup, g_cells.at(cell_name("2d", seed)).nets, kEvalEpisodes,
                     kEvalSeedBase + seed);
        const EvalOutcome circ_eval =
            eval_run(circ_setup, {}, kEvalEpisodes, kEvalSeedBase + seed);
        g_audit.accumulate(full_eval.audit);
        g_audit.accumulate(flat_eval.audit);
        g_audit.accumulate(circ_eval.audit);
        full += full_eval.mean_throughput;
        flat += flat_eval.mean_throughput;
        circular += circ_eval.mean_throughput;
    }
    const double vs_circular = full / circular;
    const double vs_flat = full / flat;
    std::ostringstream ss;
    ss << "3D/circular " << vs_circular << " (need >= 1.3), 3D/2D " << vs_flat
       << " (need >= 1.1)";
    detail = ss.str();
    return vs_circular >= 1.3 && vs_flat >= 1.1;
}

bool criterion_recluster(std::string& detail) {
    std::vector<std::pair<std::string, ExperimentSetup>> wanted;
    for (std::uint64_t seed : kSeeds) {
        wanted.push_back({cell_name("dir", seed), desk_setup(Algo::Mdqn, BaselineKind::None, seed,
                                                             MobilityModel::DirectionalWalk)});
    }
    prepare_cells(wanted);

    const int eval_eps = 10;
    int passes = 0;
    std::ostringstream ss;
    for (std::uint64_t seed : kSeeds) {
        const ExperimentSetup setup = desk_setup(Algo::Mdqn, BaselineKind::None, seed,
                                                 MobilityModel::DirectionalWalk);
        const auto& nets = g_cells.at(cell_name("dir", seed)).nets;
        const EvalOutcome with = eval_run(setup, nets, eval_eps, kEvalSeedBase + seed, false);
        const EvalOutcome without = eval_run(setup, nets, eval_eps, kEvalSeedBase + seed, true);
        g_audit.accumulate(with.audit);
        g_audit.accumulate(without.audit);

        const int slots = setup.env.slots + 1;
        const int q0 = (3 * slots) / 4;
        std::vector<double> with_trace(slots, 0.0);
        std::vector<double> without_trace(slots, 0.0);
        for (int ep = 0; ep < eval_eps; ++ep) {
            for (int t = 0; t < slots; ++t) {
                with_trace[t] += with.episodes[ep].slots[t].sum_rate / eval_eps;
                without_trace[t] += without.episodes[ep].slots[t].sum_rate / eval_eps;
            }
        }
        const std::vector<double> with_fq(with_trace.begin() + q0, with_trace.end());
        const std::vector<double> without_fq(without_trace.begin() + q0, without_trace.end());
        const bool higher = mean(with_fq) >= mean(without_fq);
        const bool decaying = linear_slope(without_fq) < 0.0;
        if (higher && decaying) passes++;
        ss << "seed " << seed << ": fq " << format_double(mean(with_fq)) << " vs "
           << format_double(mean(without_fq)) << ", slope " << format_double(linear_slope(without_fq))
           << "; ";
    }
    ss << passes << "/3 seeds";
    detail = ss.str();
    return passes >= 2;
}

// -------- determinism over the real binary ----------------------------------

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool same_bytes(const fs::path& a, const fs::path& b) {
    return fs::exists(a) && fs::exists(b) && slurp(a) == slurp(b);
}

int run_tool(const std::string& args) {
    const std::string cmd = g_opts.tool + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

bool criterion_determinism(std::string& detail) {
    if (g_opts.tool.empty()) {
        detail = "no --tool given";
        return false;
    }
    const fs::path dir = g_opts.work / "determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const fs::path cfg = dir / "small.cfg";
    std::ofstream(cfg) << "[env]\nslots = 40\nrecluster_period = 20\n\n"
                       << "[train]\nepisodes = 3\neval_episodes = 2\n";
    const fs::path spec = dir / "compare.cfg";
    std::ofstream(spec) << "[compare]\nconfig = " << cfg.string()
                        << "\ncells = mdqn\nseeds = 5\nepisodes = 2\neval_episodes = 2\n";

    bool ok = true;
    for (const char* tag : {"a", "b"}) {
        const fs::path base = dir / tag;
        ok &= run_tool("train --config " + cfg.string() + " --algo mdqn --seed 7 --out " +
                       (base / "train").string()) == 0;
        ok &= run_tool("eval --checkpoint " + (base / "train/weights.txt").string() +
                       " --config " + cfg.string() + " --episodes 2 --seed 11 --out " +
                       (base / "eval").string()) == 0;
        ok &= run_tool("baseline --kind circular --config " + cfg.string() +
                       " --seed 13 --episodes 2 --out " + (base / "circ").string()) == 0;
        ok &= run_tool("compare --spec " + spec.string() + " --out " +
                       (base / "compare").string()) == 0;
    }
    if (!ok) {
        detail = "a subcommand exited nonzero";
        return false;
    }

    const std::vector<std::string> files = {
        "train/episodes.csv", "train/loss.csv",      "train/weights.txt",
        "eval/episodes.csv",  "eval/slots_ep000.csv", "eval/slots_ep001.csv",
        "circ/episodes.csv",  "circ/slots_ep000.csv", "compare/summary.csv",
        "compare/mdqn_seed5/loss.csv",
    };
    int matched = 0;
    for (const std::string& f : files) {
        if (same_bytes(dir / "a" / f, dir / "b" / f)) {
            matched++;
        } else {
            detail = "mismatch in " + f;
            return false;
        }
    }
    detail = std::to_string(matched) + " output files byte-identical across repeated runs";
    return true;
}

bool criterion_audit(std::string& detail) {
    long cached = 0;
    for (const auto& [name, cell] : g_cells) cached += cell.audit_total;
    const long total = g_audit.total();
    detail = "hard-constraint violations: " + std::to_string(total) + " (training cells " +
             std::to_string(cached) + ")";
    return total == 0;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--tool" && i + 1 < argc) g_opts.tool = argv[++i];
        else if (arg == "--work" && i + 1 < argc) g_opts.work = argv[++i];
        else if (arg == "--criterion" && i + 1 < argc) g_opts.criterion = std::atoi(argv[++i]);
        else if (arg == "--jobs" && i + 1 < argc) g_opts.jobs = std::atoi(argv[++i]);
    }
    fs::create_directories(g_opts.work);

    using Criterion = std::function<bool(std::string&)>;
    const std::vector<std::pair<std::string, Criterion>> criteria = {
        {"channel oracle suite", criterion_channel},
        {"gradient finite-difference check", criterion_gradient},
        {"SIC ordering and rate identities", criterion_sic},
        {"capacity-bounded clustering vs exhaustive optimum", criterion_clustering},
        {"mutual vs independent training convergence", criterion_convergence},
        {"superposition vs time-division sum rate", criterion_noma_vs_oma},
        {"3D trajectory vs circular and 2D baselines", criterion_trajectory},
        {"re-clustering protects the late-episode rate", criterion_recluster},
        {"byte-identical outputs under repeated seeds", criterion_determinism},
        {"zero hard-constraint violations across all runs", criterion_audit},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int number = static_cast<int>(i) + 1;
        if (g_opts.criterion != 0 && g_opts.criterion != number) continue;
        std::string det;
        bool pass = false;
        try {
            pass = criteria[i].second(det);
        } catch (const std::exception& e) {
            det = std::string("exception: ") + e.what();
        }
        if (!pass) failures++;
        std::printf("[%s] %2d. %s: %s\n", pass ? "PASS" : "FAIL", number,
                    criteria[i].first.c_str(), det.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
