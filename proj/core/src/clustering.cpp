#include "uavsim/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uavsim {

double squared_distance(const Point2& a, const Point2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

std::vector<std::vector<int>> ClusterAssignment::members() const {
    std::vector<std::vector<int>> m(centroids.size());
    for (std::size_t k = 0; k < cluster_of.size(); ++k) {
        m[cluster_of[k]].push_back(static_cast<int>(k));
    }
    return m;
}

std::vector<int> ClusterAssignment::sizes() const {
    std::vector<int> s(centroids.size(), 0);
    for (int c : cluster_of) s[c]++;
    return s;
}

double assignment_objective(const std::vector<Point2>& points, const std::vector<int>& cluster_of,
                            int cluster_count) {
    std::vector<Point2> mean(cluster_count, Point2{});
    std::vector<int> count(cluster_count, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        mean[cluster_of[i]].x += points[i].x;
        mean[cluster_of[i]].y += points[i].y;
        count[cluster_of[i]]++;
    }
    for (int c = 0; c < cluster_count; ++c) {
        if (count[c] > 0) {
            mean[c].x /= count[c];
            mean[c].y /= count[c];
        }
    }
    double obj = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        obj += squared_distance(points[i], mean[cluster_of[i]]);
    }
    return obj;
}

namespace {

constexpr int kMaxLloydIterations = 100;

std::vector<Point2> seed_centroids(const std::vector<Point2>& points, int count, Rng& rng) {
    std::vector<Point2> centroids;
    centroids.reserve(count);
    centroids.push_back(points[rng.uniform_int(static_cast<int>(points.size()))]);
    while (static_cast<int>(centroids.size()) < count) {
        int best = 0;
        double best_gap = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double nearest = std::numeric_limits<double>::infinity();
            for (const Point2& c : centroids) {
                nearest = std::min(nearest, squared_distance(points[i], c));
            }
            if (nearest > best_gap) {
                best_gap = nearest;
                best = static_cast<int>(i);
            }
        }
        centroids.push_back(points[best]);
    }
    return centroids;
}

int nearest_centroid(const Point2& p, const std::vector<Point2>& centroids) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        const double d = squared_distance(p, centroids[c]);
        if (d < best_d) {  // ties keep the lower centroid id
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

void recompute_centroids(const std::vector<Point2>& points, const std::vector<int>& cluster_of,
                         std::vector<Point2>& centroids) {
    std::vector<Point2> sum(centroids.size(), Point2{});
    std::vector<int> count(centroids.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        sum[cluster_of[i]].x += points[i].x;
        sum[cluster_of[i]].y += points[i].y;
        count[cluster_of[i]]++;
    }
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        if (count[c] > 0) {  // empty clusters keep their previous centroid
            centroids[c] = {sum[c].x / count[c], sum[c].y / count[c]};
        }
    }
}

struct SingleRun {
    std::vector<int> cluster_of;
    std::vector<Point2> centroids;
    std::vector<double> objectives;
    int moves = 0;
};

SingleRun run_once(const std::vector<Point2>& points, int cluster_count, int cap, Rng& rng) {
    SingleRun run;
    run.centroids = seed_centroids(points, cluster_count, rng);
    run.cluster_of.assign(points.size(), 0);

    for (int iter = 0; iter < kMaxLloydIterations; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const int c = nearest_centroid(points[i], run.centroids);
            if (c != run.cluster_of[i]) {
                run.cluster_of[i] = c;
                changed = true;
            }
        }
        run.objectives.push_back(assignment_objective(points, run.cluster_of, cluster_count));
        recompute_centroids(points, run.cluster_of, run.centroids);
        if (!changed && iter > 0) break;
    }

    // Capacity repair: one point at a time, furthest-from-centroid first.
    std::vector<int> size(cluster_count, 0);
    for (int c : run.cluster_of) size[c]++;
    while (true) {
        int over = -1;
        for (int c = 0; c < cluster_count; ++c) {
            if (size[c] > cap) {
                over = c;
                break;
            }
        }
        if (over < 0) break;

        int worst = -1;
        double worst_d = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (run.cluster_of[i] != over) continue;
            const double d = squared_distance(points[i], run.centroids[over]);
            if (d > worst_d) {
                worst_d = d;
                worst = static_cast<int>(i);
            }
        }

        int target = -1;
        double target_d = std::numeric_limits<double>::infinity();
        for (int c = 0; c < cluster_count; ++c) {
            if (c == over || size[c] >= cap) continue;
            const double d = squared_distance(points[worst], run.centroids[c]);
            if (d < target_d) {
                target_d = d;
                target = c;
            }
        }
        run.cluster_of[worst] = target;
        size[over]--;
        size[target]++;
        run.moves++;
    }

    // Local search on the feasible assignment: capacity-respecting single
    // moves plus pairwise swaps, scored by the exact objective change via
    // per-cluster sufficient statistics. Plain Lloyd cannot express a
    // cap-tight partition (it is not a Voronoi partition), so eviction alone
    // can land well off the constrained optimum.
    std::vector<double> sx(cluster_count, 0.0);
    std::vector<double> sy(cluster_count, 0.0);
    std::vector<double> ss(cluster_count, 0.0);
    auto cluster_cost = [&](int c) {
        if (size[c] == 0) return 0.0;
        return ss[c] - (sx[c] * sx[c] + sy[c] * sy[c]) / size[c];
    };
    auto take = [&](int c, const Point2& p) {
        sx[c] += p.x;
        sy[c] += p.y;
        ss[c] += p.x * p.x + p.y * p.y;
        size[c]++;
    };
    auto drop = [&](int c, const Point2& p) {
        sx[c] -= p.x;
        sy[c] -= p.y;
        ss[c] -= p.x * p.x + p.y * p.y;
        size[c]--;
    };
    std::fill(size.begin(), size.end(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) take(run.cluster_of[i], points[i]);

    for (int sweep = 0; sweep < 100; ++sweep) {
        bool changed = false;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const int a = run.cluster_of[i];
            for (int b = 0; b < cluster_count; ++b) {
                if (b == a || size[b] >= cap) continue;
                const double before = cluster_cost(a) + cluster_cost(b);
                drop(a, points[i]);
                take(b, points[i]);
                const double after = cluster_cost(a) + cluster_cost(b);
                if (after < before - 1e-9) {
                    run.cluster_of[i] = b;
                    changed = true;
                    break;
                }
                drop(b, points[i]);
                take(a, points[i]);
            }
        }
        for (std::size_t i = 0; i < points.size(); ++i) {
            for (std::size_t j = i + 1; j < points.size(); ++j) {
                const int a = run.cluster_of[i];
                const int b = run.cluster_of[j];
                if (a == b) continue;
                const double before = cluster_cost(a) + cluster_cost(b);
                drop(a, points[i]);
                drop(b, points[j]);
                take(b, points[i]);
                take(a, points[j]);
                const double after = cluster_cost(a) + cluster_cost(b);
                if (after < before - 1e-9) {
                    run.cluster_of[i] = b;
                    run.cluster_of[j] = a;
                    changed = true;
                } else {
                    drop(b, points[i]);
                    drop(a, points[j]);
                    take(a, points[i]);
                    take(b, points[j]);
                }
            }
        }
        if (!changed) break;
    }
    recompute_centroids(points, run.cluster_of, run.centroids);
    return run;
}

}  // namespace

ClusterAssignment kmeans_capped(const std::vector<Point2>& points, int cluster_count, int cap,
                                Rng& rng, int restarts, KmeansTrace* trace) {
    if (cluster_count < 1) {
        throw std::invalid_argument("kmeans_capped: cluster count must be positive");
    }
    if (static_cast<long long>(cluster_count) * cap < static_cast<long long>(points.size())) {
        throw std::invalid_argument(
            "kmeans_capped: infeasible, cluster_count * cap is below the point count");
    }
    if (points.empty()) {
        ClusterAssignment empty;
        empty.centroids.assign(cluster_count, Point2{});
        return empty;
    }

    SingleRun best;
    double best_obj = std::numeric_limits<double>::infinity();
    if (trace) trace->lloyd_objectives.clear();
    for (int r = 0; r < std::max(restarts, 1); ++r) {
        SingleRun run = run_once(points, cluster_count, cap, rng);
        const double obj = assignment_objective(points, run.cluster_of, cluster_count);
        if (trace) trace->lloyd_objectives.push_back(run.objectives);
        if (obj < best_obj) {
            best_obj = obj;
            best = std::move(run);
        }
    }
    if (trace) trace->rebalance_moves = best.moves;

    ClusterAssignment out;
    out.cluster_of = std::move(best.cluster_of);
    out.centroids = std::move(best.centroids);
    return out;
}

bool recluster_due(int slot, int period) { return slot % period == 0; }

std::vector<int> match_clusters_to_uavs(const std::vector<Point2>& centroids,
                                        const std::vector<UavState>& uavs) {
    const int n = static_cast<int>(centroids.size());
    std::vector<int> uav_to_cluster(n, -1);
    std::vector<bool> uav_done(n, false);
    std::vector<bool> cluster_done(n, false);
    for (int round = 0; round < n; ++round) {
        int bu = -1;
        int bc = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int u = 0; u < n; ++u) {
            if (uav_done[u]) continue;
            for (int c = 0; c < n; ++c) {
                if (cluster_done[c]) continue;
                const double d =
                    squared_distance({uavs[u].x, uavs[u].y}, centroids[c]);
                if (d < best) {
                    best = d;
                    bu = u;
                    bc = c;
                }
            }
        }
        uav_to_cluster[bu] = bc;
        uav_done[bu] = true;
        cluster_done[bc] = true;
    }
    return uav_to_cluster;
}

ClusterAssignment associate_with_uavs(const ClusterAssignment& assignment,
                                      const std::vector<UavState>& uavs) {
    const std::vector<int> uav_to_cluster = match_clusters_to_uavs(assignment.centroids, uavs);
    std::vector<int> cluster_to_uav(uav_to_cluster.size());
    for (std::size_t u = 0; u < uav_to_cluster.size(); ++u) {
        cluster_to_uav[uav_to_cluster[u]] = static_cast<int>(u);
    }
    ClusterAssignment out;
    out.epoch = assignment.epoch;
    out.cluster_of.resize(assignment.cluster_of.size());
    out.centroids.resize(assignment.centroids.size());
    for (std::size_t k = 0; k < assignment.cluster_of.size(); ++k) {
        out.cluster_of[k] = cluster_to_uav[assignment.cluster_of[k]];
    }
    for (std::size_t c = 0; c < assignment.centroids.size(); ++c) {
        out.centroids[cluster_to_uav[c]] = assignment.centroids[c];
    }
    return out;
}

}  // namespace uavsim
