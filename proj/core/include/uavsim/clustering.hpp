#pragma once

#include <vector>

#include "uavsim/mobility.hpp"
#include "uavsim/rng.hpp"

namespace uavsim {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

double squared_distance(const Point2& a, const Point2& b);

struct ClusterAssignment {
    std::vector<int> cluster_of;    // user index -> cluster index
    std::vector<Point2> centroids;  // one per cluster
    int epoch = 0;                  // slot at which it was computed

    int cluster_count() const { return static_cast<int>(centroids.size()); }
    bool serves(int cluster, int user) const { return cluster_of[user] == cluster; }
    std::vector<std::vector<int>> members() const;
    std::vector<int> sizes() const;
};

// Per-restart diagnostics, mainly for verifying monotone descent.
struct KmeansTrace {
    std::vector<std::vector<double>> lloyd_objectives;  // one series per restart
    int rebalance_moves = 0;                            // of the winning restart
};

// Within-cluster sum of squared distances with centroids at cluster means.
double assignment_objective(const std::vector<Point2>& points, const std::vector<int>& cluster_of,
                            int cluster_count);

// Capacity-bounded K-means. Each restart seeds centroids greedily
// (max-min distance from a random first point), runs Lloyd's iterations to
// convergence, repairs capacity by moving the worst-fitting point of an
// overfull cluster to the nearest cluster with room, and then tightens the
// feasible assignment with capacity-respecting moves and pairwise swaps.
// The restart with the lowest objective wins.
// Throws if cluster_count * cap < points.size().
ClusterAssignment kmeans_capped(const std::vector<Point2>& points, int cluster_count, int cap,
                                Rng& rng, int restarts = 8, KmeansTrace* trace = nullptr);

// True on the slots where user partitions are recomputed.
bool recluster_due(int slot, int period);

// Greedy minimum-distance matching between UAVs and cluster centroids;
// returns uav_to_cluster so each agent keeps the partition nearest to it.
std::vector<int> match_clusters_to_uavs(const std::vector<Point2>& centroids,
                                        const std::vector<UavState>& uavs);

// Relabels clusters so that cluster index == serving UAV id.
ClusterAssignment associate_with_uavs(const ClusterAssignment& assignment,
                                      const std::vector<UavState>& uavs);

}  // namespace uavsim
