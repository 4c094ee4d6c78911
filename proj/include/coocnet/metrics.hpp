#ifndef COOCNET_METRICS_HPP_
#define COOCNET_METRICS_HPP_

#include <string>
#include <vector>

#include "coocnet/network.hpp"

namespace coocnet {

// All measurements treat the network as unweighted and undirected over the
// union of co-occurrence and virtual edges.

enum class Measurement {
    Degree,
    Betweenness,
    Clustering,
    AvgShortestPath,
    Pagerank,
    AccessibilityH2,
    AccessibilityH3,
    SymmetryBackboneH2,
    SymmetryBackboneH3,
    SymmetryMergedH2,
    SymmetryMergedH3,
};

const char* to_string(Measurement m);
Measurement measurement_from_string(const std::string& name);

// Ordered, duplicate-free selection; order fixes feature-column order.
struct MeasurementSpec {
    std::vector<Measurement> selected;

    static MeasurementSpec all();
    static MeasurementSpec parse(const std::vector<std::string>& names);
};

struct LocalMeasures {
    int degree;
    double clustering; // 2T/(k(k-1)), 0 when k < 2
};

LocalMeasures local_measures(const TextNetwork& network, const std::string& node);

struct PathMeasures {
    std::vector<double> betweenness;       // unnormalized, unordered pairs
    std::vector<double> avg_shortest_path; // mean distance to reachable nodes
};

// Brandes accumulation plus per-source mean BFS distance; isolated nodes get
// zero for both.
PathMeasures path_measures(const TextNetwork& network);

struct PagerankOptions {
    double damping = 0.85;
    double tolerance = 1e-10;
    int max_iterations = 200;
};

// Power iteration with uniform teleport; isolated nodes redistribute their
// mass uniformly. Values sum to 1. Warns on stderr and returns the last
// iterate if max_iterations is hit.
std::vector<double> pagerank(const TextNetwork& network, const PagerankOptions& options = {});

// exp of the entropy of h-step random-walk destination probabilities;
// 0 for isolated nodes. h >= 1 (the pipeline uses h in {2,3}).
double accessibility(const TextNetwork& network, const std::string& node, int h);

enum class SymmetryVariant { Backbone, Merged };

// Concentric symmetry: BFS rings out to h, intra-ring edges deleted
// (backbone) or their connected components contracted (merged), then an
// outward-only uniform walk from the node. Probability mass stopping at a
// transformed node with no outward edge before ring h is absorbed there as a
// "dead end". Returns exp(entropy) / (ring-h node count + dead-end count),
// or 0 when nothing is reachable outward.
double symmetry(const TextNetwork& network, const std::string& node, int h,
                SymmetryVariant variant);

struct NodeMeasurements {
    std::string word;
    std::vector<double> values; // aligned with MeasurementSpec order
};

// Whole-graph passes (betweenness, average path length, pagerank) run once
// and are reused across words. Throws when a word is missing.
std::vector<NodeMeasurements> measure_nodes(const TextNetwork& network,
                                            const std::vector<std::string>& words,
                                            const MeasurementSpec& spec);

} // namespace coocnet

#endif
