#include "coocnet/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <iostream>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace coocnet {

namespace {

constexpr std::array<std::pair<Measurement, const char*>, 11> kMeasurementNames{{
    {Measurement::Degree, "degree"},
    {Measurement::Betweenness, "betweenness"},
    {Measurement::Clustering, "clustering"},
    {Measurement::AvgShortestPath, "avg_shortest_path"},
    {Measurement::Pagerank, "pagerank"},
    {Measurement::AccessibilityH2, "accessibility_h2"},
    {Measurement::AccessibilityH3, "accessibility_h3"},
    {Measurement::SymmetryBackboneH2, "symmetry_backbone_h2"},
    {Measurement::SymmetryBackboneH3, "symmetry_backbone_h3"},
    {Measurement::SymmetryMergedH2, "symmetry_merged_h2"},
    {Measurement::SymmetryMergedH3, "symmetry_merged_h3"},
}};

int require_node(const TextNetwork& network, const std::string& node) {
    int id = network.node_index(node);
    if (id < 0) throw std::out_of_range("node `" + node + "` not in network");
    return id;
}

// Duplicate-free neighbor lists (the adjacency structure already has at most
// one edge per pair, this just strips the edge indices).
std::vector<std::vector<int>> plain_adjacency(const TextNetwork& network) {
    std::vector<std::vector<int>> adj(network.node_count());
    for (std::size_t v = 0; v < network.node_count(); ++v) {
        adj[v].reserve(network.neighbors(static_cast<int>(v)).size());
        for (const auto& [u, _] : network.neighbors(static_cast<int>(v))) adj[v].push_back(u);
    }
    return adj;
}

double entropy_exp(const std::vector<double>& probs) {
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h -= p * std::log(p);
    return std::exp(h);
}

} // namespace

const char* to_string(Measurement m) {
    for (const auto& [mm, name] : kMeasurementNames)
        if (mm == m) return name;
    throw std::logic_error("unknown measurement");
}

Measurement measurement_from_string(const std::string& name) {
    for (const auto& [m, n] : kMeasurementNames)
        if (name == n) return m;
    throw std::invalid_argument("unknown measurement `" + name + "`");
}

MeasurementSpec MeasurementSpec::all() {
    MeasurementSpec spec;
    for (const auto& [m, _] : kMeasurementNames) spec.selected.push_back(m);
    return spec;
}

MeasurementSpec MeasurementSpec::parse(const std::vector<std::string>& names) {
    if (names.empty()) throw std::invalid_argument("measurement list must be non-empty");
    MeasurementSpec spec;
    for (const auto& n : names) {
        Measurement m = measurement_from_string(n);
        if (std::find(spec.selected.begin(), spec.selected.end(), m) != spec.selected.end())
            throw std::invalid_argument("duplicate measurement `" + n + "`");
        spec.selected.push_back(m);
    }
    return spec;
}

LocalMeasures local_measures(const TextNetwork& network, const std::string& node) {
    int v = require_node(network, node);
    const auto& nbrs = network.neighbors(v);
    int k = static_cast<int>(nbrs.size());
    if (k < 2) return {k, 0.0};
    long long triangles = 0;
    std::unordered_set<int> nbr_set;
    nbr_set.reserve(nbrs.size() * 2);
    for (const auto& [u, _] : nbrs) nbr_set.insert(u);
    for (const auto& [u, _] : nbrs)
        for (const auto& [w, __] : network.neighbors(u))
            if (w > u && nbr_set.count(w)) ++triangles;
    return {k, 2.0 * static_cast<double>(triangles) / (static_cast<double>(k) * (k - 1))};
}

PathMeasures path_measures(const TextNetwork& network) {
    const int n = static_cast<int>(network.node_count());
    if (n == 0) throw std::invalid_argument("path_measures on empty network");
    auto adj = plain_adjacency(network);

    PathMeasures out;
    out.betweenness.assign(n, 0.0);
    out.avg_shortest_path.assign(n, 0.0);

    std::vector<int> dist(n), order;
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<int>> pred(n);
    order.reserve(n);

    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : pred) p.clear();
        order.clear();

        dist[s] = 0;
        sigma[s] = 1.0;
        std::deque<int> queue{s};
        long long dist_sum = 0;
        int reached = 0;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            order.push_back(v);
            if (v != s) {
                dist_sum += dist[v];
                ++reached;
            }
            for (int w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    pred[w].push_back(v);
                }
            }
        }
        out.avg_shortest_path[s] =
            reached ? static_cast<double>(dist_sum) / static_cast<double>(reached) : 0.0;

        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int w = *it;
            for (int v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != s) out.betweenness[w] += delta[w];
        }
    }
    // each unordered pair was counted from both endpoints
    for (auto& b : out.betweenness) b /= 2.0;
    return out;
}

std::vector<double> pagerank(const TextNetwork& network, const PagerankOptions& options) {
    const int n = static_cast<int>(network.node_count());
    if (n == 0) throw std::invalid_argument("pagerank on empty network");
    auto adj = plain_adjacency(network);

    std::vector<double> rank(n, 1.0 / n), next(n);
    const double d = options.damping;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        double dangling = 0.0;
        for (int v = 0; v < n; ++v)
            if (adj[v].empty()) dangling += rank[v];
        double base = (1.0 - d) / n + d * dangling / n;
        std::fill(next.begin(), next.end(), base);
        for (int v = 0; v < n; ++v) {
            if (adj[v].empty()) continue;
            double share = d * rank[v] / static_cast<double>(adj[v].size());
            for (int u : adj[v]) next[u] += share;
        }
        double change = 0.0;
        for (int v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
        rank.swap(next);
        if (change < options.tolerance) break;
    }
    if (iter == options.max_iterations)
        std::cerr << "warning: pagerank did not converge within " << options.max_iterations
                  << " iterations\n";
    return rank;
}

double accessibility(const TextNetwork& network, const std::string& node, int h) {
    if (h < 1) throw std::invalid_argument("accessibility level must be >= 1");
    int start = require_node(network, node);
    if (network.degree(start) == 0) return 0.0;

    const int n = static_cast<int>(network.node_count());
    std::vector<double> mass(n, 0.0), next(n);
    mass[start] = 1.0;
    for (int step = 0; step < h; ++step) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int v = 0; v < n; ++v) {
            if (mass[v] == 0.0) continue;
            const auto& nbrs = network.neighbors(v);
            double share = mass[v] / static_cast<double>(nbrs.size());
            for (const auto& [u, _] : nbrs) next[u] += share;
        }
        mass.swap(next);
    }
    return entropy_exp(mass);
}

double symmetry(const TextNetwork& network, const std::string& node, int h,
                SymmetryVariant variant) {
    if (h < 1) throw std::invalid_argument("symmetry level must be >= 1");
    int start = require_node(network, node);
    const int n = static_cast<int>(network.node_count());

    // BFS rings 0..h
    std::vector<int> ring(n, -1);
    ring[start] = 0;
    std::vector<int> frontier{start};
    std::vector<std::vector<int>> rings{{start}};
    for (int r = 1; r <= h && !frontier.empty(); ++r) {
        std::vector<int> next_frontier;
        for (int v : frontier)
            for (const auto& [u, _] : network.neighbors(v))
                if (ring[u] < 0) {
                    ring[u] = r;
                    next_frontier.push_back(u);
                }
        rings.push_back(next_frontier);
        frontier = std::move(next_frontier);
    }
    while (static_cast<int>(rings.size()) <= h) rings.emplace_back();

    // Transformed node ids: backbone keeps nodes as-is, merged contracts each
    // connected component of intra-ring edges to one super-node.
    std::vector<int> super(n, -1);
    int super_count = 0;
    std::vector<int> super_ring;
    if (variant == SymmetryVariant::Backbone) {
        for (int r = 0; r <= h; ++r)
            for (int v : rings[r]) {
                super[v] = super_count++;
                super_ring.push_back(r);
            }
    } else {
        for (int r = 0; r <= h; ++r) {
            for (int v : rings[r]) {
                if (super[v] >= 0) continue;
                // flood fill over same-ring edges
                std::vector<int> stack{v};
                super[v] = super_count;
                while (!stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    for (const auto& [u, _] : network.neighbors(x))
                        if (ring[u] == r && super[u] < 0) {
                            super[u] = super_count;
                            stack.push_back(u);
                        }
                }
                ++super_count;
                super_ring.push_back(r);
            }
        }
    }

    // Outward adjacency between transformed nodes (deduplicated).
    std::vector<std::vector<int>> outward(super_count);
    {
        std::vector<std::unordered_set<int>> seen(super_count);
        for (const auto& e : network.edges()) {
            int ra = ring[e.a], rb = ring[e.b];
            if (ra < 0 || rb < 0 || ra == rb) continue;
            int lo = e.a, hi = e.b;
            if (ra > rb) std::swap(lo, hi);
            int slo = super[lo], shi = super[hi];
            if (seen[slo].insert(shi).second) outward[slo].push_back(shi);
        }
    }

    // Outward-only uniform walk with dead-end absorption.
    std::vector<double> mass(super_count, 0.0);
    mass[super[start]] = 1.0;
    std::vector<double> absorbed(super_count, 0.0);
    int dead_ends = 0;
    for (int r = 0; r < h; ++r) {
        for (int s = 0; s < super_count; ++s) {
            if (super_ring[s] != r || mass[s] == 0.0) continue;
            if (outward[s].empty()) {
                if (r == 0) return 0.0; // start has nowhere to go
                absorbed[s] = mass[s];
                mass[s] = 0.0;
                ++dead_ends;
                continue;
            }
            double share = mass[s] / static_cast<double>(outward[s].size());
            for (int t : outward[s]) mass[t] += share;
            mass[s] = 0.0;
        }
    }

    std::vector<double> probs;
    int ring_h_count = 0;
    for (int s = 0; s < super_count; ++s) {
        if (super_ring[s] == h) {
            ++ring_h_count;
            if (mass[s] > 0.0) probs.push_back(mass[s]);
        }
        if (absorbed[s] > 0.0) probs.push_back(absorbed[s]);
    }
    int denom = ring_h_count + dead_ends;
    if (denom == 0) return 0.0;
    return entropy_exp(probs) / static_cast<double>(denom);
}

std::vector<NodeMeasurements> measure_nodes(const TextNetwork& network,
                                            const std::vector<std::string>& words,
                                            const MeasurementSpec& spec) {
    if (spec.selected.empty()) throw std::invalid_argument("empty measurement spec");

    bool needs_paths = false, needs_pagerank = false;
    for (Measurement m : spec.selected) {
        if (m == Measurement::Betweenness || m == Measurement::AvgShortestPath) needs_paths = true;
        if (m == Measurement::Pagerank) needs_pagerank = true;
    }
    PathMeasures paths;
    if (needs_paths) paths = path_measures(network);
    std::vector<double> pr;
    if (needs_pagerank) pr = pagerank(network);

    std::vector<NodeMeasurements> out;
    out.reserve(words.size());
    for (const auto& word : words) {
        int v = require_node(network, word);
        NodeMeasurements nm{word, {}};
        nm.values.reserve(spec.selected.size());
        LocalMeasures local{-1, 0.0};
        for (Measurement m : spec.selected) {
            switch (m) {
                case Measurement::Degree:
                case Measurement::Clustering:
                    if (local.degree < 0) local = local_measures(network, word);
                    nm.values.push_back(m == Measurement::Degree ? local.degree : local.clustering);
                    break;
                case Measurement::Betweenness:
                    nm.values.push_back(paths.betweenness[v]);
                    break;
                case Measurement::AvgShortestPath:
                    nm.values.push_back(paths.avg_shortest_path[v]);
                    break;
                case Measurement::Pagerank:
                    nm.values.push_back(pr[v]);
                    break;
                case Measurement::AccessibilityH2:
                    nm.values.push_back(accessibility(network, word, 2));
                    break;
                case Measurement::AccessibilityH3:
                    nm.values.push_back(accessibility(network, word, 3));
                    break;
                case Measurement::SymmetryBackboneH2:
                    nm.values.push_back(symmetry(network, word, 2, SymmetryVariant::Backbone));
                    break;
                case Measurement::SymmetryBackboneH3:
                    nm.values.push_back(symmetry(network, word, 3, SymmetryVariant::Backbone));
                    break;
                case Measurement::SymmetryMergedH2:
                    nm.values.push_back(symmetry(network, word, 2, SymmetryVariant::Merged));
                    break;
                case Measurement::SymmetryMergedH3:
                    nm.values.push_back(symmetry(network, word, 3, SymmetryVariant::Merged));
                    break;
            }
        }
        out.push_back(std::move(nm));
    }
    return out;
}

} // namespace coocnet
