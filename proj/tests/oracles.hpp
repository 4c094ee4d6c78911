// Test-only reference implementations, kept deliberately independent of the
// library's algorithms: numeric quadrature instead of the closed form, dense
// matrix powers instead of sparse propagation, exhaustive path enumeration
// instead of Brandes accumulation.
#ifndef COOCNET_TESTS_ORACLES_HPP_
#define COOCNET_TESTS_ORACLES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "coocnet/network.hpp"

namespace oracles {

// Adjacency-matrix graph used by every oracle.
struct Graph {
    int n = 0;
    std::vector<std::vector<bool>> adj;

    explicit Graph(int n) : n(n), adj(n, std::vector<bool>(n, false)) {}
    void add_edge(int a, int b) { adj[a][b] = adj[b][a] = true; }
    int degree(int v) const;
    std::vector<int> neighbors(int v) const;
};

Graph from_network(const coocnet::TextNetwork& net);
coocnet::TextNetwork to_network(const Graph& g, const std::string& prefix = "n");

// alpha = 1 - (degree-1) * integral_0^pi (1-x)^(degree-2) dx, composite
// Simpson quadrature.
double alpha_by_integration(double pi_value, int degree, int panels = 20000);

// All-pairs shortest path lengths by Floyd-Warshall (-1 when unreachable).
std::vector<std::vector<int>> all_pairs_distances(const Graph& g);

// Betweenness by exhaustive simple-path enumeration per node pair.
std::vector<double> betweenness(const Graph& g);

std::vector<double> avg_shortest_path(const Graph& g);

// Fixed-iteration dense power method.
std::vector<double> pagerank(const Graph& g, double damping, int iterations);

// h-step walk distribution via dense transition-matrix application.
double accessibility(const Graph& g, int start, int h);

// Concentric symmetry by recursive outward-walk enumeration over the
// transformed (backbone or merged) ring graph.
double symmetry(const Graph& g, int start, int h, bool merged);

// Random connected graph: random spanning tree plus extra edges.
Graph random_connected_graph(int n, double extra_edge_prob, std::uint64_t seed);

} // namespace oracles

#endif
