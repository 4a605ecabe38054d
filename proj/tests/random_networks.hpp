#pragma once

// Deterministic random test instances: connected networks with weights in
// [0.1, 10] and valid conductance pairs b <= c on them.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rnet/comparison.hpp"
#include "rnet/network.hpp"

namespace testgen {

inline rnet::NetworkPtr random_connected_network(uint64_t seed, int n, double extra_edge_prob = 0.4,
                                                 double wmin = 0.1, double wmax = 10.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(wmin, wmax);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    std::vector<std::string> verts;
    for (int i = 0; i < n; ++i) verts.push_back("v" + std::to_string(i));

    std::vector<rnet::EdgeEntry> edges;
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> pick(0, i - 1);
        edges.push_back({verts[i], verts[pick(rng)], weight(rng)});
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool present = false;
            for (const auto& e : edges)
                present = present || (e.u == verts[i] && e.v == verts[j]) ||
                          (e.u == verts[j] && e.v == verts[i]);
            if (!present && coin(rng) < extra_edge_prob)
                edges.push_back({verts[i], verts[j], weight(rng)});
        }
    }
    return rnet::make_network(std::move(verts), edges, "v0");
}

/// A valid pair on a random network: c is the network's conductance, b scales
/// each edge by a factor in (0,1]; off a random spanning tree the factor may
/// drop to zero, so (G,b) stays connected while b loses edges.
inline rnet::ConductancePair random_pair(uint64_t seed, int n, double extra_edge_prob = 0.4) {
    rnet::NetworkPtr c_net = random_connected_network(seed, n, extra_edge_prob);
    std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ULL);
    std::uniform_real_distribution<double> factor(0.2, 1.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    // spanning tree via BFS keeps b connected
    std::vector<char> tree_edge;
    {
        std::vector<char> seen(c_net->size(), 0);
        std::vector<int> stack{c_net->origin_index()};
        seen[c_net->origin_index()] = 1;
        std::vector<std::pair<int, int>> tree;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& [y, w] : c_net->neighbors(x)) {
                if (!seen[y]) {
                    seen[y] = 1;
                    tree.emplace_back(std::min(x, y), std::max(x, y));
                    stack.push_back(y);
                }
            }
        }
        for (const auto& [key, w] : c_net->edges()) {
            bool in_tree = false;
            for (const auto& t : tree) in_tree = in_tree || t == key;
            tree_edge.push_back(in_tree ? 1 : 0);
        }
    }

    std::vector<rnet::EdgeEntry> b_edges, c_edges;
    int k = 0;
    for (const auto& [key, w] : c_net->edges()) {
        const std::string& u = c_net->name(key.first);
        const std::string& v = c_net->name(key.second);
        c_edges.push_back({u, v, w});
        double f = factor(rng);
        if (!tree_edge[k] && coin(rng) < 0.25) f = 0.0;  // b may delete non-tree edges
        if (f > 0.0) b_edges.push_back({u, v, f * w});
        ++k;
    }
    return rnet::make_conductance_pair(c_net->vertex_names(), b_edges, c_edges,
                                       c_net->origin_name());
}

inline rnet::VertexFunction random_grounded_function(uint64_t seed, const rnet::NetworkPtr& net,
                                                     double amp = 2.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> val(-amp, amp);
    Eigen::VectorXd v(net->size());
    for (int i = 0; i < net->size(); ++i) v[i] = val(rng);
    return rnet::VertexFunction(net, std::move(v));
}

}  // namespace testgen
