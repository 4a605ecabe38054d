#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rnet/network.hpp"

namespace rnet {

enum class FamilyKind {
    path,
    cycle,
    complete,
    binary_tree,
    horizontally_connected_tree,
    geometric_integers,
};

/**
 * Parameters for the named network generators.
 *  - path/cycle/complete: n = vertex count, unit conductances.
 *  - binary_tree / horizontally_connected_tree: n = depth; level_weights gives
 *    the intra-level conductance c_k per level (a single entry is broadcast).
 *  - geometric_integers: n = truncation N (vertices -N..N), base = c > 1,
 *    edge (n-1, n) gets weight c^max(|n|,|n-1|).
 */
struct FamilySpec {
    FamilyKind kind = FamilyKind::path;
    int n = 1;
    double base = 2.0;
    std::vector<double> level_weights;
};

namespace detail {

inline std::string int_name(int k) { return std::to_string(k); }

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace detail

inline NetworkPtr generate(const FamilySpec& spec) {
    using detail::check;
    using detail::int_name;
    std::vector<std::string> verts;
    std::vector<EdgeEntry> edges;

    switch (spec.kind) {
        case FamilyKind::path: {
            check(spec.n >= 1, "path needs n >= 1");
            for (int i = 0; i < spec.n; ++i) verts.push_back(int_name(i));
            for (int i = 0; i + 1 < spec.n; ++i)
                edges.push_back({int_name(i), int_name(i + 1), 1.0});
            return make_network(std::move(verts), edges, "0");
        }
        case FamilyKind::cycle: {
            check(spec.n >= 3, "cycle needs n >= 3");
            for (int i = 0; i < spec.n; ++i) verts.push_back(int_name(i));
            for (int i = 0; i < spec.n; ++i)
                edges.push_back({int_name(i), int_name((i + 1) % spec.n), 1.0});
            return make_network(std::move(verts), edges, "0");
        }
        case FamilyKind::complete: {
            check(spec.n >= 2, "complete graph needs n >= 2");
            for (int i = 0; i < spec.n; ++i) verts.push_back(int_name(i));
            for (int i = 0; i < spec.n; ++i)
                for (int j = i + 1; j < spec.n; ++j)
                    edges.push_back({int_name(i), int_name(j), 1.0});
            return make_network(std::move(verts), edges, "0");
        }
        case FamilyKind::binary_tree:
        case FamilyKind::horizontally_connected_tree: {
            int depth = spec.n;
            check(depth >= 1, "tree needs depth >= 1");
            bool rings = spec.kind == FamilyKind::horizontally_connected_tree;
            std::vector<double> cks = spec.level_weights;
            if (rings) {
                if (cks.empty()) cks.assign(1, 1.0);
                check(cks.size() == 1 || static_cast<int>(cks.size()) == depth,
                      "level_weights must have one entry or one per level");
                for (double w : cks) check(w > 0.0, "level weights must be positive");
            }
            verts.push_back(int_name(0));
            int next = 1;
            std::vector<std::vector<int>> levels{{0}};
            for (int d = 1; d <= depth; ++d) {
                std::vector<int> level;
                for (int p : levels[d - 1]) {
                    for (int child = 0; child < 2; ++child) {
                        verts.push_back(int_name(next));
                        edges.push_back({int_name(p), int_name(next), 1.0});
                        level.push_back(next++);
                    }
                }
                if (rings) {
                    double ck = cks.size() == 1 ? cks[0] : cks[d - 1];
                    for (size_t i = 0; i + 1 < level.size(); ++i)
                        edges.push_back({int_name(level[i]), int_name(level[i + 1]), ck});
                    if (level.size() >= 3)
                        edges.push_back({int_name(level.back()), int_name(level.front()), ck});
                }
                levels.push_back(std::move(level));
            }
            return make_network(std::move(verts), edges, "0");
        }
        case FamilyKind::geometric_integers: {
            check(spec.n >= 1, "geometric integers needs N >= 1");
            check(spec.base > 1.0, "geometric integers needs base > 1");
            int N = spec.n;
            for (int k = -N; k <= N; ++k) verts.push_back(int_name(k));
            for (int k = -N + 1; k <= N; ++k) {
                double w = std::pow(spec.base, std::max(std::abs(k), std::abs(k - 1)));
                edges.push_back({int_name(k - 1), int_name(k), w});
            }
            return make_network(std::move(verts), edges, "0");
        }
    }
    throw std::invalid_argument("unknown family kind");
}

inline NetworkPtr geometric_integers(int N, double base) {
    return generate({FamilyKind::geometric_integers, N, base, {}});
}

/// Natural interior of a geometric-integers truncation: everything but +-N.
inline std::vector<std::string> geometric_interior(int N) {
    std::vector<std::string> out;
    for (int k = -N + 1; k <= N - 1; ++k) out.push_back(detail::int_name(k));
    return out;
}

/**
 * The closed-form harmonic function h_b on the geometric-integers truncation:
 * h(n) = sgn(n) (1 - b^{-|n|}) / (2 sqrt(b-1)), grounded at 0 already.
 * Harmonic at every interior vertex; the truncation boundary carries the
 * defect.
 */
inline VertexFunction closed_form_harmonic(double base, int N) {
    detail::check(base > 1.0, "closed-form harmonic needs base > 1");
    NetworkPtr net = geometric_integers(N, base);
    Eigen::VectorXd v(net->size());
    double pref = 1.0 / (2.0 * std::sqrt(base - 1.0));
    for (int k = -N; k <= N; ++k) {
        double sgn = k > 0 ? 1.0 : (k < 0 ? -1.0 : 0.0);
        v[net->index_of(detail::int_name(k))] =
            sgn * pref * (1.0 - std::pow(base, -std::abs(k)));
    }
    return VertexFunction(std::move(net), std::move(v));
}

/**
 * Closed-form dipole v_n on the geometric-integers truncation, satisfying
 * Lap v = delta_n - delta_0: for n > 0,
 * v(k) = sum_{j=1}^{min(k,n)} base^{-j} for k > 0 and 0 for k <= 0;
 * n < 0 is the mirror image.
 */
inline VertexFunction closed_form_dipole(double base, int N, int n) {
    detail::check(base > 1.0, "closed-form dipole needs base > 1");
    detail::check(n != 0, "closed-form dipole needs n != 0");
    detail::check(std::abs(n) <= N, "closed-form dipole needs |n| <= N");
    NetworkPtr net = geometric_integers(N, base);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(net->size());
    int m = std::abs(n);
    double sum = 0.0;
    for (int k = 1; k <= N; ++k) {
        if (k <= m) sum += std::pow(base, -k);
        int vertex = n > 0 ? k : -k;
        v[net->index_of(detail::int_name(vertex))] = sum;
    }
    return VertexFunction(std::move(net), std::move(v));
}

}  // namespace rnet
