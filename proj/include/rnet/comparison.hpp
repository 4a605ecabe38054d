#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rnet/energy_space.hpp"
#include "rnet/network.hpp"
#include "rnet/solver.hpp"

namespace rnet {

/**
 * Two conductance functions b <= c on one vertex set with a shared origin.
 * b may vanish on edges where c is positive; both networks are required to be
 * connected for the analysis operations (see validate_pair).
 */
struct ConductancePair {
    NetworkPtr b;
    NetworkPtr c;

    ConductancePair(NetworkPtr b_net, NetworkPtr c_net)
        : b(std::move(b_net)), c(std::move(c_net)) {
        if (!b || !c) throw std::invalid_argument("null network in pair");
        if (b->vertex_names() != c->vertex_names())
            throw std::invalid_argument("pair networks disagree on the vertex list");
        if (b->origin_index() != c->origin_index())
            throw std::invalid_argument("pair networks disagree on the origin");
    }
};

inline ConductancePair make_conductance_pair(std::vector<std::string> vertices,
                                             const std::vector<EdgeEntry>& b_edges,
                                             const std::vector<EdgeEntry>& c_edges,
                                             const std::string& origin) {
    NetworkPtr b = make_network(vertices, b_edges, origin);
    NetworkPtr c = make_network(std::move(vertices), c_edges, origin);
    return ConductancePair(std::move(b), std::move(c));
}

/// Invariant check: b <= c edgewise and both networks connected.
inline std::vector<std::string> validate_pair(const ConductancePair& pair) {
    std::vector<std::string> out;
    for (const auto& [key, wb] : pair.b->edges()) {
        double wc = pair.c->conductance(key.first, key.second);
        if (wb > wc)
            out.push_back("b > c at (" + pair.b->name(key.first) + "," +
                          pair.b->name(key.second) + ")");
    }
    if (!pair.b->connected())
        out.push_back("(G,b) not connected: " + pair.b->describe_components());
    if (!pair.c->connected())
        out.push_back("(G,c) not connected: " + pair.c->describe_components());
    return out;
}

namespace detail {

inline void require_valid(const ConductancePair& pair) {
    auto violations = validate_pair(pair);
    if (!violations.empty()) {
        std::string msg = "invalid conductance pair:";
        for (const auto& v : violations) msg += " " + v + ";";
        throw std::invalid_argument(msg);
    }
}

inline void require_compatible(const ConductancePair& pair, const VertexFunction& u) {
    const Network* n = u.network().get();
    if (n != pair.b.get() && n != pair.c.get()) {
        if (n->vertex_names() != pair.b->vertex_names() ||
            n->origin_index() != pair.b->origin_index())
            throw std::invalid_argument("function does not live on the pair's vertex set");
    }
}

}  // namespace detail

/**
 * The adjoint I* of the contractive inclusion I : H_Ec -> H_Eb, evaluated on
 * a grounded function: the grounded solution w of L_c w = L_b u, which
 * satisfies <w, v>_Ec = <u, v>_Eb for every v. Maps the b-kernel onto the
 * c-kernel: I* v_x^(b) = v_x^(c).
 */
inline VertexFunction adjoint_inclusion(const ConductancePair& pair, const VertexFunction& u,
                                        const GroundedSolver& c_solver) {
    detail::require_compatible(pair, u);
    return c_solver.solve(pair.b->laplacian_apply(u.values()));
}

inline VertexFunction adjoint_inclusion(const ConductancePair& pair, const VertexFunction& u) {
    detail::require_valid(pair);
    GroundedSolver c_solver(pair.c);
    return adjoint_inclusion(pair, u, c_solver);
}

struct EdgeRatioTransfer {
    VertexFunction value;
    double consistency_residual = 0.0;
};

/**
 * The edgewise formula for I*: prescribes (I*u)(x) - (I*u)(y) =
 * (b_xy/c_xy)(u(x) - u(y)) on every c-edge. On a tree the differences
 * integrate exactly from the origin and the residual is zero; on a graph with
 * cycles the prescribed differences need not be consistent, so the value is
 * the c-weighted least-squares potential (which coincides with
 * adjoint_inclusion) and the residual is the largest fundamental-cycle
 * mismatch.
 */
inline EdgeRatioTransfer edge_ratio_transfer(const ConductancePair& pair,
                                             const VertexFunction& u) {
    detail::require_valid(pair);
    detail::require_compatible(pair, u);
    const Network& c_net = *pair.c;
    const int n = c_net.size();

    // BFS spanning tree of (G,c) from the origin, integrating the prescribed
    // differences along tree edges.
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    std::vector<int> parent(n, -2);
    std::vector<int> order;
    order.reserve(n);
    parent[c_net.origin_index()] = -1;
    order.push_back(c_net.origin_index());
    for (size_t head = 0; head < order.size(); ++head) {
        int x = order[head];
        for (const auto& [y, wc] : c_net.neighbors(x)) {
            if (parent[y] != -2) continue;
            parent[y] = x;
            double ratio = pair.b->conductance(x, y) / wc;
            w[y] = w[x] - ratio * (u.values()[x] - u.values()[y]);
            order.push_back(y);
        }
    }

    double residual = 0.0;
    bool has_cycle = false;
    for (const auto& [key, wc] : c_net.edges()) {
        auto [x, y] = key;
        if (parent[x] == y || parent[y] == x) continue;
        has_cycle = true;
        double ratio = pair.b->conductance(x, y) / wc;
        double want = ratio * (u.values()[x] - u.values()[y]);
        residual = std::max(residual, std::abs((w[x] - w[y]) - want));
    }

    if (!has_cycle) return {VertexFunction(pair.c, std::move(w)), residual};
    GroundedSolver c_solver(pair.c);
    return {adjoint_inclusion(pair, u, c_solver), residual};
}

namespace detail {

/// Largest generalized eigenvalue of (A, L_c) on the grounded space, where A
/// is assembled edgewise from `num` over the same vertex set. Uses the stable
/// LDL^T congruence of the reduced c-Laplacian.
inline double max_energy_ratio(const Network& num, const NetworkPtr& c_net) {
    GroundedSolver c_solver(c_net);
    const SubsetSolver& sub = c_solver.reduced();
    const auto& keep = sub.subset();
    const int m = sub.dim();
    if (m == 0) return 0.0;

    std::vector<int> local(c_net->size(), -1);
    for (int k = 0; k < m; ++k) local[keep[k]] = k;
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
    for (const auto& [key, w] : num.edges()) {
        auto [i, j] = key;
        int a = local[i], b = local[j];
        if (a >= 0) B(a, a) += w;
        if (b >= 0) B(b, b) += w;
        if (a >= 0 && b >= 0) {
            B(a, b) -= w;
            B(b, a) -= w;
        }
    }

    Eigen::MatrixXd M(m, m);
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXd t = sub.half_solve_transpose(Eigen::VectorXd::Unit(m, j));
        M.col(j) = sub.half_solve(B * t);
    }
    M = 0.5 * (M + M.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M, Eigen::EigenvaluesOnly);
    return std::max(0.0, eig.eigenvalues().maxCoeff());
}

}  // namespace detail

/// Operator norm of the inclusion I : H_Ec -> H_Eb, i.e. the supremum of
/// sqrt(E_b(u)/E_c(u)) over grounded u. Always <= 1 for a valid pair.
inline double embedding_norm(const ConductancePair& pair) {
    detail::require_valid(pair);
    return std::sqrt(detail::max_energy_ratio(*pair.b, pair.c));
}

/**
 * Residual of the conjugation identity Lap_b = I Lap_c I* tested on the
 * b-kernel: both Lap_b v_x^(b) and I Lap_c I* v_x^(b) must equal
 * delta_x - delta_o as pointwise functions; returns the largest entrywise
 * deviation over all x.
 */
inline double conjugation_identity_residual(const ConductancePair& pair) {
    detail::require_valid(pair);
    GroundedSolver b_solver(pair.b);
    GroundedSolver c_solver(pair.c);
    const int n = pair.b->size();
    const int o = pair.b->origin_index();
    double worst = 0.0;
    for (int x = 0; x < n; ++x) {
        if (x == o) continue;
        VertexFunction vxb = dipole(b_solver, x, o);
        Eigen::VectorXd lhs = pair.b->laplacian_apply(vxb.values());
        VertexFunction istar = c_solver.solve(lhs);
        Eigen::VectorXd rhs = pair.c->laplacian_apply(istar.values());
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return worst;
}

/**
 * The cross-adjoint Lap^(b,c) = Lap_c^{-1} Lap_b Lap_c as a dense matrix on
 * the grounded coordinates (vertex order with the origin deleted). Satisfies
 * <Mu, v>_Ec = <u, Lap_b v>_Ec and M v_x^(c) = I*(delta_x - delta_o).
 */
inline Eigen::MatrixXd cross_adjoint(const ConductancePair& pair) {
    detail::require_valid(pair);
    GroundedSolver c_solver(pair.c);
    const auto& keep = c_solver.reduced().subset();
    const int m = c_solver.reduced().dim();
    const int n = pair.c->size();
    Eigen::MatrixXd M(m, m);
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
        u[keep[j]] = 1.0;
        Eigen::VectorXd t = pair.b->laplacian_apply(pair.c->laplacian_apply(u));
        VertexFunction w = c_solver.solve(t);
        for (int k = 0; k < m; ++k) M(k, j) = w.values()[keep[k]];
    }
    return M;
}

/// Applies the cross-adjoint to a grounded function without materializing the
/// matrix.
inline VertexFunction cross_adjoint_apply(const ConductancePair& pair, const VertexFunction& u,
                                          const GroundedSolver& c_solver) {
    detail::require_compatible(pair, u);
    return c_solver.solve(pair.b->laplacian_apply(pair.c->laplacian_apply(u.values())));
}

struct LowerBoundCriterion {
    double epsilon = 0.0;        // min positive edge conductance
    double bound = 0.0;          // 1/sqrt(epsilon)
    double measured_norm = 0.0;  // ||I : H_Ec -> H_E1|| on the same edge set
    bool satisfied = false;      // measured_norm <= bound (+1e-9)
};

/**
 * The embedding criterion into the flat (unit-conductance) energy space:
 * H_Ec embeds boundedly iff the conductances are bounded below by some
 * eps > 0, with norm at most 1/sqrt(eps). Reports the bound and the measured
 * norm of the embedding computed on the same edge set.
 */
inline LowerBoundCriterion lower_bound_criterion(const NetworkPtr& net) {
    if (net->edge_count() == 0) throw std::invalid_argument("network has no edges");
    double eps = std::numeric_limits<double>::infinity();
    std::vector<EdgeEntry> unit_edges;
    for (const auto& [key, w] : net->edges()) {
        eps = std::min(eps, w);
        unit_edges.push_back({net->name(key.first), net->name(key.second), 1.0});
    }
    Network flat(net->vertex_names(), unit_edges, net->origin_name());
    LowerBoundCriterion out;
    out.epsilon = eps;
    out.bound = 1.0 / std::sqrt(eps);
    out.measured_norm = std::sqrt(detail::max_energy_ratio(flat, net));
    out.satisfied = out.measured_norm <= out.bound + 1e-9;
    return out;
}

struct HarmonicTransferInvariant {
    double K = 0.0;          // ||I* h_b||_Ec / ||h_b||_Eb
    double alignment = 0.0;  // |<I* h_b, h_c>| / (||I* h_b|| ||h_c||), in E_c
};

/**
 * The spectral invariant of I* restricted to the harmonic subspaces, for
 * pairs whose interior-harmonic spaces are one-dimensional: the factor K by
 * which I* scales the b-harmonic generator, together with the cosine of the
 * angle between I* h_b and the c-harmonic generator (1 means I* maps Harm_b
 * into Harm_c exactly at this truncation).
 */
inline HarmonicTransferInvariant harmonic_transfer_invariant(
    const ConductancePair& pair, const std::vector<std::string>& interior) {
    detail::require_valid(pair);
    std::vector<VertexFunction> hb = harmonic_subspace(pair.b, interior);
    std::vector<VertexFunction> hc = harmonic_subspace(pair.c, interior);
    if (hb.size() != 1 || hc.size() != 1)
        throw std::invalid_argument("harmonic subspaces must be one-dimensional, got dim_b = " +
                                    std::to_string(hb.size()) +
                                    ", dim_c = " + std::to_string(hc.size()));
    GroundedSolver c_solver(pair.c);
    VertexFunction w = adjoint_inclusion(pair, hb[0], c_solver);
    double wn2 = energy_form(w, w);
    double hb2 = energy_form(hb[0], hb[0]);
    double hc2 = energy_form(hc[0], hc[0]);
    HarmonicTransferInvariant out;
    out.K = std::sqrt(wn2 / hb2);
    out.alignment = std::abs(energy_form(w, hc[0])) / std::sqrt(wn2 * hc2);
    return out;
}

}  // namespace rnet
