#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rnet/network.hpp"
#include "rnet/solver.hpp"

namespace rnet {

/// Dipole by index against a prepared factorization: the grounded v with
/// Lap v = delta_x - delta_y. dipole(x, x) is the zero function.
inline VertexFunction dipole(const GroundedSolver& solver, int x, int y) {
    const NetworkPtr& net = solver.network();
    if (x < 0 || x >= net->size() || y < 0 || y >= net->size())
        throw std::invalid_argument("vertex index out of range");
    if (x == y) return VertexFunction::zero(net);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(net->size());
    rhs[x] += 1.0;
    rhs[y] -= 1.0;
    return solver.solve(rhs);
}

inline VertexFunction dipole(const NetworkPtr& net, const std::string& x, const std::string& y) {
    GroundedSolver solver(net);
    return dipole(solver, net->index_of(x), net->index_of(y));
}

/**
 * The energy kernel {v_x}: v_x = dipole(x, o), the reproducing kernel of the
 * grounded energy space, <v_x, u>_E = u(x) - u(o). v_o is the zero function.
 * All columns share one factorization of the reduced Laplacian.
 */
class EnergyKernel {
public:
    explicit EnergyKernel(NetworkPtr net) : solver_(std::move(net)) {
        const NetworkPtr& n = solver_.network();
        columns_.reserve(n->size());
        for (int x = 0; x < n->size(); ++x)
            columns_.push_back(dipole(solver_, x, n->origin_index()));
    }

    const NetworkPtr& network() const { return solver_.network(); }
    const GroundedSolver& solver() const { return solver_; }
    const VertexFunction& at(int x) const { return columns_.at(x); }
    const VertexFunction& at(const std::string& x) const {
        return columns_.at(network()->index_of(x));
    }
    int size() const { return static_cast<int>(columns_.size()); }

private:
    GroundedSolver solver_;
    std::vector<VertexFunction> columns_;
};

inline EnergyKernel energy_kernel(NetworkPtr net) { return EnergyKernel(std::move(net)); }

/// Free effective resistance R(x,y) = ||v_x - v_y||_E^2.
inline double effective_resistance(const GroundedSolver& solver, int x, int y) {
    if (x == y) return 0.0;
    VertexFunction v = dipole(solver, x, y);
    return energy_form(v, v);
}

inline double effective_resistance(const NetworkPtr& net, const std::string& x,
                                   const std::string& y) {
    GroundedSolver solver(net);
    return effective_resistance(solver, net->index_of(x), net->index_of(y));
}

/**
 * Kron/Schur reduction onto a vertex subset: eliminates everything outside
 * `keep` and returns the smaller network whose Laplacian is the Schur
 * complement. Pairwise effective resistances among kept vertices are
 * preserved. The origin must lie in `keep` unless `new_origin` names a
 * replacement inside it.
 */
inline NetworkPtr schur_reduce(const NetworkPtr& net, const std::vector<std::string>& keep,
                               const std::optional<std::string>& new_origin = std::nullopt) {
    if (keep.empty()) throw std::invalid_argument("keep set is empty");
    if (!net->connected())
        throw std::runtime_error("network is not connected: " + net->describe_components());

    std::vector<int> keep_idx;
    std::vector<char> kept(net->size(), 0);
    keep_idx.reserve(keep.size());
    for (const auto& name : keep) {
        int i = net->index_of(name);
        if (kept[i]) throw std::invalid_argument("duplicate keep vertex \"" + name + "\"");
        kept[i] = 1;
        keep_idx.push_back(i);
    }

    std::string origin = new_origin.value_or(net->origin_name());
    if (!kept[net->index_of(origin)])
        throw std::invalid_argument("origin \"" + origin + "\" is not in the keep set");

    std::vector<int> drop_idx;
    for (int i = 0; i < net->size(); ++i)
        if (!kept[i]) drop_idx.push_back(i);

    const int nk = static_cast<int>(keep_idx.size());
    Eigen::MatrixXd S(nk, nk);
    if (drop_idx.empty()) {
        Eigen::MatrixXd L = net->laplacian();
        for (int a = 0; a < nk; ++a)
            for (int b = 0; b < nk; ++b) S(a, b) = L(keep_idx[a], keep_idx[b]);
    } else {
        SubsetSolver inner(*net, drop_idx);
        const int nd = static_cast<int>(drop_idx.size());
        Eigen::MatrixXd L = net->laplacian();
        Eigen::MatrixXd L_kd(nk, nd);
        for (int a = 0; a < nk; ++a)
            for (int b = 0; b < nd; ++b) L_kd(a, b) = L(keep_idx[a], drop_idx[b]);
        for (int a = 0; a < nk; ++a)
            for (int b = 0; b < nk; ++b) S(a, b) = L(keep_idx[a], keep_idx[b]);
        for (int b = 0; b < nk; ++b) {
            Eigen::VectorXd col(nd);
            for (int r = 0; r < nd; ++r) col[r] = L(drop_idx[r], keep_idx[b]);
            Eigen::VectorXd x = inner.solve(col);
            S.col(b).noalias() -= L_kd * x;
        }
    }

    std::vector<std::string> names;
    names.reserve(nk);
    for (int i : keep_idx) names.push_back(net->name(i));
    std::vector<EdgeEntry> edges;
    for (int a = 0; a < nk; ++a) {
        for (int b = a + 1; b < nk; ++b) {
            double cab = -0.5 * (S(a, b) + S(b, a));
            // scale-aware drop tolerance; for a PSD S, |S_ab| <= sqrt(S_aa S_bb)
            double tol = 1e-12 * std::sqrt(std::max(S(a, a), 0.0) * std::max(S(b, b), 0.0));
            if (cab > tol) edges.push_back({names[a], names[b], cab});
        }
    }
    return make_network(std::move(names), edges, origin);
}

/**
 * Energy-orthonormal basis of the finite shadow of Harm: all grounded
 * functions whose Laplacian vanishes on `interior`. Realized by harmonic
 * extension of boundary-vertex indicators; the single constants direction is
 * removed (it is always the one-dimensional kernel of the Gram matrix). With
 * interior = all vertices the space is empty.
 */
inline std::vector<VertexFunction> harmonic_subspace(const NetworkPtr& net,
                                                     const std::vector<std::string>& interior) {
    if (!net->connected())
        throw std::runtime_error("network is not connected: " + net->describe_components());
    std::vector<char> inner(net->size(), 0);
    for (const auto& name : interior) inner[net->index_of(name)] = 1;

    std::vector<int> interior_idx, boundary_idx;
    for (int i = 0; i < net->size(); ++i)
        (inner[i] ? interior_idx : boundary_idx).push_back(i);
    if (boundary_idx.empty()) return {};

    const int ni = static_cast<int>(interior_idx.size());
    const int nb = static_cast<int>(boundary_idx.size());

    std::vector<Eigen::VectorXd> exts;
    exts.reserve(nb);
    if (ni == 0) {
        for (int b : boundary_idx) {
            Eigen::VectorXd u = Eigen::VectorXd::Zero(net->size());
            u[b] = 1.0;
            exts.push_back(std::move(u));
        }
    } else {
        SubsetSolver inner_solver(*net, interior_idx);
        for (int b : boundary_idx) {
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ni);
            for (int k = 0; k < ni; ++k) {
                double w = net->conductance(interior_idx[k], b);
                if (w > 0.0) rhs[k] += w;
            }
            Eigen::VectorXd x = inner_solver.solve(rhs);
            Eigen::VectorXd u = Eigen::VectorXd::Zero(net->size());
            u[b] = 1.0;
            for (int k = 0; k < ni; ++k) u[interior_idx[k]] = x[k];
            exts.push_back(std::move(u));
        }
    }

    for (auto& u : exts) u.array() -= u[net->origin_index()];

    Eigen::MatrixXd gram(nb, nb);
    for (int a = 0; a < nb; ++a)
        for (int b = a; b < nb; ++b) gram(a, b) = gram(b, a) = energy_form(*net, exts[a], exts[b]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    std::vector<VertexFunction> basis;
    basis.reserve(nb - 1);
    for (int j = 1; j < nb; ++j) {  // j = 0 is the constants mode
        double lambda = eig.eigenvalues()[j];
        if (!(lambda > 0.0))
            throw std::runtime_error("harmonic Gram matrix is rank deficient beyond constants");
        Eigen::VectorXd u = Eigen::VectorXd::Zero(net->size());
        for (int a = 0; a < nb; ++a) u += eig.eigenvectors()(a, j) * exts[a];
        u /= std::sqrt(lambda);
        // deterministic sign: first significant entry positive
        double scale = u.cwiseAbs().maxCoeff();
        for (int i = 0; i < u.size(); ++i) {
            if (std::abs(u[i]) > 1e-12 * scale) {
                if (u[i] < 0.0) u = -u;
                break;
            }
        }
        basis.emplace_back(net, std::move(u));
    }
    return basis;
}

/**
 * Royden decomposition relative to an interior set: u = fin + harm with harm
 * the energy-orthogonal projection of u onto harmonic_subspace(net, interior).
 */
inline std::pair<VertexFunction, VertexFunction> royden_project(
    const NetworkPtr& net, const VertexFunction& u, const std::vector<std::string>& interior) {
    if (u.network().get() != net.get())
        throw std::invalid_argument("function does not live on this network");
    std::vector<VertexFunction> basis = harmonic_subspace(net, interior);
    Eigen::VectorXd harm = Eigen::VectorXd::Zero(net->size());
    for (const auto& h : basis) harm += energy_form(u, h) * h.values();
    VertexFunction harm_fn(net, harm);
    VertexFunction fin = u - harm_fn;
    return {std::move(fin), std::move(harm_fn)};
}

}  // namespace rnet
