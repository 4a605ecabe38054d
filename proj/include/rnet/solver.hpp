#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

#include "rnet/network.hpp"

namespace rnet {

/**
 * Direct LDL^T factorization of a principal submatrix L[S,S] of a network
 * Laplacian, with a fixed elimination order chosen up front:
 *
 *   1. while the remaining subgraph has a pendant vertex (<= 1 surviving
 *      neighbor inside S), eliminate the pendant with the largest diagonal;
 *   2. otherwise eliminate the remaining vertex with the largest diagonal.
 *
 * Eliminating a pendant never mixes conductance scales: on (geometrically
 * weighted) trees every pivot equals a local conductance sum exactly. Blocked
 * library factorizations and max-diagonal pivoting both lose the small
 * equivalent conductances of such chains once weights span ~1/eps, so the
 * elimination is done unblocked, right-looking, in the precomputed order.
 */
class SubsetSolver {
public:
    SubsetSolver(const Network& net, std::vector<int> subset) : subset_(std::move(subset)) {
        const int m = static_cast<int>(subset_.size());
        if (m == 0) return;
        std::vector<char> seen(net.size(), 0);
        for (int g : subset_) {
            if (g < 0 || g >= net.size()) throw std::invalid_argument("subset index out of range");
            if (seen[g]) throw std::invalid_argument("duplicate subset index");
            seen[g] = 1;
        }
        std::vector<int> local(net.size(), -1);
        for (int k = 0; k < m; ++k) local[subset_[k]] = k;

        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
        std::vector<std::vector<int>> adj(m);
        for (int k = 0; k < m; ++k) {
            int g = subset_[k];
            A(k, k) = net.weighted_degree(g);
            for (const auto& [h, w] : net.neighbors(g)) {
                int l = local[h];
                if (l >= 0 && l != k) {
                    A(k, l) = -w;
                    adj[k].push_back(l);
                }
            }
        }
        order_ = elimination_order(A, adj);
        factorize(A);
    }

    int dim() const { return static_cast<int>(subset_.size()); }
    const std::vector<int>& subset() const { return subset_; }

    /// Solves L[S,S] x = rhs, both indexed like the subset vector.
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
        Eigen::VectorXd y = permute(rhs);
        forward(y);
        y.array() /= diag_.array();
        backward(y);
        return unpermute(y);
    }

    /// x = D^{-1/2} L^{-1} P rhs, one half of the congruence L[S,S] = P^T L D L^T P.
    Eigen::VectorXd half_solve(const Eigen::VectorXd& rhs) const {
        Eigen::VectorXd y = permute(rhs);
        forward(y);
        y.array() /= diag_.array().sqrt();
        return y;
    }

    /// x = P^T L^{-T} D^{-1/2} rhs, the transpose of half_solve.
    Eigen::VectorXd half_solve_transpose(const Eigen::VectorXd& rhs) const {
        Eigen::VectorXd y = rhs;
        y.array() /= diag_.array().sqrt();
        backward(y);
        return unpermute(y);
    }

    double min_pivot() const { return dim() ? diag_.minCoeff() : 0.0; }

private:
    static std::vector<int> elimination_order(const Eigen::MatrixXd& A,
                                              std::vector<std::vector<int>> adj) {
        const int m = static_cast<int>(adj.size());
        std::vector<int> deg(m);
        std::vector<char> alive(m, 1);
        for (int i = 0; i < m; ++i) deg[i] = static_cast<int>(adj[i].size());
        std::vector<int> order;
        order.reserve(m);
        for (int step = 0; step < m; ++step) {
            int best = -1;
            bool best_pendant = false;
            for (int i = 0; i < m; ++i) {
                if (!alive[i]) continue;
                bool pendant = deg[i] <= 1;
                if (best < 0 || (pendant && !best_pendant) ||
                    (pendant == best_pendant && A(i, i) > A(best, best))) {
                    best = i;
                    best_pendant = pendant;
                }
            }
            order.push_back(best);
            alive[best] = 0;
            for (int j : adj[best])
                if (alive[j]) --deg[j];
        }
        return order;
    }

    void factorize(const Eigen::MatrixXd& A) {
        const int m = dim();
        fac_.resize(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) fac_(r, c) = A(order_[r], order_[c]);
        diag_.resize(m);
        for (int k = 0; k < m; ++k) {
            double d = fac_(k, k);
            if (!(d > 0.0))
                throw std::runtime_error("grounded Laplacian block is singular (pivot " +
                                         std::to_string(d) + " at elimination step " +
                                         std::to_string(k) + "); is the network connected?");
            diag_[k] = d;
            int t = m - k - 1;
            if (t > 0) {
                Eigen::VectorXd col = fac_.col(k).tail(t);
                Eigen::VectorXd mult = col / d;
                fac_.bottomRightCorner(t, t).noalias() -= mult * col.transpose();
                fac_.col(k).tail(t) = mult;
            }
        }
    }

    Eigen::VectorXd permute(const Eigen::VectorXd& v) const {
        Eigen::VectorXd out(v.size());
        for (int k = 0; k < dim(); ++k) out[k] = v[order_[k]];
        return out;
    }
    Eigen::VectorXd unpermute(const Eigen::VectorXd& v) const {
        Eigen::VectorXd out(v.size());
        for (int k = 0; k < dim(); ++k) out[order_[k]] = v[k];
        return out;
    }
    void forward(Eigen::VectorXd& y) const {
        const int m = dim();
        for (int k = 0; k < m; ++k) {
            int t = m - k - 1;
            if (t > 0) y.tail(t).noalias() -= y[k] * fac_.col(k).tail(t);
        }
    }
    void backward(Eigen::VectorXd& y) const {
        const int m = dim();
        for (int k = m - 1; k >= 0; --k) {
            int t = m - k - 1;
            if (t > 0) y[k] -= fac_.col(k).tail(t).dot(y.tail(t));
        }
    }

    std::vector<int> subset_;
    std::vector<int> order_;  // elimination order, local indices
    Eigen::MatrixXd fac_;     // unit-lower multipliers below the diagonal
    Eigen::VectorXd diag_;
};

/**
 * Factorization of the reduced Laplacian (origin row/column deleted) of a
 * connected network; solves L w = f on the grounded space. Reusable across
 * right-hand sides, e.g. for whole energy kernels.
 */
class GroundedSolver {
public:
    explicit GroundedSolver(NetworkPtr net)
        : net_(require_connected(std::move(net))), sub_(*net_, keep_indices(*net_)) {}

    const NetworkPtr& network() const { return net_; }

    /// Solves L w = rhs with w grounded; rhs is a full-length vector whose
    /// origin entry is ignored (it is determined by the others when the rhs
    /// sums to zero).
    VertexFunction solve(const Eigen::VectorXd& rhs) const {
        if (rhs.size() != net_->size())
            throw std::invalid_argument("vector length does not match vertex count");
        Eigen::VectorXd r(sub_.dim());
        const auto& keep = sub_.subset();
        for (int k = 0; k < sub_.dim(); ++k) r[k] = rhs[keep[k]];
        Eigen::VectorXd x = sub_.solve(r);
        Eigen::VectorXd full = Eigen::VectorXd::Zero(net_->size());
        for (int k = 0; k < sub_.dim(); ++k) full[keep[k]] = x[k];
        return VertexFunction(net_, std::move(full));
    }

    const SubsetSolver& reduced() const { return sub_; }

    static std::vector<int> keep_indices(const Network& net) {
        std::vector<int> keep;
        keep.reserve(net.size() - 1);
        for (int i = 0; i < net.size(); ++i)
            if (i != net.origin_index()) keep.push_back(i);
        return keep;
    }

    static NetworkPtr require_connected(NetworkPtr net) {
        if (!net->connected())
            throw std::runtime_error("network is not connected: " + net->describe_components());
        return net;
    }

private:
    NetworkPtr net_;
    SubsetSolver sub_;
};

}  // namespace rnet
