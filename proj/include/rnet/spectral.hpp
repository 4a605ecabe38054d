#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rnet/comparison.hpp"
#include "rnet/network.hpp"
#include "rnet/solver.hpp"

namespace rnet {

/**
 * Eigendecomposition of the Laplacian acting on the grounded energy space:
 * eigenvalues sorted ascending with the zero (constants) mode removed, and
 * eigenvectors rescaled from l2-orthonormal to energy-orthonormal,
 * <psi_i, psi_j>_E = delta_ij.
 */
struct SpectralDecomposition {
    NetworkPtr net;
    Eigen::VectorXd eigenvalues;        // lambda_1 <= ... <= lambda_{n-1}, all > 0
    std::vector<VertexFunction> modes;  // energy-orthonormal eigenfunctions
};

inline SpectralDecomposition eigensystem(const NetworkPtr& net) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(net->laplacian());
    const int n = net->size();
    const Eigen::VectorXd& ev = eig.eigenvalues();
    double lmax = ev[n - 1];
    // constants mode below the pseudo-inverse threshold; a second small
    // eigenvalue means a disconnected network
    double zero_tol = 1e-12 * std::max(lmax, 1.0);
    if (n > 1 && ev[1] <= zero_tol)
        throw std::runtime_error("network is not connected: " + net->describe_components());

    SpectralDecomposition out;
    out.net = net;
    out.eigenvalues = ev.tail(n - 1);
    out.modes.reserve(n - 1);
    for (int i = 1; i < n; ++i) {
        Eigen::VectorXd psi = eig.eigenvectors().col(i) / std::sqrt(ev[i]);
        psi.array() -= psi[net->origin_index()];
        // sign convention on the grounded representative: first significant
        // entry in vertex order is positive
        double scale = psi.cwiseAbs().maxCoeff();
        for (int k = 0; k < n; ++k) {
            if (std::abs(psi[k]) > 1e-12 * scale) {
                if (psi[k] < 0.0) psi = -psi;
                break;
            }
        }
        out.modes.emplace_back(net, std::move(psi));
    }
    return out;
}

/// Spectral measure mu_u: one atom (lambda_i, <u, psi_i>_E^2) per eigenvalue.
/// The weights sum to ||u||_E^2.
struct DiscreteMeasure {
    std::vector<std::pair<double, double>> atoms;  // (eigenvalue, weight >= 0)

    double total() const {
        double s = 0.0;
        for (const auto& [l, w] : atoms) s += w;
        return s;
    }
    double moment(int k) const {
        double s = 0.0;
        for (const auto& [l, w] : atoms) s += std::pow(l, k) * w;
        return s;
    }
};

inline DiscreteMeasure spectral_measure(const SpectralDecomposition& dec,
                                        const VertexFunction& u) {
    if (u.network().get() != dec.net.get())
        throw std::invalid_argument("function does not live on the decomposed network");
    DiscreteMeasure out;
    out.atoms.reserve(dec.modes.size());
    for (size_t i = 0; i < dec.modes.size(); ++i) {
        double a = energy_form(u, dec.modes[i]);
        out.atoms.emplace_back(dec.eigenvalues[static_cast<int>(i)], a * a);
    }
    return out;
}

inline DiscreteMeasure spectral_measure(const NetworkPtr& net, const VertexFunction& u) {
    return spectral_measure(eigensystem(net), u);
}

/// k-th spectral moment m_k(u) = <u, Lap^k u>_E, computed by k pointwise
/// Laplacian applications (exact up to roundoff; the eigensystem route is the
/// cross-check, not the definition).
inline double moment(const VertexFunction& u, int k) {
    if (k < 0) throw std::invalid_argument("moment order must be >= 0");
    VertexFunction w = u;
    for (int i = 0; i < k; ++i) w = apply_laplacian(w);
    return energy_form(u, w);
}

/// Operator norm of Lap on the energy space: the largest eigenvalue.
inline double operator_norm(const NetworkPtr& net) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(net->laplacian(), Eigen::EigenvaluesOnly);
    return eig.eigenvalues().maxCoeff();
}

struct MonotonicityGaps {
    double m1_gap = 0.0;  // m_1^(c)(I*u) - m_1^(b)(u), zero up to roundoff
    double m2_gap = 0.0;  // m_2^(c)(I*u) - m_2^(b)(u), always >= 0
};

/**
 * The monotonicity statement for spectral measures under b <= c: first
 * moments transfer exactly through I*, second moments can only grow. The gap
 * is strictly positive when some edge with b < c carries a nonzero difference
 * of Lap_b u.
 */
inline MonotonicityGaps monotonicity_check(const ConductancePair& pair, const VertexFunction& u) {
    detail::require_valid(pair);
    detail::require_compatible(pair, u);
    GroundedSolver c_solver(pair.c);
    VertexFunction ub(pair.b, u.values());
    VertexFunction uc = adjoint_inclusion(pair, ub, c_solver);
    MonotonicityGaps out;
    out.m1_gap = moment(uc, 1) - moment(ub, 1);
    out.m2_gap = moment(uc, 2) - moment(ub, 2);
    return out;
}

struct HeatQuadrature {
    int nodes = 200;           // log-spaced trapezoid nodes
    double lo_factor = 1e-6;   // lower endpoint = lo_factor / lambda_max
    double hi_factor = 50.0;   // upper endpoint = hi_factor / lambda_min
};

struct HeatInverseResult {
    VertexFunction value;
    double rel_error_vs_direct = 0.0;
};

/// Direct realization of Lap^{-1} on the grounded space: the grounded solve
/// of u centered to sum zero.
inline VertexFunction energy_inverse_direct(const NetworkPtr& net, const VertexFunction& u) {
    GroundedSolver solver(net);
    Eigen::VectorXd rhs = u.values();
    rhs.array() -= rhs.mean();
    return solver.solve(rhs);
}

/**
 * Lap^{-1} u through the heat semigroup, integrating e^{-t Lap} u over
 * t in (0, infinity) with a log-spaced trapezoid rule tied to the extreme
 * eigenvalues (plus a small linear chunk near t = 0). The result is checked
 * against the direct solve; a relative error above 1e-3 emits a warning.
 */
inline HeatInverseResult inverse_via_heat(const NetworkPtr& net, const VertexFunction& u,
                                          const HeatQuadrature& quad = {}) {
    if (quad.nodes < 2) throw std::invalid_argument("quadrature needs at least two nodes");
    SpectralDecomposition dec = eigensystem(net);
    const int m = static_cast<int>(dec.modes.size());
    double lmin = dec.eigenvalues[0];
    double lmax = dec.eigenvalues[m - 1];
    double a = quad.lo_factor / lmax;
    double b = quad.hi_factor / lmin;

    // scalar Laplace transform per eigenvalue: g(lambda) ~ 1/lambda
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m);
    double log_a = std::log(a), log_b = std::log(b);
    double h = (log_b - log_a) / (quad.nodes - 1);
    for (int q = 0; q < quad.nodes; ++q) {
        double t = std::exp(log_a + q * h);
        double wq = (q == 0 || q == quad.nodes - 1) ? 0.5 * h : h;
        for (int i = 0; i < m; ++i) g[i] += wq * t * std::exp(-t * dec.eigenvalues[i]);
    }
    for (int i = 0; i < m; ++i) g[i] += 0.5 * a * (1.0 + std::exp(-a * dec.eigenvalues[i]));

    Eigen::VectorXd result = Eigen::VectorXd::Zero(net->size());
    for (int i = 0; i < m; ++i) {
        double coeff = energy_form(u, dec.modes[i]);
        result += g[i] * coeff * dec.modes[i].values();
    }
    HeatInverseResult out{VertexFunction(net, std::move(result)), 0.0};

    VertexFunction direct = energy_inverse_direct(net, u);
    double denom = direct.values().norm();
    if (denom > 0.0)
        out.rel_error_vs_direct = (out.value.values() - direct.values()).norm() / denom;
    if (out.rel_error_vs_direct > 1e-3)
        std::cerr << "inverse_via_heat: quadrature error " << out.rel_error_vs_direct
                  << " relative to the direct solve\n";
    return out;
}

}  // namespace rnet
