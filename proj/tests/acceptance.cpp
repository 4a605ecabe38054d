// Acceptance suite: one check per numbered criterion, one PASS/FAIL line each.
// Exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rnet/rnet.hpp"

#include "random_networks.hpp"

using namespace rnet;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<bool(std::string&)> run;
};

double max_abs(double a, double b) { return std::max(a, std::abs(b)); }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// 1. Reproducing kernel on 20 random networks, 100 random u each.
bool c01(std::string& detail) {
    double worst = 0.0;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        int n = 5 + static_cast<int>(seed % 8);
        NetworkPtr net = testgen::random_connected_network(10 + seed, n);
        EnergyKernel kernel(net);
        for (uint64_t s = 0; s < 100; ++s) {
            VertexFunction u = testgen::random_grounded_function(seed * 1000 + s, net);
            for (int x = 0; x < net->size(); ++x)
                worst = max_abs(worst, energy_form(kernel.at(x), u) - u(x));
        }
    }
    detail = "max |<v_x,u>_E - (u(x)-u(o))| = " + fmt(worst);
    return worst <= 1e-8;
}

// 2. Green identity <v_x, Lap v_y>_E = delta_xy + 1.
bool c02(std::string& detail) {
    double worst = 0.0;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        NetworkPtr net = testgen::random_connected_network(40 + seed, 5 + (seed % 7));
        EnergyKernel kernel(net);
        int o = net->origin_index();
        for (int x = 0; x < net->size(); ++x) {
            if (x == o) continue;
            for (int y = 0; y < net->size(); ++y) {
                if (y == o) continue;
                double got = energy_form(kernel.at(x), apply_laplacian(kernel.at(y)));
                worst = max_abs(worst, got - ((x == y ? 1.0 : 0.0) + 1.0));
            }
        }
    }
    detail = "max residual = " + fmt(worst);
    return worst <= 1e-8;
}

// 3. Reciprocity identity, exact and Monte Carlo.
bool c03(std::string& detail) {
    double worst = 0.0;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        NetworkPtr net = testgen::random_connected_network(100 + seed, 4 + (seed % 7));
        for (int x = 0; x < net->size(); ++x) {
            if (x == net->origin_index()) continue;
            worst = std::max(worst,
                             reciprocity_report(net, net->name(x), net->origin_name()).gap);
        }
    }
    int outside = 0;
    const int runs = 200;
    for (int run = 0; run < runs; ++run) {
        NetworkPtr net = testgen::random_connected_network(300 + (run % 10), 5);
        int x = 1 + (run % (net->size() - 1));
        double exact =
            escape_probability_exact(net, net->name(x), net->origin_name()).probability;
        auto mc = escape_probability_mc(net, net->name(x), net->origin_name(), 1500,
                                        static_cast<uint64_t>(run));
        double se = std::max(mc.standard_error, 1e-12);
        if (std::abs(mc.probability - exact) > 4.0 * se) ++outside;
    }
    std::ostringstream os;
    os << "max exact gap = " << worst << ", MC outside 4se: " << outside << "/" << runs;
    detail = os.str();
    return worst <= 1e-9 && outside <= runs / 100;
}

// 4. Contractivity plus exact scalar pairs.
bool c04(std::string& detail) {
    double worst_norm = 0.0;
    for (uint64_t seed = 0; seed < 200; ++seed)
        worst_norm = std::max(worst_norm,
                              embedding_norm(testgen::random_pair(500 + seed, 4 + (seed % 9))));
    double worst_scalar = 0.0;
    for (double alpha : {0.2, 0.5, 0.9}) {
        NetworkPtr net = testgen::random_connected_network(777, 9);
        std::vector<EdgeEntry> b_edges, c_edges;
        for (const auto& [key, w] : net->edges()) {
            b_edges.push_back({net->name(key.first), net->name(key.second), alpha * alpha * w});
            c_edges.push_back({net->name(key.first), net->name(key.second), w});
        }
        auto pair = make_conductance_pair(net->vertex_names(), b_edges, c_edges,
                                          net->origin_name());
        worst_scalar = max_abs(worst_scalar, embedding_norm(pair) - alpha);
    }
    std::ostringstream os;
    os << "max norm = " << worst_norm << ", scalar-pair error = " << worst_scalar;
    detail = os.str();
    return worst_norm <= 1.0 + 1e-9 && worst_scalar <= 1e-10;
}

// 5. I* maps the b-kernel onto the c-kernel.
bool c05(std::string& detail) {
    double worst = 0.0;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        ConductancePair pair = testgen::random_pair(900 + seed, 4 + (seed % 8));
        EnergyKernel kb(pair.b), kc(pair.c);
        GroundedSolver c_solver(pair.c);
        for (int x = 0; x < pair.b->size(); ++x) {
            VertexFunction w = adjoint_inclusion(pair, kb.at(x), c_solver);
            VertexFunction diff(pair.c, w.values() - kc.at(x).values());
            worst = std::max(worst, std::sqrt(energy_form(diff, diff)));
        }
    }
    detail = "max ||I* v_x^b - v_x^c||_Ec = " + fmt(worst);
    return worst <= 1e-8;
}

// 6. Conjugation identity Lap_b = I Lap_c I*.
bool c06(std::string& detail) {
    double worst = 0.0;
    for (uint64_t seed = 0; seed < 50; ++seed)
        worst = std::max(worst,
                         conjugation_identity_residual(testgen::random_pair(1200 + seed,
                                                                            4 + (seed % 8))));
    detail = "max residual = " + fmt(worst);
    return worst <= 1e-8;
}

// 7. Cross-adjoint: adjoint relation and action on the c-kernel.
bool c07(std::string& detail) {
    double worst_adj = 0.0, worst_kernel = 0.0;
    for (uint64_t seed = 0; seed < 5; ++seed) {
        ConductancePair pair = testgen::random_pair(1500 + seed, 5 + (seed % 6));
        GroundedSolver c_solver(pair.c);
        for (uint64_t s = 0; s < 20; ++s) {
            VertexFunction u = testgen::random_grounded_function(9000 + 100 * seed + s, pair.c);
            VertexFunction v = testgen::random_grounded_function(9500 + 100 * seed + s, pair.c);
            VertexFunction Mu = cross_adjoint_apply(pair, u, c_solver);
            double lhs = energy_form(*pair.c, Mu.values(), v.values());
            double rhs =
                energy_form(*pair.c, u.values(), pair.b->laplacian_apply(v.values()));
            worst_adj = max_abs(worst_adj, lhs - rhs);
        }
        EnergyKernel kc(pair.c);
        for (int x = 0; x < pair.c->size(); ++x) {
            if (x == pair.c->origin_index()) continue;
            VertexFunction lhs = cross_adjoint_apply(pair, kc.at(x), c_solver);
            VertexFunction rhs = adjoint_inclusion(
                pair, grounded_dipole_charge(pair.b, x, pair.b->origin_index()), c_solver);
            worst_kernel =
                std::max(worst_kernel, (lhs.values() - rhs.values()).cwiseAbs().maxCoeff());
        }
    }
    std::ostringstream os;
    os << "adjoint residual = " << worst_adj << ", kernel identity residual = " << worst_kernel;
    detail = os.str();
    return worst_adj <= 1e-8 && worst_kernel <= 1e-8;
}

// 8. Moment identities and monotonicity of spectral measures.
bool c08(std::string& detail) {
    double worst_identity = 0.0;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        NetworkPtr net = testgen::random_connected_network(1700 + seed, 4 + (seed % 6));
        EnergyKernel kernel(net);
        GroundedSolver solver(net);
        int o = net->origin_index();
        for (int x = 0; x < net->size(); ++x) {
            if (x == o) continue;
            for (int y = 0; y < net->size(); ++y) {
                if (y == o) continue;
                VertexFunction u = kernel.at(x) - kernel.at(y);
                double R = effective_resistance(solver, x, y);
                worst_identity = max_abs(worst_identity, moment(u, 0) - R);
                worst_identity =
                    max_abs(worst_identity, moment(u, 1) - (x == y ? 0.0 : 2.0));
                double m2 = x == y ? 0.0
                                   : net->weighted_degree(x) + 2 * net->conductance(x, y) +
                                         net->weighted_degree(y);
                worst_identity = max_abs(worst_identity, moment(u, 2) - m2);
            }
        }
    }

    double worst_m1 = 0.0, worst_m2 = 0.0;
    bool strict_ok = true;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        ConductancePair pair = testgen::random_pair(1900 + seed, 4 + (seed % 8));
        EnergyKernel kb(pair.b);
        int x = 1 + static_cast<int>(seed % (pair.b->size() - 1));
        if (x == pair.b->origin_index()) x = (x + 1) % pair.b->size();
        const VertexFunction& u = kb.at(x);
        auto gaps = monotonicity_check(pair, u);
        worst_m1 = max_abs(worst_m1, gaps.m1_gap);
        worst_m2 = std::min(worst_m2, gaps.m2_gap);
        // strictness hypothesis: some edge with b < c carries a difference of L_b u
        Eigen::VectorXd w = pair.b->laplacian_apply(u.values());
        bool hypothesis = false;
        for (const auto& [key, wc] : pair.c->edges()) {
            double wb = pair.b->conductance(key.first, key.second);
            if (wb < wc - 1e-12 && std::abs(w[key.first] - w[key.second]) > 1e-9)
                hypothesis = true;
        }
        if (hypothesis && !(gaps.m2_gap > 0.0)) strict_ok = false;
    }
    std::ostringstream os;
    os << "identity residual = " << worst_identity << ", |m1 gap| = " << worst_m1
       << ", min m2 gap = " << worst_m2 << (strict_ok ? ", strictness ok" : ", STRICTNESS FAIL");
    detail = os.str();
    return worst_identity <= 1e-8 && worst_m1 <= 1e-8 && worst_m2 >= -1e-9 && strict_ok;
}

// 9. Spectral invariant on the geometric integers.
bool c09(std::string& detail) {
    const double target = std::sqrt(0.5);
    std::vector<double> errors;
    double alignment60 = 0.0;
    for (int N : {20, 40, 60}) {
        ConductancePair pair(geometric_integers(N, 1.5), geometric_integers(N, 2.0));
        auto res = harmonic_transfer_invariant(pair, geometric_interior(N));
        errors.push_back(std::abs(res.K - target));
        if (N == 60) alignment60 = res.alignment;
    }
    bool monotone = errors[0] > errors[1] && errors[1] > errors[2];
    std::ostringstream os;
    os << "K errors (N=20,40,60) = " << errors[0] << ", " << errors[1] << ", " << errors[2]
       << "; alignment = " << alignment60;
    detail = os.str();
    return errors[2] <= 1e-2 && monotone && alignment60 >= 0.999;
}

// 10. Schur reduction preserves effective resistance; K4 case.
bool c10(std::string& detail) {
    double worst = 0.0;
    std::mt19937_64 pick(4242);
    for (uint64_t seed = 0; seed < 50; ++seed) {
        NetworkPtr net = testgen::random_connected_network(2600 + seed, 6 + (seed % 6));
        std::vector<std::string> keep{net->origin_name()};
        for (int i = 0; i < net->size(); ++i) {
            if (i == net->origin_index()) continue;
            if (pick() % 2 == 0) keep.push_back(net->name(i));
        }
        if (keep.size() < 2)
            keep.push_back(net->name((net->origin_index() + 1) % net->size()));
        NetworkPtr red = schur_reduce(net, keep);
        GroundedSolver full(net), small(red);
        for (size_t a = 0; a < keep.size(); ++a)
            for (size_t b = a + 1; b < keep.size(); ++b) {
                double r1 =
                    effective_resistance(full, net->index_of(keep[a]), net->index_of(keep[b]));
                double r2 =
                    effective_resistance(small, red->index_of(keep[a]), red->index_of(keep[b]));
                worst = max_abs(worst, r1 - r2);
            }
    }
    NetworkPtr k4 = generate({FamilyKind::complete, 4});
    NetworkPtr red = schur_reduce(k4, {"0", "1"});
    double rk4 = effective_resistance(red, "0", "1");
    std::ostringstream os;
    os << "max resistance drift = " << worst << ", K4 reduced R = " << rk4;
    detail = os.str();
    return worst <= 1e-9 && std::abs(rk4 - 0.5) <= 1e-9;
}

// 11. Embedding into the flat space obeys the 1/sqrt(eps) bound.
bool c11(std::string& detail) {
    double worst_excess = -1e300;
    for (uint64_t seed = 0; seed < 50; ++seed) {
        NetworkPtr net = testgen::random_connected_network(3000 + seed, 4 + (seed % 8));
        auto res = lower_bound_criterion(net);
        worst_excess = std::max(worst_excess, res.measured_norm - res.bound);
    }
    detail = "max (measured - bound) = " + fmt(worst_excess);
    return worst_excess <= 1e-9;
}

// 12. Operator-norm monotonicity; growth on the horizontally connected tree.
bool c12(std::string& detail) {
    double worst = -1e300;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        ConductancePair pair = testgen::random_pair(3300 + seed, 4 + (seed % 8));
        worst = std::max(worst, operator_norm(pair.b) - operator_norm(pair.c));
    }
    bool increasing = true;
    double prev = 0.0;
    std::ostringstream trend;
    for (int depth = 4; depth <= 8; ++depth) {
        double lmax = operator_norm(generate({FamilyKind::horizontally_connected_tree, depth}));
        increasing = increasing && lmax > prev;
        trend << (depth > 4 ? ", " : "") << lmax;
        prev = lmax;
    }
    std::ostringstream os;
    os << "max (|Lb| - |Lc|) = " << worst << "; tree lambda_max = " << trend.str();
    detail = os.str();
    return worst <= 1e-9 && increasing;
}

// 13. Heat-kernel inverse against the direct solve.
bool c13(std::string& detail) {
    double worst = 0.0;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        NetworkPtr net = testgen::random_connected_network(3600 + seed, 4 + (seed % 8));
        VertexFunction u = testgen::random_grounded_function(3700 + seed, net);
        worst = std::max(worst, inverse_via_heat(net, u).rel_error_vs_direct);
    }
    detail = "max relative error = " + fmt(worst);
    return worst <= 1e-4;
}

// 14. Closed forms on the geometric integers.
bool c14(std::string& detail) {
    double worst_dipole = 0.0;
    for (int n : {1, 2, 3, 5}) {
        int N = 2 * n + 20;
        for (double base : {1.5, 2.0}) {
            VertexFunction closed = closed_form_dipole(base, N, n);
            VertexFunction solved = dipole(closed.network(), std::to_string(n), "0");
            worst_dipole = std::max(
                worst_dipole, (closed.values() - solved.values()).cwiseAbs().maxCoeff());
        }
    }
    VertexFunction h = closed_form_harmonic(2.0, 40);
    Eigen::VectorXd res = h.network()->laplacian_apply(h.values());
    double worst_res = 0.0;
    for (int k = -39; k <= 39; ++k)
        worst_res = max_abs(worst_res, res[h.network()->index_of(std::to_string(k))]);
    double energy = energy_form(h, h);
    std::ostringstream os;
    os << "dipole mismatch = " << worst_dipole << ", harmonic residual = " << worst_res
       << ", energy = " << energy;
    detail = os.str();
    return worst_dipole <= 1e-6 && worst_res <= 1e-9 && std::abs(energy - 0.5) <= 1e-6;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "reproducing kernel", c01},
        {2, "green identity on kernels", c02},
        {3, "walk reciprocity (exact + monte carlo)", c03},
        {4, "contractive embedding norm", c04},
        {5, "adjoint maps b-kernel to c-kernel", c05},
        {6, "conjugation identity", c06},
        {7, "cross-adjoint", c07},
        {8, "spectral moments and monotonicity", c08},
        {9, "harmonic spectral invariant", c09},
        {10, "schur reduction", c10},
        {11, "flat-embedding bound", c11},
        {12, "operator-norm monotonicity", c12},
        {13, "heat-kernel inverse", c13},
        {14, "geometric closed forms", c14},
    };

    int failures = 0;
    for (auto& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", c.number,
                    c.title.c_str(), detail.c_str());
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
