#pragma once

#include <Eigen/Dense>
#include <Eigen/LU>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rnet/energy_space.hpp"
#include "rnet/network.hpp"

namespace rnet {

/// splitmix64: the per-trial stream generator. Cheap, seedable, and splittable
/// by mixing (seed, trial index) into the initial state.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t s) : state(s) {}
    SplitMix64(uint64_t seed, uint64_t stream)
        : SplitMix64(seed + 0x9E3779B97F4A7C15ULL * (stream + 1)) {
        next();
        next();
    }

    uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 significant bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

enum class WalkMethod { exact, monte_carlo };

struct WalkResult {
    double probability = 0.0;
    WalkMethod method = WalkMethod::exact;
    long long trials = 0;        // Monte Carlo only
    double standard_error = 0.0; // Monte Carlo only
    uint64_t seed = 0;           // Monte Carlo only
    long long censored = 0;      // trials cut off by the step cap
};

/// One-step transition probability of the conductance-weighted walk,
/// p(x,y) = c_xy / c(x).
inline double transition_probability(const NetworkPtr& net, const std::string& x,
                                     const std::string& y) {
    int xi = net->index_of(x);
    int yi = net->index_of(y);
    double cx = net->weighted_degree(xi);
    if (cx <= 0.0) throw std::invalid_argument("vertex \"" + x + "\" is isolated");
    return net->conductance(xi, yi) / cx;
}

/**
 * Exact escape probability P[x -> o]: the chance the walk started at x hits o
 * before returning to x. First-step decomposition: q(z) = P_z(hit o before x)
 * solves a linear system with q(o) = 1, q(x) = 0, and harmonicity elsewhere;
 * then P = sum_z p(x,z) q(z).
 */
inline WalkResult escape_probability_exact(const NetworkPtr& net, const std::string& x,
                                           const std::string& target) {
    int xi = net->index_of(x);
    int oi = net->index_of(target);
    if (xi == oi) throw std::invalid_argument("escape probability needs x != o");
    if (!net->connected())
        throw std::runtime_error("network is not connected: " + net->describe_components());

    const int n = net->size();
    std::vector<int> others;
    std::vector<int> slot(n, -1);
    for (int z = 0; z < n; ++z) {
        if (z == xi || z == oi) continue;
        slot[z] = static_cast<int>(others.size());
        others.push_back(z);
    }

    Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
    q[oi] = 1.0;
    if (!others.empty()) {
        const int m = static_cast<int>(others.size());
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
        for (int r = 0; r < m; ++r) {
            int z = others[r];
            double cz = net->weighted_degree(z);
            for (const auto& [w, cw] : net->neighbors(z)) {
                double p = cw / cz;
                if (w == oi)
                    rhs[r] += p;
                else if (slot[w] >= 0)
                    A(r, slot[w]) -= p;
            }
        }
        Eigen::VectorXd sol = Eigen::PartialPivLU<Eigen::MatrixXd>(A).solve(rhs);
        for (int r = 0; r < m; ++r) q[others[r]] = sol[r];
    }

    double p_escape = 0.0;
    double cx = net->weighted_degree(xi);
    for (const auto& [w, cw] : net->neighbors(xi)) p_escape += (cw / cx) * q[w];

    WalkResult out;
    out.probability = p_escape;
    out.method = WalkMethod::exact;
    return out;
}

/**
 * Monte Carlo estimate of P[x -> o]. Each trial runs its own splitmix64
 * substream derived from (seed, trial index), so results are reproducible
 * and independent of execution order. A 1e7-step cap guards pathological
 * inputs; capped trials are counted as censored (and as non-escapes).
 */
inline WalkResult escape_probability_mc(const NetworkPtr& net, const std::string& x,
                                        const std::string& target, long long trials,
                                        uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    int xi = net->index_of(x);
    int oi = net->index_of(target);
    if (xi == oi) throw std::invalid_argument("escape probability needs x != o");

    const int n = net->size();
    std::vector<std::vector<int>> nbr(n);
    std::vector<std::vector<double>> cum(n);
    for (int v = 0; v < n; ++v) {
        double acc = 0.0;
        for (const auto& [w, cw] : net->neighbors(v)) {
            acc += cw;
            nbr[v].push_back(w);
            cum[v].push_back(acc);
        }
        if (v == xi && nbr[v].empty())
            throw std::invalid_argument("vertex \"" + x + "\" is isolated");
    }

    constexpr long long kStepCap = 10'000'000;
    long long hits = 0, censored = 0;
    for (long long t = 0; t < trials; ++t) {
        SplitMix64 rng(seed, static_cast<uint64_t>(t));
        int pos = xi;
        long long steps = 0;
        while (true) {
            if (++steps > kStepCap) {
                ++censored;
                break;
            }
            double total = cum[pos].back();
            double r = rng.uniform() * total;
            size_t lo = 0, hi = cum[pos].size() - 1;
            while (lo < hi) {
                size_t mid = (lo + hi) / 2;
                if (cum[pos][mid] > r)
                    hi = mid;
                else
                    lo = mid + 1;
            }
            pos = nbr[pos][lo];
            if (pos == oi) {
                ++hits;
                break;
            }
            // no self-loops, so step 1 cannot land on x: any arrival is a return
            if (pos == xi) break;
        }
    }

    WalkResult out;
    out.method = WalkMethod::monte_carlo;
    out.trials = trials;
    out.seed = seed;
    out.censored = censored;
    out.probability = static_cast<double>(hits) / static_cast<double>(trials);
    out.standard_error =
        std::sqrt(out.probability * (1.0 - out.probability) / static_cast<double>(trials));
    return out;
}

struct ReciprocityReport {
    double lhs = 0.0;  // exact escape probability
    double rhs = 0.0;  // 1 / (c(x) R(x,o))
    double gap = 0.0;
};

/// The reciprocity identity P[x -> o] = 1 / (c(x) R(x,o)), both sides
/// computed independently.
inline ReciprocityReport reciprocity_report(const NetworkPtr& net, const std::string& x,
                                            const std::string& target) {
    ReciprocityReport out;
    out.lhs = escape_probability_exact(net, x, target).probability;
    double cx = degree(*net, x);
    double R = effective_resistance(net, x, target);
    out.rhs = 1.0 / (cx * R);
    out.gap = std::abs(out.lhs - out.rhs);
    return out;
}

}  // namespace rnet
