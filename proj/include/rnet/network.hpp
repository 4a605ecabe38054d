#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <memory>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rnet {

/// One raw edge record as it appears in input: an unordered pair with a weight.
struct EdgeEntry {
    std::string u;
    std::string v;
    double c = 0.0;
};

/**
 * A weighted resistance network: a vertex set, a symmetric conductance
 * function stored once per unordered pair, and a distinguished origin.
 *
 * The store enforces symmetry and forbids self-loops and negative weights;
 * connectivity is a reported property (see validate()), not a construction
 * requirement, so that solvers can diagnose disconnected inputs themselves.
 * Instances are immutable after construction.
 */
class Network {
public:
    Network(std::vector<std::string> vertices, const std::vector<EdgeEntry>& edges,
            const std::string& origin) {
        names_ = std::move(vertices);
        for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
            if (!index_.emplace(names_[i], i).second)
                throw std::invalid_argument("duplicate vertex \"" + names_[i] + "\"");
        }
        auto it = index_.find(origin);
        if (it == index_.end())
            throw std::invalid_argument("origin \"" + origin + "\" is not a vertex");
        origin_ = it->second;

        for (const auto& e : edges) {
            if (e.c == 0.0) continue;
            if (e.c < 0.0)
                throw std::invalid_argument("negative conductance on (" + e.u + "," + e.v + ")");
            int i = index_of(e.u);
            int j = index_of(e.v);
            if (i == j)
                throw std::invalid_argument("self-loop at \"" + e.u + "\"");
            auto key = std::minmax(i, j);
            auto [pos, inserted] = pairs_.emplace(std::pair<int, int>(key.first, key.second), e.c);
            if (!inserted && pos->second != e.c)
                throw std::invalid_argument("asymmetric conductance (" + e.u + "," + e.v + ")");
        }

        adj_.resize(names_.size());
        for (const auto& [key, w] : pairs_) {
            adj_[key.first].emplace_back(key.second, w);
            adj_[key.second].emplace_back(key.first, w);
        }
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    }

    int size() const { return static_cast<int>(names_.size()); }
    int edge_count() const { return static_cast<int>(pairs_.size()); }
    const std::vector<std::string>& vertex_names() const { return names_; }
    const std::string& name(int i) const { return names_.at(i); }
    int origin_index() const { return origin_; }
    const std::string& origin_name() const { return names_[origin_]; }

    int index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            throw std::invalid_argument("unknown vertex \"" + name + "\"");
        return it->second;
    }
    bool has_vertex(const std::string& name) const { return index_.count(name) > 0; }

    double conductance(int i, int j) const {
        if (i == j) return 0.0;
        auto key = std::minmax(i, j);
        auto it = pairs_.find({key.first, key.second});
        return it == pairs_.end() ? 0.0 : it->second;
    }

    const std::vector<std::pair<int, double>>& neighbors(int i) const { return adj_.at(i); }

    /// Edge list, one entry per unordered pair (i < j).
    const std::map<std::pair<int, int>, double>& edges() const { return pairs_; }

    /// Weighted degree c(x) = sum of incident conductances.
    double weighted_degree(int i) const {
        double s = 0.0;
        for (const auto& [j, w] : adj_.at(i)) s += w;
        return s;
    }

    /// Dense graph Laplacian, rows/columns in vertex order.
    Eigen::MatrixXd laplacian() const {
        int n = size();
        Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
        for (const auto& [key, w] : pairs_) {
            auto [i, j] = key;
            L(i, i) += w;
            L(j, j) += w;
            L(i, j) -= w;
            L(j, i) -= w;
        }
        return L;
    }

    /// Pointwise Laplacian (no re-grounding): (Lv)(x) = sum_y c_xy (v(x) - v(y)).
    Eigen::VectorXd laplacian_apply(const Eigen::VectorXd& v) const {
        if (v.size() != size())
            throw std::invalid_argument("vector length does not match vertex count");
        Eigen::VectorXd out = Eigen::VectorXd::Zero(size());
        for (const auto& [key, w] : pairs_) {
            auto [i, j] = key;
            double d = v[i] - v[j];
            out[i] += w * d;
            out[j] -= w * d;
        }
        return out;
    }

    /// Connected components over edges with positive conductance, each sorted,
    /// ordered by smallest member; a connected network yields exactly one.
    std::vector<std::vector<int>> components() const {
        std::vector<int> comp(size(), -1);
        std::vector<std::vector<int>> out;
        for (int s = 0; s < size(); ++s) {
            if (comp[s] >= 0) continue;
            int id = static_cast<int>(out.size());
            out.emplace_back();
            std::queue<int> q;
            q.push(s);
            comp[s] = id;
            while (!q.empty()) {
                int x = q.front();
                q.pop();
                out[id].push_back(x);
                for (const auto& [y, w] : adj_[x]) {
                    if (comp[y] < 0) {
                        comp[y] = id;
                        q.push(y);
                    }
                }
            }
            std::sort(out[id].begin(), out[id].end());
        }
        return out;
    }

    bool connected() const { return components().size() == 1; }

    std::string describe_components() const {
        std::ostringstream os;
        auto comps = components();
        for (size_t k = 0; k < comps.size(); ++k) {
            if (k) os << " | ";
            os << "{";
            for (size_t i = 0; i < comps[k].size(); ++i) {
                if (i) os << ",";
                os << names_[comps[k][i]];
            }
            os << "}";
        }
        return os.str();
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    int origin_ = 0;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::map<std::pair<int, int>, double> pairs_;
};

using NetworkPtr = std::shared_ptr<const Network>;

inline NetworkPtr make_network(std::vector<std::string> vertices,
                               const std::vector<EdgeEntry>& edges, const std::string& origin) {
    return std::make_shared<Network>(std::move(vertices), edges, origin);
}

/**
 * Checks raw network data against the full set of invariants and returns one
 * violation message per failure (empty means valid). Violations are data, not
 * errors; this is the pre-construction gate used by file loaders.
 */
inline std::vector<std::string> validate(const std::vector<std::string>& vertices,
                                         const std::vector<EdgeEntry>& edges,
                                         const std::string& origin) {
    std::vector<std::string> out;
    std::unordered_map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
        if (!index.emplace(vertices[i], i).second)
            out.push_back("duplicate vertex \"" + vertices[i] + "\"");
    }
    if (index.find(origin) == index.end())
        out.push_back("origin \"" + origin + "\" is not a vertex");

    std::map<std::pair<int, int>, double> pairs;
    for (const auto& e : edges) {
        auto iu = index.find(e.u);
        auto iv = index.find(e.v);
        if (iu == index.end()) {
            out.push_back("edge endpoint \"" + e.u + "\" is not a vertex");
            continue;
        }
        if (iv == index.end()) {
            out.push_back("edge endpoint \"" + e.v + "\" is not a vertex");
            continue;
        }
        if (e.c < 0.0) out.push_back("negative conductance (" + e.u + "," + e.v + ")");
        if (iu->second == iv->second && e.c != 0.0) {
            out.push_back("self-loop at \"" + e.u + "\"");
            continue;
        }
        if (e.c == 0.0) continue;
        auto key = std::minmax(iu->second, iv->second);
        auto [pos, inserted] = pairs.emplace(std::pair<int, int>(key.first, key.second), e.c);
        if (!inserted && pos->second != e.c)
            out.push_back("asymmetric conductance (" + e.u + "," + e.v + ")");
    }

    if (out.empty()) {
        Network net(vertices, edges, origin);
        if (!net.connected())
            out.push_back("not connected: " + net.describe_components());
    }
    return out;
}

/// Re-checks an existing network; only connectivity can fail since the store
/// enforces everything else.
inline std::vector<std::string> validate(const Network& net) {
    std::vector<std::string> out;
    if (!net.connected()) out.push_back("not connected: " + net.describe_components());
    return out;
}

/// c(x), the weighted degree. Throws on unknown vertex names.
inline double degree(const Network& net, const std::string& x) {
    return net.weighted_degree(net.index_of(x));
}

/**
 * A real-valued function on the vertices of one network, stored as the
 * grounded representative of its class modulo constants: value 0 at the
 * origin. All operations that produce functions re-ground.
 */
class VertexFunction {
public:
    VertexFunction(NetworkPtr net, Eigen::VectorXd raw) : net_(std::move(net)) {
        if (!net_) throw std::invalid_argument("null network");
        if (raw.size() != net_->size())
            throw std::invalid_argument("vector length does not match vertex count");
        raw.array() -= raw[net_->origin_index()];
        raw[net_->origin_index()] = 0.0;
        values_ = std::move(raw);
    }

    static VertexFunction zero(NetworkPtr net) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(net->size());
        return VertexFunction(std::move(net), std::move(v));
    }

    const NetworkPtr& network() const { return net_; }
    const Eigen::VectorXd& values() const { return values_; }
    double operator()(int i) const { return values_[i]; }
    double at(const std::string& name) const { return values_[net_->index_of(name)]; }
    int size() const { return static_cast<int>(values_.size()); }

    VertexFunction operator+(const VertexFunction& o) const {
        require_same(o);
        return VertexFunction(net_, values_ + o.values_);
    }
    VertexFunction operator-(const VertexFunction& o) const {
        require_same(o);
        return VertexFunction(net_, values_ - o.values_);
    }
    VertexFunction operator*(double a) const { return VertexFunction(net_, values_ * a); }
    VertexFunction operator-() const { return VertexFunction(net_, -values_); }

    void require_same(const VertexFunction& o) const {
        if (net_.get() != o.net_.get())
            throw std::invalid_argument("functions live on different networks");
    }

private:
    NetworkPtr net_;
    Eigen::VectorXd values_;
};

inline VertexFunction operator*(double a, const VertexFunction& u) { return u * a; }

/// Grounded delta: the class of the indicator of {x}, grounded at the origin.
inline VertexFunction grounded_delta(const NetworkPtr& net, int x) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(net->size());
    v[x] = 1.0;
    return VertexFunction(net, std::move(v));
}

/// Grounded representative of delta_x - delta_y.
inline VertexFunction grounded_dipole_charge(const NetworkPtr& net, int x, int y) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(net->size());
    v[x] += 1.0;
    v[y] -= 1.0;
    return VertexFunction(net, std::move(v));
}

/// Dirichlet energy form on raw vectors; one term per stored edge, so the
/// result is independent of any constant offset of either argument.
inline double energy_form(const Network& net, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    if (u.size() != net.size() || v.size() != net.size())
        throw std::invalid_argument("vector length does not match vertex count");
    double s = 0.0;
    for (const auto& [key, w] : net.edges()) {
        auto [i, j] = key;
        s += w * (u[i] - u[j]) * (v[i] - v[j]);
    }
    return s;
}

inline double energy_form(const VertexFunction& u, const VertexFunction& v) {
    u.require_same(v);
    return energy_form(*u.network(), u.values(), v.values());
}

inline double energy_norm2(const VertexFunction& u) { return energy_form(u, u); }

/// Laplacian as an operator on the grounded space: pointwise Eq. application
/// followed by re-grounding at the origin.
inline VertexFunction apply_laplacian(const VertexFunction& u) {
    return VertexFunction(u.network(), u.network()->laplacian_apply(u.values()));
}

/// sup seminorm ||u||_inf = max u - min u; blind to constants.
inline double sup_seminorm(const VertexFunction& u) {
    return u.values().maxCoeff() - u.values().minCoeff();
}

}  // namespace rnet
