// rnet: load or generate resistance networks and run the library's analyses.
//
// Exit codes: 0 all checks passed (or informational command succeeded),
//             1 a numeric check failed,
//             2 input error (bad file, bad flags, invalid network/pair).

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rnet/rnet.hpp"

using namespace rnet;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string input;
    std::string family;
    int n = 0;
    int depth = 0;
    std::vector<double> bases;
    std::vector<double> levels;
    std::string x, y;
    int kmax = 4;
    long long trials = 0;
    uint64_t seed = 1;
    std::string format = "table";
    double tol = 0.0;  // 0 = per-check defaults
    std::string out;
};

void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--input", opt.input, "network or pair file (JSON)");
    cmd->add_option("--family", opt.family,
                    "generator: path, cycle, complete, binary_tree, hc_tree, geometric");
    cmd->add_option("--n", opt.n, "size / truncation parameter");
    cmd->add_option("--depth", opt.depth, "tree depth (alias for --n on tree families)");
    cmd->add_option("--base", opt.bases, "geometric base; give twice for a (b, c) pair");
    cmd->add_option("--levels", opt.levels, "per-level ring conductances for hc_tree");
    cmd->add_option("--format", opt.format, "table or csv")
        ->check(CLI::IsMember({"table", "csv"}));
    cmd->add_option("--tol", opt.tol, "override check tolerances uniformly");
    cmd->add_option("--out", opt.out, "write the report to a file instead of stdout");
}

FamilyKind family_kind(const std::string& name) {
    if (name == "path") return FamilyKind::path;
    if (name == "cycle") return FamilyKind::cycle;
    if (name == "complete") return FamilyKind::complete;
    if (name == "binary_tree") return FamilyKind::binary_tree;
    if (name == "hc_tree" || name == "horizontally_connected_tree")
        return FamilyKind::horizontally_connected_tree;
    if (name == "geometric" || name == "geometric_integers")
        return FamilyKind::geometric_integers;
    throw InputError("unknown family \"" + name + "\"");
}

FamilySpec family_spec(const Options& opt, double base) {
    FamilySpec spec;
    spec.kind = family_kind(opt.family);
    spec.n = opt.depth > 0 ? opt.depth : opt.n;
    spec.base = base;
    spec.level_weights = opt.levels;
    return spec;
}

void require_one_source(const Options& opt) {
    if (opt.input.empty() == opt.family.empty())
        throw InputError("give exactly one input source: --input or --family");
}

NetworkPtr resolve_network(const Options& opt) {
    require_one_source(opt);
    if (!opt.input.empty()) return io::read_network_file(opt.input);
    if (opt.bases.size() > 1) throw InputError("a single network takes at most one --base");
    double base = opt.bases.empty() ? 2.0 : opt.bases[0];
    return generate(family_spec(opt, base));
}

bool geometric_pair_requested(const Options& opt) {
    return !opt.family.empty() &&
           family_kind(opt.family) == FamilyKind::geometric_integers && opt.bases.size() == 2;
}

ConductancePair resolve_pair(const Options& opt) {
    require_one_source(opt);
    if (!opt.input.empty()) return io::read_pair_file(opt.input);
    if (!geometric_pair_requested(opt))
        throw InputError("pair generation needs --family geometric with two --base values");
    NetworkPtr b = generate(family_spec(opt, opt.bases[0]));
    NetworkPtr c = generate(family_spec(opt, opt.bases[1]));
    return ConductancePair(std::move(b), std::move(c));
}

void require_valid_input_pair(const ConductancePair& pair) {
    auto violations = validate_pair(pair);
    if (!violations.empty()) {
        std::string msg = "invalid pair:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw InputError(msg);
    }
}

// ---- report writing ------------------------------------------------------

class Report {
public:
    Report(const Options& opt, std::string csv_header)
        : csv_(opt.format == "csv"), header_(std::move(csv_header)) {
        if (!opt.out.empty()) {
            file_.open(opt.out, std::ios::binary);
            if (!file_) throw InputError("cannot open \"" + opt.out + "\" for writing");
        }
        if (csv_) line(header_);
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    bool csv() const { return csv_; }

    void line(const std::string& s) { stream() << s << "\n"; }

    void row(const std::vector<std::string>& cells) {
        std::ostringstream os;
        size_t last = cells.size();
        if (!csv_)
            while (last > 0 && cells[last - 1].empty()) --last;
        for (size_t i = 0; i < last; ++i) {
            if (i) os << (csv_ ? "," : "  ");
            os << cells[i];
        }
        line(os.str());
    }

private:
    bool csv_;
    std::string header_;
    std::ofstream file_;
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// ---- commands ------------------------------------------------------------

int cmd_describe(const Options& opt) {
    NetworkPtr net = resolve_network(opt);
    Report rep(opt, "field,value");
    double dmin = 1e300, dmax = 0.0;
    for (int i = 0; i < net->size(); ++i) {
        double d = net->weighted_degree(i);
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    auto lb = net->edge_count() ? std::optional<LowerBoundCriterion>(lower_bound_criterion(net))
                                : std::nullopt;
    rep.row({"vertices", std::to_string(net->size())});
    rep.row({"edges", std::to_string(net->edge_count())});
    rep.row({"origin", net->origin_name()});
    rep.row({"degree_min", num(dmin)});
    rep.row({"degree_max", num(dmax)});
    if (lb) {
        rep.row({"min_conductance", num(lb->epsilon)});
        rep.row({"flat_embedding_bound", num(lb->bound)});
        rep.row({"flat_embedding_norm", num(lb->measured_norm)});
    }
    rep.row({"connected", net->connected() ? "yes" : "no"});
    return 0;
}

int cmd_generate(const Options& opt) {
    if (opt.family.empty()) throw InputError("generate needs --family");
    if (geometric_pair_requested(opt)) {
        ConductancePair pair = resolve_pair(opt);
        if (opt.out.empty())
            io::write_pair(std::cout, pair);
        else
            io::write_pair_file(opt.out, pair);
        return 0;
    }
    Options one = opt;
    NetworkPtr net = resolve_network(one);
    if (opt.out.empty())
        io::write_network(std::cout, *net);
    else
        io::write_network_file(opt.out, *net);
    return 0;
}

int cmd_resistance(const Options& opt) {
    NetworkPtr net = resolve_network(opt);
    if (opt.x.empty() || opt.y.empty()) throw InputError("resistance needs --x and --y");
    double r = effective_resistance(net, opt.x, opt.y);
    Report rep(opt, "x,y,resistance");
    rep.row({opt.x, opt.y, num17(r)});
    return 0;
}

int cmd_dipole(const Options& opt) {
    NetworkPtr net = resolve_network(opt);
    if (opt.x.empty()) throw InputError("dipole needs --x");
    std::string y = opt.y.empty() ? net->origin_name() : opt.y;
    VertexFunction v = dipole(net, opt.x, y);
    Report rep(opt, "vertex,value");
    for (int i = 0; i < net->size(); ++i) rep.row({net->name(i), num17(v(i))});
    return 0;
}

int cmd_moments(const Options& opt) {
    NetworkPtr net = resolve_network(opt);
    if (opt.x.empty() || opt.y.empty()) throw InputError("moments needs --x and --y");
    GroundedSolver solver(net);
    VertexFunction u = dipole(solver, net->index_of(opt.x), net->index_of(opt.y));
    Report rep(opt, "k,m_k");
    for (int k = 0; k <= opt.kmax; ++k) rep.row({std::to_string(k), num17(moment(u, k))});
    return 0;
}

int cmd_spectrum(const Options& opt) {
    NetworkPtr net = resolve_network(opt);
    if (opt.x.empty() || opt.y.empty()) throw InputError("spectrum needs --x and --y");
    GroundedSolver solver(net);
    VertexFunction u = dipole(solver, net->index_of(opt.x), net->index_of(opt.y));
    DiscreteMeasure mu = spectral_measure(net, u);
    Report rep(opt, "lambda,weight");
    for (const auto& [lambda, weight] : mu.atoms) rep.row({num17(lambda), num17(weight)});
    return 0;
}

int cmd_walk(const Options& opt) {
    NetworkPtr net = resolve_network(opt);
    if (opt.x.empty()) throw InputError("walk needs --x");
    std::string target = opt.y.empty() ? net->origin_name() : opt.y;
    Report rep(opt, "method,probability,trials,standard_error,seed,censored");
    auto exact = escape_probability_exact(net, opt.x, target);
    rep.row({"exact", num17(exact.probability), "", "", "", ""});
    auto rec = reciprocity_report(net, opt.x, target);
    rep.row({"reciprocity_rhs", num17(rec.rhs), "", "", "", ""});
    if (opt.trials > 0) {
        auto mc = escape_probability_mc(net, opt.x, target, opt.trials, opt.seed);
        rep.row({"monte_carlo", num17(mc.probability), std::to_string(mc.trials),
                 num17(mc.standard_error), std::to_string(mc.seed),
                 std::to_string(mc.censored)});
    }
    return 0;
}

int cmd_compare(const Options& opt) {
    ConductancePair pair = resolve_pair(opt);
    require_valid_input_pair(pair);
    double tol8 = opt.tol > 0.0 ? opt.tol : 1e-8;
    double tol9 = opt.tol > 0.0 ? opt.tol : 1e-9;

    struct Check {
        std::string name;
        double value;
        double threshold;
        bool pass;
    };
    std::vector<Check> checks;

    double norm = embedding_norm(pair);
    checks.push_back({"contractivity ||I|| - 1", norm - 1.0, tol9, norm - 1.0 <= tol9});

    GroundedSolver c_solver(pair.c);
    EnergyKernel kb(pair.b), kc(pair.c);
    double adj = 0.0;
    for (int x = 0; x < pair.b->size(); ++x) {
        VertexFunction w = adjoint_inclusion(pair, kb.at(x), c_solver);
        VertexFunction diff(pair.c, w.values() - kc.at(x).values());
        adj = std::max(adj, std::sqrt(energy_form(diff, diff)));
    }
    checks.push_back({"adjoint on kernels", adj, tol8, adj <= tol8});

    double conj = conjugation_identity_residual(pair);
    checks.push_back({"conjugation identity", conj, tol8, conj <= tol8});

    double cross = 0.0;
    for (int x = 0; x < pair.c->size(); ++x) {
        if (x == pair.c->origin_index()) continue;
        VertexFunction Mu = cross_adjoint_apply(pair, kc.at(x), c_solver);
        for (int y = 0; y < pair.c->size(); ++y) {
            if (y == pair.c->origin_index()) continue;
            double lhs = energy_form(Mu, kc.at(y));
            double rhs = energy_form(*pair.c, kc.at(x).values(),
                                     pair.b->laplacian_apply(kc.at(y).values()));
            cross = std::max(cross, std::abs(lhs - rhs));
        }
    }
    checks.push_back({"cross-adjoint relation", cross, tol8, cross <= tol8});

    double m1 = 0.0, m2min = 0.0;
    for (int x = 0; x < pair.b->size(); ++x) {
        if (x == pair.b->origin_index()) continue;
        auto gaps = monotonicity_check(pair, kb.at(x));
        m1 = std::max(m1, std::abs(gaps.m1_gap));
        m2min = std::min(m2min, gaps.m2_gap);
    }
    checks.push_back({"moment m1 transfer", m1, tol8, m1 <= tol8});
    checks.push_back({"moment m2 monotonicity", -m2min, tol9, -m2min <= tol9});

    Report rep(opt, "check,value,threshold,pass");
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.pass;
        rep.row({c.name, num(c.value), num(c.threshold), c.pass ? "pass" : "FAIL"});
    }
    if (!all) throw CheckFailure("comparison checks failed");
    return 0;
}

int cmd_invariant(const Options& opt) {
    ConductancePair pair = resolve_pair(opt);
    require_valid_input_pair(pair);

    // truncation boundary: +-N from the family flag, or from integer vertex
    // names when the pair came from a file
    int N = 0;
    if (!opt.family.empty()) {
        N = opt.depth > 0 ? opt.depth : opt.n;
    } else {
        for (const auto& name : pair.c->vertex_names()) {
            try {
                size_t pos = 0;
                int k = std::stoi(name, &pos);
                if (pos != name.size()) throw std::invalid_argument(name);
                N = std::max(N, std::abs(k));
            } catch (...) {
                throw InputError("invariant needs integer vertex names (geometric style), got \"" +
                                 name + "\"");
            }
        }
    }
    if (N < 1) throw InputError("invariant needs a positive truncation parameter");

    std::vector<std::string> interior;
    for (const auto& name : pair.c->vertex_names())
        if (std::abs(std::stoi(name)) < N) interior.push_back(name);

    auto res = harmonic_transfer_invariant(pair, interior);
    Report rep(opt, "quantity,value");
    rep.row({"K", num17(res.K)});
    rep.row({"alignment", num17(res.alignment)});
    if (geometric_pair_requested(opt)) {
        double closed = std::sqrt((opt.bases[0] - 1.0) / (opt.bases[1] - 1.0));
        rep.row({"closed_form", num17(closed)});
        rep.row({"delta", num17(std::abs(res.K - closed))});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete potential theory on weighted resistance networks"};
    app.require_subcommand(1);

    Options opt;
    struct Sub {
        const char* name;
        const char* help;
        int (*run)(const Options&);
        bool takes_xy;
    };
    std::vector<Sub> subs = {
        {"describe", "summarize a network and its flat-embedding bound", cmd_describe, false},
        {"generate", "write a network (or geometric pair) file", cmd_generate, false},
        {"resistance", "effective resistance between --x and --y", cmd_resistance, true},
        {"dipole", "dipole potential v with Lap v = delta_x - delta_y", cmd_dipole, true},
        {"moments", "spectral moments of the dipole v_x - v_y", cmd_moments, true},
        {"spectrum", "spectral measure of the dipole v_x - v_y (lambda, weight)", cmd_spectrum,
         true},
        {"walk", "escape probability P[x -> o], exact and Monte Carlo", cmd_walk, true},
        {"compare", "run the two-conductance checks on a pair", cmd_compare, false},
        {"invariant", "harmonic transfer invariant K of a pair", cmd_invariant, false},
    };

    std::map<std::string, int (*)(const Options&)> dispatch;
    for (const auto& s : subs) {
        CLI::App* cmd = app.add_subcommand(s.name, s.help);
        add_common_flags(cmd, opt);
        if (s.takes_xy) {
            cmd->add_option("--x", opt.x, "vertex name");
            cmd->add_option("--y", opt.y, "vertex name (defaults to the origin)");
        }
        cmd->add_option("--kmax", opt.kmax, "largest moment order");
        cmd->add_option("--trials", opt.trials, "Monte Carlo trials (0 = skip)");
        cmd->add_option("--seed", opt.seed, "Monte Carlo seed");
        dispatch[s.name] = s.run;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return dispatch[app.get_subcommands().front()->get_name()](opt);
    } catch (const CheckFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
