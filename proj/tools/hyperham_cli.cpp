// Command-line front end: instance generation, single pipeline runs, threshold
// sweeps, exact-oracle queries, witness validation, and probability-bound
// reports. Every command takes explicit seeds; non-timing output is
// byte-reproducible for a fixed command line.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperham/absorb_connect.hpp"
#include "hyperham/cover_assemble.hpp"
#include "hyperham/errors.hpp"
#include "hyperham/exact_oracle.hpp"
#include "hyperham/hypergraph.hpp"
#include "hyperham/prob_bounds.hpp"
#include "hyperham/random_models.hpp"
#include "hyperham/rng.hpp"

namespace {

using nlohmann::json;
using namespace hyperham;

// fixed-width decimal so CSV/JSON bytes do not depend on locale or platform
std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string witness_line(const OrderedTuple& order) {
    std::ostringstream out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) out << ' ';
        out << order[i];
    }
    return out.str();
}

// Witness files: comment/blank lines, then "k ell", then the vertex order.
void write_witness_file(const CycleWitness& w, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << w.k << ' ' << w.ell << '\n' << witness_line(w.order) << '\n';
}

CycleWitness read_witness_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    int line_no = 0;
    auto next = [&]() {
        while (std::getline(in, line)) {
            ++line_no;
            std::size_t pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;
            if (line[pos] == '#') continue;
            return;
        }
        throw ParseError("unexpected end of witness file", line_no);
    };
    CycleWitness w;
    next();
    {
        std::istringstream head(line);
        std::string extra;
        if (!(head >> w.k >> w.ell) || head >> extra) {
            throw ParseError("witness header must be 'k ell'", line_no);
        }
    }
    next();
    {
        std::istringstream row(line);
        Vertex v;
        while (row >> v) w.order.push_back(v);
        if (!row.eof()) throw ParseError("witness order must be integers", line_no);
    }
    return w;
}

// 95% Wilson score interval for s successes in t trials.
std::pair<double, double> wilson95(int s, int t) {
    if (t <= 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    double z2 = z * z;
    double phat = static_cast<double>(s) / t;
    double denom = 1.0 + z2 / t;
    double center = (phat + z2 / (2.0 * t)) / denom;
    double half = z / denom * std::sqrt(phat * (1.0 - phat) / t + z2 / (4.0 * t * t));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

const char* ternary_name(Ternary t) {
    switch (t) {
        case Ternary::kYes: return "yes";
        case Ternary::kNo: return "no";
        default: return "unknown";
    }
}

json trace_json(const PipelineTrace& tr) {
    return json{{"edges_input", tr.edges_input},
                {"edges_hprime", tr.edges_hprime},
                {"edges_hstar", tr.edges_hstar},
                {"v0", tr.v0_size},
                {"vstar", tr.vstar_size},
                {"ends", tr.ends_size},
                {"degree_floor_met", tr.degree_floor_met},
                {"attempts", tr.attempts},
                {"escalated", tr.escalated},
                {"m", tr.m},
                {"x_blocks", tr.x_blocks},
                {"segments", tr.segments},
                {"phase2", tr.phase2},
                {"c1_used", tr.c1_used},
                {"c2_used", tr.c2_used},
                {"absorbers_built", tr.absorbers_built},
                {"absorptions", tr.absorptions},
                {"notes", tr.notes}};
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
    std::string model = "complete";
    int n = 0;
    int k = 3;
    double alpha = 0.3;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

int run_gen(const GenArgs& a) {
    json prov{{"model", a.model}, {"n", a.n}, {"k", a.k}};
    Hypergraph h(a.k, a.n);
    if (a.model == "complete") {
        h = Hypergraph::complete(a.k, a.n);
    } else if (a.model == "h0") {
        h = extremal_h0(a.n, a.k, a.alpha);
        prov["alpha"] = a.alpha;
    } else if (a.model == "gnp") {
        h = gnp(a.n, a.k, a.p, a.seed);
        prov["p"] = a.p;
        prov["seed"] = a.seed;
    } else if (a.model == "union") {
        h = extremal_h0(a.n, a.k, a.alpha).union_with(gnp(a.n, a.k, a.p, a.seed));
        prov["alpha"] = a.alpha;
        prov["p"] = a.p;
        prov["seed"] = a.seed;
    } else {
        std::cerr << "gen: unknown model '" << a.model << "'\n";
        return 1;
    }
    if (a.out.empty() || a.out == "-") {
        std::cout << "# " << prov.dump() << '\n' << write_text(h);
    } else {
        write_text_file(h, a.out, prov.dump());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
    std::string in;
    double p = 0.0;
    std::uint64_t seed = 0;
    int ell = 2;
    double alpha = 0.3;
    int rounds = 4;
    int attempts = 24;
    int max_absorbers = 6;
    bool verify_oracle = false;
    int oracle_limit = 12;
    std::string emit_witness;
};

PipelineConfig solve_config(const Hypergraph& h, const SolveArgs& a) {
    PipelineConfig cfg;
    cfg.k = h.k();
    cfg.ell = a.ell;
    cfg.alpha = a.alpha;
    cfg.exposure_rounds = a.rounds;
    cfg.max_attempts = a.attempts;
    cfg.max_absorbers = a.max_absorbers;
    cfg.seed = a.seed;
    return cfg;
}

int run_solve(const SolveArgs& a) {
    Hypergraph h = read_text_file(a.in);
    PipelineConfig cfg = solve_config(h, a);
    Rng rng(a.seed);
    auto t0 = std::chrono::steady_clock::now();
    PipelineResult res = find_hamilton_cycle(h, a.p, cfg, rng);
    auto wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
            .count();

    std::string oracle = "skipped";
    if (a.verify_oracle && h.n() <= a.oracle_limit && res.exposed_union) {
        oracle = ternary_name(hamilton_exists(*res.exposed_union, a.ell).outcome);
    }
    json rec{{"n", h.n()},
             {"p", a.p},
             {"seed", a.seed},
             {"success", res.success},
             {"failure_stage", res.failure_stage},
             {"diagnostics", res.diagnostics},
             {"oracle", oracle},
             {"trace", trace_json(res.trace)},
             {"wall_ms", wall}};
    std::cout << rec.dump(2) << '\n';
    if (res.success && !a.emit_witness.empty()) write_witness_file(res.witness, a.emit_witness);
    return res.success ? 0 : 2;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
    int k = 3;
    int ell = 2;
    std::vector<int> n_list;
    std::vector<double> p_list;  // explicit values
    std::string p_geom;         // "lo:hi:points"
    bool over_n = false;        // grid values are multiples of 1/n
    std::string model = "h0";   // h0 | file | gnp
    std::string in;             // base instance for model=file
    double alpha = 0.3;
    int trials = 1;
    std::uint64_t seed = 0;
    int rounds = 4;
    int attempts = 24;
    int max_absorbers = 6;
    int oracle_limit = 0;  // run the exact oracle when n <= limit (0 = never)
    std::string out;
};

std::vector<double> sweep_grid(const SweepArgs& a, int n) {
    std::vector<double> grid;
    if (!a.p_geom.empty()) {
        double lo = 0.0, hi = 0.0;
        int points = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(a.p_geom);
        if (!(in >> lo >> c1 >> hi >> c2 >> points) || c1 != ':' || c2 != ':' || points < 1 ||
            lo <= 0.0 || hi < lo) {
            throw std::invalid_argument("--p-geom expects lo:hi:points with 0 < lo <= hi");
        }
        double ratio = points > 1 ? std::pow(hi / lo, 1.0 / (points - 1)) : 1.0;
        double f = lo;
        for (int i = 0; i < points; ++i, f *= ratio) grid.push_back(f);
    } else {
        grid = a.p_list;
    }
    if (grid.empty()) throw std::invalid_argument("sweep: empty p grid");
    for (double& f : grid) {
        if (a.over_n) f /= n;
        f = std::min(1.0, std::max(0.0, f));  // grids in 1/n units overflow 1 at small n
    }
    return grid;
}

struct SweepCell {
    std::uint64_t seed = 0;
    bool success = false;
    std::string stage;
    std::string oracle = "skipped";
    long long wall_ms = 0;
};

int run_sweep(const SweepArgs& a) {
    if (a.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
    std::optional<Hypergraph> base;
    if (a.model == "file") {
        if (a.in.empty()) throw std::invalid_argument("sweep: model=file needs --in");
        base = read_text_file(a.in);
    } else if (a.model != "h0" && a.model != "gnp") {
        throw std::invalid_argument("sweep: model must be h0, file, or gnp");
    }
    std::vector<int> ns = a.n_list;
    if (base) ns.assign(1, base->n());
    if (ns.empty()) throw std::invalid_argument("sweep: need --n");

    int workers = 0;
    if (const char* env = std::getenv("HYPERHAM_WORKERS")) workers = std::atoi(env);
    if (workers < 1) workers = std::max(1u, std::thread::hardware_concurrency());

    std::ofstream file_out;
    if (!a.out.empty() && a.out != "-") {
        file_out.open(a.out);
        if (!file_out) throw std::runtime_error("cannot open " + a.out + " for writing");
    }
    std::ostream& out = file_out.is_open() ? file_out : std::cout;

    out << "# schema=1\n";
    out << "# sweep k=" << a.k << " ell=" << a.ell << " model=" << a.model
        << " alpha=" << fmt(a.alpha) << " trials=" << a.trials << " seed=" << a.seed
        << " rounds=" << a.rounds << " oracle_limit=" << a.oracle_limit
        << " over_n=" << (a.over_n ? 1 : 0) << "\n";
    out << "# trial: n p_index p trial seed outcome stage oracle wall_ms\n";
    out << "# summary: n p_index p trials successes rate wilson_lo wilson_hi\n";

    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        int n = ns[ni];
        Hypergraph inst = base                ? *base
                          : a.model == "h0"   ? extremal_h0(n, a.k, a.alpha)
                                              : Hypergraph(a.k, n);
        std::vector<double> grid = sweep_grid(a, n);
        for (std::size_t pi = 0; pi < grid.size(); ++pi) {
            double p = grid[pi];
            std::vector<SweepCell> cells(static_cast<std::size_t>(a.trials));
            std::atomic<int> next{0};
            auto work = [&]() {
                for (;;) {
                    int t = next.fetch_add(1);
                    if (t >= a.trials) return;
                    SweepCell& cell = cells[static_cast<std::size_t>(t)];
                    cell.seed = derive_seed(a.seed, static_cast<std::uint64_t>(n),
                                            static_cast<std::uint64_t>(pi),
                                            static_cast<std::uint64_t>(t));
                    PipelineConfig cfg;
                    cfg.k = a.k;
                    cfg.ell = a.ell;
                    cfg.alpha = a.alpha;
                    cfg.exposure_rounds = a.rounds;
                    cfg.max_attempts = a.attempts;
                    cfg.max_absorbers = a.max_absorbers;
                    cfg.seed = cell.seed;
                    Rng rng(cell.seed);
                    auto t0 = std::chrono::steady_clock::now();
                    PipelineResult res = find_hamilton_cycle(inst, p, cfg, rng);
                    cell.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                       std::chrono::steady_clock::now() - t0)
                                       .count();
                    cell.success = res.success;
                    cell.stage = res.failure_stage;
                    if (n <= a.oracle_limit && res.exposed_union) {
                        cell.oracle = ternary_name(hamilton_exists(*res.exposed_union, a.ell).outcome);
                    }
                }
            };
            std::vector<std::thread> pool;
            for (int w = 1; w < std::min(workers, a.trials); ++w) pool.emplace_back(work);
            work();
            for (std::thread& th : pool) th.join();

            int successes = 0;
            for (int t = 0; t < a.trials; ++t) {
                const SweepCell& cell = cells[static_cast<std::size_t>(t)];
                successes += cell.success;
                out << "trial," << n << ',' << pi << ',' << fmt(p) << ',' << t << ',' << cell.seed
                    << ',' << (cell.success ? "success" : "failure") << ',' << cell.stage << ','
                    << cell.oracle << ',' << cell.wall_ms << '\n';
            }
            auto [lo, hi] = wilson95(successes, a.trials);
            out << "summary," << n << ',' << pi << ',' << fmt(p) << ',' << a.trials << ','
                << successes << ',' << fmt(static_cast<double>(successes) / a.trials) << ','
                << fmt(lo) << ',' << fmt(hi) << '\n';
            out.flush();  // keep completed grid points on interrupt
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// oracle / validate / bounds

struct OracleArgs {
    std::string in;
    int ell = 2;
    int path_edges = 0;  // 0 = spanning cycle, else l-path with this many edges
    long long nodes = 20'000'000;
    long long time_ms = 0;
};

int run_oracle(const OracleArgs& a) {
    Hypergraph h = read_text_file(a.in);
    SearchBudget budget{a.nodes, a.time_ms};
    OracleResult res = a.path_edges > 0 ? ell_path_exists(h, a.ell, a.path_edges, budget)
                                        : hamilton_exists(h, a.ell, budget);
    switch (res.outcome) {
        case Ternary::kYes:
            std::cout << "YES\n"
                      << witness_line(a.path_edges > 0 ? res.path : res.witness.order) << '\n';
            return 0;
        case Ternary::kNo:
            std::cout << "NO\n";
            return 2;
        default:
            std::cout << "UNKNOWN\n";
            return 3;
    }
}

struct ValidateArgs {
    std::string graph;
    std::string witness;
};

int run_validate(const ValidateArgs& a) {
    Hypergraph h = read_text_file(a.graph);
    CycleWitness w = read_witness_file(a.witness);
    if (w.k != h.k()) {
        std::cout << "invalid: witness arity " << w.k << " does not match graph arity " << h.k()
                  << '\n';
        return 2;
    }
    CycleCheckReport rep;
    try {
        rep = check_hamiltonian_cycle(h, w);
    } catch (const MalformedWitnessError& e) {
        std::cout << "invalid: " << e.what() << '\n';
        return 2;
    }
    if (rep.valid) {
        std::cout << "valid\n";
        return 0;
    }
    if (!rep.coverage_error.empty()) {
        std::cout << "invalid: " << rep.coverage_error << '\n';
    } else {
        std::cout << "invalid: window " << rep.first_bad_window << " is not an edge\n";
    }
    return 2;
}

struct BoundsArgs {
    int k = 3;
    int ell = 2;
    int a = 2;
    int x = 0;
    int n = 0;
    double p = 0.0;
};

int run_bounds(const BoundsArgs& b) {
    PathPattern pattern{b.k, b.ell, b.a, b.x};
    BoundReport rep = make_bound_report(pattern, b.n, b.p);
    json out{{"pattern", {{"k", b.k}, {"ell", b.ell}, {"a", b.a}, {"x", b.x}}},
             {"n", rep.n},
             {"p", rep.p},
             {"phi", rep.phi},
             {"lambda", rep.lambda},
             {"delta_bound", rep.delta_bound},
             {"janson_tail", rep.janson_tail},
             {"chebyshev_tail", rep.chebyshev_tail},
             {"chernoff_upper", rep.chernoff_tails.first},
             {"chernoff_lower", rep.chernoff_tails.second}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"randomly perturbed hypergraph Hamiltonicity toolkit"};
    app.require_subcommand(1);

    GenArgs gen;
    CLI::App* cgen = app.add_subcommand("gen", "generate a hypergraph file");
    cgen->add_option("--model", gen.model, "complete | h0 | gnp | union")->capture_default_str();
    cgen->add_option("--n", gen.n, "vertex count")->required();
    cgen->add_option("--k", gen.k, "edge arity")->capture_default_str();
    cgen->add_option("--alpha", gen.alpha, "dense-part fraction for h0/union")
        ->capture_default_str();
    cgen->add_option("--p", gen.p, "edge probability for gnp/union")->capture_default_str();
    cgen->add_option("--seed", gen.seed, "sampling seed")->capture_default_str();
    cgen->add_option("--out", gen.out, "output file ('-' or empty for stdout)");

    SolveArgs solve;
    CLI::App* csolve = app.add_subcommand("solve", "run the full pipeline on an instance file");
    csolve->add_option("--in", solve.in, "hypergraph file")->required();
    csolve->add_option("--p", solve.p, "perturbation edge probability")->capture_default_str();
    csolve->add_option("--seed", solve.seed, "run seed")->capture_default_str();
    csolve->add_option("--ell", solve.ell, "cycle overlap")->capture_default_str();
    csolve->add_option("--alpha", solve.alpha, "degree-floor fraction")->capture_default_str();
    csolve->add_option("--rounds", solve.rounds, "exposure rounds (1 or 4)")
        ->capture_default_str();
    csolve->add_option("--attempts", solve.attempts, "pipeline attempts")->capture_default_str();
    csolve->add_option("--max-absorbers", solve.max_absorbers, "absorber budget cap")
        ->capture_default_str();
    csolve->add_flag("--verify-oracle", solve.verify_oracle,
                     "re-check existence exhaustively when n <= oracle limit");
    csolve->add_option("--oracle-limit", solve.oracle_limit, "largest n the oracle may search")
        ->capture_default_str();
    csolve->add_option("--emit-witness", solve.emit_witness, "write the cycle witness here");

    SweepArgs sweep;
    CLI::App* csweep = app.add_subcommand("sweep", "success-rate sweep over a p grid (CSV)");
    csweep->add_option("--k", sweep.k, "edge arity")->capture_default_str();
    csweep->add_option("--ell", sweep.ell, "cycle overlap")->capture_default_str();
    csweep->add_option("--n", sweep.n_list, "vertex counts")->delimiter(',');
    csweep->add_option("--p-list", sweep.p_list, "explicit p values")->delimiter(',');
    csweep->add_option("--p-geom", sweep.p_geom, "geometric grid lo:hi:points");
    csweep->add_flag("--over-n", sweep.over_n, "grid values are multiples of 1/n");
    csweep->add_option("--model", sweep.model, "h0 | file | gnp")->capture_default_str();
    csweep->add_option("--in", sweep.in, "base instance for model=file");
    csweep->add_option("--alpha", sweep.alpha, "dense-part fraction / degree floor")
        ->capture_default_str();
    csweep->add_option("--trials", sweep.trials, "trials per grid point")->capture_default_str();
    csweep->add_option("--seed", sweep.seed, "base seed")->capture_default_str();
    csweep->add_option("--rounds", sweep.rounds, "exposure rounds (1 or 4)")
        ->capture_default_str();
    csweep->add_option("--attempts", sweep.attempts, "pipeline attempts")->capture_default_str();
    csweep->add_option("--max-absorbers", sweep.max_absorbers, "absorber budget cap")
        ->capture_default_str();
    csweep->add_option("--oracle-limit", sweep.oracle_limit,
                       "run the exact oracle when n <= limit (0 = never)")
        ->capture_default_str();
    csweep->add_option("--out", sweep.out, "output file ('-' or empty for stdout)");

    OracleArgs oracle;
    CLI::App* coracle = app.add_subcommand("oracle", "exhaustive existence search");
    coracle->add_option("--in", oracle.in, "hypergraph file")->required();
    coracle->add_option("--ell", oracle.ell, "cycle overlap")->capture_default_str();
    coracle->add_option("--path", oracle.path_edges,
                        "search for an l-path with this many edges instead of a spanning cycle");
    coracle->add_option("--nodes", oracle.nodes, "search node budget")->capture_default_str();
    coracle->add_option("--time-ms", oracle.time_ms, "wall-clock budget (0 = none)")
        ->capture_default_str();

    ValidateArgs validate;
    CLI::App* cvalidate = app.add_subcommand("validate", "check a witness against a graph");
    cvalidate->add_option("--graph", validate.graph, "hypergraph file")->required();
    cvalidate->add_option("--witness", validate.witness, "witness file")->required();

    BoundsArgs bounds;
    CLI::App* cbounds = app.add_subcommand("bounds", "probability-bound report for a pattern");
    cbounds->add_option("--k", bounds.k, "edge arity")->capture_default_str();
    cbounds->add_option("--ell", bounds.ell, "overlap")->capture_default_str();
    cbounds->add_option("--a", bounds.a, "edge count")->capture_default_str();
    cbounds->add_option("--x", bounds.x, "pad width")->capture_default_str();
    cbounds->add_option("--n", bounds.n, "vertex count")->required();
    cbounds->add_option("--p", bounds.p, "edge probability")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (cgen->parsed()) return run_gen(gen);
        if (csolve->parsed()) return run_solve(solve);
        if (csweep->parsed()) return run_sweep(sweep);
        if (coracle->parsed()) return run_oracle(oracle);
        if (cvalidate->parsed()) return run_validate(validate);
        if (cbounds->parsed()) return run_bounds(bounds);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
