// Command-line front end. Exit codes: 0 yes / valid, 1 no / invalid, 2 error.

#include "json_io.hpp"

#include "hypermatch/fractional.hpp"
#include "hypermatch/hypergraph.hpp"
#include "hypermatch/instances.hpp"
#include "hypermatch/lattice.hpp"
#include "hypermatch/partition.hpp"
#include "hypermatch/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace hypermatch;
using io::Json;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

Hypergraph load(const std::string& path)
{
    if (path == "-") return read_hypergraph(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_hypergraph(in);
}

Json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return Json::parse(in);
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

/// Threshold overrides; unset options keep default_params(k, l).
struct ParamOptions {
    std::optional<std::string> delta, delta_prime, gamma, alpha, beta, mu;
    std::optional<int> t, oracle_cap;
    std::optional<long> q, coefficient_cap, cluster_floor;
    std::optional<std::size_t> candidate_cap;

    void attach(CLI::App* app)
    {
        app->add_option("--delta", delta, "minimum-degree ratio delta (sets c = floor(1/delta))");
        app->add_option("--delta-prime", delta_prime, "reachable-neighbourhood fraction delta'");
        app->add_option("--gamma", gamma, "degree slack gamma");
        app->add_option("--alpha", alpha, "reachability threshold alpha");
        app->add_option("--beta", beta, "closedness threshold beta");
        app->add_option("--mu", mu, "robustness threshold mu");
        app->add_option("--t", t, "closedness depth t");
        app->add_option("--q", q, "solubility budget (0 = |Q|)");
        app->add_option("--oracle-cap", oracle_cap, "oracle cross-check limit on n");
        app->add_option("--coefficient-cap", coefficient_cap, "cap on lattice coefficients");
        app->add_option("--cluster-floor", cluster_floor, "cluster floor b (negative = k)");
        app->add_option("--candidate-cap", candidate_cap, "absorbing-set candidate cap");
    }

    PipelineParams resolve(int k, int l) const
    {
        PipelineParams p = default_params(k, l);
        if (delta) p.delta = parse_rational(*delta);
        if (delta_prime) p.delta_prime = parse_rational(*delta_prime);
        if (gamma) p.gamma = parse_rational(*gamma);
        if (alpha) p.alpha = parse_rational(*alpha);
        if (beta) p.beta = parse_rational(*beta);
        if (mu) p.mu = parse_rational(*mu);
        if (t) p.t = *t;
        if (q) p.q = *q;
        if (oracle_cap) p.oracle_cap = *oracle_cap;
        if (coefficient_cap) p.coefficient_cap = *coefficient_cap;
        if (cluster_floor) p.cluster_floor = *cluster_floor;
        if (candidate_cap) p.absorber_candidate_cap = *candidate_cap;
        validate(p);
        return p;
    }
};

std::vector<int> parse_int_list(const std::string& s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw std::invalid_argument("empty list: " + s);
    return out;
}

/// "3,0;1,2" -> {(3,0), (1,2)}.
std::vector<IndexVector> parse_vectors(const std::string& s)
{
    std::vector<IndexVector> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        const auto v = parse_int_list(item);
        out.emplace_back(v.begin(), v.end());
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Perfect matchings in k-uniform hypergraphs: structural decision with certificates"};
    app.require_subcommand(1);

    std::string input;
    int ell = 1;
    bool json = false;
    bool timings = false;
    ParamOptions params;

    auto* decide_cmd = app.add_subcommand("decide", "decide whether a perfect matching exists");
    decide_cmd->add_option("--input", input, "hypergraph file ('-' for stdin)")->required();
    decide_cmd->add_option("--ell", ell, "degree order l in [1, k-1]")->required();
    decide_cmd->add_flag("--json", json, "print the full decision as JSON");
    decide_cmd->add_flag("--timings", timings, "include per-stage seconds (not byte-stable)");
    params.attach(decide_cmd);

    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive perfect-matching search");
    oracle_cmd->add_option("--input", input, "hypergraph file")->required();
    oracle_cmd->add_flag("--json", json, "print JSON");

    std::string gen_kind;
    int gen_n = 0, gen_k = 3;
    std::string gen_p = "1/2", gen_parts, gen_allowed, gen_out;
    std::uint64_t gen_seed = 1;
    auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
    gen_cmd->add_option("kind", gen_kind, "space | cover | lattice | random | complete")
        ->required()
        ->check(CLI::IsMember({"space", "cover", "lattice", "random", "complete"}));
    gen_cmd->add_option("--n", gen_n, "number of vertices");
    gen_cmd->add_option("--k", gen_k, "uniformity");
    gen_cmd->add_option("--p", gen_p, "edge probability (random)");
    gen_cmd->add_option("--seed", gen_seed, "seed (random)");
    gen_cmd->add_option("--parts", gen_parts, "part sizes, e.g. 4,5 (lattice)");
    gen_cmd->add_option("--allowed", gen_allowed, "allowed index vectors, e.g. '3,0;0,3' (lattice)");
    gen_cmd->add_option("--output", gen_out, "output file (default stdout)");

    auto* frac_cmd = app.add_subcommand("fractional", "exact fractional matching number");
    frac_cmd->add_option("--input", input, "hypergraph file")->required();
    frac_cmd->add_flag("--json", json, "print the witness and the dual cover as JSON");

    auto* part_cmd = app.add_subcommand("partition", "build and validate the vertex partition");
    part_cmd->add_option("--input", input, "hypergraph file")->required();
    part_cmd->add_option("--ell", ell, "degree order l")->required();
    params.attach(part_cmd);

    auto* lat_cmd = app.add_subcommand("lattice-info", "robust vectors, lattice and coset group");
    lat_cmd->add_option("--input", input, "hypergraph file")->required();
    lat_cmd->add_option("--ell", ell, "degree order l")->required();
    params.attach(lat_cmd);

    CrossValidationSpec spec;
    std::string cv_out, cv_sizes = "6,9,12";
    auto* cv_cmd = app.add_subcommand("cross-validate", "compare decide with the oracle on generated instances");
    cv_cmd->add_option("--family", spec.family, "random | space | cover | lattice | complete | mixed");
    cv_cmd->add_option("--count", spec.count, "number of instances");
    cv_cmd->add_option("--seed", spec.seed, "seed");
    cv_cmd->add_option("--k", spec.k, "uniformity");
    cv_cmd->add_option("--sizes", cv_sizes, "comma-separated vertex counts");
    cv_cmd->add_option("--ell", spec.l, "degree order l");
    cv_cmd->add_option("--out", cv_out, "CSV output file (default stdout)");
    cv_cmd->add_flag("--timings", timings, "add a seconds column (not byte-stable)");
    params.attach(cv_cmd);

    std::string cert_path;
    auto* verify_cmd = app.add_subcommand("verify", "re-check a certificate against an instance");
    verify_cmd->add_option("--input", input, "hypergraph file")->required();
    verify_cmd->add_option("--certificate", cert_path, "certificate JSON (decide output or bare certificate)")
        ->required();
    params.attach(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (*decide_cmd) {
            const Hypergraph h = load(input);
            const Decision d = decide(h, ell, params.resolve(h.k(), ell));
            if (json) {
                emit(io::to_json(d, timings));
            } else {
                std::cout << to_string(d.verdict) << '\n';
                if (d.verdict == Verdict::oracle_fallback)
                    std::cout << "fallback: " << d.fallback_stage << ": " << d.fallback_reason << '\n';
                std::cout << (d.has_perfect_matching() ? "yes" : "no") << '\n';
            }
            return d.has_perfect_matching() ? kExitYes : kExitNo;
        }
        if (*oracle_cmd) {
            const Hypergraph h = load(input);
            const auto m = perfect_matching_oracle(h);
            if (json)
                emit(Json{{"has_perfect_matching", m.has_value()}, {"matching", m ? io::to_json(*m) : Json(nullptr)}});
            else
                std::cout << (m ? "yes" : "no") << '\n';
            return m ? kExitYes : kExitNo;
        }
        if (*gen_cmd) {
            Hypergraph h;
            if (gen_kind == "space") h = space_barrier(gen_n, gen_k);
            else if (gen_kind == "cover") h = cover_barrier(gen_n, gen_k);
            else if (gen_kind == "random") h = random_kgraph(gen_n, gen_k, parse_rational(gen_p), gen_seed);
            else if (gen_kind == "complete") h = Hypergraph::complete(gen_n, gen_k);
            else h = lattice_barrier(parse_int_list(gen_parts), gen_k, parse_vectors(gen_allowed));
            if (gen_out.empty()) {
                write_hypergraph(std::cout, h);
            } else {
                std::ofstream out(gen_out);
                if (!out) throw std::runtime_error("cannot write " + gen_out);
                write_hypergraph(out, h);
            }
            return kExitYes;
        }
        if (*frac_cmd) {
            const Hypergraph h = load(input);
            const FractionalResult r = max_fractional_matching(h);
            if (json)
                emit(io::to_json(r, min_fractional_vertex_cover(h), h.n(), h.k()));
            else
                std::cout << to_string(r.value) << '\n';
            return r.value * h.k() == h.n() ? kExitYes : kExitNo;
        }
        if (*part_cmd) {
            const Hypergraph h = load(input);
            const PipelineParams p = params.resolve(h.k(), ell);
            Json out{{"params", io::to_json(p)}};
            try {
                const PartitionBuild b = build_partition(h, p);
                const PartitionReport rep = validate_partition(h, b.partition, p);
                Json items = Json::array();
                for (const auto& it : rep.items) items.push_back(Json{{"pass", it.pass}, {"detail", it.detail}});
                out["certified"] = true;
                out["partition"] = io::to_json(b.partition);
                out["pruned"] = b.prune.removed;
                out["empty_cluster_flagged"] = b.empty_cluster_flagged;
                out["items"] = items;
                emit(out);
                return rep.all() ? kExitYes : kExitNo;
            } catch (const PartitionNotCertified& ex) {
                out["certified"] = false;
                out["reason"] = ex.what();
                emit(out);
                return kExitNo;
            }
        }
        if (*lat_cmd) {
            const Hypergraph h = load(input);
            const PipelineParams p = params.resolve(h.k(), ell);
            const Partition part = merge_transferral_parts(h, build_partition(h, p).partition, p.mu).partition;
            const RobustVectors rv = robust_vectors(h, part, p.mu);
            const Lattice lat(part.r(), rv.all());
            const CosetGroup cg(lat, h.k());
            Json basis = Json::array();
            for (const auto& row : lat.basis()) {
                Json r = Json::array();
                for (const auto& x : row) r.push_back(to_string(x));
                basis.push_back(r);
            }
            Json factors = Json::array();
            for (const auto& f : cg.invariant_factors()) factors.push_back(to_string(f));
            // Index vector of V(H) - V_0 and its residue; null when k does not divide it.
            const IndexVector leftover =
                index_vector(part, set_difference(iota_set(0, h.n()), part.exceptional()));
            Json residue = nullptr;
            if (vector_sum(leftover) % h.k() == 0) {
                residue = Json::array();
                for (const auto& x : cg.residue(leftover)) residue.push_back(to_string(x));
            }
            // transferrals[i][j]: u_(i+1) - u_(j+1) lies in L.
            Json transferrals = Json::array();
            for (int i = 1; i <= part.r(); ++i) {
                Json row = Json::array();
                for (int j = 1; j <= part.r(); ++j) row.push_back(i != j && has_transferral(lat, i, j));
                transferrals.push_back(row);
            }
            emit(Json{{"partition", io::to_json(part)},
                      {"type1", rv.type1},
                      {"type2", rv.type2},
                      {"basis", basis},
                      {"invariant_factors", factors},
                      {"coset_order", cg.finite() ? Json(to_string(*cg.order())) : Json(nullptr)},
                      {"leftover", leftover},
                      {"leftover_residue", residue},
                      {"transferrals", transferrals}});
            return kExitYes;
        }
        if (*cv_cmd) {
            spec.sizes = parse_int_list(cv_sizes);
            const CrossValidationReport rep = cross_validate(spec, params.resolve(spec.k, spec.l));
            if (cv_out.empty()) {
                write_csv(std::cout, rep, timings);
            } else {
                std::ofstream out(cv_out);
                if (!out) throw std::runtime_error("cannot write " + cv_out);
                write_csv(out, rep, timings);
            }
            if (!rep.disagreements.empty()) {
                // Reproduction bundle: one instance file per disagreement.
                for (std::size_t i = 0; i < rep.disagreements.size(); ++i) {
                    const std::string path =
                        (cv_out.empty() ? std::string("cross-validate") : cv_out) + ".disagreement-" +
                        std::to_string(i) + ".txt";
                    std::ofstream bundle(path);
                    write_hypergraph(bundle, rep.disagreements[i]);
                    std::cerr << "disagreement written to " << path << '\n';
                }
                return kExitError;
            }
            return kExitYes;
        }
        if (*verify_cmd) {
            const Hypergraph h = load(input);
            const Json j = load_json(cert_path);
            const Json& cj = j.contains("certificate") ? j.at("certificate") : j;
            if (cj.is_null()) throw std::invalid_argument("no certificate in " + cert_path);
            const Certificate cert = io::certificate_from_json(cj);
            PipelineParams p = params.resolve(h.k(), std::max(1, h.k() - 1));
            if (!params.mu) p.mu = cert.mu;
            const bool ok = verify_certificate(h, cert, p);
            std::cout << (ok ? "valid" : "invalid") << '\n';
            return ok ? kExitYes : kExitNo;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
