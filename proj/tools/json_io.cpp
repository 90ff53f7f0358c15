#include "json_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace hypermatch::io {

std::string hex(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t parse_hex(const std::string& s)
{
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used, 16);
    if (used != s.size()) throw std::invalid_argument("bad hex value: " + s);
    return v;
}

namespace {

Json big_vector(const std::vector<BigInt>& v)
{
    Json out = Json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

std::vector<BigInt> parse_big_vector(const Json& j)
{
    std::vector<BigInt> out;
    for (const auto& x : j) out.emplace_back(x.get<std::string>());
    return out;
}

}  // namespace

Json to_json(const Matching& m)
{
    Json out = Json::array();
    for (const auto& e : m.edges) out.push_back(e);
    return out;
}

Json to_json(const Partition& p)
{
    return Json{{"parts", p.parts}, {"s", p.s}};
}

Json to_json(const Certificate& c)
{
    Json basis = Json::array();
    for (const auto& row : c.basis) basis.push_back(big_vector(row));
    return Json{{"reason", c.reason},
                {"n", c.n},
                {"k", c.k},
                {"fingerprint", hex(c.fingerprint)},
                {"mu", to_string(c.mu)},
                {"partition", to_json(c.partition)},
                {"generators", c.generators},
                {"basis", basis},
                {"coset_order", to_string(c.coset_order)},
                {"q", c.q},
                {"leftover", c.leftover},
                {"leftover_residue", big_vector(c.leftover_residue)},
                {"size_bound", c.size_bound},
                {"nodes", c.nodes},
                {"exhausted", c.exhausted}};
}

Certificate certificate_from_json(const Json& j)
{
    try {
        Certificate c;
        c.reason = j.at("reason").get<std::string>();
        c.n = j.at("n").get<int>();
        c.k = j.at("k").get<int>();
        c.fingerprint = parse_hex(j.at("fingerprint").get<std::string>());
        c.mu = parse_rational(j.at("mu").get<std::string>());
        c.partition.parts = j.at("partition").at("parts").get<std::vector<VertexSet>>();
        c.partition.s = j.at("partition").at("s").get<int>();
        c.generators = j.at("generators").get<std::vector<IndexVector>>();
        for (const auto& row : j.at("basis")) c.basis.push_back(parse_big_vector(row));
        c.coset_order = BigInt(j.at("coset_order").get<std::string>());
        c.q = j.at("q").get<long>();
        c.leftover = j.at("leftover").get<IndexVector>();
        c.leftover_residue = parse_big_vector(j.at("leftover_residue"));
        c.size_bound = j.at("size_bound").get<long>();
        c.nodes = j.at("nodes").get<std::uint64_t>();
        c.exhausted = j.at("exhausted").get<bool>();
        return c;
    } catch (const nlohmann::json::exception& ex) {
        throw std::invalid_argument(std::string("malformed certificate: ") + ex.what());
    } catch (const std::runtime_error& ex) {
        throw std::invalid_argument(std::string("malformed certificate: ") + ex.what());
    }
}

Json to_json(const Decision& d, bool timings)
{
    Json out{{"verdict", to_string(d.verdict)}, {"has_perfect_matching", d.has_perfect_matching()}};
    out["matching"] = d.matching ? to_json(*d.matching) : Json(nullptr);
    out["certificate"] = d.certificate ? to_json(*d.certificate) : Json(nullptr);
    out["fallback"] = d.verdict == Verdict::oracle_fallback
                          ? Json{{"stage", d.fallback_stage}, {"reason", d.fallback_reason}}
                          : Json(nullptr);
    out["oracle_checked"] = d.oracle_checked;
    Json trace = Json::array();
    for (const auto& s : d.trace) {
        Json st{{"stage", s.name}, {"ok", s.ok}, {"detail", s.detail}};
        if (timings) st["seconds"] = s.seconds;
        trace.push_back(std::move(st));
    }
    out["trace"] = std::move(trace);
    return out;
}

Json to_json(const PipelineParams& p)
{
    return Json{{"delta", to_string(p.delta)},
                {"delta_prime", to_string(p.delta_prime)},
                {"gamma", to_string(p.gamma)},
                {"alpha", to_string(p.alpha)},
                {"beta", to_string(p.beta)},
                {"mu", to_string(p.mu)},
                {"t", p.t},
                {"q", p.q},
                {"coefficient_cap", p.coefficient_cap},
                {"cluster_floor", p.cluster_floor},
                {"oracle_cap", p.oracle_cap},
                {"absorber_candidate_cap", p.absorber_candidate_cap}};
}

Json to_json(const FractionalResult& r, const FractionalCover& cover, int n, int k)
{
    Json weights = Json::array();
    for (const auto& w : r.witness.weights) weights.push_back(to_string(w));
    Json cw = Json::array();
    for (const auto& w : cover.weights) cw.push_back(to_string(w));
    return Json{{"value", to_string(r.value)},
                {"perfect", r.value * k == n},
                {"edge_weights", weights},
                {"cover_value", to_string(cover.value)},
                {"cover_weights", cw}};
}

}  // namespace hypermatch::io
