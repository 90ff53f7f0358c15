#pragma once

#include "hypermatch/hypergraph.hpp"
#include "hypermatch/partition.hpp"
#include "hypermatch/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hypermatch {

enum class Verdict { perfect_matching, no_perfect_matching, oracle_fallback };
std::string to_string(Verdict v);

/// Insolubility witness: no matching of size <= |V_0| + q covers V_0 and leaves
/// an index vector in L. Since every perfect matching yields such a matching
/// whenever q >= |Q|, this certifies that H has no perfect matching.
struct Certificate {
    /// "divisibility" (k does not divide n) or "insoluble".
    std::string reason;
    int n = 0;
    int k = 0;
    std::uint64_t fingerprint = 0;
    Rational mu;
    Partition partition;
    /// Robust vectors generating L.
    std::vector<IndexVector> generators;
    /// Hermite basis of L.
    std::vector<std::vector<BigInt>> basis;
    BigInt coset_order;
    /// Solubility budget used by the search; see budget_certifies.
    long q = 0;
    /// Index vector of V(H) - V_0 and its residue (empty when not in L_max).
    IndexVector leftover;
    std::vector<BigInt> leftover_residue;
    /// Largest matching size explored, |V_0| + q capped by n/k.
    long size_bound = 0;
    std::uint64_t nodes = 0;
    bool exhausted = false;
};

struct StageReport {
    std::string name;
    bool ok = true;
    std::string detail;
    double seconds = 0;
};

struct Decision {
    Verdict verdict = Verdict::oracle_fallback;
    /// Set for perfect_matching, and for oracle_fallback when a matching exists.
    std::optional<Matching> matching;
    std::optional<Certificate> certificate;
    /// Stage whose contract failed (oracle_fallback only).
    std::string fallback_stage;
    std::string fallback_reason;
    bool oracle_checked = false;
    std::vector<StageReport> trace;

    bool has_perfect_matching() const { return matching.has_value(); }
};

/// Insolubility with budget q rules out perfect matchings when q >= |Q|, or
/// when |V_0| + q already reaches the largest possible matching size n/k.
bool budget_certifies(const BigInt& order, long q, std::size_t exceptional, long max_matching_size);

/// Structural decision procedure. Emits a perfect matching only after checking
/// it against H, a certificate only from an exhaustive insolubility search,
/// and otherwise the oracle's answer with the failing stage named. "No"
/// verdicts are re-checked by the oracle when n <= p.oracle_cap; a
/// disagreement throws std::logic_error. Throws std::invalid_argument unless
/// 1 <= l <= k-1, and std::domain_error for n > 64.
Decision decide(const Hypergraph& h, int l, const PipelineParams& p);

/// Recomputes robust vectors and L from the certificate's partition and re-runs
/// the exhaustive search. False if the certificate's lattice data does not
/// match the recomputation, if Q is infinite or the budget does not certify, or if a
/// solution exists. Throws std::invalid_argument if the certificate was issued
/// for a different hypergraph or mu.
bool verify_certificate(const Hypergraph& h, const Certificate& cert, const PipelineParams& p);

struct AlmostPerfect {
    Matching matching;
    int uncovered = 0;
    /// 2k - l - 1.
    int bound = 0;
    bool within_bound = false;
};

/// Exact maximum matching, with the uncovered count compared to 2k - l - 1.
AlmostPerfect almost_perfect_matching(const Hypergraph& h, int l);

struct CrossValidationSpec {
    /// random, space, cover, lattice, complete or mixed.
    std::string family = "mixed";
    int k = 3;
    std::vector<int> sizes{6, 9, 12};
    std::vector<Rational> densities{Rational(1, 5), Rational(1, 2), Rational(9, 10)};
    int l = 2;
    std::size_t count = 100;
    std::uint64_t seed = 1;
};

struct CrossValidationRow {
    std::uint64_t fingerprint = 0;
    std::string family;
    int n = 0;
    Verdict verdict = Verdict::oracle_fallback;
    bool decided_yes = false;
    bool oracle_yes = false;
    std::string stage;
    double seconds = 0;
};

struct CrossValidationReport {
    std::vector<CrossValidationRow> rows;
    /// Instances on which decide and the oracle disagreed.
    std::vector<Hypergraph> disagreements;
    std::size_t structural() const;
};

/// The i-th instance of a cross-validation run; deterministic in (spec, i).
struct GeneratedInstance {
    std::string family;
    Hypergraph graph;
};
GeneratedInstance cross_validation_instance(const CrossValidationSpec& spec, std::size_t i);

/// Runs decide and the oracle on spec.count generated instances.
CrossValidationReport cross_validate(const CrossValidationSpec& spec, const PipelineParams& p);

/// CSV with header fingerprint,family,n,verdict,decide_yes,oracle_yes,stage
/// plus a seconds column when `timings` is set.
void write_csv(std::ostream& out, const CrossValidationReport& report, bool timings);

}  // namespace hypermatch
