#pragma once

#include "hypermatch/hypergraph.hpp"
#include "hypermatch/types.hpp"

#include <vector>

namespace hypermatch {

/// Edge weights aligned with Hypergraph::edges() (canonical order).
struct FractionalMatching {
    std::vector<Rational> weights;

    Rational size() const;
};

/// True iff weights are in [0,1] and every vertex sum is <= 1, checked exactly.
bool is_fractional_matching_of(const Hypergraph& h, const FractionalMatching& w);

struct FractionalResult {
    Rational value;
    FractionalMatching witness;
};

/// Exact optimum of max sum w(e) s.t. w >= 0 and every vertex sum <= 1.
/// (w(e) <= 1 is implied by any vertex constraint of e.)
FractionalResult max_fractional_matching(const Hypergraph& h);

bool has_perfect_fractional_matching(const Hypergraph& h);

struct FractionalCover {
    Rational value;
    /// Per-vertex weights.
    std::vector<Rational> weights;
};

/// Exact optimum of min sum y(v) s.t. y >= 0 and sum_{v in e} y(v) >= 1 for
/// every edge. Solved as its own LP; by duality it equals the matching value.
FractionalCover min_fractional_vertex_cover(const Hypergraph& h);

/// 1 - ((k-1)/k)^(k-l). Throws std::invalid_argument unless 1 <= l <= k-1.
Rational conjectured_cstar(int k, int l);

}  // namespace hypermatch
