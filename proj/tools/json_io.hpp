#pragma once

#include "hypermatch/fractional.hpp"
#include "hypermatch/lattice.hpp"
#include "hypermatch/partition.hpp"
#include "hypermatch/pipeline.hpp"

#include <json.hpp>

namespace hypermatch::io {

using Json = nlohmann::ordered_json;

/// 16 lower-case hex digits.
std::string hex(std::uint64_t v);
std::uint64_t parse_hex(const std::string& s);

Json to_json(const Matching& m);
Json to_json(const Partition& p);
Json to_json(const Certificate& c);
/// Stage seconds are included only when `timings` is set, so default output is byte-stable.
Json to_json(const Decision& d, bool timings);
Json to_json(const PipelineParams& p);
Json to_json(const FractionalResult& r, const FractionalCover& cover, int n, int k);

/// Inverse of to_json(Certificate); throws std::invalid_argument on malformed input.
Certificate certificate_from_json(const Json& j);

}  // namespace hypermatch::io
