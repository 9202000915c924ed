#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "aggpatch/flow.hpp"
#include "aggpatch/interval_set.hpp"
#include "aggpatch/skeleton.hpp"

// JSON encodings of the core types plus the deterministic writers every
// output file goes through.
namespace aggpatch::io {

using Json = nlohmann::ordered_json;

// [[left, right], ...]
Json to_json(const IntervalUnion& u);
// {"hull": [a, b], "gaps": [[l, r], ...]}
Json to_json(const CompactSet& k);
// {"atoms": [{"x": .., "mass": ..}, ...], "bounds": [lo, hi]}
Json to_json(const AtomicMeasure& mu, const ClosedInterval& bounds);
// {"atoms": [...]} without bounds
Json atoms_to_json(const AtomicMeasure& mu);
// {"t": .., "density": .., "support": [[l, r], ...]}
Json to_json(const FlowSnapshot& snap);

// Parsers throw DomainError on malformed input (bad shapes, left >= right).
IntervalUnion interval_union_from_json(const Json& j);
CompactSet compact_set_from_json(const Json& j);
// Accepts {"atoms": [...]} or a bare array of {"x", "mass"} objects or
// [x, mass] pairs; atoms are sorted.
AtomicMeasure atomic_measure_from_json(const Json& j);

// %.17g, so outputs round-trip and are byte-stable.
std::string format_double(double x);

// Compact JSON with numbers through format_double, keys in insertion order.
void write_json(std::ostream& os, const Json& j);
std::string dump(const Json& j);

// FNV-1a 64 of a canonical dump, as 16 hex digits.
std::string content_hash(const Json& j);

}  // namespace aggpatch::io
