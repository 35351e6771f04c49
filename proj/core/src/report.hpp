#pragma once

// JSON views of the analysis results. Private to the library: the public
// interface hands out finished documents as text.

#include <json.hpp>

#include "orbitkit/analysis.hpp"
#include "orbitkit/corpus.hpp"
#include "orbitkit/finite_oracle.hpp"
#include "orbitkit/orbit.hpp"
#include "orbitkit/sensitivity.hpp"
#include "orbitkit/transition.hpp"

namespace orbitkit::report {

using Json = nlohmann::ordered_json;

/// {"exact": "p/q", "decimal": p/q as a double}
Json number(const Scalar& v);
Json set(const ClosedSet& s);
Json prefix(const SeqPrefix& xs);

Json map_section(const SetValuedMap& f);
Json expectations(const BuiltinSpec& spec);
Json semicontinuity(const SemicontinuityVerdict& v);
Json connected(const ConnectedValues& c);
Json transitivity(const TransitivityVerdict& v, unsigned m);
Json density(const DensityReport& r);
Json tree(const SetValuedMap& f, const OrbitTree& t);
Json cover(const OrbitCover& c);
Json graph(const TransitionGraph& g);
Json sensitivity(const SetValuedMap& f, const SensitivityVerdict& v);
Json finite(const FiniteSystem& s, const FiniteReport& r);

}  // namespace orbitkit::report
