#pragma once

#include "cantorlab/boxdim.hpp"
#include "cantorlab/embed.hpp"

#include <json.hpp>

namespace cantorlab {

using Json = nlohmann::ordered_json;

/// Scalars serialize canonically: rationals as {"kind":"rational","value":"p/q"},
/// algebraic numbers as {"kind":"algebraic","polynomial":[c0..cd],
/// "interval":["a","b"]} (constant term first). Values survive round trips
/// exactly; re-serialization of a parsed value is byte-identical.
Json scalar_to_json(const AlgebraicReal& x);
AlgebraicReal scalar_from_json(const Json& j);

Json ifs_to_json(const HomogeneousIFS& ifs);
HomogeneousIFS ifs_from_json(const Json& j);

Json certificate_to_json(const EmbeddingCertificate& cert);
EmbeddingCertificate certificate_from_json(const Json& j);

Json hole_to_json(const HoleCertificate& hc);
HoleCertificate hole_from_json(const Json& j);

Json pisot_to_json(const PisotVerdict& v);
Json dim_estimate_to_json(const DimEstimate& est);

struct ReplayOutcome {
    bool ok = false;
    std::string kind;
    std::string message;
};

/// Re-verify any serialized certificate from its JSON alone.
ReplayOutcome replay_certificate_json(const Json& j);

/// CSV rows "level,left,right" with exact rational endpoints.
std::string cover_csv(const IntervalCover& cover);

}  // namespace cantorlab
