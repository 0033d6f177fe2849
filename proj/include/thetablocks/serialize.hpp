#pragma once

#include <string>

#include <json.hpp>

#include "thetablocks/jacobi.hpp"
#include "thetablocks/lifts.hpp"

namespace thetablocks {

using Json = nlohmann::json;

std::string rational_string(const Rational& r);

// {"rank", "q_prec", "q_den", "zeta_den", "terms": [{"n", "l", "c"}, ...]} with terms sorted by (n, l).
Json series_to_json(const PuiseuxSeries& s);
PuiseuxSeries series_from_json(const Json& j);

Json triple_to_json(const TripleSeries& t);
TripleSeries triple_from_json(const Json& j);

Json jacobi_to_json(const JacobiForm& f);
JacobiForm jacobi_from_json(const Json& j);

Json gram_to_json(const RatMatrix& g);
RatMatrix gram_from_json(const Json& j);
Json block_to_json(const ThetaBlockSpec& s);

// Keys are sorted, so equal values give byte-identical text.
std::string canonical_dump(const Json& j, int indent = 2);

}  // namespace thetablocks
