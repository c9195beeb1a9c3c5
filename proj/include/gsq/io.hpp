#pragma once

#include <json.hpp>

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gsq/analytic.hpp"
#include "gsq/gops.hpp"
#include "gsq/interference.hpp"
#include "gsq/states.hpp"

namespace gsq::io {

using json = nlohmann::json;

/// Parses a JSON state description. Complex numbers are [re, im] pairs.
///
///   {"type":"vacuum"}
///   {"type":"fock","n1":1,"n2":0}
///   {"type":"coherent","alpha":[1,0],"beta":[1,0]}
///   {"type":"displaced_squeezed","alpha":[4,0],"q":0.3,"theta":0}
///   {"type":"single_photon","c1":[0.7071067811865476,0],"c2":[0.7071067811865476,0]}
///   {"type":"custom","terms":[[1,0,[0.6,0]],[0,1,[0,0.8]]]}
///
/// Every variant accepts an optional "cutoff": n or [n1, n2].
/// Throws InputError on malformed text or invalid fields.
StateSpec parse_state_spec(std::string_view text);

/// 17 significant digits, "%.17g".
std::string format_number(double x);

json to_json(const GStats& s);
GStats gstats_from_json(const json& j);
json to_json(const UncertaintyReport& r);
json to_json(const SqueezeReport& r);
json to_json(const CommutatorReport& r);
json to_json(const ComparisonReport& r);
json to_json(const std::vector<PhiInterval>& regions);
json to_json(const std::vector<FringePoint>& points);

/// '#' comment lines, then the header
/// phi,mean,std_exact,std_analytic,zero_reachable, then one row per point.
void write_fringe_csv(std::ostream& os, const std::vector<FringePoint>& points,
                      const std::vector<std::string>& comments);

}  // namespace gsq::io
