#pragma once

#include "cusptype/orbits.hpp"
#include "cusptype/strata.hpp"

#include <nlohmann/json.hpp>

#include <string>

// JSON and CSV encodings of the library's objects.  All encodings are
// deterministic: equal inputs produce byte-identical output.
namespace cusptype::io {

using json = nlohmann::ordered_json;
using matlin::Mat;
using matlin::OPoly;
using ring::Elem;
using ring::RingPtr;

// {"kind":"equal"|"mixed","p":..,"f":..,"r":..,"modulus":[..]} — "r" is the
// working precision; "modulus" (equal kind, f > 1) may be omitted on input
json ring_to_json(const RingPtr& R);
RingPtr ring_from_json(const json& j);

// equal kind: digit array, lowest first; mixed kind: plain integer.
// Input is zero-padded to the working precision.
json elem_to_json(const Elem& e);
Elem elem_from_json(const RingPtr& R, const json& j);

// {"ring":..,"n":..,"entries":[[row],[row],..]}
json mat_to_json(const Mat& m);
Mat mat_from_json(const json& j);

// {"order":"M"|"I","n":..,"beta":{"s":..,"mat":..}}
json stratum_to_json(const strata::Stratum& s);
strata::Stratum stratum_from_json(const json& j);

// entries (row-major) or coefficients (constant first) joined by ';',
// each element's digits (lowest first) joined by '.'
std::string encode_mat(const Mat& m, int prec);
std::string encode_opoly(const OPoly& f, int prec);

// ring,n,r,l,lp,class_id,canonical_rep,charpoly,label,j,twist_c,verdict,regular,class_size
std::string atlas_csv(const std::vector<orbits::AtlasRow>& rows);

// {"check":..,"params":..,"pass":..} with an optional "witness"
json report(const std::string& check, const json& params, bool pass);
json report(const std::string& check, const json& params, bool pass, const json& witness);

} // namespace cusptype::io
