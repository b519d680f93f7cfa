#pragma once
#include <json.hpp>
#include <string>

#include "displaylab/flex.hpp"
#include "displaylab/newton.hpp"

namespace dlab::io {

using json = nlohmann::ordered_json;

// "F_3", "F_3^2", "F_3[t]", "F_5[eps]"
const BaseRing* parse_ring(const std::string& s);
json ring_to_json(const BaseRing* R);
const BaseRing* ring_from_json(const json& j);

json elem_to_json(const BaseRing* R, const Elem& a);
Elem elem_from_json(const BaseRing* R, const json& j);

// bare component lists, ring given separately
json witt_body(const WittVector& x);
WittVector witt_from_body(const BaseRing* R, int n, const json& j);
json witt_to_json(const WittVector& x);  // {"ring", "n", "x"}
WittVector witt_from_json(const json& j);

json mat_body(const WMat& A);
WMat mat_from_body(const BaseRing* R, int n, const json& j);

json shape_to_json(const Shape& s);
Shape shape_from_json(const json& j);

json display_to_json(const Display& D);
Display display_from_json(const json& j);
json parabolic_to_json(const Parabolic& k);
Parabolic parabolic_from_json(const json& j);

json module_to_json(const GradedFrobModule& M);
GradedFrobModule module_from_json(const json& j);

// {"r", "d", "j", "unitary", "a", "b"}; a and b describe the weight profile
json gauge_to_json(const Multidegree& d, const Gauge& g, const WeightProfile& P);
FlexSpec flexspec_from_json(const json& j);

json theta_to_json(const ThetaGaugeInstance& I);
ThetaGaugeInstance theta_from_json(const json& j);

json newton_to_json(const NewtonPoint& nu);

// field element as its coefficient list, e.g. "[0,1,0,0]"
std::string point_label(const BaseRing* F, fe x);

}  // namespace dlab::io
