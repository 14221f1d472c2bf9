#pragma once

#include <string>

#include <json.hpp>

#include "p33/edgeops.hpp"
#include "p33/elliptic.hpp"
#include "p33/grassmann.hpp"
#include "p33/operators.hpp"
#include "p33/pachner.hpp"
#include "p33/simplicial.hpp"
#include "p33/weight_matrix.hpp"

namespace p33::io {

using nlohmann::json;

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);

json element_to_json(const GrassmannElement& w);
GrassmannElement element_from_json(const json& j);

json cochain_to_json(const Cochain& c);
// The complex is the 4-simplex or the boundary of the 5-simplex spanned by
// the vertices that occur in the keys.
Cochain cochain_from_json(const json& j);

json operator_to_json(const LinearOperator& d);
json weight_matrix_to_json(const WeightMatrix& f);
WeightMatrix weight_matrix_from_json(const json& j);
json family_to_json(const EdgeOperatorFamily& fam);

json elliptic_params_to_json(const EllipticParams& p);
EllipticParams elliptic_params_from_json(const json& j);

json gauges_to_json(const std::vector<TetGauge>& gauges);
json pachner_report_to_json(const PachnerReport& rep);

// Sorted keys, doubles with 17 significant digits, two-space indent.
std::string dump(const json& j);

json read_file(const std::string& path);
void write_output(const json& j, const std::string& path);

}  // namespace p33::io
