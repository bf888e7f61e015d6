#pragma once

#include <string>

#include <json.hpp>

#include "uniquemax/alternating.hpp"
#include "uniquemax/certifier.hpp"
#include "uniquemax/falsifier.hpp"
#include "uniquemax/grid.hpp"
#include "uniquemax/subspace.hpp"
#include "uniquemax/witness.hpp"

namespace uniquemax {

using Json = nlohmann::json;

Json to_json(const Point& p);
Json to_json(const CoefVector& a);
Json to_json(const BasisFunction& f);
Json to_json(const Subspace& s);
Json to_json(const AnalyticMaxResult& r);
Json to_json(const MaxCertificate& c);
Json to_json(const MinResult& r);
Json to_json(const SignBounds& b);
Json to_json(const NormEquivalence& e);
Json to_json(const TailRadius& t);
Json to_json(const ViolationWitness& w);
Json to_json(const ExperimentReport& r);
Json to_json(const ExtractionResult& r);

Point point_from_json(const Json& j);
CoefVector coefs_from_json(const Json& j);
BasisFunction basis_from_json(const Json& j, std::size_t ambient_dim);
/// Parses the subspace schema {"ambient_dim": n, "basis": [...],
/// "combination": [[...]] (optional)}. Throws kInvalidArgument.
Subspace subspace_from_json(const Json& j);
AnalyticMaxResult analytic_max_from_json(const Json& j);
MaxCertificate certificate_from_json(const Json& j);
MinResult min_result_from_json(const Json& j);
SignBounds sign_bounds_from_json(const Json& j);
NormEquivalence norm_equivalence_from_json(const Json& j);
TailRadius tail_radius_from_json(const Json& j);
ViolationWitness witness_from_json(const Json& j);
ExperimentReport report_from_json(const Json& j);

/// CSV with header x_1..x_n, one grid point per line, 17 significant digits.
std::string grid_to_csv(const TwoChartGrid& grid);

}  // namespace uniquemax
