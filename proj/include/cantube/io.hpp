#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cantube/campaigns.hpp"
#include "cantube/matrixrep.hpp"
#include "cantube/strata.hpp"

namespace cantube {

using Json = nlohmann::ordered_json;

// --- text forms ---------------------------------------------------------------

/// "m1,m2,..." plus an optional "l3,...,ln" list of rationals.
CanonicalType parse_type(const std::string& arms, const std::string& lambdas = "");

/// "d0,dinf;arm1;arm2;..." where arm i lists d_{i,1}, ..., d_{i,m_i-1}.
DimVector parse_dim_vector(const CanonicalType& t, const std::string& text);
std::string format_dim_vector(const CanonicalType& t, const DimVector& d);

/// "R1[0,1] + R2[1,1]"; "0" or "" is the zero module.
RegularPart parse_regular_part(const CanonicalType& t, const std::string& text);

/// Integers or "p/q".
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);

std::string format_index(const CanonicalType& t, const StratumIndex& s);

// --- JSON ---------------------------------------------------------------------

Json to_json(const CanonicalType& t);
CanonicalType type_from_json(const Json& j);

Json to_json(const CanonicalType& t, const StratumIndex& s);
StratumIndex index_from_json(const CanonicalType& t, const Json& j);

Json to_json(const CanonicalType& t, const StratumReport& r);
StratumReport report_from_json(const CanonicalType& t, const Json& j);

Json to_json(const CanonicalType& t, const ZDimension& z);
ZDimension zdim_from_json(const CanonicalType& t, const Json& j);

Json to_json(const CanonicalType& t, const CiVerdict& v);
CiVerdict verdict_from_json(const CanonicalType& t, const Json& j);

Json to_json(const CanonicalType& t, const ReductionTrace& tr);
ReductionTrace trace_from_json(const CanonicalType& t, const Json& j);

Json to_json(const CanonicalType& t, const SweepRow& r);
SweepRow row_from_json(const CanonicalType& t, const Json& j);

Json to_json(const CheckResult& c);
CheckResult check_from_json(const Json& j);

/// Module file: {type: {m, lambda}, dims: {vertex label: n}, matrices: {"a_i_j": rows}}.
Json module_to_json(const MatrixModule& m);
MatrixModule module_from_json(const Json& j);

// --- CSV ----------------------------------------------------------------------

std::string sweep_csv_header();
std::string to_csv(const CanonicalType& t, const SweepRow& r);
SweepRow row_from_csv(const CanonicalType& t, const std::string& line);

}  // namespace cantube
