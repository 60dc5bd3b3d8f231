#pragma once

// JSON shapes emitted by the command-line tool. Every top-level object carries
// "schema_version"; keys are serialized in sorted order.

#include <exception>
#include <optional>

#include <json.hpp>

#include "fourfold/alpha.hpp"
#include "fourfold/curvature.hpp"
#include "fourfold/numeric_alpha.hpp"
#include "fourfold/obstruction.hpp"

namespace fourfold {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

Json alpha_value_json(const AlphaValue& a);
Json invariants_json(const ManifoldExpr& e, const InvariantRecord& r);
Json verdict_json(const ManifoldExpr& e, const Verdict& v, bool with_certificate = true);
Json alpha_json(const ManifoldExpr& e, const AlphaValue& a);
Json numeric_alpha_json(const QuadraticFormSpace& space, const NumericAlphaResult& r,
                        const std::optional<OracleResult>& oracle);
Json homeo_type_json(const HomeoType& h);
Json homeo_json(const ManifoldExpr& e1, const ManifoldExpr& e2, Tri result, const std::optional<HomeoType>& left,
                const std::optional<HomeoType>& right);
Json model_check_json(const ModelGeometry& m);
Json error_json(const std::exception& err);

}  // namespace fourfold
