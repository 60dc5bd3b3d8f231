#include "fourfold/report_json.hpp"

#include "fourfold/parser.hpp"

namespace fourfold {

namespace {

Json tri_json(Tri t) {
  return std::string(to_string(t));
}

Json versioned(Json body) {
  body["schema_version"] = kSchemaVersion;
  return body;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json alpha_value_json(const AlphaValue& a) {
  Json j;
  j["status"] = std::string(to_string(a.status));
  j["value"] = a.has_value() ? Json(to_string(a.value)) : Json(nullptr);
  return j;
}

Json invariants_json(const ManifoldExpr& e, const InvariantRecord& r) {
  Json j;
  j["expr"] = format(e);
  j["chi"] = r.chi;
  j["tau"] = r.tau;
  j["b_plus"] = r.b_plus;
  j["b_minus"] = r.b_minus;
  j["b1"] = r.b1 ? Json(*r.b1) : Json(nullptr);
  j["spin"] = tri_json(r.spin);
  j["simply_connected"] = tri_json(r.simply_connected);
  j["psc"] = tri_json(r.psc);
  j["scalar_flat"] = tri_json(r.scalar_flat);
  if (r.complex) {
    const ComplexData& c = *r.complex;
    j["complex"] = {{"c1sq", c.c1sq},
                    {"c1sq_minimal_model", c.c1sq_minimal_model ? Json(*c.c1sq_minimal_model) : Json(nullptr)},
                    {"chi_h", c.chi_h},
                    {"ample_K", c.ample_K},
                    {"minimal", c.minimal},
                    {"blowup_count", c.blowup_count}};
  } else {
    j["complex"] = nullptr;
  }
  return versioned(std::move(j));
}

Json verdict_json(const ManifoldExpr& e, const Verdict& v, bool with_certificate) {
  Json j;
  j["expr"] = format(e);
  if (v.record) {
    j["chi"] = v.record->chi;
    j["tau"] = v.record->tau;
    j["b_plus"] = v.record->b_plus;
    j["b_minus"] = v.record->b_minus;
    j["spin"] = tri_json(v.record->spin);
  } else {
    j["chi"] = j["tau"] = j["b_plus"] = j["b_minus"] = nullptr;
    j["spin"] = tri_json(Tri::Unknown);
  }
  j["alpha_sq"] = alpha_value_json(v.alpha);
  j["conclusion"] = std::string(to_string(v.conclusion));
  j["tag"] = v.tag.empty() ? Json(nullptr) : Json(v.tag);
  j["reason"] = v.reason;
  j["certificate"] = with_certificate ? Json(v.certificate) : Json::array();
  return versioned(std::move(j));
}

Json alpha_json(const ManifoldExpr& e, const AlphaValue& a) {
  Json j = alpha_value_json(a);
  j["expr"] = format(e);
  j["trace"] = a.trace;
  if (a.has_value()) {
    const MixedBoundConstants mixed = mixed_bound_constants(a);
    j["scalar_l2_bound_pi2"] = to_string(scalar_l2_lower_bound(a));
    j["mixed_linear_sq_pi2"] = to_string(mixed.linear_sq_pi2);
    j["mixed_quadratic"] = to_string(mixed.quadratic);
  } else {
    j["scalar_l2_bound_pi2"] = j["mixed_linear_sq_pi2"] = j["mixed_quadratic"] = nullptr;
  }
  return versioned(std::move(j));
}

Json numeric_alpha_json(const QuadraticFormSpace& space, const NumericAlphaResult& r,
                        const std::optional<OracleResult>& oracle) {
  Json j;
  j["dimension"] = space.dimension();
  j["b_plus"] = space.b_plus();
  j["b_minus"] = space.b_minus();
  j["classes"] = space.classes().size();
  j["value"] = r.value;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["near_boundary"] = r.near_boundary;
  j["witness_basis"] = matrix_json(r.witness.basis);
  if (oracle) {
    j["oracle"] = {{"value", oracle->value}, {"attained", oracle->attained}};
  } else {
    j["oracle"] = nullptr;
  }
  return versioned(std::move(j));
}

Json homeo_type_json(const HomeoType& h) {
  return {{"chi", h.chi},
          {"tau", h.tau},
          {"b_plus", h.b_plus},
          {"b_minus", h.b_minus},
          {"parity", std::string(to_string(h.parity))},
          {"canonical", h.canonical ? Json(*h.canonical) : Json(nullptr)},
          {"eleven_eighths_regime", h.eleven_eighths_regime},
          {"rokhlin_violation", h.rokhlin_violation},
          {"donaldson_excluded", h.donaldson_excluded}};
}

Json homeo_json(const ManifoldExpr& e1, const ManifoldExpr& e2, Tri result, const std::optional<HomeoType>& left,
                const std::optional<HomeoType>& right) {
  Json j;
  j["expr1"] = format(e1);
  j["expr2"] = format(e2);
  j["homeomorphic"] = tri_json(result);
  j["left"] = left ? homeo_type_json(*left) : Json(nullptr);
  j["right"] = right ? homeo_type_json(*right) : Json(nullptr);
  return versioned(std::move(j));
}

Json model_check_json(const ModelGeometry& m) {
  Json j;
  j["name"] = m.name;
  auto residual = [&](int sign) -> Json {
    try {
      return to_string(gauss_bonnet_residual(m, sign));
    } catch (const MissingData&) {
      return nullptr;
    }
  };
  j["gauss_bonnet_plus"] = residual(1);
  j["gauss_bonnet_minus"] = residual(-1);
  j["kaehler_spectrum"] = m.kaehler ? Json(kaehler_spectrum_check(m)) : Json(nullptr);
  j["weitzenboeck"] = m.kaehler && m.einstein ? Json(to_string(weitzenboeck_parallel_check(m))) : Json(nullptr);
  try {
    j["saturation"] = saturation_check(m);
  } catch (const PreconditionViolation&) {
    j["saturation"] = nullptr;
  }
  j["lowest_wplus"] = to_string(lowest_wplus_eigenvalue(m));
  return j;
}

Json error_json(const std::exception& err) {
  Json e;
  e["message"] = err.what();
  if (const auto* pe = dynamic_cast<const ParseError*>(&err)) {
    e["kind"] = "ParseError";
    e["position"] = pe->position();
    e["expected"] = pe->expected();
  } else if (const auto* fe = dynamic_cast<const Error*>(&err)) {
    e["kind"] = std::string(fe->kind());
  } else {
    e["kind"] = "Error";
  }
  return versioned(Json{{"error", e}});
}

}  // namespace fourfold
