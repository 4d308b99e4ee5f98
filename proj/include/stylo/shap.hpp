#pragma once

#include <Eigen/Dense>
#include <span>

#include "stylo/forest.hpp"

namespace stylo::forest {

struct Attribution {
  Eigen::VectorXd phi;
  Eigen::MatrixXd phi_interaction;  // symmetric; rows sum to phi
  double base_value = 0.0;
};

struct ShapOptions {
  // Trees whose used-feature count is at or below the cap are attributed by
  // exact coalition enumeration against the background set; larger trees fall
  // back to the path-dependent algorithm (cover-weighted expectations).
  int exact_cap = 20;
  bool allow_path = true;
  bool compute_interactions = true;
};

// Shapley attribution of predict_proba(forest, x). base_value is the sum of
// per-tree reference expectations, so phi.sum() == f(x) - base_value in
// either mode.
Attribution shap_explain(const Forest& forest, std::span<const double> x,
                         const Eigen::MatrixXd& background, const ShapOptions& options = {});

}  // namespace stylo::forest
