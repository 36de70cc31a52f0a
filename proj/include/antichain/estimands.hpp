#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace antichain {

// Estimand on a scalar chain state. The monotone flag marks the regime with
// the negative-association guarantee; the coupled-chain variance bounds
// hold for coordinatewise monotone f only.
struct ScalarEstimand {
  std::string name;
  std::function<double(double)> f;
  bool monotone = false;
};

// identity, sin(5x), 2x/(1+x^2), x(1-5x); indicators come from
// make_indicator since the threshold is a parameter.
const std::vector<ScalarEstimand>& scalar_estimand_registry();

ScalarEstimand make_indicator(double c);

// Parse "identity", "sin5x", "rational", "quadratic" or "indicator:<c>".
ScalarEstimand scalar_estimand_by_name(const std::string& name);

// Estimand on a probit beta draw.
struct VectorEstimand {
  std::string name;
  std::function<double(std::span<const double>)> f;
};

// beta0, beta1, beta0_sq, beta1_sq (the square means feed the posterior
// variances), ld50 = -beta0/beta1, and the disease odds at covariates
// x1 = -0.5, x2 = 1.5.
const std::vector<VectorEstimand>& probit_estimand_registry();

}  // namespace antichain
