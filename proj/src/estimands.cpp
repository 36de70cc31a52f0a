#include "antichain/estimands.hpp"

#include <cmath>
#include <stdexcept>

#include "antichain/normal.hpp"

namespace antichain {

const std::vector<ScalarEstimand>& scalar_estimand_registry() {
  static const std::vector<ScalarEstimand> registry = {
      {"identity", [](double x) { return x; }, true},
      {"sin5x", [](double x) { return std::sin(5.0 * x); }, false},
      {"rational", [](double x) { return 2.0 * x / (1.0 + x * x); }, false},
      {"quadratic", [](double x) { return x * (1.0 - 5.0 * x); }, false},
  };
  return registry;
}

ScalarEstimand make_indicator(double c) {
  return {"indicator:" + std::to_string(c), [c](double x) { return x <= c ? 1.0 : 0.0; }, true};
}

ScalarEstimand scalar_estimand_by_name(const std::string& name) {
  if (name.rfind("indicator:", 0) == 0) {
    const double c = std::stod(name.substr(10));
    return make_indicator(c);
  }
  for (const auto& e : scalar_estimand_registry())
    if (e.name == name) return e;
  throw std::domain_error("unknown estimand: " + name);
}

const std::vector<VectorEstimand>& probit_estimand_registry() {
  static const std::vector<VectorEstimand> registry = {
      {"beta0", [](std::span<const double> b) { return b[0]; }},
      {"beta1", [](std::span<const double> b) { return b[1]; }},
      {"beta0_sq", [](std::span<const double> b) { return b[0] * b[0]; }},
      {"beta1_sq", [](std::span<const double> b) { return b[1] * b[1]; }},
      {"ld50", [](std::span<const double> b) { return -b[0] / b[1]; }},
      {"odds",
       [](std::span<const double> b) {
         const double eta = b[0] - 0.5 * b[1] + 1.5 * b[2];
         const double p = std_normal_cdf(eta);
         return p / (1.0 - p);
       }},
  };
  return registry;
}

}  // namespace antichain
