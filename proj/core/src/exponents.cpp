#include "sgm/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace sgm {

MixedExponents::MixedExponents(double time_exp, double space_exp)
    : qp_(time_exp), q_(space_exp) {
  if (std::isnan(qp_) || std::isnan(q_) || qp_ < 1.0 || q_ < 1.0)
    throw std::invalid_argument("MixedExponents: exponents must lie in [1, inf]");
  const double idx = index();
  if (!(idx >= 0.0 && idx < 5.0))
    throw std::invalid_argument("MixedExponents: criticality index out of [0, 5)");
}

std::string to_string(SerrinClass c) {
  switch (c) {
    case SerrinClass::subcritical: return "subcritical";
    case SerrinClass::critical: return "critical";
    case SerrinClass::critical_unproven: return "critical-unproven";
    case SerrinClass::excluded_endpoint: return "excluded_endpoint";
    case SerrinClass::supercritical: return "supercritical";
  }
  return "unknown";
}

Criticality criticality(const MixedExponents& exps) {
  const double idx = exps.index();
  const bool qp_inf = exps.time() == kInf;
  if (exps.space() == 1.0 && qp_inf) return {idx, SerrinClass::excluded_endpoint};
  if (idx < 1.0) return {idx, SerrinClass::subcritical};
  if (idx == 1.0) {
    if (!qp_inf) return {idx, SerrinClass::critical};
    return {idx, SerrinClass::critical_unproven};
  }
  return {idx, SerrinClass::supercritical};
}

}  // namespace sgm
