#ifndef SGM_EXPONENTS_HPP
#define SGM_EXPONENTS_HPP

#include <limits>
#include <string>

namespace sgm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// 1/p with 1/inf = 0 handled explicitly.
inline double inv_exp(double p) { return p == kInf ? 0.0 : 1.0 / p; }

/// A pair (q', q) of time/space integrability exponents, each in (1, inf].
/// The time exponent comes first throughout, matching the L^{q',q} notation.
class MixedExponents {
 public:
  MixedExponents(double time_exp, double space_exp);

  double time() const { return qp_; }   // q'
  double space() const { return q_; }   // q

  /// Criticality index 1/q + 4/q' under the fourth-order parabolic scaling.
  double index() const { return inv_exp(q_) + 4.0 * inv_exp(qp_); }

 private:
  double qp_;
  double q_;
};

enum class SerrinClass {
  subcritical,
  critical,
  critical_unproven,   // index = 1 with q' = inf, q > 1
  excluded_endpoint,   // (q, q') = (1, inf)
  supercritical,
};

std::string to_string(SerrinClass c);

struct Criticality {
  double index;
  SerrinClass cls;
};

/// Classify (q', q) by the Serrin relation 1/q + 4/q' vs 1.
Criticality criticality(const MixedExponents& exps);

}  // namespace sgm

#endif
