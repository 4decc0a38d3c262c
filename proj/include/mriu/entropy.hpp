#pragma once

#include <limits>
#include <span>
#include <string>

#include "mriu/tensor.hpp"

namespace mriu {

/// Renyi parameter q in [0, inf]; infinity is stored as +inf.
class RenyiOrder {
 public:
  /// Throws DomainError for q < 0 or NaN.
  explicit RenyiOrder(double q);
  static RenyiOrder infinity() { return RenyiOrder(std::numeric_limits<double>::infinity()); }
  /// Accepts a real literal or "inf"/"infinity".
  static RenyiOrder parse(const std::string& text);

  double value() const noexcept { return q_; }
  bool is_infinite() const noexcept { return q_ == std::numeric_limits<double>::infinity(); }
  std::string to_string() const;

 private:
  double q_;
};

/// Entries below this fraction of max(p) are outside the support for q = 0.
inline constexpr double kSupportThreshold = 1e-12;

/// Renyi entropy in nats. q=0 counts the support, q=1 is Shannon with
/// 0 log 0 = 0, q=inf is -log max p. Finite q factors out max p before
/// exponentiating so q=100 stays finite for entries down to 1e-300.
/// No validation of p; use the ProbVector overload for checked input.
double renyi(std::span<const double> p, RenyiOrder q);
double renyi(const ProbVector& p, RenyiOrder q);

struct LimitCheck {
  double limit;  ///< closed-form value at q0
  double below;  ///< S_{q0 - 1e-5}; equals `limit` when q0 = 0
  double above;  ///< S_{q0 + 1e-5}
};

/// Evaluates S at q0 +/- 1e-5 (q0 in {0,1}) and throws NumericalError if
/// either side differs from the closed-form limit by more than 1e-3.
LimitCheck renyi_limits_check(const ProbVector& p, double q0 = 1.0);

}  // namespace mriu
