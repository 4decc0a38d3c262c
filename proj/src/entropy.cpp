#include "mriu/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mriu/errors.hpp"

namespace mriu {

RenyiOrder::RenyiOrder(double q) : q_(q) {
  if (!(q >= 0.0)) throw DomainError("Renyi order must be >= 0");
}

RenyiOrder RenyiOrder::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") return infinity();
  std::size_t used = 0;
  double q = 0.0;
  try {
    q = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DomainError("cannot parse Renyi order '" + text + "'");
  }
  if (used != text.size()) throw DomainError("cannot parse Renyi order '" + text + "'");
  return RenyiOrder(q);
}

std::string RenyiOrder::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os << q_;
  return os.str();
}

double renyi(std::span<const double> p, RenyiOrder order) {
  double pmax = 0.0;
  for (double x : p) pmax = std::max(pmax, x);
  if (!(pmax > 0.0)) return 0.0;
  const double q = order.value();

  if (order.is_infinite()) return -std::log(pmax);
  if (q == 0.0) {
    const double cut = kSupportThreshold * pmax;
    std::size_t support = 0;
    for (double x : p) support += x > cut ? 1 : 0;
    return std::log(static_cast<double>(support));
  }
  if (q == 1.0) {
    double s = 0.0;
    for (double x : p) {
      if (x > 0.0) s -= x * std::log(x);
    }
    return std::max(s, 0.0);
  }
  // log sum p^q = q log pmax + log sum (p/pmax)^q
  const double inv = 1.0 / pmax;
  double s = 0.0;
  if (q == 2.0) {
    for (double x : p) {
      const double r = x * inv;
      s += r * r;
    }
  } else {
    for (double x : p) {
      if (x > 0.0) s += std::pow(x * inv, q);
    }
  }
  const double value = (q * std::log(pmax) + std::log(s)) / (1.0 - q);
  return std::max(value, 0.0);
}

double renyi(const ProbVector& p, RenyiOrder q) { return renyi(p.probs(), q); }

LimitCheck renyi_limits_check(const ProbVector& p, double q0) {
  constexpr double h = 1e-5;
  constexpr double tol = 1e-3;
  if (q0 != 0.0 && q0 != 1.0) throw DomainError("limit check supports q0 in {0, 1}");
  LimitCheck out{};
  out.limit = renyi(p, RenyiOrder(q0));
  out.above = renyi(p, RenyiOrder(q0 + h));
  out.below = q0 == 0.0 ? out.limit : renyi(p, RenyiOrder(q0 - h));
  if (std::abs(out.above - out.limit) > tol || std::abs(out.below - out.limit) > tol) {
    throw NumericalError("Renyi entropy disagrees with its limit at q0");
  }
  return out;
}

}  // namespace mriu
