#include "mriu/catalog.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <regex>

#include "mriu/errors.hpp"

namespace mriu {

namespace {

using Term = std::pair<const char*, Complex>;

StateTensor from_terms(std::initializer_list<Term> terms, bool renormalize) {
  const std::size_t n = std::string_view(terms.begin()->first).size();
  auto t = StateTensor::zeros(Dims(n, 2));
  for (const auto& [bits, amp] : terms) {
    std::vector<std::size_t> digits;
    for (char c : std::string_view(bits)) digits.push_back(c == '1' ? 1 : 0);
    t.at(digits) += amp;
  }
  return renormalize ? t.normalized() : t;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

const Complex kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

}  // namespace

Complex phase_pi(double t) { return std::polar(1.0, std::numbers::pi * t); }

StateTensor qubit_ket(std::string_view bits) {
  std::vector<std::size_t> digits;
  for (char c : bits) {
    if (c != '0' && c != '1') throw DomainError("qubit ket must be a bit string");
    digits.push_back(c == '1' ? 1 : 0);
  }
  if (digits.empty()) throw DomainError("empty ket");
  return StateTensor::basis(Dims(digits.size(), 2), digits);
}

StateTensor acin_state(double a1, double a2, double a3, double a4, Complex a5) {
  if (a1 < 0 || a2 < 0 || a3 < 0 || a4 < 0) throw DomainError("a1..a4 must be non-negative");
  const double n2 = a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4 + std::norm(a5);
  if (std::abs(n2 - 1.0) > kNormTol) throw NormalizationError("Acin coefficients not normalized");
  return from_terms({{"000", a1}, {"001", a2}, {"010", a3}, {"100", a4}, {"111", a5}}, false);
}

StateTensor dicke_state(std::size_t n, std::size_t k) {
  if (n == 0 || k > n) throw DomainError("Dicke state needs 0 <= k <= n, n >= 1");
  auto t = StateTensor::zeros(Dims(n, 2));
  const double amp = 1.0 / std::sqrt(static_cast<double>(binomial(n, k)));
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    if (static_cast<std::size_t>(std::popcount(flat)) == k) t[flat] = amp;
  }
  return t;
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"Sep3", {2, 2, 2}, "product state |000>"},
      {"GHZ", {2, 2, 2}, "(|000>+|111>)/sqrt2"},
      {"W", {2, 2, 2}, "(|001>+|010>+|100>)/sqrt3"},
      {"A4", {2, 2, 2}, "(|000>+|010>+|001>+|111>)/2"},
      {"A5", {2, 2, 2}, "Acin form with all five coefficients 1/sqrt5"},
      {"Phi1max", {2, 2, 2}, "numerical maximizer of S_1 (renormalized decimals)"},
      {"Phi2max", {2, 2, 2}, "numerical maximizer of S_2 (renormalized decimals)"},
      {"Sep4", {2, 2, 2, 2}, "product state |0000>"},
      {"GHZ4", {2, 2, 2, 2}, "(|0000>+|1111>)/sqrt2"},
      {"A12", {2, 2, 2, 2}, "twelve-term form with all coefficients 1/sqrt12"},
      {"HD", {2, 2, 2, 2}, "hyperdeterminant maximizer (4 single-excitation kets + sqrt2|1111>)/sqrt6"},
      {"C1", {2, 2, 2, 2}, "cluster state (|0000>+|0011>+|1100>-|1111>)/2"},
      {"C2", {2, 2, 2, 2}, "cluster state (|0000>+|0110>+|1001>-|1111>)/2"},
      {"C3", {2, 2, 2, 2}, "cluster state (|0000>+|0101>+|1010>-|1111>)/2"},
      {"L", {2, 2, 2, 2}, "Tsallis-average maximizer, four w^2 kets"},
      {"HS", {2, 2, 2, 2}, "Higuchi-Sudbery state, prefactor 1/sqrt6"},
      {"Phi4", {2, 2, 2, 2}, "sqrt(1/3) D(4,0) + sqrt(2/3) D(4,3)"},
      {"Psi1max", {2, 2, 2, 2}, "numerical maximizer of S_1 for four qubits (renormalized)"},
  };
  return entries;
}

StateTensor named_state(std::string_view name) {
  const double r2 = std::sqrt(2.0);
  if (name == "Sep3") return qubit_ket("000");
  if (name == "Sep4") return qubit_ket("0000");
  if (name == "GHZ") return from_terms({{"000", 1 / r2}, {"111", 1 / r2}}, false);
  if (name == "W") return dicke_state(3, 1);
  if (name == "A4") return from_terms({{"000", 0.5}, {"010", 0.5}, {"001", 0.5}, {"111", 0.5}}, false);
  if (name == "A5") {
    const double a = 1.0 / std::sqrt(5.0);
    return acin_state(a, a, a, a, a);
  }
  if (name == "Phi1max") {
    return from_terms({{"000", 0.27},
                       {"100", 0.377},
                       {"010", 0.326},
                       {"001", 0.363},
                       {"111", 0.740 * phase_pi(-0.79)}},
                      true);
  }
  if (name == "Phi2max") {
    return from_terms({{"000", 0.438},
                       {"100", 0.29},
                       {"010", 0.371},
                       {"001", 0.316},
                       {"111", 0.698 * phase_pi(-0.826)}},
                      true);
  }
  if (name == "GHZ4") return from_terms({{"0000", 1 / r2}, {"1111", 1 / r2}}, false);
  if (name == "A12") {
    auto t = StateTensor::zeros(Dims(4, 2));
    const double a = 1.0 / std::sqrt(12.0);
    for (std::size_t flat = 0; flat < 16; ++flat) {
      // c_{0111} = c_{1011} = c_{1101} = c_{1110} = 0
      t[flat] = std::popcount(flat) == 3 ? 0.0 : a;
    }
    return t;
  }
  if (name == "HD") {
    const double s = 1.0 / std::sqrt(6.0);
    return from_terms({{"1000", s}, {"0100", s}, {"0010", s}, {"0001", s}, {"1111", r2 * s}}, false);
  }
  if (name == "C1") return from_terms({{"0000", 0.5}, {"0011", 0.5}, {"1100", 0.5}, {"1111", -0.5}}, false);
  if (name == "C2") return from_terms({{"0000", 0.5}, {"0110", 0.5}, {"1001", 0.5}, {"1111", -0.5}}, false);
  if (name == "C3") return from_terms({{"0000", 0.5}, {"0101", 0.5}, {"1010", 0.5}, {"1111", -0.5}}, false);
  if (name == "L") {
    const double s = 1.0 / std::sqrt(12.0);
    const Complex a = s * (1.0 + kOmega);
    const Complex b = s * (1.0 - kOmega);
    const Complex c = s * kOmega * kOmega;
    return from_terms({{"0000", a}, {"1111", a}, {"0011", b}, {"1100", b},
                       {"0101", c}, {"0110", c}, {"1001", c}, {"1010", c}},
                      false);
  }
  if (name == "HS") {
    const double s = 1.0 / std::sqrt(6.0);
    const Complex w = s * kOmega;
    const Complex w2 = s * kOmega * kOmega;
    return from_terms({{"0011", s}, {"1100", s}, {"0101", w}, {"1010", w}, {"0110", w2}, {"1001", w2}},
                      false);
  }
  if (name == "Phi4") {
    auto t = dicke_state(4, 0);
    const auto d43 = dicke_state(4, 3);
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = std::sqrt(1.0 / 3.0) * t[i] + std::sqrt(2.0 / 3.0) * d43[i];
    }
    return t;
  }
  if (name == "Psi1max") {
    return from_terms({{"0000", 0.630},
                       {"1100", 0.281},
                       {"1010", 0.202},
                       {"0110", 0.24},
                       {"1110", 0.232 * phase_pi(0.494)},
                       {"1001", 0.059},
                       {"0101", 0.282},
                       {"1101", 0.346 * phase_pi(-0.362)},
                       {"0011", 0.304},
                       {"1011", 0.218 * phase_pi(0.626)},
                       {"0111", 0.054 * phase_pi(-0.725)},
                       {"1111", 0.164 * phase_pi(0.372)}},
                      true);
  }
  static const std::regex dicke(R"(D\((\d+),(\d+)\))");
  std::cmatch m;
  const std::string s(name);
  if (std::regex_match(s.c_str(), m, dicke)) {
    return dicke_state(std::stoul(m[1].str()), std::stoul(m[2].str()));
  }
  throw DomainError("unknown state '" + s + "'");
}

}  // namespace mriu
