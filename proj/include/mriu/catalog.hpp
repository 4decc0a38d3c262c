#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "mriu/tensor.hpp"

namespace mriu {

struct CatalogEntry {
  std::string name;
  Dims dims;
  std::string description;
};

/// All fixed names accepted by named_state, in listing order. Dicke states
/// are additionally accepted as "D(n,k)".
const std::vector<CatalogEntry>& catalog_entries();

/// Throws DomainError for unknown names.
StateTensor named_state(std::string_view name);

/// a1|000> + a2|001> + a3|010> + a4|100> + a5|111>; a1..a4 must be >= 0 and
/// sum |a_i|^2 = 1 within 1e-10 (NormalizationError otherwise).
StateTensor acin_state(double a1, double a2, double a3, double a4, Complex a5);

/// Uniform superposition of the weight-k kets of n qubits.
StateTensor dicke_state(std::size_t n, std::size_t k);

/// Qubit ket from a bit string such as "0110".
StateTensor qubit_ket(std::string_view bits);

/// exp(i pi t)
Complex phase_pi(double t);

}  // namespace mriu
