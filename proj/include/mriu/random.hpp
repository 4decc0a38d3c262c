#pragma once

#include <cstdint>
#include <random>

#include "mriu/tensor.hpp"

namespace mriu {

/// Reproducible random stream keyed by (seed, stream id).
///
/// The pair is mixed through SplitMix64 into the seed of a private
/// mt19937_64, so distinct stream ids give independent sequences that can be
/// consumed on different threads without coordination.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Child stream i; deterministic in (seed, stream, i).
  RngStream substream(std::uint64_t i) const;

  double uniform();
  double normal();
  /// Standard complex Gaussian, E|z|^2 = 1.
  Complex complex_normal();
  std::size_t index(std::size_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

/// Haar-distributed d x d unitary (Ginibre QR with the phases of diag(R)
/// divided out; plain QR is not Haar).
ComplexMatrix haar_unitary(std::size_t d, RngStream& rng);

/// Haar-random pure state: normalized i.i.d. complex Gaussian vector.
StateTensor haar_state(const Dims& dims, RngStream& rng);

/// exp(i eps G) with G a Gaussian Hermitian matrix rescaled to unit spectral norm.
ComplexMatrix unitary_step(std::size_t d, double eps, RngStream& rng);
/// Same draw as unitary_step, written into `out` (resized as needed). d = 2
/// takes a closed-form path that consumes the random draws in the same order.
void unitary_step_into(std::size_t d, double eps, RngStream& rng, ComplexMatrix& out);

/// U exp(i eps G); eps = 0 returns U.
ComplexMatrix perturb_unitary(const ComplexMatrix& u, double eps, RngStream& rng);

/// [[sqrt p, sqrt(1-p)], [-sqrt(1-p), sqrt p]]; throws DomainError outside [0,1].
ComplexMatrix u_p(double p);

/// || U^dagger U - I ||_max
double unitarity_residual(const ComplexMatrix& u);

}  // namespace mriu
