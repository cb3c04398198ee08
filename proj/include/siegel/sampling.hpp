#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "siegel/linalg.hpp"
#include "siegel/symplectic.hpp"

namespace siegel {

using Rng = std::mt19937_64;

/// Independent, reproducible seed for shard `index` of a sweep seeded with `seed`.
std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t index);

double uniform(Rng& rng, double lo, double hi);
double log_uniform(Rng& rng, double lo, double hi);

/// Haar-ish orthogonal matrix from Gram-Schmidt on a Gaussian matrix.
RealMatrix random_orthogonal(std::size_t n, Rng& rng);
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

/// Q diag(mu) Qᵀ with mu log-uniform in [lo, hi].
SymMatrix random_spd(std::size_t n, Rng& rng, double lo = 1e-2, double hi = 1e2);
/// Symmetric with entries uniform in [lo, hi].
SymMatrix random_symmetric(std::size_t n, Rng& rng, double lo, double hi);

/// Im Z eigenvalues log-uniform in [1e-2, 1e2], Re Z entries uniform in [-5, 5].
SiegelPoint random_adversarial_point(std::size_t n, Rng& rng);

/// An adversarial point pushed into the fundamental domain.
SiegelPoint random_fundamental_point(std::size_t n, Rng& rng);

/// (A, B; -B, A) with A + iB a random unitary.
SymplecticMatrix random_maximal_compact(std::size_t n, Rng& rng);

/// Product of `length` random real generators: translations, GL_n embeddings and the inversion.
SymplecticMatrix random_symplectic(std::size_t n, Rng& rng, int length = 3);

/// diag(t, ..., t, 1/t, ..., 1/t)
SymplecticMatrix diagonal_ray(std::size_t n, double t);

/// Degree-one points x + iy with x on a uniform grid of `nx` intervals over
/// [-1/2, 1/2] and y on a log grid of `ny` intervals over [y_min, y_max].
/// Refining both interval counts by integer factors yields a superset.
std::vector<SiegelPoint> vertical_strip_grid(double y_min, double y_max, int nx, int ny);

}  // namespace siegel
