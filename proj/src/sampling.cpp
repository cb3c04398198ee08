#include "siegel/sampling.hpp"

#include <cmath>

namespace siegel {

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over a combined state
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

namespace {

template <class T, class Draw>
Matrix<T> gram_schmidt(std::size_t n, Draw draw) {
  Matrix<T> q(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    double len = 0.0;
    do {
      for (std::size_t r = 0; r < n; ++r) q(r, c) = draw();
      for (std::size_t prev = 0; prev < c; ++prev) {
        T dot{};
        for (std::size_t r = 0; r < n; ++r) {
          if constexpr (std::is_same_v<T, Complex>) {
            dot += std::conj(q(r, prev)) * q(r, c);
          } else {
            dot += q(r, prev) * q(r, c);
          }
        }
        for (std::size_t r = 0; r < n; ++r) q(r, c) -= dot * q(r, prev);
      }
      len = 0.0;
      for (std::size_t r = 0; r < n; ++r) len += std::norm(q(r, c));
      len = std::sqrt(len);
    } while (len < 1e-6);
    for (std::size_t r = 0; r < n; ++r) q(r, c) /= len;
  }
  return q;
}

}  // namespace

RealMatrix random_orthogonal(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  return gram_schmidt<double>(n, [&] { return normal(rng); });
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal;
  return gram_schmidt<Complex>(n, [&] {
    const double re = normal(rng);
    return Complex(re, normal(rng));
  });
}

SymMatrix random_spd(std::size_t n, Rng& rng, double lo, double hi) {
  const RealMatrix q = random_orthogonal(n, rng);
  RealMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = log_uniform(rng, lo, hi);
  return SymMatrix(q * d * q.transpose(), 1e-8);
}

SymMatrix random_symmetric(std::size_t n, Rng& rng, double lo, double hi) {
  SymMatrix s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) s.set(i, j, uniform(rng, lo, hi));
  return s;
}

SiegelPoint random_adversarial_point(std::size_t n, Rng& rng) {
  SymMatrix y = random_spd(n, rng);
  return SiegelPoint(random_symmetric(n, rng, -5.0, 5.0), std::move(y));
}

SiegelPoint random_fundamental_point(std::size_t n, Rng& rng) {
  return reduce_to_fundamental(random_adversarial_point(n, rng)).reduced;
}

SymplecticMatrix random_maximal_compact(std::size_t n, Rng& rng) {
  return SymplecticMatrix::from_unitary(random_unitary(n, rng));
}

SymplecticMatrix random_symplectic(std::size_t n, Rng& rng, int length) {
  SymplecticMatrix g = SymplecticMatrix::identity(n);
  for (int step = 0; step < length; ++step) {
    const int kind = std::uniform_int_distribution<int>(0, 2)(rng);
    if (kind == 0) {
      g = g * SymplecticMatrix::translation(random_symmetric(n, rng, -1.0, 1.0));
    } else if (kind == 1) {
      const RealMatrix q = random_orthogonal(n, rng);
      RealMatrix d(n, n);
      for (std::size_t i = 0; i < n; ++i) d(i, i) = log_uniform(rng, 0.5, 2.0);
      g = g * SymplecticMatrix::embed_gl(q * d);
    } else {
      g = g * SymplecticMatrix::inversion(n);
    }
  }
  return g;
}

SymplecticMatrix diagonal_ray(std::size_t n, double t) {
  RealMatrix g(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = t;
    g(n + i, n + i) = 1.0 / t;
  }
  return SymplecticMatrix(std::move(g));
}

std::vector<SiegelPoint> vertical_strip_grid(double y_min, double y_max, int nx, int ny) {
  std::vector<SiegelPoint> pts;
  const double span = std::log(y_max / y_min);
  for (int iy = 0; iy <= ny; ++iy) {
    const double y = y_min * std::exp(span * iy / ny);
    for (int ix = 0; ix <= nx; ++ix) {
      const double x = -0.5 + static_cast<double>(ix) / nx;
      pts.emplace_back(SymMatrix{{x}}, SymMatrix{{y}});
    }
  }
  return pts;
}

}  // namespace siegel
