#include "subgeo/random.hpp"

#include <cmath>

namespace subgeo {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform() {
  return (next_u64() >> 11) * 0x1.0p-53;
}

int Rng::uniform_int(int lo, int hi) {
  const int span = hi - lo + 1;
  return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(span));
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

Complex Rng::scalar(Field field) {
  if (field == Field::Real) return Complex(normal(), 0.0);
  return Complex(normal() * M_SQRT1_2, normal() * M_SQRT1_2);
}

Rng Rng::for_trial(std::uint64_t seed, long trial) {
  std::uint64_t s = seed;
  std::uint64_t mixed = splitmix64(s) ^ (0xA0761D6478BD642Full * (std::uint64_t(trial) + 1));
  return Rng(mixed);
}

Subspace random_subspace(int n, int p, Field field, Rng& rng) {
  if (p < 0 || p > n) throw std::invalid_argument("dimension out of range");
  if (p == 0) return Subspace::zero(n, field);
  Matrix m(n, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = rng.scalar(field);
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(n, p);
  return Subspace::from_orthonormal(std::move(q), field);
}

Subspace random_subspace(int n, int p, Field field, std::uint64_t seed) {
  Rng rng(seed);
  return random_subspace(n, p, field, rng);
}

Subspace random_subspace_of(const Subspace& whole, int p, Rng& rng) {
  if (p < 0 || p > whole.dim())
    throw std::invalid_argument("dimension out of range");
  if (p == 0) return Subspace::zero(whole.ambient(), whole.field());
  Matrix coeff(whole.dim(), p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < whole.dim(); ++i) coeff(i, j) = rng.scalar(whole.field());
  return Subspace::from_spanning(whole.basis() * coeff, whole.field());
}

Vector random_unit(int n, Field field, Rng& rng) {
  Vector v(n);
  double len = 0.0;
  while (len == 0.0) {
    for (int i = 0; i < n; ++i) v(i) = rng.scalar(field);
    len = v.norm();
  }
  return v / len;
}

}  // namespace subgeo
