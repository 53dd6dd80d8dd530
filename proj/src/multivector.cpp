#include "subgeo/multivector.hpp"

#include <bit>
#include <cmath>
#include <vector>

namespace subgeo {

namespace {

int popcount(std::uint32_t x) { return std::popcount(x); }

// Inversions between the sorted sets i and j: pairs (a in i, b in j) with a > b.
// (-1)^inversions is the sign relating e_i ^ e_j to e_{i|j}.
int merge_sign(std::uint32_t i, std::uint32_t j) {
  int inv = 0;
  std::uint32_t jj = j;
  while (jj) {
    const int b = std::countr_zero(jj);
    inv += popcount(i >> (b + 1));
    jj &= jj - 1;
  }
  return (inv & 1) ? -1 : 1;
}

void check_same_space(const Multivector& a, const Multivector& b) {
  if (a.ambient() != b.ambient())
    throw std::invalid_argument("ambient dimension mismatch");
  if (a.field() != b.field()) throw std::invalid_argument("field mismatch");
}

}  // namespace

Multivector::Multivector(int ambient, Field field)
    : ambient_(ambient), field_(field) {
  if (ambient < 0 || ambient > 32)
    throw std::invalid_argument("ambient dimension must be in [0, 32]");
}

Multivector Multivector::scalar(int ambient, Field field, Complex value) {
  Multivector m(ambient, field);
  m.add_term(0, value);
  return m;
}

Multivector Multivector::from_vector(const Vector& v, Field field) {
  Multivector m(static_cast<int>(v.size()), field);
  for (int k = 0; k < v.size(); ++k) m.add_term(1u << k, v(k));
  return m;
}

Complex Multivector::coefficient(std::uint32_t bits) const {
  auto it = terms_.find(bits);
  return it == terms_.end() ? Complex(0, 0) : it->second;
}

void Multivector::add_term(std::uint32_t bits, Complex c) {
  if (ambient_ < 32 && (bits >> ambient_) != 0)
    throw std::invalid_argument("index set outside ambient space");
  if (c == Complex(0, 0)) return;
  auto [it, inserted] = terms_.try_emplace(bits, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0, 0)) terms_.erase(it);
  }
}

int Multivector::grade() const {
  int g = -1;
  for (const auto& [bits, c] : terms_) {
    const int k = popcount(bits);
    if (g == -1) g = k;
    else if (g != k) return -1;
  }
  return g;
}

bool Multivector::is_homogeneous() const { return !terms_.empty() && grade() >= 0; }

Multivector Multivector::grade_part(int k) const {
  Multivector out(ambient_, field_);
  for (const auto& [bits, c] : terms_)
    if (popcount(bits) == k) out.add_term(bits, c);
  return out;
}

Multivector Multivector::operator+(const Multivector& rhs) const {
  check_same_space(*this, rhs);
  Multivector out = *this;
  for (const auto& [bits, c] : rhs.terms_) out.add_term(bits, c);
  return out;
}

Multivector Multivector::operator-(const Multivector& rhs) const {
  check_same_space(*this, rhs);
  Multivector out = *this;
  for (const auto& [bits, c] : rhs.terms_) out.add_term(bits, -c);
  return out;
}

Multivector Multivector::operator*(Complex c) const {
  Multivector out(ambient_, field_);
  if (c == Complex(0, 0)) return out;
  for (const auto& [bits, coeff] : terms_) out.add_term(bits, coeff * c);
  return out;
}

Multivector wedge(const Multivector& a, const Multivector& b) {
  check_same_space(a, b);
  Multivector out(a.ambient(), a.field());
  for (const auto& [i, ca] : a.terms()) {
    for (const auto& [j, cb] : b.terms()) {
      if (i & j) continue;
      out.add_term(i | j, double(merge_sign(i, j)) * ca * cb);
    }
  }
  return out;
}

Complex inner(const Multivector& a, const Multivector& b) {
  check_same_space(a, b);
  Complex s(0, 0);
  for (const auto& [bits, ca] : a.terms()) s += std::conj(ca) * b.coefficient(bits);
  return s;
}

double norm(const Multivector& a) {
  double s = 0.0;
  for (const auto& [bits, c] : a.terms()) s += std::norm(c);
  return std::sqrt(s);
}

Multivector contraction(const Multivector& a, const Multivector& b) {
  check_same_space(a, b);
  Multivector out(a.ambient(), a.field());
  for (const auto& [i, ca] : a.terms()) {
    for (const auto& [j, cb] : b.terms()) {
      if ((i & j) != i) continue;  // need i subset of j
      const std::uint32_t rest = j & ~i;
      out.add_term(rest, double(merge_sign(i, rest)) * std::conj(ca) * cb);
    }
  }
  return out;
}

Multivector project_multivector(const Subspace& w, const Multivector& a) {
  if (w.ambient() != a.ambient())
    throw std::invalid_argument("ambient dimension mismatch");
  if (w.field() != a.field()) throw std::invalid_argument("field mismatch");
  const int n = a.ambient();
  // Projections of the coordinate vectors, as grade-1 elements.
  std::vector<Multivector> pu;
  pu.reserve(n);
  Matrix p = w.basis() * w.basis().adjoint();  // n x n
  for (int k = 0; k < n; ++k)
    pu.push_back(Multivector::from_vector(p.col(k), a.field()));
  Multivector out(n, a.field());
  for (const auto& [bits, c] : a.terms()) {
    Multivector term = Multivector::scalar(n, a.field(), c);
    std::uint32_t bb = bits;
    while (bb) {
      const int k = std::countr_zero(bb);
      term = wedge(term, pu[k]);
      if (term.is_zero()) break;
      bb &= bb - 1;
    }
    out = out + term;
  }
  return out;
}

Multivector blade_of(const Subspace& v) {
  Multivector out = Multivector::scalar(v.ambient(), v.field(), Complex(1, 0));
  for (int j = 0; j < v.dim(); ++j)
    out = wedge(out, Multivector::from_vector(v.basis().col(j), v.field()));
  return out;
}

Subspace blade_span(const Multivector& b, const Tolerances& tol) {
  if (b.is_zero()) throw std::invalid_argument("zero blade has no span");
  const int g = b.grade();
  if (g < 0) throw std::invalid_argument("mixed-grade element is not a blade");
  const int n = b.ambient();
  if (g == 0) return Subspace::zero(n, b.field());
  if (g == n) return Subspace::full(n, b.field());

  // x spans iff wedge(x, b) = 0; collect the matrix of x -> x ^ b over the
  // coordinate (g+1)-sets actually reachable and take its null space.
  std::vector<Multivector> cols;
  cols.reserve(n);
  std::map<std::uint32_t, int> row_index;
  for (int k = 0; k < n; ++k) {
    Multivector col = wedge(Multivector::from_vector(Vector::Unit(n, k), b.field()), b);
    for (const auto& [bits, c] : col.terms())
      row_index.try_emplace(bits, static_cast<int>(row_index.size()));
    cols.push_back(std::move(col));
  }
  Matrix m = Matrix::Zero(std::max<std::size_t>(row_index.size(), 1), n);
  for (int k = 0; k < n; ++k)
    for (const auto& [bits, c] : cols[k].terms()) m(row_index.at(bits), k) = c;

  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut =
      tol.effective_rank_rel(static_cast<int>(m.rows()), n) * (sv.size() ? sv(0) : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  const int nullity = n - rank;
  if (nullity != g) throw std::invalid_argument("element is not decomposable");
  return Subspace::from_orthonormal(svd.matrixV().rightCols(nullity), b.field());
}

}  // namespace subgeo
