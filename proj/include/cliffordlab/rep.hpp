#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cliffordlab/blade_algebra.hpp"
#include "cliffordlab/linear_algebra.hpp"
#include "cliffordlab/matrix.hpp"

namespace cliffordlab {

enum class Flavor { Dirac, PauliPlus, PauliMinus, Custom };

inline std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::Dirac: return "Dirac";
    case Flavor::PauliPlus: return "PauliPlus";
    case Flavor::PauliMinus: return "PauliMinus";
    case Flavor::Custom: return "Custom";
  }
  return "Custom";
}

inline Flavor parse_flavor(std::string_view text) {
  for (Flavor f : {Flavor::Dirac, Flavor::PauliPlus, Flavor::PauliMinus, Flavor::Custom})
    if (to_string(f) == text) return f;
  throw std::invalid_argument("unknown flavor: " + std::string(text));
}

inline std::size_t irrep_dimension(const Signature& sig) { return std::size_t{1} << (sig.dim() / 2); }

// Intertwiners between two families of matrices: all T with
// T * from[i] = to[i] * T for every i. T has to[0].rows() rows and
// from[0].rows() columns.
template <ExactScalar T>
std::vector<Matrix<T>> intertwiners(const std::vector<Matrix<T>>& from, const std::vector<Matrix<T>>& to,
                                    std::size_t from_dim, std::size_t to_dim) {
  if (from.size() != to.size()) throw std::invalid_argument("intertwiners: family sizes differ");
  const std::size_t unknowns = to_dim * from_dim;
  auto index = [from_dim](std::size_t r, std::size_t c) { return r * from_dim + c; };
  RowReducer<T> reducer(unknowns);
  for (std::size_t g = 0; g < from.size(); ++g) {
    const Matrix<T>& a = from[g];
    const Matrix<T>& b = to[g];
    for (std::size_t r = 0; r < to_dim; ++r)
      for (std::size_t c = 0; c < from_dim; ++c) {
        SparseRow<T> row;
        for (std::size_t k = 0; k < from_dim; ++k)
          if (!scalar_traits<T>::is_zero(a(k, c))) row.emplace_back(index(r, k), a(k, c));
        for (std::size_t k = 0; k < to_dim; ++k)
          if (!scalar_traits<T>::is_zero(b(r, k))) row.emplace_back(index(k, c), -b(r, k));
        reducer.add_row(std::move(row));
      }
  }
  std::vector<Matrix<T>> basis;
  for (auto& v : reducer.nullspace()) {
    Matrix<T> m(to_dim, from_dim);
    for (std::size_t r = 0; r < to_dim; ++r)
      for (std::size_t c = 0; c < from_dim; ++c) m(r, c) = v[index(r, c)];
    basis.push_back(std::move(m));
  }
  return basis;
}

template <ExactScalar T>
std::vector<Matrix<T>> commutant_basis(const std::vector<Matrix<T>>& gens, std::size_t dim) {
  return intertwiners(gens, gens, dim, dim);
}

// First invertible element of a linear space of square matrices, trying the
// basis elements and then a fixed sequence of integer combinations.
template <ExactScalar T>
std::optional<Matrix<T>> first_invertible(const std::vector<Matrix<T>>& basis) {
  if (basis.empty() || !basis.front().square()) return std::nullopt;
  for (const auto& b : basis)
    if (!scalar_traits<T>::is_zero(determinant(b))) return b;
  for (int shift = 1; shift <= 8; ++shift) {
    Matrix<T> combo(basis.front().rows(), basis.front().cols());
    for (std::size_t k = 0; k < basis.size(); ++k) combo += basis[k] * T(static_cast<long>(1 + (k * shift) % 7));
    if (!scalar_traits<T>::is_zero(determinant(combo))) return combo;
  }
  return std::nullopt;
}

// Complex Clifford representation given by generator matrices G_i = gamma(e_i).
class MatrixRep {
 public:
  static MatrixRep make(Signature sig, std::vector<CMatrix> generators, Flavor flavor = Flavor::Custom) {
    if (generators.size() != static_cast<std::size_t>(sig.dim()))
      throw std::invalid_argument("representation needs one generator per basis vector");
    const std::size_t n = generators.front().rows();
    if (n == 0) throw std::invalid_argument("representation module must be non-zero");
    for (const auto& g : generators)
      if (g.rows() != n || g.cols() != n) throw std::invalid_argument("generators must be square of a common size");
    const CMatrix id = CMatrix::identity(n);
    for (int i = 0; i < sig.dim(); ++i)
      for (int j = i; j < sig.dim(); ++j) {
        CMatrix anti = generators[i] * generators[j] + generators[j] * generators[i];
        CMatrix expected = i == j ? id * GaussianRational(2 * sig.metric(i)) : CMatrix(n, n);
        if (anti != expected)
          throw std::invalid_argument("generator relation fails for pair (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ")");
      }
    MatrixRep rep(sig, std::move(generators), flavor);
    rep.check_flavor();
    return rep;
  }

  const Signature& sig() const { return sig_; }
  std::size_t n() const { return generators_.front().rows(); }
  Flavor flavor() const { return flavor_; }
  const std::vector<CMatrix>& generators() const { return generators_; }
  const CMatrix& generator(int k) const { return generators_.at(k); }

  // gamma(v) for a real or complex vector v.
  CMatrix vector_image(const std::vector<GaussianRational>& v) const {
    CMatrix out(n(), n());
    for (int k = 0; k < sig_.dim(); ++k)
      if (!v[k].is_zero()) out += generators_[k] * v[k];
    return out;
  }

  CMatrix blade_image(Blade b) const {
    CMatrix out = CMatrix::identity(n());
    for (int k = 0; k < sig_.dim(); ++k)
      if (b >> k & 1u) out = out * generators_[k];
    return out;
  }

  // All 2^d blade images, indexed by blade mask.
  std::vector<CMatrix> blade_images() const {
    std::vector<CMatrix> out(sig_.blade_count());
    out[0] = CMatrix::identity(n());
    for (Blade b = 1; b < sig_.blade_count(); ++b) {
      int top = 31 - std::countl_zero(b);
      out[b] = out[b & ~(Blade{1} << top)] * generators_[top];
    }
    return out;
  }

 private:
  MatrixRep(Signature sig, std::vector<CMatrix> generators, Flavor flavor)
      : sig_(sig), generators_(std::move(generators)), flavor_(flavor) {}

  void check_flavor() const {
    if (flavor_ == Flavor::Custom) return;
    if (flavor_ == Flavor::Dirac) {
      if (sig_.odd()) throw std::invalid_argument("Dirac flavor requires even dimension");
      if (n() != irrep_dimension(sig_)) throw std::invalid_argument("Dirac module has the wrong dimension");
      return;
    }
    if (!sig_.odd()) throw std::invalid_argument("Pauli flavor requires odd dimension");
    if (n() != irrep_dimension(sig_)) throw std::invalid_argument("Pauli module has the wrong dimension");
    CMatrix expected = CMatrix::identity(n());
    if (flavor_ == Flavor::PauliMinus) expected = -expected;
    CMatrix nu_image = blade_image(top_blade(sig_)) * volume_branch(*sig_.sigma());
    if (nu_image != expected) throw std::invalid_argument("complex volume element does not act as the flavor sign");
  }

  Signature sig_;
  std::vector<CMatrix> generators_;
  Flavor flavor_;
};

namespace detail {

inline CMatrix pauli_x() { return CMatrix{{0, 1}, {1, 0}}; }
inline CMatrix pauli_y() {
  return CMatrix{{GaussianRational(0), GaussianRational(Rational(0), Rational(-1))}, {GaussianRational::i(), GaussianRational(0)}};
}
inline CMatrix pauli_z() { return CMatrix{{1, 0}, {0, -1}}; }

// 2m Hermitian matrices of size 2^m squaring to Id and pairwise anticommuting.
inline std::vector<CMatrix> euclidean_generators(int m) {
  std::vector<CMatrix> out;
  for (int k = 0; k < m; ++k) {
    CMatrix left = CMatrix::identity(1);
    for (int j = 0; j < k; ++j) left = kron(left, pauli_z());
    CMatrix right = CMatrix::identity(std::size_t{1} << (m - k - 1));
    out.push_back(kron(kron(left, pauli_x()), right));
    out.push_back(kron(kron(left, pauli_y()), right));
  }
  return out;
}

}  // namespace detail

// Irreducible representation. Even d = 2m uses the iterated tensor
// construction with a factor i on every generator of negative square; odd d
// appends c * G_1 ... G_{2m} with c chosen to fix the square and the flavor.
inline MatrixRep build_irrep(const Signature& sig, Flavor flavor) {
  if (flavor == Flavor::Custom) throw std::invalid_argument("build_irrep: Custom is not an irreducible flavor");
  if (flavor == Flavor::Dirac && sig.odd()) throw std::invalid_argument("Dirac representation requires even dimension");
  if (flavor != Flavor::Dirac && !sig.odd()) throw std::invalid_argument("Pauli representations require odd dimension");
  const int m = sig.dim() / 2;
  std::vector<CMatrix> gens = detail::euclidean_generators(m);
  for (int k = 0; k < 2 * m; ++k)
    if (sig.metric(k) < 0) gens[k] = gens[k] * GaussianRational::i();
  if (sig.odd()) {
    const std::size_t n = std::size_t{1} << m;
    CMatrix product = CMatrix::identity(n);
    for (const auto& g : gens) product = product * g;
    // product^2 = s Id with s = +-1, so c^2 = h_dd * s
    const GaussianRational s = (product * product)(0, 0);
    const int last = sig.dim() - 1;
    GaussianRational c = (s * GaussianRational(sig.metric(last))).is_one() ? GaussianRational(1) : GaussianRational::i();
    CMatrix candidate = product * c;
    CMatrix nu_image = product * candidate * volume_branch(*sig.sigma());
    const bool acts_as_plus = nu_image(0, 0).is_one();
    if (acts_as_plus != (flavor == Flavor::PauliPlus)) candidate = -candidate;
    gens.push_back(std::move(candidate));
  }
  return MatrixRep::make(sig, std::move(gens), flavor);
}

inline std::vector<Flavor> irrep_flavors(const Signature& sig) {
  if (sig.odd()) return {Flavor::PauliPlus, Flavor::PauliMinus};
  return {Flavor::Dirac};
}

// Complex-linear extension of the representation to the algebra.
inline CMatrix evaluate(const MatrixRep& rep, const CliffordElement& a) {
  require_same(rep.sig(), a.sig(), "evaluate");
  CMatrix out(rep.n(), rep.n());
  for (const auto& [b, c] : a.terms()) out += rep.blade_image(b) * c;
  return out;
}

namespace detail {

inline SparseRow<GaussianRational> flatten(const CMatrix& m) {
  SparseRow<GaussianRational> row;
  for (std::size_t k = 0; k < m.data().size(); ++k)
    if (!m.data()[k].is_zero()) row.emplace_back(k, m.data()[k]);
  return row;
}

// Real coordinates (real parts, then imaginary parts) of a complex matrix.
inline SparseRow<Rational> flatten_real(const CMatrix& m) {
  SparseRow<Rational> row;
  const std::size_t size = m.data().size();
  for (std::size_t k = 0; k < size; ++k)
    if (sgn(m.data()[k].re) != 0) row.emplace_back(k, m.data()[k].re);
  for (std::size_t k = 0; k < size; ++k)
    if (sgn(m.data()[k].im) != 0) row.emplace_back(size + k, m.data()[k].im);
  return row;
}

}  // namespace detail

// gamma restricted to V is injective: rank d over the 2n^2 real coordinates.
inline bool weak_faithful(const MatrixRep& rep) {
  RowReducer<Rational> reducer(2 * rep.n() * rep.n());
  for (const auto& g : rep.generators()) reducer.add_row(detail::flatten_real(g));
  return reducer.rank() == static_cast<std::size_t>(rep.sig().dim());
}

inline std::size_t evaluation_rank(const MatrixRep& rep, bool even_only = false) {
  RowReducer<GaussianRational> reducer(rep.n() * rep.n());
  auto images = rep.blade_images();
  for (Blade b = 0; b < images.size(); ++b) {
    if (even_only && grade(b) % 2) continue;
    reducer.add_row(detail::flatten(images[b]));
  }
  return reducer.rank();
}

inline std::size_t kernel_dim(const MatrixRep& rep) { return rep.sig().blade_count() - evaluation_rank(rep); }

// Basis of ker(gamma_C) as algebra elements.
inline std::vector<CliffordElement> kernel_basis(const MatrixRep& rep) {
  const std::size_t blades = rep.sig().blade_count();
  const std::size_t entries = rep.n() * rep.n();
  auto images = rep.blade_images();
  // rows: matrix entries; columns: blade coefficients
  RowReducer<GaussianRational> reducer(blades);
  for (std::size_t e = 0; e < entries; ++e) {
    SparseRow<GaussianRational> row;
    for (Blade b = 0; b < blades; ++b)
      if (!images[b].data()[e].is_zero()) row.emplace_back(b, images[b].data()[e]);
    reducer.add_row(std::move(row));
  }
  std::vector<CliffordElement> out;
  for (auto& v : reducer.nullspace()) {
    CliffordElement x(rep.sig());
    for (Blade b = 0; b < blades; ++b) x.accumulate(b, v[b]);
    out.push_back(std::move(x));
  }
  return out;
}

// The kernel of a Pauli representation coincides, as a subspace, with the
// ideal cut out by the opposite projector.
inline bool kernel_equals_ideal(const MatrixRep& rep) {
  if (rep.flavor() != Flavor::PauliPlus && rep.flavor() != Flavor::PauliMinus)
    throw std::invalid_argument("kernel_equals_ideal requires a Pauli representation");
  const Signature& sig = rep.sig();
  auto [plus, minus] = ideal_projectors(sig);
  const CliffordElement& killed = rep.flavor() == Flavor::PauliPlus ? minus : plus;
  RowReducer<GaussianRational> ideal(sig.blade_count());
  for (Blade b = 0; b < sig.blade_count(); ++b) {
    auto y = killed * CliffordElement::blade(sig, b);
    ideal.add_row(SparseRow<GaussianRational>(y.terms().begin(), y.terms().end()));
  }
  auto kernel = kernel_basis(rep);
  if (kernel.size() != ideal.rank()) return false;
  for (const auto& x : kernel)
    if (!ideal.in_span(SparseRow<GaussianRational>(x.terms().begin(), x.terms().end()))) return false;
  return true;
}

// The even subalgebra maps bijectively onto End(S).
inline bool even_iso_check(const MatrixRep& rep) {
  if (!rep.sig().odd()) throw std::invalid_argument("even_iso_check requires odd dimension");
  if (rep.flavor() != Flavor::PauliPlus && rep.flavor() != Flavor::PauliMinus)
    throw std::invalid_argument("even_iso_check requires a Pauli representation");
  const std::size_t even_count = rep.sig().blade_count() / 2;
  return even_count == rep.n() * rep.n() && evaluation_rank(rep, true) == even_count;
}

inline std::vector<CMatrix> complex_commutant(const MatrixRep& rep) {
  return commutant_basis(rep.generators(), rep.n());
}

inline bool irreducible(const MatrixRep& rep) { return complex_commutant(rep).size() == 1; }

struct PauliFlip {
  Isometry phi0;
  MatrixRep flipped;
};

// The unbased isomorphism (-id_V, id_S) between the two Pauli
// representations: generators change sign, the flavor flips.
inline PauliFlip pauli_flip(const MatrixRep& rep) {
  Flavor target;
  if (rep.flavor() == Flavor::PauliPlus)
    target = Flavor::PauliMinus;
  else if (rep.flavor() == Flavor::PauliMinus)
    target = Flavor::PauliPlus;
  else
    throw std::invalid_argument("pauli_flip requires a Pauli representation");
  std::vector<CMatrix> gens;
  for (const auto& g : rep.generators()) gens.push_back(-g);
  return {Isometry::minus_identity(rep.sig()), MatrixRep::make(rep.sig(), std::move(gens), target)};
}

// flipped(e_b) = rep(parity(e_b)) on every blade.
inline bool flip_matches_parity(const MatrixRep& rep, const MatrixRep& flipped) {
  require_same(rep.sig(), flipped.sig(), "flip_matches_parity");
  auto a = rep.blade_images();
  auto b = flipped.blade_images();
  for (Blade k = 0; k < a.size(); ++k) {
    const CMatrix expected = grade(k) % 2 ? CMatrix(-a[k]) : a[k];
    if (b[k] != expected) return false;
  }
  return true;
}

struct InducedSpace {
  std::vector<CMatrix> basis;
  QMatrix gram;
};

// W = gamma(V) with the form recovered from w_i w_j + w_j w_i = 2 mu_ij Id.
inline InducedSpace induced_space(const MatrixRep& rep) {
  if (!weak_faithful(rep)) throw std::invalid_argument("induced_space requires a weakly-faithful representation");
  const int d = rep.sig().dim();
  InducedSpace out{rep.generators(), QMatrix(d, d)};
  const CMatrix id = CMatrix::identity(rep.n());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CMatrix anti = out.basis[i] * out.basis[j] + out.basis[j] * out.basis[i];
      GaussianRational mu = anti(0, 0) / GaussianRational(2);
      if (!mu.is_real() || anti != id * (mu * GaussianRational(2)))
        throw std::invalid_argument("anticommutator is not a real scalar");
      out.gram(i, j) = mu.re;
    }
  return out;
}

inline MatrixRep direct_sum(const MatrixRep& a, const MatrixRep& b) {
  require_same(a.sig(), b.sig(), "direct_sum");
  std::vector<CMatrix> gens;
  for (int k = 0; k < a.sig().dim(); ++k) gens.push_back(block_diagonal(a.generator(k), b.generator(k)));
  return MatrixRep::make(a.sig(), std::move(gens), Flavor::Custom);
}

// Invertible T with T G_i = G'_i T, certified by an exact determinant.
inline std::optional<CMatrix> based_equivalence(const MatrixRep& from, const MatrixRep& to) {
  require_same(from.sig(), to.sig(), "based_equivalence");
  if (from.n() != to.n()) return std::nullopt;
  return first_invertible(intertwiners(from.generators(), to.generators(), from.n(), to.n()));
}

}  // namespace cliffordlab
