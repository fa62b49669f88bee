#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "cliffordlab/blade_algebra.hpp"
#include "cliffordlab/linear_algebra.hpp"
#include "cliffordlab/rep.hpp"

namespace cliffordlab {

// a + bi becomes [[a, -b], [b, a]] on coordinates (2k, 2k+1).
inline QMatrix realify_matrix(const CMatrix& m) {
  QMatrix out(2 * m.rows(), 2 * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& z = m(r, c);
      if (z.is_zero()) continue;
      out(2 * r, 2 * c) = z.re;
      out(2 * r, 2 * c + 1) = -z.im;
      out(2 * r + 1, 2 * c) = z.im;
      out(2 * r + 1, 2 * c + 1) = z.re;
    }
  return out;
}

inline QMatrix complex_unit_block(std::size_t n) { return realify_matrix(CMatrix::identity(n) * GaussianRational::i()); }

// Real Clifford representation given by rational generator matrices.
class RealMatrixRep {
 public:
  static RealMatrixRep make(Signature sig, std::vector<QMatrix> generators, std::shared_ptr<const MatrixRep> origin = nullptr) {
    if (generators.size() != static_cast<std::size_t>(sig.dim()))
      throw std::invalid_argument("real representation needs one generator per basis vector");
    const std::size_t m = generators.front().rows();
    for (const auto& g : generators)
      if (g.rows() != m || g.cols() != m) throw std::invalid_argument("generators must be square of a common size");
    const QMatrix id = QMatrix::identity(m);
    for (int i = 0; i < sig.dim(); ++i)
      for (int j = i; j < sig.dim(); ++j) {
        QMatrix anti = generators[i] * generators[j] + generators[j] * generators[i];
        QMatrix expected = i == j ? id * Rational(2 * sig.metric(i)) : QMatrix(m, m);
        if (anti != expected) throw std::invalid_argument("real generator relation fails");
      }
    if (origin) {
      for (int k = 0; k < sig.dim(); ++k)
        if (realify_matrix(origin->generator(k)) != generators[k])
          throw std::invalid_argument("generators are not the realification of the origin");
    }
    return RealMatrixRep(sig, std::move(generators), std::move(origin));
  }

  const Signature& sig() const { return sig_; }
  std::size_t m() const { return generators_.front().rows(); }
  const std::vector<QMatrix>& generators() const { return generators_; }
  const QMatrix& generator(int k) const { return generators_.at(k); }
  const std::shared_ptr<const MatrixRep>& origin() const { return origin_; }

  QMatrix blade_image(Blade b) const {
    QMatrix out = QMatrix::identity(m());
    for (int k = 0; k < sig_.dim(); ++k)
      if (b >> k & 1u) out = out * generators_[k];
    return out;
  }

  // eta(nu) for the chosen orientation.
  QMatrix volume_image(int orientation = 1) const {
    QMatrix v = blade_image(top_blade(sig_));
    return orientation > 0 ? v : QMatrix(-v);
  }

 private:
  RealMatrixRep(Signature sig, std::vector<QMatrix> generators, std::shared_ptr<const MatrixRep> origin)
      : sig_(sig), generators_(std::move(generators)), origin_(std::move(origin)) {}

  Signature sig_;
  std::vector<QMatrix> generators_;
  std::shared_ptr<const MatrixRep> origin_;
};

inline RealMatrixRep realify_rep(const MatrixRep& rep) {
  std::vector<QMatrix> gens;
  for (const auto& g : rep.generators()) gens.push_back(realify_matrix(g));
  return RealMatrixRep::make(rep.sig(), std::move(gens), std::make_shared<const MatrixRep>(rep));
}

enum class SchurLabel { R, C, H, ReducibleComposite };

inline std::string_view to_string(SchurLabel l) {
  switch (l) {
    case SchurLabel::R: return "R";
    case SchurLabel::C: return "C";
    case SchurLabel::H: return "H";
    case SchurLabel::ReducibleComposite: return "reducible-composite";
  }
  return "reducible-composite";
}

enum class StructureKind { none, pair, quaternionic };

inline std::string_view to_string(StructureKind k) {
  switch (k) {
    case StructureKind::none: return "none";
    case StructureKind::pair: return "pair";
    case StructureKind::quaternionic: return "quaternionic";
  }
  return "none";
}

struct ComplexStructures {
  StructureKind kind = StructureKind::none;
  // {J+, J-} for a pair, {I, J, K} for the quaternionic case.
  std::vector<QMatrix> matrices;
};

struct SchurReport {
  std::size_t commutant_dim = 0;
  SchurLabel label = SchurLabel::ReducibleComposite;
  // Identity first, then traceless representatives.
  std::vector<QMatrix> basis;
  ComplexStructures complex_structures;
};

namespace detail {

inline SparseRow<Rational> flatten(const QMatrix& m) {
  SparseRow<Rational> row;
  for (std::size_t k = 0; k < m.data().size(); ++k)
    if (sgn(m.data()[k]) != 0) row.emplace_back(k, m.data()[k]);
  return row;
}

// Scalar s with m = s * Id, if any.
inline std::optional<Rational> scalar_value(const QMatrix& m) {
  const Rational s = m(0, 0);
  if (m != QMatrix::identity(m.rows()) * s) return std::nullopt;
  return s;
}

inline std::vector<QMatrix> traceless_basis(const std::vector<QMatrix>& raw) {
  const std::size_t m = raw.front().rows();
  const QMatrix id = QMatrix::identity(m);
  RowReducer<Rational> span(m * m);
  span.add_row(flatten(id));
  std::vector<QMatrix> out{id};
  for (const auto& x : raw) {
    QMatrix pure = x - id * Rational(trace(x) / Rational(static_cast<long>(m)));
    if (pure.is_zero()) continue;
    if (span.add_row(flatten(pure))) out.push_back(std::move(pure));
  }
  return out;
}

// Label from the algebra structure: a division algebra means the real
// module is irreducible.
inline SchurLabel schur_label(const std::vector<QMatrix>& basis) {
  if (basis.size() == 1) return SchurLabel::R;
  if (basis.size() != 2 && basis.size() != 4) return SchurLabel::ReducibleComposite;
  // Traceless elements X of C, H or M_2(R) satisfy X^2 = -q(X) Id; the
  // algebra is a division algebra iff q is positive definite.
  const std::size_t k = basis.size() - 1;
  QMatrix gram(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      auto s = scalar_value(basis[a + 1] * basis[b + 1] + basis[b + 1] * basis[a + 1]);
      if (!s) return SchurLabel::ReducibleComposite;
      gram(a, b) = -*s / 2;
    }
  // Sylvester's criterion on leading minors
  for (std::size_t size = 1; size <= k; ++size) {
    QMatrix minor(size, size);
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = 0; b < size; ++b) minor(a, b) = gram(a, b);
    if (sgn(determinant(minor)) <= 0) return SchurLabel::ReducibleComposite;
  }
  return basis.size() == 2 ? SchurLabel::C : SchurLabel::H;
}

}  // namespace detail

inline std::vector<QMatrix> real_commutant(const RealMatrixRep& rrep) { return commutant_basis(rrep.generators(), rrep.m()); }

// Real (p - q) mod 8 classes whose realified irreducible complex module stays
// irreducible, with the type of its Schur algebra.
struct Mod8Classification {
  bool irreducible_real = false;
  SchurLabel label = SchurLabel::ReducibleComposite;
  std::size_t n = 0;
  std::size_t m = 0;
};

inline Mod8Classification classify_mod8(const Signature& sig) {
  Mod8Classification out;
  out.n = irrep_dimension(sig);
  out.m = 2 * out.n;
  switch (sig.mod8()) {
    case 3:
    case 7:
      out.irreducible_real = true;
      out.label = SchurLabel::C;
      break;
    case 4:
    case 5:
    case 6:
      out.irreducible_real = true;
      out.label = SchurLabel::H;
      break;
    default:
      break;
  }
  return out;
}

// Statement as printed in the source: irreducible iff the class is 3, 4, 6 or 7.
inline bool printed_irreducibility_claim(const Signature& sig) {
  const int c = sig.mod8();
  return c == 3 || c == 4 || c == 6 || c == 7;
}

namespace detail {

// Element a*X + b*Y of a two-dimensional space of anticommuting structures
// with X^2 = Y^2 = -s Id, rescaled to square to -Id. Needs rational a, b
// with a^2 + b^2 = 1/s.
inline std::optional<QMatrix> normalize_structure(const QMatrix& x, const QMatrix& y, const Rational& s) {
  const mpz_class r = s.get_num(), t = s.get_den();
  // a = u / r, b = v / r with u^2 + v^2 = r t
  const mpz_class target = r * t;
  mpz_class limit;
  mpz_sqrt(limit.get_mpz_t(), target.get_mpz_t());
  for (mpz_class u = 0; u <= limit; ++u) {
    mpz_class rest = target - u * u;
    if (!mpz_perfect_square_p(rest.get_mpz_t())) continue;
    mpz_class v;
    mpz_sqrt(v.get_mpz_t(), rest.get_mpz_t());
    Rational a(u, r), b(v, r);
    a.canonicalize();
    b.canonicalize();
    return QMatrix(x * a + y * b);
  }
  return std::nullopt;
}

}  // namespace detail

inline ComplexStructures quaternion_triple(const RealMatrixRep& rrep, const std::vector<QMatrix>& commutant) {
  const std::size_t m = rrep.m();
  const QMatrix id = QMatrix::identity(m);
  QMatrix i_struct = complex_unit_block(m / 2);
  // X in the commutant anticommuting with I
  RowReducer<Rational> reducer(commutant.size());
  for (std::size_t e = 0; e < m * m; ++e) {
    SparseRow<Rational> row;
    for (std::size_t k = 0; k < commutant.size(); ++k) {
      QMatrix anti = commutant[k] * i_struct + i_struct * commutant[k];
      if (sgn(anti.data()[e]) != 0) row.emplace_back(k, anti.data()[e]);
    }
    reducer.add_row(std::move(row));
  }
  auto solutions = reducer.nullspace();
  if (solutions.empty()) throw std::runtime_error("no structure anticommuting with I in the commutant");
  QMatrix x(m, m);
  for (std::size_t k = 0; k < commutant.size(); ++k) x += commutant[k] * solutions.front()[k];
  auto square = detail::scalar_value(x * x);
  if (!square || sgn(*square) >= 0) throw std::runtime_error("anticommuting element does not square to a negative scalar");
  auto j_struct = detail::normalize_structure(x, i_struct * x, -*square);
  if (!j_struct) throw std::runtime_error("no rational normalization of the quaternion triple");
  QMatrix k_struct = i_struct * *j_struct;
  (void)id;
  return {StructureKind::quaternionic, {i_struct, *j_struct, k_struct}};
}

// Schur algebra of a real representation: exact commutant, its label and the
// complex structures it contains for irreducible sources.
inline SchurReport commutant(const RealMatrixRep& rrep) {
  auto raw = real_commutant(rrep);
  SchurReport report;
  report.commutant_dim = raw.size();
  report.basis = detail::traceless_basis(raw);
  report.label = detail::schur_label(report.basis);
  if (report.label == SchurLabel::C) {
    QMatrix j = report.basis[1];
    auto square = detail::scalar_value(j * j);
    auto root = rational_sqrt(-*square);
    if (root) {
      j = j * Rational(1 / *root);
      const QMatrix plus = rrep.sig().odd() ? rrep.volume_image() : j;
      report.complex_structures = {StructureKind::pair, {plus, QMatrix(-plus)}};
    }
  } else if (report.label == SchurLabel::H && rrep.m() % 2 == 0) {
    report.complex_structures = quaternion_triple(rrep, raw);
  }
  return report;
}

struct ComplexStructurePair {
  QMatrix plus;
  QMatrix minus;
};

// J+ = eta(nu) and J- = -J+, certified to lie in the commutant, to square to
// -Id and to exhaust the complex structures of the two-dimensional commutant.
inline ComplexStructurePair complex_structure_pair(const RealMatrixRep& rrep) {
  const int c = rrep.sig().mod8();
  if (c != 3 && c != 7) throw std::invalid_argument("complex structure pair requires p - q = 3, 7 mod 8");
  QMatrix plus = rrep.volume_image();
  const QMatrix id = QMatrix::identity(rrep.m());
  if (plus * plus != -id) throw std::logic_error("volume image does not square to -Id");
  for (const auto& g : rrep.generators())
    if (g * plus != plus * g) throw std::logic_error("volume image is not in the commutant");
  return {plus, -plus};
}

// All (alpha, beta) with (alpha Id + beta J)^2 = -Id where J^2 = -beta0 Id:
// alpha^2 - beta^2 beta0 = -1 and 2 alpha beta = 0, so alpha = 0 and
// beta = +-1/sqrt(beta0). Returned only when rational.
inline std::vector<std::pair<Rational, Rational>> structures_in_span(const QMatrix& j) {
  auto square = detail::scalar_value(j * j);
  if (!square || sgn(*square) >= 0) return {};
  auto root = rational_sqrt(-*square);
  if (!root) return {};
  const Rational beta = 1 / *root;
  return {{Rational(0), beta}, {Rational(0), Rational(-beta)}};
}

// Quaternion relations I^2 = J^2 = K^2 = -Id, IJ = K, all in the commutant.
inline bool quaternion_relations(const RealMatrixRep& rrep, const ComplexStructures& cs) {
  if (cs.kind != StructureKind::quaternionic || cs.matrices.size() != 3) return false;
  const QMatrix id = QMatrix::identity(rrep.m());
  const auto& [i, j, k] = std::tie(cs.matrices[0], cs.matrices[1], cs.matrices[2]);
  if (i * i != -id || j * j != -id || k * k != -id || i * j != k || j * k != i || k * i != j) return false;
  for (const auto& g : rrep.generators())
    for (const auto& q : cs.matrices)
      if (g * q != q * g) return false;
  return true;
}

// Complex structures of an irreducible realified module: the certified pair
// {eta(nu), -eta(nu)} for classes 3, 7 and a quaternion triple for classes
// 4, 5, 6. Pairwise anticommutation of the triple together with
// I^2 = J^2 = K^2 = -Id gives (aI + bJ + cK)^2 = -(a^2 + b^2 + c^2) Id.
inline ComplexStructures recover_complex_structures(const RealMatrixRep& rrep) {
  const int c = rrep.sig().mod8();
  if (c == 3 || c == 7) {
    auto pair = complex_structure_pair(rrep);
    return {StructureKind::pair, {pair.plus, pair.minus}};
  }
  if (c != 4 && c != 5 && c != 6) throw std::invalid_argument("complex structures are recovered only for p - q = 3, 4, 5, 6, 7 mod 8");
  auto triple = commutant(rrep).complex_structures;
  if (!quaternion_relations(rrep, triple)) throw std::logic_error("commutant has no quaternion triple");
  const auto& m = triple.matrices;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a + 1; b < 3; ++b)
      if (m[a] * m[b] != -(m[b] * m[a])) throw std::logic_error("quaternion triple does not anticommute");
  return triple;
}

// Rational points of S^2 by inverse stereographic projection.
inline std::vector<std::array<Rational, 3>> rational_sphere_points(int count) {
  std::vector<std::array<Rational, 3>> out;
  for (int a = -3; a <= 3 && static_cast<int>(out.size()) < count; ++a)
    for (int b = 1; b <= 3 && static_cast<int>(out.size()) < count; ++b) {
      Rational u(a, b);
      u.canonicalize();
      Rational v(b, a == 0 ? 2 : a * a + 1);
      v.canonicalize();
      const Rational denom = 1 + u * u + v * v;
      out.push_back({Rational(2 * u / denom), Rational(2 * v / denom), Rational((1 - u * u - v * v) / denom)});
    }
  return out;
}

struct Complexification {
  MatrixRep rep;
  // Columns: v1, J v1, v2, J v2, ...
  QMatrix basis;
};

// Complex representation on the real module with complex structure J:
// generators in the basis {v_k, J v_k} read as complex matrices.
inline Complexification complexify(const RealMatrixRep& rrep, const QMatrix& j) {
  const std::size_t m = rrep.m();
  const QMatrix id = QMatrix::identity(m);
  if (m % 2 || j * j != -id) throw std::invalid_argument("complexify: J is not a complex structure");
  for (const auto& g : rrep.generators())
    if (g * j != j * g) throw std::invalid_argument("complexify: J does not commute with the representation");
  RowReducer<Rational> span(m);
  std::vector<std::vector<Rational>> columns;
  for (std::size_t k = 0; k < m && columns.size() < m; ++k) {
    std::vector<Rational> v(m, Rational(0));
    v[k] = 1;
    SparseRow<Rational> row{{k, Rational(1)}};
    if (span.in_span(row)) continue;
    std::vector<Rational> jv = j * v;
    span.add_dense_row(v);
    span.add_dense_row(jv);
    columns.push_back(std::move(v));
    columns.push_back(std::move(jv));
  }
  QMatrix basis(m, m);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t r = 0; r < m; ++r) basis(r, c) = columns[c][r];
  auto basis_inv = inverse(basis);
  if (!basis_inv) throw std::logic_error("complexify: adapted basis is singular");
  const std::size_t n = m / 2;
  std::vector<CMatrix> gens;
  for (const auto& g : rrep.generators()) {
    QMatrix adapted = *basis_inv * g * basis;
    CMatrix z(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) z(r, c) = GaussianRational(adapted(2 * r, 2 * c), adapted(2 * r + 1, 2 * c));
    gens.push_back(std::move(z));
  }
  return {MatrixRep::make(rrep.sig(), std::move(gens), Flavor::Custom), std::move(basis)};
}

struct FiberReport {
  bool plus_matches_pauli_plus = false;
  bool minus_matches_pauli_minus = false;
  bool pauli_cross_inconsistent = false;
  bool ok() const { return plus_matches_pauli_plus && minus_matches_pauli_minus && pauli_cross_inconsistent; }
};

// Complexifying along J+ and J- recovers the two Pauli representations, which
// are not based-equivalent to each other.
inline FiberReport fiber_check(const RealMatrixRep& rrep) {
  auto pair = complex_structure_pair(rrep);
  const MatrixRep plus = build_irrep(rrep.sig(), Flavor::PauliPlus);
  const MatrixRep minus = build_irrep(rrep.sig(), Flavor::PauliMinus);
  FiberReport out;
  out.plus_matches_pauli_plus = based_equivalence(complexify(rrep, pair.plus).rep, plus).has_value();
  out.minus_matches_pauli_minus = based_equivalence(complexify(rrep, pair.minus).rep, minus).has_value();
  out.pauli_cross_inconsistent = intertwiners(plus.generators(), minus.generators(), plus.n(), minus.n()).empty();
  return out;
}

// Invertible psi with psi eta(x) = eta'(x) psi, certified by determinant.
inline std::optional<QMatrix> real_equivalence(const RealMatrixRep& from, const RealMatrixRep& to) {
  require_same(from.sig(), to.sig(), "real_equivalence");
  if (from.m() != to.m()) return std::nullopt;
  return first_invertible(intertwiners(from.generators(), to.generators(), from.m(), to.m()));
}

inline bool is_real_equivalence(const QMatrix& psi, const RealMatrixRep& from, const RealMatrixRep& to) {
  if (psi.rows() != to.m() || psi.cols() != from.m() || sgn(determinant(psi)) == 0) return false;
  for (int k = 0; k < from.sig().dim(); ++k)
    if (psi * from.generator(k) != to.generator(k) * psi) return false;
  return true;
}

// Sign with psi J+ = eps J'+ psi for a based equivalence psi.
inline int iso_sign(const QMatrix& psi, const RealMatrixRep& from, const RealMatrixRep& to) {
  if (!is_real_equivalence(psi, from, to)) throw std::invalid_argument("iso_sign: psi is not a based equivalence");
  const QMatrix j = complex_structure_pair(from).plus;
  const QMatrix j_prime = complex_structure_pair(to).plus;
  if (psi * j == j_prime * psi) return 1;
  if (psi * j == -(j_prime * psi)) return -1;
  throw std::logic_error("iso_sign: psi neither commutes nor anticommutes with the complex structures");
}

// Exact search for a based equivalence reversing the complex structures:
// psi eta(e_i) = eta'(e_i) psi and psi J+ = -J'+ psi.
inline std::optional<QMatrix> iso_minus_witness(const RealMatrixRep& from, const RealMatrixRep& to) {
  std::vector<QMatrix> a = from.generators();
  std::vector<QMatrix> b = to.generators();
  a.push_back(complex_structure_pair(from).plus);
  b.push_back(complex_structure_pair(to).minus);
  return first_invertible(intertwiners(a, b, from.m(), to.m()));
}

// Equivalence between the realified Pauli representations that reverses the
// complex structures they were realified from.
inline std::optional<QMatrix> antilinear_pauli_witness(const Signature& sig) {
  const RealMatrixRep plus = realify_rep(build_irrep(sig, Flavor::PauliPlus));
  const RealMatrixRep minus = realify_rep(build_irrep(sig, Flavor::PauliMinus));
  auto psi = real_equivalence(plus, minus);
  if (!psi) return std::nullopt;
  const QMatrix unit = complex_unit_block(plus.m() / 2);
  if (*psi * unit != -(unit * *psi)) return std::nullopt;
  return psi;
}

}  // namespace cliffordlab
