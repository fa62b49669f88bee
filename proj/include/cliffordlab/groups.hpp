#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cliffordlab/blade_algebra.hpp"
#include "cliffordlab/errors.hpp"
#include "cliffordlab/linear_algebra.hpp"
#include "cliffordlab/rep.hpp"

namespace cliffordlab {

inline constexpr double kFloatTolerance = 1e-9;

// Matrix of the twisted adjoint action restricted to V, when x lies in the
// complex Clifford group. Throws NonInvertible when x has no inverse.
inline std::optional<Isometry> twisted_adjoint(const CliffordElement& x) {
  const Signature& sig = x.sig();
  auto inv = clifford_inverse(x);
  if (!inv) throw NonInvertible("twisted_adjoint: element is not invertible");
  const CliffordElement px = parity(x);
  QMatrix m(sig.dim(), sig.dim());
  for (int k = 0; k < sig.dim(); ++k) {
    CliffordElement y = px * CliffordElement::generator(sig, k) * *inv;
    for (const auto& [b, c] : y.terms()) {
      if (grade(b) != 1 || !c.is_real()) return std::nullopt;
      m(std::countr_zero(b), k) = c.re;
    }
  }
  QMatrix h = metric_matrix(sig);
  if (m.transpose() * h * m != h) return std::nullopt;
  return Isometry::make(sig, std::move(m));
}

struct GroupMembership {
  bool in_gamma = false;
  bool in_gamma_s = false;
  bool in_pinc = false;
  bool in_spinc = false;
  // Twisted norm; a scalar for members of the Clifford group.
  CliffordElement norm;
  std::optional<Isometry> adjoint;
};

inline GroupMembership group_membership(const CliffordElement& x) {
  GroupMembership out{false, false, false, false, twisted_norm(x), twisted_adjoint(x)};
  out.in_gamma = out.adjoint.has_value() && out.norm.is_scalar() && !out.norm.is_zero();
  out.in_gamma_s = out.in_gamma && x.is_even();
  out.in_pinc = out.in_gamma && out.norm.coefficient(0).norm2() == 1;
  out.in_spinc = out.in_pinc && x.is_even();
  return out;
}

// Scalar twisted norm of a Clifford-group member.
inline GaussianRational scalar_norm(const CliffordElement& x) {
  CliffordElement n = twisted_norm(x);
  if (!n.is_scalar() || n.is_zero()) throw std::invalid_argument("twisted norm is not a non-zero scalar");
  return n.coefficient(0);
}

// Exact square root of |z| when it is rational, i.e. when |z|^2 is a rational
// fourth power.
inline std::optional<Rational> exact_sqrt_modulus(const GaussianRational& z) {
  auto modulus = rational_sqrt(z.norm2());
  if (!modulus) return std::nullopt;
  return rational_sqrt(*modulus);
}

// Retraction x / sqrt(|N(x)|) onto Pin^c, computed in floating point.
inline CliffordElementF retract(const CliffordElement& x) {
  if (!group_membership(x).in_gamma) throw std::invalid_argument("retract: element is not in the Clifford group");
  const double scale = std::sqrt(std::abs(scalar_norm(x).to_complex()));
  CliffordElementF out = to_float(x);
  return out *= std::complex<double>(1.0 / scale, 0.0);
}

inline std::optional<CliffordElement> retract_exact(const CliffordElement& x) {
  if (!group_membership(x).in_gamma) throw std::invalid_argument("retract: element is not in the Clifford group");
  auto s = exact_sqrt_modulus(scalar_norm(x));
  if (!s) return std::nullopt;
  return x * GaussianRational(Rational(1 / *s));
}

inline CliffordElementF retract(const CliffordElementF& x) {
  CliffordElementF n = twisted_norm(x);
  const double scale = std::sqrt(std::abs(n.coefficient(0)));
  CliffordElementF out = x;
  return out *= std::complex<double>(1.0 / scale, 0.0);
}

inline double max_abs(const CliffordElementF& x) {
  double worst = 0.0;
  for (const auto& [b, c] : x.terms()) worst = std::max(worst, std::abs(c));
  return worst;
}

inline double distance(const CliffordElementF& a, const CliffordElementF& b) { return max_abs(a - b); }

// Twisted adjoint of a floating Clifford-group element whose twisted norm is
// (numerically) scalar. Returns the d x d matrix on V.
inline RMatrixF twisted_adjoint(const CliffordElementF& x) {
  const Signature& sig = x.sig();
  CliffordElementF n = twisted_norm(x);
  const std::complex<double> z = n.coefficient(0);
  if (std::abs(z) < 1e-300) throw NonInvertible("twisted_adjoint: vanishing twisted norm");
  CliffordElementF inv = involution(x, InvolutionKind::twisted_reversion_C);
  inv *= 1.0 / z;
  const CliffordElementF px = parity(x);
  RMatrixF m(sig.dim(), sig.dim());
  for (int k = 0; k < sig.dim(); ++k) {
    CliffordElementF y = px * CliffordElementF::generator(sig, k) * inv;
    for (int j = 0; j < sig.dim(); ++j) m(j, k) = y.coefficient(Blade{1} << j).real();
  }
  return m;
}

enum class Parity { even, odd, mixed, unknown };

inline Parity parity_of(const CliffordElement& x) {
  if (x.is_even()) return Parity::even;
  if (x.is_odd()) return Parity::odd;
  return Parity::mixed;
}

// Element of a module group in either numeric layer.
using GroupMatrix = std::variant<CMatrix, CMatrixF>;

inline bool is_exact(const GroupMatrix& g) { return std::holds_alternative<CMatrix>(g); }

inline CMatrixF to_float(const GroupMatrix& g) {
  if (const auto* exact = std::get_if<CMatrix>(&g)) return to_float(*exact);
  return std::get<CMatrixF>(g);
}

inline GroupMatrix multiply(const GroupMatrix& a, const GroupMatrix& b) {
  if (is_exact(a) && is_exact(b)) return std::get<CMatrix>(a) * std::get<CMatrix>(b);
  return to_float(a) * to_float(b);
}

inline GroupMatrix invert(const GroupMatrix& g) {
  if (const auto* exact = std::get_if<CMatrix>(&g)) {
    auto inv = inverse(*exact);
    if (!inv) throw NonInvertible("group matrix is singular");
    return *inv;
  }
  auto inv = inverse(std::get<CMatrixF>(g));
  if (!inv) throw NonInvertible("group matrix is singular");
  return *inv;
}

inline double group_distance(const GroupMatrix& a, const GroupMatrix& b) { return max_abs_diff(to_float(a), to_float(b)); }

// Exact equality when both sides are exact; otherwise entrywise agreement
// within tol relative to the larger entry magnitude (at least 1).
inline bool group_equal(const GroupMatrix& a, const GroupMatrix& b, double tol = kFloatTolerance) {
  if (is_exact(a) && is_exact(b)) return std::get<CMatrix>(a) == std::get<CMatrix>(b);
  const CMatrixF fa = to_float(a), fb = to_float(b);
  if (fa.rows() != fb.rows() || fa.cols() != fb.cols()) return false;
  return relative_max_abs_diff(fa, fb) <= tol;
}

// Preimage of a module map under the complexified representation: all blades
// for Dirac-type (bijective) representations, even blades for Pauli ones.
inline std::optional<CliffordElement> lipschitz_preimage(const MatrixRep& rep, const CMatrix& phi) {
  const Signature& sig = rep.sig();
  const bool even_only = rep.flavor() == Flavor::PauliPlus || rep.flavor() == Flavor::PauliMinus;
  auto images = rep.blade_images();
  std::vector<Blade> blades;
  for (Blade b = 0; b < sig.blade_count(); ++b)
    if (!even_only || grade(b) % 2 == 0) blades.push_back(b);
  const std::size_t entries = rep.n() * rep.n();
  std::vector<SparseRow<GaussianRational>> rows(entries);
  for (std::size_t u = 0; u < blades.size(); ++u)
    for (std::size_t e = 0; e < entries; ++e) {
      const auto& v = images[blades[u]].data()[e];
      if (!v.is_zero()) rows[e].emplace_back(u, v);
    }
  auto sol = solve_sparse(blades.size(), std::move(rows), phi.data());
  if (!sol) return std::nullopt;
  CliffordElement x(sig);
  for (std::size_t u = 0; u < blades.size(); ++u) x.accumulate(blades[u], (*sol)[u]);
  if (evaluate(rep, x) != phi) return std::nullopt;
  return x;
}

struct LipschitzElement {
  std::shared_ptr<const MatrixRep> rep;
  CMatrix matrix;
  // (gamma|_V)^{-1} o Ad(matrix) o gamma|_V
  Isometry phi0;
  // N of the algebra preimage, when one exists.
  std::optional<GaussianRational> norm_value;
  Parity parity = Parity::unknown;
};

// Real coefficients c_jk with phi G_k phi^{-1} = sum_j c_jk G_j, or nullopt
// when conjugation leaves the real span of the generators.
inline std::optional<QMatrix> adjoint_coefficients(const MatrixRep& rep, const CMatrix& phi, const CMatrix& phi_inv) {
  const int d = rep.sig().dim();
  const std::size_t n2 = rep.n() * rep.n();
  QMatrix out(d, d);
  for (int k = 0; k < d; ++k) {
    CMatrix target = phi * rep.generator(k) * phi_inv;
    // 2 n^2 real equations in d real unknowns
    std::vector<SparseRow<Rational>> rows(2 * n2);
    std::vector<Rational> rhs(2 * n2);
    for (std::size_t e = 0; e < n2; ++e) {
      for (int j = 0; j < d; ++j) {
        const auto& g = rep.generator(j).data()[e];
        if (sgn(g.re) != 0) rows[e].emplace_back(j, g.re);
        if (sgn(g.im) != 0) rows[n2 + e].emplace_back(j, g.im);
      }
      rhs[e] = target.data()[e].re;
      rhs[n2 + e] = target.data()[e].im;
    }
    auto sol = solve_sparse(d, std::move(rows), rhs);
    if (!sol) return std::nullopt;
    for (int j = 0; j < d; ++j) out(j, k) = (*sol)[j];
  }
  return out;
}

// Membership in the Lipschitz group of rep: conjugation by phi preserves the
// real span of the generator images. Throws NonInvertible for singular phi.
inline std::optional<LipschitzElement> lipschitz_member(const CMatrix& phi, const std::shared_ptr<const MatrixRep>& rep) {
  if (phi.rows() != rep->n() || !phi.square()) throw std::invalid_argument("lipschitz_member: wrong matrix size");
  auto phi_inv = inverse(phi);
  if (!phi_inv) throw NonInvertible("lipschitz_member: matrix is singular");
  auto coeffs = adjoint_coefficients(*rep, phi, *phi_inv);
  if (!coeffs) return std::nullopt;
  QMatrix h = metric_matrix(rep->sig());
  if (coeffs->transpose() * h * *coeffs != h) return std::nullopt;
  LipschitzElement el{rep, phi, Isometry::make(rep->sig(), std::move(*coeffs)), std::nullopt, Parity::unknown};
  if (auto x = lipschitz_preimage(*rep, phi)) {
    CliffordElement n = twisted_norm(*x);
    if (n.is_scalar() && !n.is_zero()) el.norm_value = n.coefficient(0);
    el.parity = parity_of(*x);
  }
  return el;
}

inline std::optional<LipschitzElement> lipschitz_member(const CMatrix& phi, const MatrixRep& rep) {
  return lipschitz_member(phi, std::make_shared<const MatrixRep>(rep));
}

inline const Isometry& adjoint_rep(const LipschitzElement& el) { return el.phi0; }

inline Isometry adjoint_rep(const std::optional<LipschitzElement>& el) {
  if (!el) throw std::invalid_argument("adjoint_rep: element has no extracted isometry");
  return el->phi0;
}

// Floating-point adjoint representation through the trace pairing
// tr(G_j G_k) = n h_jj delta_jk; the residual of the reconstruction is
// returned alongside.
struct FloatAdjoint {
  RMatrixF matrix;
  double residual = 0.0;
};

inline FloatAdjoint adjoint_float(const MatrixRep& rep, const CMatrixF& phi) {
  auto phi_inv = inverse(phi);
  if (!phi_inv) throw NonInvertible("adjoint_float: matrix is singular");
  const int d = rep.sig().dim();
  const double n = static_cast<double>(rep.n());
  std::vector<CMatrixF> gens;
  for (const auto& g : rep.generators()) gens.push_back(to_float(g));
  FloatAdjoint out{RMatrixF(d, d), 0.0};
  for (int k = 0; k < d; ++k) {
    CMatrixF target = phi * gens[k] * *phi_inv;
    CMatrixF rebuilt(rep.n(), rep.n());
    for (int j = 0; j < d; ++j) {
      std::complex<double> c = trace(gens[j] * target) / (n * rep.sig().metric(j));
      out.matrix(j, k) = c.real();
      out.residual = std::max(out.residual, std::abs(c.imag()));
      rebuilt += gens[j] * std::complex<double>(c.real(), 0.0);
    }
    out.residual = std::max(out.residual, max_abs_diff(rebuilt, target));
  }
  return out;
}

// Ad_gamma(gamma(w)) against -R_w for a non-null real vector w.
inline bool reflection_law(const MatrixRep& rep, const std::vector<Rational>& w) {
  std::vector<GaussianRational> wc(w.begin(), w.end());
  auto el = lipschitz_member(rep.vector_image(wc), rep);
  if (!el) return false;
  QMatrix minus_reflection = -Isometry::reflection(rep.sig(), w).matrix();
  return el->phi0.matrix() == minus_reflection;
}

// Lipschitz-group norm of a module matrix via its algebra preimage.
inline std::optional<GaussianRational> lipschitz_norm(const MatrixRep& rep, const CMatrix& phi) {
  auto x = lipschitz_preimage(rep, phi);
  if (!x) return std::nullopt;
  CliffordElement n = twisted_norm(*x);
  if (!n.is_scalar() || n.is_zero()) return std::nullopt;
  return n.coefficient(0);
}

// Retraction at the module level: phi / sqrt(|N|). Exact when sqrt(|N|) is
// rational, floating otherwise.
inline GroupMatrix retract_matrix(const MatrixRep& rep, const GroupMatrix& g) {
  if (const auto* exact = std::get_if<CMatrix>(&g)) {
    auto norm = lipschitz_norm(rep, *exact);
    if (!norm) throw std::invalid_argument("retract_matrix: matrix has no Clifford-group preimage");
    if (auto s = exact_sqrt_modulus(*norm)) return CMatrix(*exact * GaussianRational(Rational(1 / *s)));
    return CMatrixF(to_float(*exact) * std::complex<double>(1.0 / std::sqrt(std::abs(norm->to_complex())), 0.0));
  }
  // |det phi| = |N|^{n/2}
  const CMatrixF& f = std::get<CMatrixF>(g);
  const double n = static_cast<double>(rep.n());
  const double modulus = std::pow(std::abs(determinant(f)), 2.0 / n);
  return CMatrixF(f * std::complex<double>(1.0 / std::sqrt(modulus), 0.0));
}

enum class GroupKind { Gamma, Gamma_s, Pinc, Spinc };

inline std::string_view to_string(GroupKind k) {
  switch (k) {
    case GroupKind::Gamma: return "Gamma";
    case GroupKind::Gamma_s: return "Gamma_s";
    case GroupKind::Pinc: return "Pinc";
    case GroupKind::Spinc: return "Spinc";
  }
  return "Gamma";
}

namespace detail {

inline Rational random_rational(std::mt19937_64& rng, int range = 4, int den_range = 3) {
  std::uniform_int_distribution<int> num(-range, range), den(1, den_range);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline std::vector<Rational> random_non_null_vector(const Signature& sig, std::mt19937_64& rng) {
  for (;;) {
    std::vector<Rational> v(sig.dim());
    for (auto& c : v) c = random_rational(rng);
    if (sgn(quadratic_form(sig, v)) != 0) return v;
  }
}

// Vector of squared length +-1: a basis vector reflected along a random
// non-null vector.
inline std::vector<Rational> random_unit_vector(const Signature& sig, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, sig.dim() - 1);
  const int k = pick(rng);
  auto u = random_non_null_vector(sig, rng);
  const Rational coeff = 2 * sig.metric(k) * u[k] / quadratic_form(sig, u);
  std::vector<Rational> out(sig.dim());
  for (int i = 0; i < sig.dim(); ++i) out[i] = (i == k ? Rational(1) : Rational(0)) - coeff * u[i];
  return out;
}

// ((a^2 - b^2) + 2ab i) / (a^2 + b^2)
inline GaussianRational random_unit_scalar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-4, 4);
  int a = 0, b = 0;
  while (a == 0 && b == 0) {
    a = dist(rng);
    b = dist(rng);
  }
  const Rational denom(a * a + b * b);
  return {Rational(a * a - b * b) / denom, Rational(2 * a * b) / denom};
}

inline GaussianRational random_nonzero_scalar(std::mt19937_64& rng) {
  for (;;) {
    GaussianRational z(random_rational(rng), random_rational(rng));
    if (!z.is_zero()) return z;
  }
}

inline CliffordElement as_element(const Signature& sig, const std::vector<Rational>& v) {
  return CliffordElement::vector(sig, std::vector<GaussianRational>(v.begin(), v.end()));
}

}  // namespace detail

// Exact samples from the requested group: products of non-null vectors (unit
// vectors for Pin^c / Spin^c) times a scalar (unit for Pin^c / Spin^c).
inline std::vector<CliffordElement> sample_group(const Signature& sig, GroupKind which, std::uint64_t seed, int count) {
  if (count < 1) throw std::invalid_argument("sample_group: count must be positive");
  std::mt19937_64 rng(seed);
  const bool even = which == GroupKind::Gamma_s || which == GroupKind::Spinc;
  const bool unit = which == GroupKind::Pinc || which == GroupKind::Spinc;
  std::uniform_int_distribution<int> length(0, 3);
  std::vector<CliffordElement> out;
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    int factors = length(rng);
    if (even) factors = 2 * (factors % 3);
    CliffordElement x = CliffordElement::scalar(sig, unit ? detail::random_unit_scalar(rng) : detail::random_nonzero_scalar(rng));
    for (int f = 0; f < factors; ++f) {
      auto v = unit ? detail::random_unit_vector(sig, rng) : detail::random_non_null_vector(sig, rng);
      x = x * detail::as_element(sig, v);
    }
    out.push_back(std::move(x));
  }
  return out;
}

// For x in the even Clifford group of an odd-dimensional signature: gamma(x)
// is a Lipschitz member, the even-blade preimage recovers x, and the
// extracted isometry agrees with the twisted adjoint.
inline bool odd_iso_roundtrip(const MatrixRep& rep, const CliffordElement& x) {
  if (!rep.sig().odd()) throw std::invalid_argument("odd_iso_roundtrip requires odd dimension");
  if (rep.flavor() != Flavor::PauliPlus && rep.flavor() != Flavor::PauliMinus)
    throw std::invalid_argument("odd_iso_roundtrip requires a Pauli representation");
  if (!x.is_even()) throw std::invalid_argument("odd_iso_roundtrip: element is not even");
  auto membership = group_membership(x);
  if (!membership.in_gamma) throw std::invalid_argument("odd_iso_roundtrip: element is not in the Clifford group");
  const CMatrix phi = evaluate(rep, x);
  auto el = lipschitz_member(phi, rep);
  if (!el) return false;
  auto back = lipschitz_preimage(rep, phi);
  if (!back || *back != x) return false;
  if (!(el->phi0 == *membership.adjoint)) return false;
  return el->norm_value && *el->norm_value == membership.norm.coefficient(0);
}

// Dirac case: the complexified representation is bijective, Clifford-group
// samples land in the Lipschitz group and Lipschitz members pull back into
// the Clifford group.
inline bool even_case_check(const MatrixRep& rep, std::uint64_t seed, int samples) {
  if (rep.sig().odd()) throw std::invalid_argument("even_case_check requires even dimension");
  const Signature& sig = rep.sig();
  if (evaluation_rank(rep) != sig.blade_count() || sig.blade_count() != rep.n() * rep.n()) return false;
  auto shared = std::make_shared<const MatrixRep>(rep);
  for (const auto& x : sample_group(sig, GroupKind::Gamma, seed, samples)) {
    auto el = lipschitz_member(evaluate(rep, x), shared);
    if (!el) return false;
    auto back = lipschitz_preimage(rep, el->matrix);
    if (!back || *back != x || !group_membership(*back).in_gamma) return false;
    // Ad_gamma matches the twisted adjoint up to the parity sign
    QMatrix expected = group_membership(x).adjoint->matrix();
    if (x.is_odd()) expected = -expected;
    if (el->phi0.matrix() != expected) return false;
  }
  return true;
}

}  // namespace cliffordlab
