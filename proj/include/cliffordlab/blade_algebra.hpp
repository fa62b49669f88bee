#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cliffordlab/gaussian_rational.hpp"
#include "cliffordlab/linear_algebra.hpp"
#include "cliffordlab/matrix.hpp"
#include "cliffordlab/signature.hpp"

namespace cliffordlab {

using Blade = std::uint32_t;

inline int grade(Blade b) { return std::popcount(b); }

// Sign of e_a * e_b = sign * e_{a^b} for canonical (increasing-index) blades:
// one factor of -1 per transposition needed to merge the factors, times the
// metric of every generator the two blades share.
inline int blade_sign(Blade a, Blade b, const Signature& sig) {
  int swaps = 0;
  for (Blade t = a >> 1; t != 0; t >>= 1) swaps += std::popcount(t & b);
  int sign = (swaps % 2) ? -1 : 1;
  for (Blade common = a & b; common != 0; common &= common - 1) {
    if (sig.metric(std::countr_zero(common)) < 0) sign = -sign;
  }
  return sign;
}

enum class InvolutionKind { parity, reversion, twisted_reversion, parity_C, reversion_C, twisted_reversion_C };

// Element of Cl(p,q) (real coefficients) or its complexification. Zero
// coefficients are never stored, so the empty map is the zero element.
template <typename Scalar>
class BasicCliffordElement {
 public:
  using scalar_type = Scalar;
  using Terms = std::map<Blade, Scalar>;

  explicit BasicCliffordElement(Signature sig) : sig_(sig) {}
  BasicCliffordElement(Signature sig, Terms terms) : sig_(sig), terms_(std::move(terms)) { prune_and_check(); }

  static BasicCliffordElement scalar(Signature sig, Scalar s) { return BasicCliffordElement(sig, Terms{{0u, std::move(s)}}); }
  static BasicCliffordElement one(Signature sig) { return scalar(sig, Scalar(1)); }
  static BasicCliffordElement blade(Signature sig, Blade b, Scalar s = Scalar(1)) {
    return BasicCliffordElement(sig, Terms{{b, std::move(s)}});
  }
  // e_{k+1} for zero-based k.
  static BasicCliffordElement generator(Signature sig, int k) { return blade(sig, Blade{1} << k); }
  static BasicCliffordElement vector(Signature sig, const std::vector<Scalar>& coords) {
    if (coords.size() != static_cast<std::size_t>(sig.dim())) throw std::invalid_argument("vector: wrong coordinate count");
    Terms t;
    for (int k = 0; k < sig.dim(); ++k)
      if (!scalar_traits<Scalar>::is_zero(coords[k])) t.emplace(Blade{1} << k, coords[k]);
    return BasicCliffordElement(sig, std::move(t));
  }

  const Signature& sig() const { return sig_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(Blade b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  bool is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0u); }
  bool is_even() const {
    for (const auto& [b, c] : terms_)
      if (grade(b) % 2) return false;
    return true;
  }
  bool is_odd() const {
    for (const auto& [b, c] : terms_)
      if (grade(b) % 2 == 0) return false;
    return true;
  }
  bool is_homogeneous(int k) const {
    for (const auto& [b, c] : terms_)
      if (grade(b) != k) return false;
    return true;
  }
  bool is_real() const
    requires std::same_as<Scalar, GaussianRational>
  {
    for (const auto& [b, c] : terms_)
      if (!c.is_real()) return false;
    return true;
  }

  BasicCliffordElement& operator+=(const BasicCliffordElement& o) {
    require_same(sig_, o.sig_, "clifford sum");
    for (const auto& [b, c] : o.terms_) accumulate(b, c);
    return *this;
  }
  BasicCliffordElement& operator-=(const BasicCliffordElement& o) {
    require_same(sig_, o.sig_, "clifford difference");
    for (const auto& [b, c] : o.terms_) accumulate(b, -c);
    return *this;
  }
  BasicCliffordElement& operator*=(const Scalar& s) {
    if (scalar_traits<Scalar>::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [b, c] : terms_) c *= s;
    return *this;
  }

  friend BasicCliffordElement operator+(BasicCliffordElement a, const BasicCliffordElement& b) { return a += b; }
  friend BasicCliffordElement operator-(BasicCliffordElement a, const BasicCliffordElement& b) { return a -= b; }
  friend BasicCliffordElement operator-(BasicCliffordElement a) {
    for (auto& [b, c] : a.terms_) c = -c;
    return a;
  }
  friend BasicCliffordElement operator*(BasicCliffordElement a, const Scalar& s) { return a *= s; }
  friend BasicCliffordElement operator*(const Scalar& s, BasicCliffordElement a) { return a *= s; }

  // Clifford product.
  friend BasicCliffordElement operator*(const BasicCliffordElement& a, const BasicCliffordElement& b) {
    require_same(a.sig_, b.sig_, "cl_product");
    BasicCliffordElement out(a.sig_);
    for (const auto& [ba, ca] : a.terms_)
      for (const auto& [bb, cb] : b.terms_) {
        Scalar v = ca * cb;
        if (blade_sign(ba, bb, a.sig_) < 0) v = -v;
        out.accumulate(ba ^ bb, v);
      }
    return out;
  }

  friend bool operator==(const BasicCliffordElement& a, const BasicCliffordElement& b) {
    return a.sig_ == b.sig_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const BasicCliffordElement& a, const BasicCliffordElement& b) { return !(a == b); }

  // Adds c * e_b, dropping the term if it cancels.
  void accumulate(Blade b, const Scalar& c) {
    if (scalar_traits<Scalar>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (scalar_traits<Scalar>::is_zero(it->second)) terms_.erase(it);
    }
  }

 private:
  void prune_and_check() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->first >= sig_.blade_count()) throw std::invalid_argument("blade index out of range for signature");
      if (scalar_traits<Scalar>::is_zero(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  Signature sig_;
  Terms terms_;
};

using CliffordElement = BasicCliffordElement<GaussianRational>;
using CliffordElementF = BasicCliffordElement<std::complex<double>>;

inline CliffordElement cl_product(const CliffordElement& a, const CliffordElement& b) { return a * b; }

inline CliffordElementF to_float(const CliffordElement& x) {
  CliffordElementF out(x.sig());
  for (const auto& [b, c] : x.terms()) out.accumulate(b, c.to_complex());
  return out;
}

// Sign picked up by a grade-k blade under the (anti)automorphism.
inline int involution_sign(InvolutionKind kind, int k) {
  auto parity = (k % 2) ? -1 : 1;
  auto reversion = ((k * (k - 1) / 2) % 2) ? -1 : 1;
  switch (kind) {
    case InvolutionKind::parity:
    case InvolutionKind::parity_C:
      return parity;
    case InvolutionKind::reversion:
    case InvolutionKind::reversion_C:
      return reversion;
    case InvolutionKind::twisted_reversion:
    case InvolutionKind::twisted_reversion_C:
      return parity * reversion;
  }
  return 1;
}

// parity_C is the C-linear extension of parity; reversion_C and
// twisted_reversion_C are antilinear (they also conjugate coefficients).
template <typename Scalar>
BasicCliffordElement<Scalar> involution(const BasicCliffordElement<Scalar>& a, InvolutionKind kind) {
  const bool antilinear = kind == InvolutionKind::reversion_C || kind == InvolutionKind::twisted_reversion_C;
  typename BasicCliffordElement<Scalar>::Terms terms;
  for (const auto& [b, c] : a.terms()) {
    Scalar v = antilinear ? scalar_traits<Scalar>::conj(c) : c;
    if (involution_sign(kind, grade(b)) < 0) v = -v;
    terms.emplace(b, std::move(v));
  }
  return BasicCliffordElement<Scalar>(a.sig(), std::move(terms));
}

template <typename Scalar>
BasicCliffordElement<Scalar> parity(const BasicCliffordElement<Scalar>& a) {
  return involution(a, InvolutionKind::parity);
}

// N(x) = twisted_reversion_C(x) * x.
template <typename Scalar>
BasicCliffordElement<Scalar> twisted_norm(const BasicCliffordElement<Scalar>& a) {
  return involution(a, InvolutionKind::twisted_reversion_C) * a;
}

struct VolumeElements {
  CliffordElement nu;
  // Present only for odd dimension.
  std::optional<CliffordElement> nu_c;
  std::optional<int> sigma;
  std::optional<GaussianRational> lambda;
};

inline Blade top_blade(const Signature& sig) { return static_cast<Blade>(sig.blade_count() - 1); }

// Branch of the square root of sigma used throughout: 1 when sigma = +1 and
// -i when sigma = -1.
inline GaussianRational volume_branch(int sigma) {
  return sigma > 0 ? GaussianRational(1) : GaussianRational(Rational(0), Rational(-1));
}

inline CliffordElement volume_element(const Signature& sig, int orientation = 1) {
  if (orientation != 1 && orientation != -1) throw std::invalid_argument("orientation must be +1 or -1");
  return CliffordElement::blade(sig, top_blade(sig), GaussianRational(orientation));
}

inline CliffordElement complex_volume_element(const Signature& sig, int orientation = 1) {
  if (!sig.odd()) throw std::invalid_argument("complex volume element requires odd dimension");
  return volume_element(sig, orientation) * volume_branch(*sig.sigma());
}

inline VolumeElements volume_elements(const Signature& sig, int orientation = 1) {
  VolumeElements out{volume_element(sig, orientation), std::nullopt, std::nullopt, std::nullopt};
  if (sig.odd()) {
    out.sigma = sig.sigma();
    out.lambda = volume_branch(*out.sigma);
    out.nu_c = complex_volume_element(sig, orientation);
  }
  return out;
}

// Central idempotents (1 +- nu_C)/2 splitting Cl_C into two ideals.
inline std::pair<CliffordElement, CliffordElement> ideal_projectors(const Signature& sig, int orientation = 1) {
  CliffordElement nu_c = complex_volume_element(sig, orientation);
  GaussianRational half(Rational(1, 2));
  CliffordElement one = CliffordElement::one(sig);
  return {(one + nu_c) * half, (one - nu_c) * half};
}

// Standard diagonal form H = diag(+1 x p, -1 x q).
inline QMatrix metric_matrix(const Signature& sig) {
  QMatrix h(sig.dim(), sig.dim());
  for (int k = 0; k < sig.dim(); ++k) h(k, k) = sig.metric(k);
  return h;
}

inline Rational quadratic_form(const Signature& sig, const std::vector<Rational>& v) {
  Rational out(0);
  for (int k = 0; k < sig.dim(); ++k) out += sig.metric(k) * v[k] * v[k];
  return out;
}

inline Rational bilinear_form(const Signature& sig, const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational out(0);
  for (int k = 0; k < sig.dim(); ++k) out += sig.metric(k) * a[k] * b[k];
  return out;
}

// Isometry of (V, h): columns are the images of the basis vectors.
class Isometry {
 public:
  static Isometry make(const Signature& sig, QMatrix m) {
    if (m.rows() != static_cast<std::size_t>(sig.dim()) || !m.square()) throw std::invalid_argument("isometry: wrong matrix shape");
    QMatrix h = metric_matrix(sig);
    if (m.transpose() * h * m != h) throw std::invalid_argument("isometry: matrix does not preserve the quadratic form");
    return Isometry(sig, std::move(m));
  }
  static Isometry identity(const Signature& sig) { return Isometry(sig, QMatrix::identity(sig.dim())); }
  static Isometry minus_identity(const Signature& sig) {
    QMatrix m = QMatrix::identity(sig.dim());
    for (int k = 0; k < sig.dim(); ++k) m(k, k) = -1;
    return Isometry(sig, std::move(m));
  }
  // Reflection in the hyperplane orthogonal to a non-null vector w.
  static Isometry reflection(const Signature& sig, const std::vector<Rational>& w) {
    Rational hw = quadratic_form(sig, w);
    if (sgn(hw) == 0) throw std::invalid_argument("reflection along a null vector");
    QMatrix m = QMatrix::identity(sig.dim());
    for (int j = 0; j < sig.dim(); ++j) {
      // R(e_j) = e_j - 2 h(w, e_j)/h(w,w) w
      Rational coeff = 2 * sig.metric(j) * w[j] / hw;
      for (int i = 0; i < sig.dim(); ++i) m(i, j) -= coeff * w[i];
    }
    return Isometry(sig, std::move(m));
  }

  const Signature& sig() const { return sig_; }
  const QMatrix& matrix() const { return matrix_; }
  Rational det() const { return determinant(matrix_); }

  Isometry compose(const Isometry& inner) const {
    require_same(sig_, inner.sig_, "isometry composition");
    return Isometry(sig_, matrix_ * inner.matrix_);
  }
  // Inverse of an isometry is H m^T H.
  Isometry inverse() const {
    QMatrix h = metric_matrix(sig_);
    return Isometry(sig_, h * matrix_.transpose() * h);
  }

  friend bool operator==(const Isometry& a, const Isometry& b) { return a.sig_ == b.sig_ && a.matrix_ == b.matrix_; }

 private:
  Isometry(Signature sig, QMatrix m) : sig_(sig), matrix_(std::move(m)) {}

  Signature sig_;
  QMatrix matrix_;
};

// Unique unital algebra morphism Cl(phi0) extending phi0 on V, extended
// C-linearly to coefficients.
inline CliffordElement cl_map(const Isometry& phi0, const CliffordElement& a) {
  require_same(phi0.sig(), a.sig(), "cl_map");
  const Signature& sig = a.sig();
  std::vector<CliffordElement> image_of_generator;
  image_of_generator.reserve(sig.dim());
  for (int k = 0; k < sig.dim(); ++k) {
    std::vector<GaussianRational> col(sig.dim());
    for (int i = 0; i < sig.dim(); ++i) col[i] = GaussianRational(phi0.matrix()(i, k));
    image_of_generator.push_back(CliffordElement::vector(sig, col));
  }
  std::map<Blade, CliffordElement> cache;
  cache.emplace(0u, CliffordElement::one(sig));
  // image(b) = image(b without its highest generator) * phi0(e_top)
  auto image = [&](auto&& self, Blade b) -> const CliffordElement& {
    auto it = cache.find(b);
    if (it != cache.end()) return it->second;
    int top = 31 - std::countl_zero(b);
    Blade rest = b & ~(Blade{1} << top);
    CliffordElement value = self(self, rest) * image_of_generator[top];
    return cache.emplace(b, std::move(value)).first->second;
  };
  CliffordElement out(sig);
  for (const auto& [b, c] : a.terms()) out += image(image, b) * c;
  return out;
}

// Matrix of left multiplication y -> x y on the 2^d blade basis.
inline CMatrix left_multiplication_matrix(const CliffordElement& x) {
  const Signature& sig = x.sig();
  const std::size_t n = sig.blade_count();
  CMatrix m(n, n);
  for (Blade col = 0; col < n; ++col)
    for (const auto& [b, c] : x.terms()) {
      GaussianRational v = c;
      if (blade_sign(b, col, sig) < 0) v = -v;
      m(b ^ col, col) += v;
    }
  return m;
}

// Exact inverse. Elements whose twisted norm is a non-zero scalar are
// inverted directly (a left inverse is two-sided in a finite-dimensional
// algebra); everything else goes through the 2^d x 2^d linear system.
inline std::optional<CliffordElement> clifford_inverse(const CliffordElement& x) {
  const Signature& sig = x.sig();
  if (x.is_zero()) return std::nullopt;
  CliffordElement n = twisted_norm(x);
  if (n.is_scalar() && !n.is_zero()) {
    CliffordElement candidate = involution(x, InvolutionKind::twisted_reversion_C) * (GaussianRational(1) / n.coefficient(0));
    if (x * candidate == CliffordElement::one(sig)) return candidate;
  }
  CMatrix lm = left_multiplication_matrix(x);
  std::vector<GaussianRational> rhs(sig.blade_count(), GaussianRational(0));
  rhs[0] = GaussianRational(1);
  auto sol = solve(lm, rhs);
  if (!sol) return std::nullopt;
  CliffordElement y(sig);
  for (Blade b = 0; b < sig.blade_count(); ++b) y.accumulate(b, (*sol)[b]);
  if (x * y != CliffordElement::one(sig)) return std::nullopt;
  return y;
}

}  // namespace cliffordlab
