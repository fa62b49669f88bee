#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace cliffordlab {

// Signature (p, q) of a non-degenerate real quadratic space: generators
// e_1..e_p square to +1, e_{p+1}..e_{p+q} square to -1.
class Signature {
 public:
  static constexpr int kMaxDim = 16;

  Signature(int p, int q) : p_(p), q_(q) {
    if (p < 0 || q < 0) throw std::invalid_argument("signature counts must be non-negative");
    if (p + q < 1) throw std::invalid_argument("degenerate signature (p = q = 0)");
    if (p + q > kMaxDim) throw std::invalid_argument("signature dimension exceeds " + std::to_string(kMaxDim));
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int dim() const { return p_ + q_; }
  bool odd() const { return dim() % 2 == 1; }
  unsigned blade_count() const { return 1u << dim(); }

  // h(e_k, e_k) for zero-based generator index k.
  int metric(int k) const { return k < p_ ? 1 : -1; }

  // (p - q) mod 8 in 0..7.
  int mod8() const { return (((p_ - q_) % 8) + 8) % 8; }

  // (-1)^((p-q-1)/2); defined for odd d only.
  std::optional<int> sigma() const {
    if (!odd()) return std::nullopt;
    int half = (p_ - q_ - 1) / 2;  // exact, p - q - 1 is even
    return (half % 2 == 0) ? 1 : -1;
  }

  friend bool operator==(const Signature& a, const Signature& b) { return a.p_ == b.p_ && a.q_ == b.q_; }
  friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }

  std::string to_string() const { return "(" + std::to_string(p_) + "," + std::to_string(q_) + ")"; }

 private:
  int p_;
  int q_;
};

inline void require_same(const Signature& a, const Signature& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": signature mismatch " + a.to_string() + " vs " + b.to_string());
}

}  // namespace cliffordlab
