#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "cliffordlab/blade_algebra.hpp"

namespace oracle {

using namespace cliffordlab;

// Sign of e_a e_b by literally concatenating the generator lists and bubble
// sorting them, contracting equal neighbours with the metric.
inline std::pair<int, Blade> naive_blade_product(Blade a, Blade b, const Signature& sig) {
  std::vector<int> word;
  for (int k = 0; k < sig.dim(); ++k)
    if (a >> k & 1u) word.push_back(k);
  for (int k = 0; k < sig.dim(); ++k)
    if (b >> k & 1u) word.push_back(k);
  int sign = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (word[i] > word[i + 1]) {
        std::swap(word[i], word[i + 1]);
        sign = -sign;
        changed = true;
      } else if (word[i] == word[i + 1]) {
        sign *= sig.metric(word[i]);
        word.erase(word.begin() + static_cast<long>(i), word.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  Blade out = 0;
  for (int k : word) out |= Blade{1} << k;
  return {sign, out};
}

inline Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline GaussianRational small_gaussian(std::mt19937_64& rng) {
  Rational re = small_rational(rng);
  Rational im = small_rational(rng);
  if (re == 0 && im == 0) re = 1;
  return {re, im};
}

inline CliffordElement random_element(const Signature& sig, std::mt19937_64& rng, int terms = 4) {
  std::uniform_int_distribution<Blade> blade(0, sig.blade_count() - 1);
  CliffordElement x(sig);
  for (int t = 0; t < terms; ++t) x.accumulate(blade(rng), small_gaussian(rng));
  return x;
}

inline std::vector<Signature> signatures_up_to(int max_dim) {
  std::vector<Signature> out;
  for (int d = 1; d <= max_dim; ++d)
    for (int p = 0; p <= d; ++p) out.emplace_back(p, d - p);
  return out;
}

}  // namespace oracle
