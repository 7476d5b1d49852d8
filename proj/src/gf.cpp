#include "strat/gf.hpp"

#include <stdexcept>

namespace strat {

namespace {

// Defining polynomials, coefficients c_0..c_k, one row per degree 1..12.
// Each is the monic primitive polynomial whose low-coefficient vector is
// minimal as a base-p integer (output of tools/gen_primitive_polys.py).
const std::vector<std::vector<int>> kModuli2 = {
    {1, 1},                                // x + 1
    {1, 1, 1},                             // x^2 + x + 1
    {1, 1, 0, 1},                          // x^3 + x + 1
    {1, 1, 0, 0, 1},                       // x^4 + x + 1
    {1, 0, 1, 0, 0, 1},                    // x^5 + x^2 + 1
    {1, 1, 0, 0, 0, 0, 1},                 // x^6 + x + 1
    {1, 1, 0, 0, 0, 0, 0, 1},              // x^7 + x + 1
    {1, 0, 1, 1, 1, 0, 0, 0, 1},           // x^8 + x^4 + x^3 + x^2 + 1
    {1, 0, 0, 0, 1, 0, 0, 0, 0, 1},        // x^9 + x^4 + 1
    {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1},     // x^10 + x^3 + 1
    {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1},  // x^11 + x^2 + 1
    {1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1}, // x^12 + x^6 + x^4 + x + 1
};
const std::vector<std::vector<int>> kModuli3 = {
    {1, 1},                                // x + 1
    {2, 1, 1},                             // x^2 + x + 2
    {1, 2, 0, 1},                          // x^3 + 2x + 1
    {2, 1, 0, 0, 1},                       // x^4 + x + 2
    {1, 2, 0, 0, 0, 1},                    // x^5 + 2x + 1
    {2, 1, 0, 0, 0, 0, 1},                 // x^6 + x + 2
    {1, 2, 1, 0, 0, 0, 0, 1},              // x^7 + x^2 + 2x + 1
    {2, 0, 0, 1, 0, 0, 0, 0, 1},           // x^8 + x^3 + 2
    {1, 0, 1, 2, 0, 0, 0, 0, 0, 1},        // x^9 + 2x^3 + x^2 + 1
    {2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1},     // x^10 + x^3 + x + 2
    {1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1},  // x^11 + x^2 + 2x + 1
    {2, 2, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0, 1}, // x^12 + 2x^4 + x^3 + 2x^2 + 2x + 2
};

constexpr uint32_t kNoLog = 0xffffffffu;

} // namespace

GFField::GFField(int p, int k) : p_(p), k_(k) {
  if (p != 2 && p != 3) throw std::invalid_argument("GFField: p must be 2 or 3");
  if (k < 1 || k > 12) throw std::invalid_argument("GFField: degree must be in 1..12");
  modulus_ = (p == 2 ? kModuli2 : kModuli3)[k - 1];

  size_ = 1;
  for (int i = 0; i < k; ++i) size_ *= (uint32_t)p;
  n_ = size_ - 1;

  // Walk x^0, x^1, ... in coefficient digits; encoding each power fills exp_,
  // and the inverse table must come out a bijection on nonzero codes.
  exp_.assign(2 * n_, 0);
  log_.assign(size_, kNoLog);
  std::vector<int> cur(k, 0);
  cur[0] = 1;
  for (uint32_t i = 0; i < n_; ++i) {
    uint32_t code = 0;
    for (int j = k - 1; j >= 0; --j) code = code * (uint32_t)p + (uint32_t)cur[j];
    exp_[i] = code;
    if (log_[code] != kNoLog)
      throw std::logic_error("GFField: table polynomial is not primitive");
    log_[code] = i;
    int carry = cur[k - 1];
    for (int j = k - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (carry)
      for (int j = 0; j < k; ++j) cur[j] = ((cur[j] - carry * modulus_[j]) % p + p) % p;
  }
  for (int j = 0; j < k; ++j)
    if (cur[j] != (j == 0 ? 1 : 0))
      throw std::logic_error("GFField: x^(p^k-1) != 1 under the table polynomial");
  for (uint32_t c = 1; c < size_; ++c)
    if (log_[c] == kNoLog)
      throw std::logic_error("GFField: table polynomial is not primitive");
  for (uint32_t i = 0; i < n_; ++i) exp_[n_ + i] = exp_[i];
  gen_ = exp_[1 % n_ == 1 ? 1 : 0]; // the class of x (x = 1 when p^k = 2)
}

uint32_t GFField::add(uint32_t a, uint32_t b) const {
  if (p_ == 2) return a ^ b;
  uint32_t out = 0, mult = 1;
  for (int j = 0; j < k_; ++j) {
    out += mult * ((a % 3 + b % 3) % 3);
    a /= 3;
    b /= 3;
    mult *= 3;
  }
  return out;
}

uint32_t GFField::neg(uint32_t a) const {
  if (p_ == 2) return a;
  uint32_t out = 0, mult = 1;
  for (int j = 0; j < k_; ++j) {
    out += mult * ((3 - a % 3) % 3);
    a /= 3;
    mult *= 3;
  }
  return out;
}

uint32_t GFField::mul(uint32_t a, uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

uint32_t GFField::inv(uint32_t a) const {
  if (a == 0) throw std::invalid_argument("GFField: inverse of zero");
  return exp_[n_ - log_[a]];
}

uint32_t GFField::log(uint32_t a) const {
  if (a == 0) throw std::invalid_argument("GFField: log of zero");
  return log_[a];
}

uint32_t GFField::pow(uint32_t a, long long e) const {
  if (a == 0) {
    if (e > 0) return 0;
    if (e == 0) return 1;
    throw std::invalid_argument("GFField: negative power of zero");
  }
  long long r = ((e % n_) * (long long)log_[a]) % n_;
  if (r < 0) r += n_;
  return exp_[r];
}

uint32_t GFField::frob_power(uint32_t a, int j) const {
  if (j < 0) throw std::invalid_argument("GFField: negative Frobenius iterate");
  long long e = 1;
  for (int i = 0; i < j % k_; ++i) e *= p_; // a^(p^k) = a, so reduce j mod k
  return pow(a, e);
}

uint32_t GFField::from_int(long long c) const {
  return (uint32_t)((c % p_ + p_) % p_);
}

GFEmbedding::GFEmbedding(const GFField &from, const GFField &to)
    : from_(&from), to_(&to) {
  if (from.p() != to.p())
    throw std::invalid_argument("GFEmbedding: unequal characteristics");
  if (to.degree() % from.degree() != 0)
    throw std::invalid_argument("GFEmbedding: source degree must divide target degree");
  int a = from.degree();
  uint32_t root = 0;
  if (a == to.degree()) {
    root = from.generator(); // same table polynomial: identity map
  } else {
    // The subfield of order p^a is the set of powers of g^step (plus zero);
    // scan it for roots of the small modulus and keep the smallest code.
    uint32_t step = (to.size() - 1) / (from.size() - 1);
    for (uint32_t j = 0; j + 1 < from.size(); ++j) {
      uint32_t cand = to.pow(to.generator(), (long long)j * step);
      uint32_t val = 0;
      for (int d = a; d >= 0; --d)
        val = to.add(to.mul(val, cand), to.from_int(from.modulus()[d]));
      if (val == 0 && (root == 0 || cand < root)) root = cand;
    }
    if (root == 0) throw std::logic_error("GFEmbedding: modulus has no root in target");
  }
  xpow_.assign(a, 1);
  for (int i = 1; i < a; ++i) xpow_[i] = to.mul(xpow_[i - 1], root);
}

uint32_t GFEmbedding::operator()(uint32_t a) const {
  uint32_t out = 0;
  for (int i = 0; i < from_->degree(); ++i) {
    uint32_t digit = a % (uint32_t)from_->p();
    a /= (uint32_t)from_->p();
    if (digit) out = to_->add(out, to_->mul(to_->from_int(digit), xpow_[i]));
  }
  return out;
}

} // namespace strat
