#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "dgrefl/errors.hpp"

namespace dgrefl {

using Scalar = mpq_class;

/// The ground field: either Q or F_p. Scalars are stored as GMP rationals;
/// over F_p they are kept as canonical integer representatives in [0, p).
class Field {
 public:
  enum class Kind { Rationals, PrimeField };

  Field() = default;

  static Field rationals() { return Field{}; }

  static Field prime(std::uint64_t p) {
    mpz_class z(std::to_string(p));
    if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 30) == 0) {
      throw ArithmeticError("characteristic " + std::to_string(p) + " is not prime");
    }
    Field f;
    f.kind_ = Kind::PrimeField;
    f.p_ = p;
    f.pz_ = z;
    return f;
  }

  Kind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == Kind::Rationals; }
  std::uint64_t characteristic() const noexcept { return p_; }

  std::string tag() const { return is_rational() ? "Q" : "F" + std::to_string(p_); }

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }

  Scalar from_int(long v) const { return normalize(Scalar(v)); }

  /// Brings an arbitrary rational into the field. Over F_p the denominator
  /// must be invertible.
  Scalar normalize(const Scalar& q) const {
    if (is_rational()) return q;
    mpz_class num = q.get_num() % pz_;
    if (num < 0) num += pz_;
    mpz_class den = q.get_den() % pz_;
    if (den == 0) {
      throw ArithmeticError("division by " + std::to_string(p_) + " in F_" + std::to_string(p_));
    }
    if (den != 1) {
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz_.get_mpz_t());
      num = (num * inv) % pz_;
    }
    return Scalar(num);
  }

  Scalar add(const Scalar& a, const Scalar& b) const {
    if (is_rational()) return a + b;
    mpz_class s = a.get_num() + b.get_num();
    if (s >= pz_) s -= pz_;
    return Scalar(s);
  }

  Scalar sub(const Scalar& a, const Scalar& b) const {
    if (is_rational()) return a - b;
    mpz_class s = a.get_num() - b.get_num();
    if (s < 0) s += pz_;
    return Scalar(s);
  }

  Scalar neg(const Scalar& a) const {
    if (is_rational()) return -a;
    if (a == 0) return a;
    return Scalar(pz_ - a.get_num());
  }

  Scalar mul(const Scalar& a, const Scalar& b) const {
    if (is_rational()) return a * b;
    return Scalar(mpz_class(a.get_num() * b.get_num()) % pz_);
  }

  Scalar inv(const Scalar& a) const {
    if (a == 0) throw ArithmeticError("inverse of zero");
    if (is_rational()) return Scalar(1) / a;
    mpz_class r;
    mpz_invert(r.get_mpz_t(), a.get_num_mpz_t(), pz_.get_mpz_t());
    return Scalar(r);
  }

  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  Scalar sign(int parity) const { return (parity & 1) ? neg(one()) : one(); }

  bool operator==(const Field& o) const noexcept { return kind_ == o.kind_ && p_ == o.p_; }

 private:
  Kind kind_ = Kind::Rationals;
  std::uint64_t p_ = 0;
  mpz_class pz_;
};

/// Parses "a" or "a/b" (decimal integers) into the field.
inline Scalar parse_scalar(const Field& f, const std::string& text) {
  if (text.empty()) throw ParseError("empty coefficient");
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
  const auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("malformed coefficient '" + text + "'");
  }
  mpz_class n(strip_plus(num)), d(den);
  if (d == 0) throw ArithmeticError("zero denominator in '" + text + "'");
  if (!f.is_rational() && d % mpz_class(std::to_string(f.characteristic())) == 0) {
    throw ArithmeticError("coefficient '" + text + "' is undefined in " + f.tag());
  }
  Scalar q(n, d);
  q.canonicalize();
  return f.normalize(q);
}

inline std::string to_string(const Scalar& s) { return s.get_str(); }

}  // namespace dgrefl
