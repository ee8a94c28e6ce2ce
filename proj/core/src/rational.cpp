// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The litkg Authors

#include "litkg/rational.hpp"

#include <numeric>

#include "litkg/error.hpp"

namespace litkg {

namespace {

__extension__ typedef __int128 i128;

std::int64_t narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorCode::Internal, "rational overflow");
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a == 0 ? 1 : a;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& o) {
  const auto g = std::gcd(den_, o.den_);
  const i128 den = static_cast<i128>(den_ / g) * o.den_;
  const i128 num = static_cast<i128>(num_) * (o.den_ / g) + static_cast<i128>(o.num_) * (den_ / g);
  const i128 h = gcd128(num, den);
  *this = Rational(narrow(num / h), narrow(den / h));
  return *this;
}

Rational operator*(const Rational& a, const Rational& b) {
  const auto g1 = std::gcd(a.num_, b.den_);
  const auto g2 = std::gcd(b.num_, a.den_);
  const i128 num = static_cast<i128>(a.num_ / g1) * (b.num_ / g2);
  const i128 den = static_cast<i128>(a.den_ / g2) * (b.den_ / g1);
  return Rational(narrow(num), narrow(den));
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  const i128 l = static_cast<i128>(a.num_) * b.den_;
  const i128 r = static_cast<i128>(b.num_) * a.den_;
  return l <=> r;
}

}  // namespace litkg
