#pragma once

#include <array>
#include <complex>

namespace oscillax {

// Truncated Taylor series: c[k] = f^(k)(s)/k!.
template <class T, int N>
struct Jet {
  std::array<T, N> c{};

  static Jet constant(T v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  static Jet variable(T v) {
    Jet j;
    j.c[0] = v;
    if constexpr (N > 1) j.c[1] = T(1);
    return j;
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k < N; ++k) c[k] += o.c[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k < N; ++k) c[k] -= o.c[k];
    return *this;
  }
  Jet& operator*=(T s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, T s) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i < N; ++i)
      for (int j = 0; i + j < N; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  // a / b, requires b.c[0] != 0
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k < N; ++k) {
      T acc = a.c[k];
      for (int j = 1; j <= k; ++j) acc -= b.c[j] * r.c[k - j];
      r.c[k] = acc / b.c[0];
    }
    return r;
  }

  // k-th derivative
  T deriv(int k) const {
    T f = c[k];
    for (int i = 2; i <= k; ++i) f *= T(i);
    return f;
  }
};

template <class T, int N>
Jet<T, N> pow(const Jet<T, N>& a, int e) {
  Jet<T, N> r = Jet<T, N>::constant(T(1));
  Jet<T, N> base = a;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

}  // namespace oscillax
