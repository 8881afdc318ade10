#pragma once

#include <array>

#include "gapcert/interval.hpp"

namespace gapcert {

// Truncated Taylor expansion in one variable with interval coefficients:
// c[k] encloses f^(k)(x)/k! for every x in the expansion point set.
template <int K>
struct Jet {
    static_assert(K >= 0);
    std::array<Interval, K + 1> c{};

    static Jet constant(const Interval& v) {
        Jet j;
        j.c[0] = v;
        return j;
    }
    static Jet variable(const Interval& x) {
        Jet j;
        j.c[0] = x;
        if constexpr (K >= 1) j.c[1] = Interval(1.0);
        return j;
    }

    const Interval& value() const { return c[0]; }
    Interval d1() const {
        if constexpr (K >= 1) return c[1];
        return Interval(0.0);
    }
    Interval d2() const {
        if constexpr (K >= 2) return c[2] * Interval(2.0);
        return Interval(0.0);
    }
    Interval derivative(int k) const {
        Interval f(1.0);
        for (int i = 2; i <= k; ++i) f = f * Interval(static_cast<double>(i));
        return c[k] * f;
    }
};

using Jet2 = Jet<2>;

template <int K>
Jet<K> operator+(const Jet<K>& a, const Jet<K>& b) {
    Jet<K> r;
    for (int k = 0; k <= K; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}

template <int K>
Jet<K> operator-(const Jet<K>& a, const Jet<K>& b) {
    Jet<K> r;
    for (int k = 0; k <= K; ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}

template <int K>
Jet<K> operator-(const Jet<K>& a) {
    Jet<K> r;
    for (int k = 0; k <= K; ++k) r.c[k] = -a.c[k];
    return r;
}

template <int K>
Jet<K> operator+(const Jet<K>& a, const Interval& s) {
    Jet<K> r = a;
    r.c[0] = r.c[0] + s;
    return r;
}

template <int K>
Jet<K> operator+(const Interval& s, const Jet<K>& a) {
    return a + s;
}

template <int K>
Jet<K> operator-(const Jet<K>& a, const Interval& s) {
    Jet<K> r = a;
    r.c[0] = r.c[0] - s;
    return r;
}

template <int K>
Jet<K> operator-(const Interval& s, const Jet<K>& a) {
    Jet<K> r = -a;
    r.c[0] = r.c[0] + s;
    return r;
}

template <int K>
Jet<K> operator*(const Jet<K>& a, const Interval& s) {
    Jet<K> r;
    for (int k = 0; k <= K; ++k) r.c[k] = a.c[k] * s;
    return r;
}

template <int K>
Jet<K> operator*(const Interval& s, const Jet<K>& a) {
    return a * s;
}

template <int K>
Jet<K> operator*(const Jet<K>& a, const Jet<K>& b) {
    Jet<K> r;
    for (int k = 0; k <= K; ++k) {
        Interval acc = a.c[0] * b.c[k];
        for (int i = 1; i <= k; ++i) acc = acc + a.c[i] * b.c[k - i];
        r.c[k] = acc;
    }
    return r;
}

template <int K>
Jet<K> operator/(const Jet<K>& a, const Jet<K>& b) {
    Jet<K> q;
    for (int k = 0; k <= K; ++k) {
        Interval acc = a.c[k];
        for (int j = 1; j <= k; ++j) acc = acc - b.c[j] * q.c[k - j];
        q.c[k] = acc / b.c[0];
    }
    return q;
}

template <int K>
Jet<K> sqr(const Jet<K>& a) {
    Jet<K> r;
    for (int k = 0; k <= K; ++k) {
        Interval acc(0.0);
        for (int i = 0; 2 * i < k; ++i) acc = acc + a.c[i] * a.c[k - i];
        acc = acc * Interval(2.0);
        if (k % 2 == 0) acc = acc + sqr(a.c[k / 2]);
        r.c[k] = acc;
    }
    return r;
}

template <int K>
Jet<K> exp(const Jet<K>& a) {
    Jet<K> e;
    e.c[0] = exp(a.c[0]);
    for (int k = 1; k <= K; ++k) {
        Interval acc(0.0);
        for (int j = 1; j <= k; ++j) acc = acc + Interval(static_cast<double>(j)) * a.c[j] * e.c[k - j];
        e.c[k] = acc / Interval(static_cast<double>(k));
    }
    return e;
}

// Derivative of the represented function, one order lower.
template <int K>
Jet<K - 1> differentiate(const Jet<K>& a) {
    Jet<K - 1> d;
    for (int k = 0; k < K; ++k) d.c[k] = a.c[k + 1] * Interval(static_cast<double>(k + 1));
    return d;
}

// Drops the top coefficients.
template <int M, int K>
Jet<M> truncate(const Jet<K>& a) {
    static_assert(M <= K);
    Jet<M> r;
    for (int k = 0; k <= M; ++k) r.c[k] = a.c[k];
    return r;
}

// Encloses f(X) via the Taylor form around the expansion point of `at_mid`,
// using the remainder coefficient of `over_x` (a jet evaluated over X).
template <int K>
Interval taylor_form(const Jet<K>& at_mid, const Jet<K>& over_x, const Interval& offset) {
    Interval r = over_x.c[K];
    for (int k = K - 1; k >= 0; --k) r = r * offset + at_mid.c[k];
    return r;
}

}  // namespace gapcert
