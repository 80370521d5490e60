#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace zblock {

namespace gfdetail {

// polynomials over GF(p) as little-endian int coefficient vectors

inline void pnormalize(std::vector<int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int pdeg(const std::vector<int>& a) { return static_cast<int>(a.size()) - 1; }

inline std::vector<int> pmul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    pnormalize(c);
    return c;
}

inline std::vector<int> pmod(std::vector<int> a, const std::vector<int>& m, int p) {
    pnormalize(a);
    int dm = pdeg(m);
    // m monic
    while (pdeg(a) >= dm) {
        int shift = pdeg(a) - dm;
        int c = a.back();
        for (int i = 0; i <= dm; ++i) {
            a[i + shift] = ((a[i + shift] - c * m[i]) % p + p) % p;
        }
        pnormalize(a);
    }
    return a;
}

inline std::vector<int> pgcd(std::vector<int> a, std::vector<int> b, int p) {
    pnormalize(a);
    pnormalize(b);
    auto make_monic = [&](std::vector<int>& f) {
        if (f.empty()) return;
        int lead = f.back();
        if (lead == 1) return;
        int inv = 1;
        for (int t = 1; t < p; ++t)
            if (t * lead % p == 1) {
                inv = t;
                break;
            }
        for (auto& c : f) c = c * inv % p;
    };
    while (!b.empty()) {
        make_monic(b);
        a = pmod(std::move(a), b, p);
        std::swap(a, b);
    }
    make_monic(a);
    return a;
}

inline std::vector<int> psub(std::vector<int> a, const std::vector<int>& b, int p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
    pnormalize(a);
    return a;
}

// x^(p^i) mod f via iterated p-th powers
inline std::vector<int> frobenius_power_of_x(const std::vector<int>& f, int p, int i) {
    std::vector<int> h{0, 1}; // x
    for (int round = 0; round < i; ++round) {
        // h <- h^p mod f by square-and-multiply on exponent p
        std::vector<int> acc{1};
        std::vector<int> base = h;
        int e = p;
        while (e > 0) {
            if (e & 1) acc = pmod(pmul(acc, base, p), f, p);
            base = pmod(pmul(base, base, p), f, p);
            e >>= 1;
        }
        h = acc;
    }
    return h;
}

inline bool is_irreducible(const std::vector<int>& f, int p) {
    int k = pdeg(f);
    if (k <= 0) return false;
    if (k == 1) return true;
    // f (monic, degree k) is irreducible over GF(p) iff it shares no factor
    // with x^(p^i) - x for i = 1..k/2
    for (int i = 1; i <= k / 2; ++i) {
        auto h = frobenius_power_of_x(f, p, i);
        auto diff = psub(h, {0, 1}, p);
        auto g = pgcd(diff, f, p);
        if (pdeg(g) > 0) return false;
    }
    return true;
}

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace gfdetail

class FieldContext;

/// One element of GF(p^k). Carries its field by pointer; mixing contexts is
/// a programming error caught by assertion.
struct Scalar {
    const FieldContext* f = nullptr;
    int v = 0;

    bool is_zero() const { return v == 0; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    bool operator==(const Scalar& o) const {
        assert(f == o.f);
        return v == o.v;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
};

/// GF(p^k) with a fixed monic irreducible modulus over GF(p).
///
/// Elements are encoded as integers in [0, p^k): the base-p digits are the
/// coefficients of the generator powers, little-endian. Small fields get
/// full multiplication/addition tables.
class FieldContext {
public:
    /// Builds GF(p^k) with the lexicographically smallest monic irreducible
    /// modulus of degree k (coefficient vectors compared as base-p numbers).
    static FieldContext make(int p, int k) {
        if (!gfdetail::is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
        if (k < 1) throw Error("extension degree must be >= 1");
        long long q = 1;
        for (int i = 0; i < k; ++i) {
            q *= p;
            if (q > (1ll << 30)) throw CapError("field GF(" + std::to_string(p) + "^" + std::to_string(k) + ") too large");
        }
        std::vector<int> modulus;
        for (long long low = 0; low < q; ++low) {
            std::vector<int> f(k + 1, 0);
            long long v = low;
            for (int i = 0; i < k; ++i) {
                f[i] = static_cast<int>(v % p);
                v /= p;
            }
            f[k] = 1;
            if (gfdetail::is_irreducible(f, p)) {
                modulus = f;
                break;
            }
        }
        check_internal(!modulus.empty(), "no irreducible modulus found");
        return FieldContext(p, k, q, std::move(modulus));
    }

    int p() const { return p_; }
    int k() const { return k_; }
    long long q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const {
        if (tabbed_) return add_tab_[static_cast<size_t>(a) * q_ + b];
        return add_slow(a, b);
    }

    int neg(int a) const {
        if (k_ == 1) return (p_ - a) % p_;
        auto d = digits(a);
        for (auto& c : d) c = (p_ - c) % p_;
        return undigits(d);
    }

    int sub(int a, int b) const { return add(a, neg(b)); }

    int mul(int a, int b) const {
        if (tabbed_) return mul_tab_[static_cast<size_t>(a) * q_ + b];
        return mul_slow(a, b);
    }

    int inv(int a) const {
        if (a == 0) throw Error("division by zero in GF(p^k)");
        if (tabbed_) return inv_tab_[a];
        return pow(a, q_ - 2);
    }

    int pow(int a, long long e) const {
        if (e < 0) {
            a = inv(a);
            e = -e;
        }
        int acc = 1;
        int base = a;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    /// Embeds an integer via reduction mod p (the prime subfield).
    int from_int(long long v) const { return static_cast<int>(((v % p_) + p_) % p_); }

    Scalar scalar(int code) const { return Scalar{this, code}; }
    Scalar zero() const { return Scalar{this, 0}; }
    Scalar one() const { return Scalar{this, 1}; }
    Scalar from(long long v) const { return Scalar{this, from_int(v)}; }

    std::vector<int> digits(int a) const {
        std::vector<int> d(k_);
        for (int i = 0; i < k_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    }

    int undigits(const std::vector<int>& d) const {
        int a = 0;
        for (int i = k_ - 1; i >= 0; --i) a = a * p_ + d[i];
        return a;
    }

    FieldContext(const FieldContext&) = delete;
    FieldContext& operator=(const FieldContext&) = delete;
    FieldContext(FieldContext&&) = default;
    FieldContext& operator=(FieldContext&&) = default;

private:
    FieldContext(int p, int k, long long q, std::vector<int> modulus)
        : p_(p), k_(k), q_(q), modulus_(std::move(modulus)) {
        tabbed_ = q_ <= 256;
        if (tabbed_) {
            add_tab_.resize(static_cast<size_t>(q_) * q_);
            mul_tab_.resize(static_cast<size_t>(q_) * q_);
            inv_tab_.assign(q_, 0);
            for (int a = 0; a < q_; ++a)
                for (int b = 0; b <= a; ++b) {
                    int s = add_slow(a, b);
                    int m = mul_slow(a, b);
                    add_tab_[static_cast<size_t>(a) * q_ + b] = static_cast<int16_t>(s);
                    add_tab_[static_cast<size_t>(b) * q_ + a] = static_cast<int16_t>(s);
                    mul_tab_[static_cast<size_t>(a) * q_ + b] = static_cast<int16_t>(m);
                    mul_tab_[static_cast<size_t>(b) * q_ + a] = static_cast<int16_t>(m);
                }
            for (int a = 1; a < q_; ++a) inv_tab_[a] = pow(a, q_ - 2);
        }
    }

    int add_slow(int a, int b) const {
        if (k_ == 1) return (a + b) % p_;
        int out = 0;
        int mult = 1;
        for (int i = 0; i < k_; ++i) {
            out += (a % p_ + b % p_) % p_ * mult;
            a /= p_;
            b /= p_;
            mult *= p_;
        }
        return out;
    }

    int mul_slow(int a, int b) const {
        if (k_ == 1) return static_cast<int>(static_cast<long long>(a) * b % p_);
        auto da = digits(a);
        auto db = digits(b);
        std::vector<int> prod = gfdetail::pmul(da, db, p_);
        prod = gfdetail::pmod(std::move(prod), modulus_, p_);
        prod.resize(k_, 0);
        return undigits(prod);
    }

    int p_;
    int k_;
    long long q_;
    std::vector<int> modulus_;
    bool tabbed_ = false;
    std::vector<int16_t> add_tab_, mul_tab_;
    std::vector<int> inv_tab_;
};

inline Scalar Scalar::operator+(const Scalar& o) const {
    assert(f == o.f);
    return Scalar{f, f->add(v, o.v)};
}
inline Scalar Scalar::operator-(const Scalar& o) const {
    assert(f == o.f);
    return Scalar{f, f->sub(v, o.v)};
}
inline Scalar Scalar::operator*(const Scalar& o) const {
    assert(f == o.f);
    return Scalar{f, f->mul(v, o.v)};
}
inline Scalar Scalar::operator/(const Scalar& o) const {
    assert(f == o.f);
    return Scalar{f, f->mul(v, f->inv(o.v))};
}
inline Scalar Scalar::operator-() const { return Scalar{f, f->neg(v)}; }

inline FieldContext make_field(int p, int k) { return FieldContext::make(p, k); }

} // namespace zblock
