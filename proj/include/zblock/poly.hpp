#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "errors.hpp"
#include "gf.hpp"
#include "linalg.hpp"

namespace zblock {

/// Dense univariate polynomial over GF(p^k), little-endian field codes,
/// normalized (no trailing zeros).
struct Poly {
    const FieldContext* f = nullptr;
    std::vector<int> c;

    Poly() = default;
    Poly(const FieldContext& field, std::vector<int> coeffs) : f(&field), c(std::move(coeffs)) { normalize(); }

    static Poly zero(const FieldContext& field) { return Poly(field, {}); }
    static Poly one(const FieldContext& field) { return Poly(field, {1}); }
    static Poly x(const FieldContext& field) { return Poly(field, {0, 1}); }
    static Poly constant(const FieldContext& field, int code) { return Poly(field, {code}); }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    int lead() const { return c.back(); }
    int coeff(int i) const { return i < static_cast<int>(c.size()) ? c[i] : 0; }

    bool operator==(const Poly& o) const { return c == o.c; }

    Poly operator+(const Poly& o) const {
        std::vector<int> r(std::max(c.size(), o.c.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = f->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
        return Poly(*f, std::move(r));
    }

    Poly operator-(const Poly& o) const {
        std::vector<int> r(std::max(c.size(), o.c.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = f->sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
        return Poly(*f, std::move(r));
    }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return zero(*f);
        std::vector<int> r(c.size() + o.c.size() - 1, 0);
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            for (size_t j = 0; j < o.c.size(); ++j) {
                if (o.c[j] == 0) continue;
                r[i + j] = f->add(r[i + j], f->mul(c[i], o.c[j]));
            }
        }
        return Poly(*f, std::move(r));
    }

    Poly scaled(int code) const {
        std::vector<int> r = c;
        for (auto& v : r) v = f->mul(v, code);
        return Poly(*f, std::move(r));
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(f->inv(lead()));
    }

    int eval(int at) const {
        int acc = 0;
        for (int i = degree(); i >= 0; --i) acc = f->add(f->mul(acc, at), c[i]);
        return acc;
    }

    Poly derivative() const {
        if (degree() < 1) return zero(*f);
        std::vector<int> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) {
            int times = static_cast<int>(i % f->p());
            r[i - 1] = f->mul(c[i], f->from_int(times));
        }
        return Poly(*f, std::move(r));
    }
};

inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    Poly rem = a;
    Poly quot = Poly::zero(*a.f);
    quot.c.assign(std::max(0, a.degree() - b.degree() + 1), 0);
    int lead_inv = a.f->inv(b.lead());
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int shift = rem.degree() - b.degree();
        int factor = a.f->mul(rem.lead(), lead_inv);
        quot.c[shift] = a.f->add(quot.c.size() > static_cast<size_t>(shift) ? quot.c[shift] : 0, factor);
        for (int i = 0; i <= b.degree(); ++i)
            rem.c[i + shift] = a.f->sub(rem.c[i + shift], a.f->mul(factor, b.c[i]));
        rem.normalize();
    }
    quot.normalize();
    return {quot, rem};
}

inline Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline Poly poly_lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly::zero(*a.f);
    Poly g = poly_gcd(a, b);
    return poly_divmod(a * b, g).first.monic();
}

inline Poly poly_powmod(const Poly& base, long long e, const Poly& mod) {
    Poly acc = Poly::one(*base.f);
    Poly b = poly_mod(base, mod);
    while (e > 0) {
        if (e & 1) acc = poly_mod(acc * b, mod);
        b = poly_mod(b * b, mod);
        e >>= 1;
    }
    return acc;
}

/// All roots in GF(q) of a monic squarefree polynomial that splits into
/// distinct linear factors. Uses randomized equal-degree splitting; the rng
/// only affects the work done, never the result. Throws SplittingError when
/// the polynomial has an irreducible factor of degree > 1.
inline std::vector<int> poly_roots_linear(const Poly& input, std::mt19937_64& rng) {
    const FieldContext& f = *input.f;
    Poly g = input.monic();
    if (g.degree() <= 0) return {};
    // split check: f divides x^q - x exactly when all factors are linear
    Poly xq = poly_powmod(Poly::x(f), f.q(), g);
    if (!(xq == poly_mod(Poly::x(f), g)))
        throw SplittingError("polynomial does not split into linear factors over GF(" + std::to_string(f.p()) + "^" +
                             std::to_string(f.k()) + ")");
    std::vector<int> roots;
    std::vector<Poly> stack{g};
    std::uniform_int_distribution<long long> dist(0, f.q() - 1);
    while (!stack.empty()) {
        Poly cur = stack.back();
        stack.pop_back();
        if (cur.degree() == 0) continue;
        if (cur.degree() == 1) {
            roots.push_back(f.neg(cur.c[0]));
            continue;
        }
        if (cur.coeff(0) == 0) {
            // pull out the root 0 directly
            roots.push_back(0);
            std::vector<int> shifted(cur.c.begin() + 1, cur.c.end());
            stack.push_back(Poly(f, std::move(shifted)));
            continue;
        }
        Poly divisor = Poly::zero(f);
        for (int attempt = 0; attempt < 128; ++attempt) {
            int a = static_cast<int>(dist(rng));
            Poly cand;
            if (f.p() == 2) {
                // trace splitting: T(a x) = sum (a x)^(2^i), i < k
                Poly ax = Poly(f, {0, a});
                Poly term = poly_mod(ax, cur);
                Poly acc = term;
                for (int i = 1; i < f.k(); ++i) {
                    term = poly_mod(term * term, cur);
                    acc = acc + term;
                }
                cand = poly_gcd(acc, cur);
            } else {
                Poly shifted = Poly(f, {a, 1});
                Poly powed = poly_powmod(shifted, (f.q() - 1) / 2, cur);
                cand = poly_gcd(powed - Poly::one(f), cur);
            }
            if (cand.degree() > 0 && cand.degree() < cur.degree()) {
                divisor = cand;
                break;
            }
        }
        check_internal(!divisor.is_zero(), "equal-degree splitting stalled");
        stack.push_back(divisor);
        stack.push_back(poly_divmod(cur, divisor).first);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Minimal polynomial of a square matrix, via per-seed Krylov dependences
/// accumulated by lcm.
inline Poly min_poly(const Matrix& t) {
    if (t.rows() != t.cols()) throw Error("min_poly requires a square matrix");
    const FieldContext& f = t.field();
    int n = t.rows();
    if (n == 0) return Poly::one(f);
    Poly mu = Poly::one(f);
    auto apply_poly = [&](const Poly& p, const std::vector<int>& v) {
        std::vector<int> acc(n, 0);
        for (int i = p.degree(); i >= 0; --i) {
            acc = t.apply(acc);
            if (p.c[i] != 0)
                for (int j = 0; j < n; ++j) acc[j] = f.add(acc[j], f.mul(p.c[i], v[j]));
        }
        return acc;
    };
    for (int seed = 0; seed < n; ++seed) {
        std::vector<int> e(n, 0);
        e[seed] = 1;
        auto img = apply_poly(mu, e);
        bool killed = true;
        for (int v : img)
            if (v != 0) killed = false;
        if (killed) continue;
        // Krylov chain from this seed
        std::vector<std::vector<int>> chain{e};
        while (true) {
            std::vector<int> next = t.apply(chain.back());
            Matrix m = Matrix::from_rows(f, chain);
            auto combo = m.solve_rows(next);
            if (combo) {
                // next = sum combo_i chain_i  ->  monic dependence polynomial
                std::vector<int> coeffs(chain.size() + 1, 0);
                for (size_t i = 0; i < combo->size(); ++i) coeffs[i] = f.neg((*combo)[i]);
                coeffs[chain.size()] = 1;
                mu = poly_lcm(mu, Poly(f, std::move(coeffs)));
                break;
            }
            chain.push_back(std::move(next));
            check_internal(static_cast<int>(chain.size()) <= n + 1, "Krylov chain exceeded dimension");
        }
        if (mu.degree() == n) break;
    }
    return mu;
}

} // namespace zblock
