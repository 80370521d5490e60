#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gf.hpp"
#include "group.hpp"
#include "linalg.hpp"
#include "poly.hpp"

namespace zblock {

inline constexpr int kDefaultClassCap = 128;

/// Field degree sufficient to split FG and the centralizer/quotient algebras
/// used alongside it: the multiplicative order of p modulo the p'-part of
/// exp(G).
inline int splitting_degree(const Group& g, int p) {
    long long e = g.exponent();
    while (e % p == 0) e /= p;
    if (e == 1) return 1;
    long long r = p % e;
    int k = 1;
    while (r != 1) {
        r = r * p % e;
        ++k;
    }
    return k;
}

class CenterAlgebra;

/// An element of Z(FG) in class-sum coordinates.
struct CentralElement {
    const CenterAlgebra* alg = nullptr;
    std::vector<int> coords; // field codes, one per conjugacy class

    bool is_zero() const {
        for (int c : coords)
            if (c != 0) return false;
        return true;
    }

    bool operator==(const CentralElement& o) const { return coords == o.coords; }
};

/// Z(FG) on the class-sum basis. Structure constants are the integer counts
///   Chat_i * Chat_j = sum_k a[i][j][k] Chat_k,
/// a[i][j][k] = #{(u,v) in C_i x C_j : uv = w_k}, reduced into the field on
/// use. Immutable after build.
class CenterAlgebra {
public:
    static CenterAlgebra build(const Group& g, const FieldContext& f, int class_cap = kDefaultClassCap) {
        int r = g.num_classes();
        if (r > class_cap)
            throw CapError("class count " + std::to_string(r) + " exceeds dense-center cap " +
                           std::to_string(class_cap));
        CenterAlgebra z;
        z.group_ = &g;
        z.field_ = &f;
        z.dim_ = r;
        z.counts_.assign(static_cast<size_t>(r) * r * r, 0);
        for (int k = 0; k < r; ++k) {
            int w = g.class_rep(k);
            for (int u = 0; u < g.order(); ++u) {
                int v = g.mult(g.inverse(u), w);
                z.counts_[(static_cast<size_t>(g.class_of(u)) * r + g.class_of(v)) * r + k] += 1;
            }
        }
        z.codes_.resize(z.counts_.size());
        for (size_t i = 0; i < z.counts_.size(); ++i) z.codes_[i] = f.from_int(z.counts_[i]);
        return z;
    }

    const Group& group() const { return *group_; }
    const FieldContext& field() const { return *field_; }
    int dim() const { return dim_; }

    long long sc_count(int i, int j, int k) const {
        return counts_[(static_cast<size_t>(i) * dim_ + j) * dim_ + k];
    }
    int sc(int i, int j, int k) const { return codes_[(static_cast<size_t>(i) * dim_ + j) * dim_ + k]; }

    CentralElement element(std::vector<int> coords) const {
        check_internal(static_cast<int>(coords.size()) == dim_, "coordinate length mismatch");
        return CentralElement{this, std::move(coords)};
    }

    CentralElement zero() const { return element(std::vector<int>(dim_, 0)); }

    /// The identity of the algebra: the class sum of the identity class.
    CentralElement unit() const {
        std::vector<int> c(dim_, 0);
        c[0] = 1;
        return element(std::move(c));
    }

    CentralElement class_sum(int cls) const {
        std::vector<int> c(dim_, 0);
        c[cls] = 1;
        return element(std::move(c));
    }

    CentralElement add(const CentralElement& a, const CentralElement& b) const {
        std::vector<int> c(dim_);
        for (int i = 0; i < dim_; ++i) c[i] = field_->add(a.coords[i], b.coords[i]);
        return element(std::move(c));
    }

    CentralElement sub(const CentralElement& a, const CentralElement& b) const {
        std::vector<int> c(dim_);
        for (int i = 0; i < dim_; ++i) c[i] = field_->sub(a.coords[i], b.coords[i]);
        return element(std::move(c));
    }

    CentralElement scale(int code, const CentralElement& a) const {
        std::vector<int> c(dim_);
        for (int i = 0; i < dim_; ++i) c[i] = field_->mul(code, a.coords[i]);
        return element(std::move(c));
    }

    CentralElement mul(const CentralElement& a, const CentralElement& b) const {
        std::vector<int> c(dim_, 0);
        for (int i = 0; i < dim_; ++i) {
            if (a.coords[i] == 0) continue;
            for (int j = 0; j < dim_; ++j) {
                if (b.coords[j] == 0) continue;
                int ab = field_->mul(a.coords[i], b.coords[j]);
                const int* row = &codes_[(static_cast<size_t>(i) * dim_ + j) * dim_];
                for (int k = 0; k < dim_; ++k)
                    if (row[k] != 0) c[k] = field_->add(c[k], field_->mul(ab, row[k]));
            }
        }
        return element(std::move(c));
    }

    CentralElement pow(const CentralElement& a, long long e) const {
        CentralElement acc = unit();
        CentralElement base = a;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    /// Matrix of v -> a*v on class-sum coordinates.
    Matrix mult_matrix(const CentralElement& a) const {
        Matrix m(*field_, dim_, dim_);
        for (int j = 0; j < dim_; ++j) {
            CentralElement col = mul(a, class_sum(j));
            for (int i = 0; i < dim_; ++i) m.set(i, j, col.coords[i]);
        }
        return m;
    }

private:
    const Group* group_ = nullptr;
    const FieldContext* field_ = nullptr;
    int dim_ = 0;
    std::vector<long long> counts_;
    std::vector<int> codes_;
};

/// J(Z): the nilpotents. Over GF(q) the q-power map x -> x^q is F_q-linear
/// on a commutative algebra, and its stabilized kernel is exactly the
/// nilradical (= Jacobson radical here, the base field being perfect).
inline Subspace nilradical(const CenterAlgebra& z) {
    const FieldContext& f = z.field();
    int r = z.dim();
    Matrix phi(f, r, r);
    for (int j = 0; j < r; ++j) {
        CentralElement img = z.pow(z.class_sum(j), f.q());
        for (int i = 0; i < r; ++i) phi.set(i, j, img.coords[i]);
    }
    return stable_kernel(phi);
}

/// Loewy data of an ideal chain: dims = [dim I^0, dim I^1, ..., 0] with
/// I^0 the containing algebra (or block component) and LL = the number of
/// steps until zero.
struct LoewySeries {
    std::vector<int> dims;
    int length = 0;
};

namespace detail {

inline std::vector<CentralElement> subspace_elements(const CenterAlgebra& z, const Subspace& s) {
    std::vector<CentralElement> out;
    for (int i = 0; i < s.dim(); ++i) out.push_back(z.element(s.basis().row(i)));
    return out;
}

inline Subspace span_of(const CenterAlgebra& z, const std::vector<CentralElement>& elems) {
    std::vector<std::vector<int>> rows;
    for (auto& e : elems) rows.push_back(e.coords);
    if (rows.empty()) return Subspace::zero(z.field(), z.dim());
    return Subspace::from_rows(Matrix::from_rows(z.field(), rows));
}

} // namespace detail

/// Chain of powers of `ideal` inside `top`. Verifies that `ideal` really is
/// an ideal of z (closed under multiplication by every class sum).
inline LoewySeries loewy_series(const CenterAlgebra& z, const Subspace& top, const Subspace& ideal) {
    const FieldContext& f = z.field();
    // multiplication matrices of the ideal basis vectors; column c of M_b
    // is b * Chat_c, so the ideal check reads off the columns and each
    // later product is a single matrix-vector apply
    std::vector<Matrix> mult;
    for (int i = 0; i < ideal.dim(); ++i) mult.push_back(z.mult_matrix(z.element(ideal.basis().row(i))));
    for (const auto& m : mult)
        for (int c = 0; c < z.dim(); ++c) {
            std::vector<int> col(z.dim());
            for (int i = 0; i < z.dim(); ++i) col[i] = m.at(i, c);
            if (!ideal.contains(col)) throw Error("subspace is not an ideal of the center");
        }
    LoewySeries s;
    s.dims.push_back(top.dim());
    Subspace current = ideal;
    while (current.dim() > 0) {
        s.dims.push_back(current.dim());
        std::vector<std::vector<int>> products;
        for (const auto& m : mult)
            for (int u = 0; u < current.dim(); ++u) products.push_back(m.apply(current.basis().row(u)));
        Subspace next = products.empty() ? Subspace::zero(f, z.dim())
                                         : Subspace::from_rows(Matrix::from_rows(f, products));
        if (next.dim() >= current.dim()) throw Error("ideal is not nilpotent: power chain stabilized above zero");
        current = std::move(next);
    }
    s.dims.push_back(0);
    s.length = static_cast<int>(s.dims.size()) - 1;
    return s;
}

inline LoewySeries loewy_series(const CenterAlgebra& z, const Subspace& ideal) {
    return loewy_series(z, Subspace::full(z.field(), z.dim()), ideal);
}

/// A primitive central idempotent together with its stable block index.
struct BlockIdempotent {
    CentralElement idempotent;
    int index = 0;
};

namespace detail {

// Working view of S = Z/J: elements are canonical coset representatives,
// obtained by eliminating the pivot coordinates of J's echelon basis.
struct SemisimpleQuotient {
    const CenterAlgebra* z;
    const Subspace* j;

    std::vector<int> reduce(std::vector<int> v) const {
        const FieldContext& f = z->field();
        for (int i = 0; i < j->dim(); ++i) {
            int pc = j->pivots()[i];
            if (v[pc] == 0) continue;
            int c = v[pc];
            for (int col = 0; col < z->dim(); ++col) v[col] = f.sub(v[col], f.mul(c, j->basis().at(i, col)));
        }
        return v;
    }

    CentralElement reduce(const CentralElement& a) const { return z->element(reduce(a.coords)); }

    CentralElement mul(const CentralElement& a, const CentralElement& b) const { return reduce(z->mul(a, b)); }
};

struct SplitComponent {
    CentralElement idem; // idempotent of S (reduced representative)
    Subspace space;      // the ideal S*idem as a subspace of the coordinate space
};

// idempotent lifting along the nilradical: e <- 3e^2 - 2e^3 doubles the
// J-adic precision in every characteristic
inline CentralElement lift_idempotent(const CenterAlgebra& z, CentralElement e) {
    const FieldContext& f = z.field();
    int three = f.from_int(3);
    int minus_two = f.from_int(-2);
    for (int iter = 0; iter < 64; ++iter) {
        CentralElement e2 = z.mul(e, e);
        if (e2 == e) return e;
        CentralElement e3 = z.mul(e2, e);
        e = z.add(z.scale(three, e2), z.scale(minus_two, e3));
    }
    throw InternalError("idempotent lifting did not converge");
}

inline int smallest_support(const CentralElement& e) {
    for (size_t i = 0; i < e.coords.size(); ++i)
        if (e.coords[i] != 0) return static_cast<int>(i);
    return static_cast<int>(e.coords.size());
}

} // namespace detail

/// The complete set of primitive idempotents of Z(FG), each one a block
/// idempotent. Requires a splitting field; a minimal polynomial acquiring
/// an irreducible factor of degree > 1 is surfaced as SplittingError.
///
/// Method: reduce mod J to the split semisimple quotient S, separate its
/// one-dimensional components with spectral projectors of class-sum
/// multiplications (roots found by randomized equal-degree splitting, seeded
/// for reproducibility -- the resulting set is seed-independent), then lift
/// each primitive back along J and re-orthogonalize.
inline std::vector<BlockIdempotent> block_idempotents(const CenterAlgebra& z, uint64_t seed = 0) {
    const FieldContext& f = z.field();
    int r = z.dim();
    Subspace j = nilradical(z);
    detail::SemisimpleQuotient s{&z, &j};
    std::mt19937_64 rng(seed);

    // S as a subspace: the canonical complement of J
    std::vector<std::vector<int>> srows;
    for (int c = 0; c < r; ++c) srows.push_back(s.reduce(z.class_sum(c).coords));
    std::vector<detail::SplitComponent> comps;
    comps.push_back({s.reduce(z.unit()), Subspace::from_rows(Matrix::from_rows(f, srows))});
    check_internal(comps[0].space.dim() == r - j.dim(), "semisimple quotient has wrong dimension");

    for (int c = 1; c < r; ++c) {
        CentralElement u = s.reduce(z.class_sum(c));
        std::vector<detail::SplitComponent> next;
        for (auto& comp : comps) {
            int t = comp.space.dim();
            if (t <= 1) {
                next.push_back(std::move(comp));
                continue;
            }
            // matrix of v -> u*v on the component basis
            std::vector<CentralElement> basis = detail::subspace_elements(z, comp.space);
            Matrix op(f, t, t);
            for (int col = 0; col < t; ++col) {
                CentralElement w = s.mul(u, basis[col]);
                auto combo = comp.space.basis().solve_rows(w.coords);
                check_internal(combo.has_value(), "component not closed under multiplication");
                for (int row = 0; row < t; ++row) op.set(row, col, (*combo)[row]);
            }
            Poly mu = min_poly(op);
            check_internal(poly_gcd(mu, mu.derivative()).degree() == 0,
                           "minimal polynomial on semisimple quotient not squarefree");
            std::vector<int> roots = poly_roots_linear(mu, rng); // throws SplittingError if non-split
            if (roots.size() <= 1) {
                next.push_back(std::move(comp));
                continue;
            }
            for (int root : roots) {
                // Lagrange projector at this eigenvalue, evaluated in S
                Poly num = Poly::one(f);
                int denom = 1;
                for (int other : roots) {
                    if (other == root) continue;
                    num = num * Poly(f, {f.neg(other), 1});
                    denom = f.mul(denom, f.sub(root, other));
                }
                Poly proj = num.scaled(f.inv(denom));
                CentralElement eps = z.zero();
                for (int i = proj.degree(); i >= 0; --i) {
                    eps = s.mul(u, eps);
                    if (proj.c[i] != 0) eps = z.add(eps, z.scale(proj.c[i], comp.idem));
                }
                std::vector<CentralElement> imgs;
                for (auto& b : basis) imgs.push_back(s.mul(eps, b));
                detail::SplitComponent piece{eps, detail::span_of(z, imgs)};
                check_internal(piece.space.dim() > 0, "spectral projector produced an empty component");
                next.push_back(std::move(piece));
            }
        }
        comps = std::move(next);
    }
    for (auto& comp : comps)
        check_internal(comp.space.dim() == 1, "semisimple quotient did not fully split; field is not splitting");

    // lift primitives of S along J, then orthogonalize progressively
    std::vector<CentralElement> lifted;
    for (auto& comp : comps) lifted.push_back(detail::lift_idempotent(z, comp.idem));
    std::sort(lifted.begin(), lifted.end(), [](const CentralElement& a, const CentralElement& b) {
        int sa = detail::smallest_support(a), sb = detail::smallest_support(b);
        if (sa != sb) return sa < sb;
        return a.coords < b.coords;
    });
    std::vector<CentralElement> finals;
    CentralElement used = z.zero();
    for (auto& cand : lifted) {
        CentralElement remaining = z.sub(z.unit(), used);
        CentralElement e = z.mul(cand, remaining);
        check_internal(z.mul(e, e) == e, "orthogonalized idempotent is not idempotent");
        check_internal(!e.is_zero(), "block idempotent vanished during orthogonalization");
        used = z.add(used, e);
        finals.push_back(std::move(e));
    }
    check_internal(used == z.unit(), "block idempotents do not sum to 1");
    for (size_t a = 0; a < finals.size(); ++a)
        for (size_t b = a + 1; b < finals.size(); ++b)
            check_internal(z.mul(finals[a], finals[b]).is_zero(), "block idempotents not orthogonal");
    for (auto& e : finals) {
        Matrix me = z.mult_matrix(e);
        int ze_dim = me.rank();
        int je_dim = j.image_under(me).dim();
        check_internal(ze_dim - je_dim == 1, "lifted idempotent is not primitive");
    }
    std::sort(finals.begin(), finals.end(), [](const CentralElement& a, const CentralElement& b) {
        int sa = detail::smallest_support(a), sb = detail::smallest_support(b);
        if (sa != sb) return sa < sb;
        return a.coords < b.coords;
    });
    std::vector<BlockIdempotent> out;
    for (size_t i = 0; i < finals.size(); ++i) out.push_back({std::move(finals[i]), static_cast<int>(i)});
    return out;
}

/// The p-regular section sums: for each p-regular class representative y,
/// the sum of all group elements whose p'-part is conjugate to y. Returned
/// in ascending order of the p-regular class index; the sums have disjoint
/// class supports, so they are linearly independent and span Z_{p'}.
inline std::vector<CentralElement> section_sums(const CenterAlgebra& z, int p) {
    const Group& g = z.group();
    int r = z.dim();
    std::vector<int> section_of(r);
    for (int c = 0; c < r; ++c) {
        auto [xp, xpp] = p_decompose(g, g.class_rep(c), p);
        (void)xp;
        section_of[c] = g.class_of(xpp);
    }
    std::vector<CentralElement> out;
    for (int y = 0; y < r; ++y) {
        if (g.element_order(g.class_rep(y)) % p == 0) continue;
        std::vector<int> coords(r, 0);
        for (int c = 0; c < r; ++c)
            if (section_of[c] == y) coords[c] = 1;
        check_internal(coords[y] == 1, "section does not contain its own class");
        out.push_back(z.element(std::move(coords)));
    }
    return out;
}

/// lambda_B(Chat): the scalar with Chat * e = lambda * e (mod J(Z)e). Z*e is
/// local, so Z*e = F e + J(Z)e and the scalar is the e-coefficient.
inline int central_character(const CenterAlgebra& z, const Subspace& jrad, const BlockIdempotent& e, int cls) {
    CentralElement w = z.mul(z.class_sum(cls), e.idempotent);
    Matrix me = z.mult_matrix(e.idempotent);
    Subspace je = jrad.image_under(me);
    std::vector<std::vector<int>> rows;
    rows.push_back(e.idempotent.coords);
    for (int i = 0; i < je.dim(); ++i) rows.push_back(je.basis().row(i));
    auto combo = Matrix::from_rows(z.field(), rows).solve_rows(w.coords);
    check_internal(combo.has_value(), "central multiple left F e + J(Z)e");
    return (*combo)[0];
}

inline int central_character(const CenterAlgebra& z, const BlockIdempotent& e, int cls) {
    return central_character(z, nilradical(z), e, cls);
}

/// Per-block invariants: k(B) = dim Z*e, l(B) = dim e*Z_{p'}, and the Loewy
/// series of J(Z)e inside Z*e.
struct BlockInvariants {
    int k = 0;
    int l = 0;
    LoewySeries loewy;
};

inline BlockInvariants block_invariants(const CenterAlgebra& z, const Subspace& jrad, const BlockIdempotent& e,
                                        const std::vector<CentralElement>& sections) {
    BlockInvariants inv;
    Matrix me = z.mult_matrix(e.idempotent);
    Subspace ze = Subspace::full(z.field(), z.dim()).image_under(me);
    Subspace je = jrad.image_under(me);
    inv.k = ze.dim();
    std::vector<CentralElement> lspan;
    for (auto& s : sections) lspan.push_back(z.mul(e.idempotent, s));
    inv.l = detail::span_of(z, lspan).dim();
    inv.loewy = loewy_series(z, ze, je);
    return inv;
}

inline BlockInvariants block_invariants(const CenterAlgebra& z, const BlockIdempotent& e,
                                        const std::vector<CentralElement>& sections) {
    return block_invariants(z, nilradical(z), e, sections);
}

} // namespace zblock
