#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "gf.hpp"

namespace zblock {

class Matrix;

/// Result of Gauss-Jordan elimination.
struct Echelon;

/// Dense matrix over one FieldContext. Entries are stored as field codes;
/// the Scalar accessors attach the context.
class Matrix {
public:
    Matrix() = default;
    Matrix(const FieldContext& f, int rows, int cols)
        : f_(&f), rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, 0) {}

    static Matrix identity(const FieldContext& f, int n) {
        Matrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static Matrix from_rows(const FieldContext& f, const std::vector<std::vector<int>>& rows) {
        if (rows.empty()) return Matrix(f, 0, 0);
        Matrix m(f, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
        for (size_t i = 0; i < rows.size(); ++i) {
            assert(rows[i].size() == rows[0].size());
            for (size_t j = 0; j < rows[i].size(); ++j) m.set(static_cast<int>(i), static_cast<int>(j), rows[i][j]);
        }
        return m;
    }

    const FieldContext& field() const { return *f_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    void set(int i, int j, int code) { e_[static_cast<size_t>(i) * cols_ + j] = code; }
    Scalar get(int i, int j) const { return f_->scalar(at(i, j)); }

    std::vector<int> row(int i) const {
        return std::vector<int>(e_.begin() + static_cast<size_t>(i) * cols_,
                                e_.begin() + static_cast<size_t>(i + 1) * cols_);
    }

    bool is_zero() const {
        for (int v : e_)
            if (v != 0) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(*f_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        assert(f_ == o.f_ && cols_ == o.rows_);
        Matrix r(*f_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int l = 0; l < cols_; ++l) {
                int a = at(i, l);
                if (a == 0) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    int b = o.at(l, j);
                    if (b == 0) continue;
                    r.set(i, j, f_->add(r.at(i, j), f_->mul(a, b)));
                }
            }
        return r;
    }

    std::vector<int> apply(const std::vector<int>& v) const {
        assert(static_cast<int>(v.size()) == cols_);
        std::vector<int> out(rows_, 0);
        for (int i = 0; i < rows_; ++i) {
            int acc = 0;
            for (int j = 0; j < cols_; ++j) {
                int a = at(i, j);
                if (a != 0 && v[j] != 0) acc = f_->add(acc, f_->mul(a, v[j]));
            }
            out[i] = acc;
        }
        return out;
    }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

    /// Reduced row echelon form (Gauss-Jordan).
    Echelon rref() const;

    int rank() const;

    /// Coefficients c with c * rows(*this) = target, if target lies in the
    /// row span.
    std::optional<std::vector<int>> solve_rows(const std::vector<int>& target) const;

private:
    const FieldContext* f_ = nullptr;
    int rows_ = 0, cols_ = 0;
    std::vector<int> e_;
};

struct Echelon {
    Matrix m;
    int rank = 0;
    std::vector<int> pivots;
};

inline Echelon Matrix::rref() const {
    Echelon out{*this, 0, {}};
    Matrix& m = out.m;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
        int piv = -1;
        for (int i = r; i < rows_; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols_; ++j) {
                int t = m.at(r, j);
                m.set(r, j, m.at(piv, j));
                m.set(piv, j, t);
            }
        int lead_inv = f_->inv(m.at(r, c));
        for (int j = 0; j < cols_; ++j) m.set(r, j, f_->mul(m.at(r, j), lead_inv));
        for (int i = 0; i < rows_; ++i) {
            if (i == r) continue;
            int factor = m.at(i, c);
            if (factor == 0) continue;
            for (int j = 0; j < cols_; ++j) m.set(i, j, f_->sub(m.at(i, j), f_->mul(factor, m.at(r, j))));
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

inline int Matrix::rank() const { return rref().rank; }

inline std::optional<std::vector<int>> Matrix::solve_rows(const std::vector<int>& target) const {
    assert(static_cast<int>(target.size()) == cols_);
    // transpose system: (this^T) c = target
    Matrix aug(*f_, cols_, rows_ + 1);
    for (int i = 0; i < cols_; ++i) {
        for (int j = 0; j < rows_; ++j) aug.set(i, j, at(j, i));
        aug.set(i, rows_, target[i]);
    }
    Echelon ech = aug.rref();
    std::vector<int> sol(rows_, 0);
    for (int i = 0; i < ech.rank; ++i) {
        int pc = ech.pivots[i];
        if (pc == rows_) return std::nullopt; // inconsistent
        sol[pc] = ech.m.at(i, rows_);
    }
    return sol;
}

/// A subspace of F^n in canonical form: the basis is the reduced row
/// echelon form with zero rows dropped, so equal subspaces compare equal.
class Subspace {
public:
    Subspace() = default;

    static Subspace from_rows(const Matrix& rows) {
        auto ech = rows.rref();
        Matrix basis(rows.field(), ech.rank, rows.cols());
        for (int i = 0; i < ech.rank; ++i)
            for (int j = 0; j < rows.cols(); ++j) basis.set(i, j, ech.m.at(i, j));
        Subspace s;
        s.f_ = &rows.field();
        s.ambient_ = rows.cols();
        s.basis_ = std::move(basis);
        s.pivots_ = ech.pivots;
        return s;
    }

    static Subspace zero(const FieldContext& f, int ambient) { return from_rows(Matrix(f, 0, ambient)); }

    static Subspace full(const FieldContext& f, int ambient) { return from_rows(Matrix::identity(f, ambient)); }

    const FieldContext& field() const { return *f_; }
    int ambient_dim() const { return ambient_; }
    int dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<int>& pivots() const { return pivots_; }

    bool contains(const std::vector<int>& v) const {
        assert(static_cast<int>(v.size()) == ambient_);
        std::vector<int> r = v;
        const FieldContext& f = *f_;
        for (int i = 0; i < basis_.rows(); ++i) {
            int pc = pivots_[i];
            if (r[pc] == 0) continue;
            int c = r[pc];
            for (int j = 0; j < ambient_; ++j) r[j] = f.sub(r[j], f.mul(c, basis_.at(i, j)));
        }
        for (int x : r)
            if (x != 0) return false;
        return true;
    }

    bool contains(const Subspace& other) const {
        for (int i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_.row(i))) return false;
        return true;
    }

    Subspace sum(const Subspace& other) const {
        check_ambient(other);
        Matrix stacked(*f_, dim() + other.dim(), ambient_);
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < ambient_; ++j) stacked.set(i, j, basis_.at(i, j));
        for (int i = 0; i < other.dim(); ++i)
            for (int j = 0; j < ambient_; ++j) stacked.set(dim() + i, j, other.basis_.at(i, j));
        return from_rows(stacked);
    }

    /// Zassenhaus: rref of [U|U; W|0]; rows with zero left half carry an
    /// intersection basis in the right half.
    Subspace intersect(const Subspace& other) const {
        check_ambient(other);
        int n = ambient_;
        Matrix big(*f_, dim() + other.dim(), 2 * n);
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < n; ++j) {
                big.set(i, j, basis_.at(i, j));
                big.set(i, n + j, basis_.at(i, j));
            }
        for (int i = 0; i < other.dim(); ++i)
            for (int j = 0; j < n; ++j) big.set(dim() + i, j, other.basis_.at(i, j));
        auto ech = big.rref();
        std::vector<std::vector<int>> rows;
        for (int i = 0; i < ech.rank; ++i) {
            bool left_zero = true;
            for (int j = 0; j < n; ++j)
                if (ech.m.at(i, j) != 0) {
                    left_zero = false;
                    break;
                }
            if (left_zero) {
                std::vector<int> r(n);
                for (int j = 0; j < n; ++j) r[j] = ech.m.at(i, n + j);
                rows.push_back(std::move(r));
            }
        }
        return from_rows(Matrix::from_rows(*f_, rows));
    }

    /// Image {M u : u in this} for a map M acting on column vectors.
    Subspace image_under(const Matrix& map) const {
        assert(map.cols() == ambient_);
        std::vector<std::vector<int>> rows;
        for (int i = 0; i < dim(); ++i) rows.push_back(map.apply(basis_.row(i)));
        if (rows.empty()) return Subspace::zero(*f_, map.rows());
        return from_rows(Matrix::from_rows(*f_, rows));
    }

    bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

private:
    void check_ambient(const Subspace& o) const {
        if (ambient_ != o.ambient_ || f_ != o.f_) throw Error("subspace ambient dimension mismatch");
    }

    const FieldContext* f_ = nullptr;
    int ambient_ = 0;
    Matrix basis_;
    std::vector<int> pivots_;
};

/// Right null space of m, canonical.
inline Subspace kernel(const Matrix& m) {
    auto ech = m.rref();
    const FieldContext& f = m.field();
    int n = m.cols();
    std::vector<char> is_pivot(n, 0);
    for (int pc : ech.pivots) is_pivot[pc] = 1;
    std::vector<std::vector<int>> rows;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<int> v(n, 0);
        v[free] = 1;
        for (int i = 0; i < ech.rank; ++i) v[ech.pivots[i]] = f.neg(ech.m.at(i, free));
        rows.push_back(std::move(v));
    }
    if (rows.empty()) return Subspace::zero(f, n);
    return Subspace::from_rows(Matrix::from_rows(f, rows));
}

/// Kernel of m^t for the least t with ker(m^t) = ker(m^{t+1}); t is bounded
/// by the ambient dimension. Optionally reports t.
inline Subspace stable_kernel(const Matrix& m, int* steps = nullptr) {
    if (m.rows() != m.cols()) throw Error("stable_kernel requires a square matrix");
    Matrix power = m;
    Subspace prev = kernel(power);
    int t = 1;
    while (prev.dim() < m.cols()) {
        Matrix next_power = power * m;
        Subspace next = kernel(next_power);
        if (next.dim() == prev.dim()) break;
        prev = std::move(next);
        power = std::move(next_power);
        ++t;
        check_internal(t <= m.cols() + 1, "kernel chain failed to stabilize");
    }
    if (steps) *steps = t;
    return prev;
}

} // namespace zblock
