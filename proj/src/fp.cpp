#include "synto/fp.hpp"

#include <algorithm>

namespace synto::fp {

bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Scalar inv_mod(Scalar a, unsigned p) {
    // p is tiny here; Fermat would do, but extended Euclid is exact for any p.
    long long t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        long long q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    if (r != 1) throw Error(errc::precondition, "not invertible mod p");
    return static_cast<Scalar>(((t % p) + p) % p);
}

Matrix::Matrix(unsigned p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    if (!is_prime(p)) throw Error(errc::precondition, "modulus must be prime");
}

Matrix Matrix::identity(unsigned p, std::size_t n) {
    Matrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

void Matrix::set(std::size_t r, std::size_t c, long long v) {
    at(r, c) = static_cast<Scalar>(((v % p_) + p_) % p_);
}

Vec Matrix::col(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

Vec Matrix::row(std::size_t r) const {
    Vec v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](Scalar s) { return s == 0; });
}

Vec mul(const Matrix& m, const Vec& v) {
    if (v.size() != m.cols()) throw Error(errc::dimension_mismatch, "matrix-vector size");
    Vec out(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        unsigned long long acc = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) acc += 1ull * m.at(r, c) * v[c];
        out[r] = static_cast<Scalar>(acc % m.p());
    }
    return out;
}

Matrix mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows() || a.p() != b.p())
        throw Error(errc::dimension_mismatch, "matrix-matrix shapes");
    Matrix out(a.p(), a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) {
            unsigned long long acc = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += 1ull * a.at(r, k) * b.at(k, c);
            out.at(r, c) = static_cast<Scalar>(acc % a.p());
        }
    return out;
}

RrefResult rref(const Matrix& m) {
    Matrix w = m;
    const unsigned p = m.p();
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < w.cols() && lead < w.rows(); ++c) {
        std::size_t piv = lead;
        while (piv < w.rows() && w.at(piv, c) == 0) ++piv;
        if (piv == w.rows()) continue;
        if (piv != lead)
            for (std::size_t k = 0; k < w.cols(); ++k) std::swap(w.at(piv, k), w.at(lead, k));
        Scalar inv = inv_mod(w.at(lead, c), p);
        for (std::size_t k = 0; k < w.cols(); ++k)
            w.at(lead, k) = static_cast<Scalar>(1ull * w.at(lead, k) * inv % p);
        for (std::size_t r = 0; r < w.rows(); ++r) {
            if (r == lead || w.at(r, c) == 0) continue;
            Scalar f = w.at(r, c);
            for (std::size_t k = 0; k < w.cols(); ++k) {
                long long v = w.at(r, k) + 1ll * (p - f) * w.at(lead, k);
                w.at(r, k) = static_cast<Scalar>(v % p);
            }
        }
        pivots.push_back(c);
        ++lead;
    }
    return {std::move(w), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vec> kernel_basis(const Matrix& m) {
    auto [r, pivots] = rref(m);
    const unsigned p = m.p();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec> out;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = (p - r.at(i, free)) % p;
        out.push_back(std::move(v));
    }
    return out;
}

Cokernel cokernel_basis(const Matrix& m) {
    // Echelon basis of the column space, as rows.
    Matrix t(m.p(), m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) t.at(c, r) = m.at(r, c);
    auto [ech, pivots] = rref(t);
    const unsigned p = m.p();
    std::vector<bool> is_pivot(m.rows(), false);
    for (auto c : pivots) is_pivot[c] = true;

    Cokernel ck{{}, Matrix(p, 0, 0)};
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (!is_pivot[i]) ck.representatives.push_back(i);

    Matrix proj(p, ck.representatives.size(), m.rows());
    for (std::size_t j = 0; j < m.rows(); ++j) {
        // Reduce e_j by the echelon rows, then read off non-pivot coords.
        Vec v(m.rows(), 0);
        v[j] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            Scalar f = v[pivots[i]];
            if (f == 0) continue;
            for (std::size_t k = 0; k < m.rows(); ++k)
                v[k] = static_cast<Scalar>((v[k] + 1ull * (p - f) * ech.at(i, k)) % p);
        }
        for (std::size_t r = 0; r < ck.representatives.size(); ++r)
            proj.at(r, j) = v[ck.representatives[r]];
    }
    ck.projection = std::move(proj);
    return ck;
}

bool solve(const Matrix& a, const Vec& b, Vec& x) {
    if (b.size() != a.rows()) throw Error(errc::dimension_mismatch, "solve rhs size");
    Matrix aug(a.p(), a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    auto [red, pivots] = rref(aug);
    x.assign(a.cols(), 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == a.cols()) return false;  // pivot in rhs column
        x[pivots[i]] = red.at(i, a.cols());
    }
    return true;
}

Homology homology_basis(const Matrix& d_in, const Matrix& d_out) {
    if (d_in.cols() > 0 && d_out.cols() > 0 && !mul(d_out, d_in).is_zero())
        throw Error(errc::composition_nonzero, "d_out . d_in != 0");
    const unsigned p = d_out.p();
    const std::size_t dim = d_out.cols();

    auto kern = kernel_basis(d_out);
    const std::size_t k = kern.size();
    Matrix kmat(p, dim, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < dim; ++i) kmat.at(i, j) = kern[j][i];

    // Coordinates of d_in's columns in the kernel basis.
    Matrix coords(p, k, d_in.cols());
    for (std::size_t c = 0; c < d_in.cols(); ++c) {
        Vec x;
        if (!solve(kmat, d_in.col(c), x))
            throw Error(errc::composition_nonzero, "im(d_in) escapes ker(d_out)");
        for (std::size_t i = 0; i < k; ++i) coords.at(i, c) = x[i];
    }

    auto ck = cokernel_basis(coords);

    Homology h{{}, Matrix(p, ck.representatives.size(), dim)};
    for (auto r : ck.representatives) h.basis.push_back(kern[r]);

    // Cycle vector -> kernel coordinates -> quotient coordinates. The
    // kernel-coordinate solver is realized column by column on e_i reduced
    // through rref of [kmat | I].
    Matrix aug(p, dim, k + dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug.at(i, j) = kmat.at(i, j);
        aug.at(i, k + i) = 1;
    }
    auto red = rref(aug);
    // kmat has full column rank, so the first k pivot rows express
    // coordinates: x = T v with T = rows 0..k-1 of the right block.
    Matrix t(p, k, dim);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < dim; ++j) t.at(i, j) = red.matrix.at(i, k + j);
    h.projection = mul(ck.projection, t);
    return h;
}

}  // namespace synto::fp
