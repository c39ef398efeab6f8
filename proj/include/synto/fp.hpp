#ifndef SYNTO_FP_HPP
#define SYNTO_FP_HPP

#include <cstddef>
#include <vector>

#include "synto/error.hpp"

namespace synto::fp {

using Scalar = unsigned;
using Vec = std::vector<Scalar>;

bool is_prime(unsigned p);
Scalar inv_mod(Scalar a, unsigned p);

// Dense matrix over F_p. Entries are residues in [0, p-1], reduced eagerly.
// Immutable by convention once built; all operations below are pure.
class Matrix {
public:
    Matrix(unsigned p, std::size_t rows, std::size_t cols);

    static Matrix identity(unsigned p, std::size_t n);

    unsigned p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    Scalar at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    void set(std::size_t r, std::size_t c, long long v);

    Vec col(std::size_t c) const;
    Vec row(std::size_t r) const;

    bool is_zero() const;
    bool operator==(const Matrix& o) const = default;

private:
    unsigned p_;
    std::size_t rows_, cols_;
    std::vector<Scalar> a_;
};

Vec mul(const Matrix& m, const Vec& v);
Matrix mul(const Matrix& a, const Matrix& b);

struct RrefResult {
    Matrix matrix;
    std::vector<std::size_t> pivots;  // strictly increasing pivot columns
};

RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// Basis of { v : m v = 0 }, one vector per free column of rref(m),
// chosen deterministically from the pivot structure.
std::vector<Vec> kernel_basis(const Matrix& m);

// Quotient F_p^rows / colspace(m). Representatives are standard basis
// vectors e_i for coordinates i that are not pivots of the column space;
// projection sends any codomain vector to its coordinates in them.
struct Cokernel {
    std::vector<std::size_t> representatives;
    Matrix projection;  // (rows - rank) x rows
};

Cokernel cokernel_basis(const Matrix& m);

// Basis of ker(d_out)/im(d_in) together with the quotient projection
// (coordinates of a cycle vector in the returned basis). Requires
// d_out . d_in = 0; throws COMPOSITION_NONZERO otherwise.
struct Homology {
    std::vector<Vec> basis;  // ambient vectors in F_p^{cols(d_out)}
    Matrix projection;       // dim x cols(d_out); valid on cycles only
};

Homology homology_basis(const Matrix& d_in, const Matrix& d_out);

// Solves a x = b; returns false if inconsistent. Used to express vectors
// in a chosen spanning set.
bool solve(const Matrix& a, const Vec& b, Vec& x);

}  // namespace synto::fp

#endif
