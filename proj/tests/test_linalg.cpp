#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "synto/fp.hpp"

using namespace synto::fp;

namespace {

Matrix from_rows(unsigned p, std::vector<std::vector<int>> rows) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    Matrix m(p, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    return m;
}

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](Scalar s) { return s == 0; });
}

}  // namespace

TEST_CASE("rref: identity over F_2") {
    auto m = Matrix::identity(2, 2);
    auto [r, pivots] = rref(m);
    CHECK(r == m);
    CHECK(pivots == std::vector<std::size_t>{0, 1});
}

TEST_CASE("rref: rank-1 symmetric over F_2") {
    auto m = from_rows(2, {{1, 1}, {1, 1}});
    auto [r, pivots] = rref(m);
    CHECK(r == from_rows(2, {{1, 1}, {0, 0}}));
    CHECK(pivots == std::vector<std::size_t>{0});
}

TEST_CASE("rref: rank matches minor-expansion oracle, 6x6 over F_5") {
    oracle::Rng rng(20240917);
    for (int it = 0; it < 25; ++it) {
        auto m = oracle::random_matrix(rng, 5, 6, 6);
        CHECK(rank(m) == oracle::rank_by_minors(m));
    }
}

TEST_CASE("rref is idempotent") {
    oracle::Rng rng(7);
    for (unsigned p : {2u, 3u, 5u}) {
        for (int it = 0; it < 30; ++it) {
            auto m = oracle::random_matrix(rng, p, 1 + rng.below(5), 1 + rng.below(6));
            auto r1 = rref(m).matrix;
            CHECK(rref(r1).matrix == r1);
        }
    }
}

TEST_CASE("kernel: forced rank-1 case over F_2") {
    auto m = from_rows(2, {{1, 1}, {0, 0}});
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    CHECK(k[0] == Vec{1, 1});
}

TEST_CASE("kernel: identity has empty kernel") {
    CHECK(kernel_basis(Matrix::identity(3, 4)).empty());
}

TEST_CASE("kernel: random 5x7 over F_3, re-multiply check and dimension") {
    oracle::Rng rng(99);
    for (int it = 0; it < 20; ++it) {
        auto m = oracle::random_matrix(rng, 3, 5, 7);
        auto k = kernel_basis(m);
        CHECK(k.size() == 7 - rank(m));
        for (const auto& v : k) CHECK(vec_is_zero(mul(m, v)));
        // independence: stacking the kernel vectors gives full rank
        Matrix km(3, 7, k.size());
        for (std::size_t j = 0; j < k.size(); ++j)
            for (std::size_t i = 0; i < 7; ++i) km.at(i, j) = k[j][i];
        CHECK(rank(km) == k.size());
    }
}

TEST_CASE("dim ker + rank = cols") {
    oracle::Rng rng(4242);
    for (unsigned p : {2u, 3u, 5u, 7u}) {
        for (int it = 0; it < 20; ++it) {
            auto m = oracle::random_matrix(rng, p, 1 + rng.below(6), 1 + rng.below(6));
            CHECK(kernel_basis(m).size() + rank(m) == m.cols());
        }
    }
}

TEST_CASE("cokernel: zero 3x2 matrix") {
    Matrix z(2, 3, 2);
    auto ck = cokernel_basis(z);
    CHECK(ck.representatives == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("cokernel: identity") {
    CHECK(cokernel_basis(Matrix::identity(5, 3)).representatives.empty());
}

TEST_CASE("cokernel: random 6x4 over F_2, composition checks") {
    oracle::Rng rng(1717);
    for (int it = 0; it < 20; ++it) {
        auto m = oracle::random_matrix(rng, 2, 6, 4);
        auto ck = cokernel_basis(m);
        CHECK(ck.representatives.size() == 6 - rank(m));
        // projection . inclusion = identity on representatives
        for (std::size_t i = 0; i < ck.representatives.size(); ++i) {
            Vec e(6, 0);
            e[ck.representatives[i]] = 1;
            Vec proj = mul(ck.projection, e);
            for (std::size_t j = 0; j < proj.size(); ++j)
                CHECK(proj[j] == (i == j ? 1u : 0u));
        }
        // projection . m = 0
        for (std::size_t c = 0; c < 4; ++c)
            CHECK(vec_is_zero(mul(ck.projection, m.col(c))));
    }
}

TEST_CASE("homology: zero differentials on F_2^3") {
    Matrix z3(2, 3, 3);
    CHECK(homology_basis(z3, z3).basis.size() == 3);
}

TEST_CASE("homology: d_in = identity, d_out = 0") {
    Matrix z(3, 0, 3);
    CHECK(homology_basis(Matrix::identity(3, 3), z).basis.empty());
}

TEST_CASE("homology rejects non-composable pair") {
    auto d_in = Matrix::identity(2, 2);
    auto d_out = Matrix::identity(2, 2);
    CHECK_THROWS_WITH_AS(homology_basis(d_in, d_out), doctest::Contains("COMPOSITION_NONZERO"),
                         synto::Error);
}

TEST_CASE("homology: random compatible pairs over F_3 match exhaustive enumeration") {
    oracle::Rng rng(555);
    for (int it = 0; it < 15; ++it) {
        // d_out := A (random), d_in := columns of kernel_basis(A) mixed by B,
        // which guarantees d_out . d_in = 0.
        std::size_t n = 3 + rng.below(3);  // <= 5
        auto a = oracle::random_matrix(rng, 3, 1 + rng.below(4), n);
        auto kern = kernel_basis(a);
        Matrix kmat(3, n, kern.size());
        for (std::size_t j = 0; j < kern.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) kmat.at(i, j) = kern[j][i];
        auto b = oracle::random_matrix(rng, 3, kern.size(), 2 + rng.below(2));
        auto d_in = mul(kmat, b);
        auto h = homology_basis(d_in, a);
        CHECK(h.basis.size() == oracle::homology_dim_by_enumeration(d_in, a));
        // quotient projection is identity on the chosen representatives
        for (std::size_t i = 0; i < h.basis.size(); ++i) {
            Vec coords = mul(h.projection, h.basis[i]);
            for (std::size_t j = 0; j < coords.size(); ++j)
                CHECK(coords[j] == (i == j ? 1u : 0u));
        }
        // boundaries project to zero
        for (std::size_t c = 0; c < d_in.cols(); ++c)
            CHECK(vec_is_zero(mul(h.projection, d_in.col(c))));
    }
}

TEST_CASE("homology dimension invariant under permutation of the pair") {
    oracle::Rng rng(808);
    for (int it = 0; it < 10; ++it) {
        std::size_t n = 4;
        auto a = oracle::random_matrix(rng, 2, 3, n);
        auto kern = kernel_basis(a);
        Matrix kmat(2, n, kern.size());
        for (std::size_t j = 0; j < kern.size(); ++j)
            for (std::size_t i = 0; i < n; ++i) kmat.at(i, j) = kern[j][i];
        auto d_in = mul(kmat, oracle::random_matrix(rng, 2, kern.size(), 3));
        auto dim0 = homology_basis(d_in, a).basis.size();

        // permute the middle coordinates
        std::vector<std::size_t> perm = {2, 0, 3, 1};
        Matrix a2(2, a.rows(), n), d_in2(2, n, d_in.cols());
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t r = 0; r < a.rows(); ++r) a2.at(r, perm[i]) = a.at(r, i);
            for (std::size_t c = 0; c < d_in.cols(); ++c) d_in2.at(perm[i], c) = d_in.at(i, c);
        }
        CHECK(homology_basis(d_in2, a2).basis.size() == dim0);
    }
}
