#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfdeform/matrix.hpp"
#include "test_util.hpp"

using namespace hopfdeform;
using testutil::dense_rank_oracle;
using testutil::from_dense;
using testutil::random_matrix;
using testutil::random_scalar;

TEST_CASE("scalar parsing and printing") {
    CHECK(scalar_to_string(scalar_from_string("3/6")) == "1/2");
    CHECK(scalar_to_string(scalar_from_string("-4/2")) == "-2");
    CHECK(scalar_to_string(scalar_from_string("7")) == "7");
    CHECK_THROWS_AS(scalar_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(scalar_from_string("abc"), std::invalid_argument);
    CHECK_THROWS_AS(scalar_from_string("1/2/3"), std::invalid_argument);
    CHECK_THROWS_AS(scalar_from_string(""), std::invalid_argument);
}

TEST_CASE("reduce: identity matrix") {
    EchelonReport rep = reduce(Matrix::identity(3));
    CHECK(rep.rank == 3);
    CHECK(rep.kernel_basis.empty());
    CHECK(rep.pivot_cols == std::vector<Index>{0, 1, 2});
}

TEST_CASE("reduce: rank-1 matrix with forced kernel") {
    Matrix m = from_dense({{1, 2}, {2, 4}});
    EchelonReport rep = reduce(m);
    CHECK(rep.rank == 1);
    REQUIRE(rep.kernel_basis.size() == 1);
    SparseVec expected{{0, Scalar(-2)}, {1, Scalar(1)}};
    CHECK(sv_equal(rep.kernel_basis[0], expected));
}

TEST_CASE("solve: identity and inconsistent systems") {
    SparseVec b{{0, Scalar(5)}, {2, Scalar(-1)}};
    auto sol = solve(Matrix::identity(3), b);
    REQUIRE(sol.has_value());
    CHECK(sv_equal(*sol, b));

    Matrix zero(2, 3);
    CHECK_FALSE(solve(zero, SparseVec{{1, Scalar(1)}}).has_value());
    CHECK_THROWS_AS(solve(zero, SparseVec{{5, Scalar(1)}}), std::invalid_argument);
}

TEST_CASE("solve returns the RREF-canonical solution") {
    // x + y = 2 has solutions (2 - t, t); canonical one sets the free y to 0
    Matrix m = from_dense({{1, 1}});
    auto sol = solve(m, SparseVec{{0, Scalar(2)}});
    REQUIRE(sol.has_value());
    CHECK(sv_equal(*sol, SparseVec{{0, Scalar(2)}}));
}

TEST_CASE("subquotient_dim: trivial cases and error") {
    Matrix zero5(5, 5);
    CHECK(subquotient_dim(zero5, zero5).dim == 5);
    CHECK(subquotient_dim(Matrix::identity(5), Matrix(0, 5)).dim == 0);
    CHECK_THROWS_WITH_AS(subquotient_dim(Matrix::identity(2), Matrix::identity(2)),
                         "not a complex", std::runtime_error);
}

TEST_CASE("rank equals rank of the transpose") {
    for (int trial = 0; trial < 25; ++trial) {
        Matrix m = random_matrix(1 + trial % 6, 1 + (trial * 3) % 7, 0.45);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("kernel vectors solve m v = 0 and are independent") {
    for (int trial = 0; trial < 25; ++trial) {
        Matrix m = random_matrix(3 + trial % 4, 4 + trial % 5, 0.4);
        auto ker = kernel(m);
        for (const auto& k : ker) CHECK(m.apply(k).empty());
        Matrix stacked(ker.size(), m.cols());
        for (Index i = 0; i < ker.size(); ++i) stacked.set_row(i, ker[i]);
        CHECK(rank(stacked) == ker.size());
        CHECK(ker.size() + rank(m) == m.cols());
    }
}

TEST_CASE("reduce is deterministic") {
    Matrix m = random_matrix(6, 8, 0.5);
    EchelonReport a = reduce(m), b = reduce(m);
    CHECK(a.rank == b.rank);
    CHECK(a.pivot_cols == b.pivot_cols);
    REQUIRE(a.kernel_basis.size() == b.kernel_basis.size());
    for (Index i = 0; i < a.kernel_basis.size(); ++i)
        CHECK(sv_equal(a.kernel_basis[i], b.kernel_basis[i]));
    for (Index i = 0; i < a.row_space_basis.size(); ++i)
        CHECK(sv_equal(a.row_space_basis[i], b.row_space_basis[i]));
}

TEST_CASE("rank agrees with the dense elimination oracle") {
    for (int trial = 0; trial < 30; ++trial) {
        Matrix m = random_matrix(2 + trial % 6, 2 + (trial * 5) % 6, 0.55);
        CHECK(rank(m) == dense_rank_oracle(m));
    }
}

TEST_CASE("solve finds solutions of consistent systems") {
    for (int trial = 0; trial < 20; ++trial) {
        Matrix m = random_matrix(4, 5, 0.5);
        SparseVec x0;
        for (Index c = 0; c < 5; ++c) {
            Scalar s = random_scalar();
            if (!is_zero(s)) x0.emplace_back(c, s);
        }
        SparseVec b = m.apply(x0);
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        CHECK(sv_equal(m.apply(*sol), b));
        // canonical: the solution is supported on pivot columns only
        auto pivots = reduce(m).pivot_cols;
        for (const auto& [c, v] : *sol)
            CHECK(std::find(pivots.begin(), pivots.end(), c) != pivots.end());
    }
}

TEST_CASE("subquotient matches brute-force dimension count") {
    for (int trial = 0; trial < 20; ++trial) {
        Matrix d_out = random_matrix(3 + trial % 3, 5 + trial % 3, 0.4);
        auto ker = kernel(d_out);
        // d_in maps a random space onto a subspace of the kernel
        Index src = 2 + trial % 3;
        Matrix d_in(d_out.cols(), src);
        for (Index c = 0; c < src; ++c)
            for (Index k = 0; k < ker.size(); ++k) {
                Scalar s = random_scalar(3, 2);
                if (!is_zero(s))
                    for (const auto& [r, v] : ker[k]) d_in.add_to(r, c, s * v);
            }
        SubquotientReport rep = subquotient_dim(d_in, d_out);
        Index expected = (d_out.cols() - dense_rank_oracle(d_out)) - dense_rank_oracle(d_in);
        CHECK(rep.dim == expected);
        CHECK(rep.representatives.size() == rep.dim);
        // representatives stay independent modulo the image
        Matrix stacked(rep.dim + d_in.cols(), d_out.cols());
        Matrix d_in_t = d_in.transpose();
        for (Index r = 0; r < d_in_t.rows(); ++r) stacked.set_row(r, d_in_t.row(r));
        for (Index i = 0; i < rep.dim; ++i) stacked.set_row(d_in.cols() + i, rep.representatives[i]);
        CHECK(rank(stacked) == dense_rank_oracle(d_in) + rep.dim);
    }
}

TEST_CASE("matrix product, transpose, apply are consistent") {
    for (int trial = 0; trial < 10; ++trial) {
        Matrix a = random_matrix(3, 4, 0.5), b = random_matrix(4, 2, 0.5);
        Matrix ab = a * b;
        CHECK((ab.transpose() == b.transpose() * a.transpose()));
        SparseVec v;
        for (Index c = 0; c < 2; ++c) v.emplace_back(c, random_scalar());
        sv_sort_combine(v);
        CHECK(sv_equal(ab.apply(v), a.apply(b.apply(v))));
    }
    Matrix m = from_dense({{1, 2}, {3, 4}});
    CHECK(m.entry(7, 9) == Scalar(0));  // out-of-range entries read as zero
}
