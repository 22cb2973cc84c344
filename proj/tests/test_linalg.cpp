#include <doctest.h>

#include "kdsg/matrix.hpp"

#include <random>

using namespace kdsg;

namespace {

Matrix mat(const std::vector<std::vector<long>>& rows, const Field& f)
{
    std::vector<Vec> vs;
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows) {
        Vec v;
        for (long x : r) v.push_back(f.from_int(x));
        vs.push_back(v);
    }
    return Matrix::from_rows(vs, cols);
}

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int zero_bias)
{
    std::uniform_int_distribution<int> d(-4, 4), z(0, 9);
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (z(rng) >= zero_bias) m.set(i, j, Scalar(d(rng)));
    return m;
}

Matrix reduce_mod(const Matrix& m, const Field& f)
{
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (const auto& e : m.row(i)) out.set(i, e.col, f.reduce(e.val));
    return out;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("field arithmetic")
{
    Field f7 = Field::prime(7);
    CHECK(f7.mul(f7.from_int(3), f7.inv(f7.from_int(3))) == 1);
    CHECK(f7.from_int(-1) == 6);
    CHECK(f7.reduce(Scalar(1, 2)) == 4);
    CHECK_THROWS_AS(Field::prime(9), std::invalid_argument);
    CHECK(Field::parse("F3").characteristic() == 3);
    CHECK(Field::parse("Q").is_rational());
    CHECK_THROWS(Field::parse("R"));
}

TEST_CASE("rank examples")
{
    Field f2 = Field::prime(2);
    CHECK(rank(Matrix::identity(3), f2) == 3);
    CHECK(rank(Matrix(2, 2), f2) == 0);
    CHECK(rank(mat({{1, 1}, {1, 1}}, f2), f2) == 1);
}

TEST_CASE("kernel examples")
{
    Field f2 = Field::prime(2);
    CHECK(kernel_basis(Matrix::identity(3), f2).empty());
    auto k = kernel_basis(mat({{1, 1}}, f2), f2);
    REQUIRE(k.size() == 1);
    CHECK(k[0] == Vec{1, 1});
    auto z = kernel_basis(Matrix(2, 2), f2);
    REQUIRE(z.size() == 2);
    CHECK(z[0] == unit_vec(2, 0));
    CHECK(z[1] == unit_vec(2, 1));
}

TEST_CASE("solve examples")
{
    Field f2 = Field::prime(2);
    Vec b{1, 0, 1};
    CHECK(solve(Matrix::identity(3), b, f2) == b);
    auto x = solve(mat({{1, 1}}, f2), Vec{1}, f2);
    REQUIRE(x);
    CHECK(*x == Vec{1, 0});
    CHECK_FALSE(solve(Matrix(2, 2), Vec{1, 0}, f2));
}

TEST_CASE("rank-nullity and exact back-substitution, random")
{
    std::mt19937 rng(12345);
    Field q = Field::rationals();
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + trial % 7, c = 1 + (trial * 5) % 9;
        Matrix m = random_matrix(rng, r, c, trial % 8);
        auto ker = kernel_basis(m, q);
        CHECK(rank(m, q) + ker.size() == c);
        for (const auto& v : ker) CHECK(is_zero(m.apply(v, q)));
        Vec x0 = zero_vec(c);
        for (std::size_t j = 0; j < c; ++j) x0[j] = Scalar(int(j % 3) - 1);
        Vec b = m.apply(x0, q);
        auto x = solve(m, b, q);
        REQUIRE(x);
        CHECK(m.apply(*x, q) == b);
    }
}

TEST_CASE("sparse and dense elimination agree")
{
    std::mt19937 rng(7);
    for (const Field& f : {Field::rationals(), Field::prime(5)}) {
        for (int trial = 0; trial < 40; ++trial) {
            Matrix m = reduce_mod(random_matrix(rng, 2 + trial % 6, 2 + trial % 8, trial % 9), f);
            Echelon a = rref_sparse(m, f), b = rref_dense(m, f);
            CHECK(a.pivots == b.pivots);
            CHECK(a.rows == b.rows);
        }
    }
}

TEST_CASE("rank over Q bounds rank mod p and agrees for generic primes")
{
    std::mt19937 rng(99);
    Field q = Field::rationals();
    for (int trial = 0; trial < 30; ++trial) {
        Matrix m = random_matrix(rng, 5, 6, 4);
        std::size_t rq = rank(m, q);
        std::size_t agree = 0;
        for (long p : {10007L, 10009L, 10037L}) {
            Field fp = Field::prime(p);
            std::size_t rp = rank(reduce_mod(m, fp), fp);
            CHECK(rp <= rq);
            if (rp == rq) ++agree;
        }
        CHECK(agree >= 1);
    }
}

TEST_CASE("span and quotient coordinates")
{
    Field q = Field::rationals();
    Span s(3, q);
    CHECK(s.add(Vec{1, 1, 0}));
    CHECK_FALSE(s.add(Vec{2, 2, 0}));
    CHECK(s.add(Vec{0, 1, 1}));
    CHECK(s.contains(Vec{1, 2, 1}));
    CHECK_FALSE(s.contains(Vec{0, 0, 1}));

    Quotient quo(3, {Vec{1, 0, 0}}, {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{1, 1, 0}}, q);
    REQUIRE(quo.size() == 1);
    auto c = quo.coords(Vec{5, 3, 0});
    REQUIRE(c);
    CHECK((*c)[0] == 3);
    CHECK_FALSE(quo.coords(Vec{0, 0, 1}));
}

TEST_CASE("matrix products")
{
    Field q = Field::rationals();
    Matrix a = mat({{1, 2}, {0, 1}}, q);
    Matrix b = mat({{1, -2}, {0, 1}}, q);
    CHECK(multiply(a, b, q) == Matrix::identity(2));
    CHECK(a.transpose().at(1, 0) == 2);
    CHECK(add(a, scale(a, Scalar(-1), q), q).is_zero());
}

}
