#include <doctest.h>

#include <random>

#include "homotransfer/complexes.hpp"
#include "homotransfer/errors.hpp"
#include "homotransfer/linalg.hpp"
#include "support/corpus.hpp"

using namespace homotransfer;
using namespace homotransfer::testing;

namespace {

using Dense = std::vector<std::vector<Scalar>>;

Scalar random_scalar(Rng& rng, const Field& f) {
    std::uniform_int_distribution<int> v(-3, 3);
    return Scalar(v(rng), f);
}

// random map of the given degree; about half the admissible entries nonzero
GradedMap random_map(Rng& rng, const BasisPtr& s, const BasisPtr& t, int degree) {
    GradedMap m(s, t, degree);
    std::bernoulli_distribution keep(0.5);
    for (Index j = 0; j < s->size(); ++j)
        for (Index i = 0; i < t->size(); ++i)
            if (t->degree(i) == s->degree(j) + degree && keep(rng)) m.add_entry(i, j, random_scalar(rng, s->field()));
    return m;
}

Dense dense(const GradedMap& m) {
    Dense a(m.target()->size(), std::vector<Scalar>(m.source()->size(), Scalar(0, m.field())));
    for (Index j = 0; j < m.source()->size(); ++j)
        for (const auto& [i, c] : m.column(j)) a[i][j] = c;
    return a;
}

Dense multiply(const Dense& a, const Dense& b, const Field& f) {
    Dense c(a.size(), std::vector<Scalar>(b.empty() ? 0 : b[0].size(), Scalar(0, f)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < c[i].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

// cofactor expansion
Scalar det(const Dense& m) {
    const std::size_t n = m.size();
    if (n == 0) return Scalar(1);
    if (n == 1) return m[0][0];
    Scalar s(0);
    for (std::size_t j = 0; j < n; ++j) {
        Dense minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Scalar> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        const Scalar t = m[0][j] * det(minor);
        s += (j % 2 ? -t : t);
    }
    return s;
}

// largest k with a nonzero k×k minor
std::size_t minor_rank(const Dense& m) {
    const std::size_t r = m.size(), c = m.empty() ? 0 : m[0].size();
    std::size_t best = 0;
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
        bool found = false;
        for (unsigned rows = 0; rows < (1u << r) && !found; ++rows) {
            if (static_cast<std::size_t>(__builtin_popcount(rows)) != k) continue;
            for (unsigned cols = 0; cols < (1u << c) && !found; ++cols) {
                if (static_cast<std::size_t>(__builtin_popcount(cols)) != k) continue;
                Dense sub;
                for (std::size_t i = 0; i < r; ++i) {
                    if (!(rows >> i & 1)) continue;
                    std::vector<Scalar> row;
                    for (std::size_t j = 0; j < c; ++j)
                        if (cols >> j & 1) row.push_back(m[i][j]);
                    sub.push_back(row);
                }
                found = !det(sub).is_zero();
            }
        }
        if (!found) break;
        best = k;
    }
    return best;
}

BasisPtr flat(const Field& f, int n, int degree, const char* prefix) {
    std::vector<BasisElement> el;
    for (int i = 0; i < n; ++i) el.push_back({std::string(prefix) + std::to_string(i), degree});
    return make_basis(el, f);
}

}  // namespace

TEST_CASE("scalars are exact") {
    const Field q = Field::rationals(), f7 = Field::prime(7);
    CHECK(Scalar(6, 4) == Scalar(3, 2));
    CHECK(Scalar(3, -6).to_string() == "-1/2");
    CHECK(Scalar(5, f7) * Scalar(5, f7).inverse() == Scalar(1, f7));
    CHECK((Scalar(3, 5) + -Scalar(3, 5)).is_zero());
    CHECK(Scalar::parse("-12/18", q).to_string() == "-2/3");
    CHECK(Scalar::parse("3/2", f7) == Scalar(5, f7));  // 2^{-1} = 4 in F_7
    CHECK_THROWS_AS(Scalar::parse("1/7", f7), ParseError);
    CHECK_THROWS_AS(Scalar::parse("1.5", q), ParseError);
    CHECK_THROWS_AS(Field::parse("Fp:9"), Error);
    // large values leave the machine-word range and come back
    Scalar big = Scalar::parse("123456789012345678901234567890/7", q);
    CHECK(Scalar::parse(big.to_string(), q) == big);
    CHECK((big * big / big) == big);
    Rng rng(3);
    std::uniform_int_distribution<long long> v(-1000000, 1000000);
    for (int i = 0; i < 200; ++i) {
        Scalar a(v(rng), v(rng) | 1);
        CHECK(Scalar::parse(a.to_string(), q) == a);
        if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
    }
}

TEST_CASE("composition") {
    const Field f5 = Field::prime(5);
    Rng rng(5);
    auto b = flat(f5, 4, 0, "e");
    for (int t = 0; t < 10; ++t) {
        auto f = random_map(rng, b, b, 0), g = random_map(rng, b, b, 0), h = random_map(rng, b, b, 0);
        CHECK(dense(compose(f, g)) == multiply(dense(f), dense(g), f5));
        CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
        CHECK(compose(GradedMap::identity(b), g) == g);
    }
    auto other = flat(f5, 3, 0, "o");
    CHECK_THROWS_AS(compose(GradedMap::identity(other), GradedMap::identity(b)), StructuralError);
    for (int t = 0; t < 5; ++t) {
        ChainComplex c = random_complex(rng, f5, 8, 0, 4);
        CHECK(compose(c.d(), c.d()).is_zero());
    }
}

TEST_CASE("tensor product of maps follows the Koszul rule") {
    const Field q = Field::rationals();
    auto x = make_basis({{"x", 1}, {"x0", 0}}, q);
    auto y = make_basis({{"y", 1}, {"y1", 2}}, q);
    // deg g = 0: no sign
    GradedMap f = GradedMap::identity(x);
    GradedMap g(y, y, 0);
    g.add_entry(0, 0, Scalar(2));
    auto fg = tensor(f, g);
    CHECK(fg.entry(0, 0) == Scalar(2));
    // deg g = 1, |x| = 1: coefficient -1
    GradedMap g1(y, y, 1);
    g1.add_entry(1, 0, Scalar(1));
    auto fg1 = tensor(f, g1);
    CHECK(fg1.entry(1, 0) == Scalar(-1));  // x⊗y -> -(x⊗y1)
    CHECK(fg1.entry(3, 2) == Scalar(1));   // x0⊗y -> x0⊗y1

    // d⊗1 + 1⊗d squares to zero on a product of complexes
    auto a = make_basis({{"a1", 1}, {"a0", 0}}, q);
    GradedMap da(a, a, -1);
    da.add_entry(1, 0, Scalar(1));
    auto b = make_basis({{"b1", 1}, {"b0", 0}}, q);
    GradedMap db(b, b, -1);
    db.add_entry(1, 0, Scalar(3));
    auto D = tensor(da, GradedMap::identity(b)) + tensor(GradedMap::identity(a), db);
    CHECK(compose(D, D).is_zero());
    CHECK(!D.is_zero());
}

TEST_CASE("interchange law with Koszul sign on random maps") {
    const Field q = Field::rationals();
    Rng rng(17);
    auto u = make_basis({{"u0", 0}, {"u1", 1}, {"u2", 2}, {"v1", 1}}, q);
    for (int t = 0; t < 20; ++t) {
        std::uniform_int_distribution<int> deg(-1, 1);
        const int df = deg(rng), dg = deg(rng), dfp = deg(rng), dgp = deg(rng);
        auto f = random_map(rng, u, u, df), g = random_map(rng, u, u, dg);
        auto fp = random_map(rng, u, u, dfp), gp = random_map(rng, u, u, dgp);
        auto lhs = compose(tensor(f, g), tensor(fp, gp));
        auto rhs = tensor(compose(f, fp), compose(g, gp));
        if ((dg * dfp) % 2) rhs = rhs.scaled(Scalar(-1));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("row reduction") {
    const Field q = Field::rationals();
    auto s = flat(q, 4, 1, "s");
    auto t = flat(q, 6, 0, "t");
    auto zero = row_reduce(GradedMap(s, t, -1), 1);
    CHECK(zero.rank == 0);
    CHECK(zero.kernel.size() == 4);
    auto id = row_reduce(GradedMap::identity(t), 0);
    CHECK(id.rank == 6);
    CHECK(id.kernel.empty());

    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        // rank-deficient products hit every rank
        std::uniform_int_distribution<int> inner(1, 4);
        auto mid = flat(q, inner(rng), 0, "m");
        auto a = random_map(rng, s, mid, -1), b = random_map(rng, mid, t, 0);
        auto m = compose(b, a);
        auto r = row_reduce(m, 1);
        CHECK(r.rank == minor_rank(dense(m)));
        CHECK(r.rank + r.kernel.size() == 4);
        for (const auto& k : r.kernel) CHECK(m.apply(k).empty());
    }
}
