#include "homotransfer/algebra.hpp"

#include "homotransfer/errors.hpp"

namespace homotransfer {

namespace {

void check_table_degrees(const BasisPtr& b, const StructureConstants& t, const char* what) {
    for (const auto& [k, v] : t) {
        if (k.first >= b->size() || k.second >= b->size()) throw StructuralError(std::string(what) + ": index out of range");
        const int want = b->degree(k.first) + b->degree(k.second);
        for (const auto& [z, c] : v)
            if (b->degree(z) != want)
                throw AxiomError(std::string(what) + "(" + b->name(k.first) + "," + b->name(k.second) +
                                 ") has a term of the wrong degree: " + b->name(z));
    }
}

StructureConstants normalized(const BasisPtr& b, StructureConstants t) {
    StructureConstants out;
    for (auto& [k, v] : t) {
        CombBuilder<Index> bl;
        for (const auto& [z, c] : v) bl.add(z, c.in_field(b->field()));
        auto nv = bl.build();
        if (!nv.empty()) out.emplace(k, std::move(nv));
    }
    return out;
}

SparseVec bilinear(const StructureConstants& t, const SparseVec& u, const SparseVec& v) {
    CombBuilder<Index> b;
    for (const auto& [x, c] : u)
        for (const auto& [y, e] : v) {
            auto it = t.find({x, y});
            if (it != t.end()) b.add(it->second, c * e);
        }
    return b.build();
}

std::string pair_name(const BasisPtr& b, Index x, Index y) { return "(" + b->name(x) + "," + b->name(y) + ")"; }

}  // namespace

DGAlgebra DGAlgebra::unchecked(BasisPtr basis, GradedMap d, StructureConstants mu) {
    check_table_degrees(basis, mu, "product");
    DGAlgebra a{basis, std::move(d), normalized(basis, std::move(mu))};
    return a;
}

DGAlgebra DGAlgebra::make(BasisPtr basis, GradedMap d, StructureConstants mu) {
    DGAlgebra a = unchecked(basis, d, std::move(mu));
    ChainComplex(a.basis, a.d);  // d∘d = 0
    if (auto f = a.associativity_failure()) throw AxiomError("product is not associative at " + *f);
    if (auto f = a.leibniz_failure()) throw AxiomError("Leibniz rule fails at " + *f);
    return a;
}

SparseVec DGAlgebra::mul(Index a, Index b) const {
    auto it = mu.find({a, b});
    return it == mu.end() ? SparseVec() : it->second;
}

SparseVec DGAlgebra::mul(const SparseVec& u, const SparseVec& v) const { return bilinear(mu, u, v); }

std::optional<std::string> DGAlgebra::associativity_failure() const {
    const Index n = static_cast<Index>(basis->size());
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            for (Index z = 0; z < n; ++z) {
                SparseVec z1(z, Scalar(1)), x1(x, Scalar(1));
                if (!(mul(mul(x, y), z1) == mul(x1, mul(y, z))))
                    return "(" + basis->name(x) + "," + basis->name(y) + "," + basis->name(z) + ")";
            }
    return std::nullopt;
}

std::optional<std::string> DGAlgebra::leibniz_failure() const {
    const Index n = static_cast<Index>(basis->size());
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
            SparseVec x1(x, Scalar(1)), y1(y, Scalar(1));
            auto lhs = d.apply(mul(x, y));
            CombBuilder<Index> r;
            r.add(mul(d.column(x), y1));
            r.add(mul(x1, d.column(y)), koszul(basis->degree(x)));
            if (!(lhs == r.build())) return pair_name(basis, x, y);
        }
    return std::nullopt;
}

bool DGAlgebra::graded_commutative() const {
    const Index n = static_cast<Index>(basis->size());
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            if (!(mul(x, y) == mul(y, x).scaled(koszul(basis->degree(x) * basis->degree(y))))) return false;
    return true;
}

DGCoalgebra DGCoalgebra::unchecked(BasisPtr basis, GradedMap d, std::vector<WordComb> delta) {
    if (delta.size() != basis->size()) throw StructuralError("diagonal table has the wrong size");
    for (Index x = 0; x < basis->size(); ++x) {
        CombBuilder<Word> b;
        for (const auto& [w, c] : delta[x]) {
            if (w.size() != 2) throw StructuralError("reduced diagonal terms must be two-letter words");
            if (word_degree(w, *basis) != basis->degree(x))
                throw AxiomError("diagonal of " + basis->name(x) + " has a term of the wrong degree");
            b.add(w, c.in_field(basis->field()));
        }
        delta[x] = b.build();
    }
    return DGCoalgebra{basis, std::move(d), std::move(delta)};
}

DGCoalgebra DGCoalgebra::make(BasisPtr basis, GradedMap d, std::vector<WordComb> delta) {
    DGCoalgebra c = unchecked(basis, d, std::move(delta));
    ChainComplex(c.basis, c.d);
    if (auto f = c.coassociativity_failure()) throw AxiomError("diagonal is not coassociative at " + *f);
    if (auto f = c.coleibniz_failure()) throw AxiomError("co-Leibniz rule fails at " + *f);
    return c;
}

std::optional<std::string> DGCoalgebra::coassociativity_failure() const {
    for (Index x = 0; x < basis->size(); ++x) {
        CombBuilder<Word> l, r;
        for (const auto& [w, c] : delta[x]) {
            for (const auto& [u, e] : delta[w[0]]) l.add(u + Word{w[1]}, c * e);
            for (const auto& [u, e] : delta[w[1]]) r.add(Word{w[0]} + u, c * e);
        }
        if (!(l.build() == r.build())) return basis->name(x);
    }
    return std::nullopt;
}

std::optional<std::string> DGCoalgebra::coleibniz_failure() const {
    for (Index x = 0; x < basis->size(); ++x) {
        CombBuilder<Word> l, r;
        for (const auto& [y, c] : d.column(x)) l.add(delta[y], c);
        for (const auto& [w, c] : delta[x]) {
            for (const auto& [y, e] : d.column(w[0])) r.add(Word{y, w[1]}, c * e);
            const Scalar s = koszul(basis->degree(w[0]));
            for (const auto& [y, e] : d.column(w[1])) r.add(Word{w[0], y}, s * c * e);
        }
        if (!(l.build() == r.build())) return basis->name(x);
    }
    return std::nullopt;
}

DGLieAlgebra DGLieAlgebra::make(BasisPtr basis, GradedMap d, StructureConstants bracket, bool require_jacobi) {
    check_table_degrees(basis, bracket, "bracket");
    // complete a one-sided table by skewness
    StructureConstants full = normalized(basis, std::move(bracket));
    StructureConstants extra;
    for (const auto& [k, v] : full) {
        PairKey rev{k.second, k.first};
        if (!full.count(rev))
            extra.emplace(rev, v.scaled(-koszul(basis->degree(k.first) * basis->degree(k.second))));
    }
    full.insert(extra.begin(), extra.end());
    DGLieAlgebra g{basis, std::move(d), std::move(full)};
    ChainComplex(g.basis, g.d);
    if (auto f = g.skew_failure()) throw AxiomError("bracket is not graded skew at " + *f);
    if (auto f = g.leibniz_failure()) throw AxiomError("Leibniz rule fails at " + *f);
    if (require_jacobi)
        if (auto f = g.jacobi_failure()) throw AxiomError("Jacobi identity fails at " + *f);
    return g;
}

SparseVec DGLieAlgebra::br(Index a, Index b) const {
    auto it = bracket.find({a, b});
    return it == bracket.end() ? SparseVec() : it->second;
}

SparseVec DGLieAlgebra::br(const SparseVec& u, const SparseVec& v) const { return bilinear(bracket, u, v); }

std::optional<std::string> DGLieAlgebra::skew_failure() const {
    const Index n = static_cast<Index>(basis->size());
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            if (!(br(y, x) == br(x, y).scaled(-koszul(basis->degree(x) * basis->degree(y)))))
                return pair_name(basis, x, y);
    return std::nullopt;
}

std::optional<std::string> DGLieAlgebra::leibniz_failure() const {
    const Index n = static_cast<Index>(basis->size());
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
            SparseVec x1(x, Scalar(1)), y1(y, Scalar(1));
            auto lhs = d.apply(br(x, y));
            CombBuilder<Index> r;
            r.add(br(d.column(x), y1));
            r.add(br(x1, d.column(y)), koszul(basis->degree(x)));
            if (!(lhs == r.build())) return pair_name(basis, x, y);
        }
    return std::nullopt;
}

std::optional<std::string> DGLieAlgebra::jacobi_failure() const {
    const Index n = static_cast<Index>(basis->size());
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y)
            for (Index z = 0; z < n; ++z) {
                SparseVec x1(x, Scalar(1)), y1(y, Scalar(1)), z1(z, Scalar(1));
                auto lhs = br(x1, br(y, z));
                CombBuilder<Index> r;
                r.add(br(br(x, y), z1));
                r.add(br(y1, br(x, z)), koszul(basis->degree(x) * basis->degree(y)));
                if (!(lhs == r.build()))
                    return "(" + basis->name(x) + "," + basis->name(y) + "," + basis->name(z) + ")";
            }
    return std::nullopt;
}

DGLieAlgebra commutator_lie(const DGAlgebra& a) {
    StructureConstants t;
    const Index n = static_cast<Index>(a.basis->size());
    for (Index x = 0; x < n; ++x)
        for (Index y = 0; y < n; ++y) {
            CombBuilder<Index> b;
            b.add(a.mul(x, y));
            b.add(a.mul(y, x), -koszul(a.basis->degree(x) * a.basis->degree(y)));
            auto v = b.build();
            if (!v.empty()) t.emplace(PairKey{x, y}, v);
        }
    return DGLieAlgebra::make(a.basis, a.d, t);
}

}  // namespace homotransfer
