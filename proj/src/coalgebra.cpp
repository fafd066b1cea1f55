#include "homotransfer/errors.hpp"
#include "homotransfer/transfer.hpp"

namespace homotransfer {

namespace {

WordComb concat(const WordComb& u, const WordComb& v, int max_len) {
    CombBuilder<Word> b;
    for (const auto& [x, c] : u)
        for (const auto& [y, e] : v)
            if (static_cast<int>(x.size() + y.size()) <= max_len) b.add(x + y, c * e);
    return b.build();
}

WordComb to_words(const SparseVec& v) {
    CombBuilder<Word> b;
    for (const auto& [x, c] : v) b.add(Word{x}, c);
    return b.build();
}

}  // namespace

CoalgebraTransferResult transfer_coalgebra(const DGCoalgebra& C, const Contraction& con, const TransferOptions& o,
                                           CobarRegime regime) {
    const int N = o.max_arity;
    if (!con.big.basis()->same_as(*C.basis) || !(con.big.d() == C.d))
        throw StructuralError("contraction does not start at the coalgebra's complex");
    const Derivation del = cobar_perturbation(C, N, regime);
    const auto& Cb = *C.basis;
    const auto& Mb = con.small.basis();
    const std::size_t nc = Cb.size(), nm = Mb->size();

    // tau[j][x] = τ^j(x), words of length j in s^-1 M letters
    std::vector<std::vector<WordComb>> tau(static_cast<std::size_t>(N) + 1, std::vector<WordComb>(nc));
    for (Index x = 0; x < nc; ++x) tau[1][x] = to_words(con.pi.column(x));
    // sum_l (τ^l ∪ τ^{j-l})(y), with (a ∪ b)(y) = sum (-1)^{|y'|} a(y') b(y'')
    auto cup_sum = [&](int j, Index y) {
        CombBuilder<Word> out;
        for (const auto& [w, c] : C.delta[y]) {
            const Scalar s = koszul(Cb.degree(w[0])) * c;
            for (int l = 1; l < j; ++l) out.add(concat(tau[l][w[0]], tau[j - l][w[1]], N), s);
        }
        return out.build();
    };
    for (int j = 2; j <= N; ++j) {
        std::vector<WordComb> row(nc);
        parallel_for(nc, o.exec, [&](std::size_t x) {
            CombBuilder<Word> b;
            for (const auto& [y, c] : con.h.column(static_cast<Index>(x))) b.add(cup_sum(j, y), c);
            row[x] = b.build();
        });
        tau[j] = std::move(row);
    }

    const BasisPtr sM = shifted_basis(Mb, -1, "s^-1");
    Derivation D(sM, -1, N);
    std::vector<WordComb> Dm(nm);
    parallel_for(nm, o.exec, [&](std::size_t m) {
        CombBuilder<Word> b;
        for (const auto& [y, c] : con.nabla.column(static_cast<Index>(m)))
            for (int j = 2; j <= N; ++j) b.add(cup_sum(j, y), c);
        Dm[m] = b.build();
    });

    // cross-check: Tπ sum (-∂ Th)^n ∂ T∇ on the cobar side
    const Contraction sc = suspend(con, -1);
    const GradedMap np = compose(sc.nabla, sc.pi);
    auto step = [&](const WordComb& v) {
        return del.apply(apply_linear(v, [&](const Word& w) { return tensor_trick_homotopy(sc.h, np, w); }))
            .scaled(Scalar(-1));
    };
    parallel_for(nm, o.exec, [&](std::size_t m) {
        auto [s, t] = neumann_series(del.apply(tensor_power(sc.nabla, Word{static_cast<Index>(m)})), step, N + 1,
                                     "cobar D");
        if (!(tensor_power(sc.pi, s) == Dm[m]))
            throw MethodDivergence("recursion and perturbation lemma disagree on the cobar side at " +
                                   Mb->name(static_cast<Index>(m)));
    });

    AInfinityCoalgebra st{Mb, N, std::vector<WordComb>(nm)};
    for (Index m = 0; m < nm; ++m) {
        D.set(m, Dm[m]);
        CombBuilder<Word> b;
        for (const auto& [y, e] : con.small.d().column(m)) b.add(Word{y}, -e);
        b.add(Dm[m]);
        st.cobar[m] = b.build();
    }
    std::vector<WordComb> total(nc);
    for (Index x = 0; x < nc; ++x) {
        CombBuilder<Word> b;
        for (int j = 1; j <= N; ++j) b.add(tau[j][x]);
        total[x] = b.build();
    }
    return CoalgebraTransferResult{std::move(st), std::move(D), std::move(total)};
}

// ---- duality

BasisPtr dual_basis(const BasisPtr& b) {
    std::vector<BasisElement> el;
    for (const auto& e : b->elements()) {
        std::string n = e.name;
        if (!n.empty() && n.back() == '*')
            n.pop_back();
        else
            n += "*";
        el.push_back({n, -e.degree});
    }
    return make_basis(std::move(el), b->field());
}

namespace {

GradedMap dual_map(const GradedMap& f, const BasisPtr& dsrc, const BasisPtr& dtgt) {
    // f : S -> T becomes f^T : T* -> S*
    return transpose(f, dtgt, dsrc);
}

}  // namespace

DGAlgebra dual_algebra(const DGCoalgebra& c) {
    auto db = dual_basis(c.basis);
    StructureConstants mu;
    for (Index x = 0; x < c.basis->size(); ++x)
        for (const auto& [w, e] : c.delta[x]) {
            auto& slot = mu[{w[0], w[1]}];
            slot = slot + SparseVec(x, -e);
        }
    return DGAlgebra::unchecked(db, dual_map(c.d, db, db), std::move(mu));
}

DGCoalgebra dual_coalgebra(const DGAlgebra& a) {
    auto db = dual_basis(a.basis);
    std::vector<CombBuilder<Word>> cols(a.basis->size());
    for (const auto& [k, v] : a.mu)
        for (const auto& [z, e] : v) cols[z].add(Word{k.first, k.second}, -e);
    std::vector<WordComb> delta;
    for (auto& b : cols) delta.push_back(b.build());
    return DGCoalgebra::unchecked(db, dual_map(a.d, db, db), std::move(delta));
}

Contraction dualize(const Contraction& c) {
    auto B = dual_basis(c.big.basis()), S = dual_basis(c.small.basis());
    return Contraction{ChainComplex(B, dual_map(c.big.d(), B, B)), ChainComplex(S, dual_map(c.small.d(), S, S)),
                       dual_map(c.nabla, S, B), dual_map(c.pi, B, S), dual_map(c.h, B, B)};
}

AInfinityStructure dualize(const AInfinityCoalgebra& c) {
    // bar components of the dual are the transposed cobar components
    auto db = dual_basis(c.carrier);
    OpTable b;
    for (Index x = 0; x < c.carrier->size(); ++x)
        for (const auto& [w, e] : c.cobar[x]) {
            auto& slot = b[w];
            slot = slot + SparseVec(x, e);
        }
    return AInfinityStructure::make(db, c.max_arity, bar_dictionary(b, *db));
}

AInfinityCoalgebra dualize(const AInfinityStructure& a) {
    auto db = dual_basis(a.carrier);
    std::vector<CombBuilder<Word>> cols(a.carrier->size());
    for (const auto& [w, v] : bar_dictionary(a.ops, *a.carrier))
        for (const auto& [z, e] : v) cols[z].add(w, e);
    AInfinityCoalgebra out{db, a.max_arity, {}};
    for (auto& b : cols) out.cobar.push_back(b.build());
    return out;
}

}  // namespace homotransfer
