#include "homotransfer/linfty.hpp"

#include <algorithm>

#include "homotransfer/errors.hpp"

namespace homotransfer {

std::optional<std::pair<Word, Scalar>> sort_word(const Word& w, const GradedBasis& letters) {
    std::vector<Index> l;
    for (std::size_t i = 0; i < w.size(); ++i) l.push_back(w[i]);
    long long e = 0;
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = 0; j + 1 < l.size() - i; ++j)
            if (l[j] > l[j + 1]) {
                e += static_cast<long long>(letters.degree(l[j])) * letters.degree(l[j + 1]);
                std::swap(l[j], l[j + 1]);
            }
    Word s;
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (i && l[i] == l[i - 1] && letters.degree(l[i]) % 2) return std::nullopt;
        s.push_back(l[i]);
    }
    return std::make_pair(s, koszul(e));
}

namespace {

long long factorial(std::size_t n) {
    long long f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= static_cast<long long>(i);
    return f;
}

// n!/prod m_i! for a sorted word
long long multinomial(const Word& s) {
    long long r = factorial(s.size());
    for (std::size_t i = 0; i < s.size();) {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        r /= factorial(j - i);
        i = j;
    }
    return r;
}

// P(s) for a sorted word s whose symmetrization is nonzero
WordComb symmetrized_sorted(const Word& s, const GradedBasis& letters) {
    std::vector<Index> l;
    for (std::size_t i = 0; i < s.size(); ++i) l.push_back(s[i]);
    const Field& f = letters.field();
    const Scalar c = Scalar(1, f) / Scalar(multinomial(s), f);
    CombBuilder<Word> b;
    do {
        Word v;
        for (Index x : l) v.push_back(x);
        b.add(v, sort_word(v, letters)->second * c);
    } while (std::next_permutation(l.begin(), l.end()));
    return b.build();
}

std::string sym_name(const Word& w, const GradedBasis& letters) {
    std::string n = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) n += "·";
        n += letters.name(w[i]);
    }
    return n + ")";
}

template <class F>
void for_each_rearrangement(const Word& s, F&& f) {
    std::vector<Index> l;
    for (std::size_t i = 0; i < s.size(); ++i) l.push_back(s[i]);
    do {
        Word v;
        for (Index x : l) v.push_back(x);
        f(v);
    } while (std::next_permutation(l.begin(), l.end()));
}

}  // namespace

WordComb symmetrize(const WordComb& v, const GradedBasis& letters) {
    CombBuilder<Word> b;
    for (const auto& [w, c] : v)
        if (auto s = sort_word(w, letters)) b.add(symmetrized_sorted(s->first, letters), s->second * c);
    return b.build();
}

void require_lie_field(const Field& f, int max_arity) {
    const auto p = f.characteristic();
    if (p == 2) throw UnsupportedField("the Lie layer needs 2 invertible; characteristic 2 is refused");
    if (p != 0 && static_cast<int>(p) <= max_arity)
        throw UnsupportedField("symmetrization up to arity " + std::to_string(max_arity) +
                               " needs characteristic 0 or above the arity, got " + f.to_string());
}

SymWordSpace::SymWordSpace(BasisPtr letters, int max_arity) : letters_(std::move(letters)), n_(max_arity) {
    require_lie_field(letters_->field(), n_);
    if (n_ < 1 || static_cast<std::size_t>(n_) > kMaxWordLength)
        throw ResourceError("symmetric arity " + std::to_string(n_) + " out of range");
    const auto k = static_cast<Index>(letters_->size());
    std::vector<Word> cur{Word()};
    for (int len = 1; len <= n_; ++len) {
        std::vector<Word> next;
        for (const auto& w : cur)
            for (Index x = w.empty() ? 0 : w[w.size() - 1]; x < k; ++x) {
                if (!w.empty() && w[w.size() - 1] == x && letters_->degree(x) % 2) continue;
                Word v = w;
                v.push_back(x);
                next.push_back(v);
            }
        for (const auto& w : next) {
            index_[w] = static_cast<Index>(words_.size());
            words_.push_back(w);
            elements_.push_back(symmetrized_sorted(w, *letters_));
            weight_.push_back(Scalar(multinomial(w), letters_->field()));
        }
        cur = std::move(next);
    }
}

BasisPtr SymWordSpace::materialize() const {
    std::vector<BasisElement> el;
    for (const auto& w : words_) el.push_back({sym_name(w, *letters_), word_degree(w, *letters_)});
    return make_basis(std::move(el), letters_->field());
}

std::optional<Index> SymWordSpace::find(const Word& sorted) const {
    auto it = index_.find(sorted);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SparseVec SymWordSpace::coordinates(const WordComb& t) const {
    CombBuilder<Index> b;
    for (const auto& [w, c] : t)
        if (auto k = find(w)) b.add(*k, c * weight_[*k]);
    return b.build();
}

AInfinityStructure half_bracket_structure(const DGLieAlgebra& g, int max_arity) {
    const auto k = static_cast<Index>(g.basis->size());
    const Scalar half(1, 2);
    OpTable ops;
    for (Index x = 0; x < k; ++x) ops[Word{x}] = g.d.column(x);
    for (Index a = 0; a < k; ++a)
        for (Index b = 0; b < k; ++b) ops[Word{a, b}] = g.br(a, b).scaled(half);
    return AInfinityStructure::make(g.basis, max_arity, std::move(ops));
}

CCECoalgebra cce_coalgebra(const DGLieAlgebra& g, int max_arity) {
    CCECoalgebra out{SymWordSpace(shifted_basis(g.basis, 1, "s"), max_arity),
                     coderivation_from_components(half_bracket_structure(g, max_arity)), std::nullopt, std::nullopt};
    const Coderivation br = out.total.restricted(2, 2);
    const auto& L = *out.space.letters();
    for (Index k = 0; k < out.space.words().size(); ++k) {
        const WordComb t = out.space.element(k);
        if (!out.bracket_failure && !br.apply(br.apply(t)).empty())
            out.bracket_failure = sym_name(out.space.words()[k], L);
        if (!out.total_failure && !out.total.apply(out.total.apply(t)).empty())
            out.total_failure = sym_name(out.space.words()[k], L);
    }
    return out;
}

SparseVec LInfinityStructure::component(const Word& u) const {
    auto s = sort_word(u, *letters);
    if (!s) return {};
    auto it = comps.find(s->first);
    return it == comps.end() ? SparseVec() : it->second.scaled(s->second);
}

Coderivation LInfinityStructure::higher() const {
    Coderivation D(letters, -1, max_arity);
    for (const auto& [w, v] : comps) {
        if (!sort_word(w, *letters)) continue;  // such words vanish in S^c
        for_each_rearrangement(w, [&](const Word& u) { D.set(u, v.scaled(sort_word(u, *letters)->second)); });
    }
    return D;
}

Coderivation LInfinityStructure::coderivation() const {
    Coderivation D = higher();
    for (Index x = 0; x < carrier->size(); ++x)
        if (!d.column(x).empty()) D.set(Word{x}, d.column(x).scaled(Scalar(-1)));
    return D;
}

SparseVec LieTwistingCochain::on(const Word& u) const {
    auto s = sort_word(u, *letters);
    if (!s) return {};
    auto it = values.find(s->first);
    return it == values.end() ? SparseVec() : it->second.scaled(s->second);
}

LieTwistingCochain cup_bracket(const LieTwistingCochain& a, const LieTwistingCochain& b, const DGLieAlgebra& g,
                               int max_arity) {
    const SymWordSpace space(a.letters, max_arity);
    const auto& L = *a.letters;
    LieTwistingCochain out{a.letters, a.degree + b.degree, {}};
    for (Index k = 0; k < space.words().size(); ++k) {
        const auto n = space.words()[k].size();
        if (n < 2) continue;
        CombBuilder<Index> acc;
        for (const auto& [v, c] : space.element(k)) {
            int pre = 0;
            for (std::size_t l = 1; l < n; ++l) {
                pre += L.degree(v[l - 1]);
                const SparseVec x = a.on(v.slice(0, l));
                if (x.empty()) continue;
                const SparseVec y = b.on(v.slice(l, n));
                if (y.empty()) continue;
                acc.add(g.br(x, y), koszul(koszul_exponent(b.degree, pre)) * c);
            }
        }
        SparseVec r = acc.build();
        if (!r.empty()) out.values.emplace(space.words()[k], std::move(r));
    }
    return out;
}

LInfinityTransferResult transfer_linf(const DGLieAlgebra& g, const Contraction& c, const TransferOptions& o) {
    const int N = o.max_arity;
    require_lie_field(g.basis->field(), N);
    if (auto j = g.jacobi_failure()) throw AxiomError("bracket violates the Jacobi identity at " + *j);
    if (!c.big.basis()->same_as(*g.basis) || !(c.big.d() == g.d))
        throw StructuralError("contraction does not start at the Lie algebra's complex");

    // recursion with ½[ , ] as a product, on all tensor words
    StructureConstants half;
    const Scalar h2(1, 2);
    for (Index a = 0; a < g.basis->size(); ++a)
        for (Index b = 0; b < g.basis->size(); ++b) {
            SparseVec v = g.br(a, b).scaled(h2);
            if (!v.empty()) half[{a, b}] = std::move(v);
        }
    const DGAlgebra A = DGAlgebra::unchecked(g.basis, g.d, std::move(half));
    const TransferResult r = transfer_recursive(A, c, o);
    const auto& M = c.small.basis();
    OpTable b;
    for (auto& [w, v] : bar_dictionary(r.structure.ops, *M))
        if (w.size() >= 2) b.emplace(w, v);

    const Contraction sc = suspend(c, 1);
    const SymWordSpace small(sc.small.basis(), N), big(sc.big.basis(), N);
    LInfinityTransferResult out{LInfinityStructure{M, sc.small.basis(), N, c.small.d(), {}},
                                LieTwistingCochain{sc.small.basis(), -1, {}}, {}};
    for (Index k = 0; k < small.words().size(); ++k) {
        const Word& w = small.words()[k];
        CombBuilder<Index> comp, tau;
        for (const auto& [v, e] : small.element(k)) {
            if (auto it = b.find(v); it != b.end()) comp.add(it->second, e);
            if (auto it = r.tau.find(v); it != r.tau.end()) tau.add(it->second, e);
        }
        SparseVec cv = comp.build(), tv = tau.build();
        if (!cv.empty()) out.structure.comps.emplace(w, std::move(cv));
        if (!tv.empty()) out.tau.values.emplace(w, std::move(tv));
    }

    // perturbation lemma on symmetric tensors with homotopy P∘Th
    const BasisPtr Bb = big.materialize(), Bs = small.materialize();
    const GradedMap np = compose(sc.nabla, sc.pi);
    const Coderivation del = coderivation_from_components(half_bracket_structure(g, N)).restricted(2, 2);
    GradedMap dB(Bb, Bb, -1), dS(Bs, Bs, -1), P(Bb, Bb, -1), pi(Bb, Bs, 0), nabla(Bs, Bb, 0), h(Bb, Bb, 1);
    const auto& Lb = *sc.big.basis();
    std::vector<SparseVec> cd(big.words().size()), cp(cd.size()), cpi(cd.size()), ch(cd.size());
    parallel_for(cd.size(), o.exec, [&](std::size_t i) {
        const WordComb t = big.element(static_cast<Index>(i));
        cd[i] = big.coordinates(apply_linear(t, [&](const Word& w) { return extend_linear(sc.big.d(), w); }));
        cp[i] = big.coordinates(del.apply(t));
        cpi[i] = small.coordinates(tensor_power(sc.pi, t));
        ch[i] = big.coordinates(
            symmetrize(apply_linear(t, [&](const Word& w) { return tensor_trick_homotopy(sc.h, np, w); }), Lb));
    });
    for (Index i = 0; i < cd.size(); ++i) {
        dB.set_column(i, cd[i]);
        P.set_column(i, cp[i]);
        pi.set_column(i, cpi[i]);
        h.set_column(i, ch[i]);
    }
    for (Index k = 0; k < small.words().size(); ++k) {
        const WordComb t = small.element(k);
        dS.set_column(k, small.coordinates(
                             apply_linear(t, [&](const Word& w) { return extend_linear(sc.small.d(), w); })));
        nabla.set_column(k, big.coordinates(tensor_power(sc.nabla, t)));
    }
    const Contraction con{ChainComplex(Bb, dB), ChainComplex(Bs, dS), pi, nabla, h};
    const Filtration f{word_length_levels(big.words()), word_length_levels(small.words())};
    out.perturbed = perturb(con, Perturbation{P, 1}, f, N, o.exec);

    const Coderivation D = out.structure.higher();
    for (Index k = 0; k < small.words().size(); ++k)
        if (!(small.coordinates(D.apply(small.element(k))) == out.perturbed.D.column(k)))
            throw MethodDivergence("recursion and perturbation lemma disagree on symmetric tensors at " +
                                   Bs->name(k));
    return out;
}

IdentityReport check_master(const LieTwistingCochain& tau, const LInfinityStructure& s, const DGLieAlgebra& g) {
    ReportBuilder rb("master");
    const SymWordSpace space(s.letters, s.max_arity);
    const Coderivation D = s.coderivation();
    const LieTwistingCochain sq = cup_bracket(tau, tau, g, s.max_arity);
    const Scalar half(1, 2);
    auto val = [](const OpTable& t, const Word& w) {
        auto it = t.find(w);
        return it == t.end() ? SparseVec() : it->second;
    };
    for (Index k = 0; k < space.words().size(); ++k) {
        const Word& w = space.words()[k];
        CombBuilder<Index> res;
        res.add(g.d.apply(val(tau.values, w)));
        for (const auto& [u, c] : D.apply(space.element(k))) res.add(tau.on(u), c);
        res.add(val(sq.values, w), -half);
        rb.record(static_cast<int>(w.size()), word_degree(w, *s.letters), res.build().empty(),
                  sym_name(w, *s.letters));
    }
    return rb.build();
}

std::optional<std::string> linf_square_zero_failure(const LInfinityStructure& s) {
    const SymWordSpace space(s.letters, s.max_arity);
    const Coderivation D = s.coderivation();
    for (Index k = 0; k < space.words().size(); ++k)
        if (!D.apply(D.apply(space.element(k))).empty()) return sym_name(space.words()[k], *s.letters);
    return std::nullopt;
}

}  // namespace homotransfer
