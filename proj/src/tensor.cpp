#include "homotransfer/tensor.hpp"

#include <set>

#include "homotransfer/errors.hpp"

namespace homotransfer {

namespace {
const SparseVec kEmptyVec;
}

Coderivation::Coderivation(BasisPtr letters, int degree, int max_arity)
    : letters_(std::move(letters)), degree_(degree), n_(max_arity) {}

void Coderivation::set(const Word& input, SparseVec output) {
    const int j = static_cast<int>(input.size());
    if (j < 1) throw StructuralError("coderivation component of arity 0");
    if (j > n_) throw ResourceError("component of arity " + std::to_string(j) + " exceeds N = " + std::to_string(n_));
    const int want = word_degree(input, *letters_) + degree_;
    CombBuilder<Index> b;
    for (const auto& [z, c] : output) {
        if (letters_->degree(z) != want)
            throw AxiomError("component on " + word_name(input, *letters_) + " has a term of the wrong degree");
        b.add(z, c.in_field(letters_->field()));
    }
    output = b.build();
    if (output.empty())
        comps_.erase(input);
    else
        comps_[input] = std::move(output);
    std::set<int> ar;
    for (const auto& [w, v] : comps_) ar.insert(static_cast<int>(w.size()));
    arities_.assign(ar.begin(), ar.end());
}

const SparseVec& Coderivation::component(const Word& input) const {
    auto it = comps_.find(input);
    return it == comps_.end() ? kEmptyVec : it->second;
}

std::map<Word, SparseVec> Coderivation::components() const { return {comps_.begin(), comps_.end()}; }

std::vector<int> Coderivation::arities() const { return arities_; }

WordComb Coderivation::apply(const Word& w) const {
    CombBuilder<Word> b;
    int pre = 0;
    for (std::size_t r = 0; r < w.size(); ++r) {
        const Scalar s = koszul(koszul_exponent(degree_, pre));
        for (int j : arities_) {
            if (r + static_cast<std::size_t>(j) > w.size()) break;
            auto it = comps_.find(w.slice(r, r + j));
            if (it == comps_.end()) continue;
            for (const auto& [y, c] : it->second) b.add(w.splice(r, j, Word{y}), s * c);
        }
        pre += letters_->degree(w[r]);
    }
    return b.build();
}

WordComb Coderivation::apply(const WordComb& v) const {
    return apply_linear(v, [&](const Word& w) { return apply(w); });
}

Coderivation Coderivation::restricted(int lo, int hi) const {
    Coderivation r(letters_, degree_, n_);
    for (const auto& [w, v] : comps_) {
        const int j = static_cast<int>(w.size());
        if (j >= lo && j <= hi) r.comps_.emplace(w, v);
    }
    std::set<int> ar;
    for (const auto& [w, v] : r.comps_) ar.insert(static_cast<int>(w.size()));
    r.arities_.assign(ar.begin(), ar.end());
    return r;
}

GradedMap Coderivation::component_map(int j) const {
    std::vector<BasisElement> el;
    auto words = words_of_length(letters_->size(), static_cast<std::size_t>(j));
    for (const auto& w : words) el.push_back({word_name(w, *letters_), word_degree(w, *letters_)});
    auto src = make_basis(std::move(el), letters_->field());
    GradedMap m(src, letters_, degree_);
    for (Index i = 0; i < words.size(); ++i) m.set_column(i, component(words[i]));
    return m;
}

Derivation::Derivation(BasisPtr letters, int degree, int max_arity)
    : letters_(std::move(letters)), degree_(degree), n_(max_arity), images_(letters_->size()) {}

void Derivation::set(Index letter, WordComb image) {
    const int want = letters_->degree(letter) + degree_;
    CombBuilder<Word> b;
    for (const auto& [w, c] : image) {
        if (word_degree(w, *letters_) != want)
            throw AxiomError("derivation image of " + letters_->name(letter) + " has a term of the wrong degree");
        if (static_cast<int>(w.size()) > n_) continue;
        b.add(w, c.in_field(letters_->field()));
    }
    images_[letter] = b.build();
}

WordComb Derivation::apply(const Word& w) const {
    CombBuilder<Word> b;
    int pre = 0;
    for (std::size_t r = 0; r < w.size(); ++r) {
        const Scalar s = koszul(koszul_exponent(degree_, pre));
        for (const auto& [u, c] : images_[w[r]]) {
            if (static_cast<int>(w.size() - 1 + u.size()) > n_) continue;
            b.add(w.splice(r, 1, u), s * c);
        }
        pre += letters_->degree(w[r]);
    }
    return b.build();
}

WordComb Derivation::apply(const WordComb& v) const {
    return apply_linear(v, [&](const Word& w) { return apply(w); });
}

Derivation Derivation::restricted(int lo, int hi) const {
    Derivation r(letters_, degree_, n_);
    for (Index x = 0; x < images_.size(); ++x) {
        CombBuilder<Word> b;
        for (const auto& [w, c] : images_[x])
            if (static_cast<int>(w.size()) >= lo && static_cast<int>(w.size()) <= hi) b.add(w, c);
        r.images_[x] = b.build();
    }
    return r;
}

bool Derivation::is_zero() const {
    for (const auto& v : images_)
        if (!v.empty()) return false;
    return true;
}

std::optional<Word> square_zero_failure(const Coderivation& total, int max_len) {
    for (int len = 1; len <= max_len; ++len)
        for (const auto& w : words_of_length(total.letters()->size(), static_cast<std::size_t>(len)))
            if (!total.apply(total.apply(w)).empty()) return w;
    return std::nullopt;
}

std::optional<Word> square_zero_failure(const Derivation& total, int max_len) {
    for (int len = 1; len <= max_len; ++len)
        for (const auto& w : words_of_length(total.letters()->size(), static_cast<std::size_t>(len)))
            if (!total.apply(total.apply(w)).empty()) return w;
    return std::nullopt;
}

Coderivation linear_coderivation(const GradedMap& f, int max_arity) {
    Coderivation c(f.source(), f.degree(), max_arity);
    for (Index x = 0; x < f.source()->size(); ++x) c.set(Word{x}, f.column(x));
    return c;
}

Derivation linear_derivation(const GradedMap& f, int max_arity) {
    Derivation d(f.source(), f.degree(), max_arity);
    for (Index x = 0; x < f.source()->size(); ++x) {
        CombBuilder<Word> b;
        for (const auto& [y, c] : f.column(x)) b.add(Word{y}, c);
        d.set(x, b.build());
    }
    return d;
}

Coderivation coderivation_from_components(const AInfinityStructure& a) {
    auto sb = shifted_basis(a.carrier, 1, "s");
    Coderivation c(sb, -1, a.max_arity);
    for (const auto& [w, v] : a.ops)
        c.set(w, v.scaled(-koszul(suspension_exponent(w, *a.carrier))));
    return c;
}

AInfinityStructure components_from_coderivation(const Coderivation& d, const BasisPtr& carrier) {
    if (d.letters()->size() != carrier->size()) throw StructuralError("coderivation letters do not match the carrier");
    OpTable t;
    for (const auto& [w, v] : d.components()) {
        if (static_cast<int>(w.size()) > d.max_arity()) throw ResourceError("component beyond the arity cap");
        t.emplace(w, v.scaled(-koszul(suspension_exponent(w, *carrier))));
    }
    return AInfinityStructure::make(carrier, d.max_arity(), std::move(t));
}

Coderivation bar_perturbation(const DGAlgebra& a, int max_arity) {
    auto full = coderivation_from_components(AInfinityStructure::from_dga(a, std::max(max_arity, 2)));
    Coderivation total(full.letters(), -1, max_arity);
    for (const auto& [w, v] : full.components())
        if (static_cast<int>(w.size()) <= max_arity) total.set(w, v);
    if (auto bad = square_zero_failure(total, max_arity))
        throw AxiomError("bar differential does not square to zero on " + word_name(*bad, *total.letters()));
    return total.restricted(2, 2);
}

CobarRegime classify_regime(const GradedBasis& coideal) {
    bool sc = true, np = true;
    for (const auto& e : coideal.elements()) {
        sc &= e.degree >= 2;
        np &= e.degree <= 0;
    }
    if (sc) return CobarRegime::simply_connected;
    if (np) return CobarRegime::nonpositive;
    return CobarRegime::truncated;
}

Derivation cobar_perturbation(const DGCoalgebra& c, int max_arity, CobarRegime regime) {
    const CobarRegime found = classify_regime(*c.basis);
    if (regime != CobarRegime::truncated && found == CobarRegime::truncated)
        throw AxiomError("coalgebra is neither simply connected nor concentrated in non-positive degrees; request truncation explicitly");
    if ((regime == CobarRegime::simply_connected || regime == CobarRegime::nonpositive) && regime != found)
        throw AxiomError("coalgebra is not in the requested connectivity regime");
    auto co = AInfinityCoalgebra::from_dgc(c, max_arity);
    auto sb = shifted_basis(c.basis, -1, "s^-1");
    Derivation total(sb, -1, max_arity);
    for (Index x = 0; x < c.basis->size(); ++x) total.set(x, co.cobar[x]);
    if (auto bad = square_zero_failure(total, max_arity))
        throw AxiomError("cobar differential does not square to zero on " + word_name(*bad, *sb));
    return total.restricted(2, 2);
}

Contraction lift_contraction_tensor(const Contraction& c, TensorSide /*side*/, int max_arity) {
    WordSpace big(c.big.basis(), max_arity), small(c.small.basis(), max_arity);
    auto B = big.materialize(), S = small.materialize();
    const auto np = compose(c.nabla, c.pi);
    GradedMap dB(B, B, -1), dS(S, S, -1), pi(B, S, 0), nabla(S, B, 0), h(B, B, 1);
    auto to_vec = [](const WordSpace& ws, const WordComb& v) {
        CombBuilder<Index> b;
        for (const auto& [w, cf] : v) b.add(ws.index_of(w), cf);
        return b.build();
    };
    for (Index i = 0; i < big.words().size(); ++i) {
        const Word& w = big.words()[i];
        dB.set_column(i, to_vec(big, extend_linear(c.big.d(), w)));
        pi.set_column(i, to_vec(small, tensor_power(c.pi, w)));
        h.set_column(i, to_vec(big, tensor_trick_homotopy(c.h, np, w)));
    }
    for (Index i = 0; i < small.words().size(); ++i) {
        const Word& w = small.words()[i];
        dS.set_column(i, to_vec(small, extend_linear(c.small.d(), w)));
        nabla.set_column(i, to_vec(big, tensor_power(c.nabla, w)));
    }
    return Contraction{ChainComplex(B, dB), ChainComplex(S, dS), pi, nabla, h};
}

}  // namespace homotransfer
