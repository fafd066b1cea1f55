#include "homotransfer/ainfinity.hpp"

#include <set>

#include "homotransfer/errors.hpp"

namespace homotransfer {

namespace {
const SparseVec kEmpty;

OpTable clean_table(const BasisPtr& target, OpTable t) {
    OpTable out;
    for (auto& [w, v] : t) {
        CombBuilder<Index> b;
        for (const auto& [z, c] : v) b.add(z, c.in_field(target->field()));
        auto nv = b.build();
        if (!nv.empty()) out.emplace(w, std::move(nv));
    }
    return out;
}
}  // namespace

long long suspension_exponent(const Word& w, const GradedBasis& carrier) {
    long long e = 0;
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) e += static_cast<long long>(n - 1 - i) * carrier.degree(w[i]);
    return e;
}

AInfinityStructure AInfinityStructure::make(BasisPtr carrier, int max_arity, OpTable ops) {
    AInfinityStructure a{carrier, max_arity, clean_table(carrier, std::move(ops))};
    for (const auto& [w, v] : a.ops) {
        const int n = static_cast<int>(w.size());
        if (n < 1) throw StructuralError("operation of arity 0");
        if (n > max_arity) throw ResourceError("operation of arity " + std::to_string(n) + " exceeds N = " +
                                               std::to_string(max_arity));
        const int want = word_degree(w, *carrier) + n - 2;
        for (const auto& [z, c] : v)
            if (carrier->degree(z) != want)
                throw AxiomError("m_" + std::to_string(n) + word_name(w, *carrier) + " has a term of degree " +
                                 std::to_string(carrier->degree(z)) + ", expected " + std::to_string(want));
    }
    return a;
}

AInfinityStructure AInfinityStructure::from_dga(const DGAlgebra& a, int max_arity) {
    OpTable t;
    for (Index x = 0; x < a.basis->size(); ++x)
        if (!a.d.column(x).empty()) t.emplace(Word{x}, a.d.column(x));
    if (max_arity >= 2)
        for (const auto& [k, v] : a.mu) t.emplace(Word{k.first, k.second}, v);
    return make(a.basis, max_arity, std::move(t));
}

const SparseVec& AInfinityStructure::op(const Word& w) const {
    auto it = ops.find(w);
    return it == ops.end() ? kEmpty : it->second;
}

GradedMap AInfinityStructure::m1() const {
    GradedMap d(carrier, carrier, -1);
    for (Index x = 0; x < carrier->size(); ++x) d.set_column(x, op(Word{x}));
    return d;
}

std::vector<int> AInfinityStructure::arities() const {
    std::set<int> s;
    for (const auto& [w, v] : ops) s.insert(static_cast<int>(w.size()));
    return {s.begin(), s.end()};
}

bool AInfinityStructure::is_minimal() const {
    for (const auto& [w, v] : ops)
        if (w.size() == 1) return false;
    return true;
}

AInfinityStructure AInfinityStructure::truncated(int n) const {
    OpTable t;
    for (const auto& [w, v] : ops)
        if (static_cast<int>(w.size()) <= n) t.emplace(w, v);
    return AInfinityStructure{carrier, n, std::move(t)};
}

bool operator==(const AInfinityStructure& a, const AInfinityStructure& b) {
    return a.carrier->same_as(*b.carrier) && a.ops == b.ops;
}

const SparseVec& AInfinityMorphism::comp(const Word& w) const {
    auto it = comps.find(w);
    return it == comps.end() ? kEmpty : it->second;
}

bool operator==(const AInfinityMorphism& a, const AInfinityMorphism& b) {
    return a.source->same_as(*b.source) && a.target->same_as(*b.target) && a.comps == b.comps;
}

AInfinityCoalgebra AInfinityCoalgebra::from_dgc(const DGCoalgebra& c, int max_arity) {
    AInfinityCoalgebra out{c.basis, max_arity, std::vector<WordComb>(c.basis->size())};
    for (Index x = 0; x < c.basis->size(); ++x) {
        CombBuilder<Word> b;
        // linear part: d_{s^-1} = -s^-1 d s
        for (const auto& [y, e] : c.d.column(x)) b.add(Word{y}, -e);
        // quadratic part: (-1)^{|x'|} s^-1 x' ⊗ s^-1 x''
        if (max_arity >= 2)
            for (const auto& [w, e] : c.delta[x]) b.add(w, koszul(c.basis->degree(w[0])) * e);
        out.cobar[x] = b.build();
    }
    return out;
}

bool operator==(const AInfinityCoalgebra& a, const AInfinityCoalgebra& b) {
    return a.carrier->same_as(*b.carrier) && a.cobar == b.cobar;
}

std::optional<Word> first_difference(const OpTable& a, const OpTable& b) {
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) return ia->first;
        if (ia == a.end() || ib->first < ia->first) return ib->first;
        if (!(ia->second == ib->second)) return ia->first;
        ++ia;
        ++ib;
    }
    return std::nullopt;
}

}  // namespace homotransfer
