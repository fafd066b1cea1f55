#include "homotransfer/perturb.hpp"

#include <algorithm>

namespace homotransfer {

int Filtration::level(const SparseVec& v, bool on_big) const {
    const auto& lv = on_big ? big : small;
    int m = 0;
    for (const auto& [x, c] : v) m = std::max(m, lv[x]);
    return m;
}

int Filtration::max_level() const {
    int m = 0;
    for (int x : big) m = std::max(m, x);
    for (int x : small) m = std::max(m, x);
    return m;
}

std::vector<int> word_length_levels(const std::vector<Word>& words) {
    std::vector<int> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(static_cast<int>(w.size()));
    return out;
}

namespace {

// every column of f lands at level <= level(source) - drop
void require_filtered(const GradedMap& f, const std::vector<int>& src, const std::vector<int>& tgt, int drop,
                      const char* what, bool divergence) {
    for (Index x = 0; x < f.source()->size(); ++x)
        for (const auto& [y, c] : f.column(x))
            if (tgt[y] > src[x] - drop) {
                const std::string msg = std::string(what) + " does not respect the filtration at " +
                                        f.source()->name(x);
                if (divergence) throw SeriesDivergence(msg + "; the perturbation series would not terminate");
                throw AxiomError(msg);
            }
}

}  // namespace

PerturbResult perturb(const Contraction& c, const Perturbation& p, const Filtration& f, int cap, Exec exec) {
    const auto& B = c.big.basis();
    const auto& S = c.small.basis();
    if (!p.partial.source()->same_as(*B) || !p.partial.target()->same_as(*B) || p.partial.degree() != -1)
        throw StructuralError("perturbation must be a degree -1 map on the big complex");
    if (f.big.size() != B->size() || f.small.size() != S->size())
        throw StructuralError("filtration does not match the contraction");
    if (p.drop < 1) throw SeriesDivergence("perturbation drop must be at least 1");
    for (int x : f.big)
        if (x < 0 || x > cap) throw ResourceError("filtration level " + std::to_string(x) + " outside [0, cap]");
    for (int x : f.small)
        if (x < 0 || x > cap) throw ResourceError("filtration level " + std::to_string(x) + " outside [0, cap]");

    const GradedMap total = c.big.d() + p.partial;
    if (!compose(total, total).is_zero()) throw AxiomError("perturbation invalid: (d + ∂)^2 ≠ 0");
    require_filtered(p.partial, f.big, f.big, p.drop, "perturbation", true);
    require_filtered(c.big.d(), f.big, f.big, 0, "big differential", false);
    require_filtered(c.h, f.big, f.big, 0, "homotopy", false);
    require_filtered(c.pi, f.big, f.small, 0, "projection", false);
    require_filtered(c.nabla, f.small, f.big, 0, "inclusion", false);

    const int max_terms = (cap + p.drop - 1) / p.drop + 1;
    const GradedMap& d = p.partial;
    const GradedMap& h = c.h;
    auto minus_h_d = [&](const SparseVec& v) { return h.apply(d.apply(v)).scaled(Scalar(-1)); };
    auto minus_d_h = [&](const SparseVec& v) { return d.apply(h.apply(v)).scaled(Scalar(-1)); };

    const std::size_t nb = B->size(), ns = S->size();
    std::vector<SparseVec> nab_cols(ns), D1(ns), D2(ns), pi_cols(nb), h_cols(nb);
    std::vector<int> terms_s(ns, 0), terms_b(nb, 0);

    parallel_for(ns, exec, [&](std::size_t m) {
        auto [nd, n1] = neumann_series(c.nabla.column(static_cast<Index>(m)), minus_h_d, max_terms, "∇_∂");
        nab_cols[m] = nd;
        D1[m] = c.pi.apply(d.apply(nd));
        auto [dd, n2] = neumann_series(d.apply(c.nabla.column(static_cast<Index>(m))), minus_d_h, max_terms, "D");
        D2[m] = c.pi.apply(dd);
        terms_s[m] = std::max(n1, n2);
    });
    for (std::size_t m = 0; m < ns; ++m)
        if (!(D1[m] == D2[m]))
            throw MethodDivergence("the two forms of the transferred perturbation differ at " +
                                   S->name(static_cast<Index>(m)));

    parallel_for(nb, exec, [&](std::size_t x) {
        SparseVec e(static_cast<Index>(x), Scalar(1));
        auto [pv, n1] = neumann_series(e, minus_d_h, max_terms, "π_∂");
        pi_cols[x] = c.pi.apply(pv);
        auto [hv, n2] = neumann_series(h.column(static_cast<Index>(x)), minus_h_d, max_terms, "h_∂");
        h_cols[x] = hv;
        terms_b[x] = std::max(n1, n2);
    });

    GradedMap D(S, S, -1), nab(S, B, 0), pi(B, S, 0), hh(B, B, 1);
    for (Index m = 0; m < ns; ++m) {
        D.set_column(m, D1[m]);
        nab.set_column(m, nab_cols[m]);
    }
    for (Index x = 0; x < nb; ++x) {
        pi.set_column(x, pi_cols[x]);
        hh.set_column(x, h_cols[x]);
    }
    int terms = 0;
    for (int t : terms_s) terms = std::max(terms, t);
    for (int t : terms_b) terms = std::max(terms, t);

    PerturbResult r{D, Contraction{ChainComplex(B, total), ChainComplex(S, c.small.d() + D), pi, nab, hh}, terms};
    return r;
}

}  // namespace homotransfer
