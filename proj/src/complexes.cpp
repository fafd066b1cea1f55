#include "homotransfer/complexes.hpp"

#include <sstream>
#include <unordered_map>

#include "homotransfer/errors.hpp"

namespace homotransfer {

ChainComplex::ChainComplex(BasisPtr basis, GradedMap d) : basis_(std::move(basis)), d_(std::move(d)) {
    if (d_.degree() != -1) throw AxiomError("differential must have degree -1");
    if (!d_.source()->same_as(*basis_) || !d_.target()->same_as(*basis_))
        throw StructuralError("differential is not an endomorphism of the basis");
    auto dd = compose(d_, d_);
    for (Index i = 0; i < basis_->size(); ++i)
        if (!dd.column(i).empty()) throw AxiomError("d∘d is nonzero on " + basis_->name(i));
}

ChainComplex ChainComplex::zero_differential(const BasisPtr& basis) {
    return ChainComplex(basis, GradedMap(basis, basis, -1));
}

bool ContractionReport::all_pass() const {
    for (const auto& a : axioms)
        if (!a.pass) return false;
    return true;
}

const AxiomResult& ContractionReport::operator[](const std::string& name) const {
    for (const auto& a : axioms)
        if (a.name == name) return a;
    throw StructuralError("no axiom named " + name);
}

std::string ContractionReport::summary() const {
    std::ostringstream os;
    for (const auto& a : axioms) {
        os << a.name << ": " << (a.pass ? "pass" : "FAIL");
        if (!a.pass) os << " at " << a.witness;
        os << "\n";
    }
    return os.str();
}

namespace {

AxiomResult first_nonzero(const std::string& name, const GradedMap& m) {
    AxiomResult r{name, true, ""};
    for (Index i = 0; i < m.source()->size(); ++i)
        if (!m.column(i).empty()) {
            r.pass = false;
            r.witness = m.source()->name(i);
            break;
        }
    return r;
}

}  // namespace

ContractionReport verify_contraction(const Contraction& c) {
    ContractionReport rep;
    const auto& dN = c.big.d();
    const auto& dM = c.small.d();
    auto idN = GradedMap::identity(c.big.basis());
    auto idM = GradedMap::identity(c.small.basis());
    rep.axioms.push_back(first_nonzero(kPiNablaId, compose(c.pi, c.nabla) - idM));
    rep.axioms.push_back(
        first_nonzero(kHomotopy, compose(dN, c.h) + compose(c.h, dN) - (idN - compose(c.nabla, c.pi))));
    rep.axioms.push_back(first_nonzero(kPiH, compose(c.pi, c.h)));
    rep.axioms.push_back(first_nonzero(kHNabla, compose(c.h, c.nabla)));
    rep.axioms.push_back(first_nonzero(kHH, compose(c.h, c.h)));
    rep.axioms.push_back(first_nonzero(kPiChain, compose(dM, c.pi) - compose(c.pi, dN)));
    rep.axioms.push_back(first_nonzero(kNablaChain, compose(dN, c.nabla) - compose(c.nabla, dM)));
    return rep;
}

Contraction trivial_contraction(const ChainComplex& c) {
    auto id = GradedMap::identity(c.basis());
    return Contraction{c, c, id, id, GradedMap(c.basis(), c.basis(), 1)};
}

Contraction homology_contraction(const ChainComplex& c) {
    const auto& B = c.basis();
    const auto& d = c.d();
    const Field f = B->field();
    struct Block {
        std::vector<Index> src;
        std::vector<Index> bsrc;  // e_{bsrc[i]} maps onto the i-th boundary vector
        std::size_t nb = 0;
        std::vector<SparseVec> reps;
        DenseMatrix coords;  // inverse of [boundaries | reps | complement]
    };
    std::vector<int> degs = B->degrees();
    std::vector<Block> blocks(degs.size());
    std::vector<BasisElement> hel;

    for (std::size_t bi = 0; bi < degs.size(); ++bi) {
        const int g = degs[bi];
        Block& blk = blocks[bi];
        blk.src = B->in_degree(g);
        std::unordered_map<Index, std::size_t> pos;
        for (std::size_t i = 0; i < blk.src.size(); ++i) pos[blk.src[i]] = i;
        const std::size_t n = blk.src.size();

        RowReduction out = row_reduce(d, g);       // kernel and pivots of d_g
        RowReduction in = row_reduce(d, g + 1);    // boundaries landing in degree g
        std::vector<std::vector<Scalar>> cols;
        auto dense = [&](const SparseVec& v) {
            std::vector<Scalar> x(n);
            for (const auto& [i, cf] : v) x[pos.at(i)] = cf;
            return x;
        };
        for (std::size_t i = 0; i < in.image.size(); ++i) {
            cols.push_back(dense(in.image[i]));
            blk.bsrc.push_back(in.pivot_columns[i]);
        }
        blk.nb = cols.size();
        // extend the boundaries by echelon kernel vectors
        for (const auto& kv : out.kernel) {
            DenseMatrix t(n, cols.size() + 1);
            for (std::size_t j = 0; j < cols.size(); ++j)
                for (std::size_t i = 0; i < n; ++i) t(i, j) = cols[j][i];
            auto x = dense(kv);
            for (std::size_t i = 0; i < n; ++i) t(i, cols.size()) = x[i];
            if (rank(t) == cols.size() + 1) {
                cols.push_back(x);
                blk.reps.push_back(kv);
            }
        }
        for (Index p : out.pivot_columns) {
            std::vector<Scalar> e(n);
            e[pos.at(p)] = Scalar(1);
            cols.push_back(e);
        }
        if (cols.size() != n) throw AxiomError("homology splitting failed in degree " + std::to_string(g));
        DenseMatrix P(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) P(i, j) = cols[j][i];
        blk.coords = n ? inverse(P) : DenseMatrix();
        for (std::size_t k = 0; k < blk.reps.size(); ++k)
            hel.push_back({"H(" + std::to_string(g) + ";" + std::to_string(k) + ")", g});
    }

    auto H = make_basis(hel, f);
    Contraction res{c, ChainComplex::zero_differential(H), GradedMap(B, H, 0), GradedMap(H, B, 0),
                    GradedMap(B, B, 1)};
    Index hstart = 0;
    for (auto& blk : blocks) {
        const std::size_t n = blk.src.size(), nb = blk.nb, nr = blk.reps.size();
        for (std::size_t r = 0; r < nr; ++r) res.nabla.set_column(hstart + static_cast<Index>(r), blk.reps[r]);
        for (std::size_t j = 0; j < n; ++j) {
            CombBuilder<Index> pv, hv;
            for (std::size_t r = 0; r < nr; ++r) pv.add(hstart + static_cast<Index>(r), blk.coords(nb + r, j));
            for (std::size_t i = 0; i < nb; ++i) hv.add(blk.bsrc[i], blk.coords(i, j));
            res.pi.set_column(blk.src[j], pv.build());
            res.h.set_column(blk.src[j], hv.build());
        }
        hstart += static_cast<Index>(nr);
    }
    return res;
}

ChainComplex suspend(const ChainComplex& c, int k) {
    const std::string prefix = k == 1 ? "s" : k == -1 ? "s^-1" : "s^" + std::to_string(k);
    auto sb = shifted_basis(c.basis(), k, prefix);
    GradedMap d(sb, sb, -1);
    const Scalar sign = koszul(k);
    for (Index i = 0; i < sb->size(); ++i) d.set_column(i, c.d().column(i).scaled(sign));
    return ChainComplex(sb, d);
}

Contraction suspend(const Contraction& c, int k) {
    ChainComplex big = suspend(c.big, k), small = suspend(c.small, k);
    auto copy = [](const GradedMap& m, const BasisPtr& s, const BasisPtr& t, const Scalar& sign) {
        GradedMap r(s, t, m.degree());
        for (Index i = 0; i < s->size(); ++i) r.set_column(i, m.column(i).scaled(sign));
        return r;
    };
    const auto& N = big.basis();
    const auto& M = small.basis();
    return Contraction{big, small, copy(c.pi, N, M, Scalar(1)), copy(c.nabla, M, N, Scalar(1)),
                       copy(c.h, N, N, koszul(k))};
}

namespace {

// Basis of the column space of m restricted to degree g; each vector is
// row-reduced so its pivot entry is 1 and other vectors vanish there.
struct SpanBasis {
    std::vector<SparseVec> vecs;
    std::vector<Index> pivots;
    SparseVec coords(const SparseVec& v) const {
        CombBuilder<Index> b;
        for (std::size_t k = 0; k < pivots.size(); ++k) b.add(static_cast<Index>(k), v.coeff(pivots[k]));
        return b.build();
    }
};

SpanBasis column_space(const GradedMap& m, int g) {
    SpanBasis sb;
    const auto& rows = m.target()->in_degree(g);
    const auto& cols = m.source()->in_degree(g - m.degree());
    if (rows.empty() || cols.empty()) return sb;
    DenseMatrix t(cols.size(), rows.size());
    std::unordered_map<Index, std::size_t> rpos;
    for (std::size_t i = 0; i < rows.size(); ++i) rpos[rows[i]] = i;
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [r, c] : m.column(cols[j])) t(j, rpos.at(r)) = c;
    auto piv = rref(t);
    for (std::size_t k = 0; k < piv.size(); ++k) {
        CombBuilder<Index> b;
        for (std::size_t i = 0; i < rows.size(); ++i) b.add(rows[i], t(k, i));
        sb.vecs.push_back(b.build());
        sb.pivots.push_back(rows[piv[k]]);
    }
    return sb;
}

// Subcomplex spanned by per-degree span bases; names reuse the original
// basis name when a vector is a unit vector.
struct SubComplex {
    BasisPtr basis;
    std::vector<SparseVec> vecs;  // ambient coordinates
    std::vector<const SpanBasis*> owner;
    std::map<int, SpanBasis> spans;
    std::map<int, Index> offset;
};

SubComplex sub_complex(const GradedMap& proj, const std::string& tag) {
    SubComplex sc;
    const auto& amb = proj.target();
    std::vector<BasisElement> el;
    for (int g : amb->degrees()) {
        sc.spans[g] = column_space(proj, g);
        sc.offset[g] = static_cast<Index>(el.size());
        std::size_t k = 0;
        for (const auto& v : sc.spans[g].vecs) {
            std::string name = tag + "(" + std::to_string(g) + ";" + std::to_string(k++) + ")";
            if (v.size() == 1 && v.terms()[0].second.is_one()) name = amb->name(v.terms()[0].first);
            el.push_back({name, g});
            sc.vecs.push_back(v);
        }
    }
    sc.basis = make_basis(el, amb->field());
    return sc;
}

SparseVec to_sub(const SubComplex& sc, const BasisPtr& amb, const SparseVec& v) {
    if (v.empty()) return v;
    const int g = amb->degree(v.terms()[0].first);
    auto it = sc.spans.find(g);
    if (it == sc.spans.end()) return SparseVec();
    CombBuilder<Index> b;
    for (const auto& [k, c] : it->second.coords(v)) b.add(sc.offset.at(g) + k, c);
    return b.build();
}

}  // namespace

NormalizedSystem normalize_weak_system(const WeakSystem& w) {
    const auto& N = w.small.basis();
    const auto& M = w.big.basis();
    auto P = compose(w.pi, w.nabla);
    if (!(compose(P, P) == P)) throw AxiomError("pi∘nabla is not idempotent: input is not a weak system");
    {
        auto rep = verify_contraction(w);
        for (const char* ax : {kHomotopy, kPiH, kHNabla, kHH, kPiChain, kNablaChain})
            if (!rep[ax].pass) throw AxiomError(std::string("weak system violates ") + ax + " at " + rep[ax].witness);
    }
    auto Q = GradedMap::identity(N) - P;
    SubComplex n1 = sub_complex(P, "N1"), n2 = sub_complex(Q, "N2");

    auto restrict_d = [&](const SubComplex& sc) {
        GradedMap d(sc.basis, sc.basis, -1);
        for (Index i = 0; i < sc.vecs.size(); ++i) d.set_column(i, to_sub(sc, N, w.small.d().apply(sc.vecs[i])));
        return ChainComplex(sc.basis, d);
    };
    NormalizedSystem out;
    ChainComplex small1 = restrict_d(n1);
    out.complement = restrict_d(n2);

    GradedMap pi1(M, n1.basis, 0), nabla1(n1.basis, M, 0);
    for (Index x = 0; x < M->size(); ++x) pi1.set_column(x, to_sub(n1, N, w.pi.column(x)));
    for (Index i = 0; i < n1.vecs.size(); ++i) nabla1.set_column(i, w.nabla.apply(n1.vecs[i]));
    out.contraction = Contraction{w.big, small1, pi1, nabla1, w.h};

    auto& bl = out.blocks;
    bl.small_image = n1.vecs;
    bl.small_complement = n2.vecs;
    for (const auto& v : n1.vecs) bl.big_image.push_back(w.nabla.apply(v));
    for (int g : M->degrees())
        for (auto& k : row_reduce(w.pi, g).kernel) bl.big_kernel.push_back(std::move(k));

    std::vector<SparseVec> all = bl.big_image;
    all.insert(all.end(), bl.big_kernel.begin(), bl.big_kernel.end());
    bool ds = all.size() == M->size();
    if (ds && !all.empty()) {
        DenseMatrix t(all.size(), M->size());
        for (std::size_t j = 0; j < all.size(); ++j)
            for (const auto& [i, c] : all[j]) t(j, i) = c;
        ds = rank(t) == M->size();
    }
    bl.direct_sum = ds;
    bl.h_vanishes_on_image = true;
    for (const auto& v : bl.big_image) bl.h_vanishes_on_image &= w.h.apply(v).empty();
    bl.h_preserves_kernel = true;
    for (const auto& v : bl.big_kernel) bl.h_preserves_kernel &= w.pi.apply(w.h.apply(v)).empty();
    bl.nabla_complement_in_kernel = true;
    for (const auto& v : bl.small_complement) bl.nabla_complement_in_kernel &= w.pi.apply(w.nabla.apply(v)).empty();
    bl.pi_iso_on_image = true;
    for (std::size_t i = 0; i < bl.big_image.size(); ++i)
        bl.pi_iso_on_image &= pi1.apply(bl.big_image[i]) == SparseVec(static_cast<Index>(i), Scalar(1));
    return out;
}

HodgeParts hodge_split(const Contraction& c, const SparseVec& x) {
    const auto& d = c.big.d();
    return HodgeParts{d.apply(c.h.apply(x)), c.nabla.apply(c.pi.apply(x)), c.h.apply(d.apply(x))};
}

}  // namespace homotransfer
