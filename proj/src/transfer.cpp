#include "homotransfer/transfer.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "homotransfer/errors.hpp"

namespace homotransfer {

std::string to_string(Method m) {
    switch (m) {
        case Method::hpt: return "hpt";
        case Method::recursive: return "recursive";
        case Method::kadeishvili: return "kadeishvili";
        case Method::trees: return "trees";
    }
    return "?";
}

Method parse_method(const std::string& s) {
    if (s == "hpt") return Method::hpt;
    if (s == "recursive") return Method::recursive;
    if (s == "kadeishvili") return Method::kadeishvili;
    if (s == "trees") return Method::trees;
    throw ParseError("unknown transfer method '" + s + "'");
}

OpTable bar_dictionary(const OpTable& ops, const GradedBasis& carrier) {
    OpTable out;
    for (const auto& [w, v] : ops) out.emplace(w, v.scaled(-koszul(suspension_exponent(w, carrier))));
    return out;
}

OpTable morphism_dictionary(const OpTable& comps, const GradedBasis& carrier) {
    OpTable out;
    for (const auto& [w, v] : comps) out.emplace(w, v.scaled(koszul(suspension_exponent(w, carrier))));
    return out;
}

namespace {

void check_inputs(const BasisPtr& carrier, const GradedMap& d, const Contraction& c, int n) {
    if (!c.big.basis()->same_as(*carrier)) throw StructuralError("contraction does not start at the algebra's carrier");
    if (!(c.big.d() == d)) throw StructuralError("contraction differential differs from the algebra differential");
    if (n < 1) throw ResourceError("maximal arity must be at least 1");
}

SparseVec proj1(const WordComb& v) {
    CombBuilder<Index> b;
    for (const auto& [w, c] : v)
        if (w.size() == 1) b.add(w[0], c);
    return b.build();
}

// Concatenation of the given letter combinations, no signs (degree 0 pieces).
WordComb concat(const std::vector<SparseVec>& parts) {
    std::vector<std::pair<Word, Scalar>> cur{{Word(), Scalar(1)}};
    for (const auto& p : parts) {
        std::vector<std::pair<Word, Scalar>> next;
        next.reserve(cur.size() * p.size());
        for (const auto& [u, c] : cur)
            for (const auto& [y, e] : p) {
                Word v = u;
                v.push_back(y);
                next.emplace_back(v, c * e);
            }
        cur = std::move(next);
        if (cur.empty()) break;
    }
    CombBuilder<Word> b;
    for (const auto& [w, c] : cur) b.add(w, c);
    return b.build();
}

AInfinityStructure assemble(const Contraction& c, int n, OpTable m_ops) {
    for (Index x = 0; x < c.small.basis()->size(); ++x)
        if (!c.small.d().column(x).empty()) m_ops[Word{x}] = c.small.d().column(x);
    return AInfinityStructure::make(c.small.basis(), n, std::move(m_ops));
}

AInfinityMorphism make_morphism(const Contraction& c, int n, OpTable f) {
    OpTable clean;
    for (auto& [w, v] : f)
        if (!v.empty()) clean.emplace(w, std::move(v));
    return AInfinityMorphism{c.small.basis(), c.big.basis(), n, std::move(clean)};
}

}  // namespace

TransferResult transfer_hpt(const AInfinityStructure& a, const Contraction& c, const TransferOptions& o) {
    const int N = o.max_arity;
    check_inputs(a.carrier, a.m1(), c, N);
    const Contraction sc = suspend(c, 1);
    const GradedMap np = compose(sc.nabla, sc.pi);
    const Coderivation del = coderivation_from_components(a.truncated(N)).restricted(2, N);
    auto Th = [&](const WordComb& v) {
        return apply_linear(v, [&](const Word& w) { return tensor_trick_homotopy(sc.h, np, w); });
    };
    auto step1 = [&](const WordComb& v) { return Th(del.apply(v)).scaled(Scalar(-1)); };
    auto step2 = [&](const WordComb& v) { return del.apply(Th(v)).scaled(Scalar(-1)); };
    const std::size_t k = c.small.basis()->size();

    OpTable b, F;
    for (int n = 1; n <= N; ++n) {
        auto words = words_of_length(k, static_cast<std::size_t>(n));
        std::vector<SparseVec> bv(words.size()), fv(words.size());
        parallel_for(words.size(), o.exec, [&](std::size_t i) {
            const Word& w = words[i];
            const WordComb start = tensor_power(sc.nabla, w);
            auto [nd, t1] = neumann_series(start, step1, n + 1, "∇_∂");
            const WordComb D1 = tensor_power(sc.pi, del.apply(nd));
            auto [s2, t2] = neumann_series(del.apply(start), step2, n + 1, "D");
            if (!(D1 == tensor_power(sc.pi, s2)))
                throw MethodDivergence("the two forms of the transferred differential differ on " +
                                       word_name(w, *c.small.basis()));
            bv[i] = proj1(D1);
            fv[i] = proj1(nd);
        });
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (!bv[i].empty()) b.emplace(words[i], std::move(bv[i]));
            if (!fv[i].empty()) F.emplace(words[i], std::move(fv[i]));
        }
    }
    const auto& M = *c.small.basis();
    TransferResult r{Method::hpt, assemble(c, N, bar_dictionary(b, M)), std::nullopt, F};
    r.morphism = make_morphism(c, N, morphism_dictionary(F, M));
    return r;
}

TransferResult transfer_recursive(const DGAlgebra& a, const Contraction& c, const TransferOptions& o) {
    const int N = o.max_arity;
    check_inputs(a.basis, a.d, c, N);
    const auto& M = *c.small.basis();
    const std::size_t k = M.size();
    WordSpace ws(c.small.basis(), N);
    std::vector<SparseVec> tau(ws.words().size());
    OpTable b, F;
    for (int n = 1; n <= N; ++n) {
        auto words = words_of_length(k, static_cast<std::size_t>(n));
        std::vector<SparseVec> bv(words.size());
        parallel_for(words.size(), o.exec, [&](std::size_t i) {
            const Word& w = words[i];
            if (n == 1) {
                tau[ws.index_of(w)] = c.nabla.column(w[0]);
                return;
            }
            CombBuilder<Index> cup;
            int sdeg = 0;
            for (int l = 1; l < n; ++l) {
                sdeg += M.degree(w[l - 1]) + 1;
                const auto& u = tau[ws.index_of(w.slice(0, l))];
                const auto& v = tau[ws.index_of(w.slice(l, n))];
                if (u.empty() || v.empty()) continue;
                cup.add(a.mul(u, v), koszul(sdeg));
            }
            const SparseVec s = cup.build();
            tau[ws.index_of(w)] = c.h.apply(s);
            bv[i] = c.pi.apply(s);
        });
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (!bv[i].empty()) b.emplace(words[i], std::move(bv[i]));
            const auto& t = tau[ws.index_of(words[i])];
            if (!t.empty()) F.emplace(words[i], t);
        }
    }
    TransferResult r{Method::recursive, assemble(c, N, bar_dictionary(b, M)), std::nullopt, F};
    r.morphism = make_morphism(c, N, morphism_dictionary(F, M));
    return r;
}

long long kadeishvili_eps1(int n, int s, long long pre) { return s + static_cast<long long>(n - s + 1) * pre; }

long long kadeishvili_eps2(int n, int k, int j, long long pre) {
    return k + static_cast<long long>(j) * (n - k - j + pre);
}

TransferResult transfer_kadeishvili(const DGAlgebra& a, const Contraction& c, const TransferOptions& o) {
    const int N = o.max_arity;
    check_inputs(a.basis, a.d, c, N);
    if (!c.small.d().is_zero())
        throw AxiomError("Kadeishvili's construction needs a contraction onto homology (zero small differential)");
    const auto& M = *c.small.basis();
    const std::size_t k = M.size();
    WordSpace ws(c.small.basis(), N);
    std::vector<SparseVec> f(ws.words().size()), m(ws.words().size());
    auto F = [&](const Word& w) -> const SparseVec& { return f[ws.index_of(w)]; };
    for (int n = 1; n <= N; ++n) {
        auto words = words_of_length(k, static_cast<std::size_t>(n));
        parallel_for(words.size(), o.exec, [&](std::size_t i) {
            const Word& w = words[i];
            const Index at = ws.index_of(w);
            if (n == 1) {
                f[at] = c.nabla.column(w[0]);
                return;
            }
            CombBuilder<Index> psi;
            long long pre = 0;  // |a_1| + ... + |a_s|
            for (int s = 1; s < n; ++s) {
                pre += M.degree(w[s - 1]);
                const long long e1 = kadeishvili_eps1(n, s, pre);
                const auto& u = F(w.slice(0, s));
                const auto& v = F(w.slice(s, n));
                if (!u.empty() && !v.empty()) psi.add(a.mul(u, v), koszul(e1));
            }
            for (int j = 2; j < n; ++j) {
                long long pk = 0;
                for (int kk = 0; kk + j <= n; ++kk) {
                    const long long e2 = kadeishvili_eps2(n, kk, j, pk);
                    for (const auto& [y, cf] : m[ws.index_of(w.slice(kk, kk + j))])
                        psi.add(F(w.splice(kk, j, Word{y})), koszul(e2) * cf);
                    if (kk < n) pk += M.degree(w[kk]);
                }
            }
            const SparseVec p = psi.build();
            if (!c.big.d().apply(p).empty())
                throw MethodDivergence("Ψ is not a cycle on " + word_name(w, M) + "; sign bookkeeping is inconsistent");
            m[at] = c.pi.apply(p).scaled(Scalar(-1));
            f[at] = c.h.apply(p);
        });
    }
    OpTable ops, fc;
    for (Index i = 0; i < ws.words().size(); ++i) {
        const Word& w = ws.words()[i];
        if (!m[i].empty()) ops.emplace(w, m[i]);
        if (!f[i].empty()) fc.emplace(w, f[i]);
    }
    TransferResult r{Method::kadeishvili, assemble(c, N, std::move(ops)), std::nullopt,
                     morphism_dictionary(fc, M)};
    r.morphism = make_morphism(c, N, std::move(fc));
    return r;
}

// ---- planar trees

int PlanarTree::leaves() const {
    if (children.empty()) return 1;
    int n = 0;
    for (const auto& t : children) n += t.leaves();
    return n;
}

std::string PlanarTree::to_string() const {
    if (children.empty()) return "L";
    std::string s = "(";
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) s += " ";
        s += children[i].to_string();
    }
    return s + ")";
}

namespace {

// Interned planar trees; child id -1 is a leaf.
class TreeCatalog {
public:
    TreeCatalog(std::vector<int> arities, std::size_t budget) : arities_(std::move(arities)), budget_(budget) {
        std::sort(arities_.begin(), arities_.end());
    }

    struct Node {
        std::vector<int> kids;
        int leaves;
    };

    const std::vector<int>& trees(int n) {
        auto it = by_leaves_.find(n);
        if (it != by_leaves_.end()) return it->second;
        std::vector<int> out;
        for (int j : arities_) {
            if (j > n) break;
            std::vector<int> seq;
            forests(n, j, seq, out);
        }
        return by_leaves_[n] = std::move(out);
    }

    const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }

    PlanarTree shape(int id) const {
        PlanarTree t;
        if (id < 0) return t;
        for (int k : nodes_[static_cast<std::size_t>(id)].kids) t.children.push_back(shape(k));
        return t;
    }

private:
    void forests(int n, int j, std::vector<int>& seq, std::vector<int>& out) {
        if (j == 0) {
            if (n != 0) return;
            if (nodes_.size() >= budget_)
                throw ResourceError("planar tree enumeration exceeds the budget of " + std::to_string(budget_));
            int total = 0;
            for (int k : seq) total += k < 0 ? 1 : nodes_[static_cast<std::size_t>(k)].leaves;
            nodes_.push_back({seq, total});
            out.push_back(static_cast<int>(nodes_.size()) - 1);
            return;
        }
        for (int first = 1; first <= n - (j - 1); ++first) {
            std::vector<int> opts = first == 1 ? std::vector<int>{-1} : trees(first);
            for (int t : opts) {
                seq.push_back(t);
                forests(n - first, j - 1, seq, out);
                seq.pop_back();
            }
        }
    }

    std::vector<int> arities_;
    std::size_t budget_;
    std::vector<Node> nodes_;
    std::map<int, std::vector<int>> by_leaves_;
};

}  // namespace

std::vector<PlanarTree> enumerate_planar_trees(int leaves, const std::vector<int>& arities, std::size_t budget) {
    for (int j : arities)
        if (j < 2) throw StructuralError("tree vertices need arity at least 2");
    TreeCatalog cat(arities, budget);
    std::vector<PlanarTree> out;
    for (int id : cat.trees(leaves)) out.push_back(cat.shape(id));
    return out;
}

TransferResult transfer_trees(const AInfinityStructure& a, const Contraction& c, const TransferOptions& o) {
    const int N = o.max_arity;
    check_inputs(a.carrier, a.m1(), c, N);
    const Coderivation b = coderivation_from_components(a.truncated(N)).restricted(2, N);
    TreeCatalog cat(b.arities(), o.tree_budget);
    for (int n = 2; n <= N; ++n) (void)cat.trees(n);
    const auto& M = *c.small.basis();
    const std::size_t k = M.size();

    // value of the tree below its root, on the slice of w starting at `start`
    struct Eval {
        const TreeCatalog& cat;
        const Coderivation& b;
        const Contraction& c;
        const Word& w;
        std::unordered_map<long long, SparseVec> memo;
        const SparseVec& operator()(int id, int start) {
            const long long key = static_cast<long long>(id) * 64 + start;
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
            std::vector<SparseVec> parts;
            int pos = start;
            for (int kid : cat.node(id).kids) {
                if (kid < 0) {
                    parts.push_back(c.nabla.column(w[static_cast<std::size_t>(pos)]));
                    ++pos;
                } else {
                    parts.push_back(c.h.apply((*this)(kid, pos)));
                    pos += cat.node(kid).leaves;
                }
            }
            CombBuilder<Index> out;
            for (const auto& [u, cf] : concat(parts)) out.add(b.component(u), cf);
            return memo[key] = out.build();
        }
    };

    OpTable bm, F;
    for (int n = 1; n <= N; ++n) {
        if (n == 1) {
            for (Index x = 0; x < k; ++x)
                if (!c.nabla.column(x).empty()) F.emplace(Word{x}, c.nabla.column(x));
            continue;
        }
        auto words = words_of_length(k, static_cast<std::size_t>(n));
        std::vector<SparseVec> bv(words.size()), fv(words.size());
        const auto& ids = cat.trees(n);
        parallel_for(words.size(), o.exec, [&](std::size_t i) {
            Eval ev{cat, b, c, words[i], {}};
            CombBuilder<Index> root;
            for (int id : ids) root.add(ev(id, 0));
            const SparseVec v = root.build();
            bv[i] = c.pi.apply(v);
            fv[i] = c.h.apply(v);
        });
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (!bv[i].empty()) bm.emplace(words[i], std::move(bv[i]));
            if (!fv[i].empty()) F.emplace(words[i], std::move(fv[i]));
        }
    }
    TransferResult r{Method::trees, assemble(c, N, bar_dictionary(bm, M)), std::nullopt, F};
    r.morphism = make_morphism(c, N, morphism_dictionary(F, M));
    return r;
}

TransferResult transfer(Method m, const DGAlgebra& a, const Contraction& c, const TransferOptions& o) {
    switch (m) {
        case Method::hpt: return transfer_hpt(AInfinityStructure::from_dga(a, o.max_arity), c, o);
        case Method::recursive: return transfer_recursive(a, c, o);
        case Method::kadeishvili: return transfer_kadeishvili(a, c, o);
        case Method::trees: return transfer_trees(AInfinityStructure::from_dga(a, o.max_arity), c, o);
    }
    throw StructuralError("unknown method");
}

void require_agreement(const std::vector<TransferResult>& results) {
    if (results.empty()) return;
    const auto& ref = results.front();
    const auto& M = *ref.structure.carrier;
    for (std::size_t i = 1; i < results.size(); ++i) {
        const auto& r = results[i];
        if (auto w = first_difference(ref.structure.ops, r.structure.ops))
            throw MethodDivergence(to_string(ref.method) + " and " + to_string(r.method) +
                                   " disagree on the operation at " + word_name(*w, M));
        if (ref.morphism && r.morphism)
            if (auto w = first_difference(ref.morphism->comps, r.morphism->comps))
                throw MethodDivergence(to_string(ref.method) + " and " + to_string(r.method) +
                                       " disagree on the morphism at " + word_name(*w, M));
    }
}

std::vector<TransferResult> transfer_all(const DGAlgebra& a, const Contraction& c, const TransferOptions& o) {
    std::vector<TransferResult> out;
    out.push_back(transfer(Method::hpt, a, c, o));
    out.push_back(transfer(Method::recursive, a, c, o));
    if (c.small.d().is_zero()) out.push_back(transfer(Method::kadeishvili, a, c, o));
    out.push_back(transfer(Method::trees, a, c, o));
    require_agreement(out);
    return out;
}

PerturbResult perturbed_bar_contraction(const DGAlgebra& a, const Contraction& c, int max_arity, Exec exec) {
    check_inputs(a.basis, a.d, c, max_arity);
    const Contraction sc = suspend(c, 1);
    const Contraction lifted = lift_contraction_tensor(sc, TensorSide::coalgebra, max_arity);
    const Coderivation del = bar_perturbation(a, max_arity);
    WordSpace big(sc.big.basis(), max_arity), small(sc.small.basis(), max_arity);
    GradedMap P(lifted.big.basis(), lifted.big.basis(), -1);
    for (Index i = 0; i < big.words().size(); ++i) {
        CombBuilder<Index> col;
        for (const auto& [u, cf] : del.apply(big.words()[i])) col.add(big.index_of(u), cf);
        P.set_column(i, col.build());
    }
    Filtration f{word_length_levels(big.words()), word_length_levels(small.words())};
    return perturb(lifted, Perturbation{P, 1}, f, max_arity, exec);
}

}  // namespace homotransfer
