#include <map>
#include <sstream>

#include "homotransfer/errors.hpp"
#include "homotransfer/transfer.hpp"

namespace homotransfer {

bool IdentityReport::pass() const { return failures() == 0; }

std::size_t IdentityReport::failures() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.failures;
    return n;
}

std::string IdentityReport::first_failure() const {
    for (const auto& e : entries)
        if (e.failures) return e.first_failure;
    return "";
}

std::string IdentityReport::summary() const {
    std::ostringstream os;
    std::size_t words = 0;
    for (const auto& e : entries) words += e.words;
    os << identity << ": " << (pass() ? "pass" : "FAIL") << " (" << words << " words, " << failures()
       << " nonzero residuals";
    if (!pass()) os << ", first at " << first_failure();
    os << ")";
    return os.str();
}

namespace {

// m applied to a combination of words, by table lookup
SparseVec apply_ops(const AInfinityStructure& a, const WordComb& v) {
    CombBuilder<Index> b;
    for (const auto& [w, c] : v) b.add(a.op(w), c);
    return b.build();
}

// sum over r + s + t = n of (-1)^{r+st + s|x_1..x_r|} Id^r ⊗ m_s ⊗ Id^t, as words
WordComb inner_terms(const AInfinityStructure& a, const Word& w) {
    const int n = static_cast<int>(w.size());
    CombBuilder<Word> out;
    long long pre = 0;
    for (int r = 0; r < n; ++r) {
        for (int s = 1; r + s <= n; ++s) {
            const int t = n - r - s;
            const auto& v = a.op(w.slice(r, r + s));
            if (v.empty()) continue;
            const Scalar sg = koszul(r + static_cast<long long>(s) * t + s * pre);
            for (const auto& [y, c] : v) out.add(w.splice(r, s, Word{y}), sg * c);
        }
        pre += a.carrier->degree(w[r]);
    }
    return out.build();
}

// all ordered ways to write n as q positive parts
void compositions(int n, int q, std::vector<int> prefix, std::vector<std::vector<int>>& out) {
    if (q == 1) {
        prefix.push_back(n);
        out.push_back(std::move(prefix));
        return;
    }
    for (int first = 1; first <= n - (q - 1); ++first) {
        auto p = prefix;
        p.push_back(first);
        compositions(n - first, q - 1, std::move(p), out);
    }
}

}  // namespace

ReportBuilder::ReportBuilder(std::string name) { r_.identity = std::move(name); }

void ReportBuilder::record(int arity, int degree, bool ok, const std::string& name) {
    auto& e = slots_[{arity, degree}];
    e.arity = arity;
    e.degree = degree;
    ++e.words;
    if (!ok) {
        if (!e.failures) e.first_failure = name;
        ++e.failures;
    }
}

IdentityReport ReportBuilder::build() {
    IdentityReport r = r_;
    for (auto& [k, e] : slots_) r.entries.push_back(e);
    return r;
}

IdentityReport check_stasheff(const AInfinityStructure& a, Exec exec) {
    ReportBuilder rb("stasheff");
    const auto& M = *a.carrier;
    for (int n = 1; n <= a.max_arity; ++n) {
        auto words = words_of_length(M.size(), static_cast<std::size_t>(n));
        std::vector<char> ok(words.size());
        parallel_for(words.size(), exec,
                     [&](std::size_t i) { ok[i] = apply_ops(a, inner_terms(a, words[i])).empty(); });
        for (std::size_t i = 0; i < words.size(); ++i)
            rb.record(n, word_degree(words[i], M), ok[i], word_name(words[i], M));
    }
    return rb.build();
}

IdentityReport check_morphism(const AInfinityMorphism& f, const AInfinityStructure& src, const AInfinityStructure& tgt,
                              Exec exec) {
    ReportBuilder rb("morphism");
    const auto& M = *src.carrier;
    const auto arities = tgt.arities();
    auto comp = [&](const WordComb& v) {
        CombBuilder<Index> b;
        for (const auto& [w, c] : v) b.add(f.comp(w), c);
        return b.build();
    };
    for (int n = 1; n <= f.max_arity; ++n) {
        auto words = words_of_length(M.size(), static_cast<std::size_t>(n));
        std::vector<std::vector<int>> comps;
        for (int q : arities)
            if (q <= n) compositions(n, q, {}, comps);
        std::vector<char> ok(words.size());
        parallel_for(words.size(), exec, [&](std::size_t i) {
            const Word& w = words[i];
            CombBuilder<Index> res;
            res.add(comp(inner_terms(src, w)));
            // m_q(f_{i_1} ⊗ ... ⊗ f_{i_q}) over compositions of n
            for (const auto& parts : comps) {
                const int q = static_cast<int>(parts.size());
                long long sign = 0, pre = 0;
                std::size_t pos = 0;
                std::vector<std::pair<Word, Scalar>> cur{{Word(), Scalar(1)}};
                for (int l = 0; l < q && !cur.empty(); ++l) {
                    const int il = parts[static_cast<std::size_t>(l)];
                    sign += static_cast<long long>(q - 1 - l) * (il - 1) + static_cast<long long>(il - 1) * pre;
                    const Word blk = w.slice(pos, pos + static_cast<std::size_t>(il));
                    pre += word_degree(blk, M);
                    pos += static_cast<std::size_t>(il);
                    std::vector<std::pair<Word, Scalar>> next;
                    for (const auto& [u, c] : cur)
                        for (const auto& [y, e] : f.comp(blk)) {
                            Word x = u;
                            x.push_back(y);
                            next.emplace_back(x, c * e);
                        }
                    cur = std::move(next);
                }
                const Scalar sg = -koszul(sign);
                for (const auto& [u, c] : cur) res.add(tgt.op(u), sg * c);
            }
            ok[i] = res.build().empty();
        });
        for (std::size_t i = 0; i < words.size(); ++i)
            rb.record(n, word_degree(words[i], M), ok[i], word_name(words[i], M));
    }
    return rb.build();
}

IdentityReport check_twisting_cochain(const OpTable& tau, const AInfinityStructure& small, const DGAlgebra& target) {
    ReportBuilder rb("twisting_cochain");
    const auto& M = *small.carrier;
    const Coderivation D = coderivation_from_components(small);
    auto t = [&](const Word& w) -> SparseVec {
        auto it = tau.find(w);
        return it == tau.end() ? SparseVec() : it->second;
    };
    for (int n = 1; n <= small.max_arity; ++n)
        for (const auto& w : words_of_length(M.size(), static_cast<std::size_t>(n))) {
            CombBuilder<Index> res;
            res.add(target.d.apply(t(w)));
            for (const auto& [u, c] : D.apply(w)) res.add(t(u), c);
            int sdeg = 0;
            for (int l = 1; l < n; ++l) {
                sdeg += M.degree(w[l - 1]) + 1;
                res.add(target.mul(t(w.slice(0, l)), t(w.slice(l, n))), -koszul(sdeg));
            }
            rb.record(n, word_degree(w, M), res.build().empty(), word_name(w, M));
        }
    return rb.build();
}

IdentityReport check_twisting_cochain(const std::vector<WordComb>& tau, const AInfinityCoalgebra& small,
                                      const DGCoalgebra& source) {
    ReportBuilder rb("twisting_cochain");
    const int N = small.max_arity;
    const auto& Cb = *source.basis;
    const BasisPtr sM = shifted_basis(small.carrier, -1, "s^-1");
    Derivation dO(sM, -1, N);
    for (Index m = 0; m < small.carrier->size(); ++m) dO.set(m, small.cobar[m]);
    for (Index x = 0; x < Cb.size(); ++x) {
        CombBuilder<Word> res;
        res.add(dO.apply(tau[x]));
        for (const auto& [y, c] : source.d.column(x)) res.add(tau[y], c);
        for (const auto& [w, c] : source.delta[x]) {
            const Scalar s = -koszul(Cb.degree(w[0])) * c;
            for (const auto& [u, e] : tau[w[0]])
                for (const auto& [v, g] : tau[w[1]])
                    if (static_cast<int>(u.size() + v.size()) <= N) res.add(u + v, s * e * g);
        }
        rb.record(1, Cb.degree(x), res.build().empty(), Cb.name(x));
    }
    return rb.build();
}

IdentityReport check_cinfinity(const AInfinityStructure& a) {
    ReportBuilder rb("cinfinity");
    const Coderivation D = coderivation_from_components(a);
    const auto& L = *D.letters();
    const int N = a.max_arity;
    for (int n = 2; n <= N; ++n)
        for (int p = 1; p < n; ++p)
            for (const auto& u : words_of_length(L.size(), static_cast<std::size_t>(p)))
                for (const auto& v : words_of_length(L.size(), static_cast<std::size_t>(n - p))) {
                    CombBuilder<Word> res;
                    res.add(D.apply(shuffle_product(u, v, L)));
                    for (const auto& [x, c] : D.apply(u)) res.add(shuffle_product(x, v, L), -c);
                    const Scalar s = -koszul(word_degree(u, L));
                    for (const auto& [y, c] : D.apply(v)) res.add(shuffle_product(u, y, L), s * c);
                    rb.record(n, word_degree(u, L) + word_degree(v, L), res.build().empty(),
                              word_name(u, L) + "⧢" + word_name(v, L));
                }
    return rb.build();
}

}  // namespace homotransfer
