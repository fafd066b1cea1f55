// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "homotransfer/cli.hpp"
#include "homotransfer/errors.hpp"
#include "homotransfer/io.hpp"
#include "homotransfer/linfty.hpp"
#include "homotransfer/transfer.hpp"
#include "support/corpus.hpp"

using namespace homotransfer;
using namespace homotransfer::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// first failure wins the detail
struct Tally {
    Outcome o;
    void expect(bool ok, const std::string& what) {
        if (!ok && o.pass) {
            o.pass = false;
            o.detail = what;
        }
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string fixture(const char* name) { return std::string(HT_SOURCE_DIR) + "/fixtures/" + name + ".json"; }

bool same_table(const OpTable& a, const OpTable& b) { return !first_difference(a, b); }

// ---- 1 ------------------------------------------------------------------

Outcome stasheff_corpus() {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    int count = 0;
    for (auto f : {Field::prime(5), Field::rationals()}) {
        for (const auto& A : dga_corpus(f, 100, f.is_rational() ? 101 : 505, {})) {
            t.expect(A.basis->size() <= 8, "basis larger than 8");
            for (Index i = 0; i < A.basis->size(); ++i)
                t.expect(A.basis->degree(i) >= 0 && A.basis->degree(i) <= 6, "degree outside 0..6");
            TransferOptions o;
            o.max_arity = 6;
            auto r = transfer_hpt(AInfinityStructure::from_dga(A, 6), homology_contraction(A.complex()), o);
            auto rep = check_stasheff(r.structure);
            t.expect(rep.pass(), "stasheff residual at " + rep.first_failure());
            ++count;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    t.expect(count >= 200, "corpus too small");
    t.expect(secs < 300.0, "over five minutes");
    if (t.o.pass) t.o.detail = std::to_string(count) + " algebras, arity 6, " + std::to_string(secs) + " s";
    return t.o;
}

// ---- 2 ------------------------------------------------------------------

Outcome four_methods() {
    Tally t;
    int runs = 0, with_kad = 0;
    for (auto f : {Field::rationals(), Field::prime(5)})
        for (const auto& A : dga_corpus(f, 40, f.is_rational() ? 3 : 4, {})) {
            TransferOptions o;
            o.max_arity = 5;
            const auto c = homology_contraction(A.complex());
            try {
                auto rs = transfer_all(A, c, o);
                with_kad += rs.size() == 4;
                // spelled out, on top of the check inside transfer_all
                for (const auto& r : rs) {
                    t.expect(same_table(r.structure.ops, rs[0].structure.ops), "m_n differ for " + to_string(r.method));
                    t.expect(r.morphism && same_table(r.morphism->comps, rs[0].morphism->comps),
                             "f_n differ for " + to_string(r.method));
                }
            } catch (const MethodDivergence& e) {
                t.expect(false, e.what());
            }
            ++runs;
        }
    if (t.o.pass) t.o.detail = std::to_string(runs) + " algebras, n <= 5, four methods on " + std::to_string(with_kad);
    return t.o;
}

// ---- 3 ------------------------------------------------------------------

Outcome trivial_contraction_case() {
    Tally t;
    MonomialOptions mo;
    mo.zero_d_rate = 1.0;
    auto corpus = dga_corpus(Field::rationals(), 20, 9, mo);
    corpus.push_back(truncated_polynomial(Field::prime(5), 2, 5));
    for (const auto& A : corpus) {
        TransferOptions o;
        o.max_arity = 5;
        for (const auto& r : transfer_all(A, trivial_contraction(A.complex()), o)) {
            for (const auto& [w, v] : r.structure.ops) {
                t.expect(w.size() == 2, "m_n nonzero for n >= 3");
                t.expect(v == A.mul(w[0], w[1]), "m_2 is not the product");
            }
            for (const auto& [w, v] : r.tau) t.expect(w.size() == 1 || v.empty(), "tau has a component above arity 1");
        }
    }
    if (t.o.pass) t.o.detail = std::to_string(corpus.size()) + " algebras, all methods";
    return t.o;
}

// ---- 4 ------------------------------------------------------------------

Outcome massey() {
    Tally t;
    auto A = massey_dga();
    auto c = homology_contraction(A.complex());
    const auto& B = *A.basis;
    auto cls = [&](const char* n) { return c.pi.apply(SparseVec(B.at(n), Scalar(1))); };
    const Index a = cls("a").begin()->first, b = cls("b").begin()->first, cc = cls("c").begin()->first;
    TransferOptions o;
    o.max_arity = 3;
    const SparseVec m3 = transfer(Method::hpt, A, c, o).structure.op(Word{a, b, cc});

    // brute force: π(μ(hμ(∇a,∇b),∇c)) and π(μ(∇a,hμ(∇b,∇c))) by direct composition
    const SparseVec na = c.nabla.column(a), nb = c.nabla.column(b), nc = c.nabla.column(cc);
    const SparseVec t1 = c.pi.apply(A.mul(c.h.apply(A.mul(na, nb)), nc));
    const SparseVec t2 = c.pi.apply(A.mul(na, c.h.apply(A.mul(nb, nc))));
    const SparseVec z = SparseVec(B.at("xc"), Scalar(1)) + SparseVec(B.at("ay"), Scalar(1));
    const SparseVec zc = c.pi.apply(z);
    t.expect(A.d.apply(z).empty(), "xc + ay is not a cycle");
    t.expect(!zc.empty(), "xc + ay is a boundary");
    t.expect(!m3.empty(), "m_3 vanishes");
    t.expect(m3 == zc || m3 == zc.scaled(Scalar(-1)), "m_3 outside the class of xc + ay");
    bool combo = false;
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) combo |= m3 == t1.scaled(Scalar(s1)) + t2.scaled(Scalar(s2));
    t.expect(combo, "m_3 is not a signed sum of the two compositions");
    if (t.o.pass) t.o.detail = "m3([a],[b],[c]) = " + m3.begin()->second.to_string() + " [xc + ay]";
    return t.o;
}

// ---- 5 ------------------------------------------------------------------

struct Series {
    GradedMap D, D_alt, nabla, pi, h;
};

// the five series summed with plain map arithmetic
Series series(const Contraction& c, const GradedMap& del) {
    const GradedMap hd = compose(c.h, del).scaled(Scalar(-1)), dh = compose(del, c.h).scaled(Scalar(-1));
    Series s{GradedMap(c.small.basis(), c.small.basis(), -1), GradedMap(c.small.basis(), c.small.basis(), -1),
             c.nabla, c.pi, c.h};
    GradedMap x = GradedMap::identity(c.big.basis()), y = x;
    for (int n = 0; !(x.is_zero() && y.is_zero()); ++n) {
        if (n > 64) throw SeriesDivergence("oracle did not terminate");
        s.D = s.D + compose(c.pi, compose(del, compose(x, c.nabla)));
        s.D_alt = s.D_alt + compose(c.pi, compose(y, compose(del, c.nabla)));
        if (n > 0) {
            s.nabla = s.nabla + compose(x, c.nabla);
            s.pi = s.pi + compose(c.pi, y);
            s.h = s.h + compose(x, c.h);
        }
        x = compose(hd, x);
        y = compose(dh, y);
    }
    return s;
}

Outcome perturbation_lemma() {
    Tally t;
    MonomialOptions mo;
    mo.max_dim = 5;
    auto corpus = dga_corpus(Field::rationals(), 12, 55, mo);
    corpus.push_back(massey_dga());
    const int N = 3;
    for (const auto& A : corpus) {
        const auto c = homology_contraction(A.complex());
        auto r = perturbed_bar_contraction(A, c, N);
        auto rep = verify_contraction(r.perturbed);
        t.expect(rep.all_pass(), "axioms: " + rep.summary());
        const auto& dd = r.perturbed.big.d();
        const auto& DD = r.perturbed.small.d();
        t.expect(compose(dd, dd).is_zero(), "(d + del)^2 != 0");
        t.expect(compose(DD, DD).is_zero(), "(d + D)^2 != 0");
        const Contraction lifted = lift_contraction_tensor(suspend(c, 1), TensorSide::coalgebra, N);
        const GradedMap del = dd - lifted.big.d();
        const Series s = series(lifted, del);
        t.expect(s.D == s.D_alt, "the two forms of D differ");
        t.expect(r.D == s.D, "D differs from the series");
        t.expect(r.perturbed.nabla == s.nabla && r.perturbed.pi == s.pi && r.perturbed.h == s.h,
                 "perturbed maps differ from the series");
        auto serial = perturbed_bar_contraction(A, c, N, Exec::serial);
        t.expect(serial.D == r.D && serial.perturbed.h == r.perturbed.h, "serial and parallel differ");
    }
    if (t.o.pass) t.o.detail = std::to_string(corpus.size()) + " bar contractions, words <= " + std::to_string(N);
    return t.o;
}

// ---- 6 ------------------------------------------------------------------

Outcome linfty() {
    Tally t;
    Rng rng(606);
    int done = 0, jac = 0, non = 0;
    while (done < 50) {
        auto g = random_dgla(rng, Field::rationals(), 6);
        if (!g) continue;
        ++done;
        // commutator algebras satisfy Jacobi
        ++jac;
        t.expect(!g->jacobi_failure() && cce_coalgebra(*g, 3).square_zero(), "Jacobi algebra with ∂∂ != 0");
        TransferOptions o;
        o.max_arity = 4;
        auto r = transfer_linf(*g, homology_contraction(g->complex()), o);
        t.expect(!linf_square_zero_failure(r.structure), "(d + D)^2 != 0");
        auto m = check_master(r.tau, r.structure, *g);
        t.expect(m.pass(), "master residual at " + m.first_failure());
        t.expect(verify_contraction(r.perturbed.perturbed).all_pass(), "perturbed contraction fails an axiom");
    }
    // abelian
    auto b = make_basis({{"u", 1}, {"v", 2}, {"w", 1}, {"p", 3}}, Field::rationals());
    GradedMap d(b, b, -1);
    d.set_column(1, SparseVec(0, Scalar(1)));
    auto ab = DGLieAlgebra::make(b, d, {});
    t.expect(transfer_linf(ab, homology_contraction(ab.complex()), {4}).structure.comps.empty(), "abelian D != 0");
    // Jacobi <=> ∂∂ = 0 on random skew brackets in degree 0
    std::uniform_int_distribution<int> coef(-1, 1);
    for (int k = 0; k < 60; ++k) {
        auto L = make_basis({{"e", 0}, {"f", 0}, {"g", 0}}, Field::rationals());
        StructureConstants br;
        for (Index i = 0; i < 3; ++i)
            for (Index j = i + 1; j < 3; ++j) {
                CombBuilder<Index> v;
                for (Index x = 0; x < 3; ++x) v.add(x, Scalar(coef(rng)));
                auto built = v.build();
                if (!built.empty()) br[{i, j}] = built;
            }
        auto g = DGLieAlgebra::make(L, GradedMap(L, L, -1), br, false);
        const bool jacobi = !g.jacobi_failure();
        (jacobi ? jac : non)++;
        t.expect(jacobi == cce_coalgebra(g, 3).square_zero(), "Jacobi and the CCE square disagree");
    }
    t.expect(jac > 0 && non > 0, "only one direction exercised");
    if (t.o.pass)
        t.o.detail = std::to_string(done) + " DGLAs to arity 4; Jacobi " + std::to_string(jac) + " / not " +
                     std::to_string(non);
    return t.o;
}

// ---- 7 ------------------------------------------------------------------

Outcome duality() {
    Tally t;
    MonomialOptions mo;
    mo.max_dim = 6;
    mo.letter_min = -4;
    mo.letter_max = -2;
    mo.min_degree = -14;
    mo.max_degree = -2;
    Rng rng(707);
    int done = 0, higher = 0;
    while (done < 30) {
        auto A = random_monomial_dga(rng, Field::rationals(), mo);
        if (!A) continue;
        ++done;
        auto C = dual_coalgebra(*A);
        for (Index i = 0; i < C.basis->size(); ++i) t.expect(C.basis->degree(i) >= 2, "not simply connected");
        auto con = homology_contraction(C.complex());
        TransferOptions o;
        o.max_arity = 4;
        auto r = transfer_coalgebra(C, con, o);
        t.expect(check_twisting_cochain(r.tau, r.structure, C).pass(), "coalgebra twisting cochain");
        auto lhs = dualize(r.structure);
        auto rhs = transfer_hpt(AInfinityStructure::from_dga(dual_algebra(C), 4), dualize(con), o);
        t.expect(same_table(lhs.ops, rhs.structure.ops), "dual of the coalgebra transfer differs");
        for (const auto& [w, v] : lhs.ops)
            if (w.size() >= 3) {
                ++higher;
                break;
            }
    }
    if (t.o.pass) t.o.detail = std::to_string(done) + " coalgebras, " + std::to_string(higher) + " with m_n, n >= 3";
    return t.o;
}

// ---- 8 ------------------------------------------------------------------

Outcome weak_systems() {
    Tally t;
    Rng rng(808);
    int done = 0;
    while (done < 24) {
        auto w = random_weak_system(rng, done % 2 ? Field::prime(7) : Field::rationals(), done % 3 != 0);
        if (!w) continue;
        ++done;
        const GradedMap P = compose(w->pi, w->nabla);
        t.expect(compose(P, P) == P, "π∇ not idempotent");
        auto n = normalize_weak_system(*w);
        t.expect(n.blocks.block_form(), "not in block form");
        t.expect(verify_contraction(n.contraction).all_pass(), "extracted contraction fails");
        t.expect(n.contraction.small.dim() + n.complement.dim() == w->small.dim(), "dimensions");
    }
    if (t.o.pass) t.o.detail = std::to_string(done) + " weak systems";
    return t.o;
}

// ---- 9 ------------------------------------------------------------------

Outcome cinfinity() {
    Tally t;
    MonomialOptions mo;
    mo.commutative = true;
    int done = 0;
    for (auto f : {Field::rationals(), Field::prime(5)})
        for (const auto& A : dga_corpus(f, 25, 909, mo)) {
            t.expect(A.graded_commutative(), "corpus member not commutative");
            TransferOptions o;
            o.max_arity = 4;
            auto r = transfer(Method::hpt, A, homology_contraction(A.complex()), o);
            auto rep = check_cinfinity(r.structure);
            t.expect(rep.pass(), "shuffle residual at " + rep.first_failure());
            ++done;
        }
    auto b = make_basis({{"x", 0}, {"y", 0}, {"xy", 0}, {"yx", 0}}, Field::rationals());
    StructureConstants mu;
    mu[{0, 1}] = SparseVec(2, Scalar(1));
    mu[{1, 0}] = SparseVec(3, Scalar(1));
    auto N = DGAlgebra::make(b, GradedMap(b, b, -1), mu);
    auto rep = check_cinfinity(transfer(Method::hpt, N, trivial_contraction(N.complex())).structure);
    t.expect(!rep.pass(), "noncommutative fixture passes the shuffle check");
    if (t.o.pass) t.o.detail = std::to_string(done) + " commutative algebras; noncommutative fails at " + rep.first_failure();
    return t.o;
}

// ---- 10 -----------------------------------------------------------------

int run(std::vector<std::string> args) {
    args.insert(args.begin(), "homotransfer");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome cli() {
    Tally t;
    const fs::path dir = fs::temp_directory_path() / "homotransfer_acceptance";
    fs::create_directories(dir);
    for (const char* name : {"trivial", "massey", "nilpotent_dgla"}) {
        const std::string text = slurp(fixture(name));
        t.expect(io::emit(io::parse(text)) == text, std::string("fixture not canonical: ") + name);
    }
    const std::string ainf = (dir / "massey_ainf.json").string();
    t.expect(run({"transfer", fixture("massey"), "--max-arity", "4", "--out", ainf}) == 0, "transfer exit");
    const std::string emitted = slurp(ainf);
    t.expect(io::emit(io::parse(emitted)) == emitted, "emitted structure not stable");
    t.expect(run({"check", ainf}) == 0, "check of the emitted structure");
    t.expect(run({"homology", fixture("nilpotent_dgla")}) == 0, "homology exit");

    t.expect(run({"homology", (dir / "missing.json").string()}) == 2, "missing file is not 2");
    t.expect(run({"transfer", fixture("massey"), "--method", "magic"}) == 2, "bad method is not 2");
    const std::string bad = (dir / "tampered.json").string();
    io::write_atomic(bad, R"({"kind":"ainf","field":"Q","max_arity":4,"generators":[{"name":"e","degree":0},
        {"name":"y","degree":1}],"ops":[{"inputs":["e","e"],"target":"e","coeff":"1"},
        {"inputs":["e","e","e"],"target":"y","coeff":"1"}]})");
    t.expect(run({"check", bad}) == 3, "Stasheff violation is not 3");
    t.expect(run({"transfer", fixture("nilpotent_dgla"), "--field", "Fp:3", "--max-arity", "4"}) == 3,
             "unsupported field is not 3");
    {
        auto A = massey_dga();
        TransferOptions o;
        o.max_arity = 4;
        auto rs = transfer_all(A, homology_contraction(A.complex()), o);
        for (auto& [w, v] : rs[1].structure.ops)
            if (w.size() == 3) v = v.scaled(Scalar(2));
        int code = 0;
        try {
            require_agreement(rs);
        } catch (const Error& e) {
            code = static_cast<int>(e.code());
        }
        t.expect(code == 4, "method divergence is not 4");
    }
    t.expect(run({"transfer", fixture("trivial"), "--method", "trees", "--max-arity", "14"}) == 5,
             "tree budget is not 5");
    fs::remove_all(dir);
    if (t.o.pass) t.o.detail = "fixtures canonical, exit codes 0 2 3 4 5";
    return t.o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"Stasheff on random DGAs", stasheff_corpus},
        {"four methods agree", four_methods},
        {"trivial contraction", trivial_contraction_case},
        {"Massey product", massey},
        {"perturbation lemma", perturbation_lemma},
        {"L-infinity transfer", linfty},
        {"coalgebra duality", duality},
        {"weak systems", weak_systems},
        {"C-infinity shuffle check", cinfinity},
        {"CLI round trip and exit codes", cli},
    };
    int failed = 0, k = 0;
    for (const auto& [name, fn] : criteria) {
        ++k;
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << k << ". " << name << ": " << o.detail << std::endl;
    }
    std::cout << (failed ? "acceptance: FAILED" : "acceptance: all criteria pass") << std::endl;
    return failed ? 1 : 0;
}
