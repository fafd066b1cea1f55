#include "homotransfer/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <map>
#include <new>
#include <ostream>

#include "homotransfer/errors.hpp"
#include "homotransfer/io.hpp"

namespace homotransfer {

namespace {

using io::Json;
using io::Kind;

struct Options {
    std::string command;
    std::string input;
    std::optional<std::string> field;
    int max_arity = 5;
    std::optional<std::string> method;
    std::optional<std::string> out;
    std::optional<long long> seed;
    std::optional<std::string> which;
    std::optional<std::string> contraction;
    bool check_cinfinity = false;
};

Json identity_json(const IdentityReport& r) {
    Json e = Json::array();
    for (const auto& x : r.entries)
        e.push_back(Json{{"arity", x.arity}, {"degree", x.degree}, {"words", x.words}, {"failures", x.failures}});
    return Json{{"identity", r.identity},
                {"pass", r.pass()},
                {"failures", r.failures()},
                {"first_failure", r.first_failure()},
                {"entries", e}};
}

Json contraction_json(const ContractionReport& r) {
    Json a = Json::array();
    for (const auto& x : r.axioms) a.push_back(Json{{"name", x.name}, {"pass", x.pass}, {"witness", x.witness}});
    return Json{{"pass", r.all_pass()}, {"axioms", a}};
}

Json simple_check(const std::string& name, const std::optional<std::string>& failure) {
    return Json{{"identity", name}, {"pass", !failure}, {"first_failure", failure.value_or("")}};
}

// nonzero entries per arity
Json arity_counts(const OpTable& t) {
    std::map<std::size_t, std::size_t> n;
    for (const auto& [w, v] : t)
        if (!v.empty()) n[w.size()] += v.size();
    Json j = Json::object();
    for (const auto& [k, c] : n) j[std::to_string(k)] = c;
    return j;
}

Json betti(const BasisPtr& b) {
    Json j = Json::object();
    for (int g : b->degrees()) j[std::to_string(g)] = b->in_degree(g).size();
    return j;
}

GradedMap rebase(const GradedMap& f, const BasisPtr& src, const BasisPtr& tgt) {
    GradedMap g(src, tgt, f.degree());
    for (Index i = 0; i < src->size(); ++i) g.set_column(i, f.column(i));
    return g;
}

bool same_names(const GradedBasis& a, const GradedBasis& b) {
    if (a.size() != b.size()) return false;
    for (Index i = 0; i < a.size(); ++i)
        if (a.name(i) != b.name(i) || a.degree(i) != b.degree(i)) return false;
    return true;
}

ChainComplex complex_of(const io::Document& d) {
    switch (d.kind) {
        case Kind::ainf: return ChainComplex(d.ainf->carrier, d.ainf->m1());
        case Kind::ainfc: {
            const auto& c = *d.ainfc;
            GradedMap m(c.carrier, c.carrier, -1);
            for (Index x = 0; x < c.carrier->size(); ++x)
                for (const auto& [w, e] : c.cobar[x])
                    if (w.size() == 1) m.add_entry(w[0], x, -e);
            return ChainComplex(c.carrier, m);
        }
        case Kind::linf: return ChainComplex(d.linf->carrier, d.linf->d);
        case Kind::contraction: return d.contraction->big;
        default: return *d.complex;
    }
}

class Runner {
public:
    Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

    int run() {
        const auto start = std::chrono::steady_clock::now();
        std::optional<Field> field;
        if (o_.field) field = Field::parse(*o_.field);
        doc_ = io::load(o_.input, field);
        report_["command"] = o_.command;
        report_["input"] = o_.input;
        report_["kind"] = io::to_string(doc_.kind);
        report_["field"] = doc_.field.to_string();
        report_["max_arity"] = o_.max_arity;
        report_["seed"] = o_.seed ? Json(*o_.seed) : Json(nullptr);
        report_["threads"] = thread_cap();
        int code = 0;
        if (o_.command == "homology") code = homology();
        else if (o_.command == "transfer") code = transfer();
        else if (o_.command == "check") code = check();
        else code = normalize();
        report_["elapsed_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report_["exit_code"] = code;
        out_ << report_.dump(2) << "\n";
        return code;
    }

private:
    void emit(const io::Document& d) {
        if (o_.out) {
            io::write_atomic(*o_.out, io::emit(d));
            report_["output"] = *o_.out;
        } else {
            report_["structure"] = io::to_json(d);
        }
    }

    TransferOptions transfer_options() const {
        TransferOptions t;
        t.max_arity = o_.max_arity;
        return t;
    }

    // A contraction onto the given complex: the homology one unless a file is supplied.
    Contraction contraction_for(const ChainComplex& c) {
        if (!o_.contraction) {
            report_["contraction"] = "homology";
            return homology_contraction(c);
        }
        io::Document k = io::load(*o_.contraction, doc_.field);
        if (k.kind != Kind::contraction) throw ParseError("--contraction: expected a contraction file");
        const Contraction& in = *k.contraction;
        if (!same_names(*in.big.basis(), *c.basis()))
            throw ParseError("--contraction: big complex does not match the input generators");
        const auto& b = c.basis();
        const auto& s = in.small.basis();
        if (!(rebase(in.big.d(), b, b) == c.d()))
            throw ParseError("--contraction: big differential does not match the input");
        Contraction r{c, in.small, rebase(in.pi, b, s), rebase(in.nabla, s, b), rebase(in.h, b, b)};
        auto v = verify_contraction(r);
        if (!v.all_pass()) throw AxiomError("--contraction: " + v.summary());
        report_["contraction"] = *o_.contraction;
        return r;
    }

    int homology() {
        Contraction c = homology_contraction(complex_of(doc_));
        auto v = verify_contraction(c);
        report_["betti"] = betti(c.small.basis());
        report_["verify"] = contraction_json(v);
        emit(io::contraction_document(c));
        return v.all_pass() ? 0 : 3;
    }

    int transfer() {
        if (o_.max_arity < 2) throw ParseError("--max-arity must be at least 2");
        switch (doc_.kind) {
            case Kind::dga: return transfer_dga();
            case Kind::ainf: return transfer_ainf();
            case Kind::dgc: return transfer_dgc();
            case Kind::dgla: return transfer_dgla();
            default: throw ParseError("transfer needs a dga, ainf, dgc or dgla input");
        }
    }

    std::vector<Method> methods(const std::vector<Method>& allowed, const std::string& fallback) {
        const std::string m = o_.method.value_or(fallback);
        report_["method"] = m;
        if (m == "all") return allowed;
        const Method one = parse_method(m);
        for (Method a : allowed)
            if (a == one) return {one};
        throw ParseError("method '" + m + "' does not apply to " + io::to_string(doc_.kind) + " input");
    }

    int finish_transfer(const TransferResult& r, const std::vector<TransferResult>& all, Json checks,
                        const io::Document& out_doc) {
        Json ms = Json::array();
        for (const auto& x : all) ms.push_back(to_string(x.method));
        report_["methods_run"] = ms;
        report_["agreement"] = all.size() > 1 ? Json(true) : Json(nullptr);
        report_["operations"] = arity_counts(r.structure.ops);
        if (r.morphism) report_["morphism_components"] = arity_counts(r.morphism->comps);
        bool ok = true;
        for (const auto& c : checks)
            if (c.contains("pass")) ok = ok && c["pass"].get<bool>();
        report_["checks"] = std::move(checks);
        report_["all_checks_pass"] = ok;
        emit(out_doc);
        return ok ? 0 : static_cast<int>(ExitCode::divergence);
    }

    void maybe_cinfinity(const AInfinityStructure& s, std::optional<bool> commutative) {
        if (!o_.check_cinfinity) return;
        Json j = identity_json(check_cinfinity(s));
        j["input_commutative"] = commutative ? Json(*commutative) : Json(nullptr);
        report_["cinfinity"] = j;
    }

    int transfer_dga() {
        const DGAlgebra& a = *doc_.dga;
        Contraction c = contraction_for(a.complex());
        std::vector<Method> allowed{Method::hpt, Method::recursive, Method::kadeishvili, Method::trees};
        // Kadeishvili's construction needs d_M = 0
        if (!c.small.d().is_zero()) allowed.erase(allowed.begin() + 2);
        const auto ms = methods(allowed, "all");
        std::vector<TransferResult> rs;
        for (Method m : ms) rs.push_back(homotransfer::transfer(m, a, c, transfer_options()));
        if (rs.size() > 1) require_agreement(rs);
        const TransferResult& r = rs.front();
        Json checks = Json::array();
        checks.push_back(identity_json(check_stasheff(r.structure)));
        if (r.morphism)
            checks.push_back(identity_json(
                check_morphism(*r.morphism, r.structure, AInfinityStructure::from_dga(a, o_.max_arity))));
        checks.push_back(identity_json(check_twisting_cochain(r.tau, r.structure, a)));
        maybe_cinfinity(r.structure, a.graded_commutative());
        return finish_transfer(r, rs, std::move(checks), io::ainf_document(r.structure, r.morphism, a));
    }

    int transfer_ainf() {
        AInfinityStructure a = *doc_.ainf;
        if (a.max_arity < o_.max_arity) a.max_arity = o_.max_arity;
        auto input = check_stasheff(a);
        report_["input_stasheff"] = identity_json(input);
        if (!input.pass()) {
            report_["all_checks_pass"] = false;
            return static_cast<int>(ExitCode::axiom);
        }
        Contraction c = contraction_for(ChainComplex(a.carrier, a.m1()));
        const auto ms = methods({Method::hpt, Method::trees}, "all");
        std::vector<TransferResult> rs;
        for (Method m : ms)
            rs.push_back(m == Method::hpt ? transfer_hpt(a, c, transfer_options()) : transfer_trees(a, c, transfer_options()));
        if (rs.size() > 1) require_agreement(rs);
        const TransferResult& r = rs.front();
        Json checks = Json::array();
        checks.push_back(identity_json(check_stasheff(r.structure)));
        if (r.morphism) checks.push_back(identity_json(check_morphism(*r.morphism, r.structure, a)));
        maybe_cinfinity(r.structure, std::nullopt);
        return finish_transfer(r, rs, std::move(checks), io::ainf_document(r.structure));
    }

    int transfer_dgc() {
        const DGCoalgebra& k = *doc_.dgc;
        methods({Method::hpt, Method::recursive}, "all");
        Contraction c = contraction_for(k.complex());
        auto r = transfer_coalgebra(k, c, transfer_options());
        Json checks = Json::array();
        checks.push_back(identity_json(check_twisting_cochain(r.tau, r.structure, k)));
        checks.push_back(identity_json(check_stasheff(dualize(r.structure))));
        bool ok = checks[0]["pass"].get<bool>() && checks[1]["pass"].get<bool>();
        std::size_t ops = 0;
        for (const auto& v : r.structure.cobar)
            for (const auto& [w, e] : v) ops += w.size() >= 2;
        report_["operations"] = ops;
        report_["checks"] = std::move(checks);
        report_["all_checks_pass"] = ok;
        io::Document d = io::ainfc_document(r.structure);
        emit(d);
        return ok ? 0 : static_cast<int>(ExitCode::divergence);
    }

    int transfer_dgla() {
        const DGLieAlgebra& g = *doc_.dgla;
        methods({Method::hpt, Method::recursive}, "all");
        Contraction c = contraction_for(g.complex());
        auto r = transfer_linf(g, c, transfer_options());
        Json checks = Json::array();
        checks.push_back(identity_json(check_master(r.tau, r.structure, g)));
        checks.push_back(simple_check("square_zero", linf_square_zero_failure(r.structure)));
        bool ok = checks[0]["pass"].get<bool>() && checks[1]["pass"].get<bool>();
        report_["operations"] = arity_counts(r.structure.comps);
        report_["checks"] = std::move(checks);
        report_["all_checks_pass"] = ok;
        emit(io::linf_document(r.structure));
        return ok ? 0 : static_cast<int>(ExitCode::divergence);
    }

    int check() {
        static const std::map<Kind, std::string> fallback{
            {Kind::ainf, "stasheff"}, {Kind::ainfc, "stasheff"}, {Kind::dga, "stasheff"},
            {Kind::dgla, "jacobi"},   {Kind::linf, "master"},    {Kind::contraction, "contraction"}};
        auto it = fallback.find(doc_.kind);
        if (it == fallback.end()) throw ParseError("no checker for " + io::to_string(doc_.kind) + " input");
        const std::string which = o_.which.value_or(it->second);
        report_["which"] = which;
        Json result;
        bool pass = false;
        auto identity = [&](const IdentityReport& r) {
            result = identity_json(r);
            pass = r.pass();
        };
        auto bad = [&]() -> int {
            throw ParseError("check '" + which + "' does not apply to " + io::to_string(doc_.kind) + " input");
        };
        if (which == "contraction") {
            if (doc_.kind != Kind::contraction) bad();
            auto v = verify_contraction(*doc_.contraction);
            result = contraction_json(v);
            pass = v.all_pass();
        } else if (which == "stasheff" || which == "cinfinity") {
            AInfinityStructure a;
            if (doc_.kind == Kind::ainf) a = *doc_.ainf;
            else if (doc_.kind == Kind::dga) a = AInfinityStructure::from_dga(*doc_.dga, o_.max_arity);
            else if (doc_.kind == Kind::ainfc && which == "stasheff") a = dualize(*doc_.ainfc);
            else bad();
            identity(which == "stasheff" ? check_stasheff(a) : check_cinfinity(a));
        } else if (which == "morphism") {
            if (doc_.kind != Kind::ainf || !doc_.morphism) bad();
            identity(check_morphism(*doc_.morphism, *doc_.ainf,
                                    AInfinityStructure::from_dga(*doc_.morphism_target, doc_.ainf->max_arity)));
        } else if (which == "jacobi" || which == "master") {
            if (doc_.kind == Kind::linf && which == "master") {
                result = simple_check("square_zero", linf_square_zero_failure(*doc_.linf));
                pass = result["pass"].get<bool>();
            } else if (doc_.kind == Kind::dgla) {
                pass = lie_check(which, result);
            } else {
                bad();
            }
        } else {
            throw ParseError("unknown check '" + which + "'");
        }
        report_["result"] = result;
        report_["pass"] = pass;
        return pass ? 0 : static_cast<int>(ExitCode::axiom);
    }

    // ∂∂ = 0 on the Cartan-Chevalley-Eilenberg coalgebra, compared with Jacobi
    // directly; "master" then transfers and checks the twisting cochain.
    bool lie_check(const std::string& which, Json& result) {
        const DGLieAlgebra& g = *doc_.dgla;
        const int n = std::max(3, which == "master" ? o_.max_arity : 3);
        auto cce = cce_coalgebra(g, n);
        const auto jac = g.jacobi_failure();
        if (cce.bracket_failure.has_value() != jac.has_value())
            throw MethodDivergence("Jacobi and the square of the coderivation disagree");
        result["cce_bracket"] = simple_check("cce_bracket_square_zero", cce.bracket_failure);
        result["cce_total"] = simple_check("cce_total_square_zero", cce.total_failure);
        result["jacobi"] = simple_check("jacobi", jac);
        if (!cce.square_zero() || which == "jacobi") return cce.square_zero();
        auto r = transfer_linf(g, contraction_for(g.complex()), transfer_options());
        auto m = check_master(r.tau, r.structure, g);
        result["master"] = identity_json(m);
        return m.pass();
    }

    int normalize() {
        if (doc_.kind != Kind::contraction) throw ParseError("normalize needs a contraction file");
        NormalizedSystem n = normalize_weak_system(*doc_.contraction);
        auto v = verify_contraction(n.contraction);
        const auto& b = n.blocks;
        report_["blocks"] = Json{{"direct_sum", b.direct_sum},
                                 {"h_vanishes_on_image", b.h_vanishes_on_image},
                                 {"h_preserves_kernel", b.h_preserves_kernel},
                                 {"nabla_complement_in_kernel", b.nabla_complement_in_kernel},
                                 {"pi_iso_on_image", b.pi_iso_on_image},
                                 {"block_form", b.block_form()}};
        report_["complement_dim"] = n.complement.dim();
        report_["verify"] = contraction_json(v);
        emit(io::contraction_document(n.contraction));
        return b.block_form() && v.all_pass() ? 0 : static_cast<int>(ExitCode::axiom);
    }

    const Options& o_;
    std::ostream& out_;
    io::Document doc_;
    Json report_ = Json::object();
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact homotopy transfer of A-infinity, C-infinity and L-infinity structures", "homotransfer"};
    Options o;
    app.add_option("command", o.command, "homology | transfer | check | normalize")
        ->required()
        ->check(CLI::IsMember({"homology", "transfer", "check", "normalize"}));
    app.add_option("input", o.input, "structure file (JSON)")->required();
    app.add_option("--field", o.field, "override the declared field: Q or Fp:<p>");
    app.add_option("--max-arity", o.max_arity, "highest arity computed (default 5)");
    app.add_option("--method", o.method, "hpt | recursive | kadeishvili | trees | all");
    app.add_option("--out", o.out, "write the resulting structure file here");
    app.add_option("--seed", o.seed, "echoed into the report");
    app.add_option("--which", o.which, "check: stasheff | morphism | master | contraction | cinfinity | jacobi");
    app.add_option("--contraction", o.contraction, "transfer along this contraction instead of onto homology");
    app.add_flag("--check-cinfinity", o.check_cinfinity, "also run the shuffle-derivation check");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "homotransfer: " << e.what() << "\n";
        return static_cast<int>(ExitCode::parse);
    }
    try {
        return Runner(o, out).run();
    } catch (const Error& e) {
        err << "homotransfer: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::bad_alloc&) {
        err << "homotransfer: out of memory\n";
        return static_cast<int>(ExitCode::resource);
    } catch (const std::exception& e) {
        err << "homotransfer: internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace homotransfer
