#include "homotransfer/io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "homotransfer/errors.hpp"

namespace homotransfer::io {

std::string to_string(Kind k) {
    switch (k) {
        case Kind::complex: return "complex";
        case Kind::dga: return "dga";
        case Kind::dgc: return "dgc";
        case Kind::dgla: return "dgla";
        case Kind::ainf: return "ainf";
        case Kind::ainfc: return "ainfc";
        case Kind::linf: return "linf";
        case Kind::contraction: return "contraction";
    }
    return "?";
}

namespace {

Kind parse_kind(const std::string& s) {
    for (Kind k : {Kind::complex, Kind::dga, Kind::dgc, Kind::dgla, Kind::ainf, Kind::ainfc, Kind::linf,
                   Kind::contraction})
        if (to_string(k) == s) return k;
    throw ParseError("unknown kind '" + s + "'");
}

// ---- reading

const Json& need(const Json& o, const char* key, const std::string& where) {
    if (!o.is_object()) throw ParseError(where + ": expected an object");
    auto it = o.find(key);
    if (it == o.end()) throw ParseError(where + ": missing \"" + key + "\"");
    return *it;
}

void only_keys(const Json& o, std::initializer_list<const char*> keys, const std::string& where) {
    if (!o.is_object()) throw ParseError(where + ": expected an object");
    for (const auto& [k, v] : o.items()) {
        bool ok = false;
        for (const char* key : keys) ok |= k == key;
        if (!ok) throw ParseError(where + ": unexpected key \"" + k + "\"");
    }
}

std::string text(const Json& v, const std::string& where) {
    if (!v.is_string()) throw ParseError(where + ": expected a string");
    return v.get<std::string>();
}

const Json& array(const Json& v, const std::string& where) {
    if (!v.is_array()) throw ParseError(where + ": expected an array");
    return v;
}

Scalar coeff(const Json& entry, const Field& f, const std::string& where) {
    Scalar s = Scalar::parse(text(need(entry, "coeff", where), where + ".coeff"), f);
    if (s.is_zero()) throw ParseError(where + ": zero coefficient");
    return s;
}

Index name(const GradedBasis& b, const Json& v, const std::string& where) {
    return b.at(text(v, where));
}

Word name_word(const GradedBasis& b, const Json& v, const std::string& where) {
    array(v, where);
    if (v.empty() || v.size() > kMaxWordLength) throw ParseError(where + ": word length out of range");
    Word w;
    for (const auto& x : v) w.push_back(name(b, x, where));
    return w;
}

BasisPtr read_generators(const Json& v, const Field& f, const std::string& where) {
    std::vector<BasisElement> el;
    for (const auto& g : array(v, where)) {
        only_keys(g, {"name", "degree"}, where);
        const std::string n = text(need(g, "name", where), where + ".name");
        if (n.empty()) throw ParseError(where + ": empty name");
        const Json& d = need(g, "degree", where);
        if (!d.is_number_integer()) throw ParseError(where + ": degree of '" + n + "' is not an integer");
        el.push_back({n, d.get<int>()});
    }
    return make_basis(std::move(el), f);
}

void check_degree(int got, int want, const std::string& where) {
    if (got != want)
        throw ParseError(where + ": entry of degree " + std::to_string(got) + ", expected " + std::to_string(want));
}

// [{source, target, coeff}]
GradedMap read_map(const Json& v, const BasisPtr& src, const BasisPtr& tgt, int degree, const std::string& where) {
    std::vector<CombBuilder<Index>> cols(src->size());
    std::set<std::pair<Index, Index>> seen;
    for (const auto& e : array(v, where)) {
        only_keys(e, {"source", "target", "coeff"}, where);
        const Index s = name(*src, need(e, "source", where), where + ".source");
        const Index t = name(*tgt, need(e, "target", where), where + ".target");
        if (!seen.emplace(s, t).second)
            throw ParseError(where + ": duplicate entry " + src->name(s) + " -> " + tgt->name(t));
        check_degree(tgt->degree(t) - src->degree(s), degree, where + " " + src->name(s) + " -> " + tgt->name(t));
        cols[s].add(t, coeff(e, src->field(), where));
    }
    GradedMap m(src, tgt, degree);
    for (Index i = 0; i < src->size(); ++i) m.set_column(i, cols[i].build());
    return m;
}

// [{left, right, target, coeff}]
StructureConstants read_table(const Json& v, const BasisPtr& b, const std::string& where) {
    std::map<PairKey, CombBuilder<Index>> acc;
    std::set<std::tuple<Index, Index, Index>> seen;
    for (const auto& e : array(v, where)) {
        only_keys(e, {"left", "right", "target", "coeff"}, where);
        const Index l = name(*b, need(e, "left", where), where + ".left");
        const Index r = name(*b, need(e, "right", where), where + ".right");
        const Index t = name(*b, need(e, "target", where), where + ".target");
        if (!seen.emplace(l, r, t).second) throw ParseError(where + ": duplicate entry");
        check_degree(b->degree(t), b->degree(l) + b->degree(r),
                     where + " (" + b->name(l) + "," + b->name(r) + ") -> " + b->name(t));
        acc[{l, r}].add(t, coeff(e, b->field(), where));
    }
    StructureConstants out;
    for (auto& [k, c] : acc) out.emplace(k, c.build());
    return out;
}

// [{inputs: [...], target, coeff}] keyed by input words
OpTable read_ops(const Json& v, const BasisPtr& in, const BasisPtr& out, int max_arity, const std::string& where,
                 const std::function<int(const Word&)>& want_degree) {
    std::map<Word, CombBuilder<Index>> acc;
    std::set<std::pair<Word, Index>> seen;
    for (const auto& e : array(v, where)) {
        only_keys(e, {"inputs", "target", "coeff"}, where);
        const Word w = name_word(*in, need(e, "inputs", where), where + ".inputs");
        if (static_cast<int>(w.size()) > max_arity)
            throw ParseError(where + ": entry of arity " + std::to_string(w.size()) + " above max_arity");
        const Index t = name(*out, need(e, "target", where), where + ".target");
        if (!seen.emplace(w, t).second) throw ParseError(where + ": duplicate entry");
        check_degree(out->degree(t), want_degree(w), where + " " + word_name(w, *in) + " -> " + out->name(t));
        acc[w].add(t, coeff(e, in->field(), where));
    }
    OpTable t;
    for (auto& [w, c] : acc) t.emplace(w, c.build());
    return t;
}

GradedMap zero_differential(const BasisPtr& b) { return GradedMap(b, b, -1); }

GradedMap read_differential(const Json& o, const BasisPtr& b, const std::string& where) {
    auto it = o.find("differential");
    if (it == o.end()) return zero_differential(b);
    return read_map(*it, b, b, -1, where + ".differential");
}

int read_arity(const Json& o, const std::string& where) {
    const Json& v = need(o, "max_arity", where);
    if (!v.is_number_integer()) throw ParseError(where + ": max_arity is not an integer");
    const int n = v.get<int>();
    if (n < 1 || n > static_cast<int>(kMaxWordLength)) throw ParseError(where + ": max_arity out of range");
    return n;
}

Document parse_json(const Json& j, const std::optional<Field>& override_field, const std::string& where);

void parse_body(Document& doc, const Json& j, const std::string& where) {
    const Field f = doc.field;
    switch (doc.kind) {
        case Kind::complex: {
            only_keys(j, {"kind", "field", "max_arity", "generators", "differential"}, where);
            auto b = read_generators(need(j, "generators", where), f, where + ".generators");
            doc.complex = ChainComplex(b, read_differential(j, b, where));
            return;
        }
        case Kind::dga: {
            only_keys(j, {"kind", "field", "max_arity", "generators", "differential", "product"}, where);
            auto b = read_generators(need(j, "generators", where), f, where + ".generators");
            auto d = read_differential(j, b, where);
            StructureConstants mu;
            if (j.contains("product")) mu = read_table(j["product"], b, where + ".product");
            doc.dga = DGAlgebra::make(b, d, std::move(mu));
            doc.complex = doc.dga->complex();
            return;
        }
        case Kind::dgla: {
            only_keys(j, {"kind", "field", "max_arity", "generators", "differential", "bracket"}, where);
            auto b = read_generators(need(j, "generators", where), f, where + ".generators");
            auto d = read_differential(j, b, where);
            StructureConstants br;
            if (j.contains("bracket")) br = read_table(j["bracket"], b, where + ".bracket");
            doc.dgla = DGLieAlgebra::make(b, d, std::move(br), false);
            doc.complex = doc.dgla->complex();
            return;
        }
        case Kind::dgc: {
            only_keys(j, {"kind", "field", "max_arity", "generators", "differential", "diagonal"}, where);
            auto b = read_generators(need(j, "generators", where), f, where + ".generators");
            auto d = read_differential(j, b, where);
            std::vector<CombBuilder<Word>> delta(b->size());
            std::set<std::tuple<Index, Index, Index>> seen;
            if (j.contains("diagonal"))
                for (const auto& e : array(j["diagonal"], where + ".diagonal")) {
                    const std::string w = where + ".diagonal";
                    only_keys(e, {"source", "left", "right", "coeff"}, w);
                    const Index s = name(*b, need(e, "source", w), w + ".source");
                    const Index l = name(*b, need(e, "left", w), w + ".left");
                    const Index r = name(*b, need(e, "right", w), w + ".right");
                    if (!seen.emplace(s, l, r).second) throw ParseError(w + ": duplicate entry");
                    check_degree(b->degree(l) + b->degree(r), b->degree(s), w + " " + b->name(s));
                    delta[s].add(Word{l, r}, coeff(e, f, w));
                }
            std::vector<WordComb> dl;
            for (auto& c : delta) dl.push_back(c.build());
            doc.dgc = DGCoalgebra::make(b, d, std::move(dl));
            doc.complex = doc.dgc->complex();
            return;
        }
        case Kind::ainf: {
            only_keys(j, {"kind", "field", "max_arity", "generators", "differential", "ops", "morphism"}, where);
            const int N = read_arity(j, where);
            auto b = read_generators(need(j, "generators", where), f, where + ".generators");
            auto d = read_differential(j, b, where);
            OpTable ops;
            if (j.contains("ops"))
                ops = read_ops(j["ops"], b, b, N, where + ".ops",
                               [&](const Word& w) { return word_degree(w, *b) + static_cast<int>(w.size()) - 2; });
            for (const auto& [w, v] : ops)
                if (w.size() < 2) throw ParseError(where + ".ops: arity 1 belongs in \"differential\"");
            for (Index x = 0; x < b->size(); ++x)
                if (!d.column(x).empty()) ops[Word{x}] = d.column(x);
            doc.ainf = AInfinityStructure::make(b, N, std::move(ops));
            if (j.contains("morphism")) {
                const Json& m = j["morphism"];
                const std::string w = where + ".morphism";
                only_keys(m, {"target", "components"}, w);
                Document t = parse_json(need(m, "target", w), f, w + ".target");
                if (t.kind != Kind::dga) throw ParseError(w + ": target must be a dga document");
                const auto& tb = t.dga->basis;
                OpTable comps = read_ops(need(m, "components", w), b, tb, N, w + ".components", [&](const Word& u) {
                    return word_degree(u, *b) + static_cast<int>(u.size()) - 1;
                });
                doc.morphism = AInfinityMorphism{b, tb, N, std::move(comps)};
                doc.morphism_target = t.dga;
            }
            return;
        }
        case Kind::ainfc: {
            only_keys(j, {"kind", "field", "max_arity", "generators", "differential", "ops"}, where);
            const int N = read_arity(j, where);
            auto b = read_generators(need(j, "generators", where), f, where + ".generators");
            auto d = read_differential(j, b, where);
            std::vector<CombBuilder<Word>> cob(b->size());
            for (Index x = 0; x < b->size(); ++x)
                for (const auto& [y, e] : d.column(x)) cob[x].add(Word{y}, -e);
            std::set<std::pair<Index, Word>> seen;
            if (j.contains("ops"))
                for (const auto& e : array(j["ops"], where + ".ops")) {
                    const std::string w = where + ".ops";
                    only_keys(e, {"source", "outputs", "coeff"}, w);
                    const Index s = name(*b, need(e, "source", w), w + ".source");
                    const Word out = name_word(*b, need(e, "outputs", w), w + ".outputs");
                    if (out.size() < 2 || static_cast<int>(out.size()) > N)
                        throw ParseError(w + ": output word length out of range");
                    if (!seen.emplace(s, out).second) throw ParseError(w + ": duplicate entry");
                    // desuspended letters: |s^-1 x| = |x| - 1, the derivation has degree -1
                    check_degree(word_degree(out, *b) - static_cast<int>(out.size()), b->degree(s) - 2,
                                 w + " " + b->name(s));
                    cob[s].add(out, coeff(e, f, w));
                }
            AInfinityCoalgebra c{b, N, {}};
            for (auto& x : cob) c.cobar.push_back(x.build());
            doc.ainfc = std::move(c);
            return;
        }
        case Kind::linf: {
            only_keys(j, {"kind", "field", "max_arity", "generators", "differential", "ops"}, where);
            const int N = read_arity(j, where);
            auto b = read_generators(need(j, "generators", where), f, where + ".generators");
            auto d = read_differential(j, b, where);
            auto sb = shifted_basis(b, 1, "s");
            require_lie_field(f, N);
            OpTable ops;
            if (j.contains("ops"))
                ops = read_ops(j["ops"], b, b, N, where + ".ops",
                               [&](const Word& w) { return word_degree(w, *sb) - 2; });
            for (const auto& [w, v] : ops) {
                auto s = sort_word(w, *sb);
                if (w.size() < 2 || !s || !(s->first == w))
                    throw ParseError(where + ".ops: inputs " + word_name(w, *b) +
                                     " must be a sorted symmetric word of length >= 2");
            }
            doc.linf = LInfinityStructure{b, sb, N, d, std::move(ops)};
            return;
        }
        case Kind::contraction: {
            only_keys(j, {"kind", "field", "max_arity", "big", "small", "pi", "nabla", "h"}, where);
            auto side = [&](const char* key) {
                const Json& s = need(j, key, where);
                const std::string w = where + "." + key;
                only_keys(s, {"generators", "differential"}, w);
                auto b = read_generators(need(s, "generators", w), f, w + ".generators");
                return ChainComplex(b, read_differential(s, b, w));
            };
            ChainComplex big = side("big"), small = side("small");
            auto pi = read_map(need(j, "pi", where), big.basis(), small.basis(), 0, where + ".pi");
            auto nabla = read_map(need(j, "nabla", where), small.basis(), big.basis(), 0, where + ".nabla");
            auto h = read_map(need(j, "h", where), big.basis(), big.basis(), 1, where + ".h");
            doc.contraction = Contraction{big, small, pi, nabla, h};
            return;
        }
    }
}

Document parse_json(const Json& j, const std::optional<Field>& override_field, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    Document doc;
    doc.kind = parse_kind(text(need(j, "kind", where), where + ".kind"));
    const Field declared = Field::parse(text(need(j, "field", where), where + ".field"));
    doc.field = override_field ? *override_field : declared;
    if (j.contains("max_arity")) doc.max_arity = read_arity(j, where);
    parse_body(doc, j, where);
    return doc;
}

// ---- writing

Json generators(const GradedBasis& b) {
    Json a = Json::array();
    for (const auto& e : b.elements()) a.push_back(Json{{"name", e.name}, {"degree", e.degree}});
    return a;
}

Json map_entries(const GradedMap& m) {
    Json a = Json::array();
    const auto& s = *m.source();
    const auto& t = *m.target();
    for (Index i = 0; i < s.size(); ++i)
        for (const auto& [y, c] : m.column(i))
            a.push_back(Json{{"source", s.name(i)}, {"target", t.name(y)}, {"coeff", c.to_string()}});
    return a;
}

Json table_entries(const StructureConstants& t, const GradedBasis& b) {
    Json a = Json::array();
    for (const auto& [k, v] : t)
        for (const auto& [z, c] : v)
            a.push_back(Json{{"left", b.name(k.first)},
                             {"right", b.name(k.second)},
                             {"target", b.name(z)},
                             {"coeff", c.to_string()}});
    return a;
}

Json names(const Word& w, const GradedBasis& b) {
    Json a = Json::array();
    for (std::size_t i = 0; i < w.size(); ++i) a.push_back(b.name(w[i]));
    return a;
}

Json op_entries(const OpTable& t, const GradedBasis& in, const GradedBasis& out, std::size_t min_arity) {
    Json a = Json::array();
    for (const auto& [w, v] : t) {
        if (w.size() < min_arity) continue;
        for (const auto& [z, c] : v)
            a.push_back(Json{{"inputs", names(w, in)}, {"target", out.name(z)}, {"coeff", c.to_string()}});
    }
    return a;
}

Json head(const Document& d) {
    Json j;
    j["kind"] = to_string(d.kind);
    j["field"] = d.field.to_string();
    if (d.max_arity) j["max_arity"] = *d.max_arity;
    return j;
}

Json complex_body(Json j, const ChainComplex& c) {
    j["generators"] = generators(*c.basis());
    j["differential"] = map_entries(c.d());
    return j;
}

}  // namespace

Json to_json(const Document& d) {
    Json j = head(d);
    switch (d.kind) {
        case Kind::complex: return complex_body(std::move(j), *d.complex);
        case Kind::dga:
            j = complex_body(std::move(j), d.dga->complex());
            j["product"] = table_entries(d.dga->mu, *d.dga->basis);
            return j;
        case Kind::dgla:
            j = complex_body(std::move(j), d.dgla->complex());
            j["bracket"] = table_entries(d.dgla->bracket, *d.dgla->basis);
            return j;
        case Kind::dgc: {
            j = complex_body(std::move(j), d.dgc->complex());
            Json a = Json::array();
            const auto& b = *d.dgc->basis;
            for (Index x = 0; x < b.size(); ++x)
                for (const auto& [w, c] : d.dgc->delta[x])
                    a.push_back(Json{{"source", b.name(x)},
                                     {"left", b.name(w[0])},
                                     {"right", b.name(w[1])},
                                     {"coeff", c.to_string()}});
            j["diagonal"] = a;
            return j;
        }
        case Kind::ainf: {
            const auto& a = *d.ainf;
            j = complex_body(std::move(j), ChainComplex(a.carrier, a.m1()));
            j["ops"] = op_entries(a.ops, *a.carrier, *a.carrier, 2);
            if (d.morphism) {
                Json m;
                m["target"] = to_json(dga_document(*d.morphism_target));
                m["components"] = op_entries(d.morphism->comps, *a.carrier, *d.morphism->target, 1);
                j["morphism"] = m;
            }
            return j;
        }
        case Kind::ainfc: {
            const auto& c = *d.ainfc;
            const auto& b = *c.carrier;
            GradedMap dm(c.carrier, c.carrier, -1);
            Json a = Json::array();
            for (Index x = 0; x < b.size(); ++x) {
                CombBuilder<Index> lin;
                for (const auto& [w, e] : c.cobar[x]) {
                    if (w.size() == 1) {
                        lin.add(w[0], -e);
                        continue;
                    }
                    a.push_back(Json{{"source", b.name(x)}, {"outputs", names(w, b)}, {"coeff", e.to_string()}});
                }
                dm.set_column(x, lin.build());
            }
            j = complex_body(std::move(j), ChainComplex(c.carrier, dm));
            j["ops"] = a;
            return j;
        }
        case Kind::linf: {
            const auto& l = *d.linf;
            j = complex_body(std::move(j), ChainComplex(l.carrier, l.d));
            j["ops"] = op_entries(l.comps, *l.carrier, *l.carrier, 2);
            return j;
        }
        case Kind::contraction: {
            const auto& c = *d.contraction;
            j["big"] = complex_body(Json::object(), c.big);
            j["small"] = complex_body(Json::object(), c.small);
            j["pi"] = map_entries(c.pi);
            j["nabla"] = map_entries(c.nabla);
            j["h"] = map_entries(c.h);
            return j;
        }
    }
    return j;
}

std::string emit(const Document& d) { return to_json(d).dump(2) + "\n"; }

Document parse(const std::string& text, const std::optional<Field>& field) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    try {
        return parse_json(j, field, "document");
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
}

Document load(const std::string& path, const std::optional<Field>& field) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), field);
}

void write_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ResourceError("cannot write '" + tmp + "'");
        out << text;
        out.flush();
        if (!out) throw ResourceError("cannot write '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ResourceError("cannot move output into '" + path + "'");
    }
}

Document complex_document(const ChainComplex& c) {
    Document d;
    d.kind = Kind::complex;
    d.field = c.basis()->field();
    d.complex = c;
    return d;
}

Document dga_document(const DGAlgebra& a) {
    Document d;
    d.kind = Kind::dga;
    d.field = a.basis->field();
    d.dga = a;
    d.complex = a.complex();
    return d;
}

Document dgc_document(const DGCoalgebra& c) {
    Document d;
    d.kind = Kind::dgc;
    d.field = c.basis->field();
    d.dgc = c;
    d.complex = c.complex();
    return d;
}

Document dgla_document(const DGLieAlgebra& g) {
    Document d;
    d.kind = Kind::dgla;
    d.field = g.basis->field();
    d.dgla = g;
    d.complex = g.complex();
    return d;
}

Document ainf_document(const AInfinityStructure& a, const std::optional<AInfinityMorphism>& f,
                       const std::optional<DGAlgebra>& target) {
    Document d;
    d.kind = Kind::ainf;
    d.field = a.carrier->field();
    d.max_arity = a.max_arity;
    d.ainf = a;
    if (f && target) {
        d.morphism = f;
        d.morphism_target = target;
    }
    return d;
}

Document ainfc_document(const AInfinityCoalgebra& c) {
    Document d;
    d.kind = Kind::ainfc;
    d.field = c.carrier->field();
    d.max_arity = c.max_arity;
    d.ainfc = c;
    return d;
}

Document linf_document(const LInfinityStructure& l) {
    Document d;
    d.kind = Kind::linf;
    d.field = l.carrier->field();
    d.max_arity = l.max_arity;
    d.linf = l;
    return d;
}

Document contraction_document(const Contraction& c) {
    Document d;
    d.kind = Kind::contraction;
    d.field = c.big.basis()->field();
    d.contraction = c;
    return d;
}

}  // namespace homotransfer::io
