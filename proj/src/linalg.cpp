#include "homotransfer/linalg.hpp"

#include <algorithm>

#include "homotransfer/errors.hpp"

namespace homotransfer {

GradedBasis::GradedBasis(std::vector<BasisElement> elements, Field field)
    : elements_(std::move(elements)), field_(field) {
    for (Index i = 0; i < elements_.size(); ++i) {
        if (!lookup_.emplace(elements_[i].name, i).second)
            throw ParseError("duplicate basis name '" + elements_[i].name + "'");
        by_degree_[elements_[i].degree].push_back(i);
    }
}

std::optional<Index> GradedBasis::find(const std::string& name) const {
    auto it = lookup_.find(name);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

Index GradedBasis::at(const std::string& name) const {
    auto i = find(name);
    if (!i) throw ParseError("unknown basis element '" + name + "'");
    return *i;
}

const std::vector<Index>& GradedBasis::in_degree(int g) const {
    static const std::vector<Index> none;
    auto it = by_degree_.find(g);
    return it == by_degree_.end() ? none : it->second;
}

std::vector<int> GradedBasis::degrees() const {
    std::vector<int> out;
    for (const auto& [g, v] : by_degree_) out.push_back(g);
    return out;
}

bool GradedBasis::same_as(const GradedBasis& o) const {
    return this == &o || (field_ == o.field_ && elements_ == o.elements_);
}

BasisPtr make_basis(std::vector<BasisElement> elements, Field field) {
    return std::make_shared<const GradedBasis>(std::move(elements), field);
}

BasisPtr tensor_basis(const BasisPtr& a, const BasisPtr& b) {
    std::vector<BasisElement> el;
    el.reserve(a->size() * b->size());
    for (Index i = 0; i < a->size(); ++i)
        for (Index j = 0; j < b->size(); ++j)
            el.push_back({a->name(i) + "⊗" + b->name(j), a->degree(i) + b->degree(j)});
    return make_basis(std::move(el), a->field());
}

BasisPtr shifted_basis(const BasisPtr& a, int k, const std::string& prefix) {
    std::vector<BasisElement> el;
    for (const auto& e : a->elements()) el.push_back({prefix + e.name, e.degree + k});
    return make_basis(std::move(el), a->field());
}

GradedMap::GradedMap(BasisPtr source, BasisPtr target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), cols_(source_->size()) {
    if (!(source_->field() == target_->field())) throw StructuralError("map between bases over different fields");
}

GradedMap GradedMap::identity(const BasisPtr& b) {
    GradedMap m(b, b, 0);
    for (Index i = 0; i < b->size(); ++i) m.cols_[i] = SparseVec(i, Scalar(1, b->field()));
    return m;
}

void GradedMap::set_column(Index i, SparseVec v) {
    const int want = source_->degree(i) + degree_;
    std::vector<SparseVec::Term> t;
    t.reserve(v.size());
    for (const auto& [row, c] : v) {
        if (target_->degree(row) != want)
            throw StructuralError("entry " + target_->name(row) + " <- " + source_->name(i) + " breaks map degree " +
                                  std::to_string(degree_));
        t.emplace_back(row, c.in_field(field()));
    }
    cols_[i] = SparseVec::from_sorted(std::move(t));
}

void GradedMap::add_entry(Index row, Index col, const Scalar& c) {
    CombBuilder<Index> b;
    b.add(cols_[col]);
    b.add(row, c);
    set_column(col, b.build());
}

SparseVec GradedMap::apply(const SparseVec& v) const {
    CombBuilder<Index> b;
    for (const auto& [i, c] : v) b.add(cols_[i], c);
    return b.build();
}

bool GradedMap::is_zero() const {
    return std::all_of(cols_.begin(), cols_.end(), [](const SparseVec& c) { return c.empty(); });
}

std::size_t GradedMap::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
}

GradedMap GradedMap::scaled(const Scalar& c) const {
    GradedMap r(source_, target_, degree_);
    for (Index i = 0; i < cols_.size(); ++i) r.cols_[i] = cols_[i].scaled(c.in_field(field()));
    return r;
}

namespace {
void same_shape(const GradedMap& a, const GradedMap& b, const char* op) {
    if (!a.source()->same_as(*b.source()) || !a.target()->same_as(*b.target()) || a.degree() != b.degree())
        throw StructuralError(std::string(op) + ": maps have different shapes");
}
}  // namespace

bool operator==(const GradedMap& a, const GradedMap& b) {
    return a.source_->same_as(*b.source_) && a.target_->same_as(*b.target_) && a.degree_ == b.degree_ &&
           a.cols_ == b.cols_;
}

GradedMap operator+(const GradedMap& a, const GradedMap& b) {
    same_shape(a, b, "sum");
    GradedMap r(a.source_, a.target_, a.degree_);
    for (Index i = 0; i < a.cols_.size(); ++i) r.cols_[i] = a.cols_[i] + b.cols_[i];
    return r;
}

GradedMap operator-(const GradedMap& a, const GradedMap& b) {
    same_shape(a, b, "difference");
    GradedMap r(a.source_, a.target_, a.degree_);
    for (Index i = 0; i < a.cols_.size(); ++i) r.cols_[i] = a.cols_[i] - b.cols_[i];
    return r;
}

GradedMap compose(const GradedMap& f, const GradedMap& g) {
    if (!g.target()->same_as(*f.source()))
        throw StructuralError("compose: target of inner map (" + std::to_string(g.target()->size()) +
                              " elements) differs from source of outer map (" + std::to_string(f.source()->size()) +
                              " elements)");
    GradedMap r(g.source(), f.target(), f.degree() + g.degree());
    for (Index i = 0; i < g.source()->size(); ++i) r.set_column(i, f.apply(g.column(i)));
    return r;
}

GradedMap tensor(const GradedMap& f, const GradedMap& g) {
    auto src = tensor_basis(f.source(), g.source());
    auto tgt = tensor_basis(f.target(), g.target());
    GradedMap r(src, tgt, f.degree() + g.degree());
    const std::size_t ns = g.source()->size(), nt = g.target()->size();
    for (Index x = 0; x < f.source()->size(); ++x) {
        const Scalar sign = koszul(static_cast<long long>(g.degree()) * f.source()->degree(x));
        for (Index y = 0; y < ns; ++y) {
            CombBuilder<Index> b;
            for (const auto& [fx, c] : f.column(x))
                for (const auto& [gy, e] : g.column(y)) b.add(static_cast<Index>(fx * nt + gy), sign * c * e);
            r.set_column(static_cast<Index>(x * ns + y), b.build());
        }
    }
    return r;
}

GradedMap transpose(const GradedMap& f, const BasisPtr& dual_target, const BasisPtr& dual_source) {
    if (dual_target->size() != f.target()->size() || dual_source->size() != f.source()->size())
        throw StructuralError("transpose: dual bases have wrong sizes");
    GradedMap r(dual_target, dual_source, f.degree());
    std::vector<CombBuilder<Index>> cols(dual_target->size());
    for (Index i = 0; i < f.source()->size(); ++i)
        for (const auto& [j, c] : f.column(i)) cols[j].add(i, c);
    for (Index j = 0; j < cols.size(); ++j) r.set_column(j, cols[j].build());
    return r;
}

std::vector<std::size_t> rref(DenseMatrix& m) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && m(p, c).is_zero()) ++p;
        if (p == m.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
        const Scalar inv = m(r, c).inverse();
        for (std::size_t j = c; j < m.cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Scalar f = m(i, c);
            for (std::size_t j = c; j < m.cols; ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

std::size_t rank(DenseMatrix m) { return rref(m).size(); }

DenseMatrix inverse(const DenseMatrix& m) {
    if (m.rows != m.cols) throw AxiomError("inverse of a non-square matrix");
    const std::size_t n = m.rows;
    DenseMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = Scalar(1);
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) throw AxiomError("matrix is singular");
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
}

RowReduction row_reduce(const GradedMap& m, int degree) {
    RowReduction out;
    const auto& src = m.source()->in_degree(degree);
    const auto& tgt = m.target()->in_degree(degree + m.degree());
    if (src.empty()) return out;
    DenseMatrix d(tgt.size(), src.size());
    std::unordered_map<Index, std::size_t> row_of;
    for (std::size_t i = 0; i < tgt.size(); ++i) row_of[tgt[i]] = i;
    for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& [t, c] : m.column(src[j])) d(row_of.at(t), j) = c;
    DenseMatrix r = d;
    auto piv = rref(r);
    out.rank = piv.size();
    std::vector<bool> is_piv(src.size(), false);
    for (auto p : piv) {
        is_piv[p] = true;
        out.pivot_columns.push_back(src[p]);
        out.image.push_back(m.column(src[p]));
    }
    for (std::size_t f = 0; f < src.size(); ++f) {
        if (is_piv[f]) continue;
        CombBuilder<Index> b;
        b.add(src[f], Scalar(1));
        for (std::size_t k = 0; k < piv.size(); ++k) b.add(src[piv[k]], -r(k, f));
        out.kernel.push_back(b.build());
    }
    return out;
}

}  // namespace homotransfer
