#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "homotransfer/combination.hpp"
#include "homotransfer/scalar.hpp"

namespace homotransfer {

using Index = std::uint32_t;
using SparseVec = Combination<Index>;

struct BasisElement {
    std::string name;
    int degree = 0;
    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

// Finite graded vector space with a named, ordered basis.
class GradedBasis {
public:
    GradedBasis(std::vector<BasisElement> elements, Field field);

    std::size_t size() const { return elements_.size(); }
    const Field& field() const { return field_; }
    const BasisElement& operator[](Index i) const { return elements_[i]; }
    const std::vector<BasisElement>& elements() const { return elements_; }
    int degree(Index i) const { return elements_[i].degree; }
    const std::string& name(Index i) const { return elements_[i].name; }

    std::optional<Index> find(const std::string& name) const;
    Index at(const std::string& name) const;  // throws ParseError
    const std::vector<Index>& in_degree(int g) const;
    std::vector<int> degrees() const;  // occupied, ascending

    bool same_as(const GradedBasis& o) const;

private:
    std::vector<BasisElement> elements_;
    Field field_;
    std::unordered_map<std::string, Index> lookup_;
    std::map<int, std::vector<Index>> by_degree_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

BasisPtr make_basis(std::vector<BasisElement> elements, Field field);
// ordered pairs (i, j) with index i * |b| + j and name "x⊗y"
BasisPtr tensor_basis(const BasisPtr& a, const BasisPtr& b);
// same names with every degree shifted by k
BasisPtr shifted_basis(const BasisPtr& a, int k, const std::string& prefix);

// Degree-homogeneous linear map, stored column by column.
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(BasisPtr source, BasisPtr target, int degree);
    static GradedMap identity(const BasisPtr& b);

    const BasisPtr& source() const { return source_; }
    const BasisPtr& target() const { return target_; }
    int degree() const { return degree_; }
    const Field& field() const { return source_->field(); }

    const SparseVec& column(Index i) const { return cols_[i]; }
    void set_column(Index i, SparseVec v);  // checks degrees
    void add_entry(Index row, Index col, const Scalar& c);
    Scalar entry(Index row, Index col) const { return cols_[col].coeff(row); }

    SparseVec apply(const SparseVec& v) const;
    SparseVec apply(Index i) const { return cols_[i]; }

    bool is_zero() const;
    std::size_t nonzeros() const;
    GradedMap scaled(const Scalar& c) const;

    friend bool operator==(const GradedMap& a, const GradedMap& b);
    friend GradedMap operator+(const GradedMap& a, const GradedMap& b);
    friend GradedMap operator-(const GradedMap& a, const GradedMap& b);

private:
    BasisPtr source_, target_;
    int degree_ = 0;
    std::vector<SparseVec> cols_;
};

GradedMap compose(const GradedMap& f, const GradedMap& g);  // f after g
// (f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)
GradedMap tensor(const GradedMap& f, const GradedMap& g);
// plain transpose onto dual bases with negated degrees; the degree is kept
GradedMap transpose(const GradedMap& f, const BasisPtr& dual_target, const BasisPtr& dual_source);

struct RowReduction {
    std::size_t rank = 0;
    std::vector<Index> pivot_columns;  // source indices
    std::vector<SparseVec> kernel;     // source coordinates, echelon kernel basis
    std::vector<SparseVec> image;      // target coordinates, pivot columns of the map
};

RowReduction row_reduce(const GradedMap& m, int degree);

// Dense exact matrix used inside degree blocks.
struct DenseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Scalar> a;
    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    Scalar& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// In-place reduced row echelon form. Pivot search runs over columns in order
// and takes the first nonzero row. Returns pivot columns.
std::vector<std::size_t> rref(DenseMatrix& m);
std::size_t rank(DenseMatrix m);
// throws AxiomError when singular
DenseMatrix inverse(const DenseMatrix& m);

}  // namespace homotransfer
