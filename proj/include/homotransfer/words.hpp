#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "homotransfer/combination.hpp"
#include "homotransfer/linalg.hpp"

namespace homotransfer {

inline constexpr std::size_t kMaxWordLength = 16;

// Tensor word of basis letters, at most kMaxWordLength long. Ordered
// shortlex (length first, then lexicographic).
class Word {
public:
    Word() = default;
    Word(std::initializer_list<Index> letters);
    static Word letter(Index x) { return Word{x}; }

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }
    Index operator[](std::size_t i) const { return l_[i]; }
    void push_back(Index x);
    Word slice(std::size_t a, std::size_t b) const;
    // w[0,r) + v + w[r+len, n)
    Word splice(std::size_t r, std::size_t len, const Word& v) const;
    friend Word operator+(const Word& a, const Word& b);

    friend bool operator==(const Word& a, const Word& b);
    friend std::strong_ordering operator<=>(const Word& a, const Word& b);
    std::size_t hash() const;

private:
    std::array<std::uint16_t, kMaxWordLength> l_{};
    std::uint8_t n_ = 0;
};

struct WordHash {
    std::size_t operator()(const Word& w) const { return w.hash(); }
};

using WordComb = Combination<Word>;

// sum of letter degrees
int word_degree(const Word& w, const GradedBasis& letters);
std::string word_name(const Word& w, const GradedBasis& letters);
// all words of exactly length n in k letters, lexicographic
std::vector<Word> words_of_length(std::size_t k, std::size_t n);

// Koszul exponent for moving a map of degree `map_degree` past an element of
// degree `passed`. The only place where sign exponents are formed.
inline long long koszul_exponent(int map_degree, int passed) {
    return static_cast<long long>(map_degree) * passed;
}

// Words of length 1..N in a letter basis.
class WordSpace {
public:
    WordSpace(BasisPtr letters, int max_arity);
    const BasisPtr& letters() const { return letters_; }
    int max_arity() const { return n_; }
    int degree(const Word& w) const { return word_degree(w, *letters_); }
    // words of length 1..N in shortlex order, named "[a|b|c]"
    BasisPtr materialize() const;
    const std::vector<Word>& words() const { return words_; }
    Index index_of(const Word& w) const;

private:
    BasisPtr letters_;
    int n_;
    std::vector<Word> words_;
};

// Koszul-signed tensor product of per-position letter maps applied to w.
// maps[i] acts on w[i]; all maps go letters -> letters.
WordComb apply_tensor(const Word& w, const GradedBasis& in_letters, const std::vector<const GradedMap*>& maps);
// f^{⊗n}
WordComb tensor_power(const GradedMap& f, const Word& w);
WordComb tensor_power(const GradedMap& f, const WordComb& v);
// sum_r Id^r ⊗ f ⊗ Id^{n-r-1}
WordComb extend_linear(const GradedMap& f, const Word& w);
// sum_i Id^i ⊗ h ⊗ (nabla pi)^{rest}; h acts on `letters`, np = nabla∘pi
WordComb tensor_trick_homotopy(const GradedMap& h, const GradedMap& np, const Word& w);

// Signed sum over (|u|,|v|)-shuffles; letter degrees from `letters`.
WordComb shuffle_product(const Word& u, const Word& v, const GradedBasis& letters);

template <class F>
WordComb apply_linear(const WordComb& v, F&& f) {
    CombBuilder<Word> b;
    for (const auto& [w, c] : v) b.add(f(w), c);
    return b.build();
}

}  // namespace homotransfer
