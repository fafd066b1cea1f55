#include "homotransfer/words.hpp"

#include <unordered_map>

#include "homotransfer/errors.hpp"

namespace homotransfer {

Word::Word(std::initializer_list<Index> letters) {
    for (Index x : letters) push_back(x);
}

void Word::push_back(Index x) {
    if (n_ >= kMaxWordLength) throw ResourceError("word length exceeds " + std::to_string(kMaxWordLength));
    if (x > 0xFFFF) throw ResourceError("letter index out of range");
    l_[n_++] = static_cast<std::uint16_t>(x);
}

Word Word::slice(std::size_t a, std::size_t b) const {
    Word r;
    for (std::size_t i = a; i < b; ++i) r.l_[r.n_++] = l_[i];
    return r;
}

Word Word::splice(std::size_t r, std::size_t len, const Word& v) const {
    Word out = slice(0, r);
    for (std::size_t i = 0; i < v.n_; ++i) out.push_back(v.l_[i]);
    for (std::size_t i = r + len; i < n_; ++i) out.push_back(l_[i]);
    return out;
}

Word operator+(const Word& a, const Word& b) {
    Word r = a;
    for (std::size_t i = 0; i < b.n_; ++i) r.push_back(b.l_[i]);
    return r;
}

bool operator==(const Word& a, const Word& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.n_; ++i)
        if (a.l_[i] != b.l_[i]) return false;
    return true;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    for (std::size_t i = 0; i < a.n_; ++i)
        if (a.l_[i] != b.l_[i]) return a.l_[i] <=> b.l_[i];
    return std::strong_ordering::equal;
}

std::size_t Word::hash() const {
    std::size_t h = 1469598103934665603ULL ^ n_;
    for (std::size_t i = 0; i < n_; ++i) {
        h ^= l_[i];
        h *= 1099511628211ULL;
    }
    return h;
}

int word_degree(const Word& w, const GradedBasis& letters) {
    int d = 0;
    for (std::size_t i = 0; i < w.size(); ++i) d += letters.degree(w[i]);
    return d;
}

std::string word_name(const Word& w, const GradedBasis& letters) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "|";
        s += letters.name(w[i]);
    }
    return s + "]";
}

std::vector<Word> words_of_length(std::size_t k, std::size_t n) {
    std::vector<Word> out;
    if (k == 0) return out;
    if (n > kMaxWordLength) throw ResourceError("word length exceeds " + std::to_string(kMaxWordLength));
    std::vector<Index> idx(n, 0);
    while (true) {
        Word w;
        for (Index x : idx) w.push_back(x);
        out.push_back(w);
        std::size_t p = n;
        while (p > 0 && ++idx[p - 1] == k) idx[--p] = 0;
        if (p == 0) break;
    }
    return out;
}

WordSpace::WordSpace(BasisPtr letters, int max_arity) : letters_(std::move(letters)), n_(max_arity) {
    if (max_arity < 1) throw ResourceError("maximal arity must be positive");
    for (int len = 1; len <= max_arity; ++len)
        for (auto& w : words_of_length(letters_->size(), static_cast<std::size_t>(len))) words_.push_back(w);
}

BasisPtr WordSpace::materialize() const {
    std::vector<BasisElement> el;
    el.reserve(words_.size());
    for (const auto& w : words_) el.push_back({word_name(w, *letters_), degree(w)});
    return make_basis(std::move(el), letters_->field());
}

Index WordSpace::index_of(const Word& w) const {
    // shortlex position: offset of the length block plus base-k value
    const std::size_t k = letters_->size();
    std::size_t off = 0, pw = 1;
    for (std::size_t len = 1; len < w.size(); ++len) {
        pw *= k;
        off += pw;
    }
    std::size_t v = 0;
    for (std::size_t i = 0; i < w.size(); ++i) v = v * k + w[i];
    return static_cast<Index>(off + v);
}

WordComb apply_tensor(const Word& w, const GradedBasis& in_letters, const std::vector<const GradedMap*>& maps) {
    if (maps.size() != w.size()) throw StructuralError("apply_tensor: arity mismatch");
    long long e = 0;
    int pre = 0;
    std::vector<std::pair<Word, Scalar>> cur{{Word(), Scalar(1)}};
    for (std::size_t i = 0; i < w.size(); ++i) {
        e += koszul_exponent(maps[i]->degree(), pre);
        pre += in_letters.degree(w[i]);
        const SparseVec& img = maps[i]->column(w[i]);
        if (img.empty()) return WordComb();
        std::vector<std::pair<Word, Scalar>> next;
        next.reserve(cur.size() * img.size());
        for (const auto& [u, c] : cur)
            for (const auto& [y, d] : img) {
                Word v = u;
                v.push_back(y);
                next.emplace_back(v, c * d);
            }
        cur.swap(next);
    }
    CombBuilder<Word> b;
    const Scalar s = koszul(e);
    for (const auto& [u, c] : cur) b.add(u, s * c);
    return b.build();
}

WordComb tensor_power(const GradedMap& f, const Word& w) {
    std::vector<const GradedMap*> maps(w.size(), &f);
    return apply_tensor(w, *f.source(), maps);
}

WordComb tensor_power(const GradedMap& f, const WordComb& v) {
    return apply_linear(v, [&](const Word& w) { return tensor_power(f, w); });
}

WordComb extend_linear(const GradedMap& f, const Word& w) {
    CombBuilder<Word> b;
    int pre = 0;
    for (std::size_t r = 0; r < w.size(); ++r) {
        const Scalar s = koszul(koszul_exponent(f.degree(), pre));
        for (const auto& [y, c] : f.column(w[r])) b.add(w.splice(r, 1, Word{y}), s * c);
        pre += f.source()->degree(w[r]);
    }
    return b.build();
}

WordComb tensor_trick_homotopy(const GradedMap& h, const GradedMap& np, const Word& w) {
    const std::size_t n = w.size();
    // suffix[i] = (nabla pi)^{⊗(n-i)} applied to w[i..n); degree 0, so no signs
    std::vector<std::vector<std::pair<Word, Scalar>>> suffix(n + 1);
    suffix[n] = {{Word(), Scalar(1)}};
    for (std::size_t i = n; i-- > 0;) {
        const SparseVec& img = np.column(w[i]);
        auto& out = suffix[i];
        for (const auto& [y, c] : img)
            for (const auto& [u, d] : suffix[i + 1]) out.emplace_back(Word{y} + u, c * d);
        if (out.empty()) {
            // everything to the left needs this factor
            for (std::size_t j = 0; j < i; ++j) suffix[j].clear();
            break;
        }
    }
    CombBuilder<Word> b;
    int pre = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& suf = suffix[i + 1];
        if (!suf.empty()) {
            const Scalar s = koszul(koszul_exponent(h.degree(), pre));
            const Word left = w.slice(0, i);
            for (const auto& [y, c] : h.column(w[i]))
                for (const auto& [u, d] : suf) {
                    Word v = left;
                    v.push_back(y);
                    b.add(v + u, s * c * d);
                }
        }
        pre += h.source()->degree(w[i]);
    }
    return b.build();
}

WordComb shuffle_product(const Word& u, const Word& v, const GradedBasis& letters) {
    CombBuilder<Word> b;
    const std::size_t p = u.size(), q = v.size();
    // choose positions of u's letters by walking a lattice path
    struct State {
        std::size_t i, j;
        Word w;
        long long e;
    };
    std::vector<State> stack{{0, 0, Word(), 0}};
    while (!stack.empty()) {
        State s = stack.back();
        stack.pop_back();
        if (s.i == p && s.j == q) {
            b.add(s.w, koszul(s.e));
            continue;
        }
        if (s.i < p) {
            // u_i moves left past the v letters already placed: sign accounted when v moves
            State t = s;
            t.w.push_back(u[s.i]);
            ++t.i;
            stack.push_back(t);
        }
        if (s.j < q) {
            State t = s;
            t.w.push_back(v[s.j]);
            // v_j jumps over the remaining u letters u_i..u_{p-1}
            int passed = 0;
            for (std::size_t k = s.i; k < p; ++k) passed += letters.degree(u[k]);
            t.e += koszul_exponent(letters.degree(v[s.j]), passed);
            ++t.j;
            stack.push_back(t);
        }
    }
    return b.build();
}

}  // namespace homotransfer
