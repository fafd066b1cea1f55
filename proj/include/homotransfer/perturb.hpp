#pragma once

#include <string>
#include <utility>
#include <vector>

#include "homotransfer/complexes.hpp"
#include "homotransfer/errors.hpp"
#include "homotransfer/parallel.hpp"
#include "homotransfer/words.hpp"

namespace homotransfer {

// sum_{n >= 0} step^n(start), left fold in increasing n. Throws
// SeriesDivergence when term number `max_terms` is still nonzero.
// Returns the sum and the number of nonzero terms.
template <class K, class Step>
std::pair<Combination<K>, int> neumann_series(const Combination<K>& start, Step&& step, int max_terms,
                                              const std::string& what) {
    CombBuilder<K> total;
    Combination<K> cur = start;
    int n = 0;
    while (!cur.empty()) {
        if (n >= max_terms)
            throw SeriesDivergence(what + ": series still nonzero after " + std::to_string(max_terms) + " terms");
        total.add(cur);
        ++n;
        cur = step(cur);
    }
    return {total.build(), n};
}

// Increasing filtration by non-negative levels on the basis elements of both
// complexes. A combination sits at the maximum level of its terms.
struct Filtration {
    std::vector<int> big;
    std::vector<int> small;

    int level(const SparseVec& v, bool on_big) const;
    int max_level() const;
};

struct Perturbation {
    GradedMap partial;  // degree -1 on the big complex
    int drop = 1;       // lowers the filtration by at least this much
};

struct PerturbResult {
    GradedMap D;              // transferred perturbation on the small complex
    Contraction perturbed;    // (big, d + ∂) ⇄ (small, d + D) with ∇_∂, π_∂, h_∂
    int terms = 0;            // longest series actually summed
};

// Ordinary perturbation lemma on materialized maps:
//   D   = sum π∂(-h∂)^n ∇   (checked against π sum (-∂h)^n ∂∇)
//   ∇_∂ = sum (-h∂)^n ∇,  π_∂ = sum π(-∂h)^n,  h_∂ = sum (-h∂)^n h.
// Columns are evaluated independently; exec picks the serial or the parallel
// schedule, the result is the same.
PerturbResult perturb(const Contraction& c, const Perturbation& p, const Filtration& f, int cap,
                      Exec exec = Exec::parallel);

// Word-length filtration, one level per word in basis order.
std::vector<int> word_length_levels(const std::vector<Word>& words);

}  // namespace homotransfer
