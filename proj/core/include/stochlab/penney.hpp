#pragma once

#include "stochlab/rational.hpp"

#include <string>
#include <vector>

namespace stochlab {

// Binary pattern over {H, T} for first-occurrence races; length 1..32.
struct Pattern {
    std::string symbols;
};

Pattern make_pattern(const std::string& symbols);

// Exact win probabilities in a fair-coin first-occurrence race, solved on
// the pattern-prefix absorbing chain in rational arithmetic. Patterns must
// be pairwise distinct and substring-free. The returned probabilities sum
// to exactly 1.
std::vector<BigRational> penney_multi(const std::vector<Pattern>& patterns);

// Win probability of pattern A against pattern B.
BigRational penney_win_probability(const Pattern& a, const Pattern& b);

} // namespace stochlab
