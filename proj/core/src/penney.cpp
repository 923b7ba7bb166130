#include "stochlab/penney.hpp"

#include "stochlab/rational_linalg.hpp"

#include <map>
#include <stdexcept>

namespace stochlab {

Pattern make_pattern(const std::string& symbols) {
    if (symbols.empty() || symbols.size() > 32)
        throw std::invalid_argument("pattern: length must be 1..32");
    for (char c : symbols) {
        if (c != 'H' && c != 'T') throw std::invalid_argument("pattern: symbols must be H or T");
    }
    return Pattern{symbols};
}

std::vector<BigRational> penney_multi(const std::vector<Pattern>& patterns) {
    const std::size_t m = patterns.size();
    if (m < 2) throw std::invalid_argument("penney: need at least two patterns");
    for (std::size_t i = 0; i < m; ++i) {
        make_pattern(patterns[i].symbols);
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            if (patterns[j].symbols.find(patterns[i].symbols) != std::string::npos)
                throw std::invalid_argument("penney: pattern contained in another (degenerate game)");
        }
    }

    // States: every proper prefix of every pattern (including the empty
    // prefix). Appending a coin symbol moves to the longest suffix that is
    // again a prefix, or absorbs when a full pattern appears. With the
    // substring-free precondition a full-pattern suffix is unique.
    std::map<std::string, std::size_t> state_id;
    std::vector<std::string> states;
    for (const auto& p : patterns) {
        for (std::size_t len = 0; len < p.symbols.size(); ++len) {
            std::string prefix = p.symbols.substr(0, len);
            if (state_id.emplace(prefix, states.size()).second) states.push_back(prefix);
        }
    }
    const std::size_t n = states.size();

    struct Move {
        bool absorbed;
        std::size_t target; // state index or winning pattern index
    };
    auto step = [&](const std::string& s, char c) -> Move {
        std::string t = s + c;
        for (std::size_t start = 0; start < t.size(); ++start) {
            std::string suffix = t.substr(start);
            for (std::size_t j = 0; j < m; ++j) {
                if (suffix == patterns[j].symbols) return {true, j};
            }
            auto it = state_id.find(suffix);
            if (it != state_id.end()) return {false, it->second};
        }
        return {false, state_id.at(std::string{})};
    };

    // For each pattern j solve w_j(s) = sum_c (1/2) [absorb_j + w_j(next)].
    std::vector<BigRational> result(m, BigRational(0));
    const BigRational half(1, 2);
    for (std::size_t j = 0; j < m; ++j) {
        RationalMatrix a(n, std::vector<BigRational>(n, BigRational(0)));
        std::vector<BigRational> b(n, BigRational(0));
        for (std::size_t s = 0; s < n; ++s) {
            a[s][s] += 1;
            for (char c : {'H', 'T'}) {
                Move mv = step(states[s], c);
                if (mv.absorbed) {
                    if (mv.target == j) b[s] += half;
                } else {
                    a[s][mv.target] -= half;
                }
            }
        }
        result[j] = solve_rational(std::move(a), std::move(b))[state_id.at(std::string{})];
    }

    BigRational total = 0;
    for (const auto& r : result) total += r;
    if (total != 1) throw std::logic_error("penney: win probabilities do not sum to 1");
    return result;
}

BigRational penney_win_probability(const Pattern& a, const Pattern& b) {
    return penney_multi({a, b})[0];
}

} // namespace stochlab
