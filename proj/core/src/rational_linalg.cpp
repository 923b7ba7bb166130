#include "stochlab/rational_linalg.hpp"

#include <stdexcept>

namespace stochlab {

std::vector<BigRational> solve_rational(RationalMatrix a, std::vector<BigRational> b) {
    const std::size_t n = a.size();
    if (n == 0 || b.size() != n) throw std::invalid_argument("solve_rational: shape mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) throw std::runtime_error("solve_rational: singular matrix");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            BigRational f = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    std::vector<BigRational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

std::vector<std::vector<BigRational>> null_space(RationalMatrix a) {
    if (a.empty()) return {};
    const std::size_t rows = a.size();
    const std::size_t cols = a[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[r]);
        BigRational inv = a[r][c];
        for (std::size_t k = c; k < cols; ++k) a[r][k] /= inv;
        for (std::size_t row = 0; row < rows; ++row) {
            if (row == r || a[row][c] == 0) continue;
            BigRational f = a[row][c];
            for (std::size_t k = c; k < cols; ++k) a[row][k] -= f * a[r][k];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<BigRational>> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<BigRational> v(cols, BigRational(0));
        v[free_c] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace stochlab
