#include "stochlab/power_series.hpp"

#include <algorithm>
#include <stdexcept>

namespace stochlab {

PowerSeries::PowerSeries(std::vector<BigRational> coeff, unsigned order) : coeff_(std::move(coeff)) {
    coeff_.resize(order + 1, BigRational(0));
}

PowerSeries PowerSeries::constant(const BigRational& c, unsigned order) {
    PowerSeries s(order);
    s.coeff_[0] = c;
    return s;
}

PowerSeries PowerSeries::identity(unsigned order) {
    PowerSeries s(order);
    if (order >= 1) s.coeff_[1] = 1;
    return s;
}

const BigRational& PowerSeries::coeff(unsigned k) const {
    if (k >= coeff_.size()) throw std::out_of_range("power series: coefficient beyond order");
    return coeff_[k];
}

BigRational& PowerSeries::coeff(unsigned k) {
    if (k >= coeff_.size()) throw std::out_of_range("power series: coefficient beyond order");
    return coeff_[k];
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& rhs) {
    std::size_t n = std::min(coeff_.size(), rhs.coeff_.size());
    coeff_.resize(n);
    for (std::size_t k = 0; k < n; ++k) coeff_[k] += rhs.coeff_[k];
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& rhs) {
    std::size_t n = std::min(coeff_.size(), rhs.coeff_.size());
    coeff_.resize(n);
    for (std::size_t k = 0; k < n; ++k) coeff_[k] -= rhs.coeff_[k];
    return *this;
}

BigRational PowerSeries::evaluate(const BigRational& x) const {
    BigRational acc = 0;
    for (std::size_t k = coeff_.size(); k-- > 0;) acc = acc * x + coeff_[k];
    return acc;
}

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
    unsigned order = std::min(a.order(), b.order());
    PowerSeries out(order);
    for (unsigned i = 0; i <= order; ++i) {
        if (a.coeff(i) == 0) continue;
        for (unsigned j = 0; i + j <= order; ++j) {
            if (b.coeff(j) == 0) continue;
            out.coeff(i + j) += a.coeff(i) * b.coeff(j);
        }
    }
    return out;
}

PowerSeries series_compose(const PowerSeries& a, const PowerSeries& b) {
    if (b.coeff(0) != 0)
        throw std::invalid_argument("series_compose: inner series must have zero constant term");
    unsigned order = std::min(a.order(), b.order());
    // Horner over the outer coefficients; every product is truncated at `order`.
    PowerSeries acc = PowerSeries::constant(a.coeff(std::min(a.order(), order)), order);
    for (unsigned k = std::min(a.order(), order); k-- > 0;) {
        acc = series_mul(acc, b);
        acc.coeff(0) += a.coeff(k);
    }
    return acc;
}

unsigned polynomial_degree(const PowerSeries& a) {
    for (unsigned k = a.order() + 1; k-- > 0;) {
        if (a.coeff(k) != 0) return k;
    }
    return 0;
}

PowerSeries polynomial_compose(const PowerSeries& a, const PowerSeries& b, unsigned order) {
    unsigned deg = polynomial_degree(a) * polynomial_degree(b);
    if (deg > order)
        throw std::invalid_argument("polynomial_compose: composed degree exceeds order budget");
    PowerSeries acc = PowerSeries::constant(a.coeff(polynomial_degree(a)), order);
    for (unsigned k = polynomial_degree(a); k-- > 0;) {
        PowerSeries bb(order);
        for (unsigned j = 0; j <= std::min(b.order(), order); ++j) bb.coeff(j) = b.coeff(j);
        acc = series_mul(acc, bb);
        acc.coeff(0) += a.coeff(k);
    }
    return acc;
}

} // namespace stochlab
