#pragma once

#include "stochlab/rational.hpp"

#include <vector>

namespace stochlab {

// Truncated generating function with exact rational coefficients.
// coefficients()[k] is the coefficient of x^k; size is order()+1.
class PowerSeries {
  public:
    static constexpr unsigned kDefaultOrder = 128;

    explicit PowerSeries(unsigned order = kDefaultOrder)
        : coeff_(order + 1, BigRational(0)) {}
    PowerSeries(std::vector<BigRational> coeff, unsigned order);

    static PowerSeries constant(const BigRational& c, unsigned order = kDefaultOrder);
    static PowerSeries identity(unsigned order = kDefaultOrder); // x

    unsigned order() const { return static_cast<unsigned>(coeff_.size()) - 1; }
    const BigRational& coeff(unsigned k) const;
    BigRational& coeff(unsigned k);
    const std::vector<BigRational>& coefficients() const { return coeff_; }

    PowerSeries& operator+=(const PowerSeries& rhs);
    PowerSeries& operator-=(const PowerSeries& rhs);
    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        return a.coeff_ == b.coeff_;
    }

    BigRational evaluate(const BigRational& x) const;

  private:
    std::vector<BigRational> coeff_;
};

// Truncated Cauchy product; the result keeps the smaller of the two orders.
PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);

// a(b(x)), truncated. Requires b's constant term to be zero, else the
// truncated coefficients would be wrong for a genuine power series.
PowerSeries series_compose(const PowerSeries& a, const PowerSeries& b);

// a(b(x)) for polynomials: exact even when b(0) != 0, provided
// deg(a)*deg(b) fits inside the order budget; throws otherwise.
PowerSeries polynomial_compose(const PowerSeries& a, const PowerSeries& b, unsigned order);

unsigned polynomial_degree(const PowerSeries& a);

} // namespace stochlab
