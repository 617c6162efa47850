#pragma once

#include "dmr/rational.hpp"

#include <vector>

namespace dmr {

/// Dense univariate polynomial in the lattice spacing h over Rational.
/// Trailing zero coefficients are trimmed; the zero polynomial has an
/// empty coefficient vector and degree -1.
class HPoly {
  public:
    HPoly() = default;
    explicit HPoly(const Rational& c);
    explicit HPoly(std::vector<Rational> coeffs);

    static HPoly h(int power = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& operator[](int k) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& leading() const;

    HPoly operator+(const HPoly& o) const;
    HPoly operator-(const HPoly& o) const;
    HPoly operator*(const HPoly& o) const;
    HPoly operator-() const;
    bool operator==(const HPoly& o) const { return c_ == o.c_; }

    HPoly scaled(const Rational& s) const;
    HPoly monic() const;

    Rational eval(const Rational& h0) const;

    /// Exact division with remainder; divisor must be nonzero.
    static std::pair<HPoly, HPoly> divrem(const HPoly& a, const HPoly& b);
    /// Monic gcd.
    static HPoly gcd(HPoly a, HPoly b);

  private:
    void trim();
    std::vector<Rational> c_;
};

} // namespace dmr
