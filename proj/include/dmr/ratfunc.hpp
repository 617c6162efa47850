#pragma once

#include "dmr/hpoly.hpp"

#include <string>
#include <string_view>

namespace dmr {

/// Element of Q(h): normalized quotient of two h-polynomials.
/// Canonical form: gcd(num, den) = 1, den monic, zero is 0/1.
/// Structural equality is semantic equality.
class RatFunc {
  public:
    RatFunc() : num_(), den_(HPoly(Rational(1))) {}
    RatFunc(const HPoly& num, const HPoly& den);

    static RatFunc from_int(long v);
    static RatFunc from_rational(const Rational& q);
    static RatFunc h(int power = 1);

    const HPoly& num() const { return num_; }
    const HPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc inverse() const;
    RatFunc pow(int e) const;

    /// Exact evaluation at a rational point; throws PoleAtPoint on a
    /// denominator root.
    Rational eval_at(const Rational& h0) const;

    /// Combined degree used for pivot selection in exact elimination.
    int total_degree() const { return std::max(num_.degree(), 0) + den_.degree(); }

    /// Canonical text form: integer coefficients, descending powers,
    /// e.g. "(-h^2+3)/24", "h/2", "h+1", "0".
    std::string str() const;
    static RatFunc parse(std::string_view text);

    /// Deterministic total order (degree, then coefficient-wise); used for
    /// stable sorting of constraint lists.
    static int cmp(const RatFunc& x, const RatFunc& y);

  private:
    HPoly num_, den_;
    void normalize();
};

RatFunc operator*(const Rational& s, const RatFunc& f);

/// Model sign parameters. sigma and c_sign are +1 or -1; zeta_equals_h
/// records whether the slow-space gauge is the plain zeta = h choice
/// (true for the focusing DNLS reduction).
struct SignParams {
    int sigma = +1;
    int c_sign = +1;
    bool zeta_equals_h = true;
};

} // namespace dmr
