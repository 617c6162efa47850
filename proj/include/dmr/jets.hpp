#pragma once

#include "dmr/ratfunc.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dmr {

/// Jet variable: the order-th xi-derivative of the level-th slow field.
/// The algebra restricts to order >= 1; the formal degree is
/// order + 2*level - 1.
struct JetVar {
    int level = 1;
    int order = 1;

    int degree() const { return order + 2 * level - 1; }

    bool operator==(const JetVar& o) const { return level == o.level && order == o.order; }
    /// Canonical factor order inside a monomial: level descending, order
    /// descending.
    static bool factor_before(const JetVar& x, const JetVar& y) {
        if (x.level != y.level) return x.level > y.level;
        return x.order > y.order;
    }
};

/// Product of jet variables with positive exponents, factors kept in
/// canonical order.
class DiffMonomial {
  public:
    using Factor = std::pair<JetVar, int>;

    DiffMonomial() = default;
    static DiffMonomial one() { return DiffMonomial(); }
    static DiffMonomial jet(int level, int order, int exp = 1);

    const std::vector<Factor>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    int degree() const;
    int max_level() const;
    bool contains_level(int level) const;
    int exponent_of(const JetVar& v) const;

    DiffMonomial times(const JetVar& v, int exp) const;
    DiffMonomial times(const DiffMonomial& o) const;
    /// Remove one power of v; v must be present.
    DiffMonomial divide_once(const JetVar& v) const;

    bool operator==(const DiffMonomial& o) const { return f_ == o.f_; }
    /// Graded-lexicographic order.
    static bool less(const DiffMonomial& x, const DiffMonomial& y);

    std::string str() const;

  private:
    std::vector<Factor> f_;
};

struct MonoLess {
    bool operator()(const DiffMonomial& x, const DiffMonomial& y) const {
        return DiffMonomial::less(x, y);
    }
};

class LinDiffOp;

/// Differential polynomial: finite sum of monomials in jet variables with
/// Q(h) coefficients. Zero coefficients are never stored.
class DiffPoly {
  public:
    using TermMap = std::map<DiffMonomial, RatFunc, MonoLess>;

    DiffPoly() = default;
    static DiffPoly zero() { return DiffPoly(); }
    static DiffPoly constant(const RatFunc& c);
    static DiffPoly jet(int level, int order);
    static DiffPoly monomial(const DiffMonomial& m, const RatFunc& c);

    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t support_size() const { return t_.size(); }
    RatFunc coeff(const DiffMonomial& m) const;
    void add_term(const DiffMonomial& m, const RatFunc& c);

    DiffPoly operator+(const DiffPoly& o) const;
    DiffPoly operator-(const DiffPoly& o) const;
    DiffPoly operator*(const DiffPoly& o) const;
    DiffPoly operator-() const;
    DiffPoly scaled(const RatFunc& s) const;
    bool operator==(const DiffPoly& o) const { return t_ == o.t_; }
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }

    int max_level() const;
    /// Degree when homogeneous (constants count as degree 0), nullopt
    /// otherwise.
    std::optional<int> homogeneous_degree() const;
    std::map<int, DiffPoly> homogeneous_components() const;
    /// Terms that contain at least one jet of the given level.
    DiffPoly part_with_level(int level) const;
    DiffPoly part_without_level(int level) const;

    std::string str() const;
    static DiffPoly parse(std::string_view text);

  private:
    TermMap t_;
};

/// Total xi-derivative (Leibniz rule; raises homogeneous degree by one).
DiffPoly derive_xi(const DiffPoly& p);
DiffPoly derive_xi(const DiffPoly& p, int times);

/// Exact formal antiderivative with zero integration constant, solved by
/// linear algebra over the graded bases. Throws NotExact if p is not a
/// total xi-derivative within the order >= 1 algebra.
DiffPoly integrate_xi(const DiffPoly& p);

/// Linear differential operator sum_k coeff_k * d_xi^k with differential
/// polynomial coefficients.
class LinDiffOp {
  public:
    LinDiffOp() = default;

    const std::map<int, DiffPoly>& coeffs() const { return c_; }
    void add(int k, const DiffPoly& p);
    bool is_zero() const { return c_.empty(); }

    DiffPoly apply(const DiffPoly& v) const;
    /// Feed the bare field of the given level through the operator:
    /// sum_k coeff_k * jet(level, k + shift). Every resulting jet must have
    /// order >= 1.
    DiffPoly apply_to_field(int level, int shift = 0) const;

    LinDiffOp operator+(const LinDiffOp& o) const;
    LinDiffOp operator-() const;
    bool operator==(const LinDiffOp& o) const { return c_ == o.c_; }

    std::string str() const;

  private:
    std::map<int, DiffPoly> c_;
};

/// Frechet derivative of p with respect to the level-th field:
/// v -> d/dtheta p[phi_level -> phi_level + theta v] at theta = 0.
LinDiffOp frechet(const DiffPoly& p, int level);

/// Frechet derivative in the once-integrated picture, where the direction
/// field enters through jets shifted down by one xi-derivative. Operator
/// orders may include zero.
LinDiffOp frechet_shifted(const DiffPoly& p, int level);

/// Prolonged slow-time derivation: every jet of level j is replaced via the
/// chain rule by the xi-derivatives of flows.at(j). Throws MissingFlow when
/// a needed level is absent.
DiffPoly evolutionary_derive(const DiffPoly& p, const std::map<int, DiffPoly>& flows);

} // namespace dmr
