#pragma once

#include "dmr/ratfunc.hpp"

#include <map>
#include <vector>

namespace dmr::series {

/// Coefficient in the quadratic extension Q(h) + Q(h)*zeta with
/// zeta^2 = Z for a configured Z in Q(h). Shift expansions contribute one
/// zeta per kappa-derivative; only even powers survive the +/- shift
/// symmetrization, so every assembled residual coefficient has zero odd
/// part. Carrying the odd part exactly is what lets both lattice gauges
/// (zeta = h and zeta^2 = h^2/(1-h^2)) run over Q(h).
struct ZetaExt {
    RatFunc even;
    RatFunc odd;

    static ZetaExt of(const RatFunc& e) { return {e, RatFunc()}; }
    static ZetaExt zeta(const RatFunc& scale) { return {RatFunc(), scale}; }
    bool is_zero() const { return even.is_zero() && odd.is_zero(); }

    ZetaExt operator+(const ZetaExt& o) const { return {even + o.even, odd + o.odd}; }
    ZetaExt operator-(const ZetaExt& o) const { return {even - o.even, odd - o.odd}; }
    ZetaExt operator-() const { return {-even, -odd}; }
    bool operator==(const ZetaExt& o) const { return even == o.even && odd == o.odd; }

    ZetaExt mul(const ZetaExt& o, const RatFunc& zeta_sq) const {
        return {even * o.even + zeta_sq * (odd * o.odd), even * o.odd + odd * o.even};
    }
};

/// Extended jet variable: d_kappa^kappa d_{t1}^{d1} d_{t2}^{d2} ... applied
/// to nu^(level) or phi^(level).
struct ExtVar {
    enum class Field : uint8_t { nu, phi };

    Field kind = Field::phi;
    int level = 1;
    int kappa = 0;
    std::vector<int> tder; // tder[m-1] = order of d_{t_m}; trailing zeros trimmed

    int weight() const;
    bool has_tder() const { return !tder.empty(); }
    int tder_at(int m) const;
    /// Highest slow-time index with a nonzero derivative order, 0 if none.
    int top_time() const { return static_cast<int>(tder.size()); }

    ExtVar with_kappa(int delta) const;
    ExtVar with_tder(int m, int delta) const;

    bool operator==(const ExtVar& o) const;
    static bool less(const ExtVar& x, const ExtVar& y);

    std::string str() const;
};

class ExtMonomial {
  public:
    using Factor = std::pair<ExtVar, int>;

    ExtMonomial() = default;
    static ExtMonomial one() { return ExtMonomial(); }
    static ExtMonomial var(const ExtVar& v);

    const std::vector<Factor>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    int weight() const;

    ExtMonomial times(const ExtVar& v, int exp) const;
    ExtMonomial times(const ExtMonomial& o) const;
    ExtMonomial divide_once(const ExtVar& v) const;

    bool operator==(const ExtMonomial& o) const { return f_ == o.f_; }
    static bool less(const ExtMonomial& x, const ExtMonomial& y);

    std::string str() const;

  private:
    std::vector<Factor> f_;
};

struct ExtMonoLess {
    bool operator()(const ExtMonomial& x, const ExtMonomial& y) const {
        return ExtMonomial::less(x, y);
    }
};

/// Polynomial in extended jet variables over the zeta extension.
class ExtPoly {
  public:
    using TermMap = std::map<ExtMonomial, ZetaExt, ExtMonoLess>;

    ExtPoly() = default;
    static ExtPoly constant(const ZetaExt& c);
    static ExtPoly variable(const ExtVar& v);

    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    void add_term(const ExtMonomial& m, const ZetaExt& c);
    ZetaExt coeff(const ExtMonomial& m) const;

    ExtPoly operator+(const ExtPoly& o) const;
    ExtPoly operator-(const ExtPoly& o) const;
    ExtPoly operator-() const;
    ExtPoly mul(const ExtPoly& o, const RatFunc& zeta_sq) const;
    ExtPoly scaled(const ZetaExt& s, const RatFunc& zeta_sq) const;
    bool operator==(const ExtPoly& o) const { return t_ == o.t_; }

    /// Formal derivations (Leibniz): d_kappa raises kappa, dt(m) raises the
    /// m-th slow-time order.
    ExtPoly dkappa() const;
    ExtPoly dt(int m) const;

    std::string str() const;

  private:
    TermMap t_;
};

/// Truncated formal power series in eps; coefficient of eps^k is an
/// ExtPoly. All arithmetic is exact.
class EpsSeries {
  public:
    EpsSeries(int truncation, const RatFunc& zeta_sq);

    int truncation() const { return n_; }
    const RatFunc& zeta_sq() const { return z_; }
    const ExtPoly& at(int k) const;
    void set(int k, ExtPoly p);
    void add(int k, const ExtPoly& p);
    /// Lowest eps power with a nonzero coefficient, or truncation+1.
    int min_order() const;

    EpsSeries operator+(const EpsSeries& o) const;
    EpsSeries operator-(const EpsSeries& o) const;
    EpsSeries operator*(const EpsSeries& o) const;
    EpsSeries scaled(const ZetaExt& s) const;
    EpsSeries scaled(const RatFunc& s) const { return scaled(ZetaExt::of(s)); }

    /// Multiplicative inverse; requires the eps^0 term to be the constant 1.
    EpsSeries reciprocal() const;

  private:
    void check_compatible(const EpsSeries& o) const;
    int n_;
    RatFunc z_;
    std::vector<ExtPoly> c_;
};

/// Analytic composition kernels with exact rational Taylor coefficients:
/// sqrt1p(s) = sqrt(1+s), sin, cos.
struct AnalyticKernel {
    enum class Name { sqrt1p, sin, cos };
    Name name;

    Rational taylor_coeff(int p) const;
    static AnalyticKernel sqrt1p() { return {Name::sqrt1p}; }
    static AnalyticKernel sin() { return {Name::sin}; }
    static AnalyticKernel cos() { return {Name::cos}; }
};

/// Taylor composition k(s), truncated exactly. The argument must have no
/// eps^0 term (NonSmallArgument otherwise).
EpsSeries compose(const AnalyticKernel& k, const EpsSeries& s);

/// Shift and time expansions around the constant background (nu = 1,
/// phi = -sigma t). Shifts act through the formal kappa-derivative; each
/// kappa-derivative carries one factor of (direction * zeta).
///
/// nu_shift: full series of nu_{n+dir} including the background 1.
/// phi_fluct_shift: shifted phi fluctuation (background excluded; it cancels
/// in every difference the models use).
/// beta: phi_{n+dir} - phi_n (k >= 1 part; background cancels).
EpsSeries nu_shift(int dir, int truncation, const RatFunc& zeta_sq);
EpsSeries nu_unshifted(int truncation, const RatFunc& zeta_sq);
EpsSeries phi_fluct_shift(int dir, int truncation, const RatFunc& zeta_sq);
EpsSeries beta(int dir, int truncation, const RatFunc& zeta_sq);

/// d_t expansions: d_t = sum_m eps^{2m-1} d_{t_m}. For phi the background
/// contributes the constant -sigma at eps^0.
EpsSeries dt_nu(int truncation, const RatFunc& zeta_sq);
EpsSeries dt_phi(int truncation, const RatFunc& zeta_sq, int sigma);

} // namespace dmr::series
