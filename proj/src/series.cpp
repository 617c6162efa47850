#include "dmr/series.hpp"
#include "dmr/errors.hpp"

#include <algorithm>
#include <cassert>

namespace dmr::series {

// ----------------------------------------------------------------- ExtVar

int ExtVar::weight() const {
    int w = (kind == Field::nu ? 2 * level : 2 * level - 1) + kappa;
    for (size_t m = 1; m <= tder.size(); ++m) w += tder[m - 1] * (2 * static_cast<int>(m) - 1);
    return w;
}

int ExtVar::tder_at(int m) const {
    if (m < 1 || m > static_cast<int>(tder.size())) return 0;
    return tder[m - 1];
}

ExtVar ExtVar::with_kappa(int delta) const {
    ExtVar v = *this;
    v.kappa += delta;
    assert(v.kappa >= 0);
    return v;
}

ExtVar ExtVar::with_tder(int m, int delta) const {
    ExtVar v = *this;
    if (static_cast<int>(v.tder.size()) < m) v.tder.resize(m, 0);
    v.tder[m - 1] += delta;
    assert(v.tder[m - 1] >= 0);
    while (!v.tder.empty() && v.tder.back() == 0) v.tder.pop_back();
    return v;
}

bool ExtVar::operator==(const ExtVar& o) const {
    return kind == o.kind && level == o.level && kappa == o.kappa && tder == o.tder;
}

bool ExtVar::less(const ExtVar& x, const ExtVar& y) {
    if (x.kind != y.kind) return x.kind < y.kind;
    if (x.level != y.level) return x.level < y.level;
    if (x.kappa != y.kappa) return x.kappa < y.kappa;
    return x.tder < y.tder;
}

std::string ExtVar::str() const {
    std::string out = "D" + std::to_string(kappa);
    for (size_t m = 1; m <= tder.size(); ++m)
        for (int i = 0; i < tder[m - 1]; ++i) out += "t" + std::to_string(m);
    out += std::string("[") + (kind == Field::nu ? "nu," : "phi,") + std::to_string(level) + "]";
    return out;
}

// ------------------------------------------------------------ ExtMonomial

ExtMonomial ExtMonomial::var(const ExtVar& v) {
    ExtMonomial m;
    m.f_.push_back({v, 1});
    return m;
}

int ExtMonomial::weight() const {
    int w = 0;
    for (const auto& [v, e] : f_) w += e * v.weight();
    return w;
}

ExtMonomial ExtMonomial::times(const ExtVar& var, int exp) const {
    ExtMonomial r = *this;
    auto it = r.f_.begin();
    while (it != r.f_.end() && ExtVar::less(it->first, var)) ++it;
    if (it != r.f_.end() && it->first == var)
        it->second += exp;
    else
        r.f_.insert(it, {var, exp});
    return r;
}

ExtMonomial ExtMonomial::times(const ExtMonomial& o) const {
    ExtMonomial r = *this;
    for (const auto& [v, e] : o.f_) r = r.times(v, e);
    return r;
}

ExtMonomial ExtMonomial::divide_once(const ExtVar& var) const {
    ExtMonomial r = *this;
    for (auto it = r.f_.begin(); it != r.f_.end(); ++it) {
        if (it->first == var) {
            if (--it->second == 0) r.f_.erase(it);
            return r;
        }
    }
    assert(false && "divide_once: variable not present");
    return r;
}

bool ExtMonomial::less(const ExtMonomial& x, const ExtMonomial& y) {
    int wx = x.weight(), wy = y.weight();
    if (wx != wy) return wx < wy;
    size_t n = std::min(x.f_.size(), y.f_.size());
    for (size_t i = 0; i < n; ++i) {
        if (!(x.f_[i].first == y.f_[i].first))
            return ExtVar::less(x.f_[i].first, y.f_[i].first);
        if (x.f_[i].second != y.f_[i].second) return x.f_[i].second > y.f_[i].second;
    }
    return x.f_.size() < y.f_.size();
}

std::string ExtMonomial::str() const {
    if (f_.empty()) return "1";
    std::string out;
    for (const auto& [v, e] : f_) {
        if (!out.empty()) out += "*";
        out += v.str();
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

// ---------------------------------------------------------------- ExtPoly

ExtPoly ExtPoly::constant(const ZetaExt& c) {
    ExtPoly p;
    if (!c.is_zero()) p.t_[ExtMonomial::one()] = c;
    return p;
}

ExtPoly ExtPoly::variable(const ExtVar& v) {
    ExtPoly p;
    p.t_[ExtMonomial::var(v)] = ZetaExt::of(RatFunc::from_int(1));
    return p;
}

void ExtPoly::add_term(const ExtMonomial& m, const ZetaExt& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

ZetaExt ExtPoly::coeff(const ExtMonomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? ZetaExt{} : it->second;
}

ExtPoly ExtPoly::operator+(const ExtPoly& o) const {
    ExtPoly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
}

ExtPoly ExtPoly::operator-(const ExtPoly& o) const { return *this + (-o); }

ExtPoly ExtPoly::operator-() const {
    ExtPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

ExtPoly ExtPoly::mul(const ExtPoly& o, const RatFunc& zeta_sq) const {
    ExtPoly r;
    for (const auto& [m1, c1] : t_)
        for (const auto& [m2, c2] : o.t_) r.add_term(m1.times(m2), c1.mul(c2, zeta_sq));
    return r;
}

ExtPoly ExtPoly::scaled(const ZetaExt& s, const RatFunc& zeta_sq) const {
    ExtPoly r;
    for (const auto& [m, c] : t_) r.add_term(m, c.mul(s, zeta_sq));
    return r;
}

ExtPoly ExtPoly::dkappa() const {
    ExtPoly r;
    for (const auto& [m, c] : t_) {
        for (const auto& [v, e] : m.factors()) {
            ExtMonomial lowered = m.divide_once(v);
            ZetaExt scaled{c.even * RatFunc::from_int(e), c.odd * RatFunc::from_int(e)};
            r.add_term(lowered.times(v.with_kappa(+1), 1), scaled);
        }
    }
    return r;
}

ExtPoly ExtPoly::dt(int m_index) const {
    ExtPoly r;
    for (const auto& [m, c] : t_) {
        for (const auto& [v, e] : m.factors()) {
            ExtMonomial lowered = m.divide_once(v);
            ZetaExt scaled{c.even * RatFunc::from_int(e), c.odd * RatFunc::from_int(e)};
            r.add_term(lowered.times(v.with_tder(m_index, +1), 1), scaled);
        }
    }
    return r;
}

std::string ExtPoly::str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : t_) {
        if (!out.empty()) out += " + ";
        out += "[" + c.even.str();
        if (!c.odd.is_zero()) out += " ; zeta*" + c.odd.str();
        out += "]*" + m.str();
    }
    return out;
}

// -------------------------------------------------------------- EpsSeries

EpsSeries::EpsSeries(int truncation, const RatFunc& zeta_sq)
    : n_(truncation), z_(zeta_sq), c_(truncation + 1) {}

const ExtPoly& EpsSeries::at(int k) const {
    static const ExtPoly zero;
    if (k < 0 || k > n_) return zero;
    return c_[k];
}

void EpsSeries::set(int k, ExtPoly p) {
    if (k < 0 || k > n_) return;
    c_[k] = std::move(p);
}

void EpsSeries::add(int k, const ExtPoly& p) {
    if (k < 0 || k > n_) return;
    c_[k] = c_[k] + p;
}

int EpsSeries::min_order() const {
    for (int k = 0; k <= n_; ++k)
        if (!c_[k].is_zero()) return k;
    return n_ + 1;
}

void EpsSeries::check_compatible(const EpsSeries& o) const {
    if (n_ != o.n_) throw TruncationMismatch("series truncation orders differ");
    assert(z_ == o.z_);
}

EpsSeries EpsSeries::operator+(const EpsSeries& o) const {
    check_compatible(o);
    EpsSeries r(n_, z_);
    for (int k = 0; k <= n_; ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
}

EpsSeries EpsSeries::operator-(const EpsSeries& o) const {
    check_compatible(o);
    EpsSeries r(n_, z_);
    for (int k = 0; k <= n_; ++k) r.c_[k] = c_[k] - o.c_[k];
    return r;
}

EpsSeries EpsSeries::operator*(const EpsSeries& o) const {
    check_compatible(o);
    EpsSeries r(n_, z_);
    for (int i = 0; i <= n_; ++i) {
        if (c_[i].is_zero()) continue;
        for (int j = 0; i + j <= n_; ++j) {
            if (o.c_[j].is_zero()) continue;
            r.c_[i + j] = r.c_[i + j] + c_[i].mul(o.c_[j], z_);
        }
    }
    return r;
}

EpsSeries EpsSeries::scaled(const ZetaExt& s) const {
    EpsSeries r(n_, z_);
    for (int k = 0; k <= n_; ++k) r.c_[k] = c_[k].scaled(s, z_);
    return r;
}

EpsSeries EpsSeries::reciprocal() const {
    const ExtPoly& head = c_[0];
    ExtPoly one = ExtPoly::constant(ZetaExt::of(RatFunc::from_int(1)));
    if (!(head == one))
        throw NonSmallArgument("reciprocal requires a unit eps^0 term");
    // 1/(1+t) = sum (-t)^p
    EpsSeries t = *this;
    t.set(0, ExtPoly());
    EpsSeries r(n_, z_);
    r.set(0, one);
    EpsSeries pw(n_, z_);
    pw.set(0, one);
    int m = t.min_order();
    if (m > n_) return r;
    for (int p = 1; p * m <= n_; ++p) {
        pw = pw * t;
        r = (p % 2 == 1) ? r - pw : r + pw;
    }
    return r;
}

// ---------------------------------------------------------------- kernels

Rational AnalyticKernel::taylor_coeff(int p) const {
    switch (name) {
        case Name::sqrt1p: {
            // binomial(1/2, p)
            Rational c(1);
            for (int k = 1; k <= p; ++k) {
                Rational factor = (Rational(1, 2) - Rational(k - 1)) / Rational(k);
                c *= factor;
            }
            return c;
        }
        case Name::sin: {
            if (p % 2 == 0) return Rational(0);
            Rational c(1);
            for (int k = 2; k <= p; ++k) c /= Rational(k);
            return ((p / 2) % 2 == 0) ? c : -c;
        }
        case Name::cos: {
            if (p % 2 == 1) return Rational(0);
            Rational c(1);
            for (int k = 2; k <= p; ++k) c /= Rational(k);
            return ((p / 2) % 2 == 0) ? c : -c;
        }
    }
    return Rational(0);
}

EpsSeries compose(const AnalyticKernel& k, const EpsSeries& s) {
    if (!s.at(0).is_zero())
        throw NonSmallArgument("composition argument must have no eps^0 term");
    const int n = s.truncation();
    EpsSeries r(n, s.zeta_sq());
    int m = s.min_order();
    EpsSeries pw(n, s.zeta_sq());
    pw.set(0, ExtPoly::constant(ZetaExt::of(RatFunc::from_int(1))));
    r = r + pw.scaled(RatFunc::from_rational(k.taylor_coeff(0)));
    if (m > n) return r;
    for (int p = 1; p * m <= n; ++p) {
        pw = pw * s;
        Rational c = k.taylor_coeff(p);
        if (c != 0) r = r + pw.scaled(RatFunc::from_rational(c));
    }
    return r;
}

// --------------------------------------------------------- field builders

namespace {

// (dir * zeta)^k / k! as a ZetaExt
ZetaExt shift_coeff(int dir, int k, const RatFunc& zeta_sq) {
    Rational inv_fact(1);
    for (int i = 2; i <= k; ++i) inv_fact /= Rational(i);
    if (dir < 0 && k % 2 == 1) inv_fact = -inv_fact;
    RatFunc value = RatFunc::from_rational(inv_fact) * zeta_sq.pow(k / 2);
    if (k % 2 == 0) return ZetaExt::of(value);
    return ZetaExt::zeta(value);
}

} // namespace

EpsSeries nu_shift(int dir, int truncation, const RatFunc& zeta_sq) {
    EpsSeries s(truncation, zeta_sq);
    s.add(0, ExtPoly::constant(ZetaExt::of(RatFunc::from_int(1))));
    for (int level = 1; 2 * level <= truncation; ++level) {
        for (int k = 0; 2 * level + k <= truncation; ++k) {
            ExtVar v{ExtVar::Field::nu, level, k, {}};
            s.add(2 * level + k,
                  ExtPoly::variable(v).scaled(shift_coeff(dir, k, zeta_sq), zeta_sq));
        }
    }
    return s;
}

EpsSeries nu_unshifted(int truncation, const RatFunc& zeta_sq) {
    EpsSeries s(truncation, zeta_sq);
    s.add(0, ExtPoly::constant(ZetaExt::of(RatFunc::from_int(1))));
    for (int level = 1; 2 * level <= truncation; ++level) {
        ExtVar v{ExtVar::Field::nu, level, 0, {}};
        s.add(2 * level, ExtPoly::variable(v));
    }
    return s;
}

EpsSeries phi_fluct_shift(int dir, int truncation, const RatFunc& zeta_sq) {
    EpsSeries s(truncation, zeta_sq);
    for (int level = 1; 2 * level - 1 <= truncation; ++level) {
        for (int k = 0; 2 * level - 1 + k <= truncation; ++k) {
            ExtVar v{ExtVar::Field::phi, level, k, {}};
            s.add(2 * level - 1 + k,
                  ExtPoly::variable(v).scaled(shift_coeff(dir, k, zeta_sq), zeta_sq));
        }
    }
    return s;
}

EpsSeries beta(int dir, int truncation, const RatFunc& zeta_sq) {
    EpsSeries s(truncation, zeta_sq);
    for (int level = 1; 2 * level - 1 <= truncation; ++level) {
        for (int k = 1; 2 * level - 1 + k <= truncation; ++k) {
            ExtVar v{ExtVar::Field::phi, level, k, {}};
            s.add(2 * level - 1 + k,
                  ExtPoly::variable(v).scaled(shift_coeff(dir, k, zeta_sq), zeta_sq));
        }
    }
    return s;
}

EpsSeries dt_nu(int truncation, const RatFunc& zeta_sq) {
    EpsSeries s(truncation, zeta_sq);
    for (int level = 1; 2 * level <= truncation; ++level) {
        for (int m = 1; 2 * level + 2 * m - 1 <= truncation; ++m) {
            ExtVar v{ExtVar::Field::nu, level, 0, {}};
            v = v.with_tder(m, +1);
            s.add(2 * level + 2 * m - 1, ExtPoly::variable(v));
        }
    }
    return s;
}

EpsSeries dt_phi(int truncation, const RatFunc& zeta_sq, int sigma) {
    EpsSeries s(truncation, zeta_sq);
    s.add(0, ExtPoly::constant(ZetaExt::of(RatFunc::from_int(-sigma))));
    for (int level = 1; 2 * level - 1 <= truncation; ++level) {
        for (int m = 1; 2 * level - 1 + 2 * m - 1 <= truncation; ++m) {
            ExtVar v{ExtVar::Field::phi, level, 0, {}};
            v = v.with_tder(m, +1);
            s.add(2 * level - 1 + 2 * m - 1, ExtPoly::variable(v));
        }
    }
    return s;
}

} // namespace dmr::series
