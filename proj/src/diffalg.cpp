#include "dmr/jets.hpp"
#include "dmr/errors.hpp"
#include "dmr/graded.hpp"
#include "dmr/linsolve.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace dmr {

// ---------------------------------------------------------- DiffMonomial

DiffMonomial DiffMonomial::jet(int level, int order, int exp) {
    assert(level >= 1 && order >= 1 && exp >= 1);
    DiffMonomial m;
    m.f_.push_back({JetVar{level, order}, exp});
    return m;
}

int DiffMonomial::degree() const {
    int d = 0;
    for (const auto& [v, e] : f_) d += e * v.degree();
    return d;
}

int DiffMonomial::max_level() const {
    int r = 0;
    for (const auto& [v, e] : f_) r = std::max(r, v.level);
    return r;
}

bool DiffMonomial::contains_level(int level) const {
    for (const auto& [v, e] : f_)
        if (v.level == level) return true;
    return false;
}

int DiffMonomial::exponent_of(const JetVar& var) const {
    for (const auto& [v, e] : f_)
        if (v == var) return e;
    return 0;
}

DiffMonomial DiffMonomial::times(const JetVar& var, int exp) const {
    DiffMonomial r = *this;
    auto it = r.f_.begin();
    while (it != r.f_.end() && JetVar::factor_before(it->first, var)) ++it;
    if (it != r.f_.end() && it->first == var)
        it->second += exp;
    else
        r.f_.insert(it, {var, exp});
    return r;
}

DiffMonomial DiffMonomial::times(const DiffMonomial& o) const {
    DiffMonomial r = *this;
    for (const auto& [v, e] : o.f_) r = r.times(v, e);
    return r;
}

DiffMonomial DiffMonomial::divide_once(const JetVar& var) const {
    DiffMonomial r = *this;
    for (auto it = r.f_.begin(); it != r.f_.end(); ++it) {
        if (it->first == var) {
            if (--it->second == 0) r.f_.erase(it);
            return r;
        }
    }
    assert(false && "divide_once: factor not present");
    return r;
}

bool DiffMonomial::less(const DiffMonomial& x, const DiffMonomial& y) {
    int dx = x.degree(), dy = y.degree();
    if (dx != dy) return dx < dy;
    size_t n = std::min(x.f_.size(), y.f_.size());
    for (size_t i = 0; i < n; ++i) {
        const auto& [vx, ex] = x.f_[i];
        const auto& [vy, ey] = y.f_[i];
        if (!(vx == vy)) return JetVar::factor_before(vx, vy);
        if (ex != ey) return ex > ey;
    }
    return x.f_.size() < y.f_.size();
}

std::string DiffMonomial::str() const {
    std::string out;
    for (const auto& [v, e] : f_) {
        if (!out.empty()) out += "*";
        out += "D" + std::to_string(v.order) + "[phi," + std::to_string(v.level) + "]";
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

// -------------------------------------------------------------- DiffPoly

DiffPoly DiffPoly::constant(const RatFunc& c) {
    DiffPoly p;
    if (!c.is_zero()) p.t_[DiffMonomial::one()] = c;
    return p;
}

DiffPoly DiffPoly::jet(int level, int order) {
    DiffPoly p;
    p.t_[DiffMonomial::jet(level, order)] = RatFunc::from_int(1);
    return p;
}

DiffPoly DiffPoly::monomial(const DiffMonomial& m, const RatFunc& c) {
    DiffPoly p;
    if (!c.is_zero()) p.t_[m] = c;
    return p;
}

RatFunc DiffPoly::coeff(const DiffMonomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? RatFunc() : it->second;
}

void DiffPoly::add_term(const DiffMonomial& m, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

DiffPoly DiffPoly::operator+(const DiffPoly& o) const {
    DiffPoly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
}

DiffPoly DiffPoly::operator-(const DiffPoly& o) const { return *this + (-o); }

DiffPoly DiffPoly::operator-() const {
    DiffPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

DiffPoly DiffPoly::operator*(const DiffPoly& o) const {
    DiffPoly r;
    for (const auto& [m1, c1] : t_)
        for (const auto& [m2, c2] : o.t_) r.add_term(m1.times(m2), c1 * c2);
    return r;
}

DiffPoly DiffPoly::scaled(const RatFunc& s) const {
    if (s.is_zero()) return DiffPoly();
    DiffPoly r = *this;
    for (auto& [m, c] : r.t_) c = c * s;
    return r;
}

int DiffPoly::max_level() const {
    int r = 0;
    for (const auto& [m, c] : t_) r = std::max(r, m.max_level());
    return r;
}

std::optional<int> DiffPoly::homogeneous_degree() const {
    std::optional<int> deg;
    for (const auto& [m, c] : t_) {
        int d = m.degree();
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg ? deg : std::optional<int>(0);
}

std::map<int, DiffPoly> DiffPoly::homogeneous_components() const {
    std::map<int, DiffPoly> comps;
    for (const auto& [m, c] : t_) comps[m.degree()].add_term(m, c);
    return comps;
}

DiffPoly DiffPoly::part_with_level(int level) const {
    DiffPoly r;
    for (const auto& [m, c] : t_)
        if (m.contains_level(level)) r.add_term(m, c);
    return r;
}

DiffPoly DiffPoly::part_without_level(int level) const {
    DiffPoly r;
    for (const auto& [m, c] : t_)
        if (!m.contains_level(level)) r.add_term(m, c);
    return r;
}

// ------------------------------------------------------------ derivation

DiffPoly derive_xi(const DiffPoly& p) {
    DiffPoly r;
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [v, e] : m.factors()) {
            DiffMonomial lowered = m.divide_once(v);
            JetVar raised{v.level, v.order + 1};
            r.add_term(lowered.times(raised, 1), c * RatFunc::from_int(e));
        }
    }
    return r;
}

DiffPoly derive_xi(const DiffPoly& p, int times) {
    DiffPoly r = p;
    for (int i = 0; i < times; ++i) r = derive_xi(r);
    return r;
}

DiffPoly integrate_xi(const DiffPoly& p) {
    DiffPoly out;
    for (const auto& [deg, comp] : p.homogeneous_components()) {
        if (deg == 0)
            throw NotExact("constant term has no antiderivative in the jet algebra");
        if (deg <= 2)
            throw NotExact("degree-" + std::to_string(deg) +
                           " component has no preimage space");
        auto src = basis(deg - 1, comp.max_level());
        auto dst = basis(deg, comp.max_level());
        linsolve::LinSystem sys;
        sys.a.assign(dst->dim(), linsolve::Vec(src->dim(), RatFunc()));
        for (int j = 0; j < src->dim(); ++j) {
            DiffPoly img = derive_xi(DiffPoly::monomial(src->monomials[j], RatFunc::from_int(1)));
            for (const auto& [m, c] : img.terms()) {
                auto it = dst->index.find(m);
                assert(it != dst->index.end());
                sys.a[it->second][j] = c;
            }
        }
        sys.rhs = coords(comp, *dst);
        auto res = linsolve::solve(sys);
        if (!res.consistent)
            throw NotExact("degree-" + std::to_string(deg) +
                           " component is not a total xi-derivative");
        assert(res.nullspace.empty() && "xi-derivative has trivial kernel on jets");
        out = out + from_coords(res.particular, *src);
    }
    return out;
}

// -------------------------------------------------------------- LinDiffOp

void LinDiffOp::add(int k, const DiffPoly& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = c_.try_emplace(k, p);
    if (!inserted) {
        it->second = it->second + p;
        if (it->second.is_zero()) c_.erase(it);
    }
}

DiffPoly LinDiffOp::apply(const DiffPoly& v) const {
    DiffPoly r;
    for (const auto& [k, coeff] : c_) r = r + coeff * derive_xi(v, k);
    return r;
}

DiffPoly LinDiffOp::apply_to_field(int level, int shift) const {
    DiffPoly r;
    for (const auto& [k, coeff] : c_) {
        int order = k + shift;
        if (order < 1)
            throw NotExact("operator would produce a bare field (order " +
                           std::to_string(order) + ")");
        r = r + coeff * DiffPoly::jet(level, order);
    }
    return r;
}

LinDiffOp LinDiffOp::operator+(const LinDiffOp& o) const {
    LinDiffOp r = *this;
    for (const auto& [k, p] : o.c_) r.add(k, p);
    return r;
}

LinDiffOp LinDiffOp::operator-() const {
    LinDiffOp r = *this;
    for (auto& [k, p] : r.c_) p = -p;
    return r;
}

std::string LinDiffOp::str() const {
    if (c_.empty()) return "0";
    std::string out;
    for (const auto& [k, p] : c_) {
        if (!out.empty()) out += " + ";
        out += "(" + p.str() + ")*Dxi^" + std::to_string(k);
    }
    return out;
}

LinDiffOp frechet(const DiffPoly& p, int level) {
    LinDiffOp op;
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [v, e] : m.factors()) {
            if (v.level != level) continue;
            op.add(v.order, DiffPoly::monomial(m.divide_once(v), c * RatFunc::from_int(e)));
        }
    }
    return op;
}

LinDiffOp frechet_shifted(const DiffPoly& p, int level) {
    LinDiffOp op;
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [v, e] : m.factors()) {
            if (v.level != level) continue;
            op.add(v.order - 1, DiffPoly::monomial(m.divide_once(v), c * RatFunc::from_int(e)));
        }
    }
    return op;
}

DiffPoly evolutionary_derive(const DiffPoly& p, const std::map<int, DiffPoly>& flows) {
    // cache xi-derivatives of each flow up to the needed order
    std::map<int, std::vector<DiffPoly>> dflows;
    auto flow_deriv = [&](int level, int order) -> const DiffPoly& {
        auto fit = flows.find(level);
        if (fit == flows.end())
            throw MissingFlow("no flow assigned to level " + std::to_string(level));
        auto& vec = dflows[level];
        if (vec.empty()) vec.push_back(fit->second);
        while (static_cast<int>(vec.size()) <= order) vec.push_back(derive_xi(vec.back()));
        return vec[order];
    };
    DiffPoly r;
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [v, e] : m.factors()) {
            DiffPoly replaced =
                DiffPoly::monomial(m.divide_once(v), c * RatFunc::from_int(e)) *
                flow_deriv(v.level, v.order);
            r = r + replaced;
        }
    }
    return r;
}

// ------------------------------------------------------------- rendering

namespace {

bool is_negative(const RatFunc& c) { return c.num().leading() < 0; }

std::string wrapped(const std::string& s) {
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        int depth = 0;
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')') {
                --depth;
                if (depth == 0 && i + 1 < s.size()) break; // closes early
                if (depth == 0) return s;                  // fully wrapped
            }
        }
    }
    return "(" + s + ")";
}

std::string term_str(const RatFunc& c, const DiffMonomial& m) {
    if (m.is_one()) return wrapped(c.str());
    if (c.is_one()) return m.str();
    return wrapped(c.str()) + "*" + m.str();
}

} // namespace

std::string DiffPoly::str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : t_) {
        if (out.empty()) {
            out = term_str(c, m);
        } else if (is_negative(c)) {
            out += "-" + term_str(-c, m);
        } else {
            out += "+" + term_str(c, m);
        }
    }
    return out;
}

// --------------------------------------------------------------- parsing

namespace {

struct PCursor {
    std::string_view s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "' in \"" + std::string(s) + "\"");
    }
    int integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer in \"" + std::string(s) + "\"");
        return std::stoi(std::string(s.substr(start, pos - start)));
    }
    std::string balanced_parens() {
        expect('(');
        size_t start = pos;
        int depth = 1;
        while (pos < s.size() && depth > 0) {
            if (s[pos] == '(') ++depth;
            if (s[pos] == ')') --depth;
            ++pos;
        }
        if (depth != 0) throw ParseError("unbalanced parentheses in \"" + std::string(s) + "\"");
        return std::string(s.substr(start, pos - 1 - start));
    }
};

} // namespace

DiffPoly DiffPoly::parse(std::string_view text) {
    PCursor cur{text};
    DiffPoly out;
    if (cur.peek() == '\0') throw ParseError("empty polynomial");
    if (cur.peek() == '0') {
        size_t save = cur.pos;
        ++cur.pos;
        if (cur.peek() == '\0') return out;
        cur.pos = save;
    }
    bool first = true;
    while (true) {
        bool neg = false;
        if (cur.accept('-'))
            neg = true;
        else if (cur.accept('+'))
            neg = false;
        else if (!first)
            break;
        // term: optional coefficient, factors joined by '*'
        RatFunc c = RatFunc::from_int(1);
        DiffMonomial m;
        bool any = false;
        bool expect_factor = true;
        while (expect_factor) {
            char ch = cur.peek();
            if (ch == '(') {
                c = c * RatFunc::parse(cur.balanced_parens());
                any = true;
            } else if (ch == 'D') {
                ++cur.pos;
                int order = cur.integer();
                cur.expect('[');
                cur.skip_ws();
                if (cur.s.substr(cur.pos, 3) != "phi")
                    throw ParseError("expected field name 'phi' in \"" + std::string(text) + "\"");
                cur.pos += 3;
                cur.expect(',');
                int level = cur.integer();
                cur.expect(']');
                int exp = 1;
                if (cur.accept('^')) exp = cur.integer();
                if (order < 1 || level < 1) throw ParseError("jet indices must be positive");
                m = m.times(JetVar{level, order}, exp);
                any = true;
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                // bare numeric coefficient, possibly a fraction
                size_t start = cur.pos;
                while (cur.pos < cur.s.size() &&
                       (std::isdigit(static_cast<unsigned char>(cur.s[cur.pos])) ||
                        cur.s[cur.pos] == '/'))
                    ++cur.pos;
                c = c * RatFunc::parse(cur.s.substr(start, cur.pos - start));
                any = true;
            } else {
                throw ParseError("unexpected character in term of \"" + std::string(text) + "\"");
            }
            expect_factor = cur.accept('*');
        }
        if (!any) throw ParseError("empty term in \"" + std::string(text) + "\"");
        out.add_term(m, neg ? -c : c);
        first = false;
        char ch = cur.peek();
        if (ch != '+' && ch != '-') break;
    }
    cur.skip_ws();
    if (cur.pos != text.size())
        throw ParseError("trailing characters in \"" + std::string(text) + "\"");
    return out;
}

} // namespace dmr
