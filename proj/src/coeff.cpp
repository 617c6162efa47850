#include "dmr/ratfunc.hpp"
#include "dmr/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dmr {

std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

// ---------------------------------------------------------------- HPoly

HPoly::HPoly(const Rational& c) {
    if (c != 0) c_.push_back(c);
}

HPoly::HPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

HPoly HPoly::h(int power) {
    std::vector<Rational> c(power + 1, Rational(0));
    c[power] = 1;
    return HPoly(std::move(c));
}

void HPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& HPoly::operator[](int k) const {
    static const Rational zero(0);
    if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
    return c_[k];
}

const Rational& HPoly::leading() const {
    static const Rational zero(0);
    return c_.empty() ? zero : c_.back();
}

HPoly HPoly::operator+(const HPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return HPoly(std::move(r));
}

HPoly HPoly::operator-(const HPoly& o) const { return *this + (-o); }

HPoly HPoly::operator-() const {
    std::vector<Rational> r(c_);
    for (auto& x : r) x = -x;
    return HPoly(std::move(r));
}

HPoly HPoly::operator*(const HPoly& o) const {
    if (is_zero() || o.is_zero()) return HPoly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return HPoly(std::move(r));
}

HPoly HPoly::scaled(const Rational& s) const {
    if (s == 0) return HPoly();
    std::vector<Rational> r(c_);
    for (auto& x : r) x *= s;
    return HPoly(std::move(r));
}

HPoly HPoly::monic() const {
    if (is_zero()) return HPoly();
    Rational inv = 1 / leading();
    return scaled(inv);
}

Rational HPoly::eval(const Rational& h0) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * h0 + *it;
    return acc;
}

std::pair<HPoly, HPoly> HPoly::divrem(const HPoly& a, const HPoly& b) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    HPoly rem = a;
    if (a.degree() < b.degree()) return {HPoly(), rem};
    std::vector<Rational> q(a.degree() - b.degree() + 1, Rational(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        int k = rem.degree() - b.degree();
        Rational f = rem.leading() / b.leading();
        q[k] = f;
        std::vector<Rational> sub(k + 1, Rational(0));
        sub[k] = f;
        rem = rem - b * HPoly(std::move(sub));
    }
    return {HPoly(std::move(q)), rem};
}

HPoly HPoly::gcd(HPoly a, HPoly b) {
    while (!b.is_zero()) {
        HPoly r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// --------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const HPoly& num, const HPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw ZeroDenominator("in RatFunc construction");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = HPoly(Rational(1));
        return;
    }
    HPoly g = HPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = HPoly::divrem(num_, g).first;
        den_ = HPoly::divrem(den_, g).first;
    }
    Rational lead = den_.leading();
    if (lead != 1) {
        Rational inv = 1 / lead;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

RatFunc RatFunc::from_int(long v) { return from_rational(Rational(v)); }

RatFunc RatFunc::from_rational(const Rational& q) {
    RatFunc f;
    f.num_ = HPoly(q);
    f.den_ = HPoly(Rational(1));
    return f;
}

RatFunc RatFunc::h(int power) { return RatFunc(HPoly::h(power), HPoly(Rational(1))); }

bool RatFunc::is_one() const { return num_.degree() == 0 && num_[0] == 1 && den_.degree() == 0; }

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw DivisionByZero("RatFunc division by zero");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc r = from_int(1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

Rational RatFunc::eval_at(const Rational& h0) const {
    Rational d = den_.eval(h0);
    if (d == 0) throw PoleAtPoint("denominator vanishes at h0 = " + to_string(h0));
    return num_.eval(h0) / d;
}

RatFunc operator*(const Rational& s, const RatFunc& f) {
    return RatFunc::from_rational(s) * f;
}

int RatFunc::cmp(const RatFunc& x, const RatFunc& y) {
    if (x.num_.degree() != y.num_.degree()) return x.num_.degree() < y.num_.degree() ? -1 : 1;
    if (x.den_.degree() != y.den_.degree()) return x.den_.degree() < y.den_.degree() ? -1 : 1;
    for (int k = x.num_.degree(); k >= 0; --k) {
        int c = mpq_cmp(x.num_[k].get_mpq_t(), y.num_[k].get_mpq_t());
        if (c != 0) return c < 0 ? -1 : 1;
    }
    for (int k = x.den_.degree(); k >= 0; --k) {
        int c = mpq_cmp(x.den_[k].get_mpq_t(), y.den_[k].get_mpq_t());
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

// ------------------------------------------------------------- rendering

namespace {

// Scale a rational-coefficient polynomial pair to coprime integer form.
void integer_form(const HPoly& num, const HPoly& den, std::vector<mpz_class>& n_out,
                  std::vector<mpz_class>& d_out) {
    mpz_class lcm_den(1);
    auto fold = [&lcm_den](const HPoly& p) {
        for (const auto& c : p.coeffs()) {
            mpz_class d = c.get_den();
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
            lcm_den = lcm_den / g * d;
        }
    };
    fold(num);
    fold(den);
    mpz_class content(0);
    auto scale = [&](const HPoly& p, std::vector<mpz_class>& out) {
        out.clear();
        for (const auto& c : p.coeffs()) {
            mpz_class v = c.get_num() * (lcm_den / c.get_den());
            out.push_back(v);
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
            content = g;
        }
    };
    scale(num, n_out);
    scale(den, d_out);
    if (content > 1) {
        for (auto& v : n_out) v /= content;
        for (auto& v : d_out) v /= content;
    }
}

std::string render_int_poly(const std::vector<mpz_class>& c) {
    if (c.empty()) return "0";
    std::string out;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
        if (c[k] == 0) continue;
        mpz_class mag = abs(c[k]);
        bool neg = c[k] < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? "-" : "+";
        }
        if (k == 0) {
            out += mag.get_str();
        } else {
            if (mag != 1) {
                out += mag.get_str();
                out += "*";
            }
            out += "h";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out.empty() ? "0" : out;
}

bool single_term(const std::vector<mpz_class>& c) {
    int nonzero = 0;
    for (const auto& v : c)
        if (v != 0) ++nonzero;
    return nonzero <= 1;
}

} // namespace

std::string RatFunc::str() const {
    if (is_zero()) return "0";
    std::vector<mpz_class> n, d;
    integer_form(num_, den_, n, d);
    std::string ns = render_int_poly(n);
    bool den_is_one = d.size() == 1 && d[0] == 1;
    if (den_is_one) return ns;
    std::string out = single_term(n) ? ns : "(" + ns + ")";
    out += "/";
    if (d.size() == 1) {
        out += d[0].get_str();
    } else {
        out += "(" + render_int_poly(d) + ")";
    }
    return out;
}

// --------------------------------------------------------------- parsing

namespace {

struct Cursor {
    std::string_view s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
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
            throw ParseError(std::string("expected '") + c + "' at position " + std::to_string(pos) +
                             " in \"" + std::string(s) + "\"");
    }
    mpz_class integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer in \"" + std::string(s) + "\"");
        return mpz_class(std::string(s.substr(start, pos - start)));
    }
};

HPoly parse_poly(Cursor& cur);

HPoly pow_poly(const HPoly& p, int e) {
    HPoly r(Rational(1));
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

// factor := ("(" poly ")" | integer | "h") ["^" integer]
HPoly parse_factor(Cursor& cur) {
    HPoly base;
    if (cur.accept('(')) {
        base = parse_poly(cur);
        cur.expect(')');
    } else if (cur.peek() == 'h') {
        ++cur.pos;
        base = HPoly::h(1);
    } else if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        base = HPoly(Rational(cur.integer()));
    } else {
        throw ParseError("unexpected character at position " + std::to_string(cur.pos) +
                         " in \"" + std::string(cur.s) + "\"");
    }
    if (cur.accept('^')) base = pow_poly(base, static_cast<int>(cur.integer().get_si()));
    return base;
}

// term := factor ("*" factor)*
HPoly parse_term(Cursor& cur) {
    HPoly acc = parse_factor(cur);
    while (cur.accept('*')) acc = acc * parse_factor(cur);
    return acc;
}

HPoly parse_poly(Cursor& cur) {
    HPoly acc;
    bool first = true;
    while (true) {
        bool neg = false;
        if (cur.accept('-'))
            neg = true;
        else if (cur.accept('+'))
            neg = false;
        else if (!first)
            break;
        HPoly t = parse_term(cur);
        acc = neg ? acc - t : acc + t;
        first = false;
        char c = cur.peek();
        if (c != '+' && c != '-') break;
    }
    return acc;
}

} // namespace

RatFunc RatFunc::parse(std::string_view text) {
    Cursor cur{text};
    HPoly num = parse_poly(cur);
    HPoly den(Rational(1));
    if (cur.accept('/')) {
        bool neg = cur.accept('-');
        den = parse_term(cur);
        if (neg) den = -den;
    }
    if (!cur.eof())
        throw ParseError("trailing characters in \"" + std::string(text) + "\"");
    return RatFunc(num, den);
}

} // namespace dmr
