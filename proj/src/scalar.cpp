#include "iforms/scalar.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace iforms {

namespace {

// Dense univariate polynomial helpers over Rational, low-to-high degree,
// used for arithmetic modulo the extension modulus.

void poly_trim(std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// r = r mod m (m monic).
void poly_mod(std::vector<Rational>& r, const std::vector<Rational>& m) {
    const size_t dm = m.size() - 1;
    poly_trim(r);
    while (r.size() > dm) {
        const Rational lead = r.back();
        const size_t shift = r.size() - 1 - dm;
        for (size_t i = 0; i < dm; ++i) r[shift + i] -= lead * m[i];
        r.pop_back();
        poly_trim(r);
    }
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Euclidean division: returns remainder, quotient discarded.
std::vector<Rational> poly_rem(std::vector<Rational> a, const std::vector<Rational>& b) {
    poly_trim(a);
    std::vector<Rational> bb = b;
    poly_trim(bb);
    if (bb.empty()) throw structural_error("polynomial division by zero");
    while (a.size() >= bb.size()) {
        const Rational f = a.back() / bb.back();
        const size_t shift = a.size() - bb.size();
        for (size_t i = 0; i < bb.size(); ++i) a[shift + i] -= f * bb[i];
        a.pop_back();
        poly_trim(a);
    }
    return a;
}

std::vector<Rational> poly_sub(std::vector<Rational> a, const std::vector<Rational>& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    poly_trim(a);
    return a;
}

// Extended Euclid: returns s with s*a == gcd(a,m) mod m. Fails when the gcd
// is not a unit, i.e. when a is a zero divisor modulo a reducible modulus.
std::vector<Rational> invert_mod(std::vector<Rational> a, const std::vector<Rational>& m) {
    std::vector<Rational> r0 = m, r1 = a;
    std::vector<Rational> s0 = {}, s1 = {Rational(1)};
    poly_trim(r1);
    while (!r1.empty()) {
        // quotient of r0 by r1
        std::vector<Rational> q;
        {
            std::vector<Rational> rem = r0;
            poly_trim(rem);
            q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, Rational(0));
            while (rem.size() >= r1.size() && !rem.empty()) {
                const Rational f = rem.back() / r1.back();
                const size_t shift = rem.size() - r1.size();
                q[shift] = f;
                for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= f * r1[i];
                rem.pop_back();
                poly_trim(rem);
            }
        }
        std::vector<Rational> r2 = poly_sub(r0, poly_mul(q, r1));
        std::vector<Rational> s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1)
        throw structural_error("element not invertible: extension modulus is reducible");
    // scale so the gcd is 1
    for (auto& c : s0) c /= r0[0];
    std::vector<Rational> out = poly_rem(std::move(s0), m);
    return out;
}

} // namespace

ExtensionField::ExtensionField(std::vector<Rational> coeffs) {
    poly_trim(coeffs);
    if (coeffs.size() < 3)
        throw structural_error("extension modulus must have degree >= 2");
    const Rational lead = coeffs.back();
    for (auto& c : coeffs) c /= lead;
    monic_ = std::move(coeffs);
}

Scalar Scalar::extension(FieldPtr field, std::vector<Rational> coeff) {
    if (!field) throw structural_error("extension scalar requires a field");
    if (coeff.size() > field->degree())
        throw structural_error("extension coefficient vector longer than field degree");
    coeff.resize(field->degree(), Rational(0));
    Scalar s;
    s.v_ = Ext{std::move(field), std::move(coeff)};
    return s;
}

Scalar Scalar::primitive(const FieldPtr& field) {
    if (!field) throw structural_error("extension scalar requires a field");
    std::vector<Rational> c(field->degree(), Rational(0));
    c[1] = 1;
    return extension(field, std::move(c));
}

bool Scalar::is_zero() const {
    if (is_rational()) return std::get<Rational>(v_) == 0;
    const auto& c = ext().coeff;
    return std::all_of(c.begin(), c.end(), [](const Rational& q) { return q == 0; });
}

bool Scalar::is_one() const {
    if (is_rational()) return std::get<Rational>(v_) == 1;
    const auto& c = ext().coeff;
    if (c[0] != 1) return false;
    return std::all_of(c.begin() + 1, c.end(), [](const Rational& q) { return q == 0; });
}

const Rational& Scalar::rational() const {
    if (!is_rational()) throw structural_error("extension scalar used where a rational is required");
    return std::get<Rational>(v_);
}

const FieldPtr& Scalar::field() const {
    static const FieldPtr none;
    return is_rational() ? none : ext().field;
}

const std::vector<Rational>& Scalar::coefficients() const {
    if (is_rational()) throw structural_error("rational scalar has no coefficient vector");
    return ext().coeff;
}

void Scalar::promote(Scalar& a, Scalar& b) {
    if (a.is_rational() == b.is_rational()) {
        if (!a.is_rational() && !(*a.ext().field == *b.ext().field))
            throw structural_error("scalars from different extension fields");
        return;
    }
    Scalar& rat = a.is_rational() ? a : b;
    const Scalar& xt = a.is_rational() ? b : a;
    std::vector<Rational> c(xt.ext().field->degree(), Rational(0));
    c[0] = std::get<Rational>(rat.v_);
    rat.v_ = Ext{xt.ext().field, std::move(c)};
}

Scalar Scalar::operator-() const {
    Scalar out = *this;
    if (out.is_rational()) {
        std::get<Rational>(out.v_) = -std::get<Rational>(out.v_);
    } else {
        for (auto& c : std::get<Ext>(out.v_).coeff) c = -c;
    }
    return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    Scalar rhs = o;
    promote(*this, rhs);
    if (is_rational()) {
        std::get<Rational>(v_) += std::get<Rational>(rhs.v_);
    } else {
        auto& c = std::get<Ext>(v_).coeff;
        const auto& d = rhs.ext().coeff;
        for (size_t i = 0; i < c.size(); ++i) c[i] += d[i];
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    Scalar rhs = o;
    promote(*this, rhs);
    if (is_rational()) {
        std::get<Rational>(v_) *= std::get<Rational>(rhs.v_);
    } else {
        auto& e = std::get<Ext>(v_);
        std::vector<Rational> prod = poly_mul(e.coeff, rhs.ext().coeff);
        poly_mod(prod, e.field->modulus());
        prod.resize(e.field->degree(), Rational(0));
        e.coeff = std::move(prod);
    }
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw structural_error("division by zero");
    if (is_rational()) return Scalar(Rational(1) / std::get<Rational>(v_));
    const auto& e = ext();
    std::vector<Rational> inv = invert_mod(e.coeff, e.field->modulus());
    return extension(e.field, std::move(inv));
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool Scalar::operator==(const Scalar& o) const {
    Scalar a = *this, b = o;
    promote(a, b);
    if (a.is_rational()) return std::get<Rational>(a.v_) == std::get<Rational>(b.v_);
    return a.ext().coeff == b.ext().coeff;
}

int Scalar::compare(const Scalar& a, const Scalar& b) {
    Scalar x = a, y = b;
    promote(x, y);
    if (x.is_rational()) {
        const Rational &p = std::get<Rational>(x.v_), &q = std::get<Rational>(y.v_);
        return p < q ? -1 : (p == q ? 0 : 1);
    }
    const auto &p = x.ext().coeff, &q = y.ext().coeff;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] < q[i]) return -1;
        if (q[i] < p[i]) return 1;
    }
    return 0;
}

std::string Scalar::str() const {
    if (is_rational()) return std::get<Rational>(v_).str();
    std::ostringstream os;
    os << '[';
    const auto& c = ext().coeff;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) os << ',';
        os << c[i].str();
    }
    os << ']';
    return os.str();
}

Scalar Scalar::parse(const std::string& text, const FieldPtr& field) {
    auto strip = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string t = strip(text);
    if (t.empty()) throw structural_error("empty scalar literal");
    try {
        if (t.front() == '[') {
            if (!field) throw structural_error("coefficient list scalar without an extension field");
            if (t.back() != ']') throw structural_error("unterminated coefficient list");
            std::vector<Rational> coeff;
            std::string inner = t.substr(1, t.size() - 2);
            std::stringstream ss(inner);
            std::string item;
            while (std::getline(ss, item, ',')) coeff.emplace_back(strip(item));
            return extension(field, std::move(coeff));
        }
        return Scalar(Rational(t));
    } catch (const std::exception& e) {
        throw structural_error("bad scalar literal '" + text + "': " + e.what());
    }
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

} // namespace iforms
