#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "iforms/errors.hpp"

namespace iforms {

using Rational = boost::multiprecision::cpp_rational;

/// A simple algebraic extension Q(a), a a root of a monic irreducible
/// polynomial over Q. Irreducibility is trusted from the configuration: a
/// reducible modulus only degrades Q[a] to a ring with zero divisors, which
/// surfaces as a division failure the first time it matters.
class ExtensionField {
public:
    /// Coefficients low-to-high degree; normalized to monic internally.
    explicit ExtensionField(std::vector<Rational> coeffs);

    unsigned degree() const { return static_cast<unsigned>(monic_.size()) - 1; }
    /// Monic modulus, coefficients low-to-high, leading coefficient 1.
    const std::vector<Rational>& modulus() const { return monic_; }

    bool operator==(const ExtensionField& o) const { return monic_ == o.monic_; }

private:
    std::vector<Rational> monic_;
};

using FieldPtr = std::shared_ptr<const ExtensionField>;

/// Exact field element: a rational, or an element of a shared extension Q(a)
/// stored as a coefficient vector of length deg(modulus). All extension
/// scalars met by one operation must refer to the same field.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(int n) : v_(Rational(n)) {}
    Scalar(long n) : v_(Rational(n)) {}
    Scalar(long long n) : v_(Rational(n)) {}
    Scalar(const Rational& q) : v_(q) {}
    Scalar(Rational&& q) : v_(std::move(q)) {}

    static Scalar extension(FieldPtr field, std::vector<Rational> coeff);
    /// The primitive element a of the field.
    static Scalar primitive(const FieldPtr& field);

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    bool is_zero() const;
    bool is_one() const;

    /// Throws structural_error when this is an extension element.
    const Rational& rational() const;
    const FieldPtr& field() const;
    /// Coefficient vector relative to 1, a, ..., a^{d-1}.
    const std::vector<Rational>& coefficients() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    Scalar inverse() const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Total order used only for deterministic keying, not for mathematics.
    static int compare(const Scalar& a, const Scalar& b);

    /// "p/q" for rationals, "[c0,c1,...]" for extension elements.
    std::string str() const;
    /// Parses "p/q" (field may be null) or "[c0,c1,...]" (field required).
    static Scalar parse(const std::string& text, const FieldPtr& field);

private:
    struct Ext {
        FieldPtr field;
        std::vector<Rational> coeff; // size == field->degree()
    };
    std::variant<Rational, Ext> v_;

    static void promote(Scalar& a, Scalar& b);
    const Ext& ext() const { return std::get<Ext>(v_); }
};

inline Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
inline Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
inline Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
inline Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace iforms
