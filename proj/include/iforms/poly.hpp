#pragma once

#include <map>
#include <optional>
#include <vector>

#include "iforms/linalg.hpp"

namespace iforms {

/// Dense fixed-length exponent vector; index i is the exponent of x_i.
using Expo = std::vector<unsigned>;

unsigned total_degree(const Expo& e);

/// Monomials of total degree d in n variables, in ascending lexicographic
/// order of the exponent vector. This ordering fixes every basis downstream.
std::vector<Expo> monomials_of_degree(int n, unsigned d);
long count_monomials(int n, unsigned d);

/// Sparse multivariate polynomial over Scalar on a fixed ambient space.
/// Terms are kept in a sorted map so iteration order is deterministic;
/// zero coefficients are never stored.
class Poly {
public:
    explicit Poly(int ambient_dim) : n_(ambient_dim) {
        if (ambient_dim < 0) throw structural_error("negative ambient dimension");
    }

    static Poly constant(int n, Scalar c);
    static Poly variable(int n, int i);
    static Poly monomial(int n, Expo e, Scalar c);

    int ambient_dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Expo, Scalar>& terms() const { return terms_; }

    void add_term(const Expo& e, const Scalar& c);
    Scalar coeff(const Expo& e) const;
    Scalar value_at_origin() const;
    unsigned degree() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);

    bool operator==(const Poly& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string str() const;

private:
    int n_;
    std::map<Expo, Scalar> terms_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Scalar& c, Poly p);

/// Product with the truncation cutoff of the ambient computation context:
/// terms of total degree above the cutoff are dropped. Every other operation
/// is exact, so the cutoff is the single source of approximation.
Poly mul_truncated(const Poly& a, const Poly& b, std::optional<unsigned> cutoff);

/// Formal partial derivative with respect to x_i (0-based).
Poly partial_derivative(const Poly& p, int i);

/// p(A u): A has p.ambient_dim() rows; the result lives in A.cols() variables.
/// Degree-homogeneous input stays degree-homogeneous of the same degree.
Poly linear_substitute(const Poly& p, const Mat& a);

/// Terms of total degree exactly m.
Poly graded_component(const Poly& p, unsigned m);

std::ostream& operator<<(std::ostream& os, const Poly& p);

} // namespace iforms
