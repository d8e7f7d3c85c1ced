#pragma once

#include <map>
#include <vector>

#include "iforms/poly.hpp"

namespace iforms {

/// Strictly increasing 0-based coordinate indices naming dx_{i1}^...^dx_{ik}.
using IdxSet = std::vector<int>;

/// Index subsets of {0..n-1} of size k in lexicographic order.
std::vector<IdxSet> index_subsets(int n, int k);
long binomial(int n, int k);

/// Exterior differential form with polynomial coefficients on a fixed
/// coordinate space. Components are keyed by increasing index subsets;
/// zero components are never stored.
class Form {
public:
    Form(int n, int k);

    static Form from_poly(const Poly& p); // degree 0
    int ambient_dim() const { return n_; }
    int degree() const { return k_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<IdxSet, Poly>& components() const { return comps_; }

    void add_component(const IdxSet& idx, const Poly& coeff);
    Poly component(const IdxSet& idx) const;

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    bool operator==(const Form& o) const;
    bool operator!=(const Form& o) const { return !(*this == o); }

    /// Pieces by weight = coefficient degree + form degree; the exterior
    /// differential preserves this grading.
    std::map<int, Form> weight_components() const;
    bool is_weight_homogeneous(int* w = nullptr) const;

    std::string str() const;

private:
    int n_, k_;
    std::map<IdxSet, Poly> comps_;
};

Form operator+(Form a, const Form& b);
Form operator-(Form a, const Form& b);
Form operator*(const Scalar& c, Form a);
Form operator*(const Poly& p, const Form& a);

/// Linear vector field x -> A x; component i is sum_j A_{ij} x_j.
class LinearVectorField {
public:
    explicit LinearVectorField(Mat a);
    static LinearVectorField euler(int n) { return LinearVectorField(identity(n)); }

    int ambient_dim() const { return static_cast<int>(a_.rows()); }
    const Mat& matrix() const { return a_; }
    Poly component(int i) const;

private:
    Mat a_;
};

Form wedge(const Form& a, const Form& b);
Form ext_d(const Form& a);
/// Interior product; degree k >= 1 required.
Form contract(const LinearVectorField& xi, const Form& a);
/// Cartan definition d i_xi + i_xi d.
Form lie_derivative(const LinearVectorField& xi, const Form& a);

/// Pullback along the linear map u -> H u, H: R^m -> R^n given as an n x m
/// matrix; coefficients substitute, dx_i -> sum_j H_{ij} du_j.
Form pullback(const Mat& h, const Form& a);
/// Square case with an exact invertibility check.
Form pullback_linear(const Mat& g, const Form& a);

/// Homotopy operator of the polynomial Poincare lemma: each term of
/// coefficient degree m and form degree k >= 1 maps to i_E/(m+k) of itself,
/// E the Euler field.
Form poincare_homotopy(const Form& a);

/// Same, for the homothety scaling only the coordinates flagged in `fiber`
/// (the rest are carried as parameters). Terms with no fiber content map
/// to zero.
Form fiber_homotopy(const Form& a, const std::vector<bool>& fiber);

/// Kills all terms with positive degree in the flagged coordinates;
/// the k = 0 companion of fiber_homotopy.
Form fiber_restrict_to_origin(const Form& a, const std::vector<bool>& fiber);

std::ostream& operator<<(std::ostream& os, const Form& a);

} // namespace iforms

#include <json.hpp>

namespace iforms {

/// Wire format: a list of {indices: [..], coefficient: {"e1,e2,..": "p/q"}}.
nlohmann::ordered_json form_to_json(const Form& f);
Form form_from_json(const nlohmann::ordered_json& j, int ambient_dim, int degree,
                    const FieldPtr& field);

} // namespace iforms
