#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iforms/basic_forms.hpp"
#include "iforms/prng.hpp"

using namespace iforms;

namespace {

Mat rows(std::initializer_list<std::initializer_list<int>> data, int cols) {
    Mat m = zero_matrix(static_cast<long>(data.size()), cols);
    long i = 0;
    for (const auto& row : data) {
        long j = 0;
        for (int v : row) m(i, j++) = Scalar(v);
        ++i;
    }
    return m;
}

Mat neg_identity(int n) {
    Mat m = identity(n);
    for (long i = 0; i < n; ++i) m(i, i) = Scalar(-1);
    return m;
}

Mat rotation90() { return rows({{0, -1}, {1, 0}}, 2); }

BasicComplex build_group_complex(const FiniteGroupAction& g, int cutoff,
                                 const std::vector<Mat>& lie = {}) {
    const LoopSpaceModel loop(g);
    return BasicComplex(group_component_system(g, loop, lie), cutoff);
}

// Hand-built oracle for Z/2 = {1,-1} on R^1: the family space at (w,k) is
// span{x^{w-k} dx^k} on M^e plus (at (0,0)) a constant on M^{-1} = {0}.
// The single nontrivial equation is omega_e = (-1)^* omega_e, and pullback
// of x^m (dx)^k by -1 carries the sign (-1)^{m+k} = (-1)^w.
long z2_expected_dim(int w, int k) {
    if (k == 0 && w == 0) return 2;
    if (k > 1 || w < k) return 0;
    return w % 2 == 0 ? 1 : 0;
}

} // namespace

TEST_CASE("Z/2 on R^1: basic dimensions match the two-equation oracle") {
    const auto z2 = FiniteGroupAction::close({neg_identity(1)});
    const BasicComplex bc = build_group_complex(z2, 6);
    for (int w = 0; w <= 6; ++w)
        for (int k = 0; k <= 1; ++k) CHECK(bc.basic_dim(w, k) == z2_expected_dim(w, k));

    // oracle spelled out independently at (2,1): solve the pullback equation
    // on the one-dimensional slot directly through the exterior module
    Mat t = identity(1);
    t(0, 0) = Scalar(-1);
    const SlotBasis slot(1, 2, 1);
    REQUIRE(slot.dim() == 1);
    const Form xdx = slot.element_form(0);
    CHECK(pullback(t, xdx) == xdx); // invariant, so dim 1
    const SlotBasis slot11(1, 1, 1);
    const Form dx = slot11.element_form(0);
    CHECK(pullback(t, dx) == Scalar(-1) * dx); // anti-invariant, so dim 0

    // the basic basis vector at (2,1) is x dx itself (e-component only)
    const Mat& basis = bc.basic(2, 1);
    REQUIRE(basis.rows() == 1);
    CHECK(basis(0, 0) == Scalar(1));
}

TEST_CASE("trivial group: basic complex equals the full de Rham complex") {
    const auto trivial = FiniteGroupAction::close({identity(2)});
    const BasicComplex bc = build_group_complex(trivial, 5);
    for (int w = 0; w <= 5; ++w)
        for (int k = 0; k <= 2; ++k) CHECK(bc.basic_dim(w, k) == slot_dim(2, w, k));
}

TEST_CASE("cyclic 4: invariants at low weights") {
    const auto c4 = FiniteGroupAction::close({rotation90()});
    const BasicComplex bc = build_group_complex(c4, 4);
    // At (0,0): e contributes invariant constants (1), the three rotations
    // contribute one constant each; the group is abelian so conjugation
    // never identifies them: dim 4 = class count.
    CHECK(bc.basic_dim(0, 0) == 4);
    // At w >= 1 only the e component can carry anything, cut to the
    // rotation-invariant forms.
    CHECK(bc.basic_dim(1, 0) == 0);
    CHECK(bc.basic_dim(2, 0) == 1);  // x^2 + y^2
    CHECK(bc.basic_dim(2, 1) == 2);  // x dx + y dy and x dy - y dx
    CHECK(bc.basic_dim(2, 2) == 1);  // dx ^ dy (rotation-invariant)
}

TEST_CASE("family differential acts componentwise and stays basic") {
    const auto z2 = FiniteGroupAction::close({neg_identity(1)});
    const BasicComplex bc = build_group_complex(z2, 4);
    // (x^2 on M^e, nothing on M^{-1}) at (2,0) maps to (2x dx, nothing)
    const FamilySlot& fs0 = bc.family_slot(2, 0);
    REQUIRE(fs0.total == 1); // no degree-2 functions on the point component
    const Mat& d = bc.differential(2, 0);
    REQUIRE(d.rows() == 1);
    CHECK(d(0, 0) == Scalar(2));
    // d^2 = 0 as matrices everywhere
    for (int w = 0; w <= 4; ++w) {
        const Mat dd = bc.differential(w, 1) * bc.differential(w, 0);
        for (long i = 0; i < dd.rows(); ++i)
            for (long j = 0; j < dd.cols(); ++j) CHECK(dd(i, j).is_zero());
    }
}

TEST_CASE("family homotopy identities hold on basic slots") {
    const auto z2 = FiniteGroupAction::close({neg_identity(1)});
    const BasicComplex bc = build_group_complex(z2, 6);
    for (int w = 0; w <= 6; ++w) CHECK(bc.homotopy_identity_holds(w));

    const auto c4 = FiniteGroupAction::close({rotation90()});
    const BasicComplex bc4 = build_group_complex(c4, 5);
    for (int w = 0; w <= 5; ++w) CHECK(bc4.homotopy_identity_holds(w));
}

TEST_CASE("resolution checks for the finite scenarios") {
    const auto trivial = FiniteGroupAction::close({identity(2)});
    const Report r1 = resolution_check(trivial, 5);
    CHECK(r1.all_pass());

    const auto z2 = FiniteGroupAction::close({neg_identity(1)});
    const Report r2 = resolution_check(z2, 6);
    CHECK(r2.all_pass());

    const auto c4 = FiniteGroupAction::close({rotation90()});
    const Report r3 = resolution_check(c4, 6);
    CHECK(r3.all_pass());
}

TEST_CASE("fault injection makes the resolution check fail") {
    const auto z2 = FiniteGroupAction::close({neg_identity(1)});
    const Report r = resolution_check(z2, 4, true);
    CHECK_FALSE(r.all_pass());
}

TEST_CASE("Brylinski germ dimension is the class count") {
    const auto c4 = FiniteGroupAction::close({rotation90()});
    CHECK(BrylinskiGerm(c4).dimension == 4);
    const auto d8 = FiniteGroupAction::close({rows({{0, 1}, {1, 0}}, 2), rows({{-1, 0}, {0, 1}}, 2)});
    CHECK(BrylinskiGerm(d8).dimension == 5);
}

TEST_CASE("basic dimensions are invariant under basis recombination") {
    const auto d8 = FiniteGroupAction::close({rows({{0, 1}, {1, 0}}, 2), rows({{-1, 0}, {0, 1}}, 2)});
    const LoopSpaceModel loop(d8);
    int target = -1;
    for (int i = 0; i < d8.size(); ++i)
        if (loop.fixed_dim(i) == 1) { target = i; break; }
    REQUIRE(target >= 0);
    Mat scale = identity(1);
    scale(0, 0) = Scalar(Rational(7, 3));
    const LoopSpaceModel tweaked = loop.with_recombined_basis(target, scale);
    const BasicComplex a(group_component_system(d8, loop), 4);
    const BasicComplex b(group_component_system(d8, tweaked), 4);
    for (int w = 0; w <= 4; ++w)
        for (int k = 0; k <= 2; ++k) CHECK(a.basic_dim(w, k) == b.basic_dim(w, k));
}

TEST_CASE("basic dimensions are invariant under conjugating the group") {
    const Mat s = rows({{1, 1}, {0, 1}}, 2);
    const Mat sinv = inverse(s);
    const auto c4 = FiniteGroupAction::close({rotation90()});
    const auto conj = FiniteGroupAction::close({Mat(s * rotation90() * sinv)});
    const BasicComplex a = build_group_complex(c4, 4);
    const BasicComplex b = build_group_complex(conj, 4);
    for (int w = 0; w <= 4; ++w)
        for (int k = 0; k <= 2; ++k) CHECK(a.basic_dim(w, k) == b.basic_dim(w, k));
}

TEST_CASE("Lie generator hook imposes horizontality and infinitesimal invariance") {
    // trivial group on R^2 with the rotation generator: the basic slots are
    // the rotation-horizontal rotation-invariant forms.
    const auto trivial = FiniteGroupAction::close({identity(2)});
    const BasicComplex bc = build_group_complex(trivial, 4, {rotation90()});
    CHECK(bc.basic_dim(1, 1) == 0);
    CHECK(bc.basic_dim(2, 1) == 1); // x dx + y dy; the angular form is not horizontal
    CHECK(bc.basic_dim(2, 2) == 0);
    CHECK(bc.basic_dim(3, 2) == 0);
    CHECK(bc.basic_dim(1, 0) == 0);
    CHECK(bc.basic_dim(2, 0) == 1); // x^2 + y^2
    for (int w = 0; w <= 4; ++w) CHECK(bc.homotopy_identity_holds(w));
}

TEST_CASE("morita: H = G compares the action with itself") {
    const auto z2 = FiniteGroupAction::close({neg_identity(1)});
    const Report r = morita_check(z2, {0, 1}, {identity(1), neg_identity(1)}, 4);
    CHECK(r.all_pass());
}

TEST_CASE("morita: Z/2 with trivial subgroup against the swap plane") {
    const auto z2 = FiniteGroupAction::close({neg_identity(1)});
    const Report r = morita_check(z2, {0}, {identity(1)}, 4);
    CHECK(r.all_pass());
    // the H side is the trivial group on R^1: full de Rham dims
    const Json& h = r.tables["subgroup_side_dims"];
    CHECK(h["1"]["0"].get<long>() == 1);
    CHECK(h["1"]["1"].get<long>() == 1);
}

TEST_CASE("morita: S3 with a 2-element subgroup and the sign slice") {
    const Mat t12 = rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, 3);
    const Mat t23 = rows({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}, 3);
    const auto s3 = FiniteGroupAction::close({t12, t23});
    const auto [subgroup, rho] = extend_subgroup_action(s3, {s3.find(t12)}, {neg_identity(1)});
    const Report r = morita_check(s3, subgroup, rho, 4);
    CHECK(r.all_pass());
    // H side is Z/2 by sign on R^1: even weights carry one class each
    const Json& h = r.tables["subgroup_side_dims"];
    CHECK(h["0"]["0"].get<long>() == 2);
    CHECK(h["2"]["0"].get<long>() == 1);
    CHECK(h["2"]["1"].get<long>() == 1);
    CHECK(h["3"]["0"].get<long>() == 0);
}

TEST_CASE("extension field scenario: cyclic 6 over Q(sqrt 3)") {
    // rotation by 60 degrees: [[1/2, -s/2], [s/2, 1/2]] with s^2 = 3
    const FieldPtr f = std::make_shared<ExtensionField>(std::vector<Rational>{-3, 0, 1});
    const Scalar s = Scalar::primitive(f);
    const Scalar half = Scalar(Rational(1, 2));
    Mat r60 = zero_matrix(2, 2);
    r60(0, 0) = half;
    r60(0, 1) = -(s * half);
    r60(1, 0) = s * half;
    r60(1, 1) = half;
    const auto c6 = FiniteGroupAction::close({r60});
    CHECK(c6.size() == 6);
    CHECK(c6.class_count() == 6);
    const Report r = resolution_check(c6, 4);
    CHECK(r.all_pass());
}
