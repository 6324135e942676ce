//! The law catalog, grouped as metric, measure, transport, monad, and
//! monoidal structure.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::{Checks, LawEntry, LawKind};
use crate::error::{Error, Result};
use crate::gen::{self, SizeBudget};
use crate::json::{Workspace, WorkspaceWriter};
use crate::measure::{dirac, integrate, partial_integral, pushforward, Measure};
use crate::metric::{
    associator, braiding, compose, identity, left_unitor, proj1, proj2, right_unitor, sum_functional, tensor,
    tensor_map, tensor_n, terminal, FinMetricSpace, Label, ShortFunctional, ShortMap,
};
use crate::monad::{expectation, nested_distance, NestedMeasure};
use crate::rational::{self, Rational};
use crate::structure::{
    associate_measure, braid_measure, convolve, delta2, independent_maps, interchange_measure,
    is_independent, is_independent_family, law_product, marginals, marginals_n, nabla2, product,
    product_n, strength, InternalMonoid, Law,
};
use crate::transport::{wasserstein, wasserstein_oracle};

use LawKind::{Asserted, ExpectedCounterexample};

pub fn catalog() -> &'static [LawEntry] {
    CATALOG
}

macro_rules! law {
    ($id:literal, $kind:expr, $shape:literal, $statement:literal, $gen:expr, $check:expr) => {
        LawEntry {
            id: $id,
            statement: $statement,
            instance_shape: $shape,
            kind: $kind,
            generate: $gen,
            check: $check,
        }
    };
}

static CATALOG: &[LawEntry] = &[
    // Metric spaces and the tensor product.
    law!("tensor_sum_metric", Asserted, "spaces X, Y",
        "X ⊗ Y with d((x,y),(x',y')) = d(x,x') + d(y,y') is a metric space",
        gen_xy, check_tensor_sum_metric),
    law!("tensor_associative", Asserted, "spaces X, Y, Z",
        "the associator (X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z) is a bijective isometry",
        gen_xyz, check_tensor_associative),
    law!("tensor_unital", Asserted, "space X",
        "the unitors 1 ⊗ X → X and X ⊗ 1 → X are bijective isometries",
        gen_x, check_tensor_unital),
    law!("braiding_isometric_involution", Asserted, "spaces X, Y",
        "the braiding X ⊗ Y → Y ⊗ X is an isometry and its own inverse",
        gen_xy, check_braiding),
    // Measures, integration, pushforward.
    law!("dirac_integral", Asserted, "space X, short functional h",
        "∫ h dδ_x = h(x) for every point x",
        gen_x_h, check_dirac_integral),
    law!("pushforward_functorial", Asserted, "spaces X, Y, Z, short maps f: X → Y, g: Y → Z, measure p on X",
        "(g ∘ f)_* p = g_* f_* p and id_* p = p",
        gen_pushforward_functorial, check_pushforward_functorial),
    law!("pushforward_integral", Asserted, "spaces X, Y, short map f: X → Y, short functional h on Y, measure p on X",
        "∫ h d(f_* p) = ∫ (h ∘ f) dp",
        gen_pushforward_integral, check_pushforward_integral),
    law!("integration_linear_monotone", Asserted, "space X, short functionals h, k, measure p",
        "integration is affine in the integrand and monotone: ∫ min(h,k) dp ≤ ∫ h dp",
        gen_linear, check_linear),
    law!("partial_integral_fubini", Asserted, "spaces X, Y, short functional h on X ⊗ Y, measures p on X, q on Y",
        "y ↦ ∫ h(x,y) dp(x) is short and integrating it against q gives ∫ h d(p ⊗ q)",
        gen_fubini, check_fubini),
    law!("sum_functional_short", Asserted, "spaces X, Y, short functionals h on X, k on Y, measures p, q",
        "(x,y) ↦ h(x) + k(y) is short on X ⊗ Y with integral ∫ h dp + ∫ k dq against p ⊗ q",
        gen_sum_functional, check_sum_functional),
    law!("affine_terminal", Asserted, "space X, measure p",
        "the terminal space carries exactly one measure, and every pushforward to it is that measure",
        gen_pq, check_affine),
    // Optimal transport.
    law!("kantorovich_duality", Asserted, "space X, measures p, q, short functionals h1, h2, h3",
        "the optimal coupling cost equals the value of a short dual witness, and no short functional exceeds it",
        gen_duality, check_duality),
    law!("oracle_equivalence", Asserted, "space X, measures p, q with at most 4 support points each",
        "the simplex value of W1 equals the value found by enumerating every basic feasible coupling",
        gen_oracle, check_oracle),
    law!("w1_metric_axioms", Asserted, "space X, measures p, q, r",
        "W1 is symmetric, satisfies the triangle inequality, and vanishes exactly on equal measures",
        gen_pqr, check_w1_metric),
    law!("w1_dirac_formula", Asserted, "space X, measure p",
        "W1(p, δ_x) = ∫ d(-, x) dp for every point x",
        gen_pq, check_w1_dirac),
    law!("dirac_isometric", Asserted, "space X",
        "W1(δ_x, δ_y) = d(x, y) for all points x, y",
        gen_x, check_dirac_isometric),
    law!("pushforward_contraction", Asserted, "spaces X, Y, short map f: X → Y, measures p, q on X",
        "W1(f_* p, f_* q) ≤ W1(p, q)",
        gen_contraction, check_contraction),
    // The monad.
    law!("monad_left_unit", Asserted, "space X, measure p",
        "E(δ_p) = p",
        gen_pq, check_left_unit),
    law!("monad_right_unit", Asserted, "space X, measure p",
        "E((Pδ)(p)) = p",
        gen_pq, check_right_unit),
    law!("monad_associativity", Asserted, "space X, doubly nested measure M",
        "E(E_P(M)) = E((PE)(M))",
        gen_doubly_nested, check_associativity),
    law!("expectation_natural", Asserted, "spaces X, Y, short map f: X → Y, nested measure mu on X",
        "E((PPf)(mu)) = f_*(E mu)",
        gen_expectation_natural, check_expectation_natural),
    law!("expectation_short", Asserted, "space X, nested measures mu, nu",
        "W1(E mu, E nu) ≤ W1(mu, nu) on the Wasserstein space of measures",
        gen_mu_nu, check_expectation_short),
    law!("unit_isometric", Asserted, "space X, measures p, q",
        "W1(δ_p, δ_q) = W1(p, q) on the Wasserstein space of measures",
        gen_pq, check_unit_isometric),
    // Joints and marginals.
    law!("nabla_associative", Asserted, "spaces X, Y, Z, measures p, q, r",
        "(p ⊗ q) ⊗ r reassociates to p ⊗ (q ⊗ r)",
        gen_three_measures, check_nabla_associative),
    law!("nabla_unital", Asserted, "space X, measure p",
        "p ⊗ δ_* and δ_* ⊗ p map to p under the unitors",
        gen_pq, check_nabla_unital),
    law!("nabla_symmetric", Asserted, "spaces X, Y, measures p, q",
        "the braiding carries p ⊗ q to q ⊗ p",
        gen_two_measures, check_nabla_symmetric),
    law!("nabla_natural", Asserted, "spaces X, Y, Z, W, short maps f: X → Z, g: Y → W, measures p, q",
        "(f ⊗ g)_*(p ⊗ q) = f_* p ⊗ g_* q",
        gen_nabla_natural, check_nabla_natural),
    law!("nabla_isometric", Asserted, "spaces X, Y, measures p, p2 on X and q, q2 on Y",
        "W1(p ⊗ q, p2 ⊗ q2) = W1(p, p2) + W1(q, q2)",
        gen_nabla_isometric, check_nabla_isometric),
    law!("delta_coassociative", Asserted, "spaces X, Y, Z, measure r on (X ⊗ Y) ⊗ Z",
        "taking marginals in either bracketing gives the same three one-factor marginals",
        gen_triple_joint, check_delta_coassociative),
    law!("delta_counital", Asserted, "space X, measures r on X ⊗ 1 and s on 1 ⊗ X",
        "the marginal on the terminal factor is δ_* and the other marginal is the unitor image",
        gen_counital, check_delta_counital),
    law!("delta_symmetric", Asserted, "spaces X, Y, measure r on X ⊗ Y",
        "the marginals of the braided joint are the swapped marginals",
        gen_joint, check_delta_symmetric),
    law!("delta_natural", Asserted, "spaces X, Y, Z, W, short maps f: X → Z, g: Y → W, measure r on X ⊗ Y",
        "the marginals of (f ⊗ g)_* r are f_* r_X and g_* r_Y",
        gen_delta_natural, check_delta_natural),
    law!("delta_short", Asserted, "spaces X, Y, measures r, r2 on X ⊗ Y",
        "W1(r_X, r2_X) + W1(r_Y, r2_Y) ≤ W1(r, r2)",
        gen_two_joints, check_delta_short),
    law!("delta_nabla_id", Asserted, "spaces X, Y, measures p, q",
        "the marginals of p ⊗ q are p and q",
        gen_two_measures, check_delta_nabla),
    law!("nabla_delta_not_inverse", ExpectedCounterexample, "spaces X, Y, measure r on X ⊗ Y; case 0 is the perfectly correlated uniform law on {0,1} ⊗ {0,1}",
        "r_X ⊗ r_Y = r fails for correlated joints",
        gen_not_inverse, check_not_inverse),
    // Lifted structure on nested measures.
    law!("dirac_monoidal", Asserted, "spaces X, Y, measures p, q",
        "δ_x ⊗ δ_y = δ_(x,y) for all points, and ∇²(δ_p, δ_q) = δ_(p ⊗ q)",
        gen_two_measures, check_dirac_monoidal),
    law!("dirac_opmonoidal", Asserted, "spaces X, Y, measure r on X ⊗ Y",
        "the marginals of δ_(x,y) are δ_x and δ_y for all points, and Δ²(δ_r) = (δ_(r_X), δ_(r_Y))",
        gen_joint, check_dirac_opmonoidal),
    law!("expectation_monoidal", Asserted, "spaces X, Y, nested measures mu on X, nu on Y",
        "E(∇²(mu, nu)) = E mu ⊗ E nu",
        gen_nested_pair, check_expectation_monoidal),
    law!("expectation_opmonoidal", Asserted, "spaces X, Y, nested measure rho on X ⊗ Y",
        "with (rho_X, rho_Y) = Δ²(rho), the marginals of E rho are E rho_X and E rho_Y",
        gen_nested_joint, check_expectation_opmonoidal),
    law!("bimonoidality_square", Asserted, "spaces W, X, Y, Z of at most 3 points, measures r on W ⊗ X, s on Y ⊗ Z",
        "the marginals of the interchanged r ⊗ s are r_W ⊗ s_Y and r_X ⊗ s_Z",
        gen_four_factor, check_bimonoidality),
    law!("decomposition_independence", Asserted, "spaces W, X, Y, Z of at most 3 points, measures r on W ⊗ X, s on Y ⊗ Z",
        "the W ⊗ Y and X ⊗ Z marginals of the interchanged r ⊗ s are independent",
        gen_four_factor, check_decomposition),
    law!("strength_marginals", Asserted, "spaces X, Y, measure q on Y",
        "for every point x the marginals of δ_x ⊗ q are δ_x and q",
        gen_strength, check_strength),
    law!("franz_independence", Asserted, "spaces A1, A2, B1, B2, measures p1, p2, short maps g1: A1 → B1, g2: A2 → B2",
        "maps factoring through different factors of a product law are independent",
        gen_franz, check_franz),
    law!("family_independence", Asserted, "2 to 4 spaces X0.. of at most 3 points with measures p0..",
        "an n-fold product is independent and its one-factor marginals are its factors",
        gen_family, check_family),
    law!("law_product_associative", Asserted, "spaces X, Y, Z, measures p, q, r",
        "the product of laws is associative and has the terminal law as unit",
        gen_three_measures, check_law_product),
    law!("convolution_monoid", Asserted, "monoid m, measures p, q, r on its carrier",
        "convolution is associative with unit δ_e, and δ_x ∗ δ_y = δ_(xy) for all points",
        gen_convolution, check_convolution),
    law!("convolution_not_group", Asserted, "the group Z/2 with its cycle metric, measure p",
        "the uniform measure u on Z/2 has no convolution inverse: u ∗ p = u for every p, never a Dirac",
        gen_not_group, check_not_group),
    law!("convolution_short", Asserted, "monoid m, measures p, p2, q, q2 on its carrier",
        "W1(p ∗ q, p2 ∗ q2) ≤ W1(p, p2) + W1(q, q2)",
        gen_convolution_short, check_convolution_short),
];

fn den(budget: &SizeBudget) -> i64 {
    budget.max_denominator
}

fn add_space(rng: &mut ChaCha8Rng, budget: &SizeBudget, w: &mut WorkspaceWriter, name: &str) -> FinMetricSpace {
    let s = gen::space(rng, budget, &name.to_lowercase());
    w.space(name, &s);
    s
}

fn add_measure(rng: &mut ChaCha8Rng, budget: &SizeBudget, w: &mut WorkspaceWriter, name: &str, x: &FinMetricSpace) -> Measure {
    let p = gen::measure(rng, x, den(budget));
    w.measure(name, &p);
    p
}

fn add_map(rng: &mut ChaCha8Rng, w: &mut WorkspaceWriter, name: &str, x: &FinMetricSpace, y: &FinMetricSpace) {
    let f = gen::short_map(rng, x, y);
    w.map(name, &f);
}

fn add_functional(rng: &mut ChaCha8Rng, budget: &SizeBudget, w: &mut WorkspaceWriter, name: &str, x: &FinMetricSpace) {
    let h = gen::functional(rng, x, den(budget));
    w.functional(name, &h);
}

/// Table of `f` is a bijection preserving all distances.
fn is_isometric_bijection(f: &ShortMap) -> bool {
    let (dom, cod) = (f.domain(), f.codomain());
    let mut seen = vec![false; cod.len()];
    for &y in f.table() {
        if std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    dom.len() == cod.len()
        && (0..dom.len()).all(|i| (0..dom.len()).all(|j| cod.d(f.apply(i), f.apply(j)) == dom.d(i, j)))
}

fn zero() -> Rational {
    rational::int(0)
}

// Generators.

fn gen_x(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    add_space(rng, b, &mut w, "X");
    w.finish()
}

fn gen_xy(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    add_space(rng, b, &mut w, "X");
    add_space(rng, b, &mut w, "Y");
    w.finish()
}

fn gen_xyz(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    for name in ["X", "Y", "Z"] {
        add_space(rng, b, &mut w, name);
    }
    w.finish()
}

fn gen_x_h(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    add_functional(rng, b, &mut w, "h", &x);
    w.finish()
}

fn gen_pq(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let p = add_measure(rng, b, &mut w, "p", &x);
    // Occasionally equal measures, to exercise the degenerate path.
    if rng.gen_ratio(1, 8) {
        w.measure("q", &p);
    } else {
        add_measure(rng, b, &mut w, "q", &x);
    }
    w.finish()
}

fn gen_pqr(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    for name in ["p", "q", "r"] {
        add_measure(rng, b, &mut w, name, &x);
    }
    w.finish()
}

fn gen_pushforward_functorial(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    let z = add_space(rng, b, &mut w, "Z");
    add_map(rng, &mut w, "f", &x, &y);
    add_map(rng, &mut w, "g", &y, &z);
    add_measure(rng, b, &mut w, "p", &x);
    w.finish()
}

fn gen_pushforward_integral(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    add_map(rng, &mut w, "f", &x, &y);
    add_functional(rng, b, &mut w, "h", &y);
    add_measure(rng, b, &mut w, "p", &x);
    w.finish()
}

fn gen_linear(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    add_functional(rng, b, &mut w, "h", &x);
    add_functional(rng, b, &mut w, "k", &x);
    add_measure(rng, b, &mut w, "p", &x);
    w.finish()
}

fn gen_fubini(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    add_functional(rng, b, &mut w, "h", &tensor(&x, &y));
    add_measure(rng, b, &mut w, "p", &x);
    add_measure(rng, b, &mut w, "q", &y);
    w.finish()
}

fn gen_sum_functional(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    add_functional(rng, b, &mut w, "h", &x);
    add_functional(rng, b, &mut w, "k", &y);
    add_measure(rng, b, &mut w, "p", &x);
    add_measure(rng, b, &mut w, "q", &y);
    w.finish()
}

fn gen_duality(rng: &mut ChaCha8Rng, b: &SizeBudget, case: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let p = add_measure(rng, b, &mut w, "p", &x);
    if case % 10 == 9 {
        w.measure("q", &p);
    } else {
        add_measure(rng, b, &mut w, "q", &x);
    }
    for name in ["h1", "h2", "h3"] {
        add_functional(rng, b, &mut w, name, &x);
    }
    w.finish()
}

fn gen_oracle(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    for name in ["p", "q"] {
        let m = gen::measure_on_support(rng, &x, den(b), 4);
        w.measure(name, &m);
    }
    w.finish()
}

fn gen_contraction(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    add_map(rng, &mut w, "f", &x, &y);
    add_measure(rng, b, &mut w, "p", &x);
    add_measure(rng, b, &mut w, "q", &x);
    w.finish()
}

fn gen_doubly_nested(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let m = gen::doubly_nested(rng, &x, b);
    w.doubly_nested("M", &m);
    w.finish()
}

fn gen_expectation_natural(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    add_map(rng, &mut w, "f", &x, &y);
    let mu = gen::nested(rng, &x, b);
    w.nested("mu", &mu);
    w.finish()
}

fn gen_mu_nu(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let mu = gen::nested(rng, &x, b);
    let nu = gen::nested(rng, &x, b);
    w.nested("mu", &mu).nested("nu", &nu);
    w.finish()
}

fn gen_two_measures(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    add_measure(rng, b, &mut w, "p", &x);
    add_measure(rng, b, &mut w, "q", &y);
    w.finish()
}

fn gen_three_measures(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    for (space, measure) in [("X", "p"), ("Y", "q"), ("Z", "r")] {
        let s = add_space(rng, b, &mut w, space);
        add_measure(rng, b, &mut w, measure, &s);
    }
    w.finish()
}

fn gen_nabla_natural(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    let z = add_space(rng, b, &mut w, "Z");
    let v = add_space(rng, b, &mut w, "W");
    add_map(rng, &mut w, "f", &x, &z);
    add_map(rng, &mut w, "g", &y, &v);
    add_measure(rng, b, &mut w, "p", &x);
    add_measure(rng, b, &mut w, "q", &y);
    w.finish()
}

fn gen_nabla_isometric(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    add_measure(rng, b, &mut w, "p", &x);
    add_measure(rng, b, &mut w, "p2", &x);
    add_measure(rng, b, &mut w, "q", &y);
    add_measure(rng, b, &mut w, "q2", &y);
    w.finish()
}

fn gen_joint(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    add_measure(rng, b, &mut w, "r", &tensor(&x, &y));
    w.finish()
}

fn gen_two_joints(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    let xy = tensor(&x, &y);
    add_measure(rng, b, &mut w, "r", &xy);
    add_measure(rng, b, &mut w, "r2", &xy);
    w.finish()
}

fn gen_triple_joint(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    let z = add_space(rng, b, &mut w, "Z");
    add_measure(rng, b, &mut w, "r", &tensor_n(&[x, y, z]));
    w.finish()
}

fn gen_counital(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let one = terminal();
    w.space("I", &one);
    add_measure(rng, b, &mut w, "r", &tensor(&x, &one));
    add_measure(rng, b, &mut w, "s", &tensor(&one, &x));
    w.finish()
}

fn gen_delta_natural(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    let z = add_space(rng, b, &mut w, "Z");
    let v = add_space(rng, b, &mut w, "W");
    add_map(rng, &mut w, "f", &x, &z);
    add_map(rng, &mut w, "g", &y, &v);
    add_measure(rng, b, &mut w, "r", &tensor(&x, &y));
    w.finish()
}

/// The uniform law on the diagonal of `{0,1} ⊗ {0,1}` with `d(0,1) = 1`.
fn correlated_witness() -> Value {
    let bit = FinMetricSpace::from_atoms(
        &["0", "1"],
        vec![vec![zero(), rational::int(1)], vec![rational::int(1), zero()]],
    )
    .expect("two-point metric");
    let xy = tensor(&bit, &bit);
    let half = rational::ratio(1, 2);
    let r = Measure::new(xy, vec![half.clone(), zero(), zero(), half]).expect("probability measure");
    let mut w = WorkspaceWriter::new();
    w.space("X", &bit).space("Y", &bit).measure("r", &r);
    w.finish()
}

fn gen_not_inverse(rng: &mut ChaCha8Rng, b: &SizeBudget, case: usize) -> Value {
    if case == 0 {
        correlated_witness()
    } else {
        gen_joint(rng, b, case)
    }
}

fn gen_nested_pair(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    let mu = gen::nested(rng, &x, b);
    let nu = gen::nested(rng, &y, b);
    w.nested("mu", &mu).nested("nu", &nu);
    w.finish()
}

fn gen_nested_joint(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let x = add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    let rho = gen::nested(rng, &tensor(&x, &y), b);
    w.nested("rho", &rho);
    w.finish()
}

fn gen_four_factor(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let small = b.capped(3);
    let mut w = WorkspaceWriter::new();
    let s: Vec<FinMetricSpace> = ["W", "X", "Y", "Z"]
        .iter()
        .map(|name| add_space(rng, &small, &mut w, name))
        .collect();
    add_measure(rng, b, &mut w, "r", &tensor(&s[0], &s[1]));
    add_measure(rng, b, &mut w, "s", &tensor(&s[2], &s[3]));
    w.finish()
}

fn gen_strength(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    add_space(rng, b, &mut w, "X");
    let y = add_space(rng, b, &mut w, "Y");
    add_measure(rng, b, &mut w, "q", &y);
    w.finish()
}

fn gen_franz(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let mut w = WorkspaceWriter::new();
    let a1 = add_space(rng, b, &mut w, "A1");
    let a2 = add_space(rng, b, &mut w, "A2");
    let b1 = add_space(rng, b, &mut w, "B1");
    let b2 = add_space(rng, b, &mut w, "B2");
    add_measure(rng, b, &mut w, "p1", &a1);
    add_measure(rng, b, &mut w, "p2", &a2);
    add_map(rng, &mut w, "g1", &a1, &b1);
    add_map(rng, &mut w, "g2", &a2, &b2);
    w.finish()
}

fn gen_family(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let small = b.capped(3);
    let k = rng.gen_range(2..=4);
    let mut w = WorkspaceWriter::new();
    for i in 0..k {
        let x = add_space(rng, &small, &mut w, &format!("X{i}"));
        add_measure(rng, b, &mut w, &format!("p{i}"), &x);
    }
    w.finish()
}

fn gen_convolution(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let m = gen::monoid(rng, b);
    let mut w = WorkspaceWriter::new();
    w.space("M", m.carrier()).monoid("m", &m);
    for name in ["p", "q", "r"] {
        add_measure(rng, b, &mut w, name, m.carrier());
    }
    w.finish()
}

fn gen_not_group(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let m = InternalMonoid::cyclic(2);
    let mut w = WorkspaceWriter::new();
    w.space("M", m.carrier()).monoid("m", &m);
    add_measure(rng, b, &mut w, "p", m.carrier());
    w.finish()
}

fn gen_convolution_short(rng: &mut ChaCha8Rng, b: &SizeBudget, _: usize) -> Value {
    let m = gen::monoid(rng, b);
    let mut w = WorkspaceWriter::new();
    w.space("M", m.carrier()).monoid("m", &m);
    for name in ["p", "p2", "q", "q2"] {
        add_measure(rng, b, &mut w, name, m.carrier());
    }
    w.finish()
}

// Checkers.

fn check_tensor_sum_metric(ws: &Workspace) -> Result<Checks> {
    let (x, y) = (ws.space("X")?, ws.space("Y")?);
    let xy = tensor(x, y);
    let mut c = Checks::new();
    let rebuilt = FinMetricSpace::new(xy.points().to_vec(), xy.matrix());
    c.truth("metric axioms hold on X ⊗ Y", rebuilt.is_ok());
    let m = y.len();
    for i in 0..xy.len() {
        for j in 0..xy.len() {
            let sum = x.d(i / m, j / m) + y.d(i % m, j % m);
            c.rationals("d((x,y),(x',y')) = d(x,x') + d(y,y')", xy.d(i, j), &sum);
        }
    }
    Ok(c)
}

fn check_tensor_associative(ws: &Workspace) -> Result<Checks> {
    let (x, y, z) = (ws.space("X")?, ws.space("Y")?, ws.space("Z")?);
    let a = associator(x, y, z);
    let mut c = Checks::new();
    c.truth("associator is a bijective isometry", is_isometric_bijection(&a));
    for i in 0..a.domain().len() {
        let (xy, l) = match a.domain().label(i) {
            Label::Pair(xy, l) => (xy.as_ref(), l.as_ref()),
            Label::Atom(_) => return Err(Error::NotATensor),
        };
        let Label::Pair(lx, ly) = xy else { return Err(Error::NotATensor) };
        let expected = Label::pair((**lx).clone(), Label::pair((**ly).clone(), l.clone()));
        c.truth("associator maps ((x,y),z) to (x,(y,z))", a.codomain().label(a.apply(i)) == &expected);
    }
    Ok(c)
}

fn check_tensor_unital(ws: &Workspace) -> Result<Checks> {
    let x = ws.space("X")?;
    let mut c = Checks::new();
    c.truth("left unitor is a bijective isometry", is_isometric_bijection(&left_unitor(x)));
    c.truth("right unitor is a bijective isometry", is_isometric_bijection(&right_unitor(x)));
    Ok(c)
}

fn check_braiding(ws: &Workspace) -> Result<Checks> {
    let (x, y) = (ws.space("X")?, ws.space("Y")?);
    let there = braiding(x, y);
    let back = braiding(y, x);
    let mut c = Checks::new();
    c.truth("braiding is a bijective isometry", is_isometric_bijection(&there));
    c.truth("braiding twice is the identity", compose(&there, &back)? == identity(&tensor(x, y)));
    Ok(c)
}

fn check_dirac_integral(ws: &Workspace) -> Result<Checks> {
    let h = ws.functional("h")?;
    let x = h.domain();
    let mut c = Checks::new();
    for i in 0..x.len() {
        c.rationals("∫ h dδ_x = h(x)", &integrate(h, &dirac(x, i)?)?, h.value(i));
    }
    Ok(c)
}

fn check_pushforward_functorial(ws: &Workspace) -> Result<Checks> {
    let (f, g, p) = (ws.map("f")?, ws.map("g")?, ws.measure("p")?);
    let gf = compose(f, g)?;
    let mut c = Checks::new();
    c.measures("(g ∘ f)_* p = g_* f_* p", &pushforward(&gf, p)?, &pushforward(g, &pushforward(f, p)?)?);
    c.measures("id_* p = p", &pushforward(&identity(p.space()), p)?, p);
    Ok(c)
}

fn check_pushforward_integral(ws: &Workspace) -> Result<Checks> {
    let (f, h, p) = (ws.map("f")?, ws.functional("h")?, ws.measure("p")?);
    let mut c = Checks::new();
    c.rationals(
        "∫ h d(f_* p) = ∫ (h ∘ f) dp",
        &integrate(h, &pushforward(f, p)?)?,
        &integrate(&h.precompose(f)?, p)?,
    );
    Ok(c)
}

fn check_linear(ws: &Workspace) -> Result<Checks> {
    let (h, k, p) = (ws.functional("h")?, ws.functional("k")?, ws.measure("p")?);
    let x = h.domain();
    let (ih, ik) = (integrate(h, p)?, integrate(k, p)?);
    let mut c = Checks::new();
    for t in [zero(), rational::ratio(1, 3), rational::ratio(1, 2), rational::int(1)] {
        let s = rational::int(1) - &t;
        let mix: Vec<Rational> = h.values().iter().zip(k.values()).map(|(a, b)| &t * a + &s * b).collect();
        let mix = ShortFunctional::new(x.clone(), mix)?;
        c.rationals("∫ (t h + (1-t) k) dp = t ∫ h dp + (1-t) ∫ k dp", &integrate(&mix, p)?, &(&t * &ih + &s * &ik));
    }
    let shifted: Vec<Rational> = h.values().iter().map(|v| v + rational::int(1)).collect();
    let shifted = ShortFunctional::new(x.clone(), shifted)?;
    c.rationals("∫ (h + 1) dp = ∫ h dp + 1", &integrate(&shifted, p)?, &(&ih + rational::int(1)));
    let lower: Vec<Rational> = h.values().iter().zip(k.values()).map(|(a, b)| a.min(b).clone()).collect();
    let lower = ShortFunctional::new(x.clone(), lower)?;
    c.at_most("∫ min(h,k) dp ≤ ∫ h dp", &integrate(&lower, p)?, &ih);
    Ok(c)
}

fn check_fubini(ws: &Workspace) -> Result<Checks> {
    let (h, p, q) = (ws.functional("h")?, ws.measure("p")?, ws.measure("q")?);
    let inner = partial_integral(h, p)?;
    let mut c = Checks::new();
    c.rationals("∫ (∫ h dp) dq = ∫ h d(p ⊗ q)", &integrate(&inner, q)?, &integrate(h, &product(p, q))?);
    Ok(c)
}

fn check_sum_functional(ws: &Workspace) -> Result<Checks> {
    let (h, k) = (ws.functional("h")?, ws.functional("k")?);
    let (p, q) = (ws.measure("p")?, ws.measure("q")?);
    let s = sum_functional(h, k)?;
    let mut c = Checks::new();
    c.rationals(
        "∫ (h ⊕ k) d(p ⊗ q) = ∫ h dp + ∫ k dq",
        &integrate(&s, &product(p, q))?,
        &(integrate(h, p)? + integrate(k, q)?),
    );
    Ok(c)
}

fn check_affine(ws: &Workspace) -> Result<Checks> {
    let (p, q) = (ws.measure("p")?, ws.measure("q")?);
    let one = terminal();
    let only = dirac(&one, 0)?;
    let mut c = Checks::new();
    c.measures("!_* p = δ_*", &pushforward(&crate::metric::bang(p.space()), p)?, &only);
    c.measures("!_* p = !_* q", &pushforward(&crate::metric::bang(p.space()), p)?, &pushforward(&crate::metric::bang(q.space()), q)?);
    c.measures("uniform measure on 1 is δ_*", &Measure::uniform(&one), &only);
    c.truth("any weight vector on 1 other than [1] is rejected", Measure::new(one, vec![rational::ratio(1, 2)]).is_err());
    Ok(c)
}

fn check_duality(ws: &Workspace) -> Result<Checks> {
    let (p, q) = (ws.measure("p")?, ws.measure("q")?);
    let t = wasserstein(p, q)?;
    let mut c = Checks::new();
    c.truth("coupling has marginals p and q and the stated cost", t.plan.verify().is_ok());
    c.rationals("primal cost = W1", t.plan.cost(), &t.value);
    let phi = t.witness.potential();
    c.truth("witness is short", ShortFunctional::new(phi.domain().clone(), phi.values().to_vec()).is_ok());
    c.rationals("∫ f dp - ∫ f dq = W1", &t.witness.value(p, q)?, &t.value);
    for name in ["h1", "h2", "h3"] {
        let h = ws.functional(name)?;
        c.at_most("∫ h dp - ∫ h dq ≤ W1 for short h", &(integrate(h, p)? - integrate(h, q)?), &t.value);
    }
    Ok(c)
}

fn check_oracle(ws: &Workspace) -> Result<Checks> {
    let (p, q) = (ws.measure("p")?, ws.measure("q")?);
    let mut c = Checks::new();
    c.rationals("simplex W1 = enumerated W1", &wasserstein(p, q)?.value, &wasserstein_oracle(p, q)?);
    Ok(c)
}

fn check_w1_metric(ws: &Workspace) -> Result<Checks> {
    let (p, q, r) = (ws.measure("p")?, ws.measure("q")?, ws.measure("r")?);
    let (pq, qp) = (wasserstein(p, q)?.value, wasserstein(q, p)?.value);
    let (qr, pr) = (wasserstein(q, r)?.value, wasserstein(p, r)?.value);
    let mut c = Checks::new();
    c.rationals("W1(p,q) = W1(q,p)", &pq, &qp);
    c.at_most("W1(p,r) ≤ W1(p,q) + W1(q,r)", &pr, &(&pq + &qr));
    c.rationals("W1(p,p) = 0", &wasserstein(p, p)?.value, &zero());
    c.truth("W1(p,q) = 0 exactly when p = q", (pq == zero()) == (p == q));
    Ok(c)
}

fn check_w1_dirac(ws: &Workspace) -> Result<Checks> {
    let p = ws.measure("p")?;
    let x = p.space();
    let mut c = Checks::new();
    for i in 0..x.len() {
        let expected = integrate(&ShortFunctional::distance_to(x, i), p)?;
        c.rationals("W1(p, δ_x) = ∫ d(-,x) dp", &wasserstein(p, &dirac(x, i)?)?.value, &expected);
    }
    Ok(c)
}

fn check_dirac_isometric(ws: &Workspace) -> Result<Checks> {
    let x = ws.space("X")?;
    let mut c = Checks::new();
    for i in 0..x.len() {
        for j in 0..x.len() {
            c.rationals("W1(δ_x, δ_y) = d(x,y)", &wasserstein(&dirac(x, i)?, &dirac(x, j)?)?.value, x.d(i, j));
        }
    }
    Ok(c)
}

fn check_contraction(ws: &Workspace) -> Result<Checks> {
    let (f, p, q) = (ws.map("f")?, ws.measure("p")?, ws.measure("q")?);
    let mut c = Checks::new();
    c.at_most(
        "W1(f_* p, f_* q) ≤ W1(p, q)",
        &wasserstein(&pushforward(f, p)?, &pushforward(f, q)?)?.value,
        &wasserstein(p, q)?.value,
    );
    Ok(c)
}

fn check_left_unit(ws: &Workspace) -> Result<Checks> {
    let p = ws.measure("p")?;
    let mut c = Checks::new();
    c.measures("E(δ_p) = p", &expectation(&NestedMeasure::unit(p)), p);
    Ok(c)
}

fn check_right_unit(ws: &Workspace) -> Result<Checks> {
    let p = ws.measure("p")?;
    let mut c = Checks::new();
    c.measures("E((Pδ)(p)) = p", &expectation(&NestedMeasure::of_diracs(p)), p);
    Ok(c)
}

fn check_associativity(ws: &Workspace) -> Result<Checks> {
    let m = ws.doubly_nested("M")?;
    let mut c = Checks::new();
    c.measures("E(E_P(M)) = E((PE)(M))", &expectation(&m.flatten()), &expectation(&m.map_expectation()));
    Ok(c)
}

fn check_expectation_natural(ws: &Workspace) -> Result<Checks> {
    let (f, mu) = (ws.map("f")?, ws.nested("mu")?);
    let mut c = Checks::new();
    c.measures("E((PPf)(mu)) = f_*(E mu)", &expectation(&mu.map(f)?), &pushforward(f, &expectation(mu))?);
    Ok(c)
}

fn check_expectation_short(ws: &Workspace) -> Result<Checks> {
    let (mu, nu) = (ws.nested("mu")?, ws.nested("nu")?);
    let mut c = Checks::new();
    c.at_most(
        "W1(E mu, E nu) ≤ W1(mu, nu)",
        &wasserstein(&expectation(mu), &expectation(nu))?.value,
        &nested_distance(mu, nu)?,
    );
    Ok(c)
}

fn check_unit_isometric(ws: &Workspace) -> Result<Checks> {
    let (p, q) = (ws.measure("p")?, ws.measure("q")?);
    let mut c = Checks::new();
    c.rationals(
        "W1(δ_p, δ_q) = W1(p, q)",
        &nested_distance(&NestedMeasure::unit(p), &NestedMeasure::unit(q))?,
        &wasserstein(p, q)?.value,
    );
    Ok(c)
}

fn check_nabla_associative(ws: &Workspace) -> Result<Checks> {
    let (p, q, r) = (ws.measure("p")?, ws.measure("q")?, ws.measure("r")?);
    let mut c = Checks::new();
    c.measures(
        "α_*((p ⊗ q) ⊗ r) = p ⊗ (q ⊗ r)",
        &associate_measure(&product(&product(p, q), r))?,
        &product(p, &product(q, r)),
    );
    Ok(c)
}

fn check_nabla_unital(ws: &Workspace) -> Result<Checks> {
    let p = ws.measure("p")?;
    let x = p.space();
    let star = dirac(&terminal(), 0)?;
    let mut c = Checks::new();
    c.measures("ρ_*(p ⊗ δ_*) = p", &pushforward(&right_unitor(x), &product(p, &star))?, p);
    c.measures("λ_*(δ_* ⊗ p) = p", &pushforward(&left_unitor(x), &product(&star, p))?, p);
    Ok(c)
}

fn check_nabla_symmetric(ws: &Workspace) -> Result<Checks> {
    let (p, q) = (ws.measure("p")?, ws.measure("q")?);
    let mut c = Checks::new();
    c.measures("σ_*(p ⊗ q) = q ⊗ p", &braid_measure(&product(p, q))?, &product(q, p));
    c.measures(
        "braiding map agrees with reindexing",
        &pushforward(&braiding(p.space(), q.space()), &product(p, q))?,
        &product(q, p),
    );
    Ok(c)
}

fn check_nabla_natural(ws: &Workspace) -> Result<Checks> {
    let (f, g, p, q) = (ws.map("f")?, ws.map("g")?, ws.measure("p")?, ws.measure("q")?);
    let mut c = Checks::new();
    c.measures(
        "(f ⊗ g)_*(p ⊗ q) = f_* p ⊗ g_* q",
        &pushforward(&tensor_map(f, g), &product(p, q))?,
        &product(&pushforward(f, p)?, &pushforward(g, q)?),
    );
    Ok(c)
}

fn check_nabla_isometric(ws: &Workspace) -> Result<Checks> {
    let (p, p2, q, q2) = (ws.measure("p")?, ws.measure("p2")?, ws.measure("q")?, ws.measure("q2")?);
    let mut c = Checks::new();
    c.rationals(
        "W1(p ⊗ q, p2 ⊗ q2) = W1(p, p2) + W1(q, q2)",
        &wasserstein(&product(p, q), &product(p2, q2))?.value,
        &(wasserstein(p, p2)?.value + wasserstein(q, q2)?.value),
    );
    Ok(c)
}

fn check_delta_coassociative(ws: &Workspace) -> Result<Checks> {
    let r = ws.measure("r")?;
    let (rxy, rz) = marginals(r)?;
    let (rx, ry) = marginals(&rxy)?;
    let (rx2, ryz) = marginals(&associate_measure(r)?)?;
    let (ry2, rz2) = marginals(&ryz)?;
    let mut c = Checks::new();
    c.measures("X marginal agrees", &rx, &rx2);
    c.measures("Y marginal agrees", &ry, &ry2);
    c.measures("Z marginal agrees", &rz, &rz2);
    Ok(c)
}

fn check_delta_counital(ws: &Workspace) -> Result<Checks> {
    let (r, s) = (ws.measure("r")?, ws.measure("s")?);
    let x = ws.space("X")?;
    let star = dirac(&terminal(), 0)?;
    let (rx, r1) = marginals(r)?;
    let (s1, sx) = marginals(s)?;
    let mut c = Checks::new();
    c.measures("terminal marginal of r is δ_*", &r1, &star);
    c.measures("X marginal of r is ρ_* r", &rx, &pushforward(&right_unitor(x), r)?);
    c.measures("terminal marginal of s is δ_*", &s1, &star);
    c.measures("X marginal of s is λ_* s", &sx, &pushforward(&left_unitor(x), s)?);
    Ok(c)
}

fn check_delta_symmetric(ws: &Workspace) -> Result<Checks> {
    let r = ws.measure("r")?;
    let (rx, ry) = marginals(r)?;
    let (ly, lx) = marginals(&braid_measure(r)?)?;
    let mut c = Checks::new();
    c.measures("first marginal of σ_* r is r_Y", &ly, &ry);
    c.measures("second marginal of σ_* r is r_X", &lx, &rx);
    Ok(c)
}

fn check_delta_natural(ws: &Workspace) -> Result<Checks> {
    let (f, g, r) = (ws.map("f")?, ws.map("g")?, ws.measure("r")?);
    let (rx, ry) = marginals(r)?;
    let (a, b) = marginals(&pushforward(&tensor_map(f, g), r)?)?;
    let mut c = Checks::new();
    c.measures("first marginal of (f ⊗ g)_* r is f_* r_X", &a, &pushforward(f, &rx)?);
    c.measures("second marginal of (f ⊗ g)_* r is g_* r_Y", &b, &pushforward(g, &ry)?);
    Ok(c)
}

fn check_delta_short(ws: &Workspace) -> Result<Checks> {
    let (r, r2) = (ws.measure("r")?, ws.measure("r2")?);
    let (rx, ry) = marginals(r)?;
    let (sx, sy) = marginals(r2)?;
    let mut c = Checks::new();
    c.at_most(
        "W1(r_X, r2_X) + W1(r_Y, r2_Y) ≤ W1(r, r2)",
        &(wasserstein(&rx, &sx)?.value + wasserstein(&ry, &sy)?.value),
        &wasserstein(r, r2)?.value,
    );
    Ok(c)
}

fn check_delta_nabla(ws: &Workspace) -> Result<Checks> {
    let (p, q) = (ws.measure("p")?, ws.measure("q")?);
    let (a, b) = marginals(&product(p, q))?;
    let mut c = Checks::new();
    c.measures("first marginal of p ⊗ q is p", &a, p);
    c.measures("second marginal of p ⊗ q is q", &b, q);
    Ok(c)
}

fn check_not_inverse(ws: &Workspace) -> Result<Checks> {
    let r = ws.measure("r")?;
    let (a, b) = marginals(r)?;
    let mut c = Checks::new();
    c.measures("r_X ⊗ r_Y = r", &product(&a, &b), r);
    Ok(c)
}

fn check_dirac_monoidal(ws: &Workspace) -> Result<Checks> {
    let (p, q) = (ws.measure("p")?, ws.measure("q")?);
    let (x, y) = (p.space(), q.space());
    let xy = tensor(x, y);
    let mut c = Checks::new();
    for i in 0..x.len() {
        for j in 0..y.len() {
            c.measures("δ_x ⊗ δ_y = δ_(x,y)", &product(&dirac(x, i)?, &dirac(y, j)?), &dirac(&xy, i * y.len() + j)?);
        }
    }
    let lifted = nabla2(&NestedMeasure::unit(p), &NestedMeasure::unit(q))?;
    let expected = NestedMeasure::unit(&product(p, q));
    c.truth("∇²(δ_p, δ_q) = δ_(p ⊗ q)", lifted == expected);
    Ok(c)
}

fn check_dirac_opmonoidal(ws: &Workspace) -> Result<Checks> {
    let r = ws.measure("r")?;
    let (x, y) = r.space().factors().ok_or(Error::NotATensor)?;
    let mut c = Checks::new();
    for i in 0..x.len() {
        for j in 0..y.len() {
            let (a, b) = marginals(&dirac(r.space(), i * y.len() + j)?)?;
            c.measures("first marginal of δ_(x,y) is δ_x", &a, &dirac(x, i)?);
            c.measures("second marginal of δ_(x,y) is δ_y", &b, &dirac(y, j)?);
        }
    }
    let (rx, ry) = marginals(r)?;
    let (a, b) = delta2(&NestedMeasure::unit(r))?;
    c.truth("Δ²(δ_r) has left part δ_(r_X)", a == NestedMeasure::unit(&rx));
    c.truth("Δ²(δ_r) has right part δ_(r_Y)", b == NestedMeasure::unit(&ry));
    Ok(c)
}

fn check_expectation_monoidal(ws: &Workspace) -> Result<Checks> {
    let (mu, nu) = (ws.nested("mu")?, ws.nested("nu")?);
    let mut c = Checks::new();
    c.measures(
        "E(∇²(mu, nu)) = E mu ⊗ E nu",
        &expectation(&nabla2(mu, nu)?),
        &product(&expectation(mu), &expectation(nu)),
    );
    Ok(c)
}

fn check_expectation_opmonoidal(ws: &Workspace) -> Result<Checks> {
    let rho = ws.nested("rho")?;
    let (rx, ry) = delta2(rho)?;
    let (a, b) = marginals(&expectation(rho))?;
    let mut c = Checks::new();
    c.measures("first marginal of E rho = E rho_X", &a, &expectation(&rx));
    c.measures("second marginal of E rho = E rho_Y", &b, &expectation(&ry));
    Ok(c)
}

/// Marginals of `r_W ⊗ ... ` along both paths of the bimonoidality square.
fn four_factor(ws: &Workspace) -> Result<(Measure, Measure, Measure, Measure)> {
    let (r, s) = (ws.measure("r")?, ws.measure("s")?);
    let (wy, xz) = marginals(&interchange_measure(&product(r, s))?)?;
    let (rw, rx) = marginals(r)?;
    let (sy, sz) = marginals(s)?;
    Ok((wy, xz, product(&rw, &sy), product(&rx, &sz)))
}

fn check_bimonoidality(ws: &Workspace) -> Result<Checks> {
    let (wy, xz, left, right) = four_factor(ws)?;
    let mut c = Checks::new();
    c.measures("W ⊗ Y component: Δ ∘ Pχ ∘ ∇ = (∇ ⊗ ∇) ∘ χ ∘ (Δ ⊗ Δ)", &wy, &left);
    c.measures("X ⊗ Z component: Δ ∘ Pχ ∘ ∇ = (∇ ⊗ ∇) ∘ χ ∘ (Δ ⊗ Δ)", &xz, &right);
    Ok(c)
}

fn check_decomposition(ws: &Workspace) -> Result<Checks> {
    let (wy, xz, _, _) = four_factor(ws)?;
    let mut c = Checks::new();
    c.truth("W ⊗ Y marginal is independent", is_independent(&wy)?);
    c.truth("X ⊗ Z marginal is independent", is_independent(&xz)?);
    Ok(c)
}

fn check_strength(ws: &Workspace) -> Result<Checks> {
    let (x, q) = (ws.space("X")?, ws.measure("q")?);
    let mut c = Checks::new();
    for i in 0..x.len() {
        let (a, b) = marginals(&strength(x, i, q)?)?;
        c.measures("first marginal of δ_x ⊗ q is δ_x", &a, &dirac(x, i)?);
        c.measures("second marginal of δ_x ⊗ q is q", &b, q);
    }
    Ok(c)
}

fn check_franz(ws: &Workspace) -> Result<Checks> {
    let (p1, p2) = (ws.measure("p1")?, ws.measure("p2")?);
    let (g1, g2) = (ws.map("g1")?, ws.map("g2")?);
    let (a1, a2) = (p1.space(), p2.space());
    let f1 = compose(&proj1(a1, a2), g1)?;
    let f2 = compose(&proj2(a1, a2), g2)?;
    let s = law_product(&Law::new(p1.clone()), &Law::new(p2.clone()));
    let result = independent_maps(&s, &f1, &f2)?;
    let mut c = Checks::new();
    c.truth("(g1 ∘ π1, g2 ∘ π2) is independent under p1 ⊗ p2", result.independent);
    Ok(c)
}

fn check_family(ws: &Workspace) -> Result<Checks> {
    let parts: Vec<Measure> = (0..)
        .map_while(|i| ws.measures.get(&format!("p{i}")).cloned())
        .collect();
    let r = product_n(&parts)?;
    let mut c = Checks::new();
    c.truth("n-fold product is independent", is_independent_family(&r, parts.len())?);
    let back = marginals_n(&r, parts.len())?;
    for (a, b) in back.iter().zip(&parts) {
        c.measures("one-factor marginal is the factor", a, b);
    }
    Ok(c)
}

fn check_law_product(ws: &Workspace) -> Result<Checks> {
    let laws: Vec<Law> = ["p", "q", "r"]
        .iter()
        .map(|n| ws.measure(n).map(|m| Law::new(m.clone())))
        .collect::<Result<_>>()?;
    let left = law_product(&law_product(&laws[0], &laws[1]), &laws[2]);
    let right = law_product(&laws[0], &law_product(&laws[1], &laws[2]));
    let unit = law_product(&laws[0], &Law::terminal());
    let mut c = Checks::new();
    c.measures("(r ⊗ s) ⊗ t reassociates to r ⊗ (s ⊗ t)", &associate_measure(left.measure())?, right.measure());
    c.measures(
        "r ⊗ 1 is r under the unitor",
        &pushforward(&right_unitor(laws[0].space()), unit.measure())?,
        laws[0].measure(),
    );
    Ok(c)
}

fn check_convolution(ws: &Workspace) -> Result<Checks> {
    let m = ws.monoid("m")?;
    let (p, q, r) = (ws.measure("p")?, ws.measure("q")?, ws.measure("r")?);
    let x = m.carrier();
    let e = dirac(x, m.unit())?;
    let mut c = Checks::new();
    c.measures(
        "(p ∗ q) ∗ r = p ∗ (q ∗ r)",
        &convolve(&convolve(p, q, m)?, r, m)?,
        &convolve(p, &convolve(q, r, m)?, m)?,
    );
    c.measures("δ_e ∗ p = p", &convolve(&e, p, m)?, p);
    c.measures("p ∗ δ_e = p", &convolve(p, &e, m)?, p);
    for a in 0..x.len() {
        for b in 0..x.len() {
            c.measures("δ_x ∗ δ_y = δ_(xy)", &convolve(&dirac(x, a)?, &dirac(x, b)?, m)?, &dirac(x, m.op(a, b))?);
        }
    }
    Ok(c)
}

fn check_not_group(ws: &Workspace) -> Result<Checks> {
    let (m, p) = (ws.monoid("m")?, ws.measure("p")?);
    let u = Measure::uniform(m.carrier());
    let uv = convolve(&u, p, m)?;
    let mut c = Checks::new();
    c.measures("u ∗ p = u", &uv, &u);
    c.truth("u ∗ p is not a Dirac measure", uv.dirac_point().is_none());
    Ok(c)
}

fn check_convolution_short(ws: &Workspace) -> Result<Checks> {
    let m = ws.monoid("m")?;
    let (p, p2, q, q2) = (ws.measure("p")?, ws.measure("p2")?, ws.measure("q")?, ws.measure("q2")?);
    let mut c = Checks::new();
    c.at_most(
        "W1(p ∗ q, p2 ∗ q2) ≤ W1(p, p2) + W1(q, q2)",
        &wasserstein(&convolve(p, q, m)?, &convolve(p2, q2, m)?)?.value,
        &(wasserstein(p, p2)?.value + wasserstein(q, q2)?.value),
    );
    Ok(c)
}
