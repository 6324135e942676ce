//! Product joints (`∇`), marginals (`Δ`), and everything built from them:
//! strength, n-ary products, independence tests, convolution on internal
//! monoids, and the lifted maps `∇²` and `Δ²` on nested measures.
//!
//! Marginals need a registered factorization. A space that was not built by
//! [`tensor`] has none and `marginals` refuses it.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::measure::{dirac, pushforward, pushforward_table, Measure};
use crate::metric::{lipschitz_violation, tensor, terminal, FinMetricSpace, ShortMap};
use crate::monad::{wasserstein_space, NestedMeasure};
use crate::rational::Rational;

/// `p ⊗ q`, weight `p(x) q(y)` at `(x, y)`.
pub fn product(p: &Measure, q: &Measure) -> Measure {
    let space = tensor(p.space(), q.space());
    let mut weights = Vec::with_capacity(space.len());
    for a in p.weights() {
        for b in q.weights() {
            weights.push(if a.is_zero() || b.is_zero() { Rational::zero() } else { a * b });
        }
    }
    Measure::new(space, weights).expect("products of probability measures are probability measures")
}

/// `(r_X, r_Y)` for `r` on `X ⊗ Y`.
pub fn marginals(r: &Measure) -> Result<(Measure, Measure)> {
    let (x, y) = r.space().factors().ok_or(Error::NotATensor)?;
    let m = y.len();
    let mut left = vec![Rational::zero(); x.len()];
    let mut right = vec![Rational::zero(); m];
    for (k, w) in r.weights().iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        left[k / m] += w;
        right[k % m] += w;
    }
    Ok((Measure::new(x.clone(), left)?, Measure::new(y.clone(), right)?))
}

/// `∇ ∘ Δ ∘ r = r`.
pub fn is_independent(r: &Measure) -> Result<bool> {
    let (a, b) = marginals(r)?;
    Ok(&product(&a, &b) == r)
}

/// Left-nested `((p1 ⊗ p2) ⊗ p3) ⊗ ...`.
pub fn product_n(measures: &[Measure]) -> Result<Measure> {
    let (first, rest) = measures.split_first().ok_or(Error::ArityMismatch { expected: 1 })?;
    Ok(rest.iter().fold(first.clone(), |acc, q| product(&acc, q)))
}

/// The `arity` one-factor marginals of `r` on a left-nested tensor.
pub fn marginals_n(r: &Measure, arity: usize) -> Result<Vec<Measure>> {
    if arity == 0 {
        return Err(Error::ArityMismatch { expected: arity });
    }
    let mut out = Vec::with_capacity(arity);
    let mut rest = r.clone();
    for _ in 1..arity {
        let (left, last) = marginals(&rest).map_err(|_| Error::ArityMismatch { expected: arity })?;
        out.push(last);
        rest = left;
    }
    out.push(rest);
    out.reverse();
    Ok(out)
}

/// `∇_I ∘ Δ_I ∘ r = r` for an `arity`-fold left-nested tensor.
pub fn is_independent_family(r: &Measure, arity: usize) -> Result<bool> {
    let parts = marginals_n(r, arity)?;
    Ok(&product_n(&parts)? == r)
}

/// `(x, q) ↦ δ_x ⊗ q`.
pub fn strength(space: &FinMetricSpace, x: usize, q: &Measure) -> Result<Measure> {
    Ok(product(&dirac(space, x)?, q))
}

/// Joint first, then the image under `f : X ⊗ Y → Z`.
pub fn pushforward_joint(f: &ShortMap, p: &Measure, q: &Measure) -> Result<Measure> {
    pushforward(f, &product(p, q))
}

/// A monoid in the category of finite metric spaces and short maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalMonoid {
    carrier: FinMetricSpace,
    mult: ShortMap,
    unit: usize,
}

impl InternalMonoid {
    /// Checks associativity and unitality exhaustively; shortness of `mult`
    /// was checked when the map was built.
    pub fn new(carrier: FinMetricSpace, mult: ShortMap, unit: usize) -> Result<Self> {
        let square = tensor(&carrier, &carrier);
        if mult.domain() != &square || mult.codomain() != &carrier {
            return Err(Error::InvalidMonoid("multiplication must map X ⊗ X to X".into()));
        }
        let n = carrier.len();
        if unit >= n {
            return Err(Error::InvalidMonoid(format!("unit index {unit} out of range")));
        }
        let op = |a: usize, b: usize| mult.apply(a * n + b);
        for a in 0..n {
            if op(unit, a) != a || op(a, unit) != a {
                return Err(Error::InvalidMonoid(format!("{} is not neutral for {}", carrier.label(unit), carrier.label(a))));
            }
            for b in 0..n {
                for c in 0..n {
                    if op(op(a, b), c) != op(a, op(b, c)) {
                        return Err(Error::InvalidMonoid(format!(
                            "not associative on ({}, {}, {})",
                            carrier.label(a),
                            carrier.label(b),
                            carrier.label(c)
                        )));
                    }
                }
            }
        }
        Ok(InternalMonoid { carrier, mult, unit })
    }

    /// `Z/n` with the cycle metric `min(|a-b|, n-|a-b|)`; addition is short
    /// because the metric is translation invariant.
    pub fn cyclic(n: usize) -> Self {
        let carrier = integer_space(n, |a, b| {
            let k = a.abs_diff(b);
            k.min(n - k)
        });
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let mult = ShortMap::new(tensor(&carrier, &carrier), carrier.clone(), table).expect("addition is short");
        InternalMonoid::new(carrier, mult, 0).expect("Z/n is a monoid")
    }

    /// `{0, ..., n-1}` on the line, with `max` and unit 0.
    pub fn max_on_line(n: usize) -> Self {
        let carrier = integer_space(n, usize::abs_diff);
        let table = (0..n * n).map(|k| (k / n).max(k % n)).collect();
        let mult = ShortMap::new(tensor(&carrier, &carrier), carrier.clone(), table).expect("max is short");
        InternalMonoid::new(carrier, mult, 0).expect("max is a monoid")
    }

    /// `{0, ..., n-1}` on the line with addition truncated at `n-1`.
    pub fn truncated_sum(n: usize) -> Self {
        let carrier = integer_space(n, usize::abs_diff);
        let table = (0..n * n).map(|k| (k / n + k % n).min(n - 1)).collect();
        let mult = ShortMap::new(tensor(&carrier, &carrier), carrier.clone(), table)
            .expect("truncated addition is short");
        InternalMonoid::new(carrier, mult, 0).expect("truncated addition is a monoid")
    }

    pub fn carrier(&self) -> &FinMetricSpace {
        &self.carrier
    }

    pub fn mult(&self) -> &ShortMap {
        &self.mult
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mult.apply(a * self.carrier.len() + b)
    }
}

fn integer_space(n: usize, d: impl Fn(usize, usize) -> usize) -> FinMetricSpace {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let dist = (0..n)
        .map(|a| (0..n).map(|b| Rational::from_integer(d(a, b).into())).collect())
        .collect();
    FinMetricSpace::from_atoms(&refs, dist).expect("integer metric")
}

/// `PX ⊗ PX → P(X ⊗ X) → PX`.
pub fn convolve(p: &Measure, q: &Measure, m: &InternalMonoid) -> Result<Measure> {
    m.carrier.ensure_same(p.space())?;
    m.carrier.ensure_same(q.space())?;
    pushforward_joint(&m.mult, p, q)
}

/// An object together with a probability measure on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Law {
    measure: Measure,
}

impl Law {
    pub fn new(measure: Measure) -> Self {
        Law { measure }
    }

    /// The unique law on the terminal space.
    pub fn terminal() -> Self {
        Law {
            measure: Measure::uniform(&terminal()),
        }
    }

    pub fn space(&self) -> &FinMetricSpace {
        self.measure.space()
    }

    pub fn measure(&self) -> &Measure {
        &self.measure
    }
}

/// `r ⊗_∇ s` on the tensor of the two spaces.
pub fn law_product(r: &Law, s: &Law) -> Law {
    Law::new(product(&r.measure, &s.measure))
}

/// Outcome of [`independent_maps`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapIndependence {
    /// Whether `P(f1, f2) ∘ s` is the product of its marginals.
    pub independent: bool,
    /// Whether the tupling `(f1, f2) : A → B1 ⊗ B2` is short. Not required.
    pub tupling_is_short: bool,
}

/// Pushes `s` along the tupling `a ↦ (f1 a, f2 a)` and tests independence
/// of the two coordinates.
pub fn independent_maps(s: &Law, f1: &ShortMap, f2: &ShortMap) -> Result<MapIndependence> {
    if f1.domain() != f2.domain() {
        return Err(Error::DomainMismatch);
    }
    f1.domain().ensure_same(s.space())?;
    let codomain = tensor(f1.codomain(), f2.codomain());
    let m = f2.codomain().len();
    let table: Vec<usize> = (0..s.space().len()).map(|a| f1.apply(a) * m + f2.apply(a)).collect();
    let tupling_is_short = lipschitz_violation(s.space(), &codomain, &table).is_none();
    let joint = pushforward_table(s.measure(), &codomain, &table);
    Ok(MapIndependence {
        independent: is_independent(&joint)?,
        tupling_is_short,
    })
}

/// `∇² = (∇_{X,Y})_* ∘ ∇_{PX,PY} : PPX ⊗ PPY → PP(X ⊗ Y)`.
///
/// Both nested measures are placed on their Wasserstein spaces, multiplied
/// there, and pushed along `∇`, which is built as a checked short map into
/// the Wasserstein space of all products.
pub fn nabla2(mu: &NestedMeasure, nu: &NestedMeasure) -> Result<NestedMeasure> {
    let (mu, nu) = (mu.merged(), nu.merged());
    let (wx, mu_m) = mu.as_measure()?;
    let (wy, nu_m) = nu.as_measure()?;
    let joint = product(&mu_m, &nu_m);

    let products: Vec<Measure> = mu
        .inner()
        .iter()
        .flat_map(|p| nu.inner().iter().map(move |q| product(p, q)))
        .collect();
    let target = wasserstein_space(&products)?;
    let nabla = ShortMap::new(tensor(&wx, &wy), target.clone(), (0..products.len()).collect())?;
    let image = pushforward(&nabla, &joint)?;
    NestedMeasure::new(tensor(mu.base(), nu.base()), products, image.weights().to_vec())
}

/// `Δ² = Δ_{PX,PY} ∘ (Δ_{X,Y})_* : PP(X ⊗ Y) → PPX ⊗ PPY`.
///
/// `Δ` is built as a checked short map from the Wasserstein space of the
/// joints to the tensor of the Wasserstein spaces of their marginals.
pub fn delta2(mu: &NestedMeasure) -> Result<(NestedMeasure, NestedMeasure)> {
    let mu = mu.merged();
    let (x, y) = mu.base().factors().ok_or(Error::NotATensor)?;
    let (wxy, mu_m) = mu.as_measure()?;

    let mut lefts: Vec<Measure> = Vec::new();
    let mut rights: Vec<Measure> = Vec::new();
    let mut table = Vec::with_capacity(mu.inner().len());
    for r in mu.inner() {
        let (a, b) = marginals(r)?;
        let ia = index_or_push(&mut lefts, a);
        let ib = index_or_push(&mut rights, b);
        table.push((ia, ib));
    }
    let wx = wasserstein_space(&lefts)?;
    let wy = wasserstein_space(&rights)?;
    let flat = table.iter().map(|&(a, b)| a * rights.len() + b).collect();
    let delta = ShortMap::new(wxy, tensor(&wx, &wy), flat)?;
    let (left, right) = marginals(&pushforward(&delta, &mu_m)?)?;
    Ok((
        NestedMeasure::new(x.clone(), lefts, left.weights().to_vec())?,
        NestedMeasure::new(y.clone(), rights, right.weights().to_vec())?,
    ))
}

fn index_or_push(list: &mut Vec<Measure>, m: Measure) -> usize {
    match list.iter().position(|seen| *seen == m) {
        Some(k) => k,
        None => {
            list.push(m);
            list.len() - 1
        }
    }
}

/// Reassociates a measure on `(W ⊗ X) ⊗ (Y ⊗ Z)` to `(W ⊗ Y) ⊗ (X ⊗ Z)`.
pub fn interchange_measure(r: &Measure) -> Result<Measure> {
    let (wx, yz) = r.space().factors().ok_or(Error::NotATensor)?;
    let (w, x) = wx.factors().ok_or(Error::NotATensor)?;
    let (y, z) = yz.factors().ok_or(Error::NotATensor)?;
    let codomain = tensor(&tensor(w, y), &tensor(x, z));
    let table = crate::metric::interchange_table(w.len(), x.len(), y.len(), z.len());
    Ok(pushforward_table(r, &codomain, &table))
}

/// Measure on `Y ⊗ X` obtained by swapping the coordinates of `r` on `X ⊗ Y`.
pub fn braid_measure(r: &Measure) -> Result<Measure> {
    let (x, y) = r.space().factors().ok_or(Error::NotATensor)?;
    let table = crate::metric::braiding_table(x.len(), y.len());
    Ok(pushforward_table(r, &tensor(y, x), &table))
}

/// Reassociates a measure on `(X ⊗ Y) ⊗ Z` to `X ⊗ (Y ⊗ Z)`.
pub fn associate_measure(r: &Measure) -> Result<Measure> {
    let (xy, z) = r.space().factors().ok_or(Error::NotATensor)?;
    let (x, y) = xy.factors().ok_or(Error::NotATensor)?;
    let table = crate::metric::associator_table(x.len(), y.len(), z.len());
    Ok(pushforward_table(r, &tensor(x, &tensor(y, z)), &table))
}
