//! The Kantorovich monad: measures over measures, the averaging map `E`,
//! and spaces of measures metrized by Wasserstein-1.
//!
//! `PPX` is never enumerated. A [`NestedMeasure`] lists the inner measures
//! it charges explicitly, and its metric structure is produced on demand by
//! [`wasserstein_space`].

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::measure::{dirac, pushforward, Measure};
use crate::metric::{FinMetricSpace, Label, ShortMap};
use crate::rational::{self, Rational};
use crate::transport::distance;

/// A finitely supported measure on `PX`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedMeasure {
    base: FinMetricSpace,
    inner: Vec<Measure>,
    weights: Vec<Rational>,
}

impl NestedMeasure {
    pub fn new(base: FinMetricSpace, inner: Vec<Measure>, weights: Vec<Rational>) -> Result<Self> {
        check_mixture(&weights, inner.len())?;
        for m in &inner {
            base.ensure_same(m.space())?;
        }
        Ok(NestedMeasure { base, inner, weights })
    }

    /// `δ_{PX}(p)`: all mass on `p`.
    pub fn unit(p: &Measure) -> Self {
        NestedMeasure {
            base: p.space().clone(),
            inner: vec![p.clone()],
            weights: vec![Rational::one()],
        }
    }

    /// `(Pδ)(p)`: the image of `p` under the Dirac embedding.
    pub fn of_diracs(p: &Measure) -> Self {
        let space = p.space();
        let support = p.support();
        NestedMeasure {
            base: space.clone(),
            inner: support.iter().map(|&x| dirac(space, x).expect("support point")).collect(),
            weights: support.iter().map(|&x| p.weight(x).clone()).collect(),
        }
    }

    pub fn base(&self) -> &FinMetricSpace {
        &self.base
    }

    pub fn inner(&self) -> &[Measure] {
        &self.inner
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `(PPf)(μ)`: push every inner measure forward, keeping the weights.
    pub fn map(&self, f: &ShortMap) -> Result<Self> {
        let inner = self.inner.iter().map(|m| pushforward(f, m)).collect::<Result<_>>()?;
        Ok(NestedMeasure {
            base: f.codomain().clone(),
            inner,
            weights: self.weights.clone(),
        })
    }

    /// Merges equal inner measures by summing their weights, in order of
    /// first occurrence.
    pub fn merged(&self) -> Self {
        let mut inner: Vec<Measure> = Vec::new();
        let mut weights: Vec<Rational> = Vec::new();
        for (m, w) in self.inner.iter().zip(&self.weights) {
            match inner.iter().position(|seen| seen == m) {
                Some(k) => weights[k] += w,
                None => {
                    inner.push(m.clone());
                    weights.push(w.clone());
                }
            }
        }
        NestedMeasure {
            base: self.base.clone(),
            inner,
            weights,
        }
    }

    /// This nested measure as an ordinary measure on the Wasserstein space
    /// of its (merged) inner measures.
    pub fn as_measure(&self) -> Result<(FinMetricSpace, Measure)> {
        let merged = self.merged();
        let space = wasserstein_space(&merged.inner)?;
        let measure = Measure::new(space.clone(), merged.weights)?;
        Ok((space, measure))
    }
}

fn check_mixture(weights: &[Rational], len: usize) -> Result<()> {
    if weights.len() != len {
        return Err(Error::InvalidMeasure(format!("{} weights for {len} components", weights.len())));
    }
    if len == 0 {
        return Err(Error::InvalidMeasure("empty mixture".into()));
    }
    if weights.iter().any(Signed::is_negative) {
        return Err(Error::InvalidMeasure("negative mixture weight".into()));
    }
    let total = rational::sum(weights);
    if !total.is_one() {
        return Err(Error::InvalidMeasure(format!(
            "mixture weights sum to {}, not 1",
            rational::format(&total)
        )));
    }
    Ok(())
}

/// A finitely supported measure on `PPX`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublyNestedMeasure {
    base: FinMetricSpace,
    inner: Vec<NestedMeasure>,
    weights: Vec<Rational>,
}

impl DoublyNestedMeasure {
    pub fn new(base: FinMetricSpace, inner: Vec<NestedMeasure>, weights: Vec<Rational>) -> Result<Self> {
        check_mixture(&weights, inner.len())?;
        for m in &inner {
            base.ensure_same(m.base())?;
        }
        Ok(DoublyNestedMeasure { base, inner, weights })
    }

    pub fn base(&self) -> &FinMetricSpace {
        &self.base
    }

    pub fn inner(&self) -> &[NestedMeasure] {
        &self.inner
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `(PE)(M)`: average each component, keep the outer weights.
    pub fn map_expectation(&self) -> NestedMeasure {
        NestedMeasure {
            base: self.base.clone(),
            inner: self.inner.iter().map(expectation).collect(),
            weights: self.weights.clone(),
        }
    }

    /// `E_{PX}(M)`: one level of averaging on `PX`, multiplying weights through.
    pub fn flatten(&self) -> NestedMeasure {
        let mut inner = Vec::new();
        let mut weights = Vec::new();
        for (mu, w) in self.inner.iter().zip(&self.weights) {
            for (p, v) in mu.inner.iter().zip(&mu.weights) {
                inner.push(p.clone());
                weights.push(w * v);
            }
        }
        NestedMeasure {
            base: self.base.clone(),
            inner,
            weights,
        }
    }
}

/// `E μ`, the average of the inner measures.
pub fn expectation(mu: &NestedMeasure) -> Measure {
    let mut weights = vec![Rational::zero(); mu.base.len()];
    for (p, w) in mu.inner.iter().zip(&mu.weights) {
        if w.is_zero() {
            continue;
        }
        for (acc, x) in weights.iter_mut().zip(p.weights()) {
            *acc += w * x;
        }
    }
    Measure::new(mu.base.clone(), weights).expect("mixtures of probability measures are probability measures")
}

/// The measures as points of a metric space under Wasserstein-1, labelled
/// `m0, m1, ...` in order.
pub fn wasserstein_space(measures: &[Measure]) -> Result<FinMetricSpace> {
    let labels = (0..measures.len()).map(|i| Label::Atom(format!("m{i}"))).collect();
    wasserstein_space_labeled(measures, labels)
}

pub fn wasserstein_space_labeled(measures: &[Measure], labels: Vec<Label>) -> Result<FinMetricSpace> {
    let Some(first) = measures.first() else {
        return Err(Error::NotAMetric("empty space".into()));
    };
    for m in measures {
        first.space().ensure_same(m.space())?;
    }
    let n = measures.len();
    for i in 0..n {
        for j in i + 1..n {
            if measures[i] == measures[j] {
                return Err(Error::DuplicateMeasure(i, j));
            }
        }
    }
    let mut dist = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = distance(&measures[i], &measures[j])?;
            dist[i][j] = d.clone();
            dist[j][i] = d;
        }
    }
    FinMetricSpace::new(labels, dist)
}

/// `W1` between two nested measures, computed on the Wasserstein space of
/// the union of their inner measures.
pub fn nested_distance(mu: &NestedMeasure, nu: &NestedMeasure) -> Result<Rational> {
    mu.base.ensure_same(&nu.base)?;
    let (mu, nu) = (mu.merged(), nu.merged());
    let mut points: Vec<Measure> = mu.inner.clone();
    for m in &nu.inner {
        if !points.contains(m) {
            points.push(m.clone());
        }
    }
    let space = wasserstein_space(&points)?;
    let lift = |n: &NestedMeasure| {
        let mut w = vec![Rational::zero(); points.len()];
        for (m, x) in n.inner.iter().zip(&n.weights) {
            let k = points.iter().position(|p| p == m).expect("union contains every inner measure");
            w[k] += x;
        }
        Measure::new(space.clone(), w)
    };
    distance(&lift(&mu)?, &lift(&nu)?)
}

/// Instances for [`monad_law_check`].
#[derive(Clone, Debug, Default)]
pub struct MonadSample {
    pub measures: Vec<Measure>,
    pub doubly_nested: Vec<DoublyNestedMeasure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadLawFailure {
    pub law: &'static str,
    pub case: usize,
    pub lhs: Measure,
    pub rhs: Measure,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonadLawReport {
    pub cases: usize,
    pub failures: Vec<MonadLawFailure>,
}

impl MonadLawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `E ∘ δ_P = id`, `E ∘ Pδ = id` on every measure and
/// `E ∘ PE = E ∘ E` on every doubly nested measure of the sample.
pub fn monad_law_check(space: &FinMetricSpace, sample: &MonadSample) -> Result<MonadLawReport> {
    let mut report = MonadLawReport::default();
    let mut record = |law, case, lhs: Measure, rhs: &Measure| {
        if &lhs != rhs {
            report.failures.push(MonadLawFailure {
                law,
                case,
                lhs,
                rhs: rhs.clone(),
            });
        }
    };
    for (case, p) in sample.measures.iter().enumerate() {
        space.ensure_same(p.space())?;
        record("left_unit", case, expectation(&NestedMeasure::unit(p)), p);
        record("right_unit", case, expectation(&NestedMeasure::of_diracs(p)), p);
    }
    for (case, m) in sample.doubly_nested.iter().enumerate() {
        space.ensure_same(m.base())?;
        let via_map = expectation(&m.map_expectation());
        record("associativity", case, expectation(&m.flatten()), &via_map);
    }
    report.cases = sample.measures.len() + sample.doubly_nested.len();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn triangle() -> FinMetricSpace {
        FinMetricSpace::from_atoms(
            &["a", "b", "c"],
            vec![
                vec![int(0), int(1), int(2)],
                vec![int(1), int(0), int(2)],
                vec![int(2), int(2), int(0)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn expectation_examples() {
        let x = triangle();
        let p = Measure::new(x.clone(), vec![ratio(1, 2), ratio(1, 3), ratio(1, 6)]).unwrap();
        assert_eq!(expectation(&NestedMeasure::unit(&p)), p);
        let same = NestedMeasure::new(x.clone(), vec![p.clone(), p.clone()], vec![ratio(1, 4), ratio(3, 4)]).unwrap();
        assert_eq!(expectation(&same), p);
        let mix = NestedMeasure::new(
            x.clone(),
            vec![dirac(&x, 0).unwrap(), dirac(&x, 1).unwrap()],
            vec![ratio(1, 2), ratio(1, 2)],
        )
        .unwrap();
        assert_eq!(
            expectation(&mix),
            Measure::new(x, vec![ratio(1, 2), ratio(1, 2), int(0)]).unwrap()
        );
    }

    #[test]
    fn nested_validation() {
        let x = triangle();
        let p = Measure::uniform(&x);
        assert!(NestedMeasure::new(x.clone(), vec![p.clone()], vec![ratio(1, 2)]).is_err());
        assert!(NestedMeasure::new(x.clone(), vec![], vec![]).is_err());
        let other = FinMetricSpace::from_atoms(&["z"], vec![vec![int(0)]]).unwrap();
        assert_eq!(
            NestedMeasure::new(other, vec![p], vec![int(1)]).unwrap_err(),
            Error::SpaceMismatch
        );
    }

    #[test]
    fn wasserstein_space_of_diracs_and_singletons() {
        let x = triangle();
        let w = wasserstein_space(&[dirac(&x, 0).unwrap(), dirac(&x, 2).unwrap()]).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.d(0, 1), &int(2));
        assert_eq!(wasserstein_space(&[Measure::uniform(&x)]).unwrap().len(), 1);
        let p = Measure::uniform(&x);
        assert_eq!(
            wasserstein_space(&[p.clone(), dirac(&x, 1).unwrap(), p]).unwrap_err(),
            Error::DuplicateMeasure(0, 2)
        );
    }

    #[test]
    fn merging_duplicates() {
        let x = triangle();
        let p = Measure::uniform(&x);
        let q = dirac(&x, 1).unwrap();
        let mu = NestedMeasure::new(
            x.clone(),
            vec![p.clone(), q.clone(), p.clone()],
            vec![ratio(1, 4), ratio(1, 4), ratio(1, 2)],
        )
        .unwrap();
        let merged = mu.merged();
        assert_eq!(merged.inner(), &[p, q]);
        assert_eq!(merged.weights(), &[ratio(3, 4), ratio(1, 4)]);
        assert_eq!(expectation(&merged), expectation(&mu));
        let (space, m) = mu.as_measure().unwrap();
        assert_eq!(space.len(), 2);
        assert_eq!(m.weight(0), &ratio(3, 4));
    }

    #[test]
    fn monad_laws_on_fixed_sample() {
        let x = triangle();
        let p = Measure::new(x.clone(), vec![ratio(1, 2), int(0), ratio(1, 2)]).unwrap();
        let q = dirac(&x, 1).unwrap();
        let mu = NestedMeasure::new(x.clone(), vec![p.clone(), q.clone()], vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let nu = NestedMeasure::unit(&q);
        let big = DoublyNestedMeasure::new(x.clone(), vec![mu, nu], vec![ratio(1, 5), ratio(4, 5)]).unwrap();
        let report = monad_law_check(
            &x,
            &MonadSample {
                measures: vec![p, q],
                doubly_nested: vec![big],
            },
        )
        .unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.cases, 3);
    }

    #[test]
    fn nested_distance_of_units_is_base_distance() {
        let x = triangle();
        let p = dirac(&x, 0).unwrap();
        let q = Measure::uniform(&x);
        let d = nested_distance(&NestedMeasure::unit(&p), &NestedMeasure::unit(&q)).unwrap();
        assert_eq!(d, distance(&p, &q).unwrap());
    }
}
