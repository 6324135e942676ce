//! Seeded random instances for property tests and the law checker.
//!
//! Spaces draw a symmetric matrix over a common denominator and repair it by
//! shortest-path closure. Measures use small integer masses over a common
//! denominator, so many weights tie and some are zero. Short functionals are
//! random values pushed through the closure `f'(x) = min_y (f(y) + d(x,y))`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::measure::Measure;
use crate::metric::{constant, FinMetricSpace, Label, ShortFunctional, ShortMap};
use crate::monad::{DoublyNestedMeasure, NestedMeasure};
use crate::rational::{self, Rational};
use crate::structure::InternalMonoid;

/// Limits on generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBudget {
    pub min_points: usize,
    pub max_points: usize,
    pub max_denominator: i64,
    /// Components per nested measure, at both nesting levels.
    pub nested_components: usize,
}

impl Default for SizeBudget {
    fn default() -> Self {
        SizeBudget {
            min_points: 2,
            max_points: 6,
            max_denominator: 64,
            nested_components: 3,
        }
    }
}

impl SizeBudget {
    /// Same budget with at most `cap` points per space.
    pub fn capped(&self, cap: usize) -> Self {
        let max_points = self.max_points.min(cap).max(1);
        SizeBudget {
            max_points,
            min_points: self.min_points.min(max_points),
            ..*self
        }
    }
}

/// Random metric space with `min_points..=max_points` points labelled
/// `{prefix}0, {prefix}1, ...`.
pub fn space<R: Rng>(rng: &mut R, budget: &SizeBudget, prefix: &str) -> FinMetricSpace {
    let n = rng.gen_range(budget.min_points..=budget.max_points.max(budget.min_points));
    space_of_size(rng, n, budget.max_denominator, prefix)
}

pub fn space_of_size<R: Rng>(rng: &mut R, n: usize, max_denominator: i64, prefix: &str) -> FinMetricSpace {
    let den = rng.gen_range(1..=max_denominator.max(1));
    let mut d = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let k = rng.gen_range(1..=2 * den);
            d[i][j] = k;
            d[j][i] = k;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let labels = (0..n).map(|i| Label::Atom(format!("{prefix}{i}"))).collect();
    let dist = d
        .iter()
        .map(|row| row.iter().map(|&k| rational::ratio(k, den)).collect())
        .collect();
    FinMetricSpace::new(labels, dist).expect("shortest-path closure of positive weights is a metric")
}

/// Random probability measure; weights share a denominator at most
/// `max_denominator`.
pub fn measure<R: Rng>(rng: &mut R, space: &FinMetricSpace, max_denominator: i64) -> Measure {
    measure_on_support(rng, space, max_denominator, space.len())
}

/// Random probability measure charging at most `max_support` points.
pub fn measure_on_support<R: Rng>(
    rng: &mut R,
    space: &FinMetricSpace,
    max_denominator: i64,
    max_support: usize,
) -> Measure {
    let n = space.len();
    let cap = ((max_denominator / n as i64).max(1)).min(16);
    let mut allowed: Vec<usize> = (0..n).collect();
    allowed.shuffle(rng);
    allowed.truncate(max_support.clamp(1, n));
    let mut masses = vec![0i64; n];
    for &i in &allowed {
        masses[i] = rng.gen_range(0..=cap);
    }
    if masses.iter().all(|&m| m == 0) {
        masses[allowed[0]] = 1;
    }
    let total: i64 = masses.iter().sum();
    let weights = masses.iter().map(|&m| rational::ratio(m, total)).collect();
    Measure::new(space.clone(), weights).expect("normalized masses")
}

/// Random short functional with values over a denominator at most
/// `max_denominator`.
pub fn functional<R: Rng>(rng: &mut R, space: &FinMetricSpace, max_denominator: i64) -> ShortFunctional {
    let den = rng.gen_range(1..=max_denominator.max(1));
    let raw: Vec<Rational> = (0..space.len())
        .map(|_| rational::ratio(rng.gen_range(-4 * den..=4 * den), den))
        .collect();
    ShortFunctional::closure(space.clone(), &raw).expect("closure output is short")
}

/// Random short map, built greedily: each point picks uniformly among
/// images consistent with the points already placed. Falls back to a
/// constant map if a few attempts get stuck.
pub fn short_map<R: Rng>(rng: &mut R, domain: &FinMetricSpace, codomain: &FinMetricSpace) -> ShortMap {
    for _ in 0..8 {
        let mut table: Vec<usize> = Vec::with_capacity(domain.len());
        for x in 0..domain.len() {
            let candidates: Vec<usize> = (0..codomain.len())
                .filter(|&y| (0..x).all(|x2| codomain.d(y, table[x2]) <= domain.d(x, x2)))
                .collect();
            match candidates.choose(rng) {
                Some(&y) => table.push(y),
                None => break,
            }
        }
        if table.len() == domain.len() {
            return ShortMap::new(domain.clone(), codomain.clone(), table).expect("greedy table is short");
        }
    }
    let at = rng.gen_range(0..codomain.len());
    constant(domain, codomain, at).expect("constant maps are short")
}

/// Random nested measure with distinct-or-not inner measures.
pub fn nested<R: Rng>(rng: &mut R, space: &FinMetricSpace, budget: &SizeBudget) -> NestedMeasure {
    let k = rng.gen_range(1..=budget.nested_components.max(1));
    let inner = (0..k).map(|_| measure(rng, space, budget.max_denominator)).collect();
    let weights = measure(rng, &index_space(k), budget.max_denominator).weights().to_vec();
    NestedMeasure::new(space.clone(), inner, weights).expect("valid mixture")
}

pub fn doubly_nested<R: Rng>(rng: &mut R, space: &FinMetricSpace, budget: &SizeBudget) -> DoublyNestedMeasure {
    let k = rng.gen_range(1..=budget.nested_components.max(1));
    let inner = (0..k).map(|_| nested(rng, space, budget)).collect();
    let weights = measure(rng, &index_space(k), budget.max_denominator).weights().to_vec();
    DoublyNestedMeasure::new(space.clone(), inner, weights).expect("valid mixture")
}

/// A verified internal monoid from one of the built-in families.
pub fn monoid<R: Rng>(rng: &mut R, budget: &SizeBudget) -> InternalMonoid {
    let n = rng.gen_range(budget.min_points.max(1)..=budget.max_points.max(1));
    match rng.gen_range(0..3) {
        0 => InternalMonoid::cyclic(n),
        1 => InternalMonoid::max_on_line(n),
        _ => InternalMonoid::truncated_sum(n),
    }
}

/// Discrete space on `k` points, used only to draw mixture weights.
fn index_space(k: usize) -> FinMetricSpace {
    let labels = (0..k).map(|i| Label::Atom(format!("i{i}"))).collect();
    let dist = (0..k)
        .map(|i| (0..k).map(|j| rational::int(i64::from(i != j))).collect())
        .collect();
    FinMetricSpace::new(labels, dist).expect("discrete metric")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_budget_and_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let budget = SizeBudget::default();
        for _ in 0..50 {
            let x = space(&mut rng, &budget, "x");
            assert!((2..=6).contains(&x.len()));
            let p = measure(&mut rng, &x, 64);
            assert!(p.weights().iter().all(|w| *w.denom() <= 64.into()));
            let q = measure_on_support(&mut rng, &x, 64, 2);
            assert!(q.support().len() <= 2);
            let y = space(&mut rng, &budget, "y");
            short_map(&mut rng, &x, &y);
            functional(&mut rng, &x, 64);
            let m = monoid(&mut rng, &budget);
            assert!(m.carrier().len() >= 2);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let budget = SizeBudget::default();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = space(&mut rng, &budget, "x");
            (x.matrix(), measure(&mut rng, &x, 64).weights().to_vec())
        };
        assert_eq!(draw(3), draw(3));
    }
}
