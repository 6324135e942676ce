//! Exact Wasserstein-1 distance with a primal coupling and a dual short
//! functional certifying optimality.
//!
//! Weights and distances are scaled to integers by their common
//! denominators, solved with the transportation simplex (checked `i128`
//! first, `BigInt` if anything overflows), and mapped back. Every result is
//! re-checked in rational arithmetic before it is returned: the coupling
//! must have the right marginals, the witness must be short, and the primal
//! cost must equal the dual value.

mod oracle;
mod simplex;

pub use oracle::{wasserstein_oracle, ORACLE_MAX_SUPPORT};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::measure::{integrate, Measure};
use crate::metric::{FinMetricSpace, ShortFunctional};
use crate::rational::{self, Rational};

/// A coupling of `source` and `target` together with its cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportPlan {
    source: Measure,
    target: Measure,
    coupling: Vec<Rational>,
    cost: Rational,
}

impl TransportPlan {
    pub fn source(&self) -> &Measure {
        &self.source
    }

    pub fn target(&self) -> &Measure {
        &self.target
    }

    pub fn cost(&self) -> &Rational {
        &self.cost
    }

    /// Mass moved from source point `i` to target point `j`.
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.coupling[i * self.source.space().len() + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.coupling
            .chunks(self.source.space().len())
            .map(<[_]>::to_vec)
            .collect()
    }

    /// Nonnegativity, exact marginals and the cost identity.
    pub fn verify(&self) -> Result<()> {
        let space = self.source.space();
        let n = space.len();
        if self.coupling.iter().any(|x| x < &Rational::zero()) {
            return Err(Error::Certificate("negative coupling entry".into()));
        }
        for i in 0..n {
            let row = rational::sum(&self.coupling[i * n..(i + 1) * n]);
            if &row != self.source.weight(i) {
                return Err(Error::Certificate(format!("row {} sums to {}", space.label(i), rational::format(&row))));
            }
        }
        for j in 0..n {
            let col = (0..n).fold(Rational::zero(), |acc, i| acc + self.entry(i, j));
            if &col != self.target.weight(j) {
                return Err(Error::Certificate(format!("column {} sums to {}", space.label(j), rational::format(&col))));
            }
        }
        if coupling_cost(space, &self.coupling) != self.cost {
            return Err(Error::Certificate("stated cost differs from coupling cost".into()));
        }
        Ok(())
    }
}

/// A short functional `f` with `∫f dp - ∫f dq` equal to the optimal cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualWitness {
    potential: ShortFunctional,
}

impl DualWitness {
    pub fn potential(&self) -> &ShortFunctional {
        &self.potential
    }

    /// `∫f dp - ∫f dq`.
    pub fn value(&self, p: &Measure, q: &Measure) -> Result<Rational> {
        Ok(integrate(&self.potential, p)? - integrate(&self.potential, q)?)
    }
}

/// Result of an exact solve.
#[derive(Clone, Debug)]
pub struct Transport {
    pub value: Rational,
    pub plan: TransportPlan,
    pub witness: DualWitness,
}

fn coupling_cost(space: &FinMetricSpace, coupling: &[Rational]) -> Rational {
    let n = space.len();
    coupling
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .fold(Rational::zero(), |acc, (k, x)| acc + x * space.d(k / n, k % n))
}

fn scaled(values: &[Rational], scale: &BigInt) -> Vec<BigInt> {
    values
        .iter()
        .map(|v| {
            let s = v * Rational::from_integer(scale.clone());
            debug_assert!(s.is_integer());
            s.to_integer()
        })
        .collect()
}

fn to_i128(values: &[BigInt]) -> Option<Vec<i128>> {
    values.iter().map(ToPrimitive::to_i128).collect()
}

struct RawSolution {
    flow: Vec<BigInt>,
    u: Vec<BigInt>,
}

fn solve_scaled(supply: &[BigInt], demand: &[BigInt], cost: &[BigInt]) -> RawSolution {
    let small = || -> Option<RawSolution> {
        let sol = simplex::solve(&to_i128(supply)?, &to_i128(demand)?, &to_i128(cost)?)?;
        Some(RawSolution {
            flow: sol.flow.into_iter().map(BigInt::from).collect(),
            u: sol.u.into_iter().map(BigInt::from).collect(),
        })
    };
    small().unwrap_or_else(|| {
        let sol = simplex::solve(supply, demand, cost).expect("BigInt arithmetic cannot overflow");
        RawSolution { flow: sol.flow, u: sol.u }
    })
}

/// `f(x) = max_{s ∈ supp p} (u_s - d(x, s))`, shifted so the first point is 0.
///
/// Dual feasibility `u_s - g_t <= d(s, t)` makes `f <= g` on every target
/// point while `f >= u` on the source support, so `f` reaches the primal cost.
fn witness_from_potentials(p: &Measure, u: &[Rational]) -> Result<ShortFunctional> {
    let space = p.space();
    let support = p.support();
    let mut values: Vec<Rational> = (0..space.len())
        .map(|x| {
            support
                .iter()
                .map(|&s| &u[s] - space.d(x, s))
                .max()
                .expect("probability measures have nonempty support")
        })
        .collect();
    let shift = values[0].clone();
    for v in &mut values {
        *v -= &shift;
    }
    ShortFunctional::new(space.clone(), values)
        .map_err(|e| Error::Certificate(format!("witness is not short: {e}")))
}

/// Exact `W1(p, q)` with an optimal coupling and a short dual witness.
pub fn wasserstein(p: &Measure, q: &Measure) -> Result<Transport> {
    p.space().ensure_same(q.space())?;
    let space = p.space();
    let n = space.len();

    if p == q {
        let mut coupling = vec![Rational::zero(); n * n];
        for i in 0..n {
            coupling[i * n + i] = p.weight(i).clone();
        }
        let plan = TransportPlan {
            source: p.clone(),
            target: q.clone(),
            coupling,
            cost: Rational::zero(),
        };
        plan.verify()?;
        return Ok(Transport {
            value: Rational::zero(),
            plan,
            witness: DualWitness {
                potential: ShortFunctional::zero(space),
            },
        });
    }

    let weight_scale = rational::common_denominator(p.weights().iter().chain(q.weights()));
    let dist: Vec<Rational> = (0..n * n).map(|k| space.d(k / n, k % n).clone()).collect();
    let cost_scale = rational::common_denominator(&dist);
    let raw = solve_scaled(
        &scaled(p.weights(), &weight_scale),
        &scaled(q.weights(), &weight_scale),
        &scaled(&dist, &cost_scale),
    );

    let ws = Rational::from_integer(weight_scale);
    let cs = Rational::from_integer(cost_scale);
    let coupling: Vec<Rational> = raw.flow.into_iter().map(|x| Rational::from_integer(x) / &ws).collect();
    let u: Vec<Rational> = raw.u.into_iter().map(|x| Rational::from_integer(x) / &cs).collect();
    let cost = coupling_cost(space, &coupling);
    let plan = TransportPlan {
        source: p.clone(),
        target: q.clone(),
        coupling,
        cost: cost.clone(),
    };
    plan.verify()?;

    let witness = DualWitness {
        potential: witness_from_potentials(p, &u)?,
    };
    let dual = witness.value(p, q)?;
    if dual != cost {
        return Err(Error::Certificate(format!(
            "primal cost {} differs from dual value {}",
            rational::format(&cost),
            rational::format(&dual)
        )));
    }
    Ok(Transport {
        value: cost,
        plan,
        witness,
    })
}

/// `W1(p, q)` only.
pub fn distance(p: &Measure, q: &Measure) -> Result<Rational> {
    wasserstein(p, q).map(|t| t.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::dirac;
    use crate::rational::{int, ratio};

    fn unit_pair() -> FinMetricSpace {
        FinMetricSpace::from_atoms(&["a", "b"], vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap()
    }

    #[test]
    fn identical_measures() {
        let x = unit_pair();
        let p = Measure::new(x.clone(), vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let t = wasserstein(&p, &p).unwrap();
        assert_eq!(t.value, int(0));
        assert_eq!(t.plan.entry(0, 0), &ratio(1, 3));
        assert_eq!(t.plan.entry(0, 1), &int(0));
        assert_eq!(t.witness.potential(), &ShortFunctional::zero(&x));
    }

    #[test]
    fn diracs_forced_coupling() {
        let x = FinMetricSpace::from_atoms(
            &["a", "b", "c"],
            vec![
                vec![int(0), ratio(3, 2), int(2)],
                vec![ratio(3, 2), int(0), int(1)],
                vec![int(2), int(1), int(0)],
            ],
        )
        .unwrap();
        let t = wasserstein(&dirac(&x, 0).unwrap(), &dirac(&x, 2).unwrap()).unwrap();
        assert_eq!(t.value, int(2));
        assert_eq!(t.plan.entry(0, 2), &int(1));
    }

    #[test]
    fn half_mass_moves_one_unit() {
        let x = unit_pair();
        let p = Measure::new(x.clone(), vec![int(1), int(0)]).unwrap();
        let q = Measure::uniform(&x);
        let t = wasserstein(&p, &q).unwrap();
        assert_eq!(t.value, ratio(1, 2));
        assert_eq!(t.witness.value(&p, &q).unwrap(), ratio(1, 2));
        assert_eq!(t.witness.potential().value(0), &int(0));
    }

    #[test]
    fn space_mismatch() {
        let x = unit_pair();
        let y = FinMetricSpace::from_atoms(&["a", "b"], vec![vec![int(0), int(2)], vec![int(2), int(0)]]).unwrap();
        assert_eq!(
            wasserstein(&Measure::uniform(&x), &Measure::uniform(&y)).unwrap_err(),
            Error::SpaceMismatch
        );
    }

    #[test]
    fn large_denominators_take_bigint_path() {
        let big = Rational::new(BigInt::from(1), BigInt::from(10).pow(30));
        let x = FinMetricSpace::from_atoms(
            &["a", "b"],
            vec![vec![int(0), big.clone()], vec![big.clone(), int(0)]],
        )
        .unwrap();
        let third = Rational::new(BigInt::from(1), BigInt::from(3).pow(90));
        let p = Measure::new(x.clone(), vec![third.clone(), int(1) - &third]).unwrap();
        let q = dirac(&x, 0).unwrap();
        let t = wasserstein(&p, &q).unwrap();
        assert_eq!(t.value, (int(1) - third) * big);
    }
}
