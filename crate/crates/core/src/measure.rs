//! Finitely supported probability measures with exact weights.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::metric::{FinMetricSpace, ShortFunctional, ShortMap};
use crate::rational::{self, Rational};

/// A probability measure stored densely against the point list of its space.
/// Zero-weight points are kept, so equality is plain weight-table equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Measure {
    space: FinMetricSpace,
    weights: Vec<Rational>,
}

impl Measure {
    pub fn new(space: FinMetricSpace, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::InvalidMeasure(format!(
                "{} weights for a space of {} points",
                weights.len(),
                space.len()
            )));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| w.is_negative()) {
            return Err(Error::InvalidMeasure(format!(
                "negative weight {} at {}",
                rational::format(w),
                space.label(i)
            )));
        }
        let total = rational::sum(&weights);
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!(
                "weights sum to {}, not 1",
                rational::format(&total)
            )));
        }
        Ok(Measure { space, weights })
    }

    /// Normalizes nonnegative masses to total 1.
    pub fn normalized(space: FinMetricSpace, masses: Vec<Rational>) -> Result<Self> {
        let total = rational::sum(&masses);
        if !total.is_positive() {
            return Err(Error::InvalidMeasure("total mass must be positive".into()));
        }
        let weights = masses.into_iter().map(|m| m / &total).collect();
        Self::new(space, weights)
    }

    pub fn uniform(space: &FinMetricSpace) -> Self {
        let w = Rational::new(1.into(), space.len().into());
        Measure {
            space: space.clone(),
            weights: vec![w; space.len()],
        }
    }

    pub(crate) fn from_trusted(space: FinMetricSpace, weights: Vec<Rational>) -> Self {
        debug_assert_eq!(space.len(), weights.len());
        Measure { space, weights }
    }

    pub fn space(&self) -> &FinMetricSpace {
        &self.space
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    /// Indices of points with positive weight.
    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| self.weights[i].is_positive()).collect()
    }

    /// The point carrying all the mass, if this is a Dirac measure.
    pub fn dirac_point(&self) -> Option<usize> {
        self.weights.iter().position(One::is_one)
    }
}

impl fmt::Debug for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (l, w) in self.space.points().iter().zip(&self.weights) {
            map.entry(&l.to_string(), &rational::format(w));
        }
        map.finish()
    }
}

/// The unit of the monad, `δ_x`.
pub fn dirac(space: &FinMetricSpace, x: usize) -> Result<Measure> {
    if x >= space.len() {
        return Err(Error::UnknownPoint(format!("index {x}")));
    }
    let mut weights = vec![Rational::zero(); space.len()];
    weights[x] = Rational::one();
    Ok(Measure::from_trusted(space.clone(), weights))
}

/// `∫ f dp`.
pub fn integrate(f: &ShortFunctional, p: &Measure) -> Result<Rational> {
    f.domain().ensure_same(p.space())?;
    Ok(f.values()
        .iter()
        .zip(p.weights())
        .fold(Rational::zero(), |acc, (v, w)| acc + v * w))
}

/// Mass transport along an arbitrary (not necessarily short) index table.
pub(crate) fn pushforward_table(p: &Measure, codomain: &FinMetricSpace, table: &[usize]) -> Measure {
    let mut weights = vec![Rational::zero(); codomain.len()];
    for (w, &y) in p.weights().iter().zip(table) {
        if !w.is_zero() {
            weights[y] += w;
        }
    }
    Measure::from_trusted(codomain.clone(), weights)
}

/// `f_* p`.
pub fn pushforward(f: &ShortMap, p: &Measure) -> Result<Measure> {
    f.domain().ensure_same(p.space())?;
    Ok(pushforward_table(p, f.codomain(), f.table()))
}

/// `y ↦ ∫ f(x, y) dp(x)` for `f` short on `X ⊗ Y`. The result is short.
pub fn partial_integral(f: &ShortFunctional, p: &Measure) -> Result<ShortFunctional> {
    let (x, y) = f.domain().factors().ok_or(Error::NotATensor)?;
    x.ensure_same(p.space())?;
    let m = y.len();
    let values = (0..m)
        .map(|j| {
            p.weights()
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (i, w)| acc + f.value(i * m + j) * w)
        })
        .collect();
    ShortFunctional::new(y.clone(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{bang, identity, terminal, ShortMap};
    use crate::rational::{int, ratio};

    fn unit_pair() -> FinMetricSpace {
        FinMetricSpace::from_atoms(&["a", "b"], vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap()
    }

    #[test]
    fn rejects_bad_weights() {
        let x = unit_pair();
        assert!(Measure::new(x.clone(), vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(Measure::new(x.clone(), vec![int(2), int(-1)]).is_err());
        assert!(Measure::new(x, vec![int(1)]).is_err());
    }

    #[test]
    fn dirac_integrates_to_point_value() {
        let x = unit_pair();
        let f = ShortFunctional::new(x.clone(), vec![ratio(3, 4), ratio(1, 4)]).unwrap();
        for i in 0..2 {
            assert_eq!(&integrate(&f, &dirac(&x, i).unwrap()).unwrap(), f.value(i));
        }
        assert!(dirac(&x, 2).is_err());
        let one = terminal();
        assert_eq!(dirac(&one, 0).unwrap(), Measure::uniform(&one));
    }

    #[test]
    fn uniform_half() {
        let x = unit_pair();
        let f = ShortFunctional::new(x.clone(), vec![int(0), int(1)]).unwrap();
        assert_eq!(integrate(&f, &Measure::uniform(&x)).unwrap(), ratio(1, 2));
        assert_eq!(integrate(&ShortFunctional::zero(&x), &Measure::uniform(&x)).unwrap(), int(0));
    }

    #[test]
    fn pushforward_basics() {
        let x = unit_pair();
        let p = Measure::new(x.clone(), vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        assert_eq!(pushforward(&identity(&x), &p).unwrap(), p);
        assert_eq!(pushforward(&bang(&x), &p).unwrap(), Measure::uniform(&terminal()));
        let u = FinMetricSpace::from_atoms(&["u"], vec![vec![int(0)]]).unwrap();
        let collapse = ShortMap::new(x.clone(), u.clone(), vec![0, 0]).unwrap();
        assert_eq!(pushforward(&collapse, &Measure::uniform(&x)).unwrap(), dirac(&u, 0).unwrap());
        assert_eq!(
            pushforward(&collapse, &dirac(&x, 1).unwrap()).unwrap(),
            dirac(&u, collapse.apply(1)).unwrap()
        );
    }

    #[test]
    fn partial_integral_slices_and_constants() {
        let x = unit_pair();
        let y = FinMetricSpace::from_atoms(
            &["u", "v", "w"],
            vec![
                vec![int(0), int(1), int(2)],
                vec![int(1), int(0), int(1)],
                vec![int(2), int(1), int(0)],
            ],
        )
        .unwrap();
        let raw: Vec<Rational> = (0..6).map(|k| ratio(k * 7 % 5, 2)).collect();
        let f = ShortFunctional::closure(crate::metric::tensor(&x, &y), &raw).unwrap();
        let slice = partial_integral(&f, &dirac(&x, 1).unwrap()).unwrap();
        assert_eq!(slice.values(), &f.values()[3..6]);

        let g = ShortFunctional::new(x.clone(), vec![int(2), int(3)]).unwrap();
        let lifted: Vec<Rational> = (0..6).map(|k| g.value(k / 3).clone()).collect();
        let f = ShortFunctional::new(crate::metric::tensor(&x, &y), lifted).unwrap();
        let p = Measure::new(x.clone(), vec![ratio(1, 4), ratio(3, 4)]).unwrap();
        let expected = integrate(&g, &p).unwrap();
        let h = partial_integral(&f, &p).unwrap();
        assert!(h.values().iter().all(|v| *v == expected));
        assert_eq!(partial_integral(&g, &p).unwrap_err(), Error::NotATensor);
    }
}
