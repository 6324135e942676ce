//! Brute-force Wasserstein-1 by enumerating every basic feasible solution
//! of the transportation polytope. Shares nothing with the simplex path.

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::rational::Rational;

/// Largest combined support the oracle accepts.
pub const ORACLE_MAX_SUPPORT: usize = 8;

/// Exact `W1(p, q)` as the minimum cost over all spanning-tree bases of the
/// bipartite graph between the two supports.
pub fn wasserstein_oracle(p: &Measure, q: &Measure) -> Result<Rational> {
    p.space().ensure_same(q.space())?;
    let space = p.space();
    let sources = p.support();
    let targets = q.support();
    let (m, n) = (sources.len(), targets.len());
    if m + n > ORACLE_MAX_SUPPORT {
        return Err(Error::TooLarge(format!(
            "combined support {} exceeds {ORACLE_MAX_SUPPORT}",
            m + n
        )));
    }
    let cells: Vec<(usize, usize)> = (0..m).cartesian_product(0..n).collect();
    let mut best: Option<Rational> = None;
    for basis in cells.iter().copied().combinations(m + n - 1) {
        let Some(flow) = tree_flow(&basis, m, n, p, q, &sources, &targets) else {
            continue;
        };
        let cost = basis
            .iter()
            .zip(&flow)
            .fold(Rational::zero(), |acc, (&(i, j), x)| acc + x * space.d(sources[i], targets[j]));
        if best.as_ref().map_or(true, |b| cost < *b) {
            best = Some(cost);
        }
    }
    Ok(best.expect("the northwest-corner basis is always feasible"))
}

/// Flows of the unique solution supported on `basis`, if `basis` is a
/// spanning tree and the solution is nonnegative.
fn tree_flow(
    basis: &[(usize, usize)],
    m: usize,
    n: usize,
    p: &Measure,
    q: &Measure,
    sources: &[usize],
    targets: &[usize],
) -> Option<Vec<Rational>> {
    // Acyclic with m + n - 1 edges on m + n nodes means spanning tree.
    let mut parent: Vec<usize> = (0..m + n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j) in basis {
        let (a, b) = (find(&mut parent, i), find(&mut parent, m + j));
        if a == b {
            return None;
        }
        parent[a] = b;
    }

    // Peel leaves: a leaf's only edge must carry its remaining mass.
    let mut residual: Vec<Rational> = sources
        .iter()
        .map(|&s| p.weight(s).clone())
        .chain(targets.iter().map(|&t| q.weight(t).clone()))
        .collect();
    let mut degree = vec![0usize; m + n];
    for &(i, j) in basis {
        degree[i] += 1;
        degree[m + j] += 1;
    }
    let mut flow: Vec<Option<Rational>> = vec![None; basis.len()];
    for _ in 0..basis.len() {
        let (e, leaf) = basis.iter().enumerate().find_map(|(e, &(i, j))| {
            if flow[e].is_some() {
                None
            } else if degree[i] == 1 {
                Some((e, i))
            } else if degree[m + j] == 1 {
                Some((e, m + j))
            } else {
                None
            }
        })?;
        let (i, j) = basis[e];
        let other = if leaf == i { m + j } else { i };
        let x = residual[leaf].clone();
        if x.is_negative() {
            return None;
        }
        residual[other] -= &x;
        residual[leaf] = Rational::zero();
        degree[i] -= 1;
        degree[m + j] -= 1;
        flow[e] = Some(x);
    }
    if residual.iter().any(|r| !r.is_zero()) {
        return None;
    }
    flow.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::dirac;
    use crate::metric::FinMetricSpace;
    use crate::rational::{int, ratio};

    fn line(n: usize) -> FinMetricSpace {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let dist = (0..n)
            .map(|i| (0..n).map(|j| int((i as i64 - j as i64).abs())).collect())
            .collect();
        FinMetricSpace::from_atoms(&refs, dist).unwrap()
    }

    #[test]
    fn trivial_cases() {
        let x = line(4);
        let p = dirac(&x, 0).unwrap();
        let q = dirac(&x, 3).unwrap();
        assert_eq!(wasserstein_oracle(&p, &q).unwrap(), int(3));
        assert_eq!(wasserstein_oracle(&p, &p).unwrap(), int(0));
    }

    #[test]
    fn two_point_polytope() {
        let x = line(2);
        let p = Measure::new(x.clone(), vec![int(1), int(0)]).unwrap();
        assert_eq!(wasserstein_oracle(&p, &Measure::uniform(&x)).unwrap(), ratio(1, 2));
    }

    #[test]
    fn line_matches_cdf_formula() {
        // On a path, W1 is the L1 distance between cumulative distributions.
        let x = line(4);
        let p = Measure::new(x.clone(), vec![ratio(1, 2), int(0), ratio(1, 4), ratio(1, 4)]).unwrap();
        let q = Measure::new(x.clone(), vec![ratio(1, 8), ratio(3, 8), ratio(1, 2), int(0)]).unwrap();
        let (mut cp, mut cq, mut total) = (int(0), int(0), int(0));
        for i in 0..3 {
            cp += p.weight(i);
            cq += q.weight(i);
            total += (&cp - &cq).abs();
        }
        assert_eq!(wasserstein_oracle(&p, &q).unwrap(), total);
    }

    #[test]
    fn refuses_large_supports() {
        let x = line(5);
        let u = Measure::uniform(&x);
        assert!(matches!(wasserstein_oracle(&u, &u), Err(Error::TooLarge(_))));
    }
}
