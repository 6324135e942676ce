//! Transportation simplex on the complete bipartite graph, with a spanning
//! tree basis and Bland's rule. Works on integer data; the caller scales
//! rational weights and costs by common denominators first.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Integer arithmetic the solver needs. `None` signals overflow.
pub(crate) trait Exact: Clone + Ord {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn is_negative(&self) -> bool;
}

impl Exact for i128 {
    fn zero() -> Self {
        0
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
}

impl Exact for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Solution<T> {
    /// Row-major `m × n` flows.
    pub flow: Vec<T>,
    /// Source potentials, `u[0] = 0`.
    pub u: Vec<T>,
    /// Sink potentials; `u[i] + v[j] = c[i][j]` on basic cells.
    #[allow(dead_code)]
    pub v: Vec<T>,
}

struct Tree<'a, T> {
    m: usize,
    n: usize,
    cost: &'a [T],
    basic: Vec<usize>,
    is_basic: Vec<bool>,
    flow: Vec<T>,
}

impl<'a, T: Exact> Tree<'a, T> {
    /// Northwest-corner start. Always yields `m + n - 1` basic cells forming
    /// a staircase spanning tree, keeping zero flows where supplies run dry.
    fn northwest(supply: &[T], demand: &[T], cost: &'a [T]) -> Option<Self> {
        let (m, n) = (supply.len(), demand.len());
        let mut a = supply.to_vec();
        let mut b = demand.to_vec();
        let mut flow = vec![T::zero(); m * n];
        let mut is_basic = vec![false; m * n];
        let mut basic = Vec::with_capacity(m + n - 1);
        let (mut i, mut j) = (0, 0);
        loop {
            let x = a[i].clone().min(b[j].clone());
            let cell = i * n + j;
            flow[cell] = x.clone();
            is_basic[cell] = true;
            basic.push(cell);
            a[i] = a[i].sub(&x)?;
            b[j] = b[j].sub(&x)?;
            if i == m - 1 && j == n - 1 {
                break;
            }
            if (a[i] == T::zero() && i < m - 1) || j == n - 1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        debug_assert_eq!(basic.len(), m + n - 1);
        Some(Tree {
            m,
            n,
            cost,
            basic,
            is_basic,
            flow,
        })
    }

    /// Adjacency over nodes `0..m` (sources) and `m..m+n` (sinks).
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.m + self.n];
        for &cell in &self.basic {
            let (i, j) = (cell / self.n, cell % self.n);
            adj[i].push(cell);
            adj[self.m + j].push(cell);
        }
        adj
    }

    fn other_end(&self, node: usize, cell: usize) -> usize {
        let (i, j) = (cell / self.n, cell % self.n);
        if node == i {
            self.m + j
        } else {
            i
        }
    }

    /// Parent cell of every node in the tree rooted at `root`.
    fn parents(&self, adj: &[Vec<usize>], root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let mut parent = vec![None; self.m + self.n];
        let mut seen = vec![false; self.m + self.n];
        let mut order = Vec::with_capacity(self.m + self.n);
        seen[root] = true;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let node = order[head];
            head += 1;
            for &cell in &adj[node] {
                let next = self.other_end(node, cell);
                if !seen[next] {
                    seen[next] = true;
                    parent[next] = Some(cell);
                    order.push(next);
                }
            }
        }
        debug_assert_eq!(order.len(), self.m + self.n, "basis must span");
        (parent, order)
    }

    fn potentials(&self, adj: &[Vec<usize>]) -> Option<(Vec<T>, Vec<T>)> {
        let (parent, order) = self.parents(adj, 0);
        let mut u = vec![T::zero(); self.m];
        let mut v = vec![T::zero(); self.n];
        for &node in order.iter().skip(1) {
            let cell = parent[node].expect("non-root nodes have parents");
            let (i, j) = (cell / self.n, cell % self.n);
            if node < self.m {
                u[i] = self.cost[cell].sub(&v[j])?;
            } else {
                v[j] = self.cost[cell].sub(&u[i])?;
            }
        }
        Some((u, v))
    }

    /// Smallest-index cell with negative reduced cost.
    fn entering(&self, u: &[T], v: &[T]) -> Option<Option<usize>> {
        for cell in 0..self.m * self.n {
            if self.is_basic[cell] {
                continue;
            }
            let (i, j) = (cell / self.n, cell % self.n);
            let reduced = self.cost[cell].sub(&u[i])?.sub(&v[j])?;
            if reduced.is_negative() {
                return Some(Some(cell));
            }
        }
        Some(None)
    }

    fn pivot(&mut self, adj: &[Vec<usize>], entering: usize) -> Option<()> {
        let (ie, je) = (entering / self.n, entering % self.n);
        let (parent, _) = self.parents(adj, ie);
        // Walk from the entering sink back to the entering source. Signs
        // alternate along the cycle starting with `-` next to the new cell.
        let mut minus = Vec::new();
        let mut plus = vec![entering];
        let mut node = self.m + je;
        let mut negative = true;
        while node != ie {
            let cell = parent[node].expect("tree path exists");
            if negative {
                minus.push(cell);
            } else {
                plus.push(cell);
            }
            negative = !negative;
            node = self.other_end(node, cell);
        }
        let theta = minus.iter().map(|&c| self.flow[c].clone()).min()?;
        let leaving = minus
            .iter()
            .copied()
            .filter(|&c| self.flow[c] == theta)
            .min()
            .expect("cycle has a backward cell");
        for &c in &plus {
            self.flow[c] = self.flow[c].add(&theta)?;
        }
        for &c in &minus {
            self.flow[c] = self.flow[c].sub(&theta)?;
        }
        self.is_basic[leaving] = false;
        self.is_basic[entering] = true;
        let slot = self.basic.iter().position(|&c| c == leaving).expect("leaving cell is basic");
        self.basic[slot] = entering;
        Some(())
    }
}

/// Minimizes `Σ c[i][j] x[i][j]` over couplings of `supply` and `demand`.
/// Both sides must have equal nonnegative totals. Returns `None` on overflow.
pub(crate) fn solve<T: Exact>(supply: &[T], demand: &[T], cost: &[T]) -> Option<Solution<T>> {
    assert!(!supply.is_empty() && !demand.is_empty());
    assert_eq!(cost.len(), supply.len() * demand.len());
    let mut tree = Tree::northwest(supply, demand, cost)?;
    loop {
        let adj = tree.adjacency();
        let (u, v) = tree.potentials(&adj)?;
        match tree.entering(&u, &v)? {
            None => {
                return Some(Solution {
                    flow: tree.flow,
                    u,
                    v,
                })
            }
            Some(cell) => {
                tree.pivot(&adj, cell)?;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total_cost(sol: &Solution<i128>, cost: &[i128]) -> i128 {
        sol.flow.iter().zip(cost).map(|(x, c)| x * c).sum()
    }

    #[test]
    fn classic_three_by_three() {
        // Northwest corner is far from optimal here.
        let supply = [20, 30, 50];
        let demand = [30, 40, 30];
        let cost = [8, 6, 10, 9, 12, 13, 14, 9, 16];
        let sol = solve::<i128>(&supply, &demand, &cost).unwrap();
        // Optimum from an independent LP solve.
        assert_eq!(total_cost(&sol, &cost), 990);
        for i in 0..3 {
            assert_eq!(sol.flow[i * 3..i * 3 + 3].iter().sum::<i128>(), supply[i]);
        }
        for i in 0..3 {
            for j in 0..3 {
                assert!(cost[i * 3 + j] - sol.u[i] - sol.v[j] >= 0);
            }
        }
    }

    #[test]
    fn degenerate_zero_rows_and_ties() {
        let supply = [0, 2, 2, 0];
        let demand = [1, 1, 1, 1];
        let cost = [1; 16];
        let sol = solve::<i128>(&supply, &demand, &cost).unwrap();
        assert_eq!(total_cost(&sol, &cost), 4);
    }

    #[test]
    fn bigint_matches_i128() {
        let supply = [3, 1, 4];
        let demand = [2, 2, 4];
        let cost = [0, 5, 2, 5, 0, 3, 2, 3, 0];
        let small = solve::<i128>(&supply, &demand, &cost).unwrap();
        let big = solve::<BigInt>(
            &supply.map(BigInt::from),
            &demand.map(BigInt::from),
            &cost.map(BigInt::from),
        )
        .unwrap();
        assert_eq!(small.flow.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(), big.flow);
    }

    #[test]
    fn overflow_is_reported() {
        let supply = [i128::MAX, 0];
        let demand = [0, i128::MAX];
        let cost = [i128::MAX, i128::MIN + 1, -5, i128::MAX];
        assert!(solve::<i128>(&supply, &demand, &cost).is_none());
    }
}
