//! Finite metric spaces, short maps between them, and the symmetric
//! monoidal structure given by the sum metric.
//!
//! Spaces are immutable and cheap to clone. A space built by [`tensor`]
//! remembers its two factors, so marginals never have to guess a
//! factorization. Points of a tensor are ordered row-major with the left
//! factor outer: the pair `(i, j)` sits at index `i * |Y| + j`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Point label. Atoms are opaque strings; pairs are produced by [`tensor`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Atom(String),
    Pair(Box<Label>, Box<Label>),
}

impl Label {
    pub fn atom(s: impl Into<String>) -> Result<Label> {
        let s = s.into();
        if s.is_empty() || s.contains(['(', ')', ',']) {
            return Err(Error::InvalidLabel(s));
        }
        Ok(Label::Atom(s))
    }

    pub fn pair(a: Label, b: Label) -> Label {
        Label::Pair(Box::new(a), Box::new(b))
    }

    /// Inverse of `Display`: `"a"`, `"(a,b)"`, `"((a,b),c)"`, ...
    pub fn parse(s: &str) -> Result<Label> {
        let (label, rest) = Self::parse_prefix(s.trim())?;
        if !rest.is_empty() {
            return Err(Error::Parse(format!("trailing input in label {s:?}")));
        }
        Ok(label)
    }

    fn parse_prefix(s: &str) -> Result<(Label, &str)> {
        if let Some(inner) = s.strip_prefix('(') {
            let (a, rest) = Self::parse_prefix(inner)?;
            let rest = rest
                .strip_prefix(',')
                .ok_or_else(|| Error::Parse(format!("expected ',' in pair label near {rest:?}")))?;
            let (b, rest) = Self::parse_prefix(rest)?;
            let rest = rest
                .strip_prefix(')')
                .ok_or_else(|| Error::Parse(format!("expected ')' in pair label near {rest:?}")))?;
            Ok((Label::pair(a, b), rest))
        } else {
            let end = s.find([',', ')', '(']).unwrap_or(s.len());
            Ok((Label::atom(&s[..end])?, &s[end..]))
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => f.write_str(s),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

struct SpaceData {
    points: Vec<Label>,
    dist: Vec<Rational>,
    index: HashMap<Label, usize>,
    factors: Option<(FinMetricSpace, FinMetricSpace)>,
}

/// A finite metric space with exact rational distances.
#[derive(Clone)]
pub struct FinMetricSpace(Arc<SpaceData>);

impl FinMetricSpace {
    /// Builds a space and checks every metric axiom exhaustively.
    pub fn new(points: Vec<Label>, dist: Vec<Vec<Rational>>) -> Result<Self> {
        let n = points.len();
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(Error::Shape {
                points: n,
                rows: dist.len(),
                cols: dist.iter().map(Vec::len).find(|&c| c != n).unwrap_or(n),
            });
        }
        if n == 0 {
            return Err(Error::NotAMetric("empty space".into()));
        }
        let flat: Vec<Rational> = dist.into_iter().flatten().collect();
        let space = Self::from_parts(points, flat, None)?;
        space.check_axioms()?;
        Ok(space)
    }

    /// Convenience constructor over atom labels.
    pub fn from_atoms(labels: &[&str], dist: Vec<Vec<Rational>>) -> Result<Self> {
        let points = labels.iter().map(|l| Label::atom(*l)).collect::<Result<_>>()?;
        Self::new(points, dist)
    }

    fn from_parts(
        points: Vec<Label>,
        dist: Vec<Rational>,
        factors: Option<(FinMetricSpace, FinMetricSpace)>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(p.to_string()));
            }
        }
        Ok(FinMetricSpace(Arc::new(SpaceData {
            points,
            dist,
            index,
            factors,
        })))
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        let name = |i: usize| self.label(i).to_string();
        for i in 0..n {
            if !self.d(i, i).is_zero() {
                return Err(Error::NotAMetric(format!(
                    "d({a},{a}) = {} is not 0",
                    rational::format(self.d(i, i)),
                    a = name(i)
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if !self.d(i, j).is_positive() {
                    return Err(Error::NotAMetric(format!(
                        "distinct points {} and {} are at distance {}",
                        name(i),
                        name(j),
                        rational::format(self.d(i, j))
                    )));
                }
                if self.d(i, j) != self.d(j, i) {
                    return Err(Error::NotAMetric(format!(
                        "d({a},{b}) = {} but d({b},{a}) = {}",
                        rational::format(self.d(i, j)),
                        rational::format(self.d(j, i)),
                        a = name(i),
                        b = name(j)
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let via = self.d(i, j) + self.d(j, k);
                    if self.d(i, k) > &via {
                        return Err(Error::NotAMetric(format!(
                            "triangle inequality fails for ({a}, {b}, {c}): d({a},{c}) = {} > d({a},{b}) + d({b},{c}) = {}",
                            rational::format(self.d(i, k)),
                            rational::format(&via),
                            a = name(i),
                            b = name(j),
                            c = name(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.0.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.points.is_empty()
    }

    pub fn points(&self) -> &[Label] {
        &self.0.points
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.0.points[i]
    }

    pub fn d(&self, i: usize, j: usize) -> &Rational {
        &self.0.dist[i * self.len() + j]
    }

    /// Distance matrix as rows.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        self.0.dist.chunks(self.len()).map(<[_]>::to_vec).collect()
    }

    pub fn index_of(&self, label: &Label) -> Result<usize> {
        self.0
            .index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    /// Looks a point up by its printed label.
    pub fn index_of_str(&self, label: &str) -> Result<usize> {
        let parsed = Label::parse(label).map_err(|_| Error::UnknownPoint(label.to_string()))?;
        self.index_of(&parsed)
    }

    /// The two factors if this space was built by [`tensor`].
    pub fn factors(&self) -> Option<(&FinMetricSpace, &FinMetricSpace)> {
        self.0.factors.as_ref().map(|(a, b)| (a, b))
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }
}

impl PartialEq for FinMetricSpace {
    fn eq(&self, other: &Self) -> bool {
        self.ptr_eq(other) || (self.0.points == other.0.points && self.0.dist == other.0.dist)
    }
}

impl Eq for FinMetricSpace {}

impl fmt::Debug for FinMetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.points().iter().map(ToString::to_string).collect();
        f.debug_struct("FinMetricSpace")
            .field("points", &labels)
            .field("tensor", &self.factors().is_some())
            .finish()
    }
}

/// `X ⊗ Y` with `d((x,y),(x',y')) = d(x,x') + d(y,y')`.
pub fn tensor(x: &FinMetricSpace, y: &FinMetricSpace) -> FinMetricSpace {
    let (n, m) = (x.len(), y.len());
    let mut points = Vec::with_capacity(n * m);
    for a in x.points() {
        for b in y.points() {
            points.push(Label::pair(a.clone(), b.clone()));
        }
    }
    let mut dist = Vec::with_capacity(n * n * m * m);
    for i in 0..n {
        for j in 0..m {
            for k in 0..n {
                for l in 0..m {
                    dist.push(x.d(i, k) + y.d(j, l));
                }
            }
        }
    }
    FinMetricSpace::from_parts(points, dist, Some((x.clone(), y.clone())))
        .expect("pair labels of distinct factors are distinct")
}

/// Left-nested tensor `((X1 ⊗ X2) ⊗ X3) ⊗ ...`. Panics on an empty list.
pub fn tensor_n(spaces: &[FinMetricSpace]) -> FinMetricSpace {
    let (first, rest) = spaces.split_first().expect("tensor_n needs at least one space");
    rest.iter().fold(first.clone(), |acc, s| tensor(&acc, s))
}

/// The one-point space, the monoidal unit and terminal object.
pub fn terminal() -> FinMetricSpace {
    FinMetricSpace::from_parts(vec![Label::Atom("*".into())], vec![Rational::zero()], None)
        .expect("single label")
}

/// A 1-Lipschitz map given by a total lookup table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortMap {
    domain: FinMetricSpace,
    codomain: FinMetricSpace,
    table: Vec<usize>,
}

impl ShortMap {
    /// Builds the map and checks `d(f x, f x') <= d(x, x')` for every pair.
    pub fn new(domain: FinMetricSpace, codomain: FinMetricSpace, table: Vec<usize>) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::NotShort(format!(
                "table has {} entries for a domain of {} points",
                table.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= codomain.len()) {
            return Err(Error::UnknownPoint(format!("codomain index {bad}")));
        }
        if let Some((i, j)) = lipschitz_violation(&domain, &codomain, &table) {
            return Err(Error::NotShort(format!(
                "d(f({a}), f({b})) = {} > d({a},{b}) = {}",
                rational::format(codomain.d(table[i], table[j])),
                rational::format(domain.d(i, j)),
                a = domain.label(i),
                b = domain.label(j)
            )));
        }
        Ok(ShortMap {
            domain,
            codomain,
            table,
        })
    }

    /// Builds from a label assignment; every domain point must be assigned.
    pub fn from_labels<'a>(
        domain: FinMetricSpace,
        codomain: FinMetricSpace,
        assignment: impl IntoIterator<Item = (&'a Label, &'a Label)>,
    ) -> Result<Self> {
        let mut table = vec![None; domain.len()];
        for (from, to) in assignment {
            table[domain.index_of(from)?] = Some(codomain.index_of(to)?);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| Error::UnknownPoint(format!("no image for {}", domain.label(i)))))
            .collect::<Result<_>>()?;
        Self::new(domain, codomain, table)
    }

    pub fn domain(&self) -> &FinMetricSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FinMetricSpace {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }
}

/// First pair `(i, j)` with `d(f i, f j) > d(i, j)`, if any.
pub(crate) fn lipschitz_violation(
    domain: &FinMetricSpace,
    codomain: &FinMetricSpace,
    table: &[usize],
) -> Option<(usize, usize)> {
    let n = domain.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| codomain.d(table[i], table[j]) > domain.d(i, j))
}

pub fn identity(x: &FinMetricSpace) -> ShortMap {
    ShortMap::new(x.clone(), x.clone(), (0..x.len()).collect()).expect("identity is short")
}

/// `g ∘ f`: first `f`, then `g`.
pub fn compose(f: &ShortMap, g: &ShortMap) -> Result<ShortMap> {
    if f.codomain != g.domain {
        return Err(Error::DomainMismatch);
    }
    let table = f.table.iter().map(|&y| g.table[y]).collect();
    ShortMap::new(f.domain.clone(), g.codomain.clone(), table)
}

/// `f ⊗ g : X ⊗ Y → X' ⊗ Y'`.
pub fn tensor_map(f: &ShortMap, g: &ShortMap) -> ShortMap {
    let domain = tensor(&f.domain, &g.domain);
    let codomain = tensor(&f.codomain, &g.codomain);
    let m = g.codomain.len();
    let mut table = Vec::with_capacity(domain.len());
    for &a in &f.table {
        for &b in &g.table {
            table.push(a * m + b);
        }
    }
    ShortMap::new(domain, codomain, table).expect("tensor of short maps is short")
}

/// The unique map `X → 1`.
pub fn bang(x: &FinMetricSpace) -> ShortMap {
    ShortMap::new(x.clone(), terminal(), vec![0; x.len()]).expect("constant maps are short")
}

/// Constant map at codomain index `at`.
pub fn constant(x: &FinMetricSpace, y: &FinMetricSpace, at: usize) -> Result<ShortMap> {
    ShortMap::new(x.clone(), y.clone(), vec![at; x.len()])
}

pub fn proj1(x: &FinMetricSpace, y: &FinMetricSpace) -> ShortMap {
    let table = (0..x.len() * y.len()).map(|k| k / y.len()).collect();
    ShortMap::new(tensor(x, y), x.clone(), table).expect("projections are short")
}

pub fn proj2(x: &FinMetricSpace, y: &FinMetricSpace) -> ShortMap {
    let table = (0..x.len() * y.len()).map(|k| k % y.len()).collect();
    ShortMap::new(tensor(x, y), y.clone(), table).expect("projections are short")
}

/// Index permutation of the braiding `X ⊗ Y → Y ⊗ X`.
pub(crate) fn braiding_table(n: usize, m: usize) -> Vec<usize> {
    (0..n * m).map(|k| (k % m) * n + k / m).collect()
}

pub fn braiding(x: &FinMetricSpace, y: &FinMetricSpace) -> ShortMap {
    ShortMap::new(tensor(x, y), tensor(y, x), braiding_table(x.len(), y.len()))
        .expect("braiding is an isometry")
}

/// Index permutation of `(X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z)`. With the row-major
/// layout this is the identity on indices.
pub(crate) fn associator_table(n: usize, m: usize, l: usize) -> Vec<usize> {
    (0..n * m * l).collect()
}

pub fn associator(x: &FinMetricSpace, y: &FinMetricSpace, z: &FinMetricSpace) -> ShortMap {
    let table = associator_table(x.len(), y.len(), z.len());
    ShortMap::new(tensor(&tensor(x, y), z), tensor(x, &tensor(y, z)), table)
        .expect("associator is an isometry")
}

/// `1 ⊗ X → X`.
pub fn left_unitor(x: &FinMetricSpace) -> ShortMap {
    ShortMap::new(tensor(&terminal(), x), x.clone(), (0..x.len()).collect())
        .expect("unitor is an isometry")
}

/// `X ⊗ 1 → X`.
pub fn right_unitor(x: &FinMetricSpace) -> ShortMap {
    ShortMap::new(tensor(x, &terminal()), x.clone(), (0..x.len()).collect())
        .expect("unitor is an isometry")
}

/// Index permutation of `(W ⊗ X) ⊗ (Y ⊗ Z) → (W ⊗ Y) ⊗ (X ⊗ Z)`.
pub(crate) fn interchange_table(w: usize, x: usize, y: usize, z: usize) -> Vec<usize> {
    let mut table = Vec::with_capacity(w * x * y * z);
    for a in 0..w {
        for b in 0..x {
            for c in 0..y {
                for d in 0..z {
                    table.push((a * y + c) * (x * z) + (b * z + d));
                }
            }
        }
    }
    table
}

/// The middle swap `(W ⊗ X) ⊗ (Y ⊗ Z) → (W ⊗ Y) ⊗ (X ⊗ Z)`.
pub fn interchange(
    w: &FinMetricSpace,
    x: &FinMetricSpace,
    y: &FinMetricSpace,
    z: &FinMetricSpace,
) -> ShortMap {
    let table = interchange_table(w.len(), x.len(), y.len(), z.len());
    ShortMap::new(
        tensor(&tensor(w, x), &tensor(y, z)),
        tensor(&tensor(w, y), &tensor(x, z)),
        table,
    )
    .expect("interchange is an isometry")
}

/// A short real-valued function `|f(x) - f(x')| <= d(x, x')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortFunctional {
    domain: FinMetricSpace,
    values: Vec<Rational>,
}

impl ShortFunctional {
    pub fn new(domain: FinMetricSpace, values: Vec<Rational>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::NotShort(format!(
                "{} values for a domain of {} points",
                values.len(),
                domain.len()
            )));
        }
        let n = domain.len();
        for i in 0..n {
            for j in i + 1..n {
                let gap = rational::abs_diff(&values[i], &values[j]);
                if &gap > domain.d(i, j) {
                    return Err(Error::NotShort(format!(
                        "|f({a}) - f({b})| = {} > d({a},{b}) = {}",
                        rational::format(&gap),
                        rational::format(domain.d(i, j)),
                        a = domain.label(i),
                        b = domain.label(j)
                    )));
                }
            }
        }
        Ok(ShortFunctional { domain, values })
    }

    /// `f'(x) = min_y (f(y) + d(x, y))`: the largest short functional below
    /// `raw`. Short inputs come back unchanged.
    pub fn closure(domain: FinMetricSpace, raw: &[Rational]) -> Result<Self> {
        if raw.len() != domain.len() {
            return Self::new(domain, raw.to_vec());
        }
        let n = domain.len();
        let values = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| &raw[y] + domain.d(x, y))
                    .min()
                    .expect("nonempty space")
            })
            .collect();
        Self::new(domain, values)
    }

    pub fn zero(domain: &FinMetricSpace) -> Self {
        ShortFunctional {
            domain: domain.clone(),
            values: vec![Rational::zero(); domain.len()],
        }
    }

    /// `x ↦ d(x, z)`.
    pub fn distance_to(domain: &FinMetricSpace, z: usize) -> Self {
        let values = (0..domain.len()).map(|x| domain.d(x, z).clone()).collect();
        Self::new(domain.clone(), values).expect("distance functions are short")
    }

    pub fn domain(&self) -> &FinMetricSpace {
        &self.domain
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    /// `f ∘ g` for a short map `g` into this functional's domain.
    pub fn precompose(&self, g: &ShortMap) -> Result<Self> {
        self.domain.ensure_same(g.codomain())?;
        let values = g.table().iter().map(|&y| self.values[y].clone()).collect();
        Self::new(g.domain().clone(), values)
    }
}

/// `(x, y) ↦ f(x) + g(y)` on `X ⊗ Y`; short because the metric is the sum.
pub fn sum_functional(f: &ShortFunctional, g: &ShortFunctional) -> Result<ShortFunctional> {
    let domain = tensor(f.domain(), g.domain());
    let mut values = Vec::with_capacity(domain.len());
    for a in f.values() {
        for b in g.values() {
            values.push(a + b);
        }
    }
    ShortFunctional::new(domain, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn two(d: i64, a: &str, b: &str) -> FinMetricSpace {
        FinMetricSpace::from_atoms(&[a, b], vec![vec![int(0), int(d)], vec![int(d), int(0)]]).unwrap()
    }

    fn path3() -> FinMetricSpace {
        FinMetricSpace::from_atoms(
            &["0", "1", "2"],
            vec![
                vec![int(0), int(1), int(2)],
                vec![int(1), int(0), int(1)],
                vec![int(2), int(1), int(0)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_broken_triangle_naming_the_triple() {
        let err = FinMetricSpace::from_atoms(
            &["a", "b", "c"],
            vec![
                vec![int(0), int(1), int(5)],
                vec![int(1), int(0), int(1)],
                vec![int(5), int(1), int(0)],
            ],
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("(a, b, c)"), "{msg}");
    }

    #[test]
    fn rejects_pseudometrics_asymmetry_and_duplicates() {
        assert!(matches!(
            FinMetricSpace::from_atoms(&["a", "b"], vec![vec![int(0), int(0)], vec![int(0), int(0)]]),
            Err(Error::NotAMetric(_))
        ));
        assert!(matches!(
            FinMetricSpace::from_atoms(&["a", "b"], vec![vec![int(0), int(1)], vec![int(2), int(0)]]),
            Err(Error::NotAMetric(_))
        ));
        assert!(matches!(
            FinMetricSpace::from_atoms(&["a", "a"], vec![vec![int(0), int(1)], vec![int(1), int(0)]]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            FinMetricSpace::from_atoms(&["a"], vec![vec![int(0), int(1)]]),
            Err(Error::Shape { .. })
        ));
        assert!(Label::atom("a,b").is_err());
    }

    #[test]
    fn label_text_round_trip() {
        let l = Label::pair(Label::pair(Label::atom("a").unwrap(), Label::atom("u").unwrap()), Label::atom("7").unwrap());
        assert_eq!(l.to_string(), "((a,u),7)");
        assert_eq!(Label::parse("((a,u),7)").unwrap(), l);
        assert!(Label::parse("(a,b").is_err());
        assert!(Label::parse("(a,b)c").is_err());
    }

    #[test]
    fn sum_metric_on_pairs() {
        let x = two(2, "a", "b");
        let y = two(3, "u", "v");
        let xy = tensor(&x, &y);
        assert_eq!(xy.len(), 4);
        let au = xy.index_of_str("(a,u)").unwrap();
        let bv = xy.index_of_str("(b,v)").unwrap();
        assert_eq!(xy.d(au, bv), &int(5));
        assert_eq!(au, 0);
        assert_eq!(xy.index_of_str("(a,v)").unwrap(), 1);
    }

    #[test]
    fn terminal_is_unit() {
        let one = terminal();
        assert_eq!(one.len(), 1);
        assert_eq!(one.matrix(), vec![vec![int(0)]]);
        let x = path3();
        let lx = tensor(&one, &x);
        let rx = tensor(&x, &one);
        assert_eq!(lx.matrix(), x.matrix());
        assert_eq!(rx.matrix(), x.matrix());
        assert_eq!(bang(&one), identity(&one));
        assert_eq!(left_unitor(&x).table(), identity(&x).table());
    }

    #[test]
    fn associativity_on_the_nose() {
        let (x, y, z) = (two(1, "a", "b"), path3(), two(3, "u", "v"));
        let left = tensor(&tensor(&x, &y), &z);
        let right = tensor(&x, &tensor(&y, &z));
        let assoc = associator(&x, &y, &z);
        for i in 0..left.len() {
            for j in 0..left.len() {
                assert_eq!(left.d(i, j), right.d(assoc.apply(i), assoc.apply(j)));
            }
        }
        assert_eq!(tensor_n(&[x.clone(), y.clone(), z.clone()]), left);
    }

    #[test]
    fn bang_is_terminal_and_projection_factors_through_it() {
        let x = path3();
        let w = two(1, "a", "b");
        let f = ShortMap::new(w.clone(), x.clone(), vec![0, 1]).unwrap();
        assert_eq!(compose(&f, &bang(&x)).unwrap(), bang(&w));
        let y = two(3, "u", "v");
        let via_unit = compose(&tensor_map(&identity(&x), &bang(&y)), &right_unitor(&x)).unwrap();
        assert_eq!(via_unit, proj1(&x, &y));
    }

    #[test]
    fn braiding_is_isometric_involution() {
        let (x, y) = (path3(), two(3, "u", "v"));
        let b = braiding(&x, &y);
        let bb = compose(&b, &braiding(&y, &x)).unwrap();
        assert_eq!(bb, identity(&tensor(&x, &y)));
        let xy = tensor(&x, &y);
        let yx = tensor(&y, &x);
        for i in 0..xy.len() {
            for j in 0..xy.len() {
                assert_eq!(xy.d(i, j), yx.d(b.apply(i), b.apply(j)));
            }
        }
        let one = terminal();
        let b1 = compose(&braiding(&x, &one), &left_unitor(&x)).unwrap();
        assert_eq!(b1, right_unitor(&x));
    }

    #[test]
    fn non_short_maps_rejected() {
        let x = two(1, "a", "b");
        let y = two(2, "u", "v");
        assert!(matches!(ShortMap::new(x, y, vec![0, 1]), Err(Error::NotShort(_))));
    }

    #[test]
    fn composition_domain_checked() {
        let x = two(1, "a", "b");
        let y = path3();
        let f = identity(&x);
        let g = identity(&y);
        assert_eq!(compose(&f, &g).unwrap_err(), Error::DomainMismatch);
        assert_eq!(compose(&identity(&x), &f).unwrap(), f);
    }

    #[test]
    fn closure_repairs_and_fixes_short() {
        let x = path3();
        let raw = vec![int(0), int(5), int(-3)];
        let f = ShortFunctional::closure(x.clone(), &raw).unwrap();
        assert_eq!(f.values(), &[int(-1), int(-2), int(-3)]);
        let again = ShortFunctional::closure(x, f.values()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn sum_of_short_functionals_is_short() {
        let f = ShortFunctional::new(path3(), vec![int(0), ratio(1, 2), int(1)]).unwrap();
        let g = ShortFunctional::new(two(3, "u", "v"), vec![int(3), int(0)]).unwrap();
        let h = sum_functional(&f, &g).unwrap();
        assert_eq!(h.value(5), &int(1));
    }
}
