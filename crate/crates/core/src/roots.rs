//! Root systems: construction, validation, reflections and direct sums.
//!
//! Every irreducible factor gets a concrete coordinate model. The models are
//! the usual textbook ones (type A in the sum-zero hyperplane of R^{n+1}, types
//! B/C/D through `±eᵢ ± eⱼ`, E6 and E7 cut out of E8). H3 is grown from the
//! three reflection vectors of its explicit generator matrices, H4 is the set
//! of 120 unit icosians. I2(n) only has vectors for n ∈ {3, 4, 5, 6}; other n
//! are *matrix free* and are handled purely combinatorially.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::arith::FieldElement;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

/// One irreducible component of a root-system spec.
///
/// `A(0)` is the irreducible empty system A0 living in R¹.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Factor {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
    H3,
    H4,
    I2(usize),
}

impl Factor {
    /// Checks the parameter ranges: A(n≥0), B/C(n≥2), D(n≥2), I2(n≥3).
    pub fn validate(self) -> Result<Self> {
        let bad = |family: &str, reason: &str| {
            Err(Error::InvalidParameter { family: family.into(), reason: reason.into() })
        };
        match self {
            Factor::B(n) | Factor::C(n) if n < 2 => bad("B/C", "rank must be at least 2"),
            Factor::D(n) if n < 2 => bad("D", "rank must be at least 2"),
            Factor::I2(n) if n < 3 => bad("I2", "n must be at least 3"),
            _ => Ok(self),
        }
    }

    /// `C(n)` and `B(n)` generate the same group; everything else is unchanged.
    pub fn normalized(self) -> Self {
        match self {
            Factor::C(n) => Factor::B(n),
            f => f,
        }
    }

    /// D2 and D3 are accepted for testing but are not irreducible labels in
    /// the classification (D2 = A1 + A1, D3 = A3).
    pub fn is_canonical(self) -> bool {
        !matches!(self, Factor::D(2) | Factor::D(3))
    }

    pub fn has_matrix_model(self) -> bool {
        !matches!(self, Factor::I2(n) if !(3..=6).contains(&n))
    }

    /// |W| from the classical order formulas; `None` on overflow.
    pub fn group_order(self) -> Option<u128> {
        let fact = |n: usize| (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k));
        let pow2 = |n: usize| 1u128.checked_shl(n as u32);
        match self {
            Factor::A(n) => fact(n + 1),
            Factor::B(n) | Factor::C(n) => pow2(n)?.checked_mul(fact(n)?),
            Factor::D(n) => pow2(n - 1)?.checked_mul(fact(n)?),
            Factor::E6 => Some(51_840),
            Factor::E7 => Some(2_903_040),
            Factor::E8 => Some(696_729_600),
            Factor::F4 => Some(1152),
            Factor::G2 => Some(12),
            Factor::H3 => Some(120),
            Factor::H4 => Some(14_400),
            Factor::I2(n) => Some(2 * n as u128),
        }
    }

    /// Number of roots of the coordinate model.
    pub fn root_count(self) -> usize {
        match self {
            Factor::A(n) => n * (n + 1),
            Factor::B(n) | Factor::C(n) => 2 * n * n,
            Factor::D(n) => 2 * n * (n - 1),
            Factor::E6 => 72,
            Factor::E7 => 126,
            Factor::E8 => 240,
            Factor::F4 => 48,
            Factor::G2 => 12,
            Factor::H3 => 30,
            Factor::H4 => 120,
            Factor::I2(n) => 2 * n,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::A(n) => write!(f, "A{n}"),
            Factor::B(n) => write!(f, "B{n}"),
            Factor::C(n) => write!(f, "C{n}"),
            Factor::D(n) => write!(f, "D{n}"),
            Factor::E6 => f.write_str("E6"),
            Factor::E7 => f.write_str("E7"),
            Factor::E8 => f.write_str("E8"),
            Factor::F4 => f.write_str("F4"),
            Factor::G2 => f.write_str("G2"),
            Factor::H3 => f.write_str("H3"),
            Factor::H4 => f.write_str("H4"),
            Factor::I2(n) => write!(f, "I2({n})"),
        }
    }
}

impl FromStr for Factor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let token: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_uppercase();
        let err = |reason: &str| Error::Parse { input: s.to_string(), reason: reason.to_string() };
        if token.is_empty() {
            return Err(err("empty factor"));
        }
        if let Some(rest) = token.strip_prefix("I2") {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| err("expected I2(<n>)"))?;
            let n: usize = inner.parse().map_err(|_| err("I2 parameter is not an integer"))?;
            return Factor::I2(n).validate();
        }
        let (head, digits) = token.split_at(1);
        let n: usize = digits.parse().map_err(|_| err("expected a family letter followed by an integer"))?;
        let factor = match (head, n) {
            ("A", n) => Factor::A(n),
            ("B", n) => Factor::B(n),
            ("C", n) => Factor::C(n),
            ("D", n) => Factor::D(n),
            ("E", 6) => Factor::E6,
            ("E", 7) => Factor::E7,
            ("E", 8) => Factor::E8,
            ("F", 4) => Factor::F4,
            ("G", 2) => Factor::G2,
            ("H", 3) => Factor::H3,
            ("H", 4) => Factor::H4,
            ("E" | "F" | "G" | "H", _) => return Err(err("no such exceptional root system")),
            _ => return Err(err("unknown family")),
        };
        factor.validate()
    }
}

/// A parsed spec `FACTOR ("+" FACTOR)*`, e.g. `B4 + D5 + I2(7) + A0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SystemSpec {
    pub factors: Vec<Factor>,
}

impl SystemSpec {
    pub fn new(factors: Vec<Factor>) -> Self {
        SystemSpec { factors }
    }

    pub fn single(factor: Factor) -> Self {
        SystemSpec { factors: vec![factor] }
    }

    /// Spec with C replaced by B; used as cache key.
    pub fn normalized(&self) -> SystemSpec {
        SystemSpec { factors: self.factors.iter().map(|f| f.normalized()).collect() }
    }

    /// Product of factor orders; `None` on overflow.
    pub fn group_order(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, f| acc.checked_mul(f.group_order()?))
    }

    pub fn has_matrix_model(&self) -> bool {
        self.factors.iter().all(|f| f.has_matrix_model())
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl FromStr for SystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::Parse { input: s.into(), reason: "empty spec".into() });
        }
        let factors = s.split('+').map(str::parse).collect::<Result<Vec<_>>>()?;
        Ok(SystemSpec { factors })
    }
}

/// Placement of one irreducible factor inside a (possibly reducible) system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub factor: Factor,
    pub offset: usize,
    pub dim: usize,
    pub roots: Range<usize>,
}

/// A finite root system with exact coordinates.
#[derive(Clone, Debug)]
pub struct RootSystem {
    blocks: Vec<Block>,
    dimension: usize,
    roots: Vec<Vector>,
    index: HashMap<Vector, usize>,
    matrix_free: bool,
}

impl RootSystem {
    /// Builds the coordinate model of one irreducible factor.
    pub fn build_irreducible(factor: Factor) -> Result<RootSystem> {
        let factor = factor.validate()?.normalized();
        let (dim, roots, matrix_free) = match factor {
            Factor::A(0) => (1, Vec::new(), false),
            Factor::A(n) => (n + 1, type_a_roots(n + 1), false),
            Factor::B(n) => (n, type_b_roots(n), false),
            Factor::D(n) => (n, type_d_roots(n), false),
            Factor::E8 => (8, e8_roots(), false),
            Factor::E7 => (8, orthogonal_to(e8_roots(), &[e7_cut()]), false),
            Factor::E6 => (8, orthogonal_to(e8_roots(), &[e7_cut(), e6_cut()]), false),
            Factor::F4 => (4, f4_roots(), false),
            Factor::G2 | Factor::I2(6) => (3, g2_roots(), false),
            Factor::H3 => (3, reflection_closure(&h3_generating_roots()), false),
            Factor::H4 => (4, h4_roots(), false),
            Factor::I2(3) => (3, type_a_roots(3), false),
            Factor::I2(4) => (2, type_b_roots(2), false),
            Factor::I2(5) => (3, reflection_closure(&h3_generating_roots()[..2]), false),
            Factor::I2(_) => (2, Vec::new(), true),
            Factor::C(_) => unreachable!("normalized away"),
        };
        debug_assert!(matrix_free || roots.len() == factor.root_count());
        let block = Block { factor, offset: 0, dim, roots: 0..roots.len() };
        Ok(RootSystem::assemble(vec![block], dim, roots, matrix_free))
    }

    /// Builds the direct sum of every factor in `spec`.
    pub fn from_spec(spec: &SystemSpec) -> Result<RootSystem> {
        let mut parts = spec.factors.iter().map(|&f| RootSystem::build_irreducible(f));
        let first = parts
            .next()
            .ok_or_else(|| Error::Parse { input: String::new(), reason: "empty spec".into() })??;
        parts.try_fold(first, |acc, next| Ok(acc.direct_sum(&next?)))
    }

    /// An unlabeled set of vectors, used to exercise validation.
    pub fn custom(dimension: usize, roots: Vec<Vector>) -> RootSystem {
        RootSystem::assemble(Vec::new(), dimension, roots, false)
    }

    fn assemble(blocks: Vec<Block>, dimension: usize, roots: Vec<Vector>, matrix_free: bool) -> Self {
        let index = roots.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        RootSystem { blocks, dimension, roots, index, matrix_free }
    }

    /// `R1 + R2`: ambient dimensions add and the roots sit in orthogonal
    /// coordinate blocks.
    pub fn direct_sum(&self, other: &RootSystem) -> RootSystem {
        let dim = self.dimension + other.dimension;
        let mut roots: Vec<Vector> = self.roots.iter().map(|v| v.embed(dim, 0)).collect();
        roots.extend(other.roots.iter().map(|v| v.embed(dim, self.dimension)));
        let shift = self.roots.len();
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().map(|b| Block {
            factor: b.factor,
            offset: b.offset + self.dimension,
            dim: b.dim,
            roots: b.roots.start + shift..b.roots.end + shift,
        }));
        RootSystem::assemble(blocks, dim, roots, self.matrix_free || other.matrix_free)
    }

    pub fn factors(&self) -> Vec<Factor> {
        self.blocks.iter().map(|b| b.factor).collect()
    }

    pub fn spec(&self) -> SystemSpec {
        SystemSpec::new(self.factors())
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn label(&self) -> String {
        if self.blocks.is_empty() {
            "custom".into()
        } else {
            self.spec().to_string()
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Vector {
        &self.roots[i]
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn is_matrix_free(&self) -> bool {
        self.matrix_free
    }

    pub fn index_of(&self, v: &Vector) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Number of A0 factors; each contributes one fixed line to V.
    pub fn a0_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.factor == Factor::A(0)).count()
    }

    /// Image of every root under the reflection through root `i`.
    pub fn reflection_permutation(&self, i: usize) -> Vec<usize> {
        let v = &self.roots[i];
        let vv = v.dot(v);
        self.roots
            .iter()
            .map(|x| {
                let image = reflect_with_norm(v, &vv, x);
                self.index_of(&image).expect("root system is closed under its reflections")
            })
            .collect()
    }

    /// Index of `−v` for every root `v`.
    pub fn negation_permutation(&self) -> Vec<usize> {
        self.roots
            .iter()
            .map(|v| self.index_of(&-v).expect("root system contains negatives"))
            .collect()
    }

    /// Picks a positive system from a generic linear functional and returns
    /// its simple roots together with every root's coordinates in that basis.
    pub fn simple_system(&self) -> SimpleSystem {
        let functional = self.generic_functional();
        let heights: Vec<FieldElement> = self.roots.iter().map(|v| v.dot(&functional)).collect();
        let positive: Vec<usize> = (0..self.len()).filter(|&i| heights[i].is_positive()).collect();
        let norms: Vec<FieldElement> = self.roots.iter().map(|v| v.dot(v)).collect();
        let two = FieldElement::from_integer(2);

        // A positive root is simple iff its reflection permutes the other
        // positive roots. Height of s_α(β) is h(β) − 2(β,α)/(α,α)·h(α).
        let simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&a| {
                let alpha = &self.roots[a];
                let scale = &(&two * &heights[a]) / &norms[a];
                positive.iter().all(|&b| {
                    b == a || {
                        let h = &heights[b] - &(&self.roots[b].dot(alpha) * &scale);
                        h.is_positive()
                    }
                })
            })
            .collect();

        let gram = Matrix::from_rows(
            simple
                .iter()
                .map(|&i| simple.iter().map(|&j| self.roots[i].dot(&self.roots[j])).collect())
                .collect(),
        );
        let gram_inv = gram.inverse().expect("simple roots are linearly independent");
        let coords = self
            .roots
            .iter()
            .map(|v| {
                let rhs = Vector(simple.iter().map(|&i| self.roots[i].dot(v)).collect());
                gram_inv.mul_vec(&rhs).0
            })
            .collect();
        SimpleSystem { simple, positive: (0..self.len()).map(|i| heights[i].is_positive()).collect(), coords }
    }

    fn generic_functional(&self) -> Vector {
        for base in 3i64.. {
            let f = Vector((0..self.dimension).map(|i| FieldElement::from_integer(base.pow(i as u32))).collect());
            if self.roots.iter().all(|v| !v.dot(&f).is_zero()) {
                return f;
            }
        }
        unreachable!()
    }
}

/// Simple roots of a chosen positive system.
#[derive(Clone, Debug)]
pub struct SimpleSystem {
    /// Root indices of the simple roots.
    pub simple: Vec<usize>,
    pub positive: Vec<bool>,
    /// Coordinates of every root in the simple-root basis.
    pub coords: Vec<Vec<FieldElement>>,
}

impl SimpleSystem {
    pub fn rank(&self) -> usize {
        self.simple.len()
    }
}

/// `R_v(x) = x − 2 (x,v)/(v,v) v`.
pub fn reflect(v: &Vector, x: &Vector) -> Vector {
    reflect_with_norm(v, &v.dot(v), x)
}

fn reflect_with_norm(v: &Vector, vv: &FieldElement, x: &Vector) -> Vector {
    let xv = x.dot(v);
    if xv.is_zero() {
        return x.clone();
    }
    let c = &(&FieldElement::from_integer(2) * &xv) / vv;
    x.sub(&v.scale(&c))
}

/// Matrix of the reflection through `v`.
pub fn reflection_matrix(v: &Vector) -> Result<Matrix> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let n = v.dim();
    let c = &FieldElement::from_integer(2) / &v.dot(v);
    let mut m = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let entry = m.get(i, j) - &(&(&v[i] * &v[j]) * &c);
            m.set(i, j, entry);
        }
    }
    Ok(m)
}

/// Why a vector set fails to be a root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ZeroRoot { root: usize },
    /// Two roots are collinear without being equal or opposite;
    /// also raised for duplicate entries.
    Collinear { first: usize, second: usize },
    /// Reflecting `root` through `mirror` leaves the set.
    NotClosed { mirror: usize, root: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Checks both root-system axioms; reports every failure found.
pub fn validate_root_system(system: &RootSystem) -> ValidationReport {
    let roots = system.roots();
    let mut violations = Vec::new();
    for (i, v) in roots.iter().enumerate() {
        if v.is_zero() {
            violations.push(Violation::ZeroRoot { root: i });
        }
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let (a, b) = (&roots[i], &roots[j]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            if a.is_collinear(b) && *b != -a {
                violations.push(Violation::Collinear { first: i, second: j });
            }
        }
    }
    if violations.is_empty() {
        for (m, v) in roots.iter().enumerate() {
            let vv = v.dot(v);
            for (r, x) in roots.iter().enumerate() {
                if system.index_of(&reflect_with_norm(v, &vv, x)).is_none() {
                    violations.push(Violation::NotClosed { mirror: m, root: r });
                }
            }
        }
    }
    ValidationReport { violations }
}

fn signed_pairs(n: usize, with_axes: bool) -> Vec<Vector> {
    let mut roots = Vec::new();
    if with_axes {
        for i in 0..n {
            for s in [1, -1] {
                let mut c = vec![0; n];
                c[i] = s;
                roots.push(Vector::from_integers(&c));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut c = vec![0; n];
                c[i] = si;
                c[j] = sj;
                roots.push(Vector::from_integers(&c));
            }
        }
    }
    roots
}

/// `eᵢ − eⱼ`, i ≠ j, in R^dim.
fn type_a_roots(dim: usize) -> Vec<Vector> {
    let mut roots = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                let mut c = vec![0; dim];
                c[i] = 1;
                c[j] = -1;
                roots.push(Vector::from_integers(&c));
            }
        }
    }
    roots
}

fn type_b_roots(n: usize) -> Vec<Vector> {
    signed_pairs(n, true)
}

fn type_d_roots(n: usize) -> Vec<Vector> {
    signed_pairs(n, false)
}

fn e8_roots() -> Vec<Vector> {
    let mut roots = signed_pairs(8, false);
    let half = FieldElement::frac(1, 2);
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            roots.push(Vector(
                (0..8).map(|i| if mask >> i & 1 == 1 { -&half } else { half.clone() }).collect(),
            ));
        }
    }
    roots
}

fn e7_cut() -> Vector {
    Vector::from_integers(&[0, 0, 0, 0, 0, 0, 1, 1])
}

fn e6_cut() -> Vector {
    Vector::from_integers(&[0, 0, 0, 0, 0, 1, -1, 0])
}

fn orthogonal_to(roots: Vec<Vector>, cuts: &[Vector]) -> Vec<Vector> {
    roots.into_iter().filter(|v| cuts.iter().all(|c| v.dot(c).is_zero())).collect()
}

fn f4_roots() -> Vec<Vector> {
    let mut roots = signed_pairs(4, true);
    let half = FieldElement::frac(1, 2);
    for mask in 0u32..16 {
        roots.push(Vector((0..4).map(|i| if mask >> i & 1 == 1 { -&half } else { half.clone() }).collect()));
    }
    roots
}

fn g2_roots() -> Vec<Vector> {
    let mut roots = type_a_roots(3);
    for i in 0..3 {
        for s in [1, -1] {
            let c: Vec<i64> = (0..3).map(|j| if j == i { 2 * s } else { -s }).collect();
            roots.push(Vector::from_integers(&c));
        }
    }
    roots
}

/// The reflection vectors of the H3 generator matrices `a`, `b`, `c`:
/// `e₂`, `½(−e₁ + k e₂ + k⁻¹ e₃)` and `e₁`.
pub fn h3_generating_roots() -> [Vector; 3] {
    let k = FieldElement::golden();
    let half = FieldElement::frac(1, 2);
    let kinv = &k - &FieldElement::one();
    [
        Vector::from_integers(&[0, 1, 0]),
        Vector(vec![-&half, &half * &k, &half * &kinv]),
        Vector::from_integers(&[1, 0, 0]),
    ]
}

/// The 120 unit icosians in quaternion coordinates (1, i, j, k).
pub fn h4_roots() -> Vec<Vector> {
    let mut roots = Vec::new();
    for i in 0..4 {
        for s in [1, -1] {
            let mut c = vec![0; 4];
            c[i] = s;
            roots.push(Vector::from_integers(&c));
        }
    }
    let half = FieldElement::frac(1, 2);
    for mask in 0u32..16 {
        roots.push(Vector((0..4).map(|i| if mask >> i & 1 == 1 { -&half } else { half.clone() }).collect()));
    }
    // ½(0, ±1, ±k⁻¹, ±k) under the even permutations of the four slots.
    let k = FieldElement::golden();
    let base = [FieldElement::zero(), half.clone(), &half * &(&k - &FieldElement::one()), &half * &k];
    for perm in even_permutations_of_4() {
        for mask in 0u32..8 {
            let mut c = vec![FieldElement::zero(); 4];
            for (slot, &target) in perm.iter().enumerate() {
                let mut x = base[slot].clone();
                if slot > 0 && mask >> (slot - 1) & 1 == 1 {
                    x = -x;
                }
                c[target] = x;
            }
            roots.push(Vector(c));
        }
    }
    roots
}

fn even_permutations_of_4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                    if distinct && inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Closes a set of vectors under the reflections through its own members.
pub fn reflection_closure(seeds: &[Vector]) -> Vec<Vector> {
    let mut roots: Vec<Vector> = Vec::new();
    let mut seen: HashMap<Vector, usize> = HashMap::new();
    for v in seeds {
        if !seen.contains_key(v) {
            seen.insert(v.clone(), roots.len());
            roots.push(v.clone());
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot = roots.clone();
        for v in &snapshot {
            for x in &snapshot {
                let image = reflect(v, x);
                if !seen.contains_key(&image) {
                    seen.insert(image.clone(), roots.len());
                    roots.push(image);
                    changed = true;
                }
            }
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> RootSystem {
        RootSystem::from_spec(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parse_grammar() {
        let spec: SystemSpec = " b4 + d5+I2( 7 )+a0 ".parse().unwrap();
        assert_eq!(spec.factors, vec![Factor::B(4), Factor::D(5), Factor::I2(7), Factor::A(0)]);
        assert_eq!(spec.to_string(), "B4+D5+I2(7)+A0");
        assert_eq!("c3".parse::<SystemSpec>().unwrap().normalized().to_string(), "B3");
        for bad in ["", "E9", "B1", "I2(2)", "X3", "A", "A1+", "I27", "F5"] {
            assert!(bad.parse::<SystemSpec>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn small_examples() {
        let a1 = build("A1");
        assert_eq!(a1.roots(), &[Vector::from_integers(&[1, -1]), Vector::from_integers(&[-1, 1])]);
        let a0 = build("A0");
        assert!(a0.is_empty());
        assert_eq!(a0.dimension(), 1);
        let h3 = build("H3");
        assert_eq!(h3.len(), 30);
        let sum = build("A0+A0");
        assert_eq!((sum.dimension(), sum.len()), (2, 0));
        let mixed = build("B2+I2(5)");
        assert_eq!(mixed.dimension(), 5);
        assert!(validate_root_system(&mixed).is_valid());
        let a11 = build("A1+A1");
        assert_eq!((a11.dimension(), a11.len()), (4, 4));
    }

    #[test]
    fn root_counts_and_validity() {
        for s in [
            "A1", "A2", "A4", "B2", "B3", "C4", "D4", "D5", "D2", "D3", "E6", "E7", "E8", "F4", "G2", "H3", "H4",
            "I2(3)", "I2(4)", "I2(5)", "I2(6)",
        ] {
            let r = build(s);
            let factor: Factor = s.parse().unwrap();
            assert_eq!(r.len(), factor.root_count(), "{s}");
            let report = validate_root_system(&r);
            assert!(report.is_valid(), "{s}: {:?}", report.first_violation());
        }
    }

    #[test]
    fn matrix_free_dihedral() {
        let r = build("I2(7)");
        assert!(r.is_matrix_free());
        assert!(r.is_empty());
        assert!("I2(7)".parse::<Factor>().unwrap().group_order() == Some(14));
    }

    #[test]
    fn validation_failures() {
        let e1 = Vector::from_integers(&[1, 0]);
        let two_e1 = Vector::from_integers(&[2, 0]);
        let bad = RootSystem::custom(2, vec![e1.clone(), two_e1]);
        assert!(matches!(bad.clone().validate_first(), Some(Violation::Collinear { .. })));
        let lonely = RootSystem::custom(2, vec![e1.clone()]);
        assert_eq!(validate_root_system(&lonely).first_violation(), Some(&Violation::NotClosed { mirror: 0, root: 0 }));
        let zero = RootSystem::custom(2, vec![Vector::zeros(2)]);
        assert_eq!(validate_root_system(&zero).first_violation(), Some(&Violation::ZeroRoot { root: 0 }));
        let b2 = build("B2");
        assert!(validate_root_system(&b2).is_valid());
    }

    impl RootSystem {
        fn validate_first(self) -> Option<Violation> {
            validate_root_system(&self).first_violation().cloned()
        }
    }

    #[test]
    fn reflection_matrices() {
        assert_eq!(reflection_matrix(&Vector::from_integers(&[1, 0])).unwrap(), Matrix::diagonal(&[-1, 1]));
        assert_eq!(
            reflection_matrix(&Vector::from_integers(&[1, -1])).unwrap(),
            Matrix::from_integer_rows(&[&[0, 1], &[1, 0]])
        );
        assert!(matches!(reflection_matrix(&Vector::zeros(3)), Err(Error::ZeroVector)));
    }

    #[test]
    fn reflections_permute_roots() {
        for s in ["A3", "B3", "G2", "H3", "F4", "I2(5)"] {
            let r = build(s);
            for i in 0..r.len() {
                let perm = r.reflection_permutation(i);
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..r.len()).collect::<Vec<_>>(), "{s}");
                let m = reflection_matrix(r.root(i)).unwrap();
                assert!((&m * &m).is_identity());
                assert!(m.is_symmetric());
                assert_eq!(m.det(), FieldElement::from_integer(-1));
                assert_eq!(m.mul_vec(r.root(i)), -r.root(i));
            }
        }
    }

    #[test]
    fn simple_systems_have_the_right_rank() {
        for (s, rank) in [("A3", 3), ("B4", 4), ("D4", 4), ("E6", 6), ("E7", 7), ("F4", 4), ("G2", 2), ("H3", 3), ("H4", 4), ("I2(5)", 2), ("A2+A0+B2", 4)] {
            let r = build(s);
            let simple = r.simple_system();
            assert_eq!(simple.rank(), rank, "{s}");
            assert_eq!(simple.positive.iter().filter(|&&p| p).count() * 2, r.len());
            // Each root is a non-negative or non-positive combination of simple roots.
            for c in &simple.coords {
                let nonneg = c.iter().all(|x| !x.is_negative());
                let nonpos = c.iter().all(|x| !x.is_positive());
                assert!(nonneg || nonpos, "{s}");
            }
        }
    }

    #[test]
    fn crystallographic_coordinates_are_integral() {
        for s in ["A4", "B3", "D5", "E6", "F4", "G2"] {
            let r = build(s);
            for c in r.simple_system().coords {
                assert!(c.iter().all(|x| x.is_rational() && x.rat_part().is_integer()), "{s}");
            }
        }
    }

    #[test]
    fn direct_sum_is_associative_up_to_layout() {
        let (a, b, c) = (build("A2"), build("B2"), build("G2"));
        let left = a.direct_sum(&b).direct_sum(&c);
        let right = a.direct_sum(&b.direct_sum(&c));
        assert_eq!(left.roots(), right.roots());
        assert_eq!(left.blocks(), right.blocks());
        assert_eq!(left.label(), "A2+B2+G2");
    }

    #[test]
    fn h3_matches_generator_geometry() {
        let r = build("H3");
        for v in h3_generating_roots() {
            assert!(r.index_of(&v).is_some());
        }
        // b is the reflection through the middle generating root.
        let k = FieldElement::golden();
        let one = FieldElement::one();
        let half = FieldElement::frac(1, 2);
        let b = Matrix::from_rows(vec![
            vec![one.clone(), k.clone(), &k - &one],
            vec![k.clone(), &one - &k, -&one],
            vec![&k - &one, -&one, k.clone()],
        ])
        .scale(&half);
        assert_eq!(reflection_matrix(&h3_generating_roots()[1]).unwrap(), b);
    }
}
