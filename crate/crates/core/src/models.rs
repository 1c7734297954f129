//! Explicit models of W(H3) and W(H4): the three H3 generator matrices over
//! Q(√5), and W(H4) acting on the quaternions by `x ↦ l x r*` and
//! `x ↦ p x*`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Mul, Neg};

use rand::Rng;

use crate::arith::FieldElement;
use crate::classes::{count_brute_force, ConjugacyClass};
use crate::error::{Error, Result};
use crate::group::{eigenvalue_test, Group, GroupBudget};
use crate::linalg::{Matrix, Poly, Vector};
use crate::roots::{h4_roots, Factor, RootSystem};

/// `q0 + q1 i + q2 j + q3 k` with coefficients in Q(√5).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Quaternion {
    pub q0: FieldElement,
    pub q1: FieldElement,
    pub q2: FieldElement,
    pub q3: FieldElement,
}

impl Quaternion {
    pub fn new(q0: FieldElement, q1: FieldElement, q2: FieldElement, q3: FieldElement) -> Self {
        Quaternion { q0, q1, q2, q3 }
    }

    pub fn from_integers(q: [i64; 4]) -> Self {
        Quaternion::from_coords(q.map(FieldElement::from_integer))
    }

    pub fn from_coords([q0, q1, q2, q3]: [FieldElement; 4]) -> Self {
        Quaternion { q0, q1, q2, q3 }
    }

    pub fn from_vector(v: &Vector) -> Self {
        assert_eq!(v.dim(), 4, "quaternions are 4-vectors");
        Quaternion::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
    }

    pub fn to_vector(&self) -> Vector {
        Vector(self.coords().to_vec())
    }

    pub fn one() -> Self {
        Quaternion::from_integers([1, 0, 0, 0])
    }

    pub fn i() -> Self {
        Quaternion::from_integers([0, 1, 0, 0])
    }

    pub fn j() -> Self {
        Quaternion::from_integers([0, 0, 1, 0])
    }

    pub fn k() -> Self {
        Quaternion::from_integers([0, 0, 0, 1])
    }

    pub fn basis() -> [Quaternion; 4] {
        [Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()]
    }

    pub fn coords(&self) -> [FieldElement; 4] {
        [self.q0.clone(), self.q1.clone(), self.q2.clone(), self.q3.clone()]
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.q0.clone(), -&self.q1, -&self.q2, -&self.q3)
    }

    pub fn norm(&self) -> FieldElement {
        self.coords().iter().map(|c| c * c).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        Quaternion::from_coords(self.coords().map(|c| &c * s))
    }

    pub fn add(&self, other: &Quaternion) -> Self {
        Quaternion::new(&self.q0 + &other.q0, &self.q1 + &other.q1, &self.q2 + &other.q2, &self.q3 + &other.q3)
    }

    pub fn sub(&self, other: &Quaternion) -> Self {
        self.add(&-other)
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;

    fn mul(self, b: &Quaternion) -> Quaternion {
        let a = self;
        Quaternion::new(
            &a.q0 * &b.q0 - &a.q1 * &b.q1 - &a.q2 * &b.q2 - &a.q3 * &b.q3,
            &a.q0 * &b.q1 + &a.q1 * &b.q0 + &a.q2 * &b.q3 - &a.q3 * &b.q2,
            &a.q0 * &b.q2 - &a.q1 * &b.q3 + &a.q2 * &b.q0 + &a.q3 * &b.q1,
            &a.q0 * &b.q3 + &a.q1 * &b.q2 - &a.q2 * &b.q1 + &a.q3 * &b.q0,
        )
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, b: Quaternion) -> Quaternion {
        &self * &b
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::from_coords(self.coords().map(|c| -c))
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        -&self
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.q0, self.q1, self.q2, self.q3)
    }
}

/// The 120 unit icosians, i.e. the roots of H4 read as quaternions.
pub fn icosians() -> Vec<Quaternion> {
    h4_roots().iter().map(Quaternion::from_vector).collect()
}

/// A random exact unit quaternion over Q(√5).
///
/// Mixes icosians with Cayley-type points `(1+u)²/(1+|u|²)` for pure
/// imaginary `u` with small coordinates in Z[k]/2, so the norm is exactly 1.
pub fn sample_unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    let icosians = icosians();
    let ico = icosians[rng.gen_range(0..icosians.len())].clone();
    if rng.gen_bool(0.25) {
        return ico;
    }
    let k = FieldElement::golden();
    let coord = |rng: &mut R| {
        let a = FieldElement::from_integer(rng.gen_range(-3..=3));
        let b = FieldElement::from_integer(rng.gen_range(-2..=2));
        (a + b * &k) * FieldElement::frac(1, rng.gen_range(1..=2))
    };
    let u = Quaternion::new(FieldElement::zero(), coord(rng), coord(rng), coord(rng));
    let w = Quaternion::one().add(&u);
    let n = w.norm().inverse().expect("1 + |u|² > 0");
    let q = (&w * &w).scale(&n);
    if rng.gen_bool(0.5) {
        &q * &ico
    } else {
        q
    }
}

fn require_unit(q: &Quaternion, what: &'static str) -> Result<()> {
    if q.is_unit() {
        Ok(())
    } else {
        Err(Error::NonUnitQuaternion { what })
    }
}

/// Matrix on the basis (1, i, j, k) of a real-linear map of the quaternions.
pub fn quaternion_map_matrix(f: impl Fn(&Quaternion) -> Quaternion) -> Matrix {
    let cols: Vec<Vector> = Quaternion::basis().iter().map(|e| f(e).to_vector()).collect();
    Matrix::from_columns(&cols)
}

/// Matrix of `x ↦ l x r*`.
pub fn lr_action_matrix(l: &Quaternion, r: &Quaternion) -> Result<Matrix> {
    require_unit(l, "l")?;
    require_unit(r, "r")?;
    let rc = r.conj();
    Ok(quaternion_map_matrix(|x| &(l * x) * &rc))
}

/// Matrix of `x ↦ p x*`.
pub fn star_action_matrix(p: &Quaternion) -> Result<Matrix> {
    require_unit(p, "p")?;
    Ok(quaternion_map_matrix(|x| p * &x.conj()))
}

/// Matrix of `x ↦ l x* r`, the general orientation-reversing element.
pub fn star_lr_action_matrix(l: &Quaternion, r: &Quaternion) -> Result<Matrix> {
    require_unit(l, "l")?;
    require_unit(r, "r")?;
    Ok(quaternion_map_matrix(|x| &(l * &x.conj()) * r))
}

/// Determinant of `x ↦ l x − x r` and whether `x ↦ l x r*` has eigenvalue +1,
/// i.e. whether that determinant vanishes.
pub fn lr_fixed_point_criterion(l: &Quaternion, r: &Quaternion) -> Result<(FieldElement, bool)> {
    require_unit(l, "l")?;
    require_unit(r, "r")?;
    let det = quaternion_map_matrix(|x| (l * x).sub(&(x * r))).det();
    let fixed = det.is_zero();
    Ok((det, fixed))
}

/// The generator matrices `a`, `b`, `c` of W(H3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H3Generators {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
}

impl H3Generators {
    pub fn relations_hold(&self) -> bool {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        [a, b, c].iter().all(|g| g.pow(2).is_identity())
            && (a * b).pow(5).is_identity()
            && (b * c).pow(3).is_identity()
            && (a * c).pow(2).is_identity()
    }
}

/// `a = diag(1, −1, 1)`, `c = diag(−1, 1, 1)` and
/// `b = ½[[1, k, k−1], [k, 1−k, −1], [k−1, −1, k]]` with `k = (1+√5)/2`.
pub fn build_h3_generators() -> H3Generators {
    let k = FieldElement::golden();
    let one = FieldElement::one();
    let half = FieldElement::frac(1, 2);
    let b = Matrix::from_rows(vec![
        vec![one.clone(), k.clone(), &k - &one],
        vec![k.clone(), &one - &k, -&one],
        vec![&k - &one, -&one, k.clone()],
    ])
    .scale(&half);
    H3Generators { a: Matrix::diagonal(&[1, -1, 1]), b, c: Matrix::diagonal(&[-1, 1, 1]) }
}

/// A finite group of matrices, closed under multiplication by its generators.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub elements: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
}

impl MatrixGroup {
    /// Closure of `generators` under right multiplication; fails once more
    /// than `limit` elements appear.
    pub fn generate(generators: &[Matrix], limit: usize) -> Result<MatrixGroup> {
        let n = generators.first().map_or(0, Matrix::rows);
        let mut elements = vec![Matrix::identity(n)];
        let mut index = HashMap::from([(Matrix::identity(n), 0)]);
        let mut next = 0;
        while next < elements.len() {
            for g in generators {
                let product = &elements[next] * g;
                if !index.contains_key(&product) {
                    if elements.len() == limit {
                        return Err(Error::BudgetExceeded {
                            label: "matrix group".into(),
                            order: limit as u128 + 1,
                            budget: limit as u128,
                        });
                    }
                    index.insert(product.clone(), elements.len());
                    elements.push(product);
                }
            }
            next += 1;
        }
        Ok(MatrixGroup { elements, index })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Classes by direct conjugation; representatives are element indices.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let order = self.order();
        let inverses: Vec<Matrix> = self.elements.iter().map(|g| g.inverse().expect("group elements are invertible")).collect();
        let mut seen = vec![false; order];
        let mut classes = Vec::new();
        for x in 0..order {
            if seen[x] {
                continue;
            }
            let mut size = 0;
            for (g, g_inv) in self.elements.iter().zip(&inverses) {
                let y = self.index[&(&(g * &self.elements[x]) * g_inv)];
                if !seen[y] {
                    seen[y] = true;
                    size += 1;
                }
            }
            let m = &self.elements[x];
            classes.push(ConjugacyClass {
                representative: x as u32,
                size,
                char_poly: m.char_poly(),
                has_plus_one: eigenvalue_test(m, 1),
                has_minus_one: eigenvalue_test(m, -1),
                det: m.det(),
            });
        }
        classes
    }
}

/// One row of the H3 characteristic polynomial table. Polynomials are in the
/// `det(M − tI)` normalization.
#[derive(Clone, Debug)]
pub struct CharPolyRow {
    pub word: &'static str,
    pub expected: Poly,
    pub computed: Poly,
}

impl CharPolyRow {
    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Clone, Debug)]
pub struct H3TableVerdict {
    pub relations_hold: bool,
    pub order: usize,
    pub class_count: usize,
    pub rows: Vec<CharPolyRow>,
    pub rows_have_plus_one: bool,
    pub minus_ac_has_plus_one: bool,
    pub negative_without_plus_one: usize,
    pub traces: usize,
    pub supertraces: usize,
}

impl H3TableVerdict {
    pub fn holds(&self) -> bool {
        self.relations_hold
            && self.order == 120
            && self.class_count == 10
            && self.rows.iter().all(CharPolyRow::matches)
            && self.rows_have_plus_one
            && self.minus_ac_has_plus_one
            && self.negative_without_plus_one == 4
            && self.traces == 4
            && self.supertraces == 4
    }
}

fn poly(coeffs: Vec<FieldElement>) -> Poly {
    Poly::new(coeffs)
}

/// Rebuilds W(H3) from the generator matrices and checks the characteristic
/// polynomials of `I, ac, bc, ab, abab` and the four classes counted by T.
pub fn h3_charpoly_table_check() -> H3TableVerdict {
    let gens = build_h3_generators();
    let (a, b, c) = (&gens.a, &gens.b, &gens.c);
    let k = FieldElement::golden();
    let one = FieldElement::one();
    let i = |n| FieldElement::from_integer(n);

    let one_minus_t = Poly::from_integers(&[1, -1]);
    let ab = a * b;
    let words: [(&'static str, Matrix, Poly); 5] = [
        ("I", Matrix::identity(3), Poly::from_integers(&[1, -3, 3, -1])),
        ("ac", a * c, &one_minus_t * &Poly::from_integers(&[1, 2, 1])),
        ("bc", b * c, &one_minus_t * &Poly::from_integers(&[1, 1, 1])),
        ("ab", ab.clone(), &one_minus_t * &poly(vec![i(1), &one - &k, i(1)])),
        ("abab", &ab * &ab, &one_minus_t * &poly(vec![i(1), k.clone(), i(1)])),
    ];
    let rows: Vec<CharPolyRow> = words
        .iter()
        .map(|(word, m, expected)| CharPolyRow {
            word,
            expected: expected.clone(),
            computed: m.char_poly().scale(&i(-1)),
        })
        .collect();
    let rows_have_plus_one = words.iter().all(|(_, m, _)| eigenvalue_test(m, 1));
    let minus_ac_has_plus_one = eigenvalue_test(&-&(a * c), 1);

    let group = MatrixGroup::generate(&[a.clone(), b.clone(), c.clone()], 1000).expect("W(H3) is finite");
    let classes = group.conjugacy_classes();
    H3TableVerdict {
        relations_hold: gens.relations_hold(),
        order: group.order(),
        class_count: classes.len(),
        rows,
        rows_have_plus_one,
        minus_ac_has_plus_one,
        negative_without_plus_one: classes.iter().filter(|c| c.det.is_negative() && !c.has_plus_one).count(),
        traces: classes.iter().filter(|c| !c.has_plus_one).count(),
        supertraces: classes.iter().filter(|c| !c.has_minus_one).count(),
    }
}

/// A class of W(H4) with the quaternion pair recovered from its representative.
#[derive(Clone, Debug)]
pub struct H4Class {
    pub class: ConjugacyClass,
    /// `(l, r)` with the representative equal to `x ↦ l x r*` (det +1) or
    /// `x ↦ l x* r` (det −1), up to a common sign.
    pub pair: (Quaternion, Quaternion),
    pub star: bool,
}

#[derive(Clone, Debug)]
pub struct H4Verdict {
    pub classes: Vec<H4Class>,
    pub traces: u128,
    pub supertraces: u128,
    pub star_all_plus_one: bool,
    pub lr_without_plus_one: usize,
    /// The `l₀ ≠ r₀` criterion agrees with the engine on every rotation class.
    pub criterion_agrees: bool,
}

impl H4Verdict {
    pub fn star_count(&self) -> usize {
        self.classes.iter().filter(|c| c.star).count()
    }

    pub fn lr_count(&self) -> usize {
        self.classes.len() - self.star_count()
    }

    pub fn holds(&self) -> bool {
        self.classes.len() == 34
            && self.traces == 20
            && self.supertraces == 20
            && self.star_count() == 9
            && self.star_all_plus_one
            && self.lr_count() == 25
            && self.lr_without_plus_one == 20
            && self.criterion_agrees
    }
}

/// Enumerates W(H4) with the generic engine and reads every class
/// representative back as a quaternion action.
pub fn h4_count_cross_check(budget: &GroupBudget) -> Result<H4Verdict> {
    let system = RootSystem::build_irreducible(Factor::H4)?;
    let group = Group::generate(&system, budget)?;
    h4_cross_check_group(&group)
}

/// As [`h4_count_cross_check`] for an already generated W(H4).
pub fn h4_cross_check_group(group: &Group) -> Result<H4Verdict> {
    let icosians = icosians();
    let count = count_brute_force(group);
    let mut classes = Vec::new();
    for class in crate::classes::conjugacy_classes(group) {
        let m = group.to_matrix(class.representative);
        let star = class.det.is_negative();
        let image_of_one = Quaternion::from_vector(&m.column(0));
        let pair = icosians
            .iter()
            .find_map(|l| {
                // M(1) = l r* for rotations and l r for the star type.
                let r = if star { &l.conj() * &image_of_one } else { &image_of_one.conj() * l };
                let candidate = if star { star_lr_action_matrix(l, &r) } else { lr_action_matrix(l, &r) };
                (candidate.ok()? == m).then(|| (l.clone(), r))
            })
            .ok_or_else(|| Error::InvalidParameter {
                family: "H4".into(),
                reason: format!("class {} is not an icosian action", class.representative),
            })?;
        classes.push(H4Class { class, pair, star });
    }
    let mut criterion_agrees = true;
    for c in classes.iter().filter(|c| !c.star) {
        let (l, r) = &c.pair;
        let (_, fixed) = lr_fixed_point_criterion(l, r)?;
        criterion_agrees &= fixed == c.class.has_plus_one && fixed == (l.q0 == r.q0);
    }
    Ok(H4Verdict {
        traces: count.traces,
        supertraces: count.supertraces,
        star_all_plus_one: classes.iter().filter(|c| c.star).all(|c| c.class.has_plus_one),
        lr_without_plus_one: classes.iter().filter(|c| !c.star && !c.class.has_plus_one).count(),
        criterion_agrees,
        classes,
    })
}
