//! The finite Coxeter group W(R), generated by breadth-first closure.
//!
//! Elements are stored as permutations of the root list, one byte per root,
//! in a single flat buffer. An element is determined by the images of the
//! simple roots, so those images alone are hashed and compared for
//! deduplication. Ids are assigned in discovery order (generators applied in
//! a fixed order, one BFS level at a time), which makes ids, and everything
//! derived from them, reproducible regardless of the worker count.

use std::hash::Hasher;
use std::sync::OnceLock;

use hashbrown::HashTable;
use rayon::prelude::*;
use rustc_hash::FxHasher;

use crate::arith::FieldElement;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::roots::{RootSystem, SimpleSystem};

/// Dense index of an element inside its [`Group`]. The identity is always 0.
pub type ElementId = u32;

/// Default ceiling on |W| for enumeration.
pub const DEFAULT_MAX_ORDER: u128 = 10_000_000;
/// Groups larger than this (W(E7), W(A9), …) need `allow_heavy`.
pub const HEAVY_ORDER: u128 = 1_000_000;

/// Limits on which groups may be enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupBudget {
    pub max_order: u128,
    pub allow_heavy: bool,
}

impl Default for GroupBudget {
    fn default() -> Self {
        GroupBudget { max_order: DEFAULT_MAX_ORDER, allow_heavy: false }
    }
}

impl GroupBudget {
    pub fn heavy() -> Self {
        GroupBudget { allow_heavy: true, ..Default::default() }
    }

    /// Rejects `order` if it is over budget or needs the heavy flag.
    pub fn check(&self, label: &str, order: Option<u128>) -> Result<()> {
        let order = order.unwrap_or(u128::MAX);
        if order > self.max_order {
            return Err(Error::BudgetExceeded { label: label.into(), order, budget: self.max_order });
        }
        if order > HEAVY_ORDER && !self.allow_heavy {
            return Err(Error::HeavyRequired { label: label.into(), order });
        }
        Ok(())
    }

    pub fn allows(&self, order: Option<u128>) -> bool {
        self.check("", order).is_ok()
    }
}

/// A borrowed view of one element.
#[derive(Clone, Copy)]
pub struct GroupElement<'a> {
    pub id: ElementId,
    group: &'a Group,
}

impl<'a> GroupElement<'a> {
    /// Image of each root index under this element.
    pub fn root_perm(&self) -> &'a [u8] {
        self.group.perm(self.id)
    }
}

impl std::fmt::Debug for GroupElement<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupElement({})", self.id)
    }
}

/// The Coxeter group generated by the simple reflections of a root system.
pub struct Group {
    system: RootSystem,
    simple: SimpleSystem,
    n_roots: usize,
    perms: Vec<u8>,
    index: HashTable<ElementId>,
    generators: Vec<ElementId>,
    /// `left[g * rank + j] = s_j ∘ g`
    left: Vec<ElementId>,
    /// `right[g * rank + j] = g ∘ s_j`
    right: Vec<ElementId>,
    lengths: Vec<u16>,
    minus_identity: Option<ElementId>,
    ambient: OnceLock<(Matrix, Vec<Vector>)>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group").field("system", &self.system.label()).field("order", &self.order()).finish()
    }
}

/// Context shared by the hashing helpers: which roots identify an element.
struct Keys<'a> {
    roots: &'a [usize],
    n_roots: usize,
}

impl Keys<'_> {
    fn hash(&self, perm: &[u8]) -> u64 {
        let mut h = FxHasher::default();
        for &k in self.roots {
            h.write_u8(perm[k]);
        }
        h.finish()
    }

    fn slot<'p>(&self, perms: &'p [u8], id: ElementId) -> &'p [u8] {
        let start = id as usize * self.n_roots;
        &perms[start..start + self.n_roots]
    }

    fn same(&self, a: &[u8], b: &[u8]) -> bool {
        self.roots.iter().all(|&k| a[k] == b[k])
    }

    fn find(&self, table: &HashTable<ElementId>, perms: &[u8], hash: u64, perm: &[u8]) -> Option<ElementId> {
        table.find(hash, |&id| self.same(self.slot(perms, id), perm)).copied()
    }
}

impl Group {
    /// Generates W(R) by breadth-first closure under the simple reflections.
    pub fn generate(system: &RootSystem, budget: &GroupBudget) -> Result<Group> {
        let label = system.label();
        if system.is_matrix_free() {
            return Err(Error::MatrixFree { label });
        }
        if !system.blocks().is_empty() {
            budget.check(&label, system.spec().group_order())?;
        }
        if system.len() > 256 {
            return Err(Error::TooManyRoots { label, roots: system.len() });
        }
        let simple = system.simple_system();
        let n = system.len();
        let rank = simple.rank();
        let gens: Vec<Vec<u8>> =
            simple.simple.iter().map(|&i| to_bytes(&system.reflection_permutation(i))).collect();
        let keys = Keys { roots: &simple.simple, n_roots: n };

        let mut perms: Vec<u8> = (0..n).map(|i| i as u8).collect();
        let mut index = HashTable::new();
        index.insert_unique(keys.hash(&perms), 0, |&id| keys.hash(keys.slot(&perms, id)));
        let mut left: Vec<ElementId> = Vec::new();
        let mut lengths: Vec<u16> = vec![0];

        let (mut lo, mut hi) = (0usize, 1usize);
        let mut level: u16 = 0;
        while lo < hi {
            // Products for the whole level are computed in parallel against
            // the table as it stood before the level; insertion is sequential
            // in (element, generator) order.
            let frontier: Vec<(Vec<u8>, Vec<(u64, Option<ElementId>)>)> = (lo..hi)
                .into_par_iter()
                .with_min_len(256)
                .map(|g| {
                    let src = keys.slot(&perms, g as ElementId);
                    let mut buf = Vec::with_capacity(rank * n);
                    let mut found = Vec::with_capacity(rank);
                    for s in &gens {
                        let start = buf.len();
                        buf.extend(src.iter().map(|&x| s[x as usize]));
                        let prod = &buf[start..];
                        let h = keys.hash(prod);
                        found.push((h, keys.find(&index, &perms, h, prod)));
                    }
                    (buf, found)
                })
                .collect();
            for (buf, found) in frontier {
                for (j, (h, known)) in found.into_iter().enumerate() {
                    let prod = &buf[j * n..(j + 1) * n];
                    let id = match known.or_else(|| keys.find(&index, &perms, h, prod)) {
                        Some(id) => id,
                        None => {
                            let id = lengths.len() as ElementId;
                            if lengths.len() as u128 >= budget.max_order {
                                return Err(Error::BudgetExceeded {
                                    label: system.label(),
                                    order: lengths.len() as u128 + 1,
                                    budget: budget.max_order,
                                });
                            }
                            perms.extend_from_slice(prod);
                            index.insert_unique(h, id, |&e| keys.hash(keys.slot(&perms, e)));
                            lengths.push(level + 1);
                            id
                        }
                    };
                    left.push(id);
                }
            }
            lo = hi;
            hi = lengths.len();
            level += 1;
        }
        Group::finish(system.clone(), simple, perms, index, Some(left), Some(lengths))
    }

    /// Rebuilds a group from a stored list of root permutations (the cache
    /// path). Fails if the list is not closed under the simple reflections.
    pub fn from_permutations(system: &RootSystem, perms: Vec<u8>) -> Result<Group> {
        let n = system.len();
        let bad = |reason: &str| Error::CacheFormat { path: Default::default(), reason: reason.into() };
        if n == 0 {
            if !perms.is_empty() {
                return Err(bad("empty root system with stored permutations"));
            }
        } else if perms.len() % n != 0 || perms.is_empty() {
            return Err(bad("permutation buffer length is not a multiple of the root count"));
        }
        if perms[..n].iter().enumerate().any(|(i, &x)| x as usize != i) {
            return Err(bad("first element is not the identity"));
        }
        let simple = system.simple_system();
        let keys = Keys { roots: &simple.simple, n_roots: n };
        let order = if n == 0 { 1 } else { perms.len() / n };
        let mut index = HashTable::new();
        for id in 0..order as ElementId {
            let p = keys.slot(&perms, id);
            let h = keys.hash(p);
            if keys.find(&index, &perms, h, p).is_some() {
                return Err(bad("duplicate element"));
            }
            index.insert_unique(h, id, |&e| keys.hash(keys.slot(&perms, e)));
        }
        Group::finish(system.clone(), simple, perms, index, None, None)
    }

    fn finish(
        system: RootSystem,
        simple: SimpleSystem,
        perms: Vec<u8>,
        index: HashTable<ElementId>,
        left: Option<Vec<ElementId>>,
        lengths: Option<Vec<u16>>,
    ) -> Result<Group> {
        let n = system.len();
        let gens: Vec<Vec<u8>> =
            simple.simple.iter().map(|&i| to_bytes(&system.reflection_permutation(i))).collect();
        let mut group = Group {
            n_roots: n,
            system,
            simple,
            perms,
            index,
            generators: Vec::new(),
            left: Vec::new(),
            right: Vec::new(),
            lengths: Vec::new(),
            minus_identity: None,
            ambient: OnceLock::new(),
        };
        group.right = group.mult_table(&gens, false)?;
        group.left = match left {
            Some(l) => l,
            None => group.mult_table(&gens, true)?,
        };
        group.lengths = match lengths {
            Some(l) => l,
            None => group.lengths_from_table(),
        };
        let rank = group.rank();
        group.generators = (0..rank).map(|j| group.left[j]).collect();
        group.minus_identity = group.find_minus_identity();
        Ok(group)
    }

    /// Looks up `s_j ∘ g` (left) or `g ∘ s_j` for every element and generator.
    fn mult_table(&self, gens: &[Vec<u8>], left: bool) -> Result<Vec<ElementId>> {
        let rank = gens.len();
        let mut table = vec![0 as ElementId; self.order() * rank];
        if rank == 0 {
            return Ok(table);
        }
        let missing = table
            .par_chunks_mut(rank)
            .enumerate()
            .map(|(g, row)| {
                let p = self.perm(g as ElementId);
                let mut buf = vec![0u8; self.n_roots];
                for (j, s) in gens.iter().enumerate() {
                    for i in 0..self.n_roots {
                        buf[i] = if left { s[p[i] as usize] } else { p[s[i] as usize] };
                    }
                    match self.lookup(&buf) {
                        Some(id) => row[j] = id,
                        None => return true,
                    }
                }
                false
            })
            .reduce(|| false, |a, b| a || b);
        if missing {
            return Err(Error::CacheFormat {
                path: Default::default(),
                reason: "element set is not closed under the generators".into(),
            });
        }
        Ok(table)
    }

    fn lengths_from_table(&self) -> Vec<u16> {
        let rank = self.rank();
        let mut lengths = vec![u16::MAX; self.order()];
        lengths[0] = 0;
        let mut queue = std::collections::VecDeque::from([0 as ElementId]);
        while let Some(g) = queue.pop_front() {
            for j in 0..rank {
                let h = self.left[g as usize * rank + j];
                if lengths[h as usize] == u16::MAX {
                    lengths[h as usize] = lengths[g as usize] + 1;
                    queue.push_back(h);
                }
            }
        }
        lengths
    }

    fn find_minus_identity(&self) -> Option<ElementId> {
        if self.system.a0_count() > 0 || self.n_roots == 0 {
            return None;
        }
        let neg = to_bytes(&self.system.negation_permutation());
        self.lookup(&neg)
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn simple_system(&self) -> &SimpleSystem {
        &self.simple
    }

    pub fn order(&self) -> usize {
        self.lengths.len().max(if self.n_roots == 0 { 1 } else { self.perms.len() / self.n_roots })
    }

    /// Number of simple reflections.
    pub fn rank(&self) -> usize {
        self.simple.rank()
    }

    /// Dimension of the space V the group acts on: the span of the roots
    /// plus one fixed line per A0 factor.
    pub fn space_dim(&self) -> usize {
        self.rank() + self.system.a0_count()
    }

    pub fn root_count(&self) -> usize {
        self.n_roots
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    pub fn element(&self, id: ElementId) -> GroupElement<'_> {
        GroupElement { id, group: self }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement<'_>> + '_ {
        (0..self.order() as ElementId).map(move |id| self.element(id))
    }

    /// Ids of the simple reflections, in simple-root order.
    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn perm(&self, id: ElementId) -> &[u8] {
        let start = id as usize * self.n_roots;
        &self.perms[start..start + self.n_roots]
    }

    /// Raw permutation buffer, `order × root_count` bytes.
    pub fn permutation_bytes(&self) -> &[u8] {
        &self.perms
    }

    pub fn lookup(&self, perm: &[u8]) -> Option<ElementId> {
        if self.n_roots == 0 {
            return Some(0);
        }
        let keys = Keys { roots: &self.simple.simple, n_roots: self.n_roots };
        keys.find(&self.index, &self.perms, keys.hash(perm), perm)
    }

    /// `g ∘ h`: apply `h` first.
    pub fn compose(&self, g: ElementId, h: ElementId) -> ElementId {
        let (pg, ph) = (self.perm(g), self.perm(h));
        let prod: Vec<u8> = ph.iter().map(|&x| pg[x as usize]).collect();
        self.lookup(&prod).expect("group is closed under composition")
    }

    pub fn inverse(&self, g: ElementId) -> ElementId {
        let p = self.perm(g);
        let mut inv = vec![0u8; p.len()];
        for (i, &x) in p.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        self.lookup(&inv).expect("group is closed under inversion")
    }

    /// `s_j ∘ g`.
    pub fn left_mul(&self, j: usize, g: ElementId) -> ElementId {
        self.left[g as usize * self.rank() + j]
    }

    /// `g ∘ s_j`.
    pub fn right_mul(&self, g: ElementId, j: usize) -> ElementId {
        self.right[g as usize * self.rank() + j]
    }

    /// `s_j g s_j`.
    pub fn conjugate_by_generator(&self, g: ElementId, j: usize) -> ElementId {
        self.left_mul(j, self.right_mul(g, j))
    }

    /// Reflection through root `i`.
    pub fn reflection(&self, root: usize) -> ElementId {
        self.lookup(&to_bytes(&self.system.reflection_permutation(root)))
            .expect("every reflection lies in W(R)")
    }

    /// Coxeter length (BFS depth) of `g`.
    pub fn length(&self, g: ElementId) -> u16 {
        self.lengths[g as usize]
    }

    /// `det(g) = (−1)^length(g)`.
    pub fn det_sign(&self, g: ElementId) -> i8 {
        if self.length(g) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn minus_identity(&self) -> Option<ElementId> {
        self.minus_identity
    }

    /// True iff the map sending every root to its negative (−1 on all of V)
    /// is an element. Always false when an A0 factor is present, since the
    /// trivial group fixes that line.
    pub fn contains_minus_identity(&self) -> bool {
        self.minus_identity.is_some()
    }

    /// Matrix of `g` on V in the simple-root basis, extended by the identity
    /// on the A0 lines. This is the matrix whose eigenvalues decide the trace
    /// counts; for type A it lives on the n-dimensional sum-zero subspace.
    pub fn span_matrix(&self, g: ElementId) -> Matrix {
        let rank = self.rank();
        let dim = self.space_dim();
        let p = self.perm(g);
        let mut m = Matrix::identity(dim);
        for (j, &s) in self.simple.simple.iter().enumerate() {
            let image = &self.simple.coords[p[s] as usize];
            for (i, c) in image.iter().enumerate().take(rank) {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    /// Orthogonal matrix of `g` in ambient coordinates: acts through the root
    /// images on span(R) and as the identity on its orthogonal complement.
    pub fn to_matrix(&self, g: ElementId) -> Matrix {
        let (basis_inv, complement) = self.ambient.get_or_init(|| {
            let complement = Matrix::from_rows(
                self.simple.simple.iter().map(|&i| self.system.root(i).0.clone()).collect(),
            );
            let complement = if self.rank() == 0 {
                (0..self.system.dimension()).map(|i| Vector::unit(self.system.dimension(), i)).collect()
            } else {
                complement.kernel()
            };
            let mut cols: Vec<Vector> = self.simple.simple.iter().map(|&i| self.system.root(i).clone()).collect();
            cols.extend(complement.iter().cloned());
            let inv = Matrix::from_columns(&cols).inverse().expect("basis of the ambient space");
            (inv, complement)
        });
        let p = self.perm(g);
        let mut cols: Vec<Vector> =
            self.simple.simple.iter().map(|&i| self.system.root(p[i] as usize).clone()).collect();
        cols.extend(complement.iter().cloned());
        &Matrix::from_columns(&cols) * basis_inv
    }

    /// Exact test of `det(λI − M) = 0` on V, for `λ = ±1`.
    pub fn has_eigenvalue(&self, g: ElementId, lambda: i64) -> bool {
        eigenvalue_test(&self.span_matrix(g), lambda)
    }
}

/// `det(λI − M) = 0`.
pub fn eigenvalue_test(m: &Matrix, lambda: i64) -> bool {
    let shifted = Matrix::identity(m.rows()).scale(&FieldElement::from_integer(lambda)).sub(m);
    shifted.det().is_zero()
}

fn to_bytes(p: &[usize]) -> Vec<u8> {
    p.iter().map(|&x| x as u8).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Poly;
    use crate::roots::reflection_matrix;

    fn group(s: &str) -> Group {
        let r = RootSystem::from_spec(&s.parse().unwrap()).unwrap();
        Group::generate(&r, &GroupBudget::default()).unwrap()
    }

    fn factorial(n: u128) -> u128 {
        (1..=n).product()
    }

    #[test]
    fn orders_match_the_classical_formulas() {
        for n in 1..=5u128 {
            assert_eq!(group(&format!("A{}", n - 1 + 1)).order() as u128, factorial(n + 1));
        }
        for n in 2..=5u128 {
            assert_eq!(group(&format!("B{n}")).order() as u128, (1 << n) * factorial(n));
        }
        for n in 4..=6u128 {
            assert_eq!(group(&format!("D{n}")).order() as u128, (1 << (n - 1)) * factorial(n));
        }
        for (s, order) in [("G2", 12), ("F4", 1152), ("H3", 120), ("E6", 51840), ("I2(5)", 10), ("A0", 1), ("A0+A0", 1)] {
            assert_eq!(group(s).order(), order, "{s}");
        }
    }

    #[test]
    fn h4_order() {
        assert_eq!(group("H4").order(), 14400);
    }

    #[test]
    fn budget_and_matrix_free_errors() {
        let e8 = RootSystem::from_spec(&"E8".parse().unwrap()).unwrap();
        assert!(matches!(Group::generate(&e8, &GroupBudget::default()), Err(Error::BudgetExceeded { .. })));
        let e7 = RootSystem::from_spec(&"E7".parse().unwrap()).unwrap();
        assert!(matches!(Group::generate(&e7, &GroupBudget::default()), Err(Error::HeavyRequired { .. })));
        let i7 = RootSystem::from_spec(&"I2(7)".parse().unwrap()).unwrap();
        assert!(matches!(Group::generate(&i7, &GroupBudget::default()), Err(Error::MatrixFree { .. })));
        let tight = GroupBudget { max_order: 100, allow_heavy: false };
        let h3 = RootSystem::from_spec(&"H3".parse().unwrap()).unwrap();
        assert!(matches!(Group::generate(&h3, &tight), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn compose_and_inverse() {
        let g = group("B3");
        for id in [0, 5, 17, 40] {
            assert_eq!(g.compose(id, g.identity()), id);
            assert_eq!(g.compose(id, g.inverse(id)), g.identity());
        }
        for root in 0..g.root_count() {
            let r = g.reflection(root);
            assert_eq!(g.compose(r, r), g.identity());
            assert_eq!(g.det_sign(r), -1);
        }
    }

    #[test]
    fn composition_matches_matrix_product() {
        let g = group("H3");
        for (a, b) in [(3, 7), (11, 50), (99, 119)] {
            let lhs = g.to_matrix(g.compose(a, b));
            let rhs = &g.to_matrix(a) * &g.to_matrix(b);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn matrices_are_orthogonal_and_consistent() {
        let g = group("A3");
        assert!(g.to_matrix(0).is_identity());
        for root in 0..g.root_count() {
            assert_eq!(g.to_matrix(g.reflection(root)), reflection_matrix(g.system().root(root)).unwrap());
        }
        for id in 0..g.order() as ElementId {
            let m = g.to_matrix(id);
            assert_eq!(g.to_matrix(g.inverse(id)), m.transpose());
            assert_eq!(g.span_matrix(id).det(), FieldElement::from_integer(g.det_sign(id) as i64));
        }
    }

    #[test]
    fn full_cycle_has_geometric_series_char_poly() {
        for n in 2..=6usize {
            let g = group(&format!("A{}", n - 1));
            // e_1 → e_2 → … → e_n → e_1 on root indices.
            let sys = g.system();
            let perm: Vec<u8> = (0..sys.len())
                .map(|i| {
                    let v = sys.root(i);
                    let mut w = Vector::zeros(n);
                    for c in 0..n {
                        w.0[(c + 1) % n] = v[c].clone();
                    }
                    sys.index_of(&w).unwrap() as u8
                })
                .collect();
            let cycle = g.lookup(&perm).unwrap();
            let ones = vec![1i64; n];
            assert_eq!(g.span_matrix(cycle).char_poly(), Poly::from_integers(&ones), "n = {n}");
            assert!(!g.has_eigenvalue(cycle, 1));
        }
    }

    #[test]
    fn minus_identity_detection() {
        assert!(group("A1").contains_minus_identity());
        assert!(!group("A2").contains_minus_identity());
        assert!(group("H3").contains_minus_identity());
        assert!(!group("E6").contains_minus_identity());
        assert!(group("D4").contains_minus_identity());
        assert!(!group("D5").contains_minus_identity());
        assert!(!group("A0").contains_minus_identity());
        for (a, b) in [("A1", "B2"), ("A1", "A2"), ("G2", "A0"), ("I2(5)", "A1")] {
            let sum = group(&format!("{a}+{b}"));
            assert_eq!(
                sum.contains_minus_identity(),
                group(a).contains_minus_identity() && group(b).contains_minus_identity(),
                "{a}+{b}"
            );
        }
    }

    #[test]
    fn longest_element_is_minus_identity_when_present() {
        let g = group("B3");
        let m = g.minus_identity().unwrap();
        assert_eq!(g.length(m), 9);
        assert_eq!(g.to_matrix(m), -&Matrix::identity(3));
    }

    #[test]
    fn rebuild_from_permutations() {
        let g = group("G2");
        let rebuilt = Group::from_permutations(g.system(), g.permutation_bytes().to_vec()).unwrap();
        assert_eq!(rebuilt.order(), 12);
        for id in 0..12 {
            assert_eq!(rebuilt.length(id), g.length(id));
            assert_eq!(rebuilt.left_mul(1, id), g.left_mul(1, id));
        }
        let mut broken = g.permutation_bytes().to_vec();
        broken.truncate(broken.len() - g.root_count());
        assert!(Group::from_permutations(g.system(), broken).is_err());
    }
}
