//! Conjugacy classes, eigenvalue flags and the trace / supertrace counts.
//!
//! `T(R)` is the number of conjugacy classes of W(R) without eigenvalue +1 and
//! `S(R)` the number without eigenvalue −1. Both are multiplicative over
//! direct sums, so reducible systems are counted factor by factor.

use std::fmt;

use rayon::prelude::*;

use crate::arith::FieldElement;
use crate::combinatorics::{closed_form_contains_minus_identity, closed_form_count};
use crate::error::{Error, Result};
use crate::group::{ElementId, Group, GroupBudget};
use crate::linalg::Poly;
use crate::roots::{Factor, RootSystem, SystemSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Element with the smallest id in the class.
    pub representative: ElementId,
    pub size: usize,
    /// Monic `det(tI − M)` on V.
    pub char_poly: Poly,
    pub has_plus_one: bool,
    pub has_minus_one: bool,
    pub det: FieldElement,
}

/// Class index of every element, and the class sizes, ordered by smallest
/// member id.
pub fn class_labels(g: &Group) -> (Vec<u32>, Vec<usize>) {
    let order = g.order();
    let rank = g.rank();
    let mut label = vec![u32::MAX; order];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for seed in 0..order {
        if label[seed] != u32::MAX {
            continue;
        }
        let class = sizes.len() as u32;
        label[seed] = class;
        let mut size = 1;
        stack.push(seed as ElementId);
        // Orbit under conjugation by the simple reflections, which generate W.
        while let Some(x) = stack.pop() {
            for j in 0..rank {
                let y = g.conjugate_by_generator(x, j);
                if label[y as usize] == u32::MAX {
                    label[y as usize] = class;
                    size += 1;
                    stack.push(y);
                }
            }
        }
        sizes.push(size);
    }
    (label, sizes)
}

/// Conjugacy classes of `g` with eigen-flags computed from each representative.
pub fn conjugacy_classes(g: &Group) -> Vec<ConjugacyClass> {
    let (labels, sizes) = class_labels(g);
    let mut reps = vec![ElementId::MAX; sizes.len()];
    for (id, &c) in labels.iter().enumerate() {
        if reps[c as usize] == ElementId::MAX {
            reps[c as usize] = id as ElementId;
        }
    }
    reps.into_par_iter()
        .zip(sizes.into_par_iter())
        .map(|(rep, size)| {
            let m = g.span_matrix(rep);
            ConjugacyClass {
                representative: rep,
                size,
                char_poly: m.char_poly(),
                has_plus_one: g.has_eigenvalue(rep, 1),
                has_minus_one: g.has_eigenvalue(rep, -1),
                det: m.det(),
            }
        })
        .collect()
}

/// Recomputes the eigen-flags of every element and checks they are constant
/// on each class. Returns the first offending element.
pub fn check_class_invariance(g: &Group, classes: &[ConjugacyClass]) -> std::result::Result<(), ElementId> {
    let (labels, _) = class_labels(g);
    let bad = (0..g.order() as ElementId).into_par_iter().find_first(|&id| {
        let c = &classes[labels[id as usize] as usize];
        g.has_eigenvalue(id, 1) != c.has_plus_one || g.has_eigenvalue(id, -1) != c.has_minus_one
    });
    match bad {
        Some(id) => Err(id),
        None => Ok(()),
    }
}

/// Exact `det(λI − M) = 0` for `λ = ±1`.
pub fn has_eigenvalue(g: &Group, element: ElementId, lambda: i64) -> bool {
    g.has_eigenvalue(element, lambda)
}

/// How a [`TraceCount`] was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Method {
    BruteForce,
    ClosedForm,
    /// Product over factors counted by different methods.
    Composed,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::BruteForce => "brute_force",
            Method::ClosedForm => "closed_form",
            Method::Composed => "composed",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `T(R)` and `S(R)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct TraceCount {
    pub traces: u128,
    pub supertraces: u128,
    pub method: Method,
}

impl TraceCount {
    pub fn new(traces: u128, supertraces: u128, method: Method) -> Self {
        TraceCount { traces, supertraces, method }
    }

    pub fn pair(&self) -> (u128, u128) {
        (self.traces, self.supertraces)
    }

    /// Count of `R1 + R2` from the counts of `R1` and `R2`.
    pub fn compose(&self, other: &TraceCount) -> Result<TraceCount> {
        let overflow = || Error::Overflow("trace count product".into());
        let method = if self.method == other.method { self.method } else { Method::Composed };
        Ok(TraceCount {
            traces: self.traces.checked_mul(other.traces).ok_or_else(overflow)?,
            supertraces: self.supertraces.checked_mul(other.supertraces).ok_or_else(overflow)?,
            method,
        })
    }
}

/// Counts classes without +1 and without −1 by enumerating all classes.
pub fn count_brute_force(g: &Group) -> TraceCount {
    let classes = conjugacy_classes(g);
    TraceCount::new(
        classes.iter().filter(|c| !c.has_plus_one).count() as u128,
        classes.iter().filter(|c| !c.has_minus_one).count() as u128,
        Method::BruteForce,
    )
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Strategy {
    /// Closed forms first, enumeration as a fallback.
    #[default]
    Auto,
    Brute,
    Closed,
}

/// Brute-force count of one irreducible factor.
pub fn brute_force_factor(factor: Factor, budget: &GroupBudget) -> Result<TraceCount> {
    let system = RootSystem::build_irreducible(factor)?;
    let group = Group::generate(&system, budget)?;
    Ok(count_brute_force(&group))
}

/// `(T, S)` of a possibly reducible system, composed multiplicatively over
/// its irreducible factors. A0 contributes `(0, 1)`.
pub fn count(spec: &SystemSpec, strategy: Strategy, budget: &GroupBudget) -> Result<TraceCount> {
    count_with(spec, strategy, |f| brute_force_factor(f, budget))
}

/// As [`count`], with a caller-supplied brute-force path (e.g. one backed by a
/// group cache).
pub fn count_with<F>(spec: &SystemSpec, strategy: Strategy, mut brute: F) -> Result<TraceCount>
where
    F: FnMut(Factor) -> Result<TraceCount>,
{
    let mut total: Option<TraceCount> = None;
    for &factor in &spec.factors {
        let c = match strategy {
            Strategy::Closed => closed_form_count(factor)?,
            Strategy::Brute => brute(factor)?,
            Strategy::Auto => match closed_form_count(factor) {
                Ok(c) => c,
                Err(_) => brute(factor)?,
            },
        };
        total = Some(match total {
            None => c,
            Some(t) => t.compose(&c)?,
        });
    }
    total.ok_or_else(|| Error::Parse { input: String::new(), reason: "empty spec".into() })
}

/// Where a −I verdict for one factor came from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MinusIdentitySource {
    /// Looked up by enumerating the group.
    GroupEngine,
    /// Taken from the per-type classification.
    Classification,
}

#[derive(Clone, Debug)]
pub struct TheoremVerdict {
    pub spec: SystemSpec,
    pub count: TraceCount,
    pub factors: Vec<(Factor, bool, MinusIdentitySource)>,
    pub contains_minus_identity: bool,
    pub supertraces_positive: bool,
    pub traces_at_most_supertraces: bool,
    pub equality_iff_minus_identity: bool,
}

impl TheoremVerdict {
    pub fn holds(&self) -> bool {
        self.supertraces_positive && self.traces_at_most_supertraces && self.equality_iff_minus_identity
    }
}

/// Checks `S > 0`, `T ≤ S` and `T = S ⇔ −I ∈ W(R)`. −I membership is decided
/// by the group engine for every factor whose group fits `budget`, by the
/// classification otherwise.
pub fn verify_inequality_theorem(spec: &SystemSpec, budget: &GroupBudget) -> Result<TheoremVerdict> {
    verify_inequality_theorem_with(spec, |factor| {
        if factor.has_matrix_model() && budget.allows(factor.group_order()) {
            let group = Group::generate(&RootSystem::build_irreducible(factor)?, budget)?;
            Ok((group.contains_minus_identity(), MinusIdentitySource::GroupEngine))
        } else {
            Ok((closed_form_contains_minus_identity(factor), MinusIdentitySource::Classification))
        }
    })
}

/// As [`verify_inequality_theorem`] with a caller-supplied −I oracle.
pub fn verify_inequality_theorem_with<F>(spec: &SystemSpec, mut minus_identity: F) -> Result<TheoremVerdict>
where
    F: FnMut(Factor) -> Result<(bool, MinusIdentitySource)>,
{
    let count = count(spec, Strategy::Auto, &GroupBudget::default())?;
    let factors = spec
        .factors
        .iter()
        .map(|&f| minus_identity(f).map(|(has, src)| (f, has, src)))
        .collect::<Result<Vec<_>>>()?;
    let contains = factors.iter().all(|&(_, has, _)| has);
    Ok(TheoremVerdict {
        spec: spec.clone(),
        count,
        contains_minus_identity: contains,
        supertraces_positive: count.supertraces >= 1,
        traces_at_most_supertraces: count.traces <= count.supertraces,
        equality_iff_minus_identity: (count.traces == count.supertraces) == contains,
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> Group {
        let r = RootSystem::from_spec(&s.parse().unwrap()).unwrap();
        Group::generate(&r, &GroupBudget::default()).unwrap()
    }

    #[test]
    fn a1_classes() {
        let g = group("A1");
        let classes = conjugacy_classes(&g);
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].size, 1);
        assert!(classes[0].has_plus_one && !classes[0].has_minus_one);
        assert!(!classes[1].has_plus_one && classes[1].has_minus_one);
    }

    #[test]
    fn class_totals() {
        for (s, n_classes) in [("H3", 10), ("F4", 25), ("E6", 25), ("G2", 6), ("B3", 10), ("D4", 13), ("A4", 7)] {
            let g = group(s);
            let classes = conjugacy_classes(&g);
            assert_eq!(classes.len(), n_classes, "{s}");
            assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), g.order());
            assert!(classes.iter().all(|c| g.order() % c.size == 0));
            assert!(classes.windows(2).all(|w| w[0].representative < w[1].representative));
        }
    }

    #[test]
    fn char_poly_agrees_with_flags() {
        for s in ["H3", "F4", "B4", "A3+A0", "I2(5)"] {
            let g = group(s);
            for c in conjugacy_classes(&g) {
                assert_eq!(c.char_poly.eval(&FieldElement::one()).is_zero(), c.has_plus_one, "{s}");
                assert_eq!(c.char_poly.eval(&FieldElement::from_integer(-1)).is_zero(), c.has_minus_one, "{s}");
                assert_eq!(c.det, FieldElement::from_integer(g.det_sign(c.representative) as i64));
            }
        }
    }

    #[test]
    fn flags_are_class_invariants() {
        for s in ["H3", "D4", "G2+A1"] {
            let g = group(s);
            assert_eq!(check_class_invariance(&g, &conjugacy_classes(&g)), Ok(()), "{s}");
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let g = group("B3");
        assert!(has_eigenvalue(&g, g.identity(), 1));
        let m = g.minus_identity().unwrap();
        assert!(!has_eigenvalue(&g, m, 1));
        assert!(has_eigenvalue(&g, m, -1));
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(count_brute_force(&group("G2")).pair(), (3, 3));
        assert_eq!(count_brute_force(&group("F4")).pair(), (9, 9));
        assert_eq!(count_brute_force(&group("H3")).pair(), (4, 4));
        assert_eq!(count_brute_force(&group("A0")).pair(), (0, 1));
        assert_eq!(count_brute_force(&group("A2")).pair(), (1, 2));
    }

    #[test]
    fn e6_brute_force() {
        assert_eq!(count_brute_force(&group("E6")).pair(), (5, 9));
    }

    #[test]
    fn composed_counts() {
        let c = |s: &str| count(&s.parse().unwrap(), Strategy::Auto, &GroupBudget::default()).unwrap();
        assert_eq!(c("A0").pair(), (0, 1));
        assert_eq!(c("A0+A0+A0").pair(), (0, 1));
        assert_eq!(c("E7+A1").pair(), (12, 12));
        assert_eq!(c("B4+D5+I2(7)+A0").pair(), (0, 80));
        assert_eq!(c("E7+A1").method, Method::ClosedForm);
        let brute = count(&"H3".parse().unwrap(), Strategy::Brute, &GroupBudget::default()).unwrap();
        assert_eq!((brute.pair(), brute.method), ((4, 4), Method::BruteForce));
        let err = count(&"I2(7)".parse().unwrap(), Strategy::Brute, &GroupBudget::default());
        assert!(matches!(err, Err(Error::MatrixFree { .. })));
        let mixed = TraceCount::new(2, 3, Method::BruteForce).compose(&TraceCount::new(1, 1, Method::ClosedForm)).unwrap();
        assert_eq!(mixed.method, Method::Composed);
    }

    #[test]
    fn inequality_theorem_examples() {
        let b = GroupBudget::default();
        for s in ["D4", "D5", "A2", "E6+A1", "H3+B2", "A0+A1"] {
            let v = verify_inequality_theorem(&s.parse().unwrap(), &b).unwrap();
            assert!(v.holds(), "{s}");
        }
        let d4 = verify_inequality_theorem(&"D4".parse().unwrap(), &b).unwrap();
        assert!(d4.contains_minus_identity && d4.count.traces == d4.count.supertraces);
        assert_eq!(d4.factors[0].2, MinusIdentitySource::GroupEngine);
        let a2 = verify_inequality_theorem(&"A2".parse().unwrap(), &b).unwrap();
        assert_eq!(a2.count.pair(), (1, 2));
        assert!(!a2.contains_minus_identity);
        let e8 = verify_inequality_theorem(&"E8".parse().unwrap(), &b).unwrap();
        assert_eq!(e8.factors[0].2, MinusIdentitySource::Classification);
    }
}
