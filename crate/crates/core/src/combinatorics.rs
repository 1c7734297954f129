//! Closed-form trace and supertrace counts for every irreducible type.
//!
//! The classical families reduce to partition counting: signed cycle types for
//! B/C/D, cycle types for A, rotation/reflection classes for I2(n). The
//! exceptional types carry their class counts as fixed values. Partition
//! functions are computed with exact integer power series.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::classes::{Method, TraceCount};
use crate::error::{Error, Result};
use crate::roots::Factor;

/// A partition of `n`: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts `parts` into decreasing order; `None` if a part is zero.
    pub fn from_parts(mut parts: Vec<usize>) -> Option<Partition> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of summands.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// All partitions of `n`, largest first part first. `n = 0` yields the empty
/// partition once.
pub fn partitions(n: usize) -> Partitions {
    Partitions { next: Some(if n == 0 { Vec::new() } else { vec![n] }) }
}

pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Successor in reverse lexicographic order: drop trailing ones, lower
        // the last part > 1 by one and refill greedily.
        let mut succ = current.clone();
        let mut ones = 0;
        while succ.last() == Some(&1) {
            succ.pop();
            ones += 1;
        }
        if let Some(last) = succ.pop() {
            let part = last - 1;
            let mut remaining = ones + 1 + part;
            while remaining > 0 {
                let take = part.min(remaining);
                succ.push(take);
                remaining -= take;
            }
            self.next = Some(succ);
        }
        Some(Partition { parts: current })
    }
}

/// Truncated power series with big-integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Series(Vec<BigInt>);

impl Series {
    fn constant(c: i64, degree: usize) -> Series {
        let mut v = vec![BigInt::zero(); degree + 1];
        v[0] = BigInt::from(c);
        Series(v)
    }

    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    /// `self *= (1 + sign·x^k)`.
    fn mul_binomial(&mut self, k: usize, sign: i8) {
        for j in (k..=self.degree()).rev() {
            let t = self.0[j - k].clone();
            if sign > 0 {
                self.0[j] += t;
            } else {
                self.0[j] -= t;
            }
        }
    }

    /// `self /= (1 + sign·x^k)`.
    fn div_binomial(&mut self, k: usize, sign: i8) {
        for j in k..=self.degree() {
            let t = self.0[j - k].clone();
            if sign > 0 {
                self.0[j] -= t;
            } else {
                self.0[j] += t;
            }
        }
    }

    fn neg(mut self) -> Series {
        for c in &mut self.0 {
            *c = -std::mem::take(c);
        }
        self
    }
}

fn to_u128(x: &BigInt, what: &str) -> Result<u128> {
    x.to_u128().ok_or_else(|| Error::Overflow(what.to_string()))
}

/// Coefficients of `∏ 1/(1 − x^k)` over parts `k ≤ n` with `keep(k)`.
fn restricted_partition_series(n: usize, keep: impl Fn(usize) -> bool) -> Series {
    let mut s = Series::constant(1, n);
    for k in (1..=n).filter(|&k| keep(k)) {
        s.div_binomial(k, -1);
    }
    s
}

/// Coefficients of `∏ (1 + x^k)` over parts `k ≤ n` with `keep(k)`.
fn distinct_partition_series(n: usize, keep: impl Fn(usize) -> bool) -> Series {
    let mut s = Series::constant(1, n);
    for k in (1..=n).filter(|&k| keep(k)) {
        s.mul_binomial(k, 1);
    }
    s
}

/// `p(n)`, with `p(0) = 1`.
pub fn partition_count(n: usize) -> Result<u128> {
    to_u128(&restricted_partition_series(n, |_| true).0[n], "partition count")
}

/// Partitions of `n` into odd parts.
pub fn partitions_odd_parts(n: usize) -> Result<u128> {
    to_u128(&restricted_partition_series(n, |k| k % 2 == 1).0[n], "odd-part partition count")
}

/// Partitions of `n` into distinct parts.
pub fn partitions_distinct_parts(n: usize) -> Result<u128> {
    to_u128(&distinct_partition_series(n, |_| true).0[n], "distinct-part partition count")
}

/// `R(n)`: partitions of `n` into distinct odd parts.
pub fn distinct_odd_partitions(n: usize) -> Result<u128> {
    to_u128(&distinct_partition_series(n, |k| k % 2 == 1).0[n], "distinct odd partition count")
}

/// `a[m][k]`: partitions of `k` into exactly `m` parts, `0 ≤ m, k ≤ n`. These
/// are the coefficients of `F(t, x) = Σ a_{mk} tᵐ xᵏ = ∏ 1/(1 − t xʲ)`.
fn parts_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut a = vec![vec![BigInt::zero(); n + 1]; n + 1];
    a[0][0] = BigInt::one();
    for m in 1..=n {
        for k in m..=n {
            // Either a part equals 1 (drop it) or every part is ≥ 2 (lower all by one).
            a[m][k] = &a[m - 1][k - 1] + &a[m][k - m];
        }
    }
    a
}

/// `(E(k), O(k))` for `k = 0..=n`: partitions with an even / odd number of
/// summands.
fn even_odd_series(n: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let a = parts_table(n);
    let mut even = vec![BigInt::zero(); n + 1];
    let mut odd = vec![BigInt::zero(); n + 1];
    for (m, row) in a.iter().enumerate() {
        let target = if m % 2 == 0 { &mut even } else { &mut odd };
        for (k, c) in row.iter().enumerate() {
            target[k] += c;
        }
    }
    (even, odd)
}

/// `E(n)`: partitions of `n` with an even number of summands.
pub fn partitions_even_count(n: usize) -> Result<u128> {
    to_u128(&even_odd_series(n).0[n], "E(n)")
}

/// `O(n)`: partitions of `n` with an odd number of summands.
pub fn partitions_odd_count(n: usize) -> Result<u128> {
    to_u128(&even_odd_series(n).1[n], "O(n)")
}

/// Partitions of `n` having an even number of even parts. For W(Dₙ) this is
/// the number of classes without eigenvalue −1.
///
/// Computed as `(p(n) + s(n)) / 2` where `s` has generating function
/// `∏_{k odd} 1/(1 − xᵏ) · ∏_{k even} 1/(1 + xᵏ)`, the signed count.
pub fn partitions_even_number_of_even_parts(n: usize) -> Result<u128> {
    let p = restricted_partition_series(n, |_| true).0[n].clone();
    let mut signed = Series::constant(1, n);
    for k in 1..=n {
        signed.div_binomial(k, if k % 2 == 1 { -1 } else { 1 });
    }
    let total: BigInt = (p + &signed.0[n]) / 2;
    to_u128(&total, "even-even partition count")
}

/// Outcome of checking the partition-parity lemma up to some degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaVerdict {
    pub n_max: usize,
    /// Largest `n` also checked against explicit partition enumeration.
    pub enumerated_up_to: usize,
    pub failures: Vec<String>,
}

impl LemmaVerdict {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Explicit partition enumeration is used as a second opinion up to here.
pub const LEMMA_ENUMERATION_LIMIT: usize = 40;

/// Checks `Σ (O(n) − E(n)) xⁿ = −1/∏(1 + xᵏ) = −∏(1 − x^{2k−1})`, the sign
/// pattern `O − E = ±R(n)` (plus for odd `n`, minus for even `n`), and the
/// three inequalities `E(2k) > O(2k)` for `k ≥ 2`, `E(2k−1) < O(2k−1)`,
/// `E(2) = O(2)`, for all `1 ≤ n ≤ n_max`.
pub fn lemma_identity_check(n_max: usize) -> LemmaVerdict {
    let mut failures = Vec::new();
    let d = n_max;

    // −F(−t, x) at t = 1.
    let mut reciprocal = Series::constant(1, d);
    for k in 1..=d {
        reciprocal.div_binomial(k, 1);
    }
    let reciprocal = reciprocal.neg();

    // −(1 − x)(1 − x³)(1 − x⁵)…
    let mut odd_product = Series::constant(1, d);
    for k in (1..=d).step_by(2) {
        odd_product.mul_binomial(k, -1);
    }
    let odd_product = odd_product.neg();

    let (even, odd) = even_odd_series(d);
    let r = distinct_partition_series(d, |k| k % 2 == 1);

    for n in 0..=d {
        let from_table = &odd[n] - &even[n];
        if reciprocal.0[n] != from_table {
            failures.push(format!("n={n}: −1/∏(1+x^k) gives {} but O−E = {from_table}", reciprocal.0[n]));
        }
        if odd_product.0[n] != from_table {
            failures.push(format!("n={n}: −∏(1−x^odd) gives {} but O−E = {from_table}", odd_product.0[n]));
        }
        let expected = if n % 2 == 1 { r.0[n].clone() } else { -r.0[n].clone() };
        if from_table != expected {
            failures.push(format!("n={n}: O−E = {from_table}, expected {expected}"));
        }
        if n >= 1 {
            if from_table.abs() != r.0[n] {
                failures.push(format!("n={n}: |E−O| ≠ R(n)"));
            }
            if n % 2 == 1 && even[n] >= odd[n] {
                failures.push(format!("n={n}: E(n) < O(n) fails for odd n"));
            }
            if n % 2 == 0 && n >= 4 && even[n] <= odd[n] {
                failures.push(format!("n={n}: E(n) > O(n) fails for even n ≥ 4"));
            }
            if n == 2 && even[n] != odd[n] {
                failures.push("E(2) ≠ O(2)".into());
            }
        }
    }

    let enumerated_up_to = n_max.min(LEMMA_ENUMERATION_LIMIT);
    for n in 1..=enumerated_up_to {
        let (mut e, mut o, mut rn) = (0u64, 0u64, 0u64);
        for p in partitions(n) {
            if p.len() % 2 == 0 {
                e += 1;
            } else {
                o += 1;
            }
            let distinct_odd = p.parts().iter().all(|x| x % 2 == 1) && p.parts().windows(2).all(|w| w[0] != w[1]);
            if distinct_odd {
                rn += 1;
            }
        }
        if BigInt::from(e) != even[n] || BigInt::from(o) != odd[n] || BigInt::from(rn) != r.0[n] {
            failures.push(format!("n={n}: series disagree with enumeration (E={e}, O={o}, R={rn})"));
        }
    }

    LemmaVerdict { n_max, enumerated_up_to, failures }
}

/// Conjugacy-class data of the hyperoctahedral group: lengths of R-cycles
/// with R-parity 0 (`even_parity`, the pᵢ data) and with R-parity 1
/// (`odd_parity`, the qᵢ data), each sorted decreasingly.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SignedCycleType {
    pub even_parity: Vec<usize>,
    pub odd_parity: Vec<usize>,
}

impl SignedCycleType {
    pub fn new(mut even_parity: Vec<usize>, mut odd_parity: Vec<usize>) -> Self {
        even_parity.sort_unstable_by(|a, b| b.cmp(a));
        odd_parity.sort_unstable_by(|a, b| b.cmp(a));
        SignedCycleType { even_parity, odd_parity }
    }

    /// `Σ i·pᵢ + i·qᵢ`.
    pub fn n(&self) -> usize {
        self.even_parity.iter().chain(&self.odd_parity).sum()
    }

    /// Membership in W(Dₙ): an even number of odd-parity cycles.
    pub fn in_type_d(&self) -> bool {
        self.odd_parity.len() % 2 == 0
    }
}

/// An R-cycle of length `l` and parity `ε` has characteristic polynomial
/// `±(tˡ − (−1)^ε)`: root +1 iff ε = 0, root −1 iff `l ≡ ε (mod 2)`.
pub fn bn_class_eigen_flags(c: &SignedCycleType) -> (bool, bool) {
    let has_plus_one = !c.even_parity.is_empty();
    let has_minus_one =
        c.even_parity.iter().any(|l| l % 2 == 0) || c.odd_parity.iter().any(|l| l % 2 == 1);
    (has_plus_one, has_minus_one)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HyperoctahedralFamily {
    B,
    D,
}

/// One entry of [`bn_dn_class_enumeration`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedClass {
    pub cycle_type: SignedCycleType,
    pub has_plus_one: bool,
    pub has_minus_one: bool,
    /// In W(Dₙ), a type with only even-length, parity-0 cycles is two classes.
    pub splits_in_d: bool,
}

pub const BN_ENUMERATION_LIMIT: usize = 40;

/// Every signed cycle type of W(Bₙ), or the subset lying in W(Dₙ).
pub fn bn_dn_class_enumeration(n: usize, family: HyperoctahedralFamily) -> Result<Vec<SignedClass>> {
    if n > BN_ENUMERATION_LIMIT {
        return Err(Error::EnumerationBudget { n, limit: BN_ENUMERATION_LIMIT });
    }
    let mut out = Vec::new();
    for k in 0..=n {
        let evens: Vec<Partition> = partitions(k).collect();
        for odd in partitions(n - k) {
            if family == HyperoctahedralFamily::D && odd.len() % 2 == 1 {
                continue;
            }
            for even in &evens {
                let cycle_type = SignedCycleType::new(even.parts().to_vec(), odd.parts().to_vec());
                let (has_plus_one, has_minus_one) = bn_class_eigen_flags(&cycle_type);
                let splits_in_d = family == HyperoctahedralFamily::D
                    && n > 0
                    && odd.is_empty()
                    && even.parts().iter().all(|l| l % 2 == 0);
                out.push(SignedClass { cycle_type, has_plus_one, has_minus_one, splits_in_d });
            }
        }
    }
    Ok(out)
}

/// Number of conjugacy classes of W(Bₙ) or W(Dₙ), counting split classes twice.
pub fn hyperoctahedral_class_count(n: usize, family: HyperoctahedralFamily) -> Result<usize> {
    Ok(bn_dn_class_enumeration(n, family)?.iter().map(|c| 1 + c.splits_in_d as usize).sum())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DihedralKind {
    Identity,
    /// The pair `{S_k, S_{−k}}`, `0 < k < n/2`.
    Rotation(usize),
    /// `S_{n/2} = −1`, present for even `n`.
    HalfTurn,
    /// All reflections (odd `n`), or those `R_j` with `j ≡ parity (mod 2)`.
    Reflections { parity: Option<usize> },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DihedralClass {
    pub kind: DihedralKind,
    pub size: usize,
    pub has_plus_one: bool,
    pub has_minus_one: bool,
}

/// Conjugacy classes of W(I2(n)), the dihedral group of order 2n.
#[derive(Clone, Debug)]
pub struct DihedralClasses {
    pub n: usize,
    pub classes: Vec<DihedralClass>,
}

impl DihedralClasses {
    pub fn traces(&self) -> u128 {
        self.classes.iter().filter(|c| !c.has_plus_one).count() as u128
    }

    pub fn supertraces(&self) -> u128 {
        self.classes.iter().filter(|c| !c.has_minus_one).count() as u128
    }

    pub fn order(&self) -> usize {
        self.classes.iter().map(|c| c.size).sum()
    }
}

/// Rotations `S_k` have no eigenvalue +1 unless `k = 0` and no −1 unless
/// `k = n/2`; each reflection has both.
pub fn dihedral_classes(n: usize) -> Result<DihedralClasses> {
    if n < 3 {
        return Err(Error::InvalidParameter { family: "I2".into(), reason: "n must be at least 3".into() });
    }
    let mut classes = vec![DihedralClass { kind: DihedralKind::Identity, size: 1, has_plus_one: true, has_minus_one: false }];
    for k in (1..n).take_while(|&k| 2 * k < n) {
        classes.push(DihedralClass { kind: DihedralKind::Rotation(k), size: 2, has_plus_one: false, has_minus_one: false });
    }
    if n % 2 == 0 {
        classes.push(DihedralClass { kind: DihedralKind::HalfTurn, size: 1, has_plus_one: false, has_minus_one: true });
        for parity in 0..2 {
            classes.push(DihedralClass {
                kind: DihedralKind::Reflections { parity: Some(parity) },
                size: n / 2,
                has_plus_one: true,
                has_minus_one: true,
            });
        }
    } else {
        classes.push(DihedralClass {
            kind: DihedralKind::Reflections { parity: None },
            size: n,
            has_plus_one: true,
            has_minus_one: true,
        });
    }
    Ok(DihedralClasses { n, classes })
}

/// `(T, S)` of one irreducible factor from the closed forms.
pub fn closed_form_count(factor: Factor) -> Result<TraceCount> {
    let factor = factor.validate()?.normalized();
    let (t, s) = match factor {
        Factor::A(0) => (0, 1),
        Factor::A(n) => (1, partitions_odd_parts(n + 1)?),
        Factor::B(n) => {
            let p = partition_count(n)?;
            (p, p)
        }
        Factor::D(n) => {
            let e = partitions_even_count(n)?;
            if n % 2 == 0 {
                (e, e)
            } else {
                (e, partitions_odd_count(n)?)
            }
        }
        Factor::E6 => (5, 9),
        Factor::E7 => (12, 12),
        Factor::E8 => (30, 30),
        Factor::F4 => (9, 9),
        Factor::G2 => (3, 3),
        Factor::H3 => (4, 4),
        Factor::H4 => (20, 20),
        Factor::I2(n) => {
            let d = dihedral_classes(n)?;
            (d.traces(), d.supertraces())
        }
        Factor::C(_) => unreachable!("normalized away"),
    };
    Ok(TraceCount::new(t, s, Method::ClosedForm))
}

/// Whether W(factor) contains −I, by type: A1, Bₙ/Cₙ, D_{2n}, E7, E8, F4, G2,
/// H3, H4 and I2(2n) do; A0, Aₙ (n ≥ 2), D_{2n+1}, E6 and I2(2n+1) do not.
pub fn closed_form_contains_minus_identity(factor: Factor) -> bool {
    match factor.normalized() {
        Factor::A(n) => n == 1,
        Factor::B(_) | Factor::C(_) => true,
        Factor::D(n) => n % 2 == 0,
        Factor::E6 => false,
        Factor::E7 | Factor::E8 | Factor::F4 | Factor::G2 | Factor::H3 | Factor::H4 => true,
        Factor::I2(n) => n % 2 == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: brute-force partition enumeration by recursion on
    /// the largest allowed part.
    fn count_by_recursion(n: usize, max: usize, pred: &dyn Fn(&[usize]) -> bool, acc: &mut Vec<usize>) -> u128 {
        if n == 0 {
            return pred(acc) as u128;
        }
        let mut total = 0;
        for part in (1..=max.min(n)).rev() {
            acc.push(part);
            total += count_by_recursion(n - part, part, pred, acc);
            acc.pop();
        }
        total
    }

    fn oracle(n: usize, pred: impl Fn(&[usize]) -> bool) -> u128 {
        count_by_recursion(n, n, &pred, &mut Vec::new())
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partition_count(0).unwrap(), 1);
        assert_eq!(partition_count(4).unwrap(), 5);
        assert_eq!(partition_count(5).unwrap(), 7);
        assert_eq!(partitions_odd_parts(1).unwrap(), 1);
        assert_eq!(partitions_odd_parts(3).unwrap(), 2);
        assert_eq!(partitions_odd_parts(4).unwrap(), 2);
        assert_eq!((partitions_even_count(2).unwrap(), partitions_odd_count(2).unwrap()), (1, 1));
        assert_eq!((partitions_even_count(4).unwrap(), partitions_odd_count(4).unwrap()), (3, 2));
        assert_eq!((partitions_even_count(5).unwrap(), partitions_odd_count(5).unwrap()), (3, 4));
        assert_eq!(distinct_odd_partitions(4).unwrap(), 1);
        assert_eq!(distinct_odd_partitions(5).unwrap(), 1);
        assert_eq!(distinct_odd_partitions(8).unwrap(), 2);
        assert_eq!(partition_count(100).unwrap(), 190_569_292);
    }

    #[test]
    fn series_agree_with_enumeration_oracle() {
        for n in 0..=22 {
            assert_eq!(partition_count(n).unwrap(), oracle(n, |_| true));
            assert_eq!(partitions_odd_parts(n).unwrap(), oracle(n, |p| p.iter().all(|x| x % 2 == 1)));
            let distinct = |p: &[usize]| p.windows(2).all(|w| w[0] != w[1]);
            assert_eq!(partitions_distinct_parts(n).unwrap(), oracle(n, distinct));
            assert_eq!(
                distinct_odd_partitions(n).unwrap(),
                oracle(n, |p| distinct(p) && p.iter().all(|x| x % 2 == 1))
            );
            assert_eq!(partitions_even_count(n).unwrap(), oracle(n, |p| p.len() % 2 == 0));
            assert_eq!(partitions_odd_count(n).unwrap(), oracle(n, |p| p.len() % 2 == 1));
            assert_eq!(
                partitions_even_number_of_even_parts(n).unwrap(),
                oracle(n, |p| p.iter().filter(|x| *x % 2 == 0).count() % 2 == 0)
            );
        }
    }

    #[test]
    fn partition_iterator() {
        let all: Vec<Vec<usize>> = partitions(4).map(|p| p.parts().to_vec()).collect();
        assert_eq!(all, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(partitions(0).count(), 1);
        for n in 0..=25 {
            assert_eq!(partitions(n).count() as u128, partition_count(n).unwrap());
            assert!(partitions(n).all(|p| p.n() == n));
        }
        assert!(Partition::from_parts(vec![1, 0]).is_none());
        assert_eq!(Partition::from_parts(vec![1, 3, 2]).unwrap().parts(), &[3, 2, 1]);
    }

    #[test]
    fn parity_split_sums_to_p() {
        for n in 0..=40 {
            assert_eq!(
                partitions_even_count(n).unwrap() + partitions_odd_count(n).unwrap(),
                partition_count(n).unwrap()
            );
        }
    }

    #[test]
    fn euler_odd_equals_distinct() {
        for n in 0..=60 {
            assert_eq!(partitions_odd_parts(n).unwrap(), partitions_distinct_parts(n).unwrap());
        }
    }

    #[test]
    fn d_supertrace_forms_agree() {
        for n in 1..=40 {
            let expected = if n % 2 == 0 { partitions_even_count(n) } else { partitions_odd_count(n) };
            assert_eq!(partitions_even_number_of_even_parts(n).unwrap(), expected.unwrap(), "n = {n}");
        }
    }

    #[test]
    fn lemma_holds() {
        let v = lemma_identity_check(2);
        assert!(v.holds(), "{:?}", v.failures);
        let v = lemma_identity_check(40);
        assert!(v.holds(), "{:?}", v.failures);
        assert_eq!(v.enumerated_up_to, 40);
        let v = lemma_identity_check(500);
        assert!(v.holds(), "{:?}", v.failures);
    }

    #[test]
    fn signed_cycle_flags() {
        let t = |e: &[usize], o: &[usize]| bn_class_eigen_flags(&SignedCycleType::new(e.to_vec(), o.to_vec()));
        assert_eq!(t(&[], &[1]), (false, true));
        assert_eq!(t(&[2], &[]), (true, true));
        assert_eq!(t(&[], &[2]), (false, false));
        assert_eq!(t(&[1], &[]), (true, false));
    }

    #[test]
    fn bn_dn_enumeration_examples() {
        let b2 = bn_dn_class_enumeration(2, HyperoctahedralFamily::B).unwrap();
        assert_eq!(b2.len(), 5);
        assert_eq!(b2.iter().filter(|c| !c.has_plus_one).count(), 2);
        let d4 = bn_dn_class_enumeration(4, HyperoctahedralFamily::D).unwrap();
        assert_eq!(d4.iter().filter(|c| !c.has_plus_one).count(), 3);
        let d3 = bn_dn_class_enumeration(3, HyperoctahedralFamily::D).unwrap();
        assert_eq!(d3.iter().filter(|c| !c.has_plus_one).count(), 1);
        assert!(bn_dn_class_enumeration(41, HyperoctahedralFamily::B).is_err());
    }

    #[test]
    fn bn_total_is_bipartition_count() {
        // Independent double-partition count: Σ_k p(k) p(n − k) by enumeration.
        for n in 0..=12 {
            let pairs: u128 = (0..=n).map(|k| oracle(k, |_| true) * oracle(n - k, |_| true)).sum();
            assert_eq!(bn_dn_class_enumeration(n, HyperoctahedralFamily::B).unwrap().len() as u128, pairs);
        }
    }

    #[test]
    fn hyperoctahedral_counts_match_closed_forms() {
        for n in 2..=14 {
            let b = bn_dn_class_enumeration(n, HyperoctahedralFamily::B).unwrap();
            assert_eq!(b.iter().filter(|c| !c.has_plus_one).count() as u128, partition_count(n).unwrap());
            assert_eq!(b.iter().filter(|c| !c.has_minus_one).count() as u128, partition_count(n).unwrap());
            let d = bn_dn_class_enumeration(n, HyperoctahedralFamily::D).unwrap();
            let cf = closed_form_count(Factor::D(n)).unwrap();
            // Split classes carry both eigenvalues, so they never count.
            assert!(d.iter().filter(|c| c.splits_in_d).all(|c| c.has_plus_one && c.has_minus_one));
            assert_eq!(d.iter().filter(|c| !c.has_plus_one).count() as u128, cf.traces);
            assert_eq!(d.iter().filter(|c| !c.has_minus_one).count() as u128, cf.supertraces);
        }
        assert_eq!(hyperoctahedral_class_count(4, HyperoctahedralFamily::D).unwrap(), 13);
        assert_eq!(hyperoctahedral_class_count(3, HyperoctahedralFamily::B).unwrap(), 10);
    }

    #[test]
    fn dihedral_examples() {
        let d6 = dihedral_classes(6).unwrap();
        assert_eq!((d6.traces(), d6.supertraces()), (3, 3));
        let d5 = dihedral_classes(5).unwrap();
        assert_eq!((d5.traces(), d5.supertraces()), (2, 3));
        let d4 = dihedral_classes(4).unwrap();
        assert_eq!((d4.traces(), d4.supertraces(), d4.classes.len()), (2, 2, 5));
        for n in 3..=40 {
            let d = dihedral_classes(n).unwrap();
            assert_eq!(d.order(), 2 * n);
            assert_eq!((d.traces(), d.supertraces()), ((n / 2) as u128, ((n + 1) / 2) as u128));
        }
        assert!(dihedral_classes(2).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let tc = |f| {
            let c = closed_form_count(f).unwrap();
            (c.traces, c.supertraces)
        };
        assert_eq!(tc(Factor::D(5)), (3, 4));
        assert_eq!(tc(Factor::I2(7)), (3, 4));
        assert_eq!(tc(Factor::B(4)), (5, 5));
        assert_eq!(tc(Factor::C(4)), (5, 5));
        assert_eq!(tc(Factor::A(0)), (0, 1));
        assert_eq!(tc(Factor::A(1)), (1, 1));
        assert_eq!(tc(Factor::A(2)), (1, 2));
        assert_eq!(tc(Factor::I2(6)), tc(Factor::G2));
        assert_eq!(tc(Factor::D(4)), (3, 3));
    }

    #[test]
    fn minus_identity_lookup_matches_equality() {
        for f in [
            Factor::A(0), Factor::A(1), Factor::A(5), Factor::B(3), Factor::C(7), Factor::D(4), Factor::D(7),
            Factor::E6, Factor::E7, Factor::E8, Factor::F4, Factor::G2, Factor::H3, Factor::H4, Factor::I2(8),
            Factor::I2(9),
        ] {
            let c = closed_form_count(f).unwrap();
            assert_eq!(c.traces == c.supertraces, closed_form_contains_minus_identity(f), "{f}");
        }
    }
}
