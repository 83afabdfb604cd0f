//! Exact arithmetic in `Z_{p^r} x|_alpha Z_q`, its classification, and the
//! subgroup structure of `P_{p,r}` (the case `q = p`, `alpha = p^{r-1} + 1`).
//!
//! Elements are pairs `(a, b)` standing for `x^a y^b`, with
//! `(a1, b1)(a2, b2) = (a1 + alpha^b1 a2, b1 + b2)`.

use std::fmt::Debug;
use std::hash::Hash;

use crate::algebra::{gcd, is_prime, mod_inverse, multiplicative_order, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::reference::{closure, ElementSet};

/// Largest group order handled by the explicit group types.
pub const MAX_GROUP_ORDER: u64 = 1 << 40;

/// A finite group with a dense indexing of its elements.
///
/// `element_at` and `index_of` are mutually inverse bijections between the
/// group and `0..order()`, and the index order agrees with `Ord` on elements.
pub trait FiniteGroup: Debug + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn order(&self) -> u64;
    fn index_of(&self, e: &Self::Elem) -> u64;
    fn element_at(&self, index: u64) -> Self::Elem;
    /// Standard generating set.
    fn generators(&self) -> Vec<Self::Elem>;

    /// Whether `e` is a well-formed element of this group.
    fn is_member(&self, e: &Self::Elem) -> bool {
        let i = self.index_of(e);
        i < self.order() && self.element_at(i) == *e
    }

    fn all_elements(&self) -> Vec<Self::Elem> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    /// `e^c` by square and multiply; negative exponents go through `inv`.
    fn pow(&self, e: &Self::Elem, c: i64) -> Self::Elem {
        let mut base = if c < 0 { self.inv(e) } else { e.clone() };
        let mut exp = c.unsigned_abs();
        let mut acc = self.identity();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.op(&acc, &base);
            }
            base = self.op(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Order of an element, searched over divisors of the group order.
    fn element_order(&self, e: &Self::Elem) -> u64 {
        let id = self.identity();
        let n = self.order();
        let mut divisors: Vec<u64> = (1..)
            .take_while(|d: &u64| d * d <= n)
            .filter(|d| n.is_multiple_of(*d))
            .flat_map(|d| [d, n / d])
            .collect();
        divisors.sort_unstable();
        divisors
            .into_iter()
            .find(|&d| self.pow(e, d as i64) == id)
            .expect("element order divides the group order")
    }
}

/// `x^a y^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Element {
    pub a: u64,
    pub b: u64,
}

impl Element {
    pub const fn new(a: u64, b: u64) -> Self {
        Self { a, b }
    }
}

/// Isomorphism classes of `Z_{p^r} x| Z_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupClass {
    /// `q | p - 1`.
    QHedral = 1,
    /// `p = q = 2`, `alpha = 2^r - 1`.
    Dihedral = 2,
    /// `p = q = 2`, `alpha = 2^{r-1} - 1`.
    QuasiDihedral = 3,
    /// `q = p`, `alpha = t p^{r-1} + 1`.
    PGroup = 4,
    /// `alpha = 1`.
    DirectProduct = 5,
}

impl GroupClass {
    pub fn label(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    p: u64,
    q: u64,
    r: u32,
    alpha: u64,
    n: u64,
    alpha_pows: Vec<u64>,
}

impl GroupSpec {
    pub fn new(p: u64, q: u64, r: u32, alpha: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if r == 0 {
            return Err(Error::InvalidGroup("r must be at least 1".into()));
        }
        let n = p
            .checked_pow(r)
            .filter(|n| n.checked_mul(q).is_some_and(|o| o <= MAX_GROUP_ORDER))
            .ok_or_else(|| Error::InvalidGroup(format!("group order p^r q too large for p={p} r={r} q={q}")))?;
        if alpha == 0 || alpha >= n || gcd(alpha, n) != 1 {
            return Err(Error::InvalidGroup(format!("alpha={alpha} is not a unit mod {n}")));
        }
        if pow_mod(alpha, q, n) != 1 {
            return Err(Error::InvalidGroup(format!(
                "alpha={alpha} does not satisfy alpha^q = 1 mod {n}"
            )));
        }
        let alpha_pows = (0..q).map(|b| pow_mod(alpha, b, n)).collect();
        Ok(Self { p, q, r, alpha, n, alpha_pows })
    }

    /// `P_{p,r}`: `q = p` and `alpha = p^{r-1} + 1`, with `r >= 2`.
    pub fn p_group(p: u64, r: u32) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidGroup("P_{p,r} needs r >= 2".into()));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let alpha = p
            .checked_pow(r - 1)
            .and_then(|v| v.checked_add(1))
            .ok_or_else(|| Error::InvalidGroup("p^r too large".into()))?;
        Self::new(p, p, r, alpha)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn alpha(&self) -> u64 {
        self.alpha
    }
    /// `p^r`, the order of `x`.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// True for `P_{p,r}` including the excluded `(2, 2)` case.
    pub fn is_p_group_shape(&self) -> bool {
        self.q == self.p && self.r >= 2 && self.alpha == self.n / self.p + 1
    }

    /// Fails unless this is `P_{p,r}` with `(p, r) != (2, 2)`.
    pub fn require_p_group(&self) -> Result<()> {
        if !self.is_p_group_shape() {
            return Err(Error::InvalidGroup(format!(
                "(p={}, q={}, r={}, alpha={}) is not P_{{p,r}}",
                self.p, self.q, self.r, self.alpha
            )));
        }
        if self.p == 2 && self.r == 2 {
            return Err(Error::InvalidGroup("P_{2,2} is excluded: covered are all (p, r) except p = r = 2".into()));
        }
        Ok(())
    }

    pub fn element(&self, a: u64, b: u64) -> Result<Element> {
        let e = Element { a, b };
        self.check(&e)?;
        Ok(e)
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.a < self.n && e.b < self.q
    }

    fn check(&self, e: &Element) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange)
        }
    }

    pub fn x(&self) -> Element {
        Element { a: 1 % self.n, b: 0 }
    }

    pub fn y(&self) -> Element {
        Element { a: 0, b: 1 % self.q }
    }

    #[inline]
    fn mul_unchecked(&self, e1: &Element, e2: &Element) -> Element {
        let t = mul_mod(self.alpha_pows[e1.b as usize], e2.a, self.n);
        Element {
            a: (e1.a + t) % self.n,
            b: (e1.b + e2.b) % self.q,
        }
    }

    #[inline]
    fn inv_unchecked(&self, e: &Element) -> Element {
        // (a, b)^{-1} = (-alpha^{-b} a, -b)
        let nb = (self.q - e.b) % self.q;
        let t = mul_mod(self.alpha_pows[nb as usize], e.a, self.n);
        Element { a: (self.n - t) % self.n, b: nb }
    }

    pub fn compose(&self, e1: &Element, e2: &Element) -> Result<Element> {
        self.check(e1)?;
        self.check(e2)?;
        Ok(self.mul_unchecked(e1, e2))
    }

    pub fn invert(&self, e: &Element) -> Result<Element> {
        self.check(e)?;
        Ok(self.inv_unchecked(e))
    }

    pub fn power(&self, e: &Element, c: i64) -> Result<Element> {
        self.check(e)?;
        Ok(FiniteGroup::pow(self, e, c))
    }

    /// `(x^a y^b)^c = x^{a (c + c(c-1)/2 b p^{r-1})} y^{bc}`, valid in `P_{p,r}`.
    pub fn power_closed_form(&self, e: &Element, c: u64) -> Result<Element> {
        self.check(e)?;
        if !self.is_p_group_shape() {
            return Err(Error::InvalidGroup("closed-form power needs P_{p,r}".into()));
        }
        let n = self.n as u128;
        let c128 = c as u128;
        let tri = if c128.is_multiple_of(2) {
            (c128 / 2 % n) * ((c128.max(1) - 1) % n)
        } else {
            (c128 % n) * (((c128 - 1) / 2) % n)
        } % n;
        let shift = (tri * e.b as u128 % n) * (self.n / self.p) as u128 % n;
        let exp = (c128 % n + shift) % n;
        Ok(Element {
            a: (e.a as u128 * exp % n) as u64,
            b: mul_mod(e.b, c, self.q),
        })
    }

    pub fn order_of(&self, e: &Element) -> Result<u64> {
        self.check(e)?;
        Ok(FiniteGroup::element_order(self, e))
    }

    pub fn classify(&self) -> Result<GroupClass> {
        let (p, q, r, alpha) = (self.p, self.q, self.r, self.alpha);
        if alpha == 1 || self.n == 1 {
            return Ok(GroupClass::DirectProduct);
        }
        if multiplicative_order(alpha, self.n)? != q {
            return Err(Error::InvalidGroup(format!("alpha={alpha} does not have order q={q}")));
        }
        if (p - 1) % q == 0 {
            return Ok(GroupClass::QHedral);
        }
        if p == 2 && q == 2 {
            let full = self.n - 1;
            let half = self.n / 2;
            if alpha == full {
                return Ok(GroupClass::Dihedral);
            }
            if alpha == half - 1 {
                return Ok(GroupClass::QuasiDihedral);
            }
            if alpha == half + 1 {
                return Ok(GroupClass::PGroup);
            }
        } else if p == q && r >= 2 && (alpha - 1) % (self.n / p) == 0 {
            return Ok(GroupClass::PGroup);
        }
        Err(Error::InvalidGroup(format!(
            "no class for (p={p}, q={q}, r={r}, alpha={alpha})"
        )))
    }

    /// The subgroups of `P_{p,r}` in structural form.
    pub fn enumerate_subgroups(&self) -> Result<Vec<SubgroupDesc>> {
        self.require_p_group()?;
        let r = self.r;
        let mut out: Vec<SubgroupDesc> = (0..=r).map(SubgroupDesc::XPower).collect();
        out.extend((0..=r).map(SubgroupDesc::XPowerY));
        for j in 0..r {
            for t in 1..self.p {
                out.push(SubgroupDesc::CyclicXY { t, j });
            }
        }
        Ok(out)
    }

    pub fn subgroup_properties(&self, s: &SubgroupDesc) -> Result<SubgroupProperties> {
        s.validate(self)?;
        let r = self.r;
        let pw = |e: u32| self.p.pow(e);
        Ok(match *s {
            SubgroupDesc::XPower(i) => SubgroupProperties { normal: true, abelian: true, order: pw(r - i) },
            SubgroupDesc::XPowerY(i) => SubgroupProperties {
                normal: i != r,
                abelian: i != 0,
                order: pw(r - i + 1),
            },
            SubgroupDesc::CyclicXY { j, .. } => SubgroupProperties {
                normal: j != r - 1,
                abelian: true,
                order: pw(r - j),
            },
            SubgroupDesc::Generators(_) => {
                let set = s.to_elements(self)?;
                SubgroupProperties {
                    normal: crate::reference::is_normal(self, &set),
                    abelian: crate::reference::is_abelian(self, &set),
                    order: set.len() as u64,
                }
            }
        })
    }

    /// Lexicographically least element of the left coset `e S`.
    pub fn coset_id(&self, s: &SubgroupDesc, e: &Element) -> Result<Element> {
        self.check(e)?;
        let set = s.to_elements(self)?;
        Ok(coset_min(self, &set, e))
    }
}

/// Least element of `e S` for an explicit subgroup `S`.
pub fn coset_min<G: FiniteGroup>(group: &G, subgroup: &ElementSet<G::Elem>, e: &G::Elem) -> G::Elem {
    subgroup
        .iter()
        .map(|s| group.op(e, s))
        .min()
        .expect("subgroup contains the identity")
}

impl FiniteGroup for GroupSpec {
    type Elem = Element;

    fn identity(&self) -> Element {
        Element::default()
    }
    fn op(&self, a: &Element, b: &Element) -> Element {
        self.mul_unchecked(a, b)
    }
    fn inv(&self, a: &Element) -> Element {
        self.inv_unchecked(a)
    }
    fn order(&self) -> u64 {
        self.n * self.q
    }
    fn index_of(&self, e: &Element) -> u64 {
        e.a * self.q + e.b
    }
    fn element_at(&self, index: u64) -> Element {
        Element { a: index / self.q, b: index % self.q }
    }
    fn generators(&self) -> Vec<Element> {
        vec![self.x(), self.y()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubgroupProperties {
    pub normal: bool,
    pub abelian: bool,
    pub order: u64,
}

/// A subgroup of `P_{p,r}` in structural form, or any subgroup by generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupDesc {
    /// `<x^{p^i}>`, `0 <= i <= r`.
    XPower(u32),
    /// `<x^{p^i}, y>`, `0 <= i <= r`.
    XPowerY(u32),
    /// `<x^{t p^j} y>`, `1 <= t < p`, `0 <= j < r`.
    CyclicXY { t: u64, j: u32 },
    Generators(Vec<Element>),
}

impl SubgroupDesc {
    pub fn validate(&self, g: &GroupSpec) -> Result<()> {
        let structural = |ok: bool| -> Result<()> {
            g.require_p_group()?;
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!("subgroup index out of range: {self:?}")))
            }
        };
        match *self {
            SubgroupDesc::XPower(i) | SubgroupDesc::XPowerY(i) => structural(i <= g.r),
            SubgroupDesc::CyclicXY { t, j } => structural(t >= 1 && t < g.p && j < g.r),
            SubgroupDesc::Generators(ref gens) => {
                for e in gens {
                    g.check(e)?;
                }
                Ok(())
            }
        }
    }

    /// Defining generators; the identity is dropped.
    pub fn generators(&self, g: &GroupSpec) -> Result<Vec<Element>> {
        self.validate(g)?;
        let xp = |e: u32| Element { a: g.p.pow(e) % g.n, b: 0 };
        let mut gens = match *self {
            SubgroupDesc::XPower(i) => vec![xp(i)],
            SubgroupDesc::XPowerY(i) => vec![xp(i), g.y()],
            SubgroupDesc::CyclicXY { t, j } => vec![Element { a: t * g.p.pow(j) % g.n, b: 1 }],
            SubgroupDesc::Generators(ref v) => v.clone(),
        };
        gens.retain(|e| *e != Element::default());
        Ok(gens)
    }

    pub fn to_elements(&self, g: &GroupSpec) -> Result<ElementSet<Element>> {
        Ok(closure(g, &self.generators(g)?))
    }
}

/// All `alpha != 1` of multiplicative order `q` modulo `p^r`.
pub fn enumerate_alphas(p: u64, q: u64, r: u32) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if r == 0 {
        return Err(Error::InvalidGroup("r must be at least 1".into()));
    }
    let n = p
        .checked_pow(r)
        .filter(|&n| n <= 1 << 32)
        .ok_or_else(|| Error::InvalidGroup("p^r too large to enumerate".into()))?;
    Ok((2..n)
        .filter(|&a| gcd(a, n) == 1 && pow_mod(a, q, n) == 1)
        .collect())
}

/// Isomorphism `x^a y^b -> x^a y^{b i'}` where `alpha_src^i = alpha_dst` and
/// `i i' = 1 mod q`.
pub fn iso_map(src: &GroupSpec, dst: &GroupSpec, e: &Element) -> Result<Element> {
    src.check(e)?;
    if (src.p, src.q, src.r) != (dst.p, dst.q, dst.r) {
        return Err(Error::NotIsomorphic("parameters (p, q, r) differ".into()));
    }
    let i = (1..src.q)
        .find(|&i| src.alpha_pows[i as usize] == dst.alpha)
        .or((src.alpha == dst.alpha).then_some(1))
        .ok_or_else(|| {
            Error::NotIsomorphic(format!(
                "alpha={} is not a power of alpha={} mod {}",
                dst.alpha, src.alpha, src.n
            ))
        })?;
    let i_inv = mod_inverse(i, src.q).expect("exponent is a unit mod q");
    Ok(Element { a: e.a, b: mul_mod(e.b, i_inv, src.q) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p32() -> GroupSpec {
        GroupSpec::p_group(3, 2).unwrap()
    }

    fn e(a: u64, b: u64) -> Element {
        Element::new(a, b)
    }

    #[test]
    fn compose_examples() {
        let g = p32();
        assert_eq!(g.alpha(), 4);
        assert_eq!(g.compose(&e(0, 1), &e(1, 0)).unwrap(), e(4, 1));
        assert_eq!(g.compose(&e(5, 2), &e(0, 0)).unwrap(), e(5, 2));
        assert_eq!(g.compose(&e(1, 0), &e(0, 1)).unwrap(), e(1, 1));
        assert_eq!(g.compose(&e(9, 0), &e(0, 0)), Err(Error::ElementOutOfRange));
    }

    #[test]
    fn invert_examples() {
        let g = p32();
        assert_eq!(g.invert(&e(0, 0)).unwrap(), e(0, 0));
        assert_eq!(g.invert(&e(1, 0)).unwrap(), e(8, 0));
        assert_eq!(g.invert(&e(0, 1)).unwrap(), e(0, 2));
        for x in g.all_elements() {
            let xi = g.invert(&x).unwrap();
            assert_eq!(g.compose(&x, &xi).unwrap(), e(0, 0));
            assert_eq!(g.compose(&xi, &x).unwrap(), e(0, 0));
        }
    }

    #[test]
    fn power_examples() {
        let g = p32();
        assert_eq!(g.power(&e(1, 1), 3).unwrap(), e(3, 0));
        assert_eq!(g.power_closed_form(&e(1, 1), 3).unwrap(), e(3, 0));
        assert_eq!(g.power(&e(4, 2), 0).unwrap(), e(0, 0));
        assert_eq!(g.power(&e(3, 1), 3).unwrap(), e(0, 0));
        let x = e(2, 1);
        assert_eq!(g.power(&x, -1).unwrap(), g.invert(&x).unwrap());
    }

    #[test]
    fn element_order_examples() {
        let g = p32();
        assert_eq!(g.order_of(&e(0, 0)).unwrap(), 1);
        assert_eq!(g.order_of(&e(1, 1)).unwrap(), 9);
        assert_eq!(g.order_of(&e(3, 1)).unwrap(), 3);
        for x in g.all_elements() {
            let mut k = 1;
            let mut cur = x;
            while cur != e(0, 0) {
                cur = g.compose(&cur, &x).unwrap();
                k += 1;
            }
            assert_eq!(g.order_of(&x).unwrap(), k);
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(enumerate_alphas(3, 3, 2).unwrap(), vec![4, 7]);
        assert_eq!(enumerate_alphas(2, 2, 3).unwrap(), vec![3, 5, 7]);
        assert!(enumerate_alphas(5, 3, 1).unwrap().is_empty());
        assert_eq!(enumerate_alphas(7, 3, 1).unwrap(), vec![2, 4]);
        assert_eq!(enumerate_alphas(4, 3, 1), Err(Error::NotPrime(4)));
    }

    #[test]
    fn alpha_cardinalities() {
        for &p in &[2u64, 3, 5, 7, 11, 13] {
            for &q in &[2u64, 3, 5, 7] {
                for r in 1..=4u32 {
                    if p.pow(r) > 20_000 {
                        continue;
                    }
                    let count = enumerate_alphas(p, q, r).unwrap().len() as u64;
                    let expected = if (p - 1) % q == 0 {
                        q - 1
                    } else if p == q && p != 2 && r >= 2 {
                        p - 1
                    } else if p == 2 && q == 2 && r >= 2 {
                        if r == 2 {
                            1
                        } else {
                            3
                        }
                    } else {
                        0
                    };
                    assert_eq!(count, expected, "p={p} q={q} r={r}");
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = |p, q, r, a| GroupSpec::new(p, q, r, a).unwrap().classify().unwrap();
        assert_eq!(c(7, 3, 1, 2), GroupClass::QHedral);
        assert_eq!(c(2, 2, 3, 7), GroupClass::Dihedral);
        assert_eq!(c(3, 3, 2, 1), GroupClass::DirectProduct);
        assert_eq!(c(2, 2, 4, 7), GroupClass::QuasiDihedral);
        assert_eq!(c(2, 2, 4, 9), GroupClass::PGroup);
        assert_eq!(c(3, 3, 2, 7), GroupClass::PGroup);
        assert_eq!(c(2, 2, 3, 3), GroupClass::QuasiDihedral);
        assert_eq!(c(2, 2, 2, 3), GroupClass::Dihedral);
        assert!(GroupSpec::new(3, 3, 2, 2).is_err());
        assert!(GroupSpec::new(6, 3, 2, 1).is_err());
    }

    #[test]
    fn iso_examples() {
        let s = GroupSpec::new(3, 3, 2, 4).unwrap();
        let d = GroupSpec::new(3, 3, 2, 7).unwrap();
        assert_eq!(iso_map(&s, &d, &e(1, 1)).unwrap(), e(1, 2));
        assert_eq!(iso_map(&s, &s, &e(5, 2)).unwrap(), e(5, 2));
        let s = GroupSpec::new(7, 3, 1, 2).unwrap();
        let d = GroupSpec::new(7, 3, 1, 4).unwrap();
        assert_eq!(iso_map(&s, &d, &e(3, 1)).unwrap(), e(3, 2));

        let a = GroupSpec::new(2, 2, 3, 3).unwrap();
        let b = GroupSpec::new(2, 2, 3, 5).unwrap();
        assert!(matches!(iso_map(&a, &b, &e(1, 1)), Err(Error::NotIsomorphic(_))));
    }

    #[test]
    fn iso_is_bijective_homomorphism() {
        let cases = [(3u64, 3u64, 2u32, 4u64, 7u64), (7, 3, 1, 2, 4), (13, 3, 1, 3, 9), (5, 5, 2, 6, 16)];
        for (p, q, r, a1, a2) in cases {
            let s = GroupSpec::new(p, q, r, a1).unwrap();
            let d = GroupSpec::new(p, q, r, a2).unwrap();
            let all = s.all_elements();
            let mut image: Vec<Element> = all.iter().map(|x| iso_map(&s, &d, x).unwrap()).collect();
            for u in &all {
                for v in &all {
                    let lhs = iso_map(&s, &d, &s.compose(u, v).unwrap()).unwrap();
                    let rhs = d.compose(&iso_map(&s, &d, u).unwrap(), &iso_map(&s, &d, v).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            image.sort();
            image.dedup();
            assert_eq!(image.len(), all.len());
        }
    }

    #[test]
    fn subgroup_list_examples() {
        let g = p32();
        assert_eq!(g.enumerate_subgroups().unwrap().len(), 10);
        let g23 = GroupSpec::p_group(2, 3).unwrap();
        let subs = g23.enumerate_subgroups().unwrap();
        assert_eq!(subs.len(), 11);
        let sets: std::collections::BTreeSet<_> =
            subs.iter().map(|s| s.to_elements(&g23).unwrap()).collect();
        assert_eq!(sets.len(), 11);
        assert_eq!(SubgroupDesc::XPower(2).to_elements(&g).unwrap().len(), 1);
        assert!(GroupSpec::p_group(2, 2).unwrap().enumerate_subgroups().is_err());
        assert!(GroupSpec::new(7, 3, 1, 2).unwrap().enumerate_subgroups().is_err());
    }

    #[test]
    fn subgroup_property_examples() {
        let g = p32();
        let props = g.subgroup_properties(&SubgroupDesc::CyclicXY { t: 1, j: 1 }).unwrap();
        assert_eq!(props, SubgroupProperties { normal: false, abelian: true, order: 3 });
        let props = g.subgroup_properties(&SubgroupDesc::XPower(1)).unwrap();
        assert!(props.normal);
        assert_eq!(props.order, 3);
        let props = g.subgroup_properties(&SubgroupDesc::XPowerY(0)).unwrap();
        assert_eq!(props, SubgroupProperties { normal: true, abelian: false, order: 27 });
    }

    #[test]
    fn structural_properties_match_enumeration() {
        for (p, r) in [(3u64, 2u32), (2, 3), (3, 3), (5, 2), (2, 4), (2, 5)] {
            let g = GroupSpec::p_group(p, r).unwrap();
            let mut non_normal = 0;
            for s in g.enumerate_subgroups().unwrap() {
                let props = g.subgroup_properties(&s).unwrap();
                let set = s.to_elements(&g).unwrap();
                let generic = g
                    .subgroup_properties(&SubgroupDesc::Generators(set.as_slice().to_vec()))
                    .unwrap();
                assert_eq!(props, generic, "p={p} r={r} {s:?}");
                non_normal += usize::from(!props.normal);
            }
            assert_eq!(non_normal as u64, p);
        }
    }

    #[test]
    fn coset_examples() {
        let g = p32();
        let s = SubgroupDesc::CyclicXY { t: 1, j: 1 };
        for h in s.to_elements(&g).unwrap().iter() {
            assert_eq!(g.coset_id(&s, h).unwrap(), e(0, 0));
        }
        assert_eq!(g.coset_id(&SubgroupDesc::XPower(1), &e(1, 0)).unwrap(), e(1, 0));
        assert_eq!(g.coset_id(&SubgroupDesc::XPowerY(2), &e(1, 0)).unwrap(), e(1, 0));
        let coset: Vec<Element> = SubgroupDesc::XPowerY(2)
            .to_elements(&g)
            .unwrap()
            .iter()
            .map(|h| g.compose(&e(1, 0), h).unwrap())
            .collect();
        assert_eq!(coset, vec![e(1, 0), e(1, 1), e(1, 2)]);
    }
}
