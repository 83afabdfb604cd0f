//! Black-box groups: opaque element encodings, counted oracles, and hidden
//! functions.
//!
//! An encoding assigns each pair `(element, salt)` with `salt < S` a distinct
//! 8-byte string by pushing the dense index `element_index * S + salt`
//! through a keyed Feistel permutation of `u64`. With `S > 1` the same element
//! has several encodings and only [`BlackBox::oracle_eq`] can tell whether two
//! handles agree.
//!
//! Solvers see handles and labels only. [`Harness`] gives the test layer
//! uncounted access to the ground truth.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::reference::{closure, is_subgroup, ElementSet};
use crate::sdp_group::FiniteGroup;

/// Upper bound on `|G| * S`.
pub const TABLE_BOUND: u64 = 1 << 24;

/// An encoded group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpaqueHandle([u8; 8]);

impl OpaqueHandle {
    pub fn bytes(&self) -> [u8; 8] {
        self.0
    }
}

/// Output of a hidden function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Encoding {
    Unique,
    /// `S` encodings per element.
    Salted(u32),
}

impl Encoding {
    pub fn salt_count(self) -> u64 {
        match self {
            Encoding::Unique => 1,
            Encoding::Salted(s) => s as u64,
        }
    }
}

/// Which encoding of a product the oracles return.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaltPolicy {
    Zero,
    /// Deterministic in the operand strings.
    HashOfOperands,
    /// A fresh pseudorandom salt on every call.
    FreshRandom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorPolicy {
    /// Handles of the group's standard generators.
    Canonical,
    /// Two to four random elements that generate the group.
    Scrambled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceConfig {
    pub encoding: Encoding,
    pub salt_policy: SaltPolicy,
    pub generators: GeneratorPolicy,
    pub seed: u64,
}

impl Default for InstanceConfig {
    fn default() -> Self {
        Self {
            encoding: Encoding::Unique,
            salt_policy: SaltPolicy::Zero,
            generators: GeneratorPolicy::Canonical,
            seed: 0,
        }
    }
}

/// Oracle call counts. `f` counts every pointwise evaluation, including the
/// basis states of batched calls; `superposed_calls` counts batches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub mul: u64,
    pub inv: u64,
    pub eq: u64,
    pub f: u64,
    pub superposed_calls: u64,
}

impl QueryStats {
    pub fn classical_evaluations(&self) -> u64 {
        self.mul + self.inv + self.eq + self.f
    }

    /// Counts accrued since `earlier`.
    pub fn since(&self, earlier: &QueryStats) -> QueryStats {
        QueryStats {
            mul: self.mul - earlier.mul,
            inv: self.inv - earlier.inv,
            eq: self.eq - earlier.eq,
            f: self.f - earlier.f,
            superposed_calls: self.superposed_calls - earlier.superposed_calls,
        }
    }
}

#[derive(Debug, Default)]
struct Counters {
    mul: AtomicU64,
    inv: AtomicU64,
    eq: AtomicU64,
    f: AtomicU64,
    superposed: AtomicU64,
}

impl Counters {
    fn bump(c: &AtomicU64, n: u64) {
        c.fetch_add(n, Ordering::Relaxed);
    }

    fn snapshot(&self) -> QueryStats {
        QueryStats {
            mul: self.mul.load(Ordering::Relaxed),
            inv: self.inv.load(Ordering::Relaxed),
            eq: self.eq.load(Ordering::Relaxed),
            f: self.f.load(Ordering::Relaxed),
            superposed_calls: self.superposed.load(Ordering::Relaxed),
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Keyed permutation of `u64`: a balanced Feistel network over 32-bit halves.
#[derive(Clone, Debug)]
struct Feistel {
    keys: [u64; 6],
}

impl Feistel {
    fn new<R: Rng>(rng: &mut R) -> Self {
        Self { keys: rng.gen() }
    }

    fn round(k: u64, half: u32) -> u32 {
        (splitmix64(k ^ half as u64) >> 16) as u32
    }

    fn forward(&self, x: u64) -> u64 {
        let (mut l, mut r) = ((x >> 32) as u32, x as u32);
        for &k in &self.keys {
            (l, r) = (r, l ^ Self::round(k, r));
        }
        ((l as u64) << 32) | r as u64
    }

    fn backward(&self, y: u64) -> u64 {
        let (mut l, mut r) = ((y >> 32) as u32, y as u32);
        for &k in self.keys.iter().rev() {
            (l, r) = (r ^ Self::round(k, l), l);
        }
        ((l as u64) << 32) | r as u64
    }
}

/// A group behind counted product, inverse and equality oracles.
#[derive(Debug)]
pub struct BlackBox<G: FiniteGroup> {
    group: G,
    salts: u64,
    policy: SaltPolicy,
    prp: Feistel,
    salt_key: u64,
    fresh: AtomicU64,
    counters: Counters,
}

impl<G: FiniteGroup> BlackBox<G> {
    pub fn new(group: G, encoding: Encoding, policy: SaltPolicy, seed: u64) -> Result<Self> {
        let salts = encoding.salt_count();
        if salts == 0 {
            return Err(Error::InvalidInput("salt count must be at least 1".into()));
        }
        let size = group.order().saturating_mul(salts);
        if size > TABLE_BOUND {
            return Err(Error::TableBound(size));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(Self {
            group,
            salts,
            policy,
            prp: Feistel::new(&mut rng),
            salt_key: rng.gen(),
            fresh: AtomicU64::new(0),
            counters: Counters::default(),
        })
    }

    /// The public group parameters. Handles stay opaque regardless.
    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn salt_count(&self) -> u64 {
        self.salts
    }

    pub(crate) fn encode(&self, e: &G::Elem, salt: u64) -> OpaqueHandle {
        let idx = self.group.index_of(e) * self.salts + salt % self.salts;
        OpaqueHandle(self.prp.forward(idx).to_be_bytes())
    }

    pub(crate) fn decode(&self, h: &OpaqueHandle) -> Result<G::Elem> {
        let idx = self.prp.backward(u64::from_be_bytes(h.0));
        if idx >= self.group.order() * self.salts {
            return Err(Error::UnknownEncoding);
        }
        Ok(self.group.element_at(idx / self.salts))
    }

    fn output_salt(&self, operands: &[&OpaqueHandle]) -> u64 {
        if self.salts == 1 {
            return 0;
        }
        match self.policy {
            SaltPolicy::Zero => 0,
            SaltPolicy::HashOfOperands => {
                let mut acc = self.salt_key;
                for h in operands {
                    acc = splitmix64(acc ^ u64::from_be_bytes(h.0));
                }
                acc % self.salts
            }
            SaltPolicy::FreshRandom => {
                let n = self.fresh.fetch_add(1, Ordering::Relaxed);
                splitmix64(self.salt_key ^ splitmix64(n)) % self.salts
            }
        }
    }

    pub fn oracle_mul(&self, h1: &OpaqueHandle, h2: &OpaqueHandle) -> Result<OpaqueHandle> {
        let a = self.decode(h1)?;
        let b = self.decode(h2)?;
        Counters::bump(&self.counters.mul, 1);
        Ok(self.encode(&self.group.op(&a, &b), self.output_salt(&[h1, h2])))
    }

    pub fn oracle_inv(&self, h: &OpaqueHandle) -> Result<OpaqueHandle> {
        let a = self.decode(h)?;
        Counters::bump(&self.counters.inv, 1);
        Ok(self.encode(&self.group.inv(&a), self.output_salt(&[h])))
    }

    pub fn oracle_eq(&self, h1: &OpaqueHandle, h2: &OpaqueHandle) -> Result<bool> {
        let a = self.decode(h1)?;
        let b = self.decode(h2)?;
        Counters::bump(&self.counters.eq, 1);
        Ok(a == b)
    }

    /// `h^c` by square and multiply through the oracles.
    pub fn oracle_pow(&self, h: &OpaqueHandle, c: i64) -> Result<OpaqueHandle> {
        let mut base = if c < 0 { self.oracle_inv(h)? } else { *h };
        let mut exp = c.unsigned_abs();
        let mut acc: Option<OpaqueHandle> = None;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = Some(match acc {
                    None => base,
                    Some(a) => self.oracle_mul(&a, &base)?,
                });
            }
            exp >>= 1;
            if exp > 0 {
                base = self.oracle_mul(&base, &base)?;
            }
        }
        match acc {
            Some(a) => Ok(a),
            None => self.identity_from(h),
        }
    }

    /// An encoding of the identity, as `h * h^{-1}`.
    pub fn identity_from(&self, h: &OpaqueHandle) -> Result<OpaqueHandle> {
        let hi = self.oracle_inv(h)?;
        self.oracle_mul(h, &hi)
    }

    pub fn query_stats(&self) -> QueryStats {
        self.counters.snapshot()
    }
}

/// A black box together with an `H`-periodic hidden function.
#[derive(Debug)]
pub struct HiddenInstance<G: FiniteGroup> {
    bb: BlackBox<G>,
    truth: ElementSet<G::Elem>,
    labels: Vec<u64>,
}

impl<G: FiniteGroup> HiddenInstance<G> {
    pub fn blackbox(&self) -> &BlackBox<G> {
        &self.bb
    }

    pub fn f(&self, h: &OpaqueHandle) -> Result<Label> {
        let e = self.bb.decode(h)?;
        Counters::bump(&self.bb.counters.f, 1);
        Ok(Label(self.labels[self.bb.group.index_of(&e) as usize]))
    }

    /// One superposed call: evaluates every handle, counting each as an `f`
    /// query.
    pub fn f_batch(&self, hs: &[OpaqueHandle]) -> Result<Vec<Label>> {
        let out = hs
            .iter()
            .map(|h| {
                let e = self.bb.decode(h)?;
                Ok(Label(self.labels[self.bb.group.index_of(&e) as usize]))
            })
            .collect::<Result<Vec<_>>>()?;
        Counters::bump(&self.bb.counters.f, hs.len() as u64);
        Counters::bump(&self.bb.counters.superposed, 1);
        Ok(out)
    }

    pub fn query_stats(&self) -> QueryStats {
        self.bb.query_stats()
    }

    /// Books one superposed call over `points` basis states that a sampler
    /// simulated without evaluating them.
    pub(crate) fn charge_superposed(&self, points: u64) {
        Counters::bump(&self.bb.counters.f, points);
        Counters::bump(&self.bb.counters.superposed, 1);
    }

    /// Uncounted ground-truth access for the test and reference layer.
    pub fn harness(&self) -> Harness<'_, G> {
        Harness { inst: self }
    }
}

/// Uncounted access to an instance's hidden data.
pub struct Harness<'a, G: FiniteGroup> {
    inst: &'a HiddenInstance<G>,
}

impl<G: FiniteGroup> Harness<'_, G> {
    pub fn truth(&self) -> &ElementSet<G::Elem> {
        &self.inst.truth
    }

    pub fn decode(&self, h: &OpaqueHandle) -> Result<G::Elem> {
        self.inst.bb.decode(h)
    }

    pub fn encode(&self, e: &G::Elem, salt: u64) -> OpaqueHandle {
        self.inst.bb.encode(e, salt)
    }

    pub fn label_of(&self, e: &G::Elem) -> Label {
        Label(self.inst.labels[self.inst.bb.group.index_of(e) as usize])
    }
}

/// Builds a hidden instance for the subgroup `h` and returns it with handles
/// for a generating set of the group, chosen by `config.generators`.
pub fn make_hidden_instance<G: FiniteGroup>(
    group: G,
    h: &ElementSet<G::Elem>,
    config: &InstanceConfig,
) -> Result<(HiddenInstance<G>, Vec<OpaqueHandle>)> {
    if !h.iter().all(|e| group.is_member(e)) || !is_subgroup(&group, h) {
        return Err(Error::NotASubgroup("the given set is not closed under the group law".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5e_ed0f_b1ac_b0c5);
    let bb = BlackBox::new(group, config.encoding, config.salt_policy, rng.gen())?;
    let label_prp = Feistel::new(&mut rng);

    // Scanning indices upward, the first unlabelled element of each coset is
    // its least element, so labels depend on the coset only.
    let order = bb.group.order();
    let mut labels = vec![u64::MAX; order as usize];
    let mut assigned = vec![false; order as usize];
    for idx in 0..order {
        if assigned[idx as usize] {
            continue;
        }
        let g = bb.group.element_at(idx);
        let label = label_prp.forward(idx);
        for s in h.iter() {
            let j = bb.group.index_of(&bb.group.op(&g, s)) as usize;
            assigned[j] = true;
            labels[j] = label;
        }
    }

    let gens = match config.generators {
        GeneratorPolicy::Canonical => bb.group.generators(),
        GeneratorPolicy::Scrambled => scrambled_generators(&bb.group, &mut rng),
    };
    let salts = bb.salts;
    let handles = gens
        .iter()
        .map(|g| bb.encode(g, rng.gen_range(0..salts)))
        .collect();
    Ok((HiddenInstance { bb, truth: h.clone(), labels }, handles))
}

fn scrambled_generators<G: FiniteGroup, R: Rng>(group: &G, rng: &mut R) -> Vec<G::Elem> {
    let order = group.order();
    loop {
        let k = rng.gen_range(2..=4);
        let gens: Vec<G::Elem> = (0..k).map(|_| group.element_at(rng.gen_range(0..order))).collect();
        if closure(group, &gens).len() as u64 == order {
            return gens;
        }
    }
}
