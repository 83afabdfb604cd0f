//! Hidden subgroups of `Z_{p^r}^m x| Z_p`, where `y` acts on every
//! coordinate as `x_i -> x_i^{p^{r-1}+1}`.
//!
//! The solver reduces to the Abelian group `Z_{p^r}^m x Z_p` through
//! `pi^{-1}(a_1, ..., a_m, b) = g_1^{a_1} ... g_m^{a_m} y^b` for a minimal
//! generating set `g_1, ..., g_m` of the normal factor `A`. Fourier sampling of
//! `f o pi^{-1}` yields `pi(H)`; uniform elements of that lattice are pulled
//! back through `pi^{-1}` until they generate `H`.
//!
//! The encoding must be unique: the minimal generating set is found by
//! hiding the relation lattice of the input generators behind their
//! encodings.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{smith_normal_form, Lattice, LatticeBuilder, LatticeSampler, MAX_MODULUS};
use crate::blackbox::{make_hidden_instance, GeneratorPolicy, HiddenInstance, InstanceConfig, OpaqueHandle};
use crate::error::{Error, Result};
use crate::hsp_p::{Solution, SolveReport};
use crate::qsim::{abelian_hsp_solve, AbelianSolution, GridOracle, LabelSource, SolverOptions};
use crate::reference::{closure, ElementSet};
use crate::sdp_group::FiniteGroup;

/// Cap on pull-back rounds in [`solve`].
pub const PULLBACK_ROUNDS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZmGroupSpec {
    p: u64,
    r: u32,
    m: usize,
    n: u64,
    alpha: u64,
}

/// `x_1^{a_1} ... x_m^{a_m} y^b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZmElement {
    pub a: Vec<u64>,
    pub b: u64,
}

impl ZmGroupSpec {
    pub fn new(p: u64, r: u32, m: usize) -> Result<Self> {
        if !crate::algebra::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r < 2 || m == 0 {
            return Err(Error::InvalidGroup("need r >= 2 and m >= 1".into()));
        }
        if p == 2 && r == 2 {
            return Err(Error::InvalidGroup("(p, r) = (2, 2) is excluded".into()));
        }
        let n = p
            .checked_pow(r)
            .filter(|&n| n <= MAX_MODULUS)
            .ok_or_else(|| Error::InvalidGroup("p^r too large".into()))?;
        let order = (0..m).try_fold(p, |acc, _| acc.checked_mul(n));
        if order.is_none_or(|o| o > crate::sdp_group::MAX_GROUP_ORDER) {
            return Err(Error::InvalidGroup("group order too large".into()));
        }
        Ok(Self { p, r, m, n, alpha: n / p + 1 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn m(&self) -> usize {
        self.m
    }
    /// `p^r`.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn element(&self, a: Vec<u64>, b: u64) -> Result<ZmElement> {
        let e = ZmElement { a, b };
        if self.is_member(&e) {
            Ok(e)
        } else {
            Err(Error::ElementOutOfRange)
        }
    }

    pub fn x(&self, i: usize) -> ZmElement {
        let mut a = vec![0; self.m];
        a[i] = 1;
        ZmElement { a, b: 0 }
    }

    pub fn y(&self) -> ZmElement {
        ZmElement { a: vec![0; self.m], b: 1 }
    }

    /// Target moduli of `pi`: `p^r` repeated `m` times, then `p`.
    pub fn pi_moduli(&self) -> Vec<u64> {
        let mut v = vec![self.n; self.m];
        v.push(self.p);
        v
    }

    fn alpha_pow(&self, b: u64) -> u64 {
        crate::algebra::pow_mod(self.alpha, b, self.n)
    }
}

impl FiniteGroup for ZmGroupSpec {
    type Elem = ZmElement;

    fn identity(&self) -> ZmElement {
        ZmElement { a: vec![0; self.m], b: 0 }
    }

    fn op(&self, x: &ZmElement, y: &ZmElement) -> ZmElement {
        let t = self.alpha_pow(x.b);
        let a = x
            .a
            .iter()
            .zip(&y.a)
            .map(|(&u, &v)| (u + crate::algebra::mul_mod(t, v, self.n)) % self.n)
            .collect();
        ZmElement { a, b: (x.b + y.b) % self.p }
    }

    fn inv(&self, x: &ZmElement) -> ZmElement {
        let nb = (self.p - x.b) % self.p;
        let t = self.alpha_pow(nb);
        let a = x
            .a
            .iter()
            .map(|&u| (self.n - crate::algebra::mul_mod(t, u, self.n)) % self.n)
            .collect();
        ZmElement { a, b: nb }
    }

    fn order(&self) -> u64 {
        self.n.pow(self.m as u32) * self.p
    }

    fn index_of(&self, e: &ZmElement) -> u64 {
        if e.a.len() != self.m {
            return u64::MAX;
        }
        e.a.iter().fold(0u64, |acc, &x| acc.saturating_mul(self.n).saturating_add(x)).saturating_mul(self.p).saturating_add(e.b)
    }

    fn element_at(&self, index: u64) -> ZmElement {
        let b = index % self.p;
        let mut rest = index / self.p;
        let mut a = vec![0; self.m];
        for slot in a.iter_mut().rev() {
            *slot = rest % self.n;
            rest /= self.n;
        }
        ZmElement { a, b }
    }

    fn generators(&self) -> Vec<ZmElement> {
        let mut g: Vec<ZmElement> = (0..self.m).map(|i| self.x(i)).collect();
        g.push(self.y());
        g
    }
}

/// Handles in the form the solver takes: generators of `A` and a generator
/// of the complement `<y>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZmInputs {
    pub a_generators: Vec<OpaqueHandle>,
    pub y_generator: OpaqueHandle,
}

/// `pi^{-1}` data: a minimal generating set of `A` and the `y` handle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiMap {
    pub gens: Vec<OpaqueHandle>,
    pub y: OpaqueHandle,
    pub moduli: Vec<u64>,
}

impl PiMap {
    fn bases(&self) -> Vec<OpaqueHandle> {
        let mut b = self.gens.clone();
        b.push(self.y);
        b
    }

    fn oracle<'a>(&self, inst: &'a HiddenInstance<ZmGroupSpec>) -> Result<GridOracle<'a, ZmGroupSpec>> {
        GridOracle::new(inst, self.bases(), self.moduli.clone())
    }
}

/// Builds a hidden instance of `Z_{p^r}^m x| Z_p` and the solver inputs.
///
/// Canonical inputs are `x_1, ..., x_m` and `y`. Scrambled inputs are
/// `m` to `m + 2` random elements generating `A`, plus `y^c` for a random
/// `c != 0`.
pub fn make_instance(
    group: ZmGroupSpec,
    h: &ElementSet<ZmElement>,
    config: &InstanceConfig,
) -> Result<(HiddenInstance<ZmGroupSpec>, ZmInputs)> {
    let (a_elems, y_elem) = match config.generators {
        GeneratorPolicy::Canonical => ((0..group.m).map(|i| group.x(i)).collect::<Vec<_>>(), group.y()),
        GeneratorPolicy::Scrambled => scrambled_inputs(&group, config.seed),
    };
    let (inst, _) = make_hidden_instance(group, h, config)?;
    let hs = inst.harness();
    let inputs = ZmInputs {
        a_generators: a_elems.iter().map(|e| hs.encode(e, 0)).collect(),
        y_generator: hs.encode(&y_elem, 0),
    };
    Ok((inst, inputs))
}

fn scrambled_inputs(group: &ZmGroupSpec, seed: u64) -> (Vec<ZmElement>, ZmElement) {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7a_6d1c_0de5);
    let a_order = group.n.pow(group.m as u32);
    loop {
        let k = rng.gen_range(group.m..=group.m + 2);
        let gens: Vec<ZmElement> = (0..k)
            .map(|_| ZmElement { a: (0..group.m).map(|_| rng.gen_range(0..group.n)).collect(), b: 0 })
            .collect();
        if closure(group, &gens).len() as u64 == a_order {
            let c = rng.gen_range(1..group.p);
            return (gens, ZmElement { a: vec![0; group.m], b: c });
        }
    }
}

fn require_unique(inst: &HiddenInstance<ZmGroupSpec>) -> Result<()> {
    if inst.blackbox().salt_count() != 1 {
        return Err(Error::UniqueEncodingRequired);
    }
    Ok(())
}

/// Reduces generators of `A` to `m` generators, via the relation lattice of
/// the inputs and its Smith normal form.
pub fn minimal_generating_set(
    inst: &HiddenInstance<ZmGroupSpec>,
    a_gens: &[OpaqueHandle],
    opts: &SolverOptions,
) -> Result<(Vec<OpaqueHandle>, AbelianSolution)> {
    require_unique(inst)?;
    let group = inst.blackbox().group();
    let (n, m) = (group.n, group.m);
    if a_gens.is_empty() {
        return Err(Error::InvalidInput("no generators for the normal factor".into()));
    }
    let s = a_gens.len();
    let oracle = GridOracle::new(inst, a_gens.to_vec(), vec![n; s])?.with_source(LabelSource::Encoding);
    let sol = abelian_hsp_solve(&oracle, opts)?;

    let mut rows: Vec<Vec<i128>> = sol.lattice.gens().iter().map(|g| g.iter().map(|&x| x as i128).collect()).collect();
    for i in 0..s {
        let mut row = vec![0i128; s];
        row[i] = n as i128;
        rows.push(row);
    }
    let snf = smith_normal_form(&rows, s)?;
    let full: Vec<usize> = (0..s).filter(|&i| snf.diagonal[i] != 1).collect();
    let shape_ok = full.len() == m && full.iter().all(|&i| snf.diagonal[i] == n as i128);
    if !shape_ok {
        return Err(Error::InvalidInput(format!(
            "the given handles do not generate Z_{n}^{m} (invariant factors {:?})",
            snf.diagonal
        )));
    }
    let gens = full
        .iter()
        .map(|&i| {
            let coeffs: Vec<u64> = snf.col_inverse[i].iter().map(|&c| crate::algebra::reduce_signed(c, n)).collect();
            oracle.point(&coeffs)
        })
        .collect::<Result<_>>()?;
    Ok((gens, sol))
}

/// Handle of `g_1^{a_1} ... g_m^{a_m} y^b`.
pub fn pi_inverse(inst: &HiddenInstance<ZmGroupSpec>, pi: &PiMap, coords: &[u64]) -> Result<OpaqueHandle> {
    pi.oracle(inst)?.point(coords)
}

/// Fourier sampling of `f o pi^{-1}`; the lattice is `pi(H)`.
pub fn reduce_and_solve(inst: &HiddenInstance<ZmGroupSpec>, pi: &PiMap, opts: &SolverOptions) -> Result<AbelianSolution> {
    abelian_hsp_solve(&pi.oracle(inst)?, opts)
}

/// Draws `count` uniform elements of `lattice`, maps them through
/// `pi^{-1}` and keeps those with `f(g) = f(e)`. Returns the surviving
/// handles with their coordinates.
pub fn pullback_generators(
    inst: &HiddenInstance<ZmGroupSpec>,
    pi: &PiMap,
    lattice: &Lattice,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(OpaqueHandle, Vec<u64>)>> {
    let oracle = pi.oracle(inst)?;
    let sampler = LatticeSampler::new(lattice);
    let e = inst.blackbox().identity_from(&pi.y)?;
    let fe = inst.f(&e)?;
    let mut out = Vec::new();
    for _ in 0..count {
        let c = sampler.sample(rng);
        let h = oracle.point(&c)?;
        if inst.f(&h)? == fe {
            out.push((h, c));
        }
    }
    Ok(out)
}

/// Checks the input shape: `y` has order `p`, does not commute with `g_1`,
/// and the `g_i` commute pairwise.
fn validate_inputs(inst: &HiddenInstance<ZmGroupSpec>, gens: &[OpaqueHandle], y: &OpaqueHandle) -> Result<()> {
    let bb = inst.blackbox();
    let p = bb.group().p as i64;
    let e = bb.identity_from(y)?;
    let bad = |why: &str| Err(Error::InvalidInput(format!("inputs are not of the required form: {why}")));
    if bb.oracle_eq(y, &e)? || !bb.oracle_eq(&bb.oracle_pow(y, p)?, &e)? {
        return bad("the complement generator must have order p");
    }
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !bb.oracle_eq(&bb.oracle_mul(a, b)?, &bb.oracle_mul(b, a)?)? {
                return bad("generators of the normal factor do not commute");
            }
        }
    }
    if bb.oracle_eq(&bb.oracle_mul(&gens[0], y)?, &bb.oracle_mul(y, &gens[0])?)? {
        return bad("the complement generator lies in the normal factor");
    }
    Ok(())
}

/// Full pipeline: minimal generating set, `pi`, Abelian solve, pull-back.
pub fn solve(inst: &HiddenInstance<ZmGroupSpec>, inputs: &ZmInputs, opts: &SolverOptions) -> Result<Solution> {
    let start = Instant::now();
    let before = inst.query_stats();
    require_unique(inst)?;
    let mut report = SolveReport::new(opts);
    let (gens, mgs) = minimal_generating_set(inst, &inputs.a_generators, &opts.derive(1))?;
    report.absorb(&mgs);
    validate_inputs(inst, &gens, &inputs.y_generator)?;
    let pi = PiMap { gens, y: inputs.y_generator, moduli: inst.blackbox().group().pi_moduli() };
    let sol = reduce_and_solve(inst, &pi, &opts.derive(2))?;
    report.absorb(&sol);
    report.branches.push("pi");

    let target = sol.lattice.clone();
    let count = target.gens().len() + 4;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.derive(3).seed);
    let e = inst.blackbox().identity_from(&pi.y)?;
    let mut survivors: Vec<OpaqueHandle> = Vec::new();
    let mut span = LatticeBuilder::new(&pi.moduli)?;
    for _ in 0..PULLBACK_ROUNDS {
        for (h, c) in pullback_generators(inst, &pi, &target, count, &mut rng)? {
            if !inst.blackbox().oracle_eq(&h, &e)? {
                survivors.push(h);
            }
            span.push(&c)?;
        }
        if span.clone().finish().same_subgroup(&target) {
            break;
        }
    }
    report.queries = inst.query_stats().since(&before);
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Solution { generators: survivors, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::Encoding;
    use crate::qsim::Backend;
    use crate::reference::{brute_force_hidden_subgroup, enumerate_all_subgroups};
    use std::collections::BTreeSet;

    fn opts(seed: u64) -> SolverOptions {
        SolverOptions { backend: Backend::Statevector, delta: 0.01, seed }
    }

    fn el(a: &[u64], b: u64) -> ZmElement {
        ZmElement { a: a.to_vec(), b }
    }

    fn instance(p: u64, r: u32, m: usize, gens: &[ZmElement], config: InstanceConfig) -> (HiddenInstance<ZmGroupSpec>, ZmInputs) {
        let g = ZmGroupSpec::new(p, r, m).unwrap();
        let h = closure(&g, gens);
        make_instance(g, &h, &config).unwrap()
    }

    #[test]
    fn group_axioms_and_indexing() {
        let g = ZmGroupSpec::new(3, 2, 2).unwrap();
        assert_eq!(g.order(), 243);
        let all = g.all_elements();
        for (i, x) in all.iter().enumerate() {
            assert_eq!(g.index_of(x), i as u64);
            assert_eq!(g.op(x, &g.inv(x)), g.identity());
        }
        let y = g.y();
        let x1 = g.x(0);
        assert_eq!(g.op(&y, &x1), g.op(&g.pow(&x1, 4), &y));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn mixed_power_identity() {
        // (g y)^c = g^{c(c-1)/2 p^{r-1}} g^c y^c
        for (p, r, m) in [(3u64, 2u32, 1usize), (3, 2, 2), (5, 2, 1), (2, 3, 1), (3, 3, 1)] {
            let g = ZmGroupSpec::new(p, r, m).unwrap();
            for idx in (0..g.order()).step_by(7) {
                let mut a = g.element_at(idx);
                a.b = 0;
                let gy = g.op(&a, &g.y());
                for c in 0..p as i64 {
                    let lhs = g.pow(&gy, c);
                    let e1 = c * (c - 1) / 2 * (p.pow(r - 1) as i64);
                    let rhs = g.op(&g.op(&g.pow(&a, e1), &g.pow(&a, c)), &g.pow(&g.y(), c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn minimal_generating_set_examples() {
        let g = ZmGroupSpec::new(3, 2, 2).unwrap();
        let (inst, inputs) = instance(3, 2, 2, &[], InstanceConfig::default());
        let (mgs, _) = minimal_generating_set(&inst, &inputs.a_generators, &opts(1)).unwrap();
        assert_eq!(mgs.len(), 2);
        let dec: Vec<ZmElement> = mgs.iter().map(|h| inst.harness().decode(h).unwrap()).collect();
        assert_eq!(closure(&g, &dec).len(), 81);

        let hs = inst.harness();
        let odd: Vec<OpaqueHandle> = [el(&[1, 1], 0), el(&[0, 1], 0), el(&[1, 2], 0)].iter().map(|e| hs.encode(e, 0)).collect();
        let (mgs, _) = minimal_generating_set(&inst, &odd, &opts(2)).unwrap();
        assert_eq!(mgs.len(), 2);
        let dec: Vec<ZmElement> = mgs.iter().map(|h| hs.decode(h).unwrap()).collect();
        assert_eq!(closure(&g, &dec).len(), 81);

        let g1 = ZmGroupSpec::new(3, 2, 1).unwrap();
        let (inst, _) = instance(3, 2, 1, &[], InstanceConfig::default());
        let hs = inst.harness();
        let two = vec![hs.encode(&el(&[1], 0), 0), hs.encode(&el(&[3], 0), 0)];
        let (mgs, _) = minimal_generating_set(&inst, &two, &opts(3)).unwrap();
        assert_eq!(mgs.len(), 1);
        let dec = hs.decode(&mgs[0]).unwrap();
        assert_eq!(closure(&g1, &[dec]).len(), 9);

        let short = vec![hs.encode(&el(&[3], 0), 0)];
        assert!(matches!(minimal_generating_set(&inst, &short, &opts(4)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn pi_is_bijective() {
        let (inst, inputs) = instance(3, 2, 2, &[], InstanceConfig::default());
        let pi = PiMap { gens: inputs.a_generators.clone(), y: inputs.y_generator, moduli: vec![9, 9, 3] };
        let zero = pi_inverse(&inst, &pi, &[0, 0, 0]).unwrap();
        assert_eq!(inst.harness().decode(&zero).unwrap(), el(&[0, 0], 0));
        let mut seen = BTreeSet::new();
        for i in 0..243 {
            let c = crate::qsim::index_row(&pi.moduli, i);
            seen.insert(inst.harness().decode(&pi_inverse(&inst, &pi, &c).unwrap()).unwrap());
        }
        assert_eq!(seen.len(), 243);

        let (inst, inputs) = instance(3, 2, 1, &[], InstanceConfig::default());
        let pi = PiMap { gens: inputs.a_generators.clone(), y: inputs.y_generator, moduli: vec![9, 3] };
        let h = pi_inverse(&inst, &pi, &[1, 1]).unwrap();
        assert_eq!(inst.harness().decode(&h).unwrap(), el(&[1], 1));
    }

    #[test]
    fn reduce_examples() {
        let g = ZmGroupSpec::new(3, 2, 1).unwrap();
        let cases: Vec<(Vec<ZmElement>, Lattice)> = vec![
            (vec![g.x(0)], Lattice::new(vec![9, 3], vec![vec![1, 0]]).unwrap()),
            (vec![el(&[3], 1)], Lattice::new(vec![9, 3], vec![vec![3, 1]]).unwrap()),
            (vec![], Lattice::trivial(vec![9, 3]).unwrap()),
        ];
        for (k, (gens, expect)) in cases.into_iter().enumerate() {
            let (inst, inputs) = instance(3, 2, 1, &gens, InstanceConfig::default());
            let pi = PiMap { gens: inputs.a_generators.clone(), y: inputs.y_generator, moduli: vec![9, 3] };
            let sol = reduce_and_solve(&inst, &pi, &opts(k as u64)).unwrap();
            assert!(sol.lattice.same_subgroup(&expect), "{:?}", sol.lattice);
        }
    }

    #[test]
    fn pullback_examples() {
        let (inst, inputs) = instance(3, 2, 1, &[el(&[3], 1)], InstanceConfig::default());
        let g = inst.blackbox().group().clone();
        let pi = PiMap { gens: inputs.a_generators.clone(), y: inputs.y_generator, moduli: vec![9, 3] };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let l = Lattice::new(vec![9, 3], vec![vec![3, 1]]).unwrap();
        let got = pullback_generators(&inst, &pi, &l, 6, &mut rng).unwrap();
        let elems: Vec<ZmElement> = got.iter().map(|(h, _)| inst.harness().decode(h).unwrap()).collect();
        assert_eq!(closure(&g, &elems).len(), 3);

        let t = Lattice::trivial(vec![9, 3]).unwrap();
        for (h, _) in pullback_generators(&inst, &pi, &t, 5, &mut rng).unwrap() {
            assert_eq!(inst.harness().decode(&h).unwrap(), g.identity());
        }
    }

    #[test]
    fn uniform_pullback_coordinates() {
        let l = Lattice::new(vec![3, 3], vec![vec![1, 0]]).unwrap();
        let s = LatticeSampler::new(&l);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut counts = std::collections::BTreeMap::new();
        for _ in 0..10_000 {
            *counts.entry(s.sample(&mut rng)).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 3);
        for &c in counts.values() {
            assert!((3033..=3633).contains(&c), "{c}");
        }
    }

    fn check_all_subgroups(p: u64, r: u32, m: usize, config: InstanceConfig) {
        let g = ZmGroupSpec::new(p, r, m).unwrap();
        for (k, h) in enumerate_all_subgroups(&g, 10_000).unwrap().into_iter().enumerate() {
            let (inst, inputs) = make_instance(g.clone(), &h, &InstanceConfig { seed: k as u64, ..config }).unwrap();
            let sol = solve(&inst, &inputs, &opts(k as u64)).unwrap();
            let found = closure(&g, &sol.reveal_elements(&inst).unwrap());
            let truth = brute_force_hidden_subgroup(&g, |x| inst.harness().label_of(x)).unwrap();
            assert_eq!(found, truth, "subgroup #{k}");
        }
    }

    #[test]
    fn solves_all_subgroups_m1() {
        check_all_subgroups(3, 2, 1, InstanceConfig::default());
    }

    #[test]
    fn solves_all_subgroups_m2_scrambled() {
        check_all_subgroups(3, 2, 2, InstanceConfig { generators: GeneratorPolicy::Scrambled, ..Default::default() });
    }

    #[test]
    fn salted_encoding_is_rejected() {
        let g = ZmGroupSpec::new(3, 2, 1).unwrap();
        let h = closure(&g, &[]);
        let config = InstanceConfig { encoding: Encoding::Salted(2), ..Default::default() };
        let (inst, inputs) = make_instance(g, &h, &config).unwrap();
        assert_eq!(solve(&inst, &inputs, &opts(0)), Err(Error::UniqueEncodingRequired));
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        let (inst, inputs) = instance(3, 2, 1, &[], InstanceConfig::default());
        let hs = inst.harness();
        let bad = ZmInputs { a_generators: inputs.a_generators.clone(), y_generator: hs.encode(&el(&[3], 0), 0) };
        assert!(matches!(solve(&inst, &bad, &opts(0)), Err(Error::InvalidInput(_))));
        assert!(ZmGroupSpec::new(2, 2, 1).is_err());
    }
}
