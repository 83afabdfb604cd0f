//! Hidden subgroups of `P_{p,r}` from black-box oracles.
//!
//! The solver finds a generator `X` of order `p^r` and a generator `Y` that
//! does not commute with it, then runs two Abelian Fourier-sampling branches:
//!
//! * the M-branch, for `H` not containing `<x^p>`. Such `H` lies in
//!   `<x^p, y>`, an Abelian group generated by `X^p` and a companion element
//!   `C = X^{-l} Y` with nonzero `y`-part. The exponent `l` comes from the
//!   periodicity lattice of `(u, v) -> f((X^p)^u (Y^p)^v)`.
//! * the quotient branch, for `H` containing `<x^p>`. Then `f` factors through
//!   `G / <x^p>`, which is `Z_p x Z_p` on `(u, v) -> X^u Y^v`.
//!
//! Every candidate is filtered by `f(g) = f(e)`, so the survivors always lie
//! in `H`; between them the branches produce a generating set.

use std::time::Instant;

use crate::algebra::Lattice;
use crate::blackbox::{HiddenInstance, OpaqueHandle, QueryStats};
use crate::error::{Error, Result};
use crate::qsim::{abelian_hsp_solve, AbelianSolution, Backend, GridOracle, SolverOptions};
use crate::sdp_group::{FiniteGroup, GroupSpec, SubgroupDesc};

/// `X` of order `p^r` and `Y` with `XY != YX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecialPair {
    pub x: OpaqueHandle,
    pub y: OpaqueHandle,
}

/// What the periodicity lattice of `(u, v) -> f((X^p)^u (Y^p)^v)` says about
/// `l` with `(X^p)^l = Y^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FindLResult {
    pub lattice: Lattice,
    /// `l mod p^{r-1}`, when fully determined.
    pub l: Option<u64>,
    /// `l mod p`, when at least that much is determined.
    pub l_mod_p: Option<u64>,
    /// `l` is known modulo this power of `p`; `1` means nothing is known.
    pub precision: u64,
    /// A representative of the known residue class.
    pub l_lift: u64,
    pub solve: AbelianSolution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct YPrime {
    /// `X^{-l} Y`.
    pub yprime: OpaqueHandle,
    /// The element paired with `X^p` in the M-branch. Equal to `yprime` for
    /// odd `p`; for `p = 2` it is `(X^{2^{r-2}})^{-k} Y'` for the first `k`
    /// whose square is trivial (or, failing that, lies in `H`).
    pub companion: OpaqueHandle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchOutcome {
    pub candidates: Vec<OpaqueHandle>,
    pub solve: Option<AbelianSolution>,
}

/// Cost and diagnostics of one solve.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub queries: QueryStats,
    pub backend: Backend,
    pub delta: f64,
    /// Sampling rounds summed over the Abelian solves.
    pub rounds: u32,
    pub samples: usize,
    pub low_confidence: bool,
    pub branches: Vec<&'static str>,
    /// Precision to which `l` was found (hsp_p only).
    pub l_precision: Option<u64>,
    pub wall_ms: f64,
}

impl SolveReport {
    pub(crate) fn new(opts: &SolverOptions) -> Self {
        Self {
            queries: QueryStats::default(),
            backend: opts.backend,
            delta: opts.delta,
            rounds: 0,
            samples: 0,
            low_confidence: false,
            branches: Vec::new(),
            l_precision: None,
            wall_ms: 0.0,
        }
    }

    pub(crate) fn absorb(&mut self, s: &AbelianSolution) {
        self.backend = s.backend;
        self.rounds += s.rounds;
        self.samples += s.samples;
        self.low_confidence |= s.low_confidence;
    }
}

/// Handles generating the recovered subgroup.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub generators: Vec<OpaqueHandle>,
    pub report: SolveReport,
}

impl Solution {
    /// Decodes the generators through the harness.
    pub fn reveal_elements<G: FiniteGroup>(&self, inst: &HiddenInstance<G>) -> Result<Vec<G::Elem>> {
        let hs = inst.harness();
        self.generators.iter().map(|h| hs.decode(h)).collect()
    }

    pub fn reveal(&self, inst: &HiddenInstance<GroupSpec>) -> Result<SubgroupDesc> {
        Ok(SubgroupDesc::Generators(self.reveal_elements(inst)?))
    }
}

fn params(inst: &HiddenInstance<GroupSpec>) -> Result<(u64, u32)> {
    let g = inst.blackbox().group();
    g.require_p_group()
        .map_err(|_| Error::InvalidGroup(format!(
            "solver needs P_{{p,r}} with (p, r) != (2, 2); got p={} q={} r={} alpha={}",
            g.p(), g.q(), g.r(), g.alpha()
        )))?;
    Ok((g.p(), g.r()))
}

pub fn find_special_pair(inst: &HiddenInstance<GroupSpec>, gens: &[OpaqueHandle]) -> Result<SpecialPair> {
    let (p, r) = params(inst)?;
    let bb = inst.blackbox();
    let first = gens.first().ok_or(Error::InvalidGeneratingSet)?;
    let e = bb.identity_from(first)?;
    let low = p.pow(r - 1) as i64;
    let mut x = None;
    for g in gens {
        let g_low = bb.oracle_pow(g, low)?;
        if bb.oracle_eq(&g_low, &e)? {
            continue;
        }
        if bb.oracle_eq(&bb.oracle_pow(&g_low, p as i64)?, &e)? {
            x = Some(*g);
            break;
        }
    }
    let x = x.ok_or(Error::InvalidGeneratingSet)?;
    for g in gens {
        let xy = bb.oracle_mul(&x, g)?;
        let yx = bb.oracle_mul(g, &x)?;
        if !bb.oracle_eq(&xy, &yx)? {
            return Ok(SpecialPair { x, y: *g });
        }
    }
    Err(Error::InvalidGeneratingSet)
}

pub fn find_l(inst: &HiddenInstance<GroupSpec>, pair: &SpecialPair, opts: &SolverOptions) -> Result<FindLResult> {
    let (p, r) = params(inst)?;
    let bb = inst.blackbox();
    let n = p.pow(r - 1);
    let xp = bb.oracle_pow(&pair.x, p as i64)?;
    let yp = bb.oracle_pow(&pair.y, p as i64)?;
    let oracle = GridOracle::new(inst, vec![xp, yp], vec![n, n])?;
    let solve = abelian_hsp_solve(&oracle, opts)?;
    let lattice = solve.lattice.clone();

    // Reorder to (v, u): the echelon row with a v pivot of 1 reads (1, u0),
    // and the u column's pivot d gives the precision, with l = -u0 mod d.
    let swapped: Vec<Vec<u64>> = lattice.gens().iter().map(|g| vec![g[1], g[0]]).collect();
    let swapped = Lattice::new(vec![n, n], swapped)?.canonicalize();
    let mut u0 = None;
    let mut d = n;
    for row in swapped.gens() {
        if row[0] != 0 {
            if row[0] == 1 {
                u0 = Some(row[1]);
            }
        } else {
            d = row[1];
        }
    }
    let (precision, lift) = match u0 {
        Some(u0) => (d, (d - u0 % d) % d),
        None => (1, 0),
    };
    Ok(FindLResult {
        lattice,
        l: (precision == n).then_some(lift),
        l_mod_p: (precision >= p).then_some(lift % p),
        precision,
        l_lift: lift,
        solve,
    })
}

pub fn build_yprime(inst: &HiddenInstance<GroupSpec>, pair: &SpecialPair, fl: &FindLResult) -> Result<YPrime> {
    let (p, r) = params(inst)?;
    if fl.precision == 1 {
        return Err(Error::YPrimeUnavailable);
    }
    let bb = inst.blackbox();
    let x_neg_l = bb.oracle_pow(&pair.x, -(fl.l_lift as i64))?;
    let yprime = bb.oracle_mul(&x_neg_l, &pair.y)?;
    if p != 2 {
        return Ok(YPrime { yprime, companion: yprime });
    }
    let e = bb.identity_from(&pair.x)?;
    let step = bb.oracle_pow(&pair.x, -(1i64 << (r - 2)))?;
    let mut ws = Vec::with_capacity(4);
    let mut w = yprime;
    for _ in 0..4 {
        ws.push(w);
        w = bb.oracle_mul(&step, &w)?;
    }
    let squares: Vec<OpaqueHandle> = ws.iter().map(|w| bb.oracle_mul(w, w)).collect::<Result<_>>()?;
    for (w, sq) in ws.iter().zip(&squares) {
        if bb.oracle_eq(sq, &e)? {
            return Ok(YPrime { yprime, companion: *w });
        }
    }
    let fe = inst.f(&e)?;
    for (w, sq) in ws.iter().zip(&squares) {
        if inst.f(sq)? == fe {
            return Ok(YPrime { yprime, companion: *w });
        }
    }
    Err(Error::YPrimeUnavailable)
}

/// Abelian solve over `<X^p, C>`, as `(u, v) -> (X^p)^u C^v` on
/// `Z_{p^{r-1}} x Z_p`. Returns the lifted lattice generators and `C^p`.
pub fn solve_branch_m(
    inst: &HiddenInstance<GroupSpec>,
    pair: &SpecialPair,
    yp: &YPrime,
    opts: &SolverOptions,
) -> Result<BranchOutcome> {
    let (p, r) = params(inst)?;
    let bb = inst.blackbox();
    let xp = bb.oracle_pow(&pair.x, p as i64)?;
    let oracle = GridOracle::new(inst, vec![xp, yp.companion], vec![p.pow(r - 1), p])?;
    let solve = abelian_hsp_solve(&oracle, opts)?;
    let mut candidates: Vec<OpaqueHandle> =
        solve.lattice.gens().iter().map(|g| oracle.point(g)).collect::<Result<_>>()?;
    candidates.push(bb.oracle_pow(&yp.companion, p as i64)?);
    Ok(BranchOutcome { candidates, solve: Some(solve) })
}

/// Abelian solve over `G / <x^p>` when `x^p` is in `H`. Returns the lifted
/// generators and `X^p`, or nothing when `f(X^p) != f(e)`.
pub fn solve_branch_quotient(
    inst: &HiddenInstance<GroupSpec>,
    pair: &SpecialPair,
    opts: &SolverOptions,
) -> Result<BranchOutcome> {
    let (p, _) = params(inst)?;
    let bb = inst.blackbox();
    let e = bb.identity_from(&pair.x)?;
    let xp = bb.oracle_pow(&pair.x, p as i64)?;
    if inst.f(&xp)? != inst.f(&e)? {
        return Ok(BranchOutcome { candidates: Vec::new(), solve: None });
    }
    let oracle = GridOracle::new(inst, vec![pair.x, pair.y], vec![p, p])?;
    let solve = abelian_hsp_solve(&oracle, opts)?;
    let mut candidates: Vec<OpaqueHandle> =
        solve.lattice.gens().iter().map(|g| oracle.point(g)).collect::<Result<_>>()?;
    candidates.push(xp);
    Ok(BranchOutcome { candidates, solve: Some(solve) })
}

/// Recovers the hidden subgroup from generator handles of `P_{p,r}`.
pub fn solve(inst: &HiddenInstance<GroupSpec>, gens: &[OpaqueHandle], opts: &SolverOptions) -> Result<Solution> {
    let start = Instant::now();
    let before = inst.query_stats();
    params(inst)?;
    let bb = inst.blackbox();
    let mut report = SolveReport::new(opts);

    let pair = find_special_pair(inst, gens)?;
    let fl = find_l(inst, &pair, &opts.derive(1))?;
    report.absorb(&fl.solve);
    report.l_precision = Some(fl.precision);
    let mut candidates = Vec::new();
    match build_yprime(inst, &pair, &fl) {
        Ok(yp) => {
            let m = solve_branch_m(inst, &pair, &yp, &opts.derive(2))?;
            if let Some(s) = &m.solve {
                report.absorb(s);
            }
            report.branches.push("m");
            candidates.extend(m.candidates);
        }
        Err(Error::YPrimeUnavailable) => {}
        Err(e) => return Err(e),
    }
    let q = solve_branch_quotient(inst, &pair, &opts.derive(3))?;
    if let Some(s) = &q.solve {
        report.absorb(s);
        report.branches.push("quotient");
    }
    candidates.extend(q.candidates);

    let e = bb.identity_from(&pair.x)?;
    let fe = inst.f(&e)?;
    let mut generators = Vec::new();
    for c in candidates {
        if inst.f(&c)? == fe && !bb.oracle_eq(&c, &e)? {
            generators.push(c);
        }
    }
    report.queries = inst.query_stats().since(&before);
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Solution { generators, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::{make_hidden_instance, Encoding, GeneratorPolicy, InstanceConfig, SaltPolicy};
    use crate::reference::{brute_force_hidden_subgroup, closure};
    use crate::sdp_group::Element;

    fn e(a: u64, b: u64) -> Element {
        Element::new(a, b)
    }

    fn inst(p: u64, r: u32, h: SubgroupDesc, config: InstanceConfig) -> (HiddenInstance<GroupSpec>, Vec<OpaqueHandle>) {
        let g = GroupSpec::p_group(p, r).unwrap();
        let set = h.to_elements(&g).unwrap();
        make_hidden_instance(g, &set, &config).unwrap()
    }

    fn handles(inst: &HiddenInstance<GroupSpec>, elems: &[Element]) -> Vec<OpaqueHandle> {
        elems.iter().map(|x| inst.harness().encode(x, 0)).collect()
    }

    fn opts(seed: u64) -> SolverOptions {
        SolverOptions { backend: Backend::Statevector, delta: 0.01, seed }
    }

    fn check_recovers(inst: &HiddenInstance<GroupSpec>, gens: &[OpaqueHandle], seed: u64) {
        let g = inst.blackbox().group();
        let sol = solve(inst, gens, &opts(seed)).unwrap();
        let found = sol.reveal(inst).unwrap().to_elements(g).unwrap();
        let truth = brute_force_hidden_subgroup(g, |x| inst.harness().label_of(x)).unwrap();
        assert_eq!(found, truth);
        let fe = inst.harness().label_of(&e(0, 0));
        for h in &sol.generators {
            assert_eq!(inst.harness().label_of(&inst.harness().decode(h).unwrap()), fe);
        }
    }

    #[test]
    fn special_pair_examples() {
        let (i, _) = inst(3, 2, SubgroupDesc::XPower(2), InstanceConfig::default());
        let hs = handles(&i, &[e(1, 0), e(0, 1)]);
        let pair = find_special_pair(&i, &hs).unwrap();
        assert_eq!((pair.x, pair.y), (hs[0], hs[1]));
        let hs = handles(&i, &[e(1, 1), e(2, 0)]);
        let pair = find_special_pair(&i, &hs).unwrap();
        assert_eq!((pair.x, pair.y), (hs[0], hs[1]));
        let hs = handles(&i, &[e(1, 0), e(2, 0)]);
        assert_eq!(find_special_pair(&i, &hs), Err(Error::InvalidGeneratingSet));
        let hs = handles(&i, &[e(3, 0), e(0, 1)]);
        assert_eq!(find_special_pair(&i, &hs), Err(Error::InvalidGeneratingSet));
    }

    #[test]
    fn special_pair_order_checks_hold() {
        let (i, gens) = inst(2, 4, SubgroupDesc::XPower(4), InstanceConfig { generators: GeneratorPolicy::Scrambled, seed: 5, ..Default::default() });
        let pair = find_special_pair(&i, &gens).unwrap();
        let g = i.blackbox().group();
        let x = i.harness().decode(&pair.x).unwrap();
        assert_eq!(g.order_of(&x).unwrap(), 16);
        let y = i.harness().decode(&pair.y).unwrap();
        assert_ne!(g.compose(&x, &y).unwrap(), g.compose(&y, &x).unwrap());
    }

    #[test]
    fn find_l_examples() {
        let (i, _) = inst(3, 2, SubgroupDesc::CyclicXY { t: 1, j: 1 }, InstanceConfig::default());
        let hs = handles(&i, &[e(1, 1), e(2, 0)]);
        let pair = SpecialPair { x: hs[0], y: hs[1] };
        let fl = find_l(&i, &pair, &opts(1)).unwrap();
        assert_eq!(fl.lattice, Lattice::from_signed(vec![3, 3], &[vec![2, -1]]).unwrap().canonicalize());
        assert_eq!(fl.l, Some(2));

        let (i, _) = inst(3, 2, SubgroupDesc::XPower(0), InstanceConfig::default());
        let hs = handles(&i, &[e(1, 1), e(2, 0)]);
        let fl = find_l(&i, &SpecialPair { x: hs[0], y: hs[1] }, &opts(2)).unwrap();
        assert_eq!(fl.lattice.order(), 9);
        assert_eq!((fl.l, fl.l_mod_p, fl.precision), (None, None, 1));

        let (i, _) = inst(2, 3, SubgroupDesc::XPowerY(3), InstanceConfig::default());
        let hs = handles(&i, &[e(1, 1), e(1, 0)]);
        let pair = SpecialPair { x: hs[0], y: hs[1] };
        let fl = find_l(&i, &pair, &opts(3)).unwrap();
        let l = fl.l.unwrap();
        let g = i.blackbox().group();
        let x2 = g.power(&e(1, 1), 2).unwrap();
        let y2 = g.power(&e(1, 0), 2).unwrap();
        assert_eq!(g.power(&x2, l as i64).unwrap(), y2);
    }

    #[test]
    fn yprime_examples() {
        let (i, _) = inst(3, 2, SubgroupDesc::CyclicXY { t: 1, j: 1 }, InstanceConfig::default());
        let g = i.blackbox().group().clone();
        let hs = handles(&i, &[e(1, 1), e(2, 0)]);
        let pair = SpecialPair { x: hs[0], y: hs[1] };
        let fl = find_l(&i, &pair, &opts(1)).unwrap();
        let yp = build_yprime(&i, &pair, &fl).unwrap();
        let got = i.harness().decode(&yp.yprime).unwrap();
        let expect = g.compose(&g.power(&e(1, 1), -2).unwrap(), &e(2, 0)).unwrap();
        assert_eq!(got, expect);
        assert_eq!(got.b, 1);
        assert_eq!(g.power(&got, 3).unwrap(), e(0, 0));

        let (i, _) = inst(2, 3, SubgroupDesc::XPowerY(3), InstanceConfig::default());
        let g = i.blackbox().group().clone();
        let hs = handles(&i, &[e(1, 1), e(1, 0)]);
        let pair = SpecialPair { x: hs[0], y: hs[1] };
        let fl = find_l(&i, &pair, &opts(1)).unwrap();
        let yp = build_yprime(&i, &pair, &fl).unwrap();
        let c = i.harness().decode(&yp.companion).unwrap();
        assert_eq!(g.power(&c, 2).unwrap(), e(0, 0));
        assert_eq!(c.b, 1);

        let (i, _) = inst(3, 2, SubgroupDesc::XPower(0), InstanceConfig::default());
        let hs = handles(&i, &[e(1, 0), e(0, 1)]);
        let pair = SpecialPair { x: hs[0], y: hs[1] };
        let fl = find_l(&i, &pair, &opts(1)).unwrap();
        assert_eq!(build_yprime(&i, &pair, &fl), Err(Error::YPrimeUnavailable));
    }

    #[test]
    fn branch_examples() {
        let g = GroupSpec::p_group(3, 2).unwrap();
        for (desc, seed) in [(SubgroupDesc::CyclicXY { t: 1, j: 1 }, 1), (SubgroupDesc::XPowerY(2), 2), (SubgroupDesc::XPower(2), 3)] {
            let (i, gens) = inst(3, 2, desc.clone(), InstanceConfig::default());
            let pair = find_special_pair(&i, &gens).unwrap();
            let fl = find_l(&i, &pair, &opts(seed)).unwrap();
            let yp = build_yprime(&i, &pair, &fl).unwrap();
            let m = solve_branch_m(&i, &pair, &yp, &opts(seed)).unwrap();
            let truth = desc.to_elements(&g).unwrap();
            let survivors: Vec<Element> = m
                .candidates
                .iter()
                .map(|h| i.harness().decode(h).unwrap())
                .filter(|x| truth.contains(x))
                .collect();
            assert_eq!(closure(&g, &survivors), truth);
            let q = solve_branch_quotient(&i, &pair, &opts(seed)).unwrap();
            assert!(q.candidates.is_empty());
        }
        for desc in [SubgroupDesc::XPowerY(1), SubgroupDesc::XPower(0), SubgroupDesc::XPowerY(0)] {
            let (i, gens) = inst(3, 2, desc.clone(), InstanceConfig::default());
            let pair = find_special_pair(&i, &gens).unwrap();
            let q = solve_branch_quotient(&i, &pair, &opts(4)).unwrap();
            let elems: Vec<Element> = q.candidates.iter().map(|h| i.harness().decode(h).unwrap()).collect();
            assert_eq!(closure(&g, &elems), desc.to_elements(&g).unwrap());
        }
        let g33 = GroupSpec::p_group(3, 3).unwrap();
        let desc = SubgroupDesc::CyclicXY { t: 1, j: 0 };
        let (i, gens) = inst(3, 3, desc.clone(), InstanceConfig::default());
        let pair = find_special_pair(&i, &gens).unwrap();
        let q = solve_branch_quotient(&i, &pair, &opts(5)).unwrap();
        let elems: Vec<Element> = q.candidates.iter().map(|h| i.harness().decode(h).unwrap()).collect();
        assert_eq!(closure(&g33, &elems), desc.to_elements(&g33).unwrap());
    }

    #[test]
    fn solves_every_subgroup_of_p32() {
        let g = GroupSpec::p_group(3, 2).unwrap();
        for (k, desc) in g.enumerate_subgroups().unwrap().into_iter().enumerate() {
            let (i, gens) = inst(3, 2, desc, InstanceConfig::default());
            check_recovers(&i, &gens, k as u64);
        }
    }

    #[test]
    fn solves_every_subgroup_of_p23_salted_scrambled() {
        let g = GroupSpec::p_group(2, 3).unwrap();
        for (k, desc) in g.enumerate_subgroups().unwrap().into_iter().enumerate() {
            let config = InstanceConfig {
                encoding: Encoding::Salted(4),
                salt_policy: SaltPolicy::FreshRandom,
                generators: GeneratorPolicy::Scrambled,
                seed: k as u64,
            };
            let (i, gens) = inst(2, 3, desc, config);
            check_recovers(&i, &gens, k as u64);
        }
    }

    #[test]
    fn whole_group() {
        let (i, gens) = inst(5, 2, SubgroupDesc::XPowerY(0), InstanceConfig::default());
        check_recovers(&i, &gens, 9);
    }

    #[test]
    fn excluded_group_is_rejected() {
        let g = GroupSpec::p_group(2, 2).unwrap();
        let set = SubgroupDesc::Generators(vec![]).to_elements(&g).unwrap();
        let (i, gens) = make_hidden_instance(g, &set, &InstanceConfig::default()).unwrap();
        assert!(matches!(solve(&i, &gens, &opts(0)), Err(Error::InvalidGroup(_))));
    }
}
