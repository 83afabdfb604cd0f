//! Simulated Fourier sampling over `Z_{n_1} x ... x Z_{n_k}`.
//!
//! The statevector backend runs the coset-state experiment literally: it
//! evaluates the hiding function on the whole domain (one superposed call),
//! measures the label register, applies the quantum Fourier transform of the
//! domain to the surviving coset state and measures it. The annihilator
//! backend draws from the dual of a known lattice directly, which is the
//! exact outcome distribution of the same experiment.
//!
//! Domain points are indexed row-major: the first coordinate is the most
//! significant digit.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::{FftDirection, FftPlanner};

use crate::algebra::{solve_kernel, Lattice, LatticeBuilder, LatticeSampler};
use crate::blackbox::{HiddenInstance, Label, OpaqueHandle, TABLE_BOUND};
use crate::error::{Error, Result};
use crate::sdp_group::FiniteGroup;

/// Largest domain the statevector backend accepts.
pub const STATEVECTOR_BOUND: u64 = 1 << 20;

/// Amplitudes with squared magnitude below this are treated as zero.
pub const PRUNE_TOLERANCE: f64 = 1e-9;

/// A hiding function on a finite Abelian group.
pub trait AbelianOracle: Sync {
    fn moduli(&self) -> &[u64];

    /// One classical evaluation.
    fn eval(&self, v: &[u64]) -> Result<Label>;

    /// Labels of every domain point in row-major order, as one superposed
    /// call.
    fn eval_domain(&self) -> Result<Vec<Label>>;

    /// The hidden lattice, when the harness can supply it without queries.
    fn truth_lattice(&self) -> Option<Lattice> {
        None
    }

    /// Books the cost of one superposed call that was simulated without
    /// evaluating the domain.
    fn charge_superposed_call(&self) {}
}

/// A measured character index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharSample {
    pub c: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    Statevector,
    Annihilator,
    /// Statevector when the domain fits, annihilator otherwise.
    #[default]
    Auto,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Statevector => "statevector",
            Backend::Annihilator => "annihilator",
            Backend::Auto => "auto",
        }
    }

    /// The concrete backend used for this domain.
    pub fn resolve(self, moduli: &[u64]) -> Backend {
        match self {
            Backend::Auto if domain_size(moduli).is_some_and(|d| d <= STATEVECTOR_BOUND) => Backend::Statevector,
            Backend::Auto => Backend::Annihilator,
            b => b,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub backend: Backend,
    /// Target failure probability.
    pub delta: f64,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { backend: Backend::Auto, delta: 0.01, seed: 0 }
    }
}

impl SolverOptions {
    /// Same options with an independent seed for a sub-solve.
    pub fn derive(&self, salt: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        Self { seed: rng.gen(), ..*self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianSolution {
    /// Canonical estimate of the hidden lattice.
    pub lattice: Lattice,
    /// Set when the consistency pass never succeeded.
    pub low_confidence: bool,
    pub rounds: u32,
    pub samples: usize,
    pub backend: Backend,
}

/// Hides a fixed lattice: labels name the cosets.
#[derive(Clone, Debug)]
pub struct TableOracle {
    lattice: Lattice,
    sampler: LatticeSampler,
    evals: std::sync::Arc<std::sync::atomic::AtomicU64>,
}

impl TableOracle {
    pub fn new(lattice: Lattice) -> Self {
        let sampler = LatticeSampler::new(&lattice);
        Self { lattice, sampler, evals: Default::default() }
    }

    pub fn evaluations(&self) -> u64 {
        self.evals.load(std::sync::atomic::Ordering::Relaxed)
    }

    fn label(&self, v: &[u64]) -> Label {
        let rep = self.sampler.coset_rep(v);
        Label(row_index(self.lattice.moduli(), &rep))
    }
}

impl AbelianOracle for TableOracle {
    fn moduli(&self) -> &[u64] {
        self.lattice.moduli()
    }

    fn eval(&self, v: &[u64]) -> Result<Label> {
        check_point(self.moduli(), v)?;
        self.evals.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        Ok(self.label(v))
    }

    fn eval_domain(&self) -> Result<Vec<Label>> {
        let moduli = self.moduli();
        let d = domain_size(moduli).ok_or(Error::Overflow("domain size"))?;
        self.evals.fetch_add(d, std::sync::atomic::Ordering::Relaxed);
        Ok((0..d).map(|i| self.label(&index_row(moduli, i))).collect())
    }

    fn truth_lattice(&self) -> Option<Lattice> {
        Some(self.lattice.clone())
    }
}

/// `F(v) = f(b_1^{v_1} ... b_k^{v_k})` for black-box handles `b_j`, the
/// product taken left to right.
///
/// The handle table of the whole domain is built through the product oracle
/// on first use and reused by later superposed calls.
pub struct GridOracle<'a, G: FiniteGroup> {
    inst: &'a HiddenInstance<G>,
    moduli: Vec<u64>,
    bases: Vec<OpaqueHandle>,
    identity: OpaqueHandle,
    source: LabelSource,
    table: std::sync::Mutex<Option<std::sync::Arc<Vec<OpaqueHandle>>>>,
}

/// What a [`GridOracle`] reports for a domain point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelSource {
    /// The instance's hidden function.
    HiddenFunction,
    /// The handle bytes themselves. Only meaningful under a unique encoding,
    /// where it hides the relation lattice of the bases.
    Encoding,
}

impl<'a, G: FiniteGroup> GridOracle<'a, G> {
    pub fn new(inst: &'a HiddenInstance<G>, bases: Vec<OpaqueHandle>, moduli: Vec<u64>) -> Result<Self> {
        if bases.is_empty() || bases.len() != moduli.len() {
            return Err(Error::RowWidth { got: bases.len(), expected: moduli.len() });
        }
        if moduli.contains(&0) {
            return Err(Error::InvalidModulus(0));
        }
        let identity = inst.blackbox().identity_from(&bases[0])?;
        Ok(Self { inst, moduli, bases, identity, source: LabelSource::HiddenFunction, table: Default::default() })
    }

    pub fn with_source(mut self, source: LabelSource) -> Self {
        self.source = source;
        self
    }

    fn label(&self, h: &OpaqueHandle) -> Result<Label> {
        match self.source {
            LabelSource::HiddenFunction => self.inst.f(h),
            LabelSource::Encoding => Ok(Label(u64::from_be_bytes(h.bytes()))),
        }
    }

    /// Handle of `b_1^{v_1} ... b_k^{v_k}`.
    pub fn point(&self, v: &[u64]) -> Result<OpaqueHandle> {
        check_point(&self.moduli, v)?;
        let bb = self.inst.blackbox();
        let mut acc: Option<OpaqueHandle> = None;
        for (b, &e) in self.bases.iter().zip(v) {
            if e == 0 {
                continue;
            }
            let t = bb.oracle_pow(b, e as i64)?;
            acc = Some(match acc {
                None => t,
                Some(a) => bb.oracle_mul(&a, &t)?,
            });
        }
        Ok(acc.unwrap_or(self.identity))
    }

    fn domain_table(&self) -> Result<std::sync::Arc<Vec<OpaqueHandle>>> {
        let mut guard = self.table.lock().expect("table lock");
        if let Some(t) = guard.as_ref() {
            return Ok(t.clone());
        }
        let bb = self.inst.blackbox();
        let mut table = vec![self.identity];
        for (b, &n) in self.bases.iter().zip(&self.moduli) {
            let mut pows = Vec::with_capacity(n as usize);
            pows.push(self.identity);
            for t in 1..n as usize {
                pows.push(if t == 1 { *b } else { bb.oracle_mul(&pows[t - 1], b)? });
            }
            let mut next = Vec::with_capacity(table.len() * n as usize);
            for h in &table {
                next.push(*h);
                for p in &pows[1..] {
                    next.push(bb.oracle_mul(h, p)?);
                }
            }
            table = next;
        }
        let table = std::sync::Arc::new(table);
        *guard = Some(table.clone());
        Ok(table)
    }
}

impl<G: FiniteGroup> AbelianOracle for GridOracle<'_, G> {
    fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    fn eval(&self, v: &[u64]) -> Result<Label> {
        self.label(&self.point(v)?)
    }

    fn eval_domain(&self) -> Result<Vec<Label>> {
        let d = domain_size(&self.moduli).unwrap_or(u64::MAX);
        if d > STATEVECTOR_BOUND {
            return Err(Error::StatevectorBound(d));
        }
        let table = self.domain_table()?;
        match self.source {
            LabelSource::HiddenFunction => self.inst.f_batch(&table),
            LabelSource::Encoding => {
                self.inst.charge_superposed(0);
                table.iter().map(|h| self.label(h)).collect()
            }
        }
    }

    /// Computed by enumerating the domain in the explicit group behind the
    /// harness, for domains up to the encoding table bound.
    fn truth_lattice(&self) -> Option<Lattice> {
        let d = domain_size(&self.moduli).filter(|&d| d <= TABLE_BOUND)?;
        let hs = self.inst.harness();
        let group = self.inst.blackbox().group();
        let bases: Vec<G::Elem> = self.bases.iter().map(|b| hs.decode(b)).collect::<Result<_>>().ok()?;
        let identity = group.identity();
        let truth = hs.truth();
        let member = |g: &G::Elem| match self.source {
            LabelSource::HiddenFunction => truth.contains(g),
            LabelSource::Encoding => *g == identity,
        };
        let pows: Vec<Vec<G::Elem>> = bases
            .iter()
            .zip(&self.moduli)
            .map(|(b, &n)| {
                let mut row = vec![group.identity()];
                for t in 1..n as usize {
                    row.push(group.op(&row[t - 1], b));
                }
                row
            })
            .collect();
        let mut members = LatticeBuilder::new(&self.moduli).ok()?;
        for i in 0..d {
            let v = index_row(&self.moduli, i);
            let g = v
                .iter()
                .zip(&pows)
                .fold(group.identity(), |acc, (&e, row)| group.op(&acc, &row[e as usize]));
            if member(&g) {
                members.push(&v).ok()?;
            }
        }
        Some(members.finish())
    }

    fn charge_superposed_call(&self) {
        let points = match self.source {
            LabelSource::HiddenFunction => domain_size(&self.moduli).unwrap_or(u64::MAX),
            LabelSource::Encoding => 0,
        };
        self.inst.charge_superposed(points);
    }
}

pub fn domain_size(moduli: &[u64]) -> Option<u64> {
    moduli.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n))
}

/// Row-major index of a domain point.
pub fn row_index(moduli: &[u64], v: &[u64]) -> u64 {
    moduli.iter().zip(v).fold(0, |acc, (&n, &x)| acc * n + x)
}

/// Inverse of [`row_index`].
pub fn index_row(moduli: &[u64], mut i: u64) -> Vec<u64> {
    let mut v = vec![0; moduli.len()];
    for (slot, &n) in v.iter_mut().zip(moduli).rev() {
        *slot = i % n;
        i /= n;
    }
    v
}

fn check_point(moduli: &[u64], v: &[u64]) -> Result<()> {
    if v.len() != moduli.len() {
        return Err(Error::RowWidth { got: v.len(), expected: moduli.len() });
    }
    for (index, (&value, &modulus)) in v.iter().zip(moduli).enumerate() {
        if value >= modulus {
            return Err(Error::ComponentRange { index, value, modulus });
        }
    }
    Ok(())
}

/// Dense Fourier matrix `U[c][v] = exp(2 pi i c v / n) / sqrt(n)`.
pub fn qft_matrix(n: usize) -> Vec<Vec<Complex64>> {
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|c| {
            (0..n)
                .map(|v| Complex64::from_polar(scale, 2.0 * PI * ((c * v) % n) as f64 / n as f64))
                .collect()
        })
        .collect()
}

/// Applies the Fourier transform of `Z_{n_1} x ... x Z_{n_k}` to a row-major
/// state, one axis at a time, with the same convention as [`qft_matrix`].
pub fn apply_qft(state: &mut [Complex64], moduli: &[u64]) {
    let mut planner = FftPlanner::<f64>::new();
    let total = state.len();
    let mut inner = total;
    for &n in moduli {
        let n = n as usize;
        inner /= n;
        if n == 1 {
            continue;
        }
        let fft = planner.plan_fft(n, FftDirection::Inverse);
        let scale = 1.0 / (n as f64).sqrt();
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        for outer in 0..total / (n * inner) {
            let base = outer * n * inner;
            for off in 0..inner {
                for (t, slot) in buf.iter_mut().enumerate() {
                    *slot = state[base + t * inner + off];
                }
                fft.process_with_scratch(&mut buf, &mut scratch);
                for (t, &val) in buf.iter().enumerate() {
                    state[base + t * inner + off] = val * scale;
                }
            }
        }
    }
}

/// Draws from `weights` (not necessarily normalized).
fn sample_weighted<R: Rng + ?Sized>(weights: &[(usize, f64)], rng: &mut R) -> usize {
    let total: f64 = weights.iter().map(|w| w.1).sum();
    let mut target = rng.gen::<f64>() * total;
    for &(i, w) in weights {
        if target < w {
            return i;
        }
        target -= w;
    }
    weights.last().expect("nonempty support").0
}

/// One coset-state measurement given the full label table.
fn measure_coset_state<R: Rng + ?Sized>(moduli: &[u64], labels: &[Label], rng: &mut R) -> CharSample {
    let d = labels.len();
    let z = rng.gen_range(0..d);
    let observed = labels[z];
    let members: Vec<usize> = (0..d).filter(|&i| labels[i] == observed).collect();
    let amp = 1.0 / (members.len() as f64).sqrt();
    let mut state = vec![Complex64::new(0.0, 0.0); d];
    for &i in &members {
        state[i] = Complex64::new(amp, 0.0);
    }
    apply_qft(&mut state, moduli);
    let support: Vec<(usize, f64)> = state
        .iter()
        .enumerate()
        .map(|(i, a)| (i, a.norm_sqr()))
        .filter(|&(_, p)| p >= PRUNE_TOLERANCE)
        .collect();
    let c = sample_weighted(&support, rng);
    CharSample { c: index_row(moduli, c as u64) }
}

/// One Fourier sample by full statevector simulation.
pub fn sample_statevector<O: AbelianOracle + ?Sized, R: Rng + ?Sized>(oracle: &O, rng: &mut R) -> Result<CharSample> {
    let moduli = oracle.moduli().to_vec();
    let d = domain_size(&moduli).unwrap_or(u64::MAX);
    if d > STATEVECTOR_BOUND {
        return Err(Error::StatevectorBound(d));
    }
    let labels = oracle.eval_domain()?;
    Ok(measure_coset_state(&moduli, &labels, rng))
}

/// One exact sample from the dual of `truth`.
pub fn sample_annihilator<R: Rng + ?Sized>(truth: &Lattice, rng: &mut R) -> CharSample {
    CharSample { c: truth.dual().sample(rng) }
}

/// Draws samples `from..to` with per-sample RNG streams.
fn draw<O: AbelianOracle + ?Sized>(oracle: &O, backend: Backend, seed: u64, from: usize, to: usize) -> Result<Vec<Vec<u64>>> {
    let stream = |i: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64 + 1);
        rng
    };
    match backend {
        Backend::Statevector => {
            let moduli = oracle.moduli().to_vec();
            let d = domain_size(&moduli).unwrap_or(u64::MAX);
            if d > STATEVECTOR_BOUND {
                return Err(Error::StatevectorBound(d));
            }
            (from..to)
                .map(|i| {
                    let labels = oracle.eval_domain()?;
                    Ok(measure_coset_state(&moduli, &labels, &mut stream(i)).c)
                })
                .collect()
        }
        _ => {
            let truth = oracle
                .truth_lattice()
                .ok_or_else(|| Error::BackendUnavailable("annihilator sampling needs the hidden lattice".into()))?;
            let dual = LatticeSampler::new(&truth.dual());
            Ok((from..to)
                .map(|i| {
                    oracle.charge_superposed_call();
                    dual.sample(&mut stream(i))
                })
                .collect())
        }
    }
}

/// Recovers the hidden lattice of `oracle` by Fourier sampling.
///
/// Draws `k + ceil(log2(1/delta)) + 4` samples, solves for their common
/// kernel and checks each kernel generator against `F(0)`. A failed check
/// doubles the sample count, for at most three rounds; after that the
/// generators that passed are returned with `low_confidence` set.
pub fn abelian_hsp_solve<O: AbelianOracle + ?Sized>(oracle: &O, opts: &SolverOptions) -> Result<AbelianSolution> {
    if !(opts.delta > 0.0 && opts.delta < 1.0) {
        return Err(Error::InvalidInput(format!("delta must lie in (0, 1), got {}", opts.delta)));
    }
    let moduli = oracle.moduli().to_vec();
    let backend = opts.backend.resolve(&moduli);
    let k = moduli.len();
    let base = k + (1.0 / opts.delta).log2().ceil() as usize + 4;
    let zero = vec![0u64; k];
    let f0 = oracle.eval(&zero)?;

    let mut samples: Vec<Vec<u64>> = Vec::new();
    let mut target = base;
    let mut passing = Vec::new();
    for round in 1..=3u32 {
        let more = draw(oracle, backend, opts.seed, samples.len(), target)?;
        samples.extend(more);
        let lattice = solve_kernel(&samples, &moduli)?;
        passing.clear();
        let mut ok = true;
        for g in lattice.gens() {
            if oracle.eval(g)? == f0 {
                passing.push(g.clone());
            } else {
                ok = false;
            }
        }
        if ok {
            return Ok(AbelianSolution { lattice, low_confidence: false, rounds: round, samples: samples.len(), backend });
        }
        target *= 2;
    }
    let lattice = Lattice::new(moduli, passing)?.canonicalize();
    Ok(AbelianSolution { lattice, low_confidence: true, rounds: 3, samples: samples.len(), backend })
}

/// Two-sided statistical check that `candidate` is the hidden lattice.
///
/// Closure: `F(v) = F(v + h)` for random `v` and random `h` in the candidate.
/// Maximality: on domains up to `2^16` points every pair with equal labels is
/// checked by bucketing; beyond that only closure is tested.
pub fn verify_candidate<O: AbelianOracle + ?Sized, R: Rng + ?Sized>(
    oracle: &O,
    candidate: &Lattice,
    trials: usize,
    rng: &mut R,
) -> Result<bool> {
    let moduli = oracle.moduli().to_vec();
    if candidate.moduli() != moduli.as_slice() {
        return Ok(false);
    }
    let sampler = LatticeSampler::new(candidate);
    for g in candidate.gens() {
        if oracle.eval(g)? != oracle.eval(&vec![0; moduli.len()])? {
            return Ok(false);
        }
    }
    for _ in 0..trials {
        let v: Vec<u64> = moduli.iter().map(|&n| rng.gen_range(0..n)).collect();
        let h = sampler.sample(rng);
        let w: Vec<u64> = v.iter().zip(&h).zip(&moduli).map(|((a, b), n)| (a + b) % n).collect();
        if oracle.eval(&v)? != oracle.eval(&w)? {
            return Ok(false);
        }
    }
    let d = domain_size(&moduli).unwrap_or(u64::MAX);
    if d <= 1 << 16 {
        let labels = oracle.eval_domain()?;
        let mut reps: HashMap<Label, Vec<u64>> = HashMap::new();
        for (i, label) in labels.into_iter().enumerate() {
            let coset = sampler.coset_rep(&index_row(&moduli, i as u64));
            match reps.get(&label) {
                Some(rep) if *rep != coset => return Ok(false),
                Some(_) => {}
                None => {
                    reps.insert(label, coset);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn lat(moduli: &[u64], gens: &[&[i64]]) -> Lattice {
        let rows: Vec<Vec<i64>> = gens.iter().map(|g| g.to_vec()).collect();
        Lattice::from_signed(moduli.to_vec(), &rows).unwrap()
    }

    fn opts(seed: u64) -> SolverOptions {
        SolverOptions { backend: Backend::Statevector, delta: 0.01, seed }
    }

    #[test]
    fn qft_is_unitary() {
        for n in 1..=64usize {
            let u = qft_matrix(n);
            for i in 0..n {
                for j in 0..n {
                    let dot: Complex64 = (0..n).map(|k| u[i][k] * u[j][k].conj()).sum();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((dot - Complex64::new(expect, 0.0)).norm() < 1e-10, "n={n}");
                }
            }
        }
    }

    #[test]
    fn fft_matches_dense_matrix() {
        let moduli = [3u64, 4, 5];
        let d = 60;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let state: Vec<Complex64> = (0..d).map(|_| Complex64::new(rng.gen(), rng.gen())).collect();
        let mut fast = state.clone();
        apply_qft(&mut fast, &moduli);
        let mats: Vec<_> = moduli.iter().map(|&n| qft_matrix(n as usize)).collect();
        for c in 0..d as u64 {
            let cr = index_row(&moduli, c);
            let mut acc = Complex64::new(0.0, 0.0);
            for v in 0..d as u64 {
                let vr = index_row(&moduli, v);
                let coeff: Complex64 = (0..3).map(|j| mats[j][cr[j] as usize][vr[j] as usize]).product();
                acc += coeff * state[v as usize];
            }
            assert!((acc - fast[c as usize]).norm() < 1e-10);
        }
    }

    #[test]
    fn constant_function_samples_zero() {
        let o = TableOracle::new(Lattice::full(vec![3, 3]).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            assert_eq!(sample_statevector(&o, &mut rng).unwrap().c, vec![0, 0]);
        }
    }

    #[test]
    fn injective_function_samples_everything() {
        let o = TableOracle::new(Lattice::trivial(vec![3, 3]).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..300 {
            seen.insert(sample_statevector(&o, &mut rng).unwrap().c);
        }
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn statevector_distribution_is_uniform_on_dual() {
        let l = lat(&[3, 3], &[&[1, 1]]);
        let o = TableOracle::new(l.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut counts: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
        let n = 10_000;
        for _ in 0..n {
            *counts.entry(sample_statevector(&o, &mut rng).unwrap().c).or_default() += 1;
        }
        let support: Vec<_> = counts.keys().cloned().collect();
        assert_eq!(support, vec![vec![0, 0], vec![1, 2], vec![2, 1]]);
        let tv: f64 = counts.values().map(|&c| (c as f64 / n as f64 - 1.0 / 3.0).abs()).sum::<f64>() / 2.0;
        assert!(tv <= 0.05, "tv={tv}");
    }

    #[test]
    fn statevector_bound_is_enforced() {
        let o = TableOracle::new(Lattice::trivial(vec![1 << 11, 1 << 10]).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(sample_statevector(&o, &mut rng), Err(Error::StatevectorBound(1 << 21)));
    }

    #[test]
    fn annihilator_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let full = Lattice::full(vec![9, 9]).unwrap();
        assert_eq!(sample_annihilator(&full, &mut rng).c, vec![0, 0]);
        let l = lat(&[9, 9], &[&[2, -1]]);
        for _ in 0..200 {
            let c = sample_annihilator(&l, &mut rng).c;
            assert_eq!(2 * c[0] % 9, c[1]);
        }
        let trivial = Lattice::trivial(vec![3, 3]).unwrap();
        let seen: std::collections::BTreeSet<_> = (0..300).map(|_| sample_annihilator(&trivial, &mut rng).c).collect();
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn solver_examples() {
        let full = TableOracle::new(Lattice::full(vec![3, 3]).unwrap());
        let s = abelian_hsp_solve(&full, &opts(1)).unwrap();
        assert_eq!(s.lattice.order(), 9);
        let trivial = TableOracle::new(Lattice::trivial(vec![3, 3]).unwrap());
        assert_eq!(abelian_hsp_solve(&trivial, &opts(2)).unwrap().lattice.order(), 1);
        let l = lat(&[9, 9], &[&[2, -1]]);
        let s = abelian_hsp_solve(&TableOracle::new(l), &opts(3)).unwrap();
        assert_eq!(s.lattice, lat(&[9, 9], &[&[2, 8]]).canonicalize());
        assert!(!s.low_confidence);
    }

    #[test]
    fn annihilator_backend_needs_truth() {
        struct Blind;
        impl AbelianOracle for Blind {
            fn moduli(&self) -> &[u64] {
                &[3]
            }
            fn eval(&self, _: &[u64]) -> Result<Label> {
                Ok(Label(0))
            }
            fn eval_domain(&self) -> Result<Vec<Label>> {
                Ok(vec![Label(0); 3])
            }
        }
        let o = SolverOptions { backend: Backend::Annihilator, ..opts(0) };
        assert!(matches!(abelian_hsp_solve(&Blind, &o), Err(Error::BackendUnavailable(_))));
        assert_eq!(abelian_hsp_solve(&Blind, &opts(0)).unwrap().lattice.order(), 3);
    }

    #[test]
    fn verify_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let l = lat(&[9, 9], &[&[3, 0], &[0, 3]]);
        let o = TableOracle::new(l.clone());
        assert!(verify_candidate(&o, &l, 64, &mut rng).unwrap());
        let sub = lat(&[9, 9], &[&[3, 0]]);
        assert!(!verify_candidate(&o, &sub, 64, &mut rng).unwrap());
        let sup = lat(&[9, 9], &[&[1, 0], &[0, 3]]);
        assert!(!verify_candidate(&o, &sup, 64, &mut rng).unwrap());
    }

    #[test]
    fn indexing_round_trips() {
        let moduli = [4u64, 3, 5];
        for i in 0..60 {
            assert_eq!(row_index(&moduli, &index_row(&moduli, i)), i);
        }
        assert_eq!(index_row(&moduli, 1), vec![0, 0, 1]);
    }
}
