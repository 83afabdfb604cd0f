//! Modular arithmetic and subgroup lattices of `Z_{n_1} x ... x Z_{n_k}`.
//!
//! A [`Lattice`] is a subgroup of a finite Abelian group given by its moduli
//! and a list of generator rows. Internally every lattice operation goes
//! through an echelon basis: one optional row per column whose first nonzero
//! entry (the pivot) sits in that column and divides the column modulus. The
//! reduced echelon basis is unique for a subgroup, which gives the canonical
//! form.
//!
//! Characters of the ambient group are indexed by rows of the same shape;
//! `c` pairs with `h` through `sum_j c_j h_j N / n_j mod N` with
//! `N = lcm(n_j)`.

use rand::Rng;

use crate::error::{Error, Result};

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: u64 = 1 << 62;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .ok_or(Error::Overflow("lcm"))
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)` and `g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, n);
        }
        b = mul_mod(b, b, n);
        exp >>= 1;
    }
    result
}

/// Reduces a signed integer into `[0, n)`.
#[inline]
pub fn reduce_signed(v: i128, n: u64) -> u64 {
    v.rem_euclid(n as i128) as u64
}

pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd((a % n) as i128, n as i128);
    (g == 1).then(|| reduce_signed(s, n))
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Least `d >= 1` with `a^d = 1 mod n`.
pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    let a = a % n;
    if gcd(a, n) != 1 {
        return Err(Error::NotAUnit { a, n });
    }
    let mut order = euler_phi(n);
    for (q, _) in factorize(order) {
        while order.is_multiple_of(q) && pow_mod(a, order / q, n) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Pairing between a character index `c` and a group element `h`.
pub fn pairing(moduli: &[u64], c: &[u64], h: &[u64]) -> Result<u64> {
    let big_n = moduli.iter().try_fold(1u64, |acc, &n| lcm(acc, n))?;
    let mut acc = 0u64;
    for ((&n, &cj), &hj) in moduli.iter().zip(c).zip(h) {
        let term = mul_mod(mul_mod(cj, hj, big_n), big_n / n, big_n);
        acc = ((acc as u128 + term as u128) % big_n as u128) as u64;
    }
    Ok(acc)
}

fn validate_moduli(moduli: &[u64]) -> Result<()> {
    for &n in moduli {
        if n == 0 || n > MAX_MODULUS {
            return Err(Error::InvalidModulus(n));
        }
    }
    Ok(())
}

fn validate_row(moduli: &[u64], row: &[u64]) -> Result<()> {
    if row.len() != moduli.len() {
        return Err(Error::RowWidth { got: row.len(), expected: moduli.len() });
    }
    for (index, (&value, &modulus)) in row.iter().zip(moduli).enumerate() {
        if value >= modulus {
            return Err(Error::ComponentRange { index, value, modulus });
        }
    }
    Ok(())
}

/// `x*a + y*b`, componentwise modulo the moduli.
fn combine(moduli: &[u64], x: i128, a: &[u64], y: i128, b: &[u64]) -> Vec<u64> {
    moduli
        .iter()
        .zip(a.iter().zip(b))
        .map(|(&n, (&ai, &bi))| {
            let xs = reduce_signed(x, n);
            let ys = reduce_signed(y, n);
            ((mul_mod(xs, ai, n) as u128 + mul_mod(ys, bi, n) as u128) % n as u128) as u64
        })
        .collect()
}

fn scale(moduli: &[u64], x: u64, a: &[u64]) -> Vec<u64> {
    moduli.iter().zip(a).map(|(&n, &ai)| mul_mod(x % n, ai, n)).collect()
}

/// Echelon basis of a subgroup: `rows[j]` has zeros before column `j` and
/// pivot `pivots[j]` (a divisor of `moduli[j]`) in column `j`. An empty slot
/// has pivot `moduli[j]`.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    moduli: Vec<u64>,
    rows: Vec<Option<Vec<u64>>>,
    pivots: Vec<u64>,
}

impl Echelon {
    fn new(moduli: &[u64]) -> Self {
        Self {
            moduli: moduli.to_vec(),
            rows: vec![None; moduli.len()],
            pivots: moduli.to_vec(),
        }
    }

    fn from_rows<'a>(moduli: &[u64], rows: impl IntoIterator<Item = &'a Vec<u64>>) -> Self {
        let mut e = Self::new(moduli);
        for r in rows {
            e.insert(r.clone());
        }
        e.reduce();
        e
    }

    fn insert(&mut self, v: Vec<u64>) {
        let k = self.moduli.len();
        let mut stack = vec![(v, 0usize)];
        while let Some((mut v, mut j)) = stack.pop() {
            while j < k && v[j] == 0 {
                j += 1;
            }
            if j == k {
                continue;
            }
            let n = self.moduli[j];
            let d = self.pivots[j];
            let b = v[j];
            if b % d == 0 {
                // d < n here, so the slot is occupied
                let row = self.rows[j].as_ref().expect("pivot below modulus");
                v = combine(&self.moduli, 1, &v, -((b / d) as i128), row);
                stack.push((v, j + 1));
                continue;
            }
            let zero = vec![0u64; k];
            let a = self.rows[j].clone().unwrap_or(zero);
            let (g, s, t) = ext_gcd(d as i128, b as i128);
            let fresh = combine(&self.moduli, s, &a, t, &v);
            let rest = combine(&self.moduli, (b as i128) / g, &a, -((d as i128) / g), &v);
            debug_assert_eq!(fresh[j] as i128, g);
            debug_assert_eq!(rest[j], 0);
            let g = g as u64;
            let kernel_multiple = scale(&self.moduli, n / g, &fresh);
            self.rows[j] = Some(fresh);
            self.pivots[j] = g;
            stack.push((rest, j + 1));
            stack.push((kernel_multiple, j + 1));
        }
    }

    /// Reduces entries above each pivot into `[0, pivot)`.
    fn reduce(&mut self) {
        let k = self.moduli.len();
        for i in 0..k {
            let Some(mut row) = self.rows[i].take() else { continue };
            for j in i + 1..k {
                if let Some(pivot_row) = &self.rows[j] {
                    let c = row[j] / self.pivots[j];
                    if c > 0 {
                        row = combine(&self.moduli, 1, &row, -(c as i128), pivot_row);
                    }
                }
            }
            self.rows[i] = Some(row);
        }
    }

    fn contains(&self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        for j in 0..self.moduli.len() {
            if v[j] == 0 {
                continue;
            }
            match &self.rows[j] {
                Some(row) if v[j].is_multiple_of(self.pivots[j]) => {
                    v = combine(&self.moduli, 1, &v, -((v[j] / self.pivots[j]) as i128), row);
                }
                _ => return false,
            }
        }
        true
    }

    /// Canonical representative of the coset `v + L`.
    fn coset_rep(&self, v: &[u64]) -> Vec<u64> {
        let mut v = v.to_vec();
        for j in 0..self.moduli.len() {
            if let Some(row) = &self.rows[j] {
                let c = v[j] / self.pivots[j];
                if c > 0 {
                    v = combine(&self.moduli, 1, &v, -(c as i128), row);
                }
            }
        }
        v
    }

    /// `(row, order of the row's coefficient range)` for occupied slots.
    fn basis(&self) -> impl Iterator<Item = (&Vec<u64>, u64)> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .zip(&self.moduli)
            .filter_map(|((r, &d), &n)| r.as_ref().map(|r| (r, n / d)))
    }

    fn order(&self) -> Option<u128> {
        self.basis().try_fold(1u128, |acc, (_, c)| acc.checked_mul(c as u128))
    }
}

/// A subgroup of `Z_{n_1} x ... x Z_{n_k}` described by generator rows.
///
/// Equality via `==` is structural. Use [`Lattice::same_subgroup`] or compare
/// canonical forms to decide whether two lattices generate the same subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    moduli: Vec<u64>,
    gens: Vec<Vec<u64>>,
}

impl Lattice {
    pub fn new(moduli: Vec<u64>, gens: Vec<Vec<u64>>) -> Result<Self> {
        validate_moduli(&moduli)?;
        for g in &gens {
            validate_row(&moduli, g)?;
        }
        Ok(Self { moduli, gens })
    }

    /// Builds a lattice from signed rows, reducing each component.
    pub fn from_signed(moduli: Vec<u64>, gens: &[Vec<i64>]) -> Result<Self> {
        validate_moduli(&moduli)?;
        let mut rows = Vec::with_capacity(gens.len());
        for g in gens {
            if g.len() != moduli.len() {
                return Err(Error::RowWidth { got: g.len(), expected: moduli.len() });
            }
            rows.push(
                g.iter()
                    .zip(&moduli)
                    .map(|(&x, &n)| reduce_signed(x as i128, n))
                    .collect(),
            );
        }
        Ok(Self { moduli, gens: rows })
    }

    pub fn trivial(moduli: Vec<u64>) -> Result<Self> {
        Self::new(moduli, Vec::new())
    }

    pub fn full(moduli: Vec<u64>) -> Result<Self> {
        validate_moduli(&moduli)?;
        let k = moduli.len();
        let gens = (0..k)
            .filter(|&j| moduli[j] > 1)
            .map(|j| {
                let mut e = vec![0; k];
                e[j] = 1;
                e
            })
            .collect();
        Ok(Self { moduli, gens })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn gens(&self) -> &[Vec<u64>] {
        &self.gens
    }

    pub(crate) fn echelon(&self) -> Echelon {
        Echelon::from_rows(&self.moduli, &self.gens)
    }

    /// Canonical generator set: the reduced echelon rows in column order.
    /// Idempotent, and equal for equal subgroups.
    pub fn canonicalize(&self) -> Lattice {
        let e = self.echelon();
        Lattice {
            moduli: self.moduli.clone(),
            gens: e.rows.into_iter().flatten().collect(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicalize().gens == self.gens
    }

    pub fn same_subgroup(&self, other: &Lattice) -> bool {
        self.moduli == other.moduli && self.canonicalize().gens == other.canonicalize().gens
    }

    pub fn is_subgroup_of(&self, other: &Lattice) -> bool {
        if self.moduli != other.moduli {
            return false;
        }
        let e = other.echelon();
        self.gens.iter().all(|g| e.contains(g))
    }

    /// Membership test; rows of the wrong shape or out of range are never
    /// members.
    pub fn contains(&self, v: &[u64]) -> bool {
        validate_row(&self.moduli, v).is_ok() && self.echelon().contains(v)
    }

    /// Number of elements of the subgroup.
    pub fn order(&self) -> u128 {
        self.echelon().order().expect("lattice order exceeds u128")
    }

    /// Number of elements of the ambient group.
    pub fn ambient_order(&self) -> u128 {
        self.moduli.iter().map(|&n| n as u128).product()
    }

    /// Annihilator under the character pairing.
    pub fn dual(&self) -> Lattice {
        let k = self.moduli.len();
        let e = self.echelon();
        // Upper triangular basis of the integer preimage of the subgroup.
        let basis: Vec<Vec<i128>> = (0..k)
            .map(|j| match &e.rows[j] {
                Some(r) => r.iter().map(|&x| x as i128).collect(),
                None => {
                    let mut row = vec![0i128; k];
                    row[j] = e.moduli[j] as i128;
                    row
                }
            })
            .collect();
        // The preimage of the annihilator is spanned by the columns of
        // diag(n) * basis^{-1}, which is integral and upper triangular.
        let mut c = vec![vec![0i128; k]; k];
        for i in 0..k {
            let n_i = self.moduli[i] as i128;
            for j in i..k {
                let mut rhs: i128 = if i == j { n_i } else { 0 };
                for (l, c_il) in c[i].iter().enumerate().take(j).skip(i) {
                    rhs = c_il
                        .checked_mul(basis[l][j])
                        .and_then(|t| rhs.checked_sub(t))
                        .expect("dual basis overflow");
                }
                let pivot = basis[j][j];
                debug_assert_eq!(rhs % pivot, 0, "dual basis must be integral");
                c[i][j] = rhs / pivot;
            }
        }
        let gens = (0..k)
            .map(|j| {
                (0..k)
                    .map(|i| reduce_signed(c[i][j], self.moduli[i]))
                    .collect::<Vec<u64>>()
            })
            .collect::<Vec<_>>();
        Lattice { moduli: self.moduli.clone(), gens }.canonicalize()
    }

    /// Uniform random element, drawn by independent uniform coefficients on
    /// the echelon basis.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        let e = self.echelon();
        sample_from_echelon(&e, rng)
    }

    /// Lists all elements; fails when there are more than `bound`.
    pub fn elements(&self, bound: u64) -> Result<Vec<Vec<u64>>> {
        let e = self.echelon();
        let order = e.order().unwrap_or(u128::MAX);
        if order > bound as u128 {
            return Err(Error::EnumerationBound(order.min(u64::MAX as u128) as u64));
        }
        let mut out = vec![vec![0u64; self.moduli.len()]];
        for (row, count) in e.basis() {
            let mut next = Vec::with_capacity(out.len() * count as usize);
            for base in &out {
                let mut cur = base.clone();
                for _ in 0..count {
                    next.push(cur.clone());
                    cur = combine(&self.moduli, 1, &cur, 1, row);
                }
            }
            out = next;
        }
        out.sort();
        Ok(out)
    }
}

/// Incremental construction of a lattice from many rows.
#[derive(Clone, Debug)]
pub struct LatticeBuilder {
    echelon: Echelon,
}

impl LatticeBuilder {
    pub fn new(moduli: &[u64]) -> Result<Self> {
        validate_moduli(moduli)?;
        Ok(Self { echelon: Echelon::new(moduli) })
    }

    pub fn push(&mut self, v: &[u64]) -> Result<()> {
        validate_row(&self.echelon.moduli, v)?;
        if !self.echelon.contains(v) {
            self.echelon.insert(v.to_vec());
        }
        Ok(())
    }

    /// The generated lattice in canonical form.
    pub fn finish(mut self) -> Lattice {
        self.echelon.reduce();
        Lattice {
            moduli: self.echelon.moduli.clone(),
            gens: self.echelon.rows.into_iter().flatten().collect(),
        }
    }
}

/// Caches the echelon basis of a lattice for repeated sampling, membership
/// and coset queries.
#[derive(Clone, Debug)]
pub struct LatticeSampler {
    echelon: Echelon,
}

impl LatticeSampler {
    pub fn new(lattice: &Lattice) -> Self {
        Self { echelon: lattice.echelon() }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        validate_row(&self.echelon.moduli, v).is_ok() && self.echelon.contains(v)
    }

    /// Canonical representative of `v + L`: two rows get the same
    /// representative iff their difference lies in `L`.
    pub fn coset_rep(&self, v: &[u64]) -> Vec<u64> {
        self.echelon.coset_rep(v)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        sample_from_echelon(&self.echelon, rng)
    }
}

fn sample_from_echelon<R: Rng + ?Sized>(e: &Echelon, rng: &mut R) -> Vec<u64> {
    let mut v = vec![0u64; e.moduli.len()];
    for (row, count) in e.basis() {
        let c = rng.gen_range(0..count);
        v = combine(&e.moduli, 1, &v, c as i128, row);
    }
    v
}

/// Joint kernel of the sampled characters, canonical. No samples means no
/// constraint, so the full group comes back.
pub fn solve_kernel(samples: &[Vec<u64>], moduli: &[u64]) -> Result<Lattice> {
    if samples.is_empty() {
        return Ok(Lattice::full(moduli.to_vec())?.canonicalize());
    }
    Ok(Lattice::new(moduli.to_vec(), samples.to_vec())?.dual())
}

/// Smith normal form of an integer matrix, tracking the inverse of the
/// column transform.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries, nonnegative, each dividing the next nonzero one.
    pub diagonal: Vec<i128>,
    /// `V^{-1}` for `U * M * V = D`. Row `i` expresses the generator of the
    /// `i`-th cyclic factor of `Z^cols / rowspan(M)` in the original basis.
    pub col_inverse: Vec<Vec<i128>>,
}

pub fn smith_normal_form(matrix: &[Vec<i128>], cols: usize) -> Result<SmithForm> {
    let mut m: Vec<Vec<i128>> = matrix.to_vec();
    for row in &m {
        if row.len() != cols {
            return Err(Error::RowWidth { got: row.len(), expected: cols });
        }
    }
    let rows = m.len();
    let mut vinv: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let ovf = || Error::Overflow("smith normal form");

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap(t, pi);
            if pj != t {
                for row in m.iter_mut() {
                    row.swap(t, pj);
                }
                vinv.swap(t, pj);
            }
            let pivot = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / pivot;
                if q != 0 {
                    for j in t..cols {
                        m[i][j] = q.checked_mul(m[t][j]).and_then(|x| m[i][j].checked_sub(x)).ok_or_else(ovf)?;
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / pivot;
                if q != 0 {
                    // col_j -= q col_t
                    for row in m.iter_mut() {
                        row[j] = q.checked_mul(row[t]).and_then(|x| row[j].checked_sub(x)).ok_or_else(ovf)?;
                    }
                    // row_t of V^{-1} += q row_j
                    for c in 0..cols {
                        vinv[t][c] = q.checked_mul(vinv[j][c]).and_then(|x| vinv[t][c].checked_add(x)).ok_or_else(ovf)?;
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % pivot != 0));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        m[t][j] = m[t][j].checked_add(m[i][j]).ok_or_else(ovf)?;
                    }
                }
                None => break,
            }
        }
        if m.get(t).is_some_and(|r| r[t] < 0) {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diagonal = (0..cols).map(|i| if i < rows { m[i][i] } else { 0 }).collect();
    Ok(SmithForm { diagonal, col_inverse: vinv })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lat(moduli: &[u64], gens: &[&[i64]]) -> Lattice {
        let rows: Vec<Vec<i64>> = gens.iter().map(|g| g.to_vec()).collect();
        Lattice::from_signed(moduli.to_vec(), &rows).unwrap()
    }

    /// Generated subgroup by closure under addition.
    fn brute_span(moduli: &[u64], gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let mut seen = std::collections::BTreeSet::new();
        let zero = vec![0u64; moduli.len()];
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(v) = frontier.pop() {
            for g in gens {
                let w = combine(moduli, 1, &v, 1, g);
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn all_rows(moduli: &[u64]) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &n in moduli {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u64>| {
                    (0..n).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }

    fn brute_dual(moduli: &[u64], gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
        all_rows(moduli)
            .into_iter()
            .filter(|c| gens.iter().all(|h| pairing(moduli, c, h).unwrap() == 0))
            .collect()
    }

    #[test]
    fn multiplicative_order_examples() {
        assert_eq!(multiplicative_order(1, 9).unwrap(), 1);
        assert_eq!(multiplicative_order(4, 9).unwrap(), 3);
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(3, 9), Err(Error::NotAUnit { a: 3, n: 9 }));
        assert!(multiplicative_order(1, 1).is_err());
    }

    #[test]
    fn multiplicative_order_matches_iteration() {
        for n in 2..200u64 {
            for a in 1..n {
                if gcd(a, n) != 1 {
                    continue;
                }
                let mut d = 1;
                let mut x = a;
                while x != 1 {
                    x = mul_mod(x, a, n);
                    d += 1;
                }
                assert_eq!(multiplicative_order(a, n).unwrap(), d, "a={a} n={n}");
                assert_eq!(euler_phi(n) % d, 0);
            }
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn canonicalize_examples() {
        let l = lat(&[3, 3], &[&[1, 1], &[2, 2]]).canonicalize();
        assert_eq!(l.gens(), &[vec![1, 1]]);

        let t = Lattice::trivial(vec![9]).unwrap().canonicalize();
        assert!(t.gens().is_empty());

        let a = lat(&[9, 3], &[&[3, 0], &[0, 1], &[6, 1]]);
        let b = lat(&[9, 3], &[&[3, 0], &[0, 1]]);
        assert_eq!(a.canonicalize(), b.canonicalize());
        assert_eq!(brute_span(&[9, 3], a.gens()), brute_span(&[9, 3], b.gens()));
    }

    #[test]
    fn width_mismatch_is_rejected() {
        assert_eq!(
            Lattice::new(vec![3, 3], vec![vec![1]]),
            Err(Error::RowWidth { got: 1, expected: 2 })
        );
        assert!(Lattice::new(vec![3], vec![vec![3]]).is_err());
        assert!(Lattice::new(vec![0], vec![]).is_err());
    }

    #[test]
    fn dual_examples() {
        let l = lat(&[3, 3], &[&[1, 1]]);
        assert_eq!(l.dual(), lat(&[3, 3], &[&[1, 2]]).canonicalize());
        assert_eq!(brute_dual(&[3, 3], l.gens()), l.dual().elements(100).unwrap());

        let full = Lattice::full(vec![4, 9, 5]).unwrap();
        assert_eq!(full.dual().order(), 1);

        let l = lat(&[9, 9], &[&[2, -1]]);
        let d = l.dual();
        assert_eq!(d.order(), 9);
        for c in d.elements(100).unwrap() {
            assert_eq!((2 * c[0]) % 9, c[1]);
        }
        assert_eq!(brute_dual(&[9, 9], l.gens()), d.elements(100).unwrap());
    }

    #[test]
    fn solve_kernel_examples() {
        let k = solve_kernel(&[vec![1, 2]], &[3, 3]).unwrap();
        assert_eq!(k, lat(&[3, 3], &[&[1, 1]]).canonicalize());
        let full = solve_kernel(&[], &[3, 3]).unwrap();
        assert_eq!(full.order(), 9);
        let t = solve_kernel(&[vec![1, 0], vec![0, 1]], &[9, 9]).unwrap();
        assert_eq!(t.order(), 1);
        assert!(t.gens().is_empty());
    }

    #[test]
    fn membership_examples() {
        let l = lat(&[3, 3], &[&[1, 1]]);
        assert!(l.contains(&[2, 2]));
        assert!(!l.contains(&[1, 2]));
        assert!(Lattice::trivial(vec![3, 3]).unwrap().contains(&[0, 0]));
        assert!(!l.contains(&[1]));
    }

    #[test]
    fn random_lattices_agree_with_enumeration() {
        let pool = [3u64, 9, 27, 2, 4, 8, 5, 25];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let k = rng.gen_range(1..=3);
            let moduli: Vec<u64> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
            if moduli.iter().product::<u64>() > 3000 {
                continue;
            }
            let ngens = rng.gen_range(0..=3);
            let gens: Vec<Vec<u64>> = (0..ngens)
                .map(|_| moduli.iter().map(|&n| rng.gen_range(0..n)).collect())
                .collect();
            let l = Lattice::new(moduli.clone(), gens.clone()).unwrap();
            let span = brute_span(&moduli, &gens);
            assert_eq!(l.elements(10_000).unwrap(), span);
            assert_eq!(l.order(), span.len() as u128);
            let canon = l.canonicalize();
            assert_eq!(canon.canonicalize(), canon);
            assert_eq!(brute_span(&moduli, canon.gens()), span);
            assert_eq!(l.dual().elements(10_000).unwrap(), brute_dual(&moduli, &gens));
            for v in all_rows(&moduli) {
                assert_eq!(l.contains(&v), span.binary_search(&v).is_ok());
            }
        }
    }

    #[test]
    fn sampling_hits_only_members_and_all_of_them() {
        let l = lat(&[9, 3], &[&[3, 1]]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..500 {
            let v = l.sample(&mut rng);
            assert!(l.contains(&v));
            seen.insert(v);
        }
        assert_eq!(seen.len() as u128, l.order());
    }

    #[test]
    fn coset_representatives() {
        let l = lat(&[9, 3], &[&[3, 1]]);
        let s = LatticeSampler::new(&l);
        let all = all_rows(&[9, 3]);
        for u in &all {
            for v in &all {
                let diff = combine(&[9, 3], 1, u, -1, v);
                assert_eq!(s.coset_rep(u) == s.coset_rep(v), l.contains(&diff));
            }
        }
    }

    #[test]
    fn smith_form_of_relations() {
        // Z^2 / <(3, -1), (9, 0), (0, 9)> is cyclic of order 9
        let m = vec![vec![3, -1], vec![9, 0], vec![0, 9]];
        let s = smith_normal_form(&m, 2).unwrap();
        assert_eq!(s.diagonal, vec![1, 9]);
        let g = &s.col_inverse[1];
        // the generator has order 9 in the quotient: 3 g is not a relation
        let rel = Lattice::from_signed(vec![9, 9], &[vec![3, -1]]).unwrap();
        let gv: Vec<u64> = g.iter().map(|&x| reduce_signed(x, 9)).collect();
        let mult = |c: u64| -> Vec<u64> { gv.iter().map(|&x| x * c % 9).collect() };
        assert!(!rel.contains(&mult(3)));
        assert!(rel.contains(&mult(9)));
    }
}
