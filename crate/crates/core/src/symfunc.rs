//! Jack polynomials in C-normalization.
//!
//! `C_κ(x; d)` is expanded in monomial symmetric functions,
//! `C_κ = Σ_{μ ⪯ κ} c_{κμ} m_μ`. The coefficients come from the eigen-operator
//! recurrence
//!
//! ```text
//! c_{κλ} = 2d / (ρ_κ - ρ_λ) · Σ (λ_i - λ_j + 2t) c_{κμ},   ρ_κ = Σ_i k_i (k_i - 1 - 2d(i-1))
//! ```
//!
//! where `μ` runs over the partitions obtained from `λ` by moving `t ≤ λ_j`
//! boxes from row `j` up to row `i < j` and `λ ≺ μ ⪯ κ`. The monic result is
//! then scaled by `k! / ∏_{s∈κ} (arm(s) + 1 + d·leg(s))`, which makes every
//! shell sum to the power of the trace: `Σ_{|κ|=k} C_κ = (x₁ + … + x_m)^k`.
//!
//! `d = 1/2` gives zonal polynomials, `d = 1` multiples of Schur polynomials.
//! The Jack parameter is `α = 1/d`.
//!
//! Expansions are memoized per `(κ, d)` in a [`JackTable`]. Coefficients with
//! `ℓ(μ) > m` never contribute at `m` variables, and the recurrence for `λ`
//! only reads partitions of length `≤ ℓ(λ)`, so an entry is computed only up
//! to the length that has been requested so far.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use crate::error::{HgfError, Result};
use crate::gammafact::ConeParameter;
use crate::linalg::Matrix;
use crate::partitions::{enumerate, Partition};
use crate::scalar::Scalar;

/// Monomial expansion of one C-normalized Jack polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct JackExpansion<S> {
    pub kappa: Partition,
    /// Terms `m_μ` with `ℓ(μ)` above this bound were not computed.
    pub max_length: usize,
    pub terms: Vec<(Partition, S)>,
}

impl<S: Scalar> JackExpansion<S> {
    pub fn coefficient(&self, mu: &Partition) -> Option<&S> {
        self.terms.iter().find(|(p, _)| p == mu).map(|(_, c)| c)
    }

    fn covers(&self, length: usize) -> bool {
        self.max_length >= length.min(self.kappa.weight() as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct JackKey {
    kappa: Partition,
    d: ConeParameter,
}

/// Cache statistics, for benchmarks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

/// Shared memo table of Jack expansions.
///
/// Readers take a shared lock; a miss computes outside the lock and inserts
/// the result, so concurrent misses on the same key do redundant but
/// identical work.
#[derive(Debug, Default)]
pub struct JackTable<S> {
    entries: RwLock<HashMap<JackKey, Arc<JackExpansion<S>>>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

pub const CACHE_MAGIC: &str = "hgfmat-jack-cache";
pub const CACHE_VERSION: u32 = 1;

impl<S: Scalar> JackTable<S> {
    pub fn new() -> Self {
        JackTable {
            entries: RwLock::new(HashMap::new()),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    /// Expansion of `C_κ(·; d)` covering every `μ` with `ℓ(μ) ≤ max_length`.
    pub fn expansion(&self, kappa: &Partition, d: &ConeParameter, max_length: usize) -> Arc<JackExpansion<S>> {
        let key = JackKey { kappa: kappa.clone(), d: d.clone() };
        let previous = {
            let guard = self.entries.read().expect("jack table lock poisoned");
            match guard.get(&key) {
                Some(entry) if entry.covers(max_length) => {
                    self.hits.fetch_add(1, Ordering::Relaxed);
                    return Arc::clone(entry);
                }
                Some(entry) => entry.max_length,
                None => 0,
            }
        };
        self.misses.fetch_add(1, Ordering::Relaxed);
        let length = max_length.max(previous).min(kappa.weight() as usize);
        let computed = Arc::new(compute_expansion::<S>(kappa, d, length));
        let mut guard = self.entries.write().expect("jack table lock poisoned");
        let entry = guard.entry(key).or_insert_with(|| Arc::clone(&computed));
        if entry.max_length < computed.max_length {
            *entry = Arc::clone(&computed);
        }
        Arc::clone(entry)
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.entries.read().expect("jack table lock poisoned").len(),
        }
    }

    pub fn clear(&self) {
        self.entries.write().expect("jack table lock poisoned").clear();
        self.hits.store(0, Ordering::Relaxed);
        self.misses.store(0, Ordering::Relaxed);
    }

    /// Writes the table as text:
    ///
    /// ```text
    /// hgfmat-jack-cache 1 <exact|float> <entries>
    /// <kappa> <d> <max_length> <terms>
    /// <mu> <coefficient>        (one line per term)
    /// ```
    ///
    /// Partitions print as `(3,1)` / `()`, `d` and exact coefficients as `p/q`,
    /// float coefficients as shortest round-trip decimals. Entries are sorted
    /// so that dumps are reproducible.
    pub fn dump<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let guard = self.entries.read().expect("jack table lock poisoned");
        let mut keys: Vec<&JackKey> = guard.keys().collect();
        keys.sort_by(|a, b| {
            (a.kappa.weight(), &a.kappa, a.d.exact()).cmp(&(b.kappa.weight(), &b.kappa, b.d.exact())).reverse()
        });
        writeln!(out, "{CACHE_MAGIC} {CACHE_VERSION} {} {}", S::BACKEND, keys.len())?;
        for key in keys {
            let entry = &guard[key];
            writeln!(out, "{} {} {} {}", entry.kappa, key.d, entry.max_length, entry.terms.len())?;
            for (mu, c) in &entry.terms {
                writeln!(out, "{} {}", mu, c.render())?;
            }
        }
        Ok(())
    }

    /// Reads a dump produced by [`JackTable::dump`] for the same backend and
    /// merges it into the table; returns the number of entries read.
    pub fn load<R: BufRead>(&self, input: R) -> Result<usize> {
        let bad = |msg: &str| HgfError::CacheFormat(msg.to_string());
        let mut lines = input.lines();
        let mut next_line = || -> Result<String> {
            lines
                .next()
                .ok_or_else(|| bad("unexpected end of file"))?
                .map_err(|e| HgfError::CacheFormat(e.to_string()))
        };
        let header = next_line()?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != CACHE_MAGIC {
            return Err(bad("missing header"));
        }
        if fields[1] != CACHE_VERSION.to_string() {
            return Err(bad(&format!("unsupported version {}", fields[1])));
        }
        if fields[2] != S::BACKEND.to_string() {
            return Err(bad(&format!("cache is for the {} backend", fields[2])));
        }
        let count: usize = fields[3].parse().map_err(|_| bad("bad entry count"))?;
        let mut loaded = Vec::with_capacity(count);
        for _ in 0..count {
            let line = next_line()?;
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 {
                return Err(bad(&format!("bad entry line {line:?}")));
            }
            let kappa: Partition = f[0].parse()?;
            let d: ConeParameter = f[1].parse()?;
            let max_length: usize = f[2].parse().map_err(|_| bad("bad max length"))?;
            let n_terms: usize = f[3].parse().map_err(|_| bad("bad term count"))?;
            let mut terms = Vec::with_capacity(n_terms);
            for _ in 0..n_terms {
                let line = next_line()?;
                let (mu, c) = line.split_once(' ').ok_or_else(|| bad("bad term line"))?;
                terms.push((mu.parse::<Partition>()?, S::parse_value(c)?));
            }
            loaded.push((JackKey { kappa: kappa.clone(), d }, JackExpansion { kappa, max_length, terms }));
        }
        let mut guard = self.entries.write().expect("jack table lock poisoned");
        for (key, entry) in loaded {
            match guard.get(&key) {
                Some(existing) if existing.max_length >= entry.max_length => {}
                _ => {
                    guard.insert(key, Arc::new(entry));
                }
            }
        }
        Ok(count)
    }
}

fn rho<S: Scalar>(p: &Partition, d: &S) -> S {
    p.parts().iter().enumerate().fold(S::zero(), |acc, (i, &k)| {
        let k_s = S::of(k as i64);
        acc + k_s.clone() * (k_s - S::one() - d.clone() * S::of(2 * i as i64))
    })
}

fn compute_expansion<S: Scalar>(kappa: &Partition, d: &ConeParameter, max_length: usize) -> JackExpansion<S> {
    let weight = kappa.weight();
    let dv: S = d.value();
    // dominated partitions in reverse-lex order; κ comes first
    let shell: Vec<Partition> = enumerate(weight, max_length.max(1))
        .into_iter()
        .filter(|lambda| lambda.dominated_by(kappa))
        .collect();
    let index: HashMap<&Partition, usize> = shell.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let rho_kappa = rho(kappa, &dv);
    let two_d = dv.clone() + dv.clone();

    let mut coeffs: Vec<S> = vec![S::zero(); shell.len()];
    if !shell.is_empty() {
        coeffs[0] = S::one();
    }
    let mut moved = Vec::with_capacity(max_length);
    for (pos, lambda) in shell.iter().enumerate().skip(1) {
        let parts = lambda.parts();
        let mut acc = S::zero();
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                for t in 1..=parts[j] {
                    moved.clear();
                    moved.extend_from_slice(parts);
                    moved[i] += t;
                    moved[j] -= t;
                    let mu = Partition::from_unsorted(moved.clone());
                    if let Some(&q) = index.get(&mu) {
                        debug_assert!(q < pos);
                        if !coeffs[q].is_zero() {
                            let factor = S::of(parts[i] as i64 - parts[j] as i64 + 2 * t as i64);
                            acc = acc + factor * coeffs[q].clone();
                        }
                    }
                }
            }
        }
        let gap = rho_kappa.clone() - rho(lambda, &dv);
        debug_assert!(!gap.is_zero(), "degenerate eigenvalue for {kappa} vs {lambda}");
        coeffs[pos] = two_d.clone() * acc / gap;
    }

    // pair each factor of k! with one box to keep floats in range
    let mut scale = S::one();
    for (n, (arm, leg)) in kappa.arm_legs().enumerate() {
        scale = scale * S::of_usize(n + 1) / (S::of(arm as i64 + 1) + dv.clone() * S::of(leg as i64));
    }

    let terms = shell
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(mu, c)| (mu, c * scale.clone()))
        .collect();
    JackExpansion { kappa: kappa.clone(), max_length, terms }
}

/// Memoized monomial symmetric functions `m_μ(x)` at one spectrum.
pub struct MonomialCache<S> {
    x: Vec<S>,
    powers: Vec<Vec<S>>,
    memo: HashMap<Partition, S>,
}

impl<S: Scalar> MonomialCache<S> {
    pub fn new(x: &[S]) -> Self {
        MonomialCache {
            x: x.to_vec(),
            powers: x.iter().map(|_| vec![S::one()]).collect(),
            memo: HashMap::new(),
        }
    }

    fn power(&mut self, var: usize, exp: u32) -> S {
        let row = &mut self.powers[var];
        while row.len() <= exp as usize {
            let next = row.last().expect("x^0 present").clone() * self.x[var].clone();
            row.push(next);
        }
        row[exp as usize].clone()
    }

    /// Sum over distinct permutations of the exponent vector.
    pub fn get(&mut self, mu: &Partition) -> S {
        if mu.len() > self.x.len() {
            return S::zero();
        }
        if let Some(v) = self.memo.get(mu) {
            return v.clone();
        }
        let mut counts: Vec<(u32, usize)> = Vec::new();
        for e in mu.padded(self.x.len()) {
            match counts.iter_mut().find(|(v, _)| *v == e) {
                Some((_, c)) => *c += 1,
                None => counts.push((e, 1)),
            }
        }
        let value = self.orbit_sum(0, &mut counts);
        self.memo.insert(mu.clone(), value.clone());
        value
    }

    fn orbit_sum(&mut self, var: usize, counts: &mut [(u32, usize)]) -> S {
        if var == self.x.len() {
            return S::one();
        }
        let mut total = S::zero();
        for slot in 0..counts.len() {
            if counts[slot].1 == 0 {
                continue;
            }
            let exp = counts[slot].0;
            counts[slot].1 -= 1;
            let rest = self.orbit_sum(var + 1, counts);
            counts[slot].1 += 1;
            if !rest.is_zero() {
                total = total + self.power(var, exp) * rest;
            }
        }
        total
    }
}

/// `C_κ` from its expansion at a spectrum whose monomials are cached.
pub fn jack_c_cached<S: Scalar>(kappa: &Partition, d: &ConeParameter, monomials: &mut MonomialCache<S>) -> S {
    let m = monomials.x.len();
    if kappa.len() > m {
        return S::zero();
    }
    let expansion = S::jack_table().expansion(kappa, d, m);
    expansion
        .terms
        .iter()
        .filter(|(mu, _)| mu.len() <= m)
        .fold(S::zero(), |acc, (mu, c)| acc + c.clone() * monomials.get(mu))
}

/// Value of the C-normalized Jack polynomial `C_κ(x; d)`; zero when `ℓ(κ) > m`.
pub fn jack_c<S: Scalar>(kappa: &Partition, x: &[S], d: &ConeParameter) -> S {
    jack_c_cached(kappa, d, &mut MonomialCache::new(x))
}

/// `C_κ(1, …, 1; d)` with `m` ones.
pub fn jack_c_at_identity<S: Scalar>(kappa: &Partition, m: usize, d: &ConeParameter) -> S {
    jack_c(kappa, &vec![S::one(); m], d)
}

/// Complete homogeneous symmetric polynomials `h_0 .. h_max`.
fn complete_homogeneous<S: Scalar>(x: &[S], max: usize) -> Vec<S> {
    let mut h = vec![S::zero(); max + 1];
    h[0] = S::one();
    for xi in x {
        for k in 1..=max {
            h[k] = h[k].clone() + xi.clone() * h[k - 1].clone();
        }
    }
    h
}

/// Schur polynomial via the Jacobi–Trudi determinant `det(h_{λ_i - i + j})`,
/// which stays valid at repeated eigenvalues (unlike the bialternant).
pub fn schur<S: Scalar>(lambda: &Partition, x: &[S]) -> S {
    if lambda.len() > x.len() {
        return S::zero();
    }
    let n = lambda.len();
    let h = complete_homogeneous(x, lambda.weight() as usize + n);
    Matrix::from_fn(n, |i, j| {
        let idx = lambda.part(i) as i64 - i as i64 + j as i64;
        if idx < 0 {
            S::zero()
        } else {
            h[idx as usize].clone()
        }
    })
    .det()
}

/// Expansion coefficients of `C_κ` reported as `(μ, c)` pairs in reverse-lex order.
pub fn jack_c_coefficients<S: Scalar>(kappa: &Partition, d: &ConeParameter) -> Vec<(Partition, S)> {
    S::jack_table().expansion(kappa, d, kappa.weight() as usize).terms.clone()
}
