//! Depth-truncated weight multiplicities of integrable highest-weight
//! modules via the Freudenthal recursion.
//!
//! A weight `ν = λ − Σ c_i α_i` is identified with its coefficient vector
//! `c`. Since multiplicities are invariant under the finite Weyl group and
//! each `δ`-level (fixed `c_0`) is stable under it, only weights whose finite
//! labels are non-negative are stored; other weights are first reflected to
//! that representative.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, q, Q};
use crate::rootdata::{AffineType, CartanData, Coeffs, MAX_NODES};
use crate::weight::{inv_form, Weight};

#[derive(Clone, Debug)]
pub struct MultTable {
    pub highest: Weight,
    pub depth: u32,
    labels: Vec<i64>,
    rank: usize,
    /// Finite-dominant weights only.
    dominant: HashMap<Coeffs, u64>,
    /// Per `δ`-level upper bound on `(ν̄|ν̄)` used to bound candidates.
    level_bounds: Vec<Q>,
}

/// One row of an exported table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultEntry {
    pub weight: Weight,
    pub mult: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultTableExport {
    pub highest: Weight,
    pub depth: u32,
    #[serde(with = "rational::vec_as_string")]
    pub norm_bounds: Vec<Q>,
    pub entries: Vec<MultEntry>,
}

fn height(c: &Coeffs) -> i32 {
    c.iter().sum()
}

impl MultTable {
    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn norm_bounds(&self) -> &[Q] {
        &self.level_bounds
    }

    /// Number of stored finite-dominant weights.
    pub fn dominant_len(&self) -> usize {
        self.dominant.len()
    }

    /// Finite-dominant entries sorted by `(c_0, height, c)`.
    pub fn dominant_entries(&self) -> Vec<(Coeffs, u64)> {
        let mut v: Vec<_> = self.dominant.iter().map(|(c, m)| (*c, *m)).collect();
        v.sort_by_key(|(c, _)| (c[0], height(c), *c));
        v
    }

    /// Multiplicity of `λ − Σ c_i α_i`, or `None` when `c_0` lies beyond the
    /// retained depth.
    pub fn mult_coeffs(&self, cd: &CartanData, c: &Coeffs) -> Option<u64> {
        if c[0] < 0 || c[0] as u32 > self.depth {
            return if c[0] < 0 { Some(0) } else { None };
        }
        Some(lookup(cd, &self.labels, &self.dominant, c))
    }

    /// Multiplicity of an arbitrary weight. `None` if `ν` lies in
    /// `λ − Q⁺` but deeper than the table.
    pub fn mult(&self, cd: &CartanData, nu: &Weight) -> Option<u64> {
        match self.highest.root_lattice_diff(cd, nu) {
            None => Some(0),
            Some(c) => self.mult_coeffs(cd, &c),
        }
    }

    /// All weights with nonzero multiplicity (full finite Weyl orbits),
    /// sorted by `(c_0, height, c)`.
    pub fn full_support(&self, cd: &CartanData) -> Vec<(Coeffs, u64)> {
        let mut out = Vec::new();
        for (c, m) in self.dominant_entries() {
            for o in finite_orbit(cd, &self.labels, &c) {
                out.push((o, m));
            }
        }
        out.sort_by_key(|(c, _)| (c[0], height(c), *c));
        out
    }

    pub fn export(&self, cd: &CartanData) -> MultTableExport {
        let entries = self
            .full_support(cd)
            .into_iter()
            .map(|(c, mult)| MultEntry {
                weight: self.highest.sub_coeffs(cd, &c),
                mult,
            })
            .collect();
        MultTableExport {
            highest: self.highest.clone(),
            depth: self.depth,
            norm_bounds: self.level_bounds.clone(),
            entries,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Finite labels of `λ − Σ c α` at indices `1..=ℓ` plus the label at 0.
fn labels_of(cd: &CartanData, lambda: &[i64], c: &Coeffs) -> Vec<i64> {
    cd.lower_labels(lambda, c)
}

/// Reflects `c` to its finite-dominant representative. Returns `None` when
/// a coefficient turns negative, in which case the weight is not in
/// `λ − Q⁺` and has multiplicity zero.
fn to_dominant(cd: &CartanData, lambda: &[i64], c: &Coeffs) -> Option<Coeffs> {
    let mut c = *c;
    let mut lab = labels_of(cd, lambda, &c);
    loop {
        let Some(i) = (1..=cd.rank).find(|&i| lab[i] < 0) else {
            return Some(c);
        };
        let li = lab[i];
        c[i] += li as i32;
        if c[i] < 0 {
            return None;
        }
        for (j, l) in lab.iter_mut().enumerate() {
            *l -= li * cd.cartan[j][i];
        }
    }
}

fn lookup(cd: &CartanData, lambda: &[i64], table: &HashMap<Coeffs, u64>, c: &Coeffs) -> u64 {
    if c.iter().any(|&x| x < 0) {
        return 0;
    }
    match to_dominant(cd, lambda, c) {
        Some(d) => table.get(&d).copied().unwrap_or(0),
        None => 0,
    }
}

/// Orbit of `λ − Σ c α` under `s_1, …, s_ℓ`, as coefficient vectors.
pub(crate) fn finite_orbit(cd: &CartanData, lambda: &[i64], c: &Coeffs) -> Vec<Coeffs> {
    let mut seen: HashSet<Coeffs> = HashSet::new();
    let mut queue = VecDeque::from([*c]);
    seen.insert(*c);
    while let Some(x) = queue.pop_front() {
        let lab = labels_of(cd, lambda, &x);
        for i in 1..=cd.rank {
            if lab[i] == 0 {
                continue;
            }
            let mut y = x;
            y[i] += lab[i] as i32;
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort();
    v
}

/// Non-negative integer vectors `n` of length `ℓ` with `nᵀ G n ≤ bound`,
/// where `G` is the scaled Gram matrix of fundamental weights (all entries
/// positive, so partial sums prune).
fn finite_labels_within(cd: &CartanData, bound: i64) -> Vec<Vec<i64>> {
    let g = &cd.fund_gram_int;
    let n = cd.rank;
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(g: &[Vec<i64>], i: usize, partial: i64, bound: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let mut v = 0;
        loop {
            cur[i] = v;
            let mut p = partial + v * v * g[i][i];
            for j in 0..i {
                p += 2 * v * cur[j] * g[i][j];
            }
            if p > bound {
                break;
            }
            rec(g, i + 1, p, bound, cur, out);
            v += 1;
        }
        cur[i] = 0;
    }
    rec(g, 0, 0, bound, &mut cur, &mut out);
    out
}

/// Freudenthal multiplicities of `V(λ)` for all weights with `δ`-degree
/// at most `depth`.
pub fn freudenthal_mults(cd: &CartanData, lambda: &Weight, depth: u32) -> Result<MultTable> {
    let labels = lambda.require_dominant(cd)?;
    let rank = cd.rank;
    let lam_bar = Weight {
        s: Q::zero(),
        level: 0,
        ..lambda.clone()
    };
    let lam_norm = inv_form(cd, &lam_bar, &lam_bar);

    let mut dominant: HashMap<Coeffs, u64> = HashMap::new();
    dominant.insert([0; MAX_NODES], 1);
    let level_bounds: Vec<Q> = (0..=depth)
        .map(|c0| lam_norm + q(2 * lambda.level * c0 as i64))
        .collect();

    if lambda.level == 0 {
        // every label vanishes: the trivial module
        return Ok(MultTable {
            highest: lambda.clone(),
            depth,
            labels,
            rank,
            dominant,
            level_bounds,
        });
    }

    // Candidates: finite-dominant ν with c ≥ 0, c_0 ≤ depth, inside the norm
    // bound. Coefficients solve Å c̄ = λ̄ + c_0 θ^lab − n.
    let theta_labels: Vec<i64> = (1..=rank).map(|j| -cd.cartan[j][0]).collect();
    let mut candidates: Vec<Coeffs> = Vec::new();
    for c0 in 0..=depth as i64 {
        let bound_q = level_bounds[c0 as usize] * q(cd.fund_scale);
        let bound = bound_q.to_integer();
        for n in finite_labels_within(cd, bound) {
            let rhs: Vec<i64> = (0..rank)
                .map(|j| labels[j + 1] + c0 * theta_labels[j] - n[j])
                .collect();
            let Some(cf) = cd.solve_finite(&rhs) else {
                continue;
            };
            if cf.iter().any(|&x| x < 0) {
                continue;
            }
            let mut c = [0i32; MAX_NODES];
            c[0] = c0 as i32;
            for i in 0..rank {
                c[i + 1] = cf[i] as i32;
            }
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            candidates.push(c);
        }
    }
    candidates.sort_by_key(|c| (height(c), *c));

    let roots = cd.positive_roots_upto(depth);
    let lam_plus_rho: Vec<i64> = labels.iter().map(|&x| x + 1).collect();

    for c in candidates {
        let nu_labels = labels_of(cd, &labels, &c);
        // N·((λ+ρ|λ+ρ) − (ν+ρ|ν+ρ)) = N·(2(λ+ρ|β) − (β|β)) with β = Σ c α
        let den = 2 * cd.scaled_pair(&lam_plus_rho, &c) - cd.scaled_norm(&c);
        if den <= 0 {
            return Err(Error::Invariant(format!(
                "non-positive Freudenthal denominator at {}",
                lambda.sub_coeffs(cd, &c).display(cd)
            )));
        }
        let mut num: i128 = 0;
        for (alpha, mult_alpha) in &roots {
            if alpha[0] > c[0] {
                continue;
            }
            let nu_alpha = cd.scaled_pair(&nu_labels, alpha) as i128;
            let alpha_norm = cd.scaled_norm(alpha) as i128;
            let mut j = 1i32;
            loop {
                let mut d = c;
                let mut ok = true;
                for i in 0..=rank {
                    d[i] -= j * alpha[i];
                    if d[i] < 0 {
                        ok = false;
                    }
                }
                if !ok {
                    break;
                }
                let m = lookup(cd, &labels, &dominant, &d) as i128;
                if m != 0 {
                    num += *mult_alpha as i128 * m * (nu_alpha + j as i128 * alpha_norm);
                }
                j += 1;
            }
        }
        num *= 2;
        if num % den as i128 != 0 {
            return Err(Error::Invariant(format!(
                "inexact Freudenthal division {num}/{den} at {}",
                lambda.sub_coeffs(cd, &c).display(cd)
            )));
        }
        let m = num / den as i128;
        if m < 0 {
            return Err(Error::Invariant(format!(
                "negative multiplicity at {}",
                lambda.sub_coeffs(cd, &c).display(cd)
            )));
        }
        if m > 0 {
            dominant.insert(c, m as u64);
        }
    }

    Ok(MultTable {
        highest: lambda.clone(),
        depth,
        labels,
        rank,
        dominant,
        level_bounds,
    })
}

type CacheKey = (AffineType, Vec<i64>, Q);

/// Process-wide memo of multiplicity tables keyed by `(type, λ)`; each key
/// keeps the deepest table built so far.
#[derive(Default)]
pub struct MultCache {
    tables: RwLock<HashMap<CacheKey, Arc<MultTable>>>,
}

impl MultCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// A table for `λ` with depth at least `depth`.
    pub fn get(&self, cd: &CartanData, lambda: &Weight, depth: u32) -> Result<Arc<MultTable>> {
        let labels = lambda.require_dominant(cd)?;
        let key = (cd.ty, labels, lambda.s);
        if let Some(t) = self.tables.read().expect("cache lock").get(&key) {
            if t.depth >= depth {
                return Ok(Arc::clone(t));
            }
        }
        let table = Arc::new(freudenthal_mults(cd, lambda, depth)?);
        let mut guard = self.tables.write().expect("cache lock");
        let entry = guard.entry(key).or_insert_with(|| Arc::clone(&table));
        if entry.depth < table.depth {
            *entry = Arc::clone(&table);
        }
        Ok(Arc::clone(entry))
    }

    pub fn len(&self) -> usize {
        self.tables.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Dominant integral `ν = top − Σ c_i α_i` with `c ≥ 0` and `c_0 ≤ depth`,
/// sorted by `(c_0, height)` and then by coefficient vector.
pub fn dominant_weights_below(cd: &CartanData, top: &Weight, depth: u32) -> Result<Vec<Weight>> {
    Ok(dominant_coeffs_below(cd, top, depth)?
        .into_iter()
        .map(|c| top.sub_coeffs(cd, &c))
        .collect())
}

pub(crate) fn dominant_coeffs_below(cd: &CartanData, top: &Weight, depth: u32) -> Result<Vec<Coeffs>> {
    let top_labels = top.labels(cd).ok_or_else(|| Error::NotIntegral(top.display(cd)))?;
    let rank = cd.rank;
    let level = top.level;
    let mut out = Vec::new();
    if level < 0 {
        return Ok(out);
    }
    // Dominant label vectors n with Σ a_i^∨ n_i = level.
    let mut grid = Vec::new();
    let mut cur = vec![0i64; rank + 1];
    fn rec(cd: &CartanData, i: usize, rest: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut v = 0;
        while v * cd.comarks[i] <= rest {
            cur[i] = v;
            rec(cd, i + 1, rest - v * cd.comarks[i], cur, out);
            v += 1;
        }
        cur[i] = 0;
    }
    rec(cd, 0, level, &mut cur, &mut grid);

    for n in grid {
        let rhs: Vec<i64> = (0..rank).map(|j| top_labels[j + 1] - n[j + 1]).collect();
        let Some(base) = cd.solve_finite(&rhs) else {
            continue;
        };
        // c_i = base_i + c_0 θ_i; smallest admissible c_0
        let mut min_c0 = 0i64;
        for (&b, &t) in base.iter().zip(&cd.theta) {
            let t = t as i64;
            if b < 0 {
                min_c0 = min_c0.max((-b + t - 1) / t);
            }
        }
        for c0 in min_c0..=depth as i64 {
            let mut c = [0i32; MAX_NODES];
            c[0] = c0 as i32;
            for i in 0..rank {
                c[i + 1] = (base[i] + c0 * cd.theta[i] as i64) as i32;
            }
            out.push(c);
        }
    }
    out.sort_by_key(|c| (c[0], height(c), *c));
    Ok(out)
}
