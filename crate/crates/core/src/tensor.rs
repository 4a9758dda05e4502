//! Tensor product multiplicities `m_{λ,μ}^ν` up to `δ`-depth `D`.
//!
//! Two independent methods are provided:
//!
//! * [`Method::Racah`]: `m_ν = Σ_w ε(w) mult_μ(w(ν+ρ) − ρ − λ)`, walking the
//!   affine Weyl orbit of `ν+ρ` downwards from the dominant point;
//! * [`Method::CharOracle`]: expand `ch V(λ) · ch V(μ)` on the dominant
//!   weights of the window and peel off `ch V(ν)` in order of height.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charmult::{dominant_coeffs_below, MultCache, MultTable};
use crate::error::{Error, Result};
use crate::rootdata::{CartanData, Coeffs};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Racah,
    CharOracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub nu: Weight,
    /// `c_0` of `λ + μ − ν`.
    pub delta_degree: u32,
    pub mult: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub lambda: Weight,
    pub mu: Weight,
    pub depth: u32,
    pub method: Method,
    /// Deepest `V(μ)` (Racah) or `V(λ)`, `V(μ)` (oracle) table consulted.
    pub table_depth: u32,
    pub components: Vec<Component>,
}

impl DecompositionReport {
    pub fn mult_of(&self, nu: &Weight) -> Option<u64> {
        self.components.iter().find(|c| &c.nu == nu).map(|c| c.mult)
    }

    /// Components with positive multiplicity.
    pub fn support(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.mult > 0)
    }
}

/// One orbit point of the Racah sum: `b = (λ+μ−ν) + o` with sign `ε(w)`.
#[derive(Clone, Debug)]
struct OrbitTerm {
    b: Coeffs,
    sign: i8,
}

/// Computes tensor multiplicities against a shared table cache.
pub struct Decomposer<'a> {
    cd: &'a CartanData,
    cache: Arc<MultCache>,
    depth_limit: Option<u32>,
}

impl<'a> Decomposer<'a> {
    pub fn new(cd: &'a CartanData) -> Self {
        Decomposer {
            cd,
            cache: Arc::new(MultCache::new()),
            depth_limit: None,
        }
    }

    pub fn with_cache(cd: &'a CartanData, cache: Arc<MultCache>) -> Self {
        Decomposer {
            cd,
            cache,
            depth_limit: None,
        }
    }

    /// Refuse to build multiplicity tables deeper than `limit`; sums that
    /// need more report [`Error::WindowInsufficient`].
    pub fn with_table_depth_limit(mut self, limit: Option<u32>) -> Self {
        self.depth_limit = limit;
        self
    }

    pub fn cartan(&self) -> &CartanData {
        self.cd
    }

    pub fn cache(&self) -> &Arc<MultCache> {
        &self.cache
    }

    fn table(&self, w: &Weight, depth: u32) -> Result<Arc<MultTable>> {
        if let Some(limit) = self.depth_limit {
            if depth > limit {
                return Err(Error::WindowInsufficient {
                    required: depth,
                    available: limit,
                });
            }
        }
        self.cache.get(self.cd, w, depth)
    }

    fn check_inputs(&self, lambda: &Weight, mu: &Weight) -> Result<()> {
        for w in [lambda, mu] {
            w.require_dominant(self.cd)?;
            if w.level < 1 {
                return Err(Error::Unsupported(format!(
                    "tensor factors must have positive level, got {}",
                    w.display(self.cd)
                )));
            }
        }
        Ok(())
    }

    /// Orbit points of `ν+ρ` whose Racah term can be nonzero.
    fn racah_terms(&self, mu_labels: &[i64], nu_labels: &[i64], c_nu: &Coeffs) -> Result<Vec<OrbitTerm>> {
        let cd = self.cd;
        let n = cd.rank + 1;
        let x0: Vec<i64> = nu_labels.iter().map(|x| x + 1).collect();
        if x0.iter().any(|&x| x <= 0) {
            return Err(Error::Invariant("ν+ρ is not regular dominant".into()));
        }
        // f(b) = N(2(μ|b) − (b|b)) ≥ 0 iff μ − b satisfies the norm bound;
        // it strictly decreases along each descent step.
        let f = |b: &Coeffs| 2 * cd.scaled_pair(mu_labels, b) - cd.scaled_norm(b);
        let mut parity: HashMap<Coeffs, u8> = HashMap::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        let zero = [0i32; crate::rootdata::MAX_NODES];
        if f(c_nu) < 0 {
            return Ok(out);
        }
        parity.insert(zero, 0);
        queue.push_back((zero, x0, 0u8));
        while let Some((o, x, p)) = queue.pop_front() {
            let mut b = *c_nu;
            for i in 0..n {
                b[i] += o[i];
            }
            out.push(OrbitTerm {
                b,
                sign: if p == 0 { 1 } else { -1 },
            });
            for i in 0..n {
                if x[i] <= 0 {
                    continue;
                }
                let step = x[i];
                let mut o2 = o;
                o2[i] += step as i32;
                let mut b2 = b;
                b2[i] += step as i32;
                if f(&b2) < 0 {
                    continue;
                }
                let p2 = p ^ 1;
                match parity.get(&o2) {
                    Some(&q) if q != p2 => {
                        return Err(Error::Invariant("inconsistent Weyl length parity".into()))
                    }
                    Some(_) => continue,
                    None => {}
                }
                parity.insert(o2, p2);
                let x2: Vec<i64> = (0..n).map(|j| x[j] - step * cd.cartan[j][i]).collect();
                queue.push_back((o2, x2, p2));
            }
        }
        Ok(out)
    }

    fn racah_sum(&self, table: &MultTable, terms: &[OrbitTerm]) -> Result<i128> {
        let mut total: i128 = 0;
        for t in terms {
            let m = table.mult_coeffs(self.cd, &t.b).ok_or(Error::WindowInsufficient {
                required: t.b[0] as u32,
                available: table.depth,
            })?;
            total += t.sign as i128 * m as i128;
        }
        Ok(total)
    }

    /// `m_{λ,μ}^ν` for one dominant `ν` by the Racah sum.
    pub fn multiplicity(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<u64> {
        self.check_inputs(lambda, mu)?;
        let cd = self.cd;
        let nu_labels = nu.require_dominant(cd)?;
        let top = lambda + mu;
        let Some(c_nu) = top.root_lattice_diff(cd, nu) else {
            return Ok(0);
        };
        if c_nu.iter().any(|&x| x < 0) {
            return Ok(0);
        }
        let mu_labels = mu.require_dominant(cd)?;
        let terms = self.racah_terms(&mu_labels, &nu_labels, &c_nu)?;
        let need = terms.iter().map(|t| t.b[0] as u32).max().unwrap_or(0);
        let table = self.table(mu, need)?;
        let m = self.racah_sum(&table, &terms)?;
        if m < 0 {
            return Err(Error::Invariant(format!(
                "negative Racah sum {m} at {}",
                nu.display(cd)
            )));
        }
        Ok(m as u64)
    }

    pub fn decompose(&self, lambda: &Weight, mu: &Weight, depth: u32, method: Method) -> Result<DecompositionReport> {
        match method {
            Method::Racah => self.decompose_racah(lambda, mu, depth),
            Method::CharOracle => self.decompose_oracle(lambda, mu, depth),
        }
    }

    fn report(&self, lambda: &Weight, mu: &Weight, depth: u32, method: Method, table_depth: u32, rows: Vec<(Coeffs, u64)>) -> DecompositionReport {
        let top = lambda + mu;
        DecompositionReport {
            ty: self.cd.ty.to_string(),
            lambda: lambda.clone(),
            mu: mu.clone(),
            depth,
            method,
            table_depth,
            components: rows
                .into_iter()
                .map(|(c, mult)| Component {
                    nu: top.sub_coeffs(self.cd, &c),
                    delta_degree: c[0] as u32,
                    mult,
                })
                .collect(),
        }
    }

    fn decompose_racah(&self, lambda: &Weight, mu: &Weight, depth: u32) -> Result<DecompositionReport> {
        self.check_inputs(lambda, mu)?;
        let cd = self.cd;
        let top = lambda + mu;
        let top_labels = top.require_dominant(cd)?;
        let mu_labels = mu.require_dominant(cd)?;
        let targets = dominant_coeffs_below(cd, &top, depth)?;
        let terms: Vec<Vec<OrbitTerm>> = targets
            .par_iter()
            .map(|c| self.racah_terms(&mu_labels, &cd.lower_labels(&top_labels, c), c))
            .collect::<Result<_>>()?;
        let need = terms
            .iter()
            .flatten()
            .map(|t| t.b[0] as u32)
            .max()
            .unwrap_or(0);
        let table = self.table(mu, need)?;
        let rows: Vec<(Coeffs, u64)> = targets
            .par_iter()
            .zip(terms.par_iter())
            .map(|(c, t)| {
                let m = self.racah_sum(&table, t)?;
                if m < 0 {
                    return Err(Error::Invariant(format!(
                        "negative Racah sum {m} at {}",
                        top.sub_coeffs(cd, c).display(cd)
                    )));
                }
                Ok((*c, m as u64))
            })
            .collect::<Result<_>>()?;
        Ok(self.report(lambda, mu, depth, Method::Racah, table.depth, rows))
    }

    fn decompose_oracle(&self, lambda: &Weight, mu: &Weight, depth: u32) -> Result<DecompositionReport> {
        self.check_inputs(lambda, mu)?;
        let cd = self.cd;
        let n = cd.rank + 1;
        let top = lambda + mu;
        let targets = dominant_coeffs_below(cd, &top, depth)?;
        let tl = self.table(lambda, depth)?;
        let tm = self.table(mu, depth)?;

        // Coefficient of e^{top − c} in ch V(λ)·ch V(μ).
        let product_coef = |c: &Coeffs| -> u64 {
            let mut total = 0u64;
            let mut b = [0i32; crate::rootdata::MAX_NODES];
            loop {
                let mut rest = *c;
                for i in 0..n {
                    rest[i] -= b[i];
                }
                let mm = tm.mult_coeffs(cd, &b).unwrap_or(0);
                if mm != 0 {
                    total += mm * tl.mult_coeffs(cd, &rest).unwrap_or(0);
                }
                // odometer over 0 ≤ b ≤ c
                let mut i = 0;
                loop {
                    if i == n {
                        return total;
                    }
                    if b[i] < c[i] {
                        b[i] += 1;
                        break;
                    }
                    b[i] = 0;
                    i += 1;
                }
            }
        };
        let coefs: Vec<u64> = targets.par_iter().map(product_coef).collect();

        let mut order: Vec<usize> = (0..targets.len()).collect();
        order.sort_by_key(|&k| (targets[k].iter().sum::<i32>(), targets[k]));
        let mut mults = vec![0u64; targets.len()];
        let mut found: Vec<(Coeffs, u64, Arc<MultTable>)> = Vec::new();
        for k in order {
            let c = &targets[k];
            let mut rem = coefs[k] as i128;
            for (ce, me, table) in &found {
                if (0..n).all(|i| ce[i] <= c[i]) {
                    let mut d = *c;
                    for i in 0..n {
                        d[i] -= ce[i];
                    }
                    let m = table.mult_coeffs(cd, &d).ok_or(Error::WindowInsufficient {
                        required: d[0] as u32,
                        available: table.depth,
                    })?;
                    rem -= *me as i128 * m as i128;
                }
            }
            if rem < 0 {
                return Err(Error::Invariant(format!(
                    "negative character-product remainder at {}",
                    top.sub_coeffs(cd, c).display(cd)
                )));
            }
            mults[k] = rem as u64;
            if rem > 0 {
                let eta = top.sub_coeffs(cd, c);
                let table = self.table(&eta, depth - c[0] as u32)?;
                found.push((*c, rem as u64, table));
            }
        }
        let rows = targets.into_iter().zip(mults).collect();
        Ok(self.report(lambda, mu, depth, Method::CharOracle, depth, rows))
    }
}

/// Racah decomposition with a private cache.
pub fn tensor_mults(cd: &CartanData, lambda: &Weight, mu: &Weight, depth: u32) -> Result<DecompositionReport> {
    Decomposer::new(cd).decompose(lambda, mu, depth, Method::Racah)
}

/// Character-product decomposition with a private cache.
pub fn tensor_mults_oracle(cd: &CartanData, lambda: &Weight, mu: &Weight, depth: u32) -> Result<DecompositionReport> {
    Decomposer::new(cd).decompose(lambda, mu, depth, Method::CharOracle)
}

/// `m_{λ,μ}^ν ≥ 1` implies `m_{λ+λ',μ+μ'}^{ν+λ'+μ'} ≥ 1`.
pub fn additivity_check(
    dec: &Decomposer<'_>,
    lambda: &Weight,
    lambda2: &Weight,
    mu: &Weight,
    mu2: &Weight,
    nu: &Weight,
) -> Result<bool> {
    let small = dec.multiplicity(lambda, mu, nu)?;
    let big = dec.multiplicity(&(lambda + lambda2), &(mu + mu2), &(&(nu + lambda2) + mu2))?;
    Ok(small == 0 || big >= 1)
}

/// Entrywise comparison; returns the `ν` where the reports differ.
pub fn compare_reports(a: &DecompositionReport, b: &DecompositionReport) -> Vec<Weight> {
    let mut diffs = Vec::new();
    let bm: HashMap<&Weight, u64> = b.components.iter().map(|c| (&c.nu, c.mult)).collect();
    for c in &a.components {
        if bm.get(&c.nu).copied().unwrap_or(0) != c.mult {
            diffs.push(c.nu.clone());
        }
    }
    let am: HashMap<&Weight, u64> = a.components.iter().map(|c| (&c.nu, c.mult)).collect();
    for c in &b.components {
        if !am.contains_key(&c.nu) && c.mult != 0 {
            diffs.push(c.nu.clone());
        }
    }
    diffs
}
