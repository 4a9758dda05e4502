//! Untwisted affine root data `X_ℓ^(1)` and root-level combinatorics.
//!
//! Affine roots are handled in two coordinate systems:
//!
//! * [`Root`]: a finite part `γ` in the simple-root basis of the finite
//!   algebra plus a coefficient `k` of `δ`, i.e. `γ + kδ`;
//! * [`Coeffs`]: coefficients `(c_0, …, c_ℓ)` on the affine simple roots
//!   `α_0, …, α_ℓ`. Since `α_0 = δ − θ`, `c_0` equals `k` and
//!   `c_i = γ_i + k·a_i` for `i ≥ 1`.
//!
//! All tables are built by closure from the Cartan matrix; only the finite
//! Cartan matrices (Bourbaki numbering) are hard-coded.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{invert, lcm, q, Q};
use crate::weight::Weight;

/// Largest supported number of affine nodes (`E_8^(1)` has nine).
pub const MAX_NODES: usize = 9;

/// Coefficients on `α_0, …, α_ℓ`; unused trailing slots stay zero.
pub type Coeffs = [i32; MAX_NODES];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// Label of an untwisted affine type. `B_2` is stored as `C_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineType {
    family: Family,
    rank: usize,
}

impl AffineType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let bad = |constraint| {
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                constraint,
            })
        };
        match family {
            Family::A if rank < 1 => bad("invalid rank: A requires rank >= 1"),
            Family::B if rank < 2 => bad("invalid rank: B requires rank >= 2"),
            Family::C if rank < 2 => bad("invalid rank: C requires rank >= 2"),
            Family::D if rank < 4 => bad("invalid rank: D requires rank >= 4"),
            Family::E if !(6..=8).contains(&rank) => bad("invalid rank: E requires rank 6, 7 or 8"),
            Family::F if rank != 4 => bad("invalid rank: F requires rank 4"),
            Family::G if rank != 2 => bad("invalid rank: G requires rank 2"),
            _ if rank + 1 > MAX_NODES => bad("invalid rank: at most 8 is supported"),
            Family::B if rank == 2 => Ok(AffineType {
                family: Family::C,
                rank: 2,
            }),
            _ => Ok(AffineType { family, rank }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// A representative list of every family, used by sweeps.
    pub fn catalogue() -> Vec<AffineType> {
        let mut out = Vec::new();
        let mut push = |f, r| out.push(AffineType::new(f, r).expect("catalogue entry"));
        for r in 1..=5 {
            push(Family::A, r);
        }
        for r in 3..=6 {
            push(Family::B, r);
        }
        for r in 2..=6 {
            push(Family::C, r);
        }
        for r in 4..=6 {
            push(Family::D, r);
        }
        for r in 6..=8 {
            push(Family::E, r);
        }
        push(Family::F, 4);
        push(Family::G, 2);
        out
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}~", self.family.letter(), self.rank)
    }
}

impl FromStr for AffineType {
    type Err = Error;

    /// Accepts `A1~`, `A1^(1)`, `A1^{(1)}`, `A_1^(1)` and a bare `A1`.
    fn from_str(s: &str) -> Result<Self> {
        let raw = s.trim();
        let mut body = raw.replace('_', "");
        for suffix in ["~", "^(1)", "^{(1)}", "(1)"] {
            if let Some(stripped) = body.strip_suffix(suffix) {
                body = stripped.to_string();
                break;
            }
        }
        if body.contains('^') || body.contains('(') {
            return Err(Error::Twisted(raw.to_string()));
        }
        let mut chars = body.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::UnknownType(raw.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownType(raw.to_string()))?;
        AffineType::new(family, rank)
    }
}

impl Serialize for AffineType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AffineType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Classification of a vector `γ + kδ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum RootClass {
    Real,
    Imaginary { multiplicity: u32 },
    NotRoot,
}

/// `γ + kδ` with `γ` in the finite simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub gamma: Vec<i32>,
    pub k: i32,
}

impl Root {
    pub fn new(gamma: Vec<i32>, k: i32) -> Self {
        Root { gamma, k }
    }

    pub fn imaginary(rank: usize, k: i32) -> Self {
        Root {
            gamma: vec![0; rank],
            k,
        }
    }

    /// `α_i` as a root (`α_0 = δ − θ`).
    pub fn simple(cd: &CartanData, i: usize) -> Self {
        let mut c = [0; MAX_NODES];
        c[i] = 1;
        Root::from_coeffs(cd, &c)
    }

    pub fn coeffs(&self, cd: &CartanData) -> Coeffs {
        let mut c = [0; MAX_NODES];
        c[0] = self.k;
        for i in 0..cd.rank {
            c[i + 1] = self.gamma[i] + self.k * cd.marks[i + 1] as i32;
        }
        c
    }

    pub fn from_coeffs(cd: &CartanData, c: &Coeffs) -> Self {
        let k = c[0];
        let gamma = (0..cd.rank)
            .map(|i| c[i + 1] - k * cd.marks[i + 1] as i32)
            .collect();
        Root { gamma, k }
    }

    pub fn is_imaginary_shape(&self) -> bool {
        self.gamma.iter().all(|&g| g == 0) && self.k != 0
    }

    /// Affine simple-root expression such as `a0+3a1+a2`.
    pub fn display(&self, cd: &CartanData) -> String {
        fmt_coeffs(&self.coeffs(cd), cd.rank)
    }

    /// Parses integer combinations of `a<i>` (simple roots) and `d` (δ),
    /// e.g. `d-a2`, `a0+3*a1+a2`, `2d`.
    pub fn parse(cd: &CartanData, s: &str) -> Result<Root> {
        let terms = crate::weight::parse_terms(s)?;
        let mut c = [0i32; MAX_NODES];
        for (coef, atom) in terms {
            let n = crate::rational::to_integer(&coef)
                .ok_or_else(|| Error::Parse(format!("root coefficients must be integers in `{s}`")))?
                as i32;
            match atom.as_str() {
                "d" | "delta" => {
                    for (i, slot) in c.iter_mut().enumerate().take(cd.rank + 1) {
                        *slot += n * cd.marks[i] as i32;
                    }
                }
                a if a.starts_with('a') => {
                    let i: usize = a[1..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad simple root `{a}`")))?;
                    cd.check_index(i)?;
                    c[i] += n;
                }
                other => return Err(Error::Parse(format!("unexpected `{other}` in root `{s}`"))),
            }
        }
        Ok(Root::from_coeffs(cd, &c))
    }
}

pub(crate) fn fmt_coeffs(c: &Coeffs, rank: usize) -> String {
    let mut out = String::new();
    for (i, &v) in c.iter().enumerate().take(rank + 1) {
        if v == 0 {
            continue;
        }
        if v < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if v.abs() != 1 {
            out.push_str(&v.abs().to_string());
        }
        out.push_str(&format!("a{i}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Subset of the affine node indices `{0, …, ℓ}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(u16);

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(0)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        IndexSet(it.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// All subsets of `{0, …, n-1}`.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = IndexSet> {
        (0u16..(1 << n)).map(IndexSet)
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..16).filter(move |&i| self.contains(i))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Serialize for IndexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.iter().any(|&i| i >= 16) {
            return Err(serde::de::Error::custom("index set member out of range"));
        }
        Ok(IndexSet::from_indices(v))
    }
}

/// A row of the exceptional-root table: `β = δ − γ` with `β − 2α_j ∈ Φ⁺`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalRoot {
    pub gamma: Vec<i32>,
    pub simple: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanClause {
    /// `β − 2α_j ∈ Φ ∪ {0}`
    DoubleDescent,
    /// `β − 2α_j − α_i ∈ Φ ∪ {0}`
    MixedDescent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanViolation {
    pub beta: Root,
    pub i: usize,
    pub j: usize,
    pub clause: ScanClause,
}

/// Immutable affine root datum.
#[derive(Clone, Debug)]
pub struct CartanData {
    pub ty: AffineType,
    pub rank: usize,
    /// `(ℓ+1)×(ℓ+1)` affine Cartan matrix, `a_ij = α_j(α_i^∨)`.
    pub cartan: Vec<Vec<i64>>,
    /// `d_i = (α_i|α_i)/2`; `(α_i|α_j) = d_i a_ij`.
    pub symmetrizer: Vec<Q>,
    /// Highest root in the finite simple-root basis.
    pub theta: Vec<i32>,
    pub marks: Vec<i64>,
    pub comarks: Vec<i64>,
    pub dual_coxeter: i64,
    pub dim_finite: usize,
    /// `(α_i|α_j)` for `1 ≤ i, j ≤ ℓ`.
    pub finite_gram: Vec<Vec<Q>>,
    /// `(Λ̄_i|Λ̄_j)` for `1 ≤ i, j ≤ ℓ`.
    pub fund_gram: Vec<Vec<Q>>,

    finite_roots: Vec<Vec<i32>>,
    finite_root_set: HashSet<Vec<i32>>,
    inv_finite_cartan: Vec<Vec<Q>>,
    /// `N·d_i`, with `N` the least integer making each entry integral.
    pub(crate) scaled_sym: Vec<i64>,
    /// `M·(Λ̄_i|Λ̄_j)` as integers, with `M = fund_scale`.
    pub(crate) fund_gram_int: Vec<Vec<i64>>,
    pub(crate) fund_scale: i64,
}

fn finite_cartan(family: Family, rank: usize) -> Vec<Vec<i64>> {
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i - 1][j - 1] = -1;
        a[j - 1][i - 1] = -1;
    };
    match family {
        Family::A | Family::B | Family::C | Family::F | Family::G => {
            for i in 1..n {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 1..n - 1 {
                link(i, i + 1);
            }
            link(n - 2, n);
        }
        Family::E => {
            link(1, 3);
            link(2, 4);
            for i in 3..n {
                link(i, i + 1);
            }
        }
    }
    match family {
        // α_ℓ short
        Family::B => a[n - 1][n - 2] = -2,
        // α_ℓ long
        Family::C => a[n - 2][n - 1] = -2,
        // α_1, α_2 long; α_3, α_4 short
        Family::F => a[2][1] = -2,
        // α_1 short
        Family::G => a[0][1] = -3,
        _ => {}
    }
    a
}

impl CartanData {
    pub fn new(ty: AffineType) -> Self {
        build_cartan(ty)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i > self.rank {
            Err(Error::IndexOutOfRange {
                index: i,
                max: self.rank,
            })
        } else {
            Ok(())
        }
    }

    /// All roots of the finite root system, sorted positive-first by height.
    pub fn finite_roots(&self) -> &[Vec<i32>] {
        &self.finite_roots
    }

    pub fn finite_positive_roots(&self) -> impl Iterator<Item = &Vec<i32>> {
        self.finite_roots.iter().filter(|g| g.iter().all(|&x| x >= 0))
    }

    pub fn is_finite_root(&self, gamma: &[i32]) -> bool {
        self.finite_root_set.contains(gamma)
    }

    /// Inverse of the finite Cartan matrix.
    pub fn inv_finite_cartan(&self) -> &[Vec<Q>] {
        &self.inv_finite_cartan
    }

    /// Classifies the vector `(γ_1, …, γ_ℓ; k)`.
    pub fn classify_root(&self, v: &[i32]) -> RootClass {
        assert_eq!(v.len(), self.rank + 1, "expected ℓ+1 coordinates");
        self.classify_gamma_k(&v[..self.rank], v[self.rank])
    }

    fn classify_gamma_k(&self, gamma: &[i32], k: i32) -> RootClass {
        if gamma.iter().all(|&g| g == 0) {
            if k == 0 {
                RootClass::NotRoot
            } else {
                RootClass::Imaginary {
                    multiplicity: self.rank as u32,
                }
            }
        } else if self.is_finite_root(gamma) {
            RootClass::Real
        } else {
            RootClass::NotRoot
        }
    }

    pub fn classify(&self, root: &Root) -> RootClass {
        self.classify_gamma_k(&root.gamma, root.k)
    }

    pub fn classify_coeffs(&self, c: &Coeffs) -> RootClass {
        let r = Root::from_coeffs(self, c);
        self.classify(&r)
    }

    pub(crate) fn is_root_coeffs(&self, c: &Coeffs) -> bool {
        self.classify_coeffs(c) != RootClass::NotRoot
    }

    pub(crate) fn is_root_or_zero_coeffs(&self, c: &Coeffs) -> bool {
        c.iter().all(|&x| x == 0) || self.is_root_coeffs(c)
    }

    pub(crate) fn is_positive_root_coeffs(&self, c: &Coeffs) -> bool {
        c.iter().all(|&x| x >= 0) && self.is_root_coeffs(c)
    }

    pub fn is_positive_root(&self, root: &Root) -> bool {
        self.is_positive_root_coeffs(&root.coeffs(self))
    }

    /// Positive affine roots with `δ`-coefficient at most `max_k`, paired with
    /// their multiplicities, in simple-root coordinates.
    pub fn positive_roots_upto(&self, max_k: u32) -> Vec<(Coeffs, u32)> {
        let mut out = Vec::new();
        for k in 0..=max_k as i32 {
            for gamma in &self.finite_roots {
                let positive = gamma.iter().all(|&x| x >= 0);
                if k == 0 && !positive {
                    continue;
                }
                out.push((Root::new(gamma.clone(), k).coeffs(self), 1));
            }
            if k > 0 {
                out.push((Root::imaginary(self.rank, k).coeffs(self), self.rank as u32));
            }
        }
        out
    }

    /// `F_β`: indices `i` with `β − α_i ∉ Φ ⊔ {0}`.
    pub fn f_set(&self, beta: &Root) -> Result<IndexSet> {
        let c = beta.coeffs(self);
        if !self.is_positive_root_coeffs(&c) {
            return Err(Error::NotPositiveRoot(beta.display(self)));
        }
        Ok(self.f_set_coeffs(&c))
    }

    pub(crate) fn f_set_coeffs(&self, c: &Coeffs) -> IndexSet {
        let mut set = IndexSet::empty();
        for i in 0..=self.rank {
            let mut d = *c;
            d[i] -= 1;
            if !self.is_root_or_zero_coeffs(&d) {
                set.insert(i);
            }
        }
        set
    }

    /// `ρ_β = Σ_{i ∉ F_β} Λ_i`.
    pub fn rho_beta(&self, beta: &Root) -> Result<Weight> {
        let f = self.f_set(beta)?;
        let mut w = Weight::zero(self.rank);
        for i in (0..=self.rank).filter(|&i| !f.contains(i)) {
            w = &w + &Weight::fundamental(self, i);
        }
        Ok(w)
    }

    /// All `(γ, j)` with `γ ∈ Φ̊⁺`, `1 ≤ j ≤ ℓ` and `δ − γ − 2α_j ∈ Φ⁺`.
    pub fn exceptional_roots(&self) -> Vec<ExceptionalRoot> {
        let mut out = Vec::new();
        for gamma in self.finite_positive_roots() {
            let neg: Vec<i32> = gamma.iter().map(|&x| -x).collect();
            let beta = Root::new(neg, 1).coeffs(self);
            for j in 1..=self.rank {
                let mut d = beta;
                d[j] -= 2;
                if self.is_positive_root_coeffs(&d) {
                    out.push(ExceptionalRoot {
                        gamma: gamma.clone(),
                        simple: j,
                    });
                }
            }
        }
        out
    }

    /// Scans real positive `β = γ + kδ` (`0 ≤ k ≤ k_max`) for a second
    /// double-descent direction next to one with `β − 2α_i ∈ Φ`.
    pub fn lemma_root_scan(&self, k_max: u32) -> Vec<ScanViolation> {
        let mut out = Vec::new();
        for k in 0..=k_max as i32 {
            for gamma in &self.finite_roots {
                if k == 0 && gamma.iter().any(|&x| x < 0) {
                    continue;
                }
                let root = Root::new(gamma.clone(), k);
                let beta = root.coeffs(self);
                for i in 0..=self.rank {
                    let mut d = beta;
                    d[i] -= 2;
                    if !self.is_root_coeffs(&d) {
                        continue;
                    }
                    for j in (0..=self.rank).filter(|&j| j != i) {
                        let mut two = beta;
                        two[j] -= 2;
                        if self.is_root_or_zero_coeffs(&two) {
                            out.push(ScanViolation {
                                beta: root.clone(),
                                i,
                                j,
                                clause: ScanClause::DoubleDescent,
                            });
                        }
                        two[i] -= 1;
                        if self.is_root_or_zero_coeffs(&two) {
                            out.push(ScanViolation {
                                beta: root.clone(),
                                i,
                                j,
                                clause: ScanClause::MixedDescent,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    /// `N·(x|α_i)` for a weight with Dynkin labels `labels`.
    #[inline]
    pub(crate) fn scaled_pair(&self, labels: &[i64], c: &Coeffs) -> i64 {
        (0..=self.rank)
            .map(|i| c[i] as i64 * self.scaled_sym[i] * labels[i])
            .sum()
    }

    /// `N·(β|β)` for `β = Σ c_i α_i`.
    #[inline]
    pub(crate) fn scaled_norm(&self, c: &Coeffs) -> i64 {
        let mut total = 0;
        for i in 0..=self.rank {
            if c[i] == 0 {
                continue;
            }
            let ai: i64 = (0..=self.rank)
                .map(|j| self.cartan[i][j] * c[j] as i64)
                .sum();
            total += c[i] as i64 * self.scaled_sym[i] * ai;
        }
        total
    }

    /// Dynkin labels of `x − Σ c_j α_j` given the labels of `x`.
    #[inline]
    pub(crate) fn lower_labels(&self, labels: &[i64], c: &Coeffs) -> Vec<i64> {
        (0..=self.rank)
            .map(|i| {
                labels[i]
                    - (0..=self.rank)
                        .map(|j| self.cartan[i][j] * c[j] as i64)
                        .sum::<i64>()
            })
            .collect()
    }

    /// Finite parts `c_1..c_ℓ` solving `Σ_j a_ij c_j = rhs_i` for `i ≥ 1`;
    /// `None` when the solution is not integral.
    pub(crate) fn solve_finite(&self, rhs: &[i64]) -> Option<Vec<i64>> {
        (0..self.rank)
            .map(|i| {
                let v: Q = (0..self.rank)
                    .map(|j| self.inv_finite_cartan[i][j] * q(rhs[j]))
                    .sum();
                crate::rational::to_integer(&v)
            })
            .collect()
    }
}

/// Builds the affine root datum for `ty`.
pub fn build_cartan(ty: AffineType) -> CartanData {
    let rank = ty.rank();
    let fc = finite_cartan(ty.family(), rank);

    // Symmetrizer by propagation along the Dynkin diagram.
    let mut sym: Vec<Option<Q>> = vec![None; rank];
    sym[0] = Some(Q::one());
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..rank {
            if i != j && fc[i][j] != 0 && sym[j].is_none() {
                sym[j] = Some(sym[i].unwrap() * Q::new(fc[i][j], fc[j][i]));
                stack.push(j);
            }
        }
    }
    let mut sym: Vec<Q> = sym.into_iter().map(|s| s.expect("connected diagram")).collect();

    // Finite roots by closure under simple reflections.
    let simple: Vec<Vec<i32>> = (0..rank)
        .map(|i| (0..rank).map(|j| (i == j) as i32).collect())
        .collect();
    let mut set: HashSet<Vec<i32>> = simple.iter().cloned().collect();
    let mut queue = simple.clone();
    while let Some(g) = queue.pop() {
        for i in 0..rank {
            let pairing: i64 = (0..rank).map(|j| fc[i][j] * g[j] as i64).sum();
            if pairing == 0 {
                continue;
            }
            let mut r = g.clone();
            r[i] -= pairing as i32;
            if set.insert(r.clone()) {
                queue.push(r);
            }
        }
    }
    let mut roots: Vec<Vec<i32>> = set.iter().cloned().collect();
    roots.sort_by(|a, b| {
        let (ha, hb): (i32, i32) = (a.iter().sum(), b.iter().sum());
        let (pa, pb) = (ha > 0, hb > 0);
        pb.cmp(&pa)
            .then(ha.abs().cmp(&hb.abs()))
            .then_with(|| b.cmp(a))
    });
    let theta = roots
        .iter()
        .max_by_key(|g| g.iter().sum::<i32>())
        .cloned()
        .expect("nonempty root system");

    // Normalize (θ|θ) = 2.
    let theta_norm: Q = (0..rank)
        .flat_map(|i| (0..rank).map(move |j| (i, j)))
        .map(|(i, j)| q(theta[i] as i64 * theta[j] as i64) * sym[i] * q(fc[i][j]))
        .sum();
    let factor = q(2) / theta_norm;
    for s in &mut sym {
        *s *= factor;
    }

    let mut marks = vec![1i64];
    marks.extend(theta.iter().map(|&t| t as i64));
    let mut comarks = vec![1i64];
    for i in 0..rank {
        let c = q(theta[i] as i64) * sym[i];
        comarks.push(crate::rational::to_integer(&c).expect("integral comark"));
    }
    let dual_coxeter = comarks.iter().sum();

    let mut cartan = vec![vec![0i64; rank + 1]; rank + 1];
    cartan[0][0] = 2;
    for i in 0..rank {
        for j in 0..rank {
            cartan[i + 1][j + 1] = fc[i][j];
        }
    }
    for j in 0..rank {
        // α_j(α_0^∨) = −α_j(θ^∨)
        cartan[0][j + 1] = -(0..rank).map(|k| comarks[k + 1] * fc[k][j]).sum::<i64>();
        // α_0(α_j^∨) = −θ(α_j^∨)
        cartan[j + 1][0] = -(0..rank).map(|k| fc[j][k] * theta[k] as i64).sum::<i64>();
    }

    let mut symmetrizer = vec![Q::one()];
    symmetrizer.extend(sym.iter().copied());

    let finite_gram: Vec<Vec<Q>> = (0..rank)
        .map(|i| (0..rank).map(|j| sym[i] * q(fc[i][j])).collect())
        .collect();
    let gram_inv = invert(&finite_gram).expect("nondegenerate form");
    let fund_gram: Vec<Vec<Q>> = (0..rank)
        .map(|i| (0..rank).map(|j| sym[i] * gram_inv[i][j] * sym[j]).collect())
        .collect();
    let fc_q: Vec<Vec<Q>> = fc
        .iter()
        .map(|row| row.iter().map(|&x| q(x)).collect())
        .collect();
    let inv_finite_cartan = invert(&fc_q).expect("nondegenerate Cartan matrix");

    let norm_scale = symmetrizer.iter().fold(1, |acc, s| lcm(acc, *s.denom()));
    let scaled_sym = symmetrizer
        .iter()
        .map(|s| (s * q(norm_scale)).to_integer())
        .collect();
    let fund_scale = fund_gram
        .iter()
        .flatten()
        .fold(1, |acc, s| lcm(acc, *s.denom()));
    let fund_gram_int = fund_gram
        .iter()
        .map(|row| row.iter().map(|s| (s * q(fund_scale)).to_integer()).collect())
        .collect();

    let dim_finite = roots.len() + rank;
    let finite_root_set = roots.iter().cloned().collect();
    CartanData {
        ty,
        rank,
        cartan,
        symmetrizer,
        theta,
        marks,
        comarks,
        dual_coxeter,
        dim_finite,
        finite_gram,
        fund_gram,
        finite_roots: roots,
        finite_root_set,
        inv_finite_cartan,
        scaled_sym,
        fund_gram_int,
        fund_scale,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;
    use num_traits::Zero;

    fn cd(s: &str) -> CartanData {
        CartanData::new(s.parse().unwrap())
    }

    fn theta_norm(cd: &CartanData) -> Q {
        let t = &cd.theta;
        let mut acc = Q::zero();
        for i in 0..cd.rank {
            for j in 0..cd.rank {
                acc += q(t[i] as i64 * t[j] as i64) * cd.finite_gram[i][j];
            }
        }
        acc
    }

    #[test]
    fn parses_labels() {
        assert_eq!("A1~".parse::<AffineType>().unwrap().to_string(), "A1~");
        assert_eq!("G2^(1)".parse::<AffineType>().unwrap().to_string(), "G2~");
        assert_eq!("B2~".parse::<AffineType>().unwrap().to_string(), "C2~");
        assert!(matches!("A2^(2)".parse::<AffineType>(), Err(Error::Twisted(_))));
        assert!(matches!("Q3~".parse::<AffineType>(), Err(Error::UnknownType(_))));
    }

    #[test]
    fn rejects_invalid_rank() {
        let err = "B1~".parse::<AffineType>().unwrap_err();
        assert!(err.to_string().contains("invalid rank"), "{err}");
        assert!("D3~".parse::<AffineType>().is_err());
        assert!("E9~".parse::<AffineType>().is_err());
        assert!("F3~".parse::<AffineType>().is_err());
    }

    #[test]
    fn a1_data() {
        let a1 = cd("A1~");
        assert_eq!(a1.dual_coxeter, 2);
        assert_eq!(a1.dim_finite, 3);
        assert_eq!(a1.theta, vec![1]);
        assert_eq!(a1.cartan, vec![vec![2, -2], vec![-2, 2]]);
    }

    #[test]
    fn g2_data() {
        let g2 = cd("G2~");
        assert_eq!(g2.dual_coxeter, 4);
        assert_eq!(g2.dim_finite, 14);
        assert_eq!(g2.theta, vec![3, 2]);
        assert_eq!(theta_norm(&g2), q(2));
        assert_eq!(g2.symmetrizer[1], qr(1, 3));
    }

    #[test]
    fn standard_tables() {
        // (label, h^∨, dim g̊, θ)
        let table: &[(&str, i64, usize, &[i32])] = &[
            ("A3~", 4, 15, &[1, 1, 1]),
            ("B3~", 5, 21, &[1, 2, 2]),
            ("B4~", 7, 36, &[1, 2, 2, 2]),
            ("C3~", 4, 21, &[2, 2, 1]),
            ("C4~", 5, 36, &[2, 2, 2, 1]),
            ("D4~", 6, 28, &[1, 2, 1, 1]),
            ("D5~", 8, 45, &[1, 2, 2, 1, 1]),
            ("E6~", 12, 78, &[1, 2, 2, 3, 2, 1]),
            ("E7~", 18, 133, &[2, 2, 3, 4, 3, 2, 1]),
            ("E8~", 30, 248, &[2, 3, 4, 6, 5, 4, 3, 2]),
            ("F4~", 9, 52, &[2, 3, 4, 2]),
        ];
        for &(label, hv, dim, theta) in table {
            let c = cd(label);
            assert_eq!(c.dual_coxeter, hv, "{label}");
            assert_eq!(c.dim_finite, dim, "{label}");
            assert_eq!(c.theta, theta, "{label}");
        }
    }

    #[test]
    fn affine_invariants_all_types() {
        for ty in AffineType::catalogue() {
            let c = CartanData::new(ty);
            assert_eq!(theta_norm(&c), q(2), "{ty}");
            // Σ a_i α_i = δ
            let delta = Root::from_coeffs(&c, &{
                let mut m = [0; MAX_NODES];
                for i in 0..=c.rank {
                    m[i] = c.marks[i] as i32;
                }
                m
            });
            assert_eq!(delta, Root::imaginary(c.rank, 1), "{ty}");
            assert_eq!(c.marks[0], 1);
            // α_0 row and column come from θ
            for i in 1..=c.rank {
                let th: i64 = (0..c.rank).map(|k| c.cartan[i][k + 1] * c.theta[k] as i64).sum();
                assert_eq!(c.cartan[i][0], -th, "{ty}");
            }
            assert_eq!(c.cartan[0][0], 2);
            // δ is in the kernel of A: Σ_j a_ij a_j = 0
            for i in 0..=c.rank {
                let s: i64 = (0..=c.rank).map(|j| c.cartan[i][j] * c.marks[j]).sum();
                assert_eq!(s, 0, "{ty} row {i}");
            }
            assert_eq!(c.dual_coxeter, c.comarks.iter().sum::<i64>());
            assert_eq!(c.finite_roots().len(), c.dim_finite - c.rank, "{ty}");
            // symmetric form
            for i in 0..=c.rank {
                for j in 0..=c.rank {
                    assert_eq!(
                        c.symmetrizer[i] * q(c.cartan[i][j]),
                        c.symmetrizer[j] * q(c.cartan[j][i]),
                        "{ty}"
                    );
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let a1 = cd("A1~");
        assert_eq!(a1.classify_root(&[1, 0]), RootClass::Real);
        assert_eq!(
            a1.classify_root(&[0, 3]),
            RootClass::Imaginary { multiplicity: 1 }
        );
        assert_eq!(a1.classify_root(&[2, 1]), RootClass::NotRoot);
        assert_eq!(a1.classify_root(&[0, 0]), RootClass::NotRoot);
        let a3 = cd("A3~");
        assert_eq!(
            a3.classify_root(&[0, 0, 0, -2]),
            RootClass::Imaginary { multiplicity: 3 }
        );
    }

    #[test]
    fn f_set_examples() {
        let a1 = cd("A1~");
        let a0 = Root::simple(&a1, 0);
        assert_eq!(a1.f_set(&a0).unwrap(), IndexSet::from_indices([1]));
        assert_eq!(a1.rho_beta(&a0).unwrap(), Weight::fundamental(&a1, 0));

        let g2 = cd("G2~");
        let beta = Root::parse(&g2, "a0+2a1+a2").unwrap();
        assert_eq!(beta, Root::new(vec![-1, -1], 1));
        assert_eq!(g2.f_set(&beta).unwrap(), IndexSet::from_indices([2]));
        let rho = &Weight::fundamental(&g2, 0) + &Weight::fundamental(&g2, 1);
        assert_eq!(g2.rho_beta(&beta).unwrap(), rho);

        let f4 = cd("F4~");
        let beta = Root::parse(&f4, "d-a2").unwrap();
        assert_eq!(f4.f_set(&beta).unwrap(), IndexSet::from_indices([0, 2, 4]));
        let rho = &Weight::fundamental(&f4, 1) + &Weight::fundamental(&f4, 3);
        assert_eq!(f4.rho_beta(&beta).unwrap(), rho);
    }

    #[test]
    fn f_set_rejects_non_positive() {
        let a1 = cd("A1~");
        assert!(matches!(
            a1.f_set(&Root::new(vec![-1], 0)),
            Err(Error::NotPositiveRoot(_))
        ));
        assert!(a1.f_set(&Root::new(vec![2], 1)).is_err());
    }

    #[test]
    fn exceptional_examples() {
        let g2 = cd("G2~");
        assert_eq!(
            g2.exceptional_roots(),
            vec![
                ExceptionalRoot { gamma: vec![0, 1], simple: 1 },
                ExceptionalRoot { gamma: vec![1, 1], simple: 1 },
            ]
        );
        assert!(cd("A2~").exceptional_roots().is_empty());
        let f4 = cd("F4~").exceptional_roots();
        assert_eq!(f4.len(), 6);
        assert!(f4.contains(&ExceptionalRoot { gamma: vec![0, 1, 0, 0], simple: 3 }));
        assert!(f4.contains(&ExceptionalRoot { gamma: vec![1, 2, 2, 2], simple: 3 }));
    }

    #[test]
    fn root_scan_small() {
        assert!(cd("A1~").lemma_root_scan(5).is_empty());
        assert!(cd("G2~").lemma_root_scan(3).is_empty());
        assert!(cd("C2~").lemma_root_scan(0).is_empty());
    }

    #[test]
    fn root_parse_and_display() {
        let g2 = cd("G2~");
        let r = Root::parse(&g2, "d - a2").unwrap();
        assert_eq!(r.display(&g2), "a0+3a1+a2");
        assert_eq!(Root::parse(&g2, "2d").unwrap(), Root::imaginary(2, 2));
        assert!(Root::parse(&g2, "a7").is_err());
        assert!(Root::parse(&g2, "1/2*a1").is_err());
    }

    #[test]
    fn index_set_ops() {
        let s = IndexSet::from_indices([0, 2, 4]);
        assert_eq!(s.to_string(), "{0,2,4}");
        assert!(IndexSet::from_indices([2]).is_subset(&s));
        assert!(!IndexSet::from_indices([1]).is_subset(&s));
        assert_eq!(IndexSet::all_subsets(3).count(), 8);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,2,4]");
    }
}
