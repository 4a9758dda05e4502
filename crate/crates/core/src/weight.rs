//! Exact weight arithmetic on `𝔥*`.
//!
//! A [`Weight`] is stored as `(λ̄, level, s)`: the finite part in the basis of
//! finite fundamental weights, the value on `K`, and the coefficient of `δ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, fmt_q, parse_q, q, to_integer, Q};
use crate::rootdata::{CartanData, Coeffs, IndexSet, Root, RootClass, MAX_NODES};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    #[serde(with = "rational::vec_as_string")]
    pub finite: Vec<Q>,
    pub level: i64,
    #[serde(with = "rational::as_string")]
    pub s: Q,
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight {
            finite: vec![Q::zero(); rank],
            level: 0,
            s: Q::zero(),
        }
    }

    /// `Λ_i`.
    pub fn fundamental(cd: &CartanData, i: usize) -> Self {
        let mut w = Weight::zero(cd.rank);
        w.level = cd.comarks[i];
        if i > 0 {
            w.finite[i - 1] = Q::one();
        }
        w
    }

    /// `ρ = Σ Λ_i` with zero `δ`-coefficient.
    pub fn rho(cd: &CartanData) -> Self {
        Weight {
            finite: vec![Q::one(); cd.rank],
            level: cd.dual_coxeter,
            s: Q::zero(),
        }
    }

    pub fn delta(rank: usize) -> Self {
        Weight {
            s: Q::one(),
            ..Weight::zero(rank)
        }
    }

    /// `α_i` viewed as a weight.
    pub fn simple_root(cd: &CartanData, i: usize) -> Self {
        let mut c = [0; MAX_NODES];
        c[i] = 1;
        Weight::from_coeffs(cd, &c)
    }

    /// `Σ c_i α_i`.
    pub fn from_coeffs(cd: &CartanData, c: &Coeffs) -> Self {
        let finite = (1..=cd.rank)
            .map(|j| q((0..=cd.rank).map(|i| cd.cartan[j][i] * c[i] as i64).sum()))
            .collect();
        Weight {
            finite,
            level: 0,
            s: q(c[0] as i64),
        }
    }

    pub fn from_root(cd: &CartanData, r: &Root) -> Self {
        Weight::from_coeffs(cd, &r.coeffs(cd))
    }

    /// Weight with affine Dynkin labels `labels = (n_0, …, n_ℓ)` and
    /// `δ`-coefficient `s`.
    pub fn from_labels(cd: &CartanData, labels: &[i64], s: Q) -> Self {
        assert_eq!(labels.len(), cd.rank + 1);
        Weight {
            finite: labels[1..].iter().map(|&n| q(n)).collect(),
            level: labels.iter().zip(&cd.comarks).map(|(n, a)| n * a).sum(),
            s,
        }
    }

    /// `λ(α_i^∨)`.
    pub fn pairing(&self, cd: &CartanData, i: usize) -> Result<Q> {
        cd.check_index(i)?;
        Ok(self.pairing_unchecked(cd, i))
    }

    fn pairing_unchecked(&self, cd: &CartanData, i: usize) -> Q {
        if i == 0 {
            let th: Q = self
                .finite
                .iter()
                .zip(&cd.comarks[1..])
                .map(|(f, &a)| f * q(a))
                .sum();
            q(self.level) - th
        } else {
            self.finite[i - 1]
        }
    }

    /// All pairings `λ(α_0^∨), …, λ(α_ℓ^∨)`.
    pub fn label_vector(&self, cd: &CartanData) -> Vec<Q> {
        (0..=cd.rank).map(|i| self.pairing_unchecked(cd, i)).collect()
    }

    /// Integer Dynkin labels, or `None` if some label is not integral.
    pub fn labels(&self, cd: &CartanData) -> Option<Vec<i64>> {
        self.label_vector(cd).iter().map(to_integer).collect()
    }

    pub fn is_integral(&self, cd: &CartanData) -> bool {
        self.labels(cd).is_some()
    }

    pub fn is_dominant(&self, cd: &CartanData) -> bool {
        self.labels(cd)
            .is_some_and(|l| l.iter().all(|&x| x >= 0))
    }

    /// Errors unless the weight is dominant integral.
    pub fn require_dominant(&self, cd: &CartanData) -> Result<Vec<i64>> {
        match self.labels(cd) {
            Some(l) if l.iter().all(|&x| x >= 0) => Ok(l),
            Some(_) => Err(Error::NotDominant(self.display(cd))),
            None => Err(Error::NotIntegral(self.display(cd))),
        }
    }

    /// `λ − Σ c_i α_i`.
    pub fn sub_coeffs(&self, cd: &CartanData, c: &Coeffs) -> Self {
        self - &Weight::from_coeffs(cd, c)
    }

    /// `Σ c_i α_i = self − other` if the difference lies in the root
    /// lattice.
    pub fn root_lattice_diff(&self, cd: &CartanData, other: &Weight) -> Option<Coeffs> {
        let d = self - other;
        if d.level != 0 {
            return None;
        }
        let c0 = to_integer(&d.s)?;
        let mut c = [0i32; MAX_NODES];
        c[0] = c0 as i32;
        for i in 0..cd.rank {
            let v: Q = (0..cd.rank)
                .map(|j| cd.inv_finite_cartan()[i][j] * (d.finite[j] - q(cd.cartan[j + 1][0] * c0)))
                .sum();
            c[i + 1] = to_integer(&v)? as i32;
        }
        Some(c)
    }

    pub fn display(&self, cd: &CartanData) -> String {
        let labels = self.label_vector(cd);
        let mut out = String::new();
        let mut push = |coef: Q, atom: &str| {
            if coef.is_zero() {
                return;
            }
            if coef.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let a = coef.abs();
            if !a.is_one() {
                out.push_str(&fmt_q(&a));
                out.push('*');
            }
            out.push_str(atom);
        };
        for (i, l) in labels.iter().enumerate() {
            push(*l, &format!("L{i}"));
        }
        push(self.s, "d");
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses literals such as `L0+2*L1-3d`, `rho-a0`, `2L1+1/2*d`.
    pub fn parse(cd: &CartanData, s: &str) -> Result<Weight> {
        let mut w = Weight::zero(cd.rank);
        for (coef, atom) in parse_terms(s)? {
            let base = atom_weight(cd, &atom)?;
            w = &w + &(&base * coef);
        }
        Ok(w)
    }
}

fn atom_weight(cd: &CartanData, atom: &str) -> Result<Weight> {
    let index = |prefix: &str| -> Result<usize> {
        let i: usize = atom[prefix.len()..]
            .parse()
            .map_err(|_| Error::Parse(format!("bad index in `{atom}`")))?;
        cd.check_index(i)?;
        Ok(i)
    };
    match atom {
        "d" | "delta" => Ok(Weight::delta(cd.rank)),
        "rho" => Ok(Weight::rho(cd)),
        a if a.starts_with("Lambda") => Ok(Weight::fundamental(cd, index("Lambda")?)),
        a if a.starts_with('L') => Ok(Weight::fundamental(cd, index("L")?)),
        a if a.starts_with("alpha") => Ok(Weight::simple_root(cd, index("alpha")?)),
        a if a.starts_with('a') => Ok(Weight::simple_root(cd, index("a")?)),
        _ => Err(Error::Parse(format!("unknown symbol `{atom}`"))),
    }
}

/// Splits `c1*x1 + c2 x2 - …` into `(coefficient, symbol)` pairs.
/// The lone literal `0` yields no terms.
pub(crate) fn parse_terms(s: &str) -> Result<Vec<(Q, String)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    if compact == "0" {
        return Ok(Vec::new());
    }
    let mut pieces = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if (b == b'+' || b == b'-') && i > 0 {
            pieces.push(&compact[start..i]);
            start = i;
        }
    }
    pieces.push(&compact[start..]);

    let mut out = Vec::new();
    for piece in pieces {
        let (sign, body) = match piece.as_bytes().first() {
            Some(b'-') => (-1, &piece[1..]),
            Some(b'+') => (1, &piece[1..]),
            _ => (1, piece),
        };
        let split = body
            .find(|c: char| c.is_ascii_alphabetic())
            .ok_or_else(|| Error::Parse(format!("term `{piece}` has no symbol in `{s}`")))?;
        let (num, atom) = body.split_at(split);
        let num = num.strip_suffix('*').unwrap_or(num);
        let coef = if num.is_empty() { Q::one() } else { parse_q(num)? };
        if atom.is_empty() || !atom.chars().all(|c| c.is_ascii_alphanumeric()) {
            return Err(Error::Parse(format!("bad symbol `{atom}` in `{s}`")));
        }
        out.push((coef * q(sign), atom.to_string()));
    }
    Ok(out)
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight {
            finite: self.finite.iter().zip(&o.finite).map(|(a, b)| a + b).collect(),
            level: self.level + o.level,
            s: self.s + o.s,
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        self + &(-o)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            finite: self.finite.iter().map(|a| -a).collect(),
            level: -self.level,
            s: -self.s,
        }
    }
}

/// Scalar multiple; the level must stay integral.
impl Mul<Q> for &Weight {
    type Output = Weight;
    fn mul(self, c: Q) -> Weight {
        let level = q(self.level) * c;
        assert!(level.is_integer(), "non-integral level in scalar multiple");
        Weight {
            finite: self.finite.iter().map(|a| a * c).collect(),
            level: level.to_integer(),
            s: self.s * c,
        }
    }
}

/// `(λ|μ) = (λ̄|μ̄) + level(λ)·s(μ) + level(μ)·s(λ)`.
pub fn inv_form(cd: &CartanData, a: &Weight, b: &Weight) -> Q {
    let mut acc = Q::zero();
    for i in 0..cd.rank {
        if a.finite[i].is_zero() {
            continue;
        }
        for j in 0..cd.rank {
            acc += a.finite[i] * b.finite[j] * cd.fund_gram[i][j];
        }
    }
    acc + q(a.level) * b.s + q(b.level) * a.s
}

/// `s_i λ = λ − λ(α_i^∨) α_i`.
pub fn reflect(cd: &CartanData, i: usize, w: &Weight) -> Weight {
    let p = w.pairing(cd, i).expect("reflection index in range");
    w - &(&Weight::simple_root(cd, i) * p)
}

/// A word `s_{i_1} s_{i_2} ⋯ s_{i_r}` in the simple reflections.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylWord {
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord::default()
    }

    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn validate(&self, cd: &CartanData) -> Result<()> {
        self.letters.iter().try_for_each(|&i| cd.check_index(i))
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for i in &self.letters {
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

impl FromStr for WeylWord {
    type Err = Error;

    /// Accepts `s3s2s1`, `s3 s2 s1`, and `e` or `1` or an empty string for
    /// the identity.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if compact.is_empty() || compact == "e" || compact == "1" || compact == "id" {
            return Ok(WeylWord::identity());
        }
        let mut letters = Vec::new();
        for part in compact.split('s').skip(1) {
            letters.push(
                part.parse()
                    .map_err(|_| Error::Parse(format!("bad Weyl word `{s}`")))?,
            );
        }
        if !compact.starts_with('s') {
            return Err(Error::Parse(format!("bad Weyl word `{s}`")));
        }
        Ok(WeylWord { letters })
    }
}

/// Applies `w` to `λ`; the rightmost letter acts first.
pub fn apply_word(cd: &CartanData, w: &WeylWord, l: &Weight) -> Weight {
    w.letters
        .iter()
        .rev()
        .fold(l.clone(), |acc, &i| reflect(cd, i, &acc))
}

/// Outcome of the Wahl-triple predicate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum WahlVerdict {
    Holds,
    /// `λ + μ − β` is not dominant; `index` is the first negative label.
    FailsP1 { index: usize },
    /// `λ` or `μ` vanishes on `α_index^∨` but `β − α_index ∈ Φ ⊔ {0}`.
    FailsP2 { index: usize },
    InvalidInput { reason: String },
}

impl WahlVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, WahlVerdict::Holds)
    }
}

pub fn is_wahl_triple(cd: &CartanData, l: &Weight, m: &Weight, beta: &Root) -> WahlVerdict {
    let (ll, ml) = match (l.require_dominant(cd), m.require_dominant(cd)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            return WahlVerdict::InvalidInput {
                reason: e.to_string(),
            }
        }
    };
    let c = beta.coeffs(cd);
    if beta.gamma.len() != cd.rank || !cd.is_positive_root_coeffs(&c) {
        return WahlVerdict::InvalidInput {
            reason: format!("not a positive root: {}", beta.display(cd)),
        };
    }
    let sum_labels = cd.lower_labels(&ll.iter().zip(&ml).map(|(a, b)| a + b).collect::<Vec<_>>(), &c);
    if let Some(index) = sum_labels.iter().position(|&x| x < 0) {
        return WahlVerdict::FailsP1 { index };
    }
    let f = cd.f_set_coeffs(&c);
    for i in 0..=cd.rank {
        if (ll[i] == 0 || ml[i] == 0) && !f.contains(i) {
            return WahlVerdict::FailsP2 { index: i };
        }
    }
    WahlVerdict::Holds
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WahlTriple {
    pub lambda: Weight,
    pub mu: Weight,
    pub beta: Root,
}

/// Dominant label vectors with entries `≤ coord_bound` and level in
/// `1..=max_level`, in lexicographic order.
pub fn dominant_label_grid(cd: &CartanData, max_level: i64, coord_bound: i64) -> Vec<Vec<i64>> {
    let n = cd.rank + 1;
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(
        cd: &CartanData,
        i: usize,
        level: i64,
        max_level: i64,
        bound: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if i == cur.len() {
            if level >= 1 {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=bound {
            let lv = level + v * cd.comarks[i];
            if lv > max_level {
                break;
            }
            cur[i] = v;
            rec(cd, i + 1, lv, max_level, bound, cur, out);
        }
        cur[i] = 0;
    }
    rec(cd, 0, 0, max_level, coord_bound, &mut cur, &mut out);
    out
}

/// Candidate positive roots `γ + kδ` (`0 ≤ k ≤ max_k`) and `kδ`
/// (`1 ≤ k ≤ max_k`), ordered by `k` and then by the finite root order.
pub fn positive_roots_by_degree(cd: &CartanData, max_k: u32) -> Vec<Root> {
    let mut out = Vec::new();
    for k in 0..=max_k as i32 {
        for g in cd.finite_roots() {
            if k == 0 && g.iter().any(|&x| x < 0) {
                continue;
            }
            out.push(Root::new(g.clone(), k));
        }
        if k > 0 {
            out.push(Root::imaginary(cd.rank, k));
        }
    }
    out
}

/// Every Wahl triple inside the given bounds, in deterministic order.
pub fn enumerate_wahl_triples(
    cd: &CartanData,
    max_level: i64,
    max_k: u32,
    coord_bound: i64,
) -> Vec<WahlTriple> {
    let grid = dominant_label_grid(cd, max_level, coord_bound);
    let roots = positive_roots_by_degree(cd, max_k);
    let weights: Vec<Weight> = grid
        .iter()
        .map(|l| Weight::from_labels(cd, l, Q::zero()))
        .collect();
    let mut out = Vec::new();
    for l in &weights {
        for m in &weights {
            for b in &roots {
                if is_wahl_triple(cd, l, m, b).holds() {
                    out.push(WahlTriple {
                        lambda: l.clone(),
                        mu: m.clone(),
                        beta: b.clone(),
                    });
                }
            }
        }
    }
    out
}

/// `μ(α_k^∨) = 0` exactly for `k ∈ S`.
pub fn is_s_regular(cd: &CartanData, m: &Weight, s: &IndexSet) -> bool {
    m.label_vector(cd)
        .iter()
        .enumerate()
        .all(|(k, v)| v.is_zero() == s.contains(k))
}

/// Class of `λ − μ` viewed as an element of the root lattice.
pub fn classify_difference(cd: &CartanData, a: &Weight, b: &Weight) -> Option<RootClass> {
    a.root_lattice_diff(cd, b).map(|c| cd.classify_coeffs(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;
    use crate::rootdata::AffineType;
    use proptest::prelude::*;

    fn cd(s: &str) -> CartanData {
        CartanData::new(s.parse::<AffineType>().unwrap())
    }

    fn w(cd: &CartanData, s: &str) -> Weight {
        Weight::parse(cd, s).unwrap()
    }

    #[test]
    fn form_examples() {
        let a1 = cd("A1~");
        let l0 = Weight::fundamental(&a1, 0);
        let rho = Weight::rho(&a1);
        assert_eq!(inv_form(&a1, &l0, &l0), Q::zero());
        assert_eq!(inv_form(&a1, &l0, &rho), Q::zero());
        let d = Weight::delta(1);
        assert_eq!(inv_form(&a1, &d, &d), Q::zero());
        assert_eq!(inv_form(&a1, &rho, &rho), qr(1, 2));
        // (α_i|α_j) reproduces the symmetrized Cartan matrix
        for c in [cd("G2~"), cd("C3~"), cd("F4~")] {
            for i in 0..=c.rank {
                for j in 0..=c.rank {
                    let v = inv_form(&c, &Weight::simple_root(&c, i), &Weight::simple_root(&c, j));
                    assert_eq!(v, c.symmetrizer[i] * q(c.cartan[i][j]));
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let a1 = cd("A1~");
        for i in 0..=1 {
            for j in 0..=1 {
                let v = Weight::fundamental(&a1, i).pairing(&a1, j).unwrap();
                assert_eq!(v, q((i == j) as i64));
            }
            assert_eq!(Weight::delta(1).pairing(&a1, i).unwrap(), Q::zero());
        }
        assert_eq!(w(&a1, "2L0-a0").pairing(&a1, 1).unwrap(), q(2));
        assert!(matches!(
            Weight::rho(&a1).pairing(&a1, 2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn literal_round_trip() {
        let g2 = cd("G2~");
        let x = w(&g2, "L0+2*L1-3d");
        assert_eq!(x.display(&g2), "L0+2*L1-3*d");
        assert_eq!(w(&g2, &x.display(&g2)), x);
        assert_eq!(w(&g2, "1/2*d").s, qr(1, 2));
        assert_eq!(w(&g2, "rho"), Weight::rho(&g2));
        assert_eq!(w(&g2, "0"), Weight::zero(2));
        assert!(Weight::parse(&g2, "L5").is_err());
        assert!(Weight::parse(&g2, "L0+").is_err());
        assert!(Weight::parse(&g2, "3").is_err());
        let json = serde_json::to_string(&w(&g2, "L1-1/2*d")).unwrap();
        assert_eq!(json, r#"{"finite":["1","0"],"level":1,"s":"-1/2"}"#);
    }

    #[test]
    fn f4_witness_words() {
        let f4 = cd("F4~");
        let rb = w(&f4, "L0+L4");
        let v: WeylWord = "s0".parse().unwrap();
        assert_eq!(apply_word(&f4, &v, &rb), w(&f4, "L0+L4-a0"));
        let ww: WeylWord = "s4s3s1s2s3s4".parse().unwrap();
        assert_eq!(apply_word(&f4, &ww, &rb), w(&f4, "L0+L4-a1-a2-2a3-2a4"));
    }

    #[test]
    fn word_parse() {
        let x: WeylWord = "s3 s2s10".parse().unwrap();
        assert_eq!(x.letters, vec![3, 2, 10]);
        assert_eq!("e".parse::<WeylWord>().unwrap(), WeylWord::identity());
        assert!("t1".parse::<WeylWord>().is_err());
        assert_eq!(x.to_string(), "s3s2s10");
    }

    #[test]
    fn wahl_examples() {
        let a1 = cd("A1~");
        let l0 = Weight::fundamental(&a1, 0);
        let a0 = Root::simple(&a1, 0);
        assert!(is_wahl_triple(&a1, &l0, &l0, &a0).holds());
        let a1r = Root::simple(&a1, 1);
        assert_eq!(is_wahl_triple(&a1, &l0, &l0, &a1r), WahlVerdict::FailsP1 { index: 1 });
        let l1 = Weight::fundamental(&a1, 1);
        let lam = &l1 * q(2);
        assert_eq!(
            is_wahl_triple(&a1, &lam, &lam, &Root::imaginary(1, 1)),
            WahlVerdict::FailsP2 { index: 0 }
        );
        assert!(matches!(
            is_wahl_triple(&a1, &l0, &l0, &Root::new(vec![-1], 0)),
            WahlVerdict::InvalidInput { .. }
        ));
    }

    #[test]
    fn enumerate_examples() {
        let a1 = cd("A1~");
        let triples = enumerate_wahl_triples(&a1, 1, 1, 1);
        let l0 = Weight::fundamental(&a1, 0);
        let l1 = Weight::fundamental(&a1, 1);
        let has = |l: &Weight, b: Root| {
            triples
                .iter()
                .any(|t| &t.lambda == l && &t.mu == l && t.beta == b)
        };
        assert!(has(&l0, Root::simple(&a1, 0)));
        assert!(has(&l1, Root::simple(&a1, 1)));
        assert!(enumerate_wahl_triples(&a1, 0, 3, 3).is_empty());
        assert_eq!(triples, enumerate_wahl_triples(&a1, 1, 1, 1));
    }

    #[test]
    fn s_regular_examples() {
        let a1 = cd("A1~");
        assert!(is_s_regular(&a1, &Weight::rho(&a1), &IndexSet::empty()));
        let l0 = Weight::fundamental(&a1, 0);
        assert!(is_s_regular(&a1, &l0, &IndexSet::from_indices([1])));
        assert!(!is_s_regular(&a1, &l0, &IndexSet::empty()));
    }

    #[test]
    fn rho_labels_and_level() {
        for ty in AffineType::catalogue() {
            let c = CartanData::new(ty);
            let rho = Weight::rho(&c);
            assert!(rho.label_vector(&c).iter().all(|x| x.is_one()), "{ty}");
            assert_eq!(rho.level, c.dual_coxeter);
        }
    }

    fn arb_case() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>, i64, i64, Vec<usize>)> {
        (0usize..5).prop_flat_map(|t| {
            let n = [2usize, 3, 3, 3, 5][t];
            (
                Just(t),
                proptest::collection::vec(-3i64..4, n),
                proptest::collection::vec(-3i64..4, n),
                -3i64..4,
                -3i64..4,
                proptest::collection::vec(0..n, 0..9),
            )
        })
    }

    proptest! {
        #[test]
        fn form_is_weyl_invariant((t, a, b, sa, sb, word) in arb_case()) {
            let c = cd(["A1~", "A2~", "C2~", "G2~", "F4~"][t]);
            let x = Weight::from_labels(&c, &a, q(sa));
            let y = Weight::from_labels(&c, &b, q(sb));
            let ww = WeylWord::new(word);
            let (wx, wy) = (apply_word(&c, &ww, &x), apply_word(&c, &ww, &y));
            prop_assert_eq!(inv_form(&c, &wx, &wy), inv_form(&c, &x, &y));
            prop_assert_eq!(inv_form(&c, &x, &y), inv_form(&c, &y, &x));
            prop_assert_eq!(wx.level, x.level);
        }

        #[test]
        fn reflections_are_involutions((t, a, _b, sa, _sb, word) in arb_case()) {
            let c = cd(["A1~", "A2~", "C2~", "G2~", "F4~"][t]);
            let x = Weight::from_labels(&c, &a, q(sa));
            for &i in &word {
                let y = reflect(&c, i, &x);
                prop_assert_eq!(reflect(&c, i, &y), x.clone());
                if i > 0 {
                    prop_assert_eq!(y.s, x.s);
                }
            }
        }

        #[test]
        fn dominant_minus_root_pairs_positively((t, a, b, _sa, _sb, _w) in arb_case(), k in 0u32..3) {
            let c = cd(["A1~", "A2~", "C2~", "G2~", "F4~"][t]);
            let x = Weight::from_labels(&c, &a.iter().map(|v| v.abs()).collect::<Vec<_>>(), Q::zero());
            let y = Weight::from_labels(&c, &b.iter().map(|v| v.abs()).collect::<Vec<_>>(), Q::zero());
            let sum = &x + &y;
            for beta in positive_roots_by_degree(&c, k) {
                let bw = Weight::from_root(&c, &beta);
                if (&sum - &bw).is_dominant(&c) {
                    prop_assert!(inv_form(&c, &sum, &bw) > Q::zero());
                }
            }
        }
    }
}
