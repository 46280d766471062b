//! Kazhdan-Lusztig polynomials, mu coefficients, convolution with simple
//! reflections, Stembridge full commutativity, and the two cell conditions.
//!
//! Everything runs inside Bruhat intervals obtained by subword closure, so
//! cost is governed by the length bound (default 16, overridable through
//! WEYL_CELLS_MAXLEN).

use crate::affine_weyl::{
    bruhat_leq, elements_up_to, ends_with_all, format_word, gamma, is_left_spherical, multiply,
    simple, Letter, WeylElement, WeylError,
};
use crate::rootdata::RootDatum;
use crate::weights::{AffineWeight, WeightError};
use std::collections::{HashMap, HashSet};
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_MAX_LEN: i64 = 16;

#[derive(Debug, Error)]
pub enum KlError {
    #[error("elements belong to different root data")]
    MixedRootData,
    #[error("x is not below y in Bruhat order")]
    NotComparable,
    #[error("length {0} exceeds the configured bound {1}")]
    LengthBound(i64, i64),
    #[error("convolution needs rs > r, but `{element}` already ends with s{letter}")]
    Descending { element: String, letter: usize },
    #[error("costandard step after `{prefix}`: `{element}` already ends with s{letter}")]
    CostandardStep {
        prefix: String,
        element: String,
        letter: usize,
    },
    #[error("cell list is empty")]
    EmptyCell,
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// Coefficients of a polynomial in q, constant term first.
pub type KLPoly = Vec<i64>;

fn trim(mut p: KLPoly) -> KLPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_add(a: &[i64], b: &[i64]) -> KLPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn poly_shift(a: &[i64], k: usize) -> KLPoly {
    if a.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + k];
    out[k..].copy_from_slice(a);
    out
}

/// a - m q^k b.
fn poly_sub_scaled(a: &[i64], b: &[i64], m: i64, k: usize) -> KLPoly {
    let mut out = a.to_vec();
    if out.len() < b.len() + k {
        out.resize(b.len() + k, 0);
    }
    for (i, c) in b.iter().enumerate() {
        out[i + k] -= m * c;
    }
    out
}

pub fn poly_coeff(p: &[i64], k: usize) -> i64 {
    p.get(k).copied().unwrap_or(0)
}

pub fn format_poly(p: &[i64]) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "q".to_string(),
            (1, c) => format!("{c}q"),
            (i, 1) => format!("q^{i}"),
            (i, c) => format!("{c}q^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Memoized Kazhdan-Lusztig computations over one root datum.
pub struct KlContext {
    rd: Arc<RootDatum>,
    max_len: i64,
    pivot_largest: bool,
    memo: HashMap<(WeylElement, WeylElement), KLPoly>,
    intervals: HashMap<WeylElement, Vec<WeylElement>>,
}

impl KlContext {
    pub fn new(rd: &Arc<RootDatum>) -> Self {
        let max_len = std::env::var("WEYL_CELLS_MAXLEN")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_MAX_LEN);
        Self::with_bound(rd, max_len)
    }

    pub fn with_bound(rd: &Arc<RootDatum>, max_len: i64) -> Self {
        KlContext {
            rd: Arc::clone(rd),
            max_len,
            pivot_largest: false,
            memo: HashMap::new(),
            intervals: HashMap::new(),
        }
    }

    /// Same recursion pivoting on the largest right descent instead of the
    /// smallest; the results must agree.
    pub fn with_pivot(rd: &Arc<RootDatum>, max_len: i64, largest: bool) -> Self {
        KlContext {
            pivot_largest: largest,
            ..Self::with_bound(rd, max_len)
        }
    }

    fn check_datum(&self, w: &WeylElement) -> Result<(), KlError> {
        if *w.root_datum().as_ref() != *self.rd.as_ref() {
            return Err(KlError::MixedRootData);
        }
        Ok(())
    }

    pub fn kl_poly(&mut self, x: &WeylElement, y: &WeylElement) -> Result<KLPoly, KlError> {
        self.check_datum(x)?;
        self.check_datum(y)?;
        let (x0, lx) = x.split_omega();
        let (y0, ly) = y.split_omega();
        if lx != ly {
            return Err(KlError::NotComparable);
        }
        if y0.length() > self.max_len {
            return Err(KlError::LengthBound(y0.length(), self.max_len));
        }
        if !bruhat_leq(&x0, &y0)? {
            return Err(KlError::NotComparable);
        }
        self.kl_straight(&x0, &y0)
    }

    pub fn mu(&mut self, x: &WeylElement, y: &WeylElement) -> Result<i64, KlError> {
        let p = self.kl_poly(x, y)?;
        let d = y.length() - x.length();
        if d < 1 || d % 2 == 0 {
            return Ok(0);
        }
        Ok(poly_coeff(&p, ((d - 1) / 2) as usize))
    }

    fn mu_straight(&mut self, x: &WeylElement, y: &WeylElement) -> Result<i64, KlError> {
        let d = y.length() - x.length();
        if d < 1 || d % 2 == 0 {
            return Ok(0);
        }
        let p = self.kl_straight(x, y)?;
        Ok(poly_coeff(&p, ((d - 1) / 2) as usize))
    }

    fn kl_straight(&mut self, x: &WeylElement, y: &WeylElement) -> Result<KLPoly, KlError> {
        if x == y {
            return Ok(vec![1]);
        }
        if !bruhat_leq(x, y)? {
            return Ok(vec![]);
        }
        if y.length() - x.length() <= 2 {
            // Degree bound forces a constant, and the constant term is 1.
            return Ok(vec![1]);
        }
        let key = (x.clone(), y.clone());
        if let Some(p) = self.memo.get(&key) {
            return Ok(p.clone());
        }
        let rds = y.right_descents();
        let s = if self.pivot_largest {
            *rds.iter().max().expect("y is not the identity")
        } else {
            *rds.iter().min().expect("y is not the identity")
        };
        let p = self.kl_step(x, y, s)?;
        self.memo.insert(key, p.clone());
        Ok(p)
    }

    /// One unrolling of the recursion through the right descent s of y.
    fn kl_step(&mut self, x: &WeylElement, y: &WeylElement, s: usize) -> Result<KLPoly, KlError> {
        let se = simple(&self.rd, s)?;
        let ys = multiply(y, &se)?;
        let xs = multiply(x, &se)?;
        let mut p = if xs.length() < x.length() {
            poly_add(&self.kl_straight(&xs, &ys)?, &poly_shift(&self.kl_straight(x, &ys)?, 1))
        } else {
            poly_add(&poly_shift(&self.kl_straight(&xs, &ys)?, 1), &self.kl_straight(x, &ys)?)
        };
        for z in self.interval(&ys)? {
            if y.length() - z.length() < 2 || (y.length() - z.length()) % 2 != 0 {
                continue;
            }
            if !z.right_descents().contains(&s) || !bruhat_leq(x, &z)? {
                continue;
            }
            let m = self.mu_straight(&z, &ys)?;
            if m == 0 {
                continue;
            }
            let sub = self.kl_straight(x, &z)?;
            p = poly_sub_scaled(&p, &sub, m, ((y.length() - z.length()) / 2) as usize);
        }
        Ok(trim(p))
    }

    /// The interval [e, y] by subword closure of a reduced word of y.
    fn interval(&mut self, y: &WeylElement) -> Result<Vec<WeylElement>, KlError> {
        if y.length() > self.max_len {
            return Err(KlError::LengthBound(y.length(), self.max_len));
        }
        if let Some(v) = self.intervals.get(y) {
            return Ok(v.clone());
        }
        let mut set = HashSet::new();
        set.insert(crate::affine_weyl::identity(&self.rd));
        for letter in y.canonical_word() {
            let Letter::S(i) = letter else {
                return Err(KlError::NotComparable);
            };
            let se = simple(&self.rd, i)?;
            let grown: Vec<WeylElement> = set
                .iter()
                .map(|w| multiply(w, &se).expect("same datum"))
                .collect();
            set.extend(grown);
        }
        let mut out: Vec<WeylElement> = set.into_iter().collect();
        out.sort_by_key(|w| (w.length(), w.canonical_word()));
        self.intervals.insert(y.clone(), out.clone());
        Ok(out)
    }

    /// C_r * C_s for rs > r: the multiset {rs} plus r' with multiplicity
    /// mu(r', r) over r' < r ending with s (twisted through the length-zero
    /// part of r).
    pub fn convolve_simple(
        &mut self,
        r: &WeylElement,
        s: usize,
    ) -> Result<Vec<(WeylElement, i64)>, KlError> {
        self.check_datum(r)?;
        let se = simple(&self.rd, s)?;
        let rs = multiply(r, &se)?;
        if rs.length() <= r.length() {
            return Err(KlError::Descending {
                element: format_word(&r.canonical_word()),
                letter: s,
            });
        }
        let (r0, label) = r.split_omega();
        let g = gamma(&self.rd, label)?;
        // gamma s gamma^{-1} is again simple; find which one.
        let conj = multiply(&multiply(&g, &se)?, &g.inverse())?;
        let s_eff = (0..=self.rd.rank)
            .find(|&j| simple(&self.rd, j).expect("valid index") == conj)
            .expect("diagram automorphism");
        let mut out = vec![(rs, 1)];
        if r0.length() > 0 {
            for z in self.interval(&r0)? {
                if z == r0 || !z.right_descents().contains(&s_eff) {
                    continue;
                }
                let m = self.mu_straight(&z, &r0)?;
                if m != 0 {
                    out.push((multiply(&z, &g)?, m));
                }
            }
        }
        out.sort_by_key(|(w, _)| (w.length(), w.canonical_word()));
        Ok(out)
    }

    /// C_z * nabla_v, iterating convolve_simple along a reduced word of v
    /// and discarding terms any of the supplied predicates declares
    /// negligible.
    pub fn convolve_costandard(
        &mut self,
        z: &WeylElement,
        v: &WeylElement,
        negligible: &[&dyn Fn(&WeylElement) -> bool],
    ) -> Result<Vec<(WeylElement, i64)>, KlError> {
        self.check_datum(z)?;
        self.check_datum(v)?;
        let mut state: Vec<(WeylElement, i64)> = vec![(z.clone(), 1)];
        let mut prefix: Vec<Letter> = Vec::new();
        for letter in v.canonical_word() {
            let mut next: HashMap<WeylElement, i64> = HashMap::new();
            match letter {
                Letter::Gamma(m) => {
                    let g = gamma(&self.rd, m)?;
                    for (r, c) in &state {
                        *next.entry(multiply(r, &g)?).or_insert(0) += c;
                    }
                }
                Letter::S(i) => {
                    for (r, c) in &state {
                        let terms = self.convolve_simple(r, i).map_err(|e| match e {
                            KlError::Descending { element, letter } => KlError::CostandardStep {
                                prefix: format_word(&prefix),
                                element,
                                letter,
                            },
                            other => other,
                        })?;
                        for (t, m) in terms {
                            *next.entry(t).or_insert(0) += c * m;
                        }
                    }
                }
            }
            prefix.push(letter);
            state = next
                .into_iter()
                .filter(|(r, c)| *c != 0 && !negligible.iter().any(|f| f(r)))
                .collect();
        }
        state.sort_by_key(|(w, _)| (w.length(), w.canonical_word()));
        Ok(state)
    }
}

/// Edges (x, y, mu) over the whole group up to the length bound.
pub fn mu_graph(
    rd: &Arc<RootDatum>,
    max_len: i64,
) -> Result<Vec<(WeylElement, WeylElement, i64)>, KlError> {
    let els = elements_up_to(rd, max_len);
    let mut ctx = KlContext::with_bound(rd, max_len);
    let mut out = Vec::new();
    for y in &els {
        for x in &els {
            if (y.length() - x.length()) % 2 == 0 || x.length() >= y.length() {
                continue;
            }
            if !bruhat_leq(x, y)? {
                continue;
            }
            let m = ctx.mu_straight(x, y)?;
            if m != 0 {
                out.push((x.clone(), y.clone(), m));
            }
        }
    }
    Ok(out)
}

/// Bond orders m(i, j) of the affine Coxeter diagram; usize::MAX marks an
/// infinite bond (affine A1).
fn coxeter_bonds(rd: &RootDatum) -> Vec<Vec<usize>> {
    let n = rd.rank + 1;
    let a = &rd.affine_cartan;
    let mut m = vec![vec![2; n]; n];
    for i in 0..n {
        m[i][i] = 1;
        for j in 0..n {
            if i == j {
                continue;
            }
            m[i][j] = match a[i][j] * a[j][i] {
                0 => 2,
                1 => 3,
                2 => 4,
                3 => 6,
                _ => usize::MAX,
            };
        }
    }
    m
}

fn straight_word(w: &WeylElement) -> Vec<usize> {
    let (w0, _) = w.split_omega();
    w0.canonical_word()
        .iter()
        .map(|l| match l {
            Letter::S(i) => *i,
            Letter::Gamma(_) => unreachable!("straight part has no rotation"),
        })
        .collect()
}


/// Stembridge's criterion on the heap: w is fully commutative iff no bonded
/// pair s, t spans a convex chain of m(s, t) letters alternating s, t.
/// Convexity means no third letter sits strictly between two consecutive
/// chain members in the heap order, so a braid move can reach that factor.
pub fn is_fully_commutative(w: &WeylElement) -> bool {
    let word = straight_word(w);
    if word.len() < 3 {
        return true;
    }
    let bonds = coxeter_bonds(w.root_datum());
    let h = heap(w);
    let n = word.len();
    for s in 0..bonds.len() {
        for t in s + 1..bonds.len() {
            let m = bonds[s][t];
            if m < 3 || m == usize::MAX {
                continue;
            }
            // Letters labeled s or t are pairwise comparable, so their heap
            // order is the word order.
            let sub: Vec<usize> = (0..n).filter(|&p| word[p] == s || word[p] == t).collect();
            if sub.len() < m {
                continue;
            }
            for win in sub.windows(m) {
                if win.windows(2).any(|pq| word[pq[0]] == word[pq[1]]) {
                    continue;
                }
                let (lo, hi) = (win[0], win[m - 1]);
                let convex = !(0..n)
                    .any(|z| !win.contains(&z) && h.less[lo][z] && h.less[z][hi]);
                if convex {
                    return false;
                }
            }
        }
    }
    true
}

/// The heap of a reduced word: letters ordered by the transitive closure of
/// non-commuting precedence.
pub struct Heap {
    pub labels: Vec<usize>,
    less: Vec<Vec<bool>>,
}

pub fn heap(w: &WeylElement) -> Heap {
    let labels = straight_word(w);
    let bonds = coxeter_bonds(w.root_datum());
    let n = labels.len();
    let mut less = vec![vec![false; n]; n];
    for j in 0..n {
        // Descending i, so the less[k][j] with k > i are already closed.
        for i in (0..j).rev() {
            if bonds[labels[i]][labels[j]] != 2 {
                less[i][j] = true;
            } else {
                less[i][j] = (i + 1..j).any(|k| less[i][k] && less[k][j]);
            }
        }
    }
    Heap { labels, less }
}

impl Heap {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Number of linear extensions of the heap order.
    pub fn linear_extensions(&self) -> u64 {
        assert!(self.size() <= 64, "heap too large");
        let n = self.size();
        let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        let mut memo: HashMap<u64, u64> = HashMap::new();
        fn count(mask: u64, full: u64, n: usize, less: &[Vec<bool>], memo: &mut HashMap<u64, u64>) -> u64 {
            if mask == full {
                return 1;
            }
            if let Some(&c) = memo.get(&mask) {
                return c;
            }
            let mut total = 0;
            for v in 0..n {
                if mask & (1 << v) != 0 {
                    continue;
                }
                let ready = (0..n).all(|u| !less[u][v] || mask & (1 << u) != 0);
                if ready {
                    total += count(mask | (1 << v), full, n, less, memo);
                }
            }
            memo.insert(mask, total);
            total
        }
        count(0, full, n, &self.less, &mut memo)
    }
}

/// Number of reduced words of w, by descent recursion.
pub fn reduced_word_count(w: &WeylElement) -> u64 {
    fn go(w: &WeylElement, memo: &mut HashMap<WeylElement, u64>) -> u64 {
        if w.length() == 0 {
            return 1;
        }
        if let Some(&c) = memo.get(w) {
            return c;
        }
        let total = w
            .right_descents()
            .into_iter()
            .map(|i| {
                let se = simple(w.root_datum(), i).expect("valid index");
                go(&multiply(w, &se).expect("same datum"), memo)
            })
            .sum();
        memo.insert(w.clone(), total);
        total
    }
    let (w0, _) = w.split_omega();
    go(&w0, &mut HashMap::new())
}

/// Condition 1: some listed element is left-spherical and can end with all
/// singularities of kappa-plus at once.
pub fn check_condition_sing(
    cell: &[WeylElement],
    kplus: &AffineWeight,
) -> Result<bool, KlError> {
    if cell.is_empty() {
        return Err(KlError::EmptyCell);
    }
    let sing = kplus.sing_set()?;
    for w in cell {
        if is_left_spherical(w) && (sing.is_empty() || ends_with_all(w, &sing)?) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Condition 2: every listed element is fully commutative.
pub fn check_condition_comm(cell: &[WeylElement]) -> Result<bool, KlError> {
    if cell.is_empty() {
        return Err(KlError::EmptyCell);
    }
    Ok(cell.iter().all(is_fully_commutative))
}
