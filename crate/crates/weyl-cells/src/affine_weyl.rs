//! Exact arithmetic in the extended affine Weyl group W_ext = W x P^vee.
//!
//! An element is stored in the canonical form (finite part, translation):
//! w = t_nu . f with f in the finite Weyl group and nu in the coweight
//! lattice, written in fundamental-coweight coordinates. The finite part is
//! carried as three integer matrices (action on weights, coweights and
//! roots), so equality, length and descents are all exact integer work with
//! no words involved. Length-zero diagram rotations gamma_m are ordinary
//! elements here; words normalize them to the right.

use crate::mat::{self, IMat};
use crate::rootdata::RootDatum;
use num::rational::Rational64;
use serde_json::json;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeylError {
    #[error("generator index {0} is out of range")]
    BadGenerator(usize),
    #[error("node {0} does not carry a length-zero element")]
    BadOmegaLabel(usize),
    #[error("elements belong to different root data")]
    MixedRootData,
    #[error("cannot parse word literal `{0}`")]
    BadWord(String),
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("subgroup generated by {0:?} exceeds the exploration bound; maximality undecided")]
    Undecided(Vec<usize>),
}

/// One letter of a word: a simple reflection s_i or a length-zero gamma_m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    S(usize),
    Gamma(usize),
}

pub type Word = Vec<Letter>;

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::S(i) => write!(f, "{i}"),
            Letter::Gamma(m) => write!(f, "g{m}"),
        }
    }
}

/// Parses the dotted word syntax: `0.1.2.1.0`, `0.g1`, `e` for the identity.
pub fn parse_word(s: &str) -> Result<Word, WeylError> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    s.split('.')
        .map(|tok| {
            if let Some(rest) = tok.strip_prefix('g') {
                rest.parse()
                    .map(Letter::Gamma)
                    .map_err(|_| WeylError::BadWord(s.to_string()))
            } else {
                tok.parse()
                    .map(Letter::S)
                    .map_err(|_| WeylError::BadWord(s.to_string()))
            }
        })
        .collect()
}

pub fn format_word(word: &[Letter]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter()
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(".")
}

#[derive(Clone)]
pub struct WeylElement {
    rd: Arc<RootDatum>,
    /// Action of the finite part on weights in fundamental coordinates.
    mw: IMat,
    /// Action on coweights in fundamental-coweight coordinates.
    mc: IMat,
    /// Action on roots in simple-root coordinates.
    mr: IMat,
    /// Translation in fundamental-coweight coordinates: w = t_nu . finite.
    nu: Vec<i64>,
    len: i64,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        *self.rd == *other.rd && self.mw == other.mw && self.nu == other.nu
    }
}
impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rd.family.hash(state);
        self.rd.rank.hash(state);
        self.mw.hash(state);
        self.nu.hash(state);
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "W({}, {}, len {})",
            self.rd.type_name(),
            format_word(&self.canonical_word()),
            self.len
        )
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_word(&self.canonical_word()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentSet {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Iwahori-Matsumoto length of (finite part mr, translation nu): the count of
/// positive affine roots sent to negative ones.
fn im_length(rd: &RootDatum, mr: &IMat, nu: &[i64]) -> i64 {
    let mut len = 0;
    for alpha in &rd.positive_roots {
        let beta = mat::mat_vec(mr, alpha);
        let p: i64 = beta.iter().zip(nu).map(|(b, n)| b * n).sum();
        let positive = beta.iter().all(|&b| b >= 0);
        len += if positive { p.abs() } else { (p + 1).abs() };
    }
    len
}

fn element(rd: &Arc<RootDatum>, mw: IMat, mc: IMat, mr: IMat, nu: Vec<i64>) -> WeylElement {
    let len = im_length(rd, &mr, &nu);
    WeylElement {
        rd: Arc::clone(rd),
        mw,
        mc,
        mr,
        nu,
        len,
    }
}

pub fn identity(rd: &Arc<RootDatum>) -> WeylElement {
    let l = rd.rank;
    element(rd, mat::identity(l), mat::identity(l), mat::identity(l), vec![0; l])
}

/// Pure translation by a coweight-lattice vector in fundamental-coweight
/// coordinates.
pub fn translation(rd: &Arc<RootDatum>, nu: &[i64]) -> WeylElement {
    let l = rd.rank;
    element(rd, mat::identity(l), mat::identity(l), mat::identity(l), nu.to_vec())
}

/// The affine simple reflection s_i, i in 0..=rank.
pub fn simple(rd: &Arc<RootDatum>, i: usize) -> Result<WeylElement, WeylError> {
    let l = rd.rank;
    if i > l {
        return Err(WeylError::BadGenerator(i));
    }
    if i >= 1 {
        let mut mw = mat::identity(l);
        let mut mc = mat::identity(l);
        let mut mr = mat::identity(l);
        for k in 0..l {
            mw[k][i - 1] -= rd.cartan[k][i - 1];
            mc[k][i - 1] -= rd.cartan[i - 1][k];
            mr[i - 1][k] -= rd.cartan[i - 1][k];
        }
        Ok(element(rd, mw, mc, mr, vec![0; l]))
    } else {
        // s_0 = t_{theta^vee} s_theta.
        let theta_fund = rd.theta_fund();
        let tcf = rd.theta_covector_fund();
        let mut mw = mat::identity(l);
        let mut mc = mat::identity(l);
        let mut mr = mat::identity(l);
        for k in 0..l {
            for j in 0..l {
                mw[k][j] -= theta_fund[k] * rd.theta_covector[j];
                mc[k][j] -= tcf[k] * rd.theta[j];
                mr[k][j] -= rd.theta[k] * tcf[j];
            }
        }
        Ok(element(rd, mw, mc, mr, tcf))
    }
}

/// The length-zero element attached to minuscule node `m` (0 = identity):
/// gamma_m = t_{omega_m^vee} . (w_{0,J} w_0).
pub fn gamma(rd: &Arc<RootDatum>, m: usize) -> Result<WeylElement, WeylError> {
    if m == 0 {
        return Ok(identity(rd));
    }
    let om = rd.omega_group();
    let k = om
        .index_of_label(m)
        .ok_or(WeylError::BadOmegaLabel(m))?;
    let mut u = identity(rd);
    for &i in &om.finite_words[k] {
        u = multiply(&u, &simple(rd, i)?)?;
    }
    let mut nu = vec![0i64; rd.rank];
    nu[m - 1] = 1;
    Ok(element(rd, u.mw, u.mc, u.mr, nu))
}

pub fn from_word(rd: &Arc<RootDatum>, word: &[Letter]) -> Result<WeylElement, WeylError> {
    let mut out = identity(rd);
    for letter in word {
        let g = match *letter {
            Letter::S(i) => simple(rd, i)?,
            Letter::Gamma(m) => gamma(rd, m)?,
        };
        out = multiply(&out, &g)?;
    }
    Ok(out)
}

pub fn multiply(x: &WeylElement, y: &WeylElement) -> Result<WeylElement, WeylError> {
    if *x.rd != *y.rd {
        return Err(WeylError::MixedRootData);
    }
    // (t_a f)(t_b g) = t_{a + f(b)} (f g).
    let nu: Vec<i64> = mat::mat_vec(&x.mc, &y.nu)
        .iter()
        .zip(&x.nu)
        .map(|(f, a)| f + a)
        .collect();
    Ok(element(
        &x.rd,
        mat::mul(&x.mw, &y.mw),
        mat::mul(&x.mc, &y.mc),
        mat::mul(&x.mr, &y.mr),
        nu,
    ))
}

impl WeylElement {
    pub fn root_datum(&self) -> &Arc<RootDatum> {
        &self.rd
    }

    pub fn length(&self) -> i64 {
        self.len
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0 && self.nu.iter().all(|&x| x == 0)
    }

    pub fn weight_matrix(&self) -> &[Vec<i64>] {
        &self.mw
    }

    pub fn translation_part(&self) -> &[i64] {
        &self.nu
    }

    pub fn inverse(&self) -> WeylElement {
        // (t_nu f)^{-1} = t_{-f^{-1} nu} f^{-1}; Mc^{-1} = Mr^T and Mr^{-1} = Mc^T.
        let mc_inv = mat::transpose(&self.mr);
        let mr_inv = mat::transpose(&self.mc);
        let mw_inv = mat::inv_unimodular(&self.mw);
        let nu: Vec<i64> = mat::mat_vec(&mc_inv, &self.nu).iter().map(|x| -x).collect();
        element(&self.rd, mw_inv, mc_inv, mr_inv, nu)
    }

    /// Image of the affine real root (alpha, n) = alpha + n delta, alpha in
    /// simple-root coordinates.
    pub fn apply_affine_root(&self, alpha: &[i64], n: i64) -> (Vec<i64>, i64) {
        let beta = mat::mat_vec(&self.mr, alpha);
        let p: i64 = beta.iter().zip(&self.nu).map(|(b, v)| b * v).sum();
        (beta, n - p)
    }

    fn is_right_descent(&self, i: usize) -> bool {
        let l = self.rd.rank;
        let (beta, n) = if i >= 1 {
            let mut alpha = vec![0i64; l];
            alpha[i - 1] = 1;
            self.apply_affine_root(&alpha, 0)
        } else {
            let alpha: Vec<i64> = self.rd.theta.iter().map(|x| -x).collect();
            self.apply_affine_root(&alpha, 1)
        };
        n < 0 || (n == 0 && beta.iter().all(|&b| b <= 0))
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (0..=self.rd.rank)
            .filter(|&i| self.is_right_descent(i))
            .collect()
    }

    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().right_descents()
    }

    pub fn descents(&self) -> DescentSet {
        DescentSet {
            left: self.left_descents(),
            right: self.right_descents(),
        }
    }

    /// Label m of the length-zero coset W_aff gamma_m containing this
    /// element, read off the class of the translation in P^vee / Q^vee.
    pub fn omega_label(&self) -> usize {
        let l = self.rd.rank;
        'cand: for m in std::iter::once(0).chain(self.rd.minuscule.iter().copied()) {
            let mut diff: Vec<Rational64> = self
                .nu
                .iter()
                .map(|&x| Rational64::from_integer(x))
                .collect();
            if m >= 1 {
                diff[m - 1] -= Rational64::from_integer(1);
            }
            // In Q^vee iff (A^T)^{-1} diff is integral.
            for i in 0..l {
                let z: Rational64 = (0..l)
                    .map(|j| self.rd.pairing_matrix[i][j] * diff[j])
                    .sum();
                if !z.is_integer() {
                    continue 'cand;
                }
            }
            return m;
        }
        unreachable!("translation class must match a length-zero label")
    }

    /// Splits w = u . gamma with u in the non-extended affine Weyl group.
    pub fn split_omega(&self) -> (WeylElement, usize) {
        let m = self.omega_label();
        if m == 0 {
            return (self.clone(), 0);
        }
        let g = gamma(&self.rd, m).expect("label comes from the datum");
        let u = multiply(self, &g.inverse()).expect("same datum");
        (u, m)
    }

    /// The lexicographically smallest reduced word, with the length-zero
    /// part normalized to the right: w = s_{i_1} .. s_{i_k} gamma.
    pub fn canonical_word(&self) -> Word {
        let mut letters = Vec::new();
        let mut v = self.inverse();
        while v.len > 0 {
            let i = *v
                .right_descents()
                .first()
                .expect("element of positive length has a descent");
            letters.push(Letter::S(i));
            v = multiply(&v, &simple(&self.rd, i).expect("valid index")).expect("same datum");
        }
        let m = v.inverse().omega_label();
        if m != 0 {
            letters.push(Letter::Gamma(m));
        }
        letters
    }

    pub fn to_json(&self) -> serde_json::Value {
        let word: Vec<serde_json::Value> = self
            .canonical_word()
            .iter()
            .map(|l| match l {
                Letter::S(i) => json!(i),
                Letter::Gamma(m) => json!(format!("g{m}")),
            })
            .collect();
        json!({ "word": word, "length": self.len })
    }
}

/// Bruhat order on the extended group: comparable only within the same
/// W_aff coset, then the usual order on the reflection parts.
pub fn bruhat_leq(x: &WeylElement, y: &WeylElement) -> Result<bool, WeylError> {
    if *x.rd != *y.rd {
        return Err(WeylError::MixedRootData);
    }
    let (xa, gx) = x.split_omega();
    let (ya, gy) = y.split_omega();
    if gx != gy {
        return Ok(false);
    }
    Ok(bruhat_leq_affine(&xa, &ya))
}

fn bruhat_leq_affine(x: &WeylElement, y: &WeylElement) -> bool {
    if x.len > y.len {
        return false;
    }
    if y.len == 0 {
        return x == y;
    }
    let s_idx = *y.right_descents().first().expect("descent exists");
    let s = simple(&y.rd, s_idx).expect("valid index");
    let ys = multiply(y, &s).expect("same datum");
    let xs = multiply(x, &s).expect("same datum");
    if xs.len < x.len {
        bruhat_leq_affine(&xs, &ys)
    } else {
        bruhat_leq_affine(x, &ys)
    }
}

/// No finite simple reflection shortens w on the left.
pub fn is_left_spherical(w: &WeylElement) -> bool {
    w.left_descents().iter().all(|&i| i == 0)
}

/// No finite simple reflection shortens w on the right.
pub fn is_right_spherical(w: &WeylElement) -> bool {
    w.right_descents().iter().all(|&i| i == 0)
}

const SUBGROUP_BOUND: usize = 4096;

/// True iff w is the longest element of its coset w<S>. With pairwise
/// commuting S this is exactly S being a subset of the right descents; for
/// non-commuting S the subgroup is expanded up to a bound.
pub fn ends_with_all(w: &WeylElement, subset: &[usize]) -> Result<bool, WeylError> {
    ends_with_all_bounded(w, subset, SUBGROUP_BOUND)
}

pub fn ends_with_all_bounded(
    w: &WeylElement,
    subset: &[usize],
    bound: usize,
) -> Result<bool, WeylError> {
    if subset.is_empty() {
        return Err(WeylError::EmptySubset);
    }
    for &i in subset {
        if i > w.rd.rank {
            return Err(WeylError::BadGenerator(i));
        }
    }
    let commuting = subset
        .iter()
        .all(|&i| subset.iter().all(|&j| i == j || w.rd.affine_cartan[i][j] == 0));
    if commuting {
        let right = w.right_descents();
        return Ok(subset.iter().all(|i| right.contains(i)));
    }
    // Expand <S> by breadth-first closure, then test length additivity.
    let gens: Vec<WeylElement> = subset
        .iter()
        .map(|&i| simple(&w.rd, i).expect("checked index"))
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut queue = vec![identity(&w.rd)];
    seen.insert(queue[0].clone());
    let mut idx = 0;
    while idx < queue.len() {
        if seen.len() > bound {
            return Err(WeylError::Undecided(subset.to_vec()));
        }
        let u = queue[idx].clone();
        idx += 1;
        for g in &gens {
            let next = multiply(&u, g).expect("same datum");
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    Ok(queue
        .iter()
        .all(|u| multiply(w, u).expect("same datum").len == w.len - u.len))
}

/// True iff the reflection part of w admits exactly one reduced word.
pub fn is_rigid(w: &WeylElement) -> bool {
    let mut v = w.inverse();
    while v.len > 0 {
        let ds = v.right_descents();
        if ds.len() != 1 {
            return false;
        }
        v = multiply(&v, &simple(&v.rd, ds[0]).expect("valid index")).expect("same datum");
    }
    true
}

/// All rigid elements of the non-extended affine Weyl group of length at
/// most max_len (capped at 64), sorted by length then word.
pub fn enumerate_rigid(rd: &Arc<RootDatum>, max_len: usize) -> Vec<WeylElement> {
    let max_len = max_len.min(64) as i64;
    let gens: Vec<WeylElement> = (0..=rd.rank)
        .map(|i| simple(rd, i).expect("valid index"))
        .collect();
    let mut out = vec![identity(rd)];
    let mut stack = vec![identity(rd)];
    while let Some(w) = stack.pop() {
        if w.len >= max_len {
            continue;
        }
        for g in &gens {
            let ext = multiply(&w, g).expect("same datum");
            if ext.len > w.len && is_rigid(&ext) {
                out.push(ext.clone());
                stack.push(ext);
            }
        }
    }
    out.sort_by_key(|w| (w.len, w.canonical_word()));
    out
}

/// All elements of the subgroup generated by the listed simple reflections
/// with length at most max_len, sorted by length then word.
pub fn elements_up_to_with(
    rd: &Arc<RootDatum>,
    gens: &[usize],
    max_len: i64,
) -> Result<Vec<WeylElement>, WeylError> {
    let gens: Vec<WeylElement> = gens
        .iter()
        .map(|&i| simple(rd, i))
        .collect::<Result<_, _>>()?;
    let mut seen = std::collections::HashSet::new();
    seen.insert(identity(rd));
    let mut frontier = vec![identity(rd)];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let ext = multiply(w, g).expect("same datum");
                if ext.len > w.len && ext.len <= max_len && seen.insert(ext.clone()) {
                    next.push(ext);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<WeylElement> = seen.into_iter().collect();
    out.sort_by_key(|w| (w.len, w.canonical_word()));
    Ok(out)
}

/// All elements of the non-extended affine Weyl group up to the given length.
pub fn elements_up_to(rd: &Arc<RootDatum>, max_len: i64) -> Vec<WeylElement> {
    let gens: Vec<usize> = (0..=rd.rank).collect();
    elements_up_to_with(rd, &gens, max_len).expect("valid indices")
}
