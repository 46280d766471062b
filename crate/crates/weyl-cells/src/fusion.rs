//! Irreducible representation labels and tensor decomposition for the
//! centralizer groups that show up in the tables.
//!
//! Each group family gets a small hand-coded engine: character tables for
//! the finite groups, Clebsch-Gordan for SL2 and friends, Freudenthal plus
//! highest-weight peeling for SL3, lattice arithmetic for tori and their
//! kernels. Everything is exact.

use num::rational::Rational64;
use num::Zero;
use serde_json::json;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FusionError {
    #[error("cannot parse group literal `{0}`")]
    BadGroup(String),
    #[error("cannot parse representation literal `{0}`")]
    BadLabel(String),
    #[error("representation does not belong to the group")]
    GroupMismatch,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum FiniteName {
    Zn(i64),
    Klein,
    S3,
    Q8,
    D8,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum GroupLabel {
    /// (Gm)^r.
    Torus(usize),
    Sl2,
    Sl3,
    Finite(FiniteName),
    /// Z/2 semidirect Gm; the algebraic O(2).
    O2,
    /// Normalizer of the torus in SL2. Same fusion rules as O2.
    NSl2Gm,
    Z2xSl2,
    /// ker((a, b): Gm^2 -> Gm).
    TorusKernel { a: i64, b: i64 },
    /// ker(det^m: GL2 -> Gm).
    Gl2Kernel { m: i64 },
}

#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Irrep {
    Torus(Vec<i64>),
    Sl2(i64),
    Sl3(i64, i64),
    /// Index into the finite group's character table.
    Finite(usize),
    One,
    Sgn,
    Two(i64),
    /// (nontrivial sign?, SL2 weight).
    SignBox(bool, i64),
    /// Canonical (torsion class, free part) for a torus kernel.
    KernelChar(i64, i64),
    /// Canonical GL2 highest weight (p, q) with q reduced mod m.
    Gl2(i64, i64),
}

struct FiniteData {
    names: Vec<&'static str>,
    sizes: Vec<i64>,
    table: Vec<Vec<i64>>,
}

fn finite_data(name: FiniteName) -> Option<FiniteData> {
    // All real character tables; Zn is handled by modular addition instead.
    match name {
        FiniteName::Zn(_) => None,
        FiniteName::Klein => Some(FiniteData {
            names: vec!["1", "x", "y", "xy"],
            sizes: vec![1, 1, 1, 1],
            table: vec![
                vec![1, 1, 1, 1],
                vec![1, 1, -1, -1],
                vec![1, -1, 1, -1],
                vec![1, -1, -1, 1],
            ],
        }),
        FiniteName::S3 => Some(FiniteData {
            names: vec!["1", "sign", "2dim"],
            sizes: vec![1, 3, 2],
            table: vec![vec![1, 1, 1], vec![1, -1, 1], vec![2, 0, -1]],
        }),
        FiniteName::Q8 => Some(FiniteData {
            names: vec!["1", "i", "j", "k", "2dim"],
            sizes: vec![1, 1, 2, 2, 2],
            table: vec![
                vec![1, 1, 1, 1, 1],
                vec![1, 1, 1, -1, -1],
                vec![1, 1, -1, 1, -1],
                vec![1, 1, -1, -1, 1],
                vec![2, -2, 0, 0, 0],
            ],
        }),
        FiniteName::D8 => Some(FiniteData {
            names: vec!["1", "x", "y", "xy", "2dim"],
            sizes: vec![1, 1, 2, 2, 2],
            table: vec![
                vec![1, 1, 1, 1, 1],
                vec![1, 1, 1, -1, -1],
                vec![1, 1, -1, 1, -1],
                vec![1, 1, -1, -1, 1],
                vec![2, -2, 0, 0, 0],
            ],
        }),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Extended gcd: g = ax + by.
fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

impl GroupLabel {
    /// X(K) = Z^2 / Z(a,b): class of (m, n) as (torsion mod g, free part).
    pub fn kernel_char(&self, m: i64, n: i64) -> Result<Irrep, FusionError> {
        let GroupLabel::TorusKernel { a, b } = *self else {
            return Err(FusionError::GroupMismatch);
        };
        let (g, x, y) = egcd(a, b);
        assert!(g > 0, "zero character has no kernel reduction");
        // (a,b)U = (g,0) with U = [[x, -b/g], [y, a/g]]; push (m,n) through U.
        let tor = (m * x + n * y).rem_euclid(g);
        let free = -m * b / g + n * a / g;
        Ok(Irrep::KernelChar(tor, free))
    }

    /// GL2 weight (p, q), p >= q, reduced modulo the (m, m) shift.
    pub fn gl2_char(&self, p: i64, q: i64) -> Result<Irrep, FusionError> {
        let GroupLabel::Gl2Kernel { m } = *self else {
            return Err(FusionError::GroupMismatch);
        };
        if p < q {
            return Err(FusionError::BadLabel(format!("{p},{q}")));
        }
        let shift = q - q.rem_euclid(m);
        Ok(Irrep::Gl2(p - shift, q - shift))
    }
}

pub fn unit(g: &GroupLabel) -> Irrep {
    match g {
        GroupLabel::Torus(r) => Irrep::Torus(vec![0; *r]),
        GroupLabel::Sl2 => Irrep::Sl2(0),
        GroupLabel::Sl3 => Irrep::Sl3(0, 0),
        GroupLabel::Finite(_) => Irrep::Finite(0),
        GroupLabel::O2 | GroupLabel::NSl2Gm => Irrep::One,
        GroupLabel::Z2xSl2 => Irrep::SignBox(false, 0),
        GroupLabel::TorusKernel { .. } => Irrep::KernelChar(0, 0),
        GroupLabel::Gl2Kernel { .. } => Irrep::Gl2(0, 0),
    }
}

pub fn dim(ir: &Irrep) -> i64 {
    match ir {
        Irrep::Torus(_) | Irrep::One | Irrep::Sgn | Irrep::KernelChar(..) => 1,
        Irrep::Sl2(n) => n + 1,
        Irrep::Sl3(a, b) => (a + 1) * (b + 1) * (a + b + 2) / 2,
        Irrep::Finite(_) => panic!("finite dims need the group"),
        Irrep::Two(_) => 2,
        Irrep::SignBox(_, n) => n + 1,
        Irrep::Gl2(p, q) => p - q + 1,
    }
}

pub fn dim_in(g: &GroupLabel, ir: &Irrep) -> i64 {
    match (g, ir) {
        (GroupLabel::Finite(name), Irrep::Finite(k)) => match finite_data(*name) {
            Some(data) => data.table[*k][0],
            None => 1,
        },
        _ => dim(ir),
    }
}

pub fn dual(g: &GroupLabel, ir: &Irrep) -> Result<Irrep, FusionError> {
    Ok(match (g, ir) {
        (GroupLabel::Torus(_), Irrep::Torus(v)) => Irrep::Torus(v.iter().map(|x| -x).collect()),
        (GroupLabel::Sl2, Irrep::Sl2(n)) => Irrep::Sl2(*n),
        (GroupLabel::Sl3, Irrep::Sl3(a, b)) => Irrep::Sl3(*b, *a),
        (GroupLabel::Finite(FiniteName::Zn(n)), Irrep::Finite(k)) => {
            Irrep::Finite(((n - *k as i64) % n) as usize)
        }
        // The remaining finite tables are real, so every irrep is self-dual.
        (GroupLabel::Finite(_), Irrep::Finite(k)) => Irrep::Finite(*k),
        (GroupLabel::O2 | GroupLabel::NSl2Gm, x @ (Irrep::One | Irrep::Sgn | Irrep::Two(_))) => {
            x.clone()
        }
        (GroupLabel::Z2xSl2, Irrep::SignBox(s, n)) => Irrep::SignBox(*s, *n),
        (g @ GroupLabel::TorusKernel { .. }, Irrep::KernelChar(..)) => {
            let (m, n) = kernel_rep_pair(g, ir)?;
            g.kernel_char(-m, -n)?
        }
        (g @ GroupLabel::Gl2Kernel { .. }, Irrep::Gl2(p, q)) => g.gl2_char(-q, -p)?,
        _ => return Err(FusionError::GroupMismatch),
    })
}

/// A representative (m, n) in Gm^2 coordinates of a kernel character.
fn kernel_rep_pair(g: &GroupLabel, ir: &Irrep) -> Result<(i64, i64), FusionError> {
    let (GroupLabel::TorusKernel { a, b }, Irrep::KernelChar(tor, free)) = (g, ir) else {
        return Err(FusionError::GroupMismatch);
    };
    let (gd, x, y) = egcd(*a, *b);
    // U^{-1} = [[a/g, b/g], [-y, x]]; map (tor, free) back.
    Ok((tor * a / gd - free * y, tor * b / gd + free * x))
}

pub fn irreps(g: &GroupLabel, bound: i64) -> Vec<Irrep> {
    let mut out = match g {
        GroupLabel::Torus(1) => (-bound..=bound).map(|n| Irrep::Torus(vec![n])).collect(),
        GroupLabel::Torus(r) => {
            let mut out = vec![unit(g)];
            for i in 0..*r {
                for n in 1..=bound {
                    for sign in [1, -1] {
                        let mut v = vec![0; *r];
                        v[i] = sign * n;
                        out.push(Irrep::Torus(v));
                    }
                }
            }
            out
        }
        GroupLabel::Sl2 => (0..=bound).map(Irrep::Sl2).collect(),
        GroupLabel::Sl3 => {
            let mut out = Vec::new();
            for a in 0..=bound {
                for b in 0..=(bound - a) {
                    out.push(Irrep::Sl3(a, b));
                }
            }
            out
        }
        GroupLabel::Finite(FiniteName::Zn(n)) => (0..*n as usize).map(Irrep::Finite).collect(),
        GroupLabel::Finite(name) => {
            let data = finite_data(*name).expect("tabled group");
            (0..data.table.len()).map(Irrep::Finite).collect()
        }
        GroupLabel::O2 | GroupLabel::NSl2Gm => {
            let mut out = vec![Irrep::One, Irrep::Sgn];
            out.extend((1..=bound).map(Irrep::Two));
            out
        }
        GroupLabel::Z2xSl2 => {
            let mut out = Vec::new();
            for n in 0..=bound {
                out.push(Irrep::SignBox(false, n));
                out.push(Irrep::SignBox(true, n));
            }
            out
        }
        GroupLabel::TorusKernel { a, b } => {
            let gd = gcd(*a, *b);
            let mut out = Vec::new();
            for tor in 0..gd {
                for free in -bound..=bound {
                    out.push(Irrep::KernelChar(tor, free));
                }
            }
            out
        }
        GroupLabel::Gl2Kernel { m } => {
            let mut out = Vec::new();
            for q in 0..*m {
                for d in 0..=bound {
                    out.push(Irrep::Gl2(q + d, q));
                }
            }
            out
        }
    };
    out.sort();
    out.dedup();
    out
}

/// Weight multiplicities of the SL3 irrep with highest weight aL1+bL2,
/// by Freudenthal's recursion in fundamental-weight coordinates.
fn sl3_character(a: i64, b: i64) -> HashMap<(i64, i64), i64> {
    let pairing = |x: (i64, i64), y: (i64, i64)| -> Rational64 {
        // Gram matrix of the fundamental weights: [[2,1],[1,2]]/3.
        Rational64::new(
            2 * x.0 * y.0 + x.0 * y.1 + x.1 * y.0 + 2 * x.1 * y.1,
            3,
        )
    };
    let positive = [(2, -1), (-1, 2), (1, 1)];
    let lam = (a, b);
    let top = pairing((a + 1, b + 1), (a + 1, b + 1));
    let mut mult: HashMap<(i64, i64), i64> = HashMap::new();
    mult.insert(lam, 1);
    // lam - c1 a1 - c2 a2, visited by increasing depth c1+c2.
    for depth in 1..=(2 * (a + b)) {
        for c1 in 0..=depth {
            let c2 = depth - c1;
            let mu = (a - 2 * c1 + c2, b + c1 - 2 * c2);
            let denom = top - pairing((mu.0 + 1, mu.1 + 1), (mu.0 + 1, mu.1 + 1));
            if denom <= Rational64::zero() {
                continue;
            }
            let mut acc = Rational64::zero();
            for alpha in positive {
                for k in 1..=depth {
                    let up = (mu.0 + k * alpha.0, mu.1 + k * alpha.1);
                    let m = mult.get(&up).copied().unwrap_or(0);
                    if m != 0 {
                        acc += Rational64::from_integer(m) * pairing(up, alpha);
                    }
                }
            }
            let m = Rational64::from_integer(2) * acc / denom;
            assert!(m.is_integer(), "Freudenthal gave a fraction");
            if m != Rational64::zero() {
                mult.insert(mu, m.to_integer());
            }
        }
    }
    mult
}

fn sl3_tensor(a: &(i64, i64), b: &(i64, i64)) -> Vec<(Irrep, i64)> {
    let ca = sl3_character(a.0, a.1);
    let cb = sl3_character(b.0, b.1);
    let mut prod: HashMap<(i64, i64), i64> = HashMap::new();
    for (wa, ma) in &ca {
        for (wb, mb) in &cb {
            *prod.entry((wa.0 + wb.0, wa.1 + wb.1)).or_insert(0) += ma * mb;
        }
    }
    let mut out = Vec::new();
    loop {
        prod.retain(|_, m| *m != 0);
        // The highest remaining weight is dominant and heads a summand.
        let Some(&mu) = prod
            .keys()
            .max_by_key(|w| (w.0 + w.1, w.0))
        else {
            break;
        };
        let m = prod[&mu];
        assert!(m > 0 && mu.0 >= 0 && mu.1 >= 0, "peeling went wrong");
        out.push((Irrep::Sl3(mu.0, mu.1), m));
        for (w, c) in sl3_character(mu.0, mu.1) {
            *prod.entry(w).or_insert(0) -= m * c;
        }
    }
    out
}

pub fn tensor(g: &GroupLabel, x: &Irrep, y: &Irrep) -> Result<Vec<(Irrep, i64)>, FusionError> {
    let mut out: Vec<(Irrep, i64)> = match (g, x, y) {
        (GroupLabel::Torus(r), Irrep::Torus(v), Irrep::Torus(w))
            if v.len() == *r && w.len() == *r =>
        {
            vec![(
                Irrep::Torus(v.iter().zip(w).map(|(a, b)| a + b).collect()),
                1,
            )]
        }
        (GroupLabel::Sl2, Irrep::Sl2(n), Irrep::Sl2(m)) => ((n - m).abs()..=n + m)
            .step_by(2)
            .map(|k| (Irrep::Sl2(k), 1))
            .collect(),
        (GroupLabel::Sl3, Irrep::Sl3(a1, b1), Irrep::Sl3(a2, b2)) => {
            sl3_tensor(&(*a1, *b1), &(*a2, *b2))
        }
        (GroupLabel::Finite(FiniteName::Zn(n)), Irrep::Finite(a), Irrep::Finite(b)) => {
            vec![(Irrep::Finite((a + b) % *n as usize), 1)]
        }
        (GroupLabel::Finite(name), Irrep::Finite(a), Irrep::Finite(b)) => {
            let data = finite_data(*name).expect("tabled group");
            let order: i64 = data.sizes.iter().sum();
            let prod: Vec<i64> = (0..data.sizes.len())
                .map(|k| data.table[*a][k] * data.table[*b][k])
                .collect();
            let mut out = Vec::new();
            for c in 0..data.table.len() {
                let num: i64 = (0..data.sizes.len())
                    .map(|k| data.sizes[k] * prod[k] * data.table[c][k])
                    .sum();
                assert_eq!(num % order, 0, "character inner product not integral");
                let m = num / order;
                if m != 0 {
                    out.push((Irrep::Finite(c), m));
                }
            }
            out
        }
        (GroupLabel::O2 | GroupLabel::NSl2Gm, a, b) => {
            let pair = |a: &Irrep, b: &Irrep| -> Option<Vec<(Irrep, i64)>> {
                Some(match (a, b) {
                    (Irrep::One, x) | (x, Irrep::One) => vec![(x.clone(), 1)],
                    (Irrep::Sgn, Irrep::Sgn) => vec![(Irrep::One, 1)],
                    (Irrep::Sgn, Irrep::Two(n)) | (Irrep::Two(n), Irrep::Sgn) => {
                        vec![(Irrep::Two(*n), 1)]
                    }
                    (Irrep::Two(n), Irrep::Two(m)) => {
                        let mut out = vec![(Irrep::Two(n + m), 1)];
                        if n == m {
                            out.push((Irrep::One, 1));
                            out.push((Irrep::Sgn, 1));
                        } else {
                            out.push((Irrep::Two((n - m).abs()), 1));
                        }
                        out
                    }
                    _ => return None,
                })
            };
            pair(a, b).ok_or(FusionError::GroupMismatch)?
        }
        (GroupLabel::Z2xSl2, Irrep::SignBox(s1, n), Irrep::SignBox(s2, m)) => {
            ((n - m).abs()..=n + m)
                .step_by(2)
                .map(|k| (Irrep::SignBox(s1 != s2, k), 1))
                .collect()
        }
        (GroupLabel::TorusKernel { .. }, Irrep::KernelChar(..), Irrep::KernelChar(..)) => {
            let (m1, n1) = kernel_rep_pair(g, x)?;
            let (m2, n2) = kernel_rep_pair(g, y)?;
            vec![(g.kernel_char(m1 + m2, n1 + n2)?, 1)]
        }
        (GroupLabel::Gl2Kernel { .. }, Irrep::Gl2(p1, q1), Irrep::Gl2(p2, q2)) => {
            let mut out = Vec::new();
            for k in 0..=(p1 - q1).min(p2 - q2) {
                out.push((g.gl2_char(p1 + p2 - k, q1 + q2 + k)?, 1));
            }
            out
        }
        _ => return Err(FusionError::GroupMismatch),
    };
    out.sort();
    Ok(out)
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::Torus(1) => write!(f, "Gm"),
            GroupLabel::Torus(r) => write!(f, "Gm{r}"),
            GroupLabel::Sl2 => write!(f, "SL2"),
            GroupLabel::Sl3 => write!(f, "SL3"),
            GroupLabel::Finite(FiniteName::Zn(n)) => write!(f, "Z{n}"),
            GroupLabel::Finite(FiniteName::Klein) => write!(f, "Klein"),
            GroupLabel::Finite(FiniteName::S3) => write!(f, "S3"),
            GroupLabel::Finite(FiniteName::Q8) => write!(f, "Q8"),
            GroupLabel::Finite(FiniteName::D8) => write!(f, "D8"),
            GroupLabel::O2 => write!(f, "O2"),
            GroupLabel::NSl2Gm => write!(f, "NSL2"),
            GroupLabel::Z2xSl2 => write!(f, "Z2xSL2"),
            GroupLabel::TorusKernel { a, b } => write!(f, "ker:{a},{b}"),
            GroupLabel::Gl2Kernel { m } => write!(f, "glker:{m}"),
        }
    }
}

pub fn parse_group(s: &str) -> Result<GroupLabel, FusionError> {
    let bad = || FusionError::BadGroup(s.to_string());
    Ok(match s {
        "Gm" => GroupLabel::Torus(1),
        "SL2" => GroupLabel::Sl2,
        "SL3" => GroupLabel::Sl3,
        "Klein" => GroupLabel::Finite(FiniteName::Klein),
        "S3" => GroupLabel::Finite(FiniteName::S3),
        "Q8" => GroupLabel::Finite(FiniteName::Q8),
        "D8" => GroupLabel::Finite(FiniteName::D8),
        "O2" => GroupLabel::O2,
        "NSL2" => GroupLabel::NSl2Gm,
        "Z2xSL2" => GroupLabel::Z2xSl2,
        _ => {
            if let Some(rest) = s.strip_prefix("ker:") {
                let (a, b) = rest.split_once(',').ok_or_else(bad)?;
                let a = a.trim().parse().map_err(|_| bad())?;
                let b = b.trim().parse().map_err(|_| bad())?;
                if gcd(a, b) == 0 {
                    return Err(bad());
                }
                GroupLabel::TorusKernel { a, b }
            } else if let Some(rest) = s.strip_prefix("glker:") {
                let m: i64 = rest.trim().parse().map_err(|_| bad())?;
                if m <= 0 {
                    return Err(bad());
                }
                GroupLabel::Gl2Kernel { m }
            } else if let Some(rest) = s.strip_prefix("Gm") {
                GroupLabel::Torus(rest.parse().map_err(|_| bad())?)
            } else if let Some(rest) = s.strip_prefix('Z') {
                let n: i64 = rest.parse().map_err(|_| bad())?;
                if n < 1 {
                    return Err(bad());
                }
                GroupLabel::Finite(FiniteName::Zn(n))
            } else {
                return Err(bad());
            }
        }
    })
}

pub fn format_irrep(g: &GroupLabel, ir: &Irrep) -> String {
    match (g, ir) {
        (GroupLabel::Torus(_), Irrep::Torus(v)) => v
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(","),
        (_, Irrep::Sl2(n)) => n.to_string(),
        (_, Irrep::Sl3(a, b)) => format!("{a},{b}"),
        (GroupLabel::Finite(FiniteName::Zn(_)), Irrep::Finite(k)) => k.to_string(),
        (GroupLabel::Finite(name), Irrep::Finite(k)) => finite_data(*name)
            .expect("tabled group")
            .names[*k]
            .to_string(),
        (_, Irrep::One) => "0".to_string(),
        (_, Irrep::Sgn) => "sign".to_string(),
        (_, Irrep::Two(n)) => n.to_string(),
        (_, Irrep::SignBox(false, n)) => n.to_string(),
        (_, Irrep::SignBox(true, n)) => format!("sign*{n}"),
        (g @ GroupLabel::TorusKernel { .. }, ir @ Irrep::KernelChar(..)) => {
            let (m, n) = kernel_rep_pair(g, ir).expect("kernel pair");
            format!("{m},{n}")
        }
        (_, Irrep::Gl2(p, q)) => format!("{p},{q}"),
        _ => format!("{ir:?}"),
    }
}

pub fn parse_irrep(g: &GroupLabel, s: &str) -> Result<Irrep, FusionError> {
    let bad = || FusionError::BadLabel(s.to_string());
    let s = s.trim();
    Ok(match g {
        GroupLabel::Torus(r) => {
            let v: Vec<i64> = s
                .split(',')
                .map(|p| p.trim().parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            if v.len() != *r {
                return Err(bad());
            }
            Irrep::Torus(v)
        }
        GroupLabel::Sl2 => {
            let n: i64 = s.parse().map_err(|_| bad())?;
            if n < 0 {
                return Err(bad());
            }
            Irrep::Sl2(n)
        }
        GroupLabel::Sl3 => {
            let (a, b) = s.split_once(',').ok_or_else(bad)?;
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if a < 0 || b < 0 {
                return Err(bad());
            }
            Irrep::Sl3(a, b)
        }
        GroupLabel::Finite(FiniteName::Zn(n)) => {
            let k: i64 = s.parse().map_err(|_| bad())?;
            Irrep::Finite(k.rem_euclid(*n) as usize)
        }
        GroupLabel::Finite(name) => {
            let data = finite_data(*name).expect("tabled group");
            let k = data
                .names
                .iter()
                .position(|n| *n == s)
                .ok_or_else(bad)?;
            Irrep::Finite(k)
        }
        GroupLabel::O2 | GroupLabel::NSl2Gm => match s {
            "triv" => Irrep::One,
            "sign" | "sign." => Irrep::Sgn,
            _ => {
                let n: i64 = s.parse().map_err(|_| bad())?;
                if n == 0 {
                    Irrep::One
                } else {
                    Irrep::Two(n.abs())
                }
            }
        },
        GroupLabel::Z2xSl2 => {
            let (sign, rest) = match s.strip_prefix("sign*") {
                Some(rest) => (true, rest),
                None => (false, s),
            };
            let n: i64 = rest.parse().map_err(|_| bad())?;
            if n < 0 {
                return Err(bad());
            }
            Irrep::SignBox(sign, n)
        }
        GroupLabel::TorusKernel { .. } => {
            let (m, n) = s.split_once(',').ok_or_else(bad)?;
            let m: i64 = m.trim().parse().map_err(|_| bad())?;
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            g.kernel_char(m, n)?
        }
        GroupLabel::Gl2Kernel { .. } => {
            let (p, q) = s.split_once(',').ok_or_else(bad)?;
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            g.gl2_char(p, q)?
        }
    })
}

/// JSON form of a tensor decomposition, stable under sorting.
pub fn tensor_json(g: &GroupLabel, terms: &[(Irrep, i64)]) -> serde_json::Value {
    json!(terms
        .iter()
        .map(|(ir, m)| json!({ "irrep": format_irrep(g, ir), "mult": m }))
        .collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(g: &GroupLabel, a: &str, b: &str) -> Vec<(String, i64)> {
        let x = parse_irrep(g, a).unwrap();
        let y = parse_irrep(g, b).unwrap();
        tensor(g, &x, &y)
            .unwrap()
            .into_iter()
            .map(|(ir, m)| (format_irrep(g, &ir), m))
            .collect()
    }

    fn pairs(v: &[(&str, i64)]) -> Vec<(String, i64)> {
        v.iter().map(|(s, m)| (s.to_string(), *m)).collect()
    }

    #[test]
    fn finite_tables() {
        let s3 = GroupLabel::Finite(FiniteName::S3);
        assert_eq!(t(&s3, "sign", "sign"), pairs(&[("1", 1)]));
        assert_eq!(t(&s3, "sign", "2dim"), pairs(&[("2dim", 1)]));
        assert_eq!(
            t(&s3, "2dim", "2dim"),
            pairs(&[("1", 1), ("sign", 1), ("2dim", 1)])
        );

        let q8 = GroupLabel::Finite(FiniteName::Q8);
        assert_eq!(t(&q8, "i", "j"), pairs(&[("k", 1)]));
        assert_eq!(
            t(&q8, "2dim", "2dim"),
            pairs(&[("1", 1), ("i", 1), ("j", 1), ("k", 1)])
        );

        let d8 = GroupLabel::Finite(FiniteName::D8);
        assert_eq!(t(&d8, "x", "y"), pairs(&[("xy", 1)]));
        assert_eq!(
            t(&d8, "2dim", "2dim"),
            pairs(&[("1", 1), ("x", 1), ("y", 1), ("xy", 1)])
        );

        let klein = GroupLabel::Finite(FiniteName::Klein);
        assert_eq!(t(&klein, "x", "xy"), pairs(&[("y", 1)]));

        let z5 = GroupLabel::Finite(FiniteName::Zn(5));
        assert_eq!(t(&z5, "3", "4"), pairs(&[("2", 1)]));
    }

    #[test]
    fn clebsch_gordan() {
        let sl2 = GroupLabel::Sl2;
        assert_eq!(t(&sl2, "1", "1"), pairs(&[("0", 1), ("2", 1)]));
        assert_eq!(t(&sl2, "2", "3"), pairs(&[("1", 1), ("3", 1), ("5", 1)]));

        let gm = GroupLabel::Torus(1);
        assert_eq!(t(&gm, "2", "-5"), pairs(&[("-3", 1)]));
    }

    #[test]
    fn sl3_products() {
        let g = GroupLabel::Sl3;
        // 3 x 3bar = 1 + 8, 3 x 3 = 3bar + 6.
        assert_eq!(t(&g, "1,0", "0,1"), pairs(&[("0,0", 1), ("1,1", 1)]));
        assert_eq!(t(&g, "1,0", "1,0"), pairs(&[("0,1", 1), ("2,0", 1)]));
        // 8 x 8 = 1 + 2*8 + 10 + 10bar + 27.
        assert_eq!(
            t(&g, "1,1", "1,1"),
            pairs(&[("0,0", 1), ("0,3", 1), ("1,1", 2), ("2,2", 1), ("3,0", 1)])
        );
        let dims: i64 = sl3_character(2, 1).values().sum();
        assert_eq!(dims, dim(&Irrep::Sl3(2, 1)));
        assert_eq!(dim(&Irrep::Sl3(1, 1)), 8);
        assert_eq!(dim(&Irrep::Sl3(3, 0)), 10);
    }

    #[test]
    fn o2_rules() {
        for g in [GroupLabel::O2, GroupLabel::NSl2Gm] {
            assert_eq!(t(&g, "sign", "sign"), pairs(&[("0", 1)]));
            assert_eq!(t(&g, "sign", "3"), pairs(&[("3", 1)]));
            assert_eq!(t(&g, "2", "3"), pairs(&[("1", 1), ("5", 1)]));
            assert_eq!(
                t(&g, "2", "2"),
                pairs(&[("0", 1), ("sign", 1), ("4", 1)])
            );
        }
    }

    #[test]
    fn z2_times_sl2() {
        let g = GroupLabel::Z2xSl2;
        assert_eq!(
            t(&g, "sign*1", "1"),
            pairs(&[("sign*0", 1), ("sign*2", 1)])
        );
        assert_eq!(t(&g, "sign*2", "sign*0"), pairs(&[("2", 1)]));
    }

    #[test]
    fn kernel_reduction() {
        // ker x^4 y^2: character lattice Z^2 / (4,2), torsion Z/2.
        let g = GroupLabel::TorusKernel { a: 4, b: 2 };
        let x = g.kernel_char(4, 2).unwrap();
        assert_eq!(x, unit(&g));
        assert_eq!(
            g.kernel_char(5, 1).unwrap(),
            g.kernel_char(1, -1).unwrap()
        );
        assert_ne!(g.kernel_char(1, 0).unwrap(), g.kernel_char(0, 1).unwrap());
        assert_eq!(irreps(&g, 1).len(), 6);
        let a = parse_irrep(&g, "3,0").unwrap();
        let b = parse_irrep(&g, "1,2").unwrap();
        let ab = tensor(&g, &a, &b).unwrap();
        assert_eq!(ab, vec![(g.kernel_char(4, 2).unwrap(), 1)]);
        assert_eq!(ab[0].0, unit(&g));
        // Round trip through the displayed representative.
        for ir in irreps(&g, 2) {
            assert_eq!(parse_irrep(&g, &format_irrep(&g, &ir)).unwrap(), ir);
        }
    }

    #[test]
    fn gl2_kernel() {
        let g = GroupLabel::Gl2Kernel { m: 3 };
        assert_eq!(g.gl2_char(4, 3).unwrap(), Irrep::Gl2(1, 0));
        assert_eq!(g.gl2_char(2, -1).unwrap(), Irrep::Gl2(5, 2));
        // det twists by (1,1); V(1,0) x V(1,0) = V(2,0) + det.
        assert_eq!(
            t(&g, "1,0", "1,0"),
            pairs(&[("1,1", 1), ("2,0", 1)])
        );
        assert_eq!(
            t(&g, "2,0", "1,0"),
            pairs(&[("2,1", 1), ("3,0", 1)])
        );
        let v = parse_irrep(&g, "1,0").unwrap();
        let vd = dual(&g, &v).unwrap();
        // V* = V(0,-1) = V(3,2) after the mod-3 shift.
        assert_eq!(vd, Irrep::Gl2(3, 2));
        let prod = tensor(&g, &v, &vd).unwrap();
        assert!(prod.contains(&(unit(&g), 1)));
    }

    fn all_groups() -> Vec<(GroupLabel, i64)> {
        vec![
            (GroupLabel::Finite(FiniteName::S3), 0),
            (GroupLabel::Finite(FiniteName::Q8), 0),
            (GroupLabel::Finite(FiniteName::D8), 0),
            (GroupLabel::Finite(FiniteName::Klein), 0),
            (GroupLabel::Finite(FiniteName::Zn(6)), 0),
            (GroupLabel::O2, 4),
            (GroupLabel::NSl2Gm, 3),
            (GroupLabel::Sl2, 4),
            (GroupLabel::Sl3, 3),
            (GroupLabel::Z2xSl2, 2),
            (GroupLabel::Torus(1), 3),
            (GroupLabel::TorusKernel { a: 4, b: 2 }, 2),
            (GroupLabel::TorusKernel { a: 5, b: -2 }, 2),
            (GroupLabel::Gl2Kernel { m: 3 }, 2),
        ]
    }

    #[test]
    fn ring_laws() {
        for (g, bound) in all_groups() {
            let reps = irreps(&g, bound);
            let one = unit(&g);
            for a in &reps {
                // Unit and duality: mult of 1 in a x b is [b = a*].
                let ua = tensor(&g, &one, a).unwrap();
                assert_eq!(ua, vec![(a.clone(), 1)], "unit law in {g}");
                let ad = dual(&g, a).unwrap();
                for b in &reps {
                    let ab = tensor(&g, a, b).unwrap();
                    let ba = tensor(&g, b, a).unwrap();
                    assert_eq!(ab, ba, "commutativity in {g}");
                    let lhs: i64 = ab.iter().map(|(ir, m)| m * dim_in(&g, ir)).sum();
                    assert_eq!(
                        lhs,
                        dim_in(&g, a) * dim_in(&g, b),
                        "dimension law in {g}"
                    );
                    let unit_mult = ab
                        .iter()
                        .find(|(ir, _)| *ir == one)
                        .map_or(0, |(_, m)| *m);
                    assert_eq!(unit_mult, i64::from(*b == ad), "duality in {g}");
                }
            }
        }
    }

    #[test]
    fn associativity_small() {
        for (g, bound) in all_groups() {
            let reps = irreps(&g, bound);
            for a in &reps {
                for b in &reps {
                    for c in &reps {
                        let d = dim_in(&g, a) * dim_in(&g, b) * dim_in(&g, c);
                        if d > 64 {
                            continue;
                        }
                        let mut left: Vec<(Irrep, i64)> = Vec::new();
                        for (ir, m) in tensor(&g, a, b).unwrap() {
                            for (jr, n) in tensor(&g, &ir, c).unwrap() {
                                left.push((jr, m * n));
                            }
                        }
                        let mut right: Vec<(Irrep, i64)> = Vec::new();
                        for (ir, m) in tensor(&g, b, c).unwrap() {
                            for (jr, n) in tensor(&g, a, &ir).unwrap() {
                                right.push((jr, m * n));
                            }
                        }
                        let collect = |v: Vec<(Irrep, i64)>| {
                            let mut map: HashMap<Irrep, i64> = HashMap::new();
                            for (ir, m) in v {
                                *map.entry(ir).or_insert(0) += m;
                            }
                            let mut out: Vec<_> = map.into_iter().collect();
                            out.sort();
                            out
                        };
                        assert_eq!(collect(left), collect(right), "associativity in {g}");
                    }
                }
            }
        }
    }

    #[test]
    fn group_literals() {
        for (g, _) in all_groups() {
            assert_eq!(parse_group(&g.to_string()).unwrap(), g);
        }
        assert!(parse_group("E8").is_err());
        assert!(parse_group("ker:0,0").is_err());
        assert!(parse_group("glker:0").is_err());
    }
}
