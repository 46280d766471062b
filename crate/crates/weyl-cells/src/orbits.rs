//! Nilpotent orbit calculus for classical types, done on partitions:
//! validity, collapse, closure order, weighted Dynkin diagrams, the
//! transpose-collapse duality, and the sigma-partition table.

use crate::rootdata::Family;
use serde_json::json;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("cannot parse partition literal `{0}`")]
    BadLiteral(String),
    #[error("parts sum to {0}, ambient wants {1}")]
    WrongSize(i64, i64),
    #[error("sp ambient needs even size, got {0}")]
    OddSymplectic(usize),
    #[error("parts must be positive")]
    NonPositivePart,
    #[error("partitions live in different ambients")]
    AmbientMismatch,
    #[error("partition is not valid in its ambient")]
    Invalid,
    #[error("no partition model for type {0}")]
    UnsupportedFamily(Family),
    #[error("kappa {kappa} is outside the tabulated range for {family}{rank}")]
    OutOfRange {
        family: Family,
        rank: usize,
        kappa: i64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Ambient {
    Gl(usize),
    So(usize),
    Sp(usize),
}

impl Ambient {
    pub fn size(&self) -> usize {
        match *self {
            Ambient::Gl(n) | Ambient::So(n) | Ambient::Sp(n) => n,
        }
    }

    /// Rank of the ambient simple (or reductive, for gl) algebra.
    pub fn rank(&self) -> usize {
        match *self {
            Ambient::Gl(n) => n - 1,
            Ambient::So(n) => n / 2,
            Ambient::Sp(n) => n / 2,
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Ambient::Gl(n) => write!(f, "gl{n}"),
            Ambient::So(n) => write!(f, "so{n}"),
            Ambient::Sp(n) => write!(f, "sp{n}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Partition {
    parts: Vec<i64>,
    ambient: Ambient,
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}@{}", parts.join(","), self.ambient)
    }
}

impl Partition {
    /// Sorts, strips zeros, and checks the size; parity validity is a
    /// separate question (collapse exists to repair it).
    pub fn new(parts: &[i64], ambient: Ambient) -> Result<Partition, OrbitError> {
        if let Ambient::Sp(n) = ambient {
            if n % 2 != 0 {
                return Err(OrbitError::OddSymplectic(n));
            }
        }
        let mut parts: Vec<i64> = parts.iter().copied().filter(|&p| p != 0).collect();
        if parts.iter().any(|&p| p < 0) {
            return Err(OrbitError::NonPositivePart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let total: i64 = parts.iter().sum();
        if total != ambient.size() as i64 {
            return Err(OrbitError::WrongSize(total, ambient.size() as i64));
        }
        Ok(Partition { parts, ambient })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// so: even parts occur evenly; sp: odd parts occur evenly; gl: anything.
    pub fn is_valid(&self) -> bool {
        let bad_parity = match self.ambient {
            Ambient::Gl(_) => return true,
            Ambient::So(_) => 0,
            Ambient::Sp(_) => 1,
        };
        let mut i = 0;
        while i < self.parts.len() {
            let j = self.parts[i..].iter().take_while(|&&p| p == self.parts[i]).count();
            if self.parts[i] % 2 == bad_parity && j % 2 != 0 {
                return false;
            }
            i += j;
        }
        true
    }

    pub fn transpose_parts(&self) -> Vec<i64> {
        let mut out = Vec::new();
        let mut k = 1;
        loop {
            let count = self.parts.iter().filter(|&&p| p >= k).count() as i64;
            if count == 0 {
                return out;
            }
            out.push(count);
            k += 1;
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "parts": self.parts, "ambient": self.ambient.to_string() })
    }
}

/// Literals like `4,2,1@so9`; trailing parts equal to 1 may be omitted and
/// are padded back in.
pub fn parse_partition(s: &str) -> Result<Partition, OrbitError> {
    let bad = || OrbitError::BadLiteral(s.to_string());
    let (parts_str, amb_str) = s.trim().split_once('@').ok_or_else(bad)?;
    let mut parts: Vec<i64> = parts_str
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let amb_str = amb_str.trim();
    let n: usize = amb_str.get(2..).and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    let ambient = match &amb_str[..2] {
        "gl" => Ambient::Gl(n),
        "so" => Ambient::So(n),
        "sp" => Ambient::Sp(n),
        _ => return Err(bad()),
    };
    let total: i64 = parts.iter().sum();
    if parts.iter().all(|&p| p >= 1) && total < n as i64 {
        parts.resize(parts.len() + (n as i64 - total) as usize, 1);
    }
    Partition::new(&parts, ambient)
}

/// The largest valid partition below p in dominance order, by repeated
/// single-box moves: decrement the last occurrence of the largest
/// parity-violating value, drop the box at the first later slot that keeps
/// the parts weakly decreasing.
pub fn collapse(p: &Partition) -> Partition {
    let bad_parity = match p.ambient {
        Ambient::Gl(_) => return p.clone(),
        Ambient::So(_) => 0,
        Ambient::Sp(_) => 1,
    };
    let mut parts = p.parts.clone();
    loop {
        let mut worst: Option<usize> = None;
        let mut i = 0;
        while i < parts.len() {
            let run = parts[i..].iter().take_while(|&&q| q == parts[i]).count();
            if parts[i] % 2 == bad_parity && run % 2 != 0 {
                worst = Some(i + run - 1);
                break;
            }
            i += run;
        }
        let Some(i) = worst else {
            return Partition {
                parts,
                ambient: p.ambient,
            };
        };
        parts[i] -= 1;
        let slot = (i + 1..parts.len()).find(|&j| parts[j] < parts[j - 1]);
        match slot {
            Some(j) => parts[j] += 1,
            None => parts.push(1),
        }
        if parts[i] == 0 {
            parts.remove(i);
        }
    }
}

/// Dominance order on partial sums; orbit closure containment.
pub fn closure_leq(p: &Partition, q: &Partition) -> Result<bool, OrbitError> {
    if p.ambient != q.ambient {
        return Err(OrbitError::AmbientMismatch);
    }
    let mut sp = 0;
    let mut sq = 0;
    for k in 0..p.parts.len().max(q.parts.len()) {
        sp += p.parts.get(k).copied().unwrap_or(0);
        sq += q.parts.get(k).copied().unwrap_or(0);
        if sp > sq {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weighted Dynkin diagram: merge the sl2-weight progressions of the parts,
/// then evaluate the simple roots on the dominant representative.
pub fn weighted_dynkin(p: &Partition) -> Result<Vec<i64>, OrbitError> {
    if !p.is_valid() {
        return Err(OrbitError::Invalid);
    }
    let mut h: Vec<i64> = Vec::new();
    for &m in &p.parts {
        for k in 0..m {
            h.push(m - 1 - 2 * k);
        }
    }
    h.sort_unstable_by(|a, b| b.cmp(a));
    let r = p.ambient.rank();
    let mut out: Vec<i64> = (1..r).map(|i| h[i - 1] - h[i]).collect();
    match p.ambient {
        Ambient::Gl(_) => {
            if r > 0 {
                out.push(h[r - 1] - h[r]);
            }
        }
        Ambient::So(n) if n % 2 == 1 => out.push(h[r - 1]),
        Ambient::So(_) => out.push(h[r - 2] + h[r - 1]),
        Ambient::Sp(_) => out.push(2 * h[r - 1]),
    }
    Ok(out)
}

/// Transpose-collapse duality. gl is self-dual under plain transposition;
/// so(2n) collapses its own transpose; so(2n+1) and sp(2n) exchange by
/// dropping the last box of the transpose, resp. growing its first part.
pub fn ls_dual(p: &Partition) -> Result<Partition, OrbitError> {
    if !p.is_valid() {
        return Err(OrbitError::Invalid);
    }
    let mut t = p.transpose_parts();
    let target = match p.ambient {
        Ambient::Gl(n) => {
            return Partition::new(&t, Ambient::Gl(n));
        }
        Ambient::So(n) if n % 2 == 1 => {
            *t.last_mut().expect("nonempty") -= 1;
            Ambient::Sp(n - 1)
        }
        Ambient::So(n) => Ambient::So(n),
        Ambient::Sp(n) => {
            t[0] += 1;
            Ambient::So(n + 1)
        }
    };
    Ok(collapse(&Partition::new(&t, target)?))
}

/// The partition of sigma for a tabulated (family, rank, kappa) row,
/// landing in the Langlands dual ambient.
pub fn sigma_partition(family: Family, rank: usize, kappa: i64) -> Result<Partition, OrbitError> {
    let l = rank as i64;
    let out_of_range = || OrbitError::OutOfRange {
        family,
        rank,
        kappa,
    };
    match family {
        Family::A => {
            if kappa > -1 || 2 * kappa < -(l + 1) {
                return Err(out_of_range());
            }
            Partition::new(&[l + 1 + kappa, -kappa], Ambient::Gl(rank + 1))
        }
        Family::B => {
            if rank < 4 || !(kappa == -3 || (kappa == -4 && rank >= 5)) {
                return Err(out_of_range());
            }
            Partition::new(&[2 * l - 4, 4], Ambient::Sp(2 * rank))
        }
        Family::C => {
            let min = if l % 2 == 0 { -l / 2 - 1 } else { -(l + 1) / 2 };
            if kappa > -2 || kappa < min {
                return Err(out_of_range());
            }
            let parts = if l == -2 * kappa - 2 {
                vec![l, l, 1]
            } else {
                vec![2 * l + 2 * kappa + 1, -2 * kappa - 1, 1]
            };
            Partition::new(&parts, Ambient::So(2 * rank + 1))
        }
        Family::D => {
            if rank < 5 || !(kappa == -3 || (kappa == -4 && rank >= 6)) {
                return Err(out_of_range());
            }
            Partition::new(&[2 * l - 5, 5], Ambient::So(2 * rank))
        }
        Family::E | Family::F | Family::G => Err(OrbitError::UnsupportedFamily(family)),
    }
}
