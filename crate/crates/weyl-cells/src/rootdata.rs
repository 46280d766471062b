//! Static numerical data of the finite and untwisted affine root systems of
//! types A-G in the Kac numbering: Cartan matrices, positive roots, marks and
//! comarks, the highest root, and the group of length-zero diagram rotations.
//!
//! Everything is generated from the finite Cartan matrix; only the Cartan
//! matrices themselves are written down per type.

use crate::mat::{self, IMat, QMat};
use num::rational::Rational64;
use serde_json::json;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for Family {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, RootDataError> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            "F" | "f" => Ok(Family::F),
            "G" | "g" => Ok(Family::G),
            _ => Err(RootDataError::BadType(s.to_string())),
        }
    }
}

/// Parses a compact type literal like `G2`, `A5` or `D10`.
pub fn parse_type(s: &str) -> Result<(Family, usize), RootDataError> {
    let s = s.trim();
    if s.len() < 2 {
        return Err(RootDataError::BadType(s.to_string()));
    }
    let family: Family = s[..1].parse()?;
    let rank: usize = s[1..]
        .parse()
        .map_err(|_| RootDataError::BadType(s.to_string()))?;
    Ok((family, rank))
}

#[derive(Debug, Error)]
pub enum RootDataError {
    #[error("no simple root system of type {0}{1}")]
    InvalidRank(Family, usize),
    #[error("cannot parse type literal `{0}`")]
    BadType(String),
}

/// The group of length-zero elements of the extended affine Weyl group,
/// recorded as permutations of the affine node set {0..rank}.
///
/// Index 0 is the identity. Every other element is attached to a minuscule
/// node `m` (its label): it is the class of t_{omega_m^vee} and sends node 0
/// to `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaGroup {
    /// perms[k][node] = image node under the k-th element.
    pub perms: Vec<Vec<usize>>,
    /// labels[k] = perms[k][0]: 0 for the identity, else the minuscule node.
    pub labels: Vec<usize>,
    /// table[a][b] = index of the composite (element a) after (element b).
    pub table: Vec<Vec<usize>>,
    /// Reduced word (node numbers 1..=rank) of the finite Weyl part of each
    /// element, i.e. of w_{0,J} w_0 where J drops the minuscule node.
    pub finite_words: Vec<Vec<usize>>,
}

impl OmegaGroup {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    /// Index of the element labelled by node `m` (0 gives the identity).
    pub fn index_of_label(&self, m: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == m)
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub family: Family,
    pub rank: usize,
    /// Finite Cartan matrix, cartan[i][j] = <alpha_{j+1}, alpha_{i+1}^vee>.
    pub cartan: IMat,
    /// Affine Cartan matrix on nodes 0..=rank.
    pub affine_cartan: IMat,
    /// Marks a_i of the null root delta = sum a_i alpha_i, indexed by node.
    pub marks: Vec<i64>,
    /// Comarks a_i^vee, indexed by node.
    pub comarks: Vec<i64>,
    /// Highest root theta in simple-root coordinates (index = node-1).
    pub theta: Vec<i64>,
    /// theta^vee in simple-coroot coordinates.
    pub theta_covector: Vec<i64>,
    pub h: i64,
    pub h_dual: i64,
    pub d_max_comark: i64,
    /// All positive roots in simple-root coordinates, by increasing height.
    pub positive_roots: Vec<Vec<i64>>,
    /// r_i = 2 / (alpha_i, alpha_i) with theta normalized to norm 2:
    /// 1 on long roots, 2 or 3 on short ones.
    pub root_ratio: Vec<i64>,
    /// Nodes with mark 1, i.e. carriers of minuscule fundamental coweights.
    pub minuscule: Vec<usize>,
    /// (A^T)^{-1}: pairing_matrix[i][j] = <omega_{i+1}, omega_{j+1}^vee>.
    pub pairing_matrix: QMat,
    omega: OmegaGroup,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.rank == other.rank
    }
}
impl Eq for RootDatum {}

/// Finite Cartan matrix in the Kac numbering, or `None` for an invalid rank.
fn finite_cartan(family: Family, l: usize) -> Option<IMat> {
    let mut a = vec![vec![0i64; l]; l];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    // Laces node i with node j (1-based), single bond.
    let bond = |a: &mut IMat, i: usize, j: usize| {
        a[i - 1][j - 1] = -1;
        a[j - 1][i - 1] = -1;
    };
    match family {
        Family::A => {
            if l < 1 {
                return None;
            }
            for i in 1..l {
                bond(&mut a, i, i + 1);
            }
        }
        Family::B => {
            // Chain 1..l with the last node short: <alpha_{l-1}, alpha_l^vee> = -2.
            if l < 2 {
                return None;
            }
            for i in 1..l {
                bond(&mut a, i, i + 1);
            }
            a[l - 1][l - 2] = -2;
        }
        Family::C => {
            // Transpose of B: node l is the long root.
            if l < 2 {
                return None;
            }
            for i in 1..l {
                bond(&mut a, i, i + 1);
            }
            a[l - 2][l - 1] = -2;
        }
        Family::D => {
            if l < 3 {
                return None;
            }
            for i in 1..l - 2 {
                bond(&mut a, i, i + 1);
            }
            bond(&mut a, l - 2, l - 1);
            bond(&mut a, l - 2, l);
        }
        Family::E => {
            if !(6..=8).contains(&l) {
                return None;
            }
            for i in 1..l - 1 {
                bond(&mut a, i, i + 1);
            }
            // Branch node: E6 hangs node 6 on 3, E7 node 7 on 3, E8 node 8 on 5.
            let attach = if l == 8 { 5 } else { 3 };
            bond(&mut a, attach, l);
        }
        Family::F => {
            if l != 4 {
                return None;
            }
            for i in 1..4 {
                bond(&mut a, i, i + 1);
            }
            a[2][1] = -2; // <alpha_2, alpha_3^vee> = -2: nodes 3,4 are short
        }
        Family::G => {
            if l != 2 {
                return None;
            }
            a[0][1] = -1;
            a[1][0] = -3; // node 2 is the short root
        }
    }
    Some(a)
}

/// All positive roots built height by height; the root-string test
/// q = p - <beta, alpha_i^vee> >= 1 is exact because all lower roots are
/// already known.
fn generate_positive_roots(cartan: &IMat) -> Vec<Vec<i64>> {
    let l = cartan.len();
    let mut roots: Vec<Vec<i64>> = Vec::new();
    let mut known: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let mut frontier: Vec<Vec<i64>> = (0..l)
        .map(|i| (0..l).map(|j| i64::from(i == j)).collect())
        .collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            known.insert(beta.clone());
            roots.push(beta.clone());
        }
        for beta in &frontier {
            for i in 0..l {
                let pairing: i64 = (0..l).map(|k| cartan[i][k] * beta[k]).sum();
                let mut p = 0i64;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if down[i] >= 0 && known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing >= 1 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains(&up) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        frontier = next;
    }
    roots
}

/// Root-coordinate matrix of the simple reflection at 1-based node `i`.
fn simple_reflection_on_roots(cartan: &IMat, i: usize) -> IMat {
    let l = cartan.len();
    let mut m = mat::identity(l);
    for j in 0..l {
        m[i - 1][j] -= cartan[i - 1][j];
    }
    m
}

/// Matrix (on root coordinates) of the longest element of the parabolic
/// generated by the 1-based nodes listed in `subset`, found by walking the
/// restricted regular dominant weight down to the antidominant chamber.
fn longest_element_matrix(cartan: &IMat, subset: &[usize]) -> IMat {
    let l = cartan.len();
    let mut v: Vec<i64> = (0..l)
        .map(|j| i64::from(subset.contains(&(j + 1))))
        .collect();
    let mut m = mat::identity(l);
    loop {
        let Some(&i) = subset.iter().find(|&&i| v[i - 1] > 0) else {
            return m;
        };
        let c = v[i - 1];
        for k in 0..l {
            v[k] -= c * cartan[k][i - 1];
        }
        m = mat::mul(&simple_reflection_on_roots(cartan, i), &m);
    }
}

/// Greedy right-descent stripping of a root-coordinate Weyl matrix into the
/// unique lexicographically smallest reduced word (1-based letters).
fn strip_to_word(cartan: &IMat, m: &IMat) -> Vec<usize> {
    let l = cartan.len();
    let mut m = m.clone();
    let mut out = Vec::new();
    loop {
        // i is a right descent iff the image of alpha_i (column i-1) is negative.
        let descent = (1..=l).find(|&i| (0..l).all(|k| m[k][i - 1] <= 0));
        let Some(i) = descent else {
            assert_eq!(m, mat::identity(l), "descent-free matrix must be identity");
            out.reverse();
            return out;
        };
        out.push(i);
        m = mat::mul(&m, &simple_reflection_on_roots(cartan, i));
    }
}

fn build_omega(
    cartan: &IMat,
    theta: &[i64],
    minuscule: &[usize],
) -> OmegaGroup {
    let l = cartan.len();
    let all: Vec<usize> = (1..=l).collect();
    let w0 = longest_element_matrix(cartan, &all);
    let mut perms: Vec<Vec<usize>> = vec![(0..=l).collect()];
    let mut labels = vec![0usize];
    let mut finite_words: Vec<Vec<usize>> = vec![Vec::new()];
    for &m in minuscule {
        let sub: Vec<usize> = (1..=l).filter(|&j| j != m).collect();
        let u = mat::mul(&longest_element_matrix(cartan, &sub), &w0);
        let word = strip_to_word(cartan, &u);
        let mut perm = vec![0usize; l + 1];
        // gamma(alpha_0): the finite part sends -theta to alpha_m.
        let beta0: Vec<i64> = mat::mat_vec(&u, theta).iter().map(|x| -x).collect();
        let alpha_m: Vec<i64> = (0..l).map(|k| i64::from(k == m - 1)).collect();
        assert_eq!(beta0, alpha_m, "gamma must send -theta to alpha_m");
        perm[0] = m;
        for j in 1..=l {
            let beta: Vec<i64> = (0..l).map(|k| u[k][j - 1]).collect();
            let neg_theta: Vec<i64> = theta.iter().map(|x| -x).collect();
            if beta == neg_theta {
                perm[j] = 0;
            } else if let Some(x) = (0..l).find(|&x| {
                (0..l).all(|k| beta[k] == i64::from(k == x))
            }) {
                assert_eq!(beta[m - 1], 0, "simple image must avoid the minuscule node");
                perm[j] = x + 1;
            } else {
                panic!("omega image of a simple root is neither simple nor -theta");
            }
        }
        perms.push(perm);
        labels.push(m);
        finite_words.push(word);
    }
    let n = perms.len();
    let mut table = vec![vec![0usize; n]; n];
    for a in 0..n {
        for b in 0..n {
            let composite: Vec<usize> = (0..=l).map(|j| perms[a][perms[b][j]]).collect();
            let k = perms
                .iter()
                .position(|p| *p == composite)
                .expect("omega permutations must close under composition");
            table[a][b] = k;
        }
    }
    OmegaGroup {
        perms,
        labels,
        table,
        finite_words,
    }
}

/// Builds the full root datum of the given simple type.
pub fn build(family: Family, rank: usize) -> Result<RootDatum, RootDataError> {
    let cartan =
        finite_cartan(family, rank).ok_or(RootDataError::InvalidRank(family, rank))?;
    let l = rank;
    let positive_roots = generate_positive_roots(&cartan);
    let theta = positive_roots
        .last()
        .expect("nonempty root system")
        .clone();
    let max_height: i64 = theta.iter().sum();
    assert_eq!(
        positive_roots
            .iter()
            .filter(|r| r.iter().sum::<i64>() == max_height)
            .count(),
        1,
        "highest root must be unique"
    );

    // Squared half-norms d_i up to scale: d_i * A_ij = d_j * A_ji. Propagate
    // over the connected diagram, then normalize the long roots to d = 1.
    let mut d = vec![Rational64::from_integer(0); l];
    d[0] = Rational64::from_integer(1);
    let mut settled = vec![false; l];
    settled[0] = true;
    for _ in 0..l {
        for i in 0..l {
            for j in 0..l {
                if settled[i] && !settled[j] && cartan[i][j] != 0 {
                    d[j] = d[i] * Rational64::new(cartan[i][j], cartan[j][i]);
                    settled[j] = true;
                }
            }
        }
    }
    assert!(settled.iter().all(|&s| s), "diagram must be connected");
    let dmax = *d.iter().max().unwrap();
    let root_ratio: Vec<i64> = d
        .iter()
        .map(|di| {
            let r = dmax / di;
            assert!(r.is_integer());
            r.to_integer()
        })
        .collect();

    let theta_covector: Vec<i64> = theta
        .iter()
        .zip(&root_ratio)
        .map(|(&t, &r)| {
            assert_eq!(t % r, 0, "comark must be integral");
            t / r
        })
        .collect();

    let mut marks = vec![1i64];
    marks.extend_from_slice(&theta);
    let mut comarks = vec![1i64];
    comarks.extend_from_slice(&theta_covector);
    let h: i64 = marks.iter().sum();
    let h_dual: i64 = comarks.iter().sum();
    let d_max_comark = *comarks.iter().max().unwrap();

    let mut affine_cartan = vec![vec![0i64; l + 1]; l + 1];
    affine_cartan[0][0] = 2;
    for i in 1..=l {
        for j in 1..=l {
            affine_cartan[i][j] = cartan[i - 1][j - 1];
        }
    }
    for j in 1..=l {
        // <alpha_j, alpha_0^vee> = -<alpha_j, theta^vee>
        affine_cartan[0][j] = -(0..l)
            .map(|k| cartan[k][j - 1] * theta_covector[k])
            .sum::<i64>();
        // <alpha_0, alpha_j^vee> = -<theta, alpha_j^vee>
        affine_cartan[j][0] = -(0..l)
            .map(|k| cartan[j - 1][k] * theta[k])
            .sum::<i64>();
    }

    let minuscule: Vec<usize> = (1..=l).filter(|&i| marks[i] == 1).collect();
    let omega = build_omega(&cartan, &theta, &minuscule);

    let pairing_matrix =
        mat::inv_rational(&mat::transpose(&cartan)).expect("Cartan matrix is invertible");

    Ok(RootDatum {
        family,
        rank,
        cartan,
        affine_cartan,
        marks,
        comarks,
        theta,
        theta_covector,
        h,
        h_dual,
        d_max_comark,
        positive_roots,
        root_ratio,
        minuscule,
        pairing_matrix,
        omega,
    })
}

impl RootDatum {
    pub fn omega_group(&self) -> &OmegaGroup {
        &self.omega
    }

    /// theta in fundamental-weight coordinates.
    pub fn theta_fund(&self) -> Vec<i64> {
        mat::mat_vec(&self.cartan, &self.theta)
    }

    /// theta^vee in fundamental-coweight coordinates.
    pub fn theta_covector_fund(&self) -> Vec<i64> {
        mat::mat_vec(&mat::transpose(&self.cartan), &self.theta_covector)
    }

    pub fn type_name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "family": self.family.to_string(),
            "rank": self.rank,
            "cartan": self.cartan,
            "affine_cartan": self.affine_cartan,
            "marks": self.marks,
            "comarks": self.comarks,
            "theta": self.theta,
            "h": self.h,
            "h_dual": self.h_dual,
            "d_max_comark": self.d_max_comark,
            "minuscule": self.minuscule,
            "omega": {
                "order": self.omega.order(),
                "labels": self.omega.labels,
                "perms": self.omega.perms,
            },
        })
    }
}
