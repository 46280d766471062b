//! Randomized laws. The acceptance binary repeats the headline ones with a
//! fixed seed; these shrink on failure.

use std::sync::Arc;

use proptest::prelude::*;

use weyl_cells::affine_weyl::{from_word, gamma, identity, multiply, simple, WeylElement};
use weyl_cells::fusion::{dim_in, irreps, tensor, FiniteName, GroupLabel};
use weyl_cells::orbits::{closure_leq, collapse, Ambient, Partition};
use weyl_cells::rootdata::{build, parse_type, RootDatum};
use weyl_cells::weights::{dot_action, format_weight, parse_weight, AffineWeight};

const TYPES: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C3", "D4", "F4", "G2"];

fn datum(ty: &str) -> Arc<RootDatum> {
    let (f, l) = parse_type(ty).unwrap();
    Arc::new(build(f, l).unwrap())
}

fn assemble(rd: &Arc<RootDatum>, letters: &[usize], twist: Option<usize>) -> WeylElement {
    let mut w = identity(rd);
    for &i in letters {
        w = multiply(&w, &simple(rd, i).unwrap()).unwrap();
    }
    if let Some(k) = twist {
        if !rd.minuscule.is_empty() {
            let m = rd.minuscule[k % rd.minuscule.len()];
            w = multiply(&w, &gamma(rd, m).unwrap()).unwrap();
        }
    }
    w
}

/// Type name, two letter strings, optional omega twists, weight coefficients
/// and a level.
type Scenario = (
    String,
    Vec<usize>,
    Vec<usize>,
    Option<usize>,
    Option<usize>,
    Vec<i64>,
    i64,
);

fn scenario() -> impl Strategy<Value = Scenario> {
    prop::sample::select(TYPES.to_vec()).prop_flat_map(|ty| {
        let (_, rank) = parse_type(ty).unwrap();
        (
            Just(ty.to_string()),
            prop::collection::vec(0..=rank, 0..8),
            prop::collection::vec(0..=rank, 0..8),
            prop::option::of(0..4usize),
            prop::option::of(0..4usize),
            prop::collection::vec(-3i64..=3, rank),
            -4i64..=2,
        )
    })
}

fn weight_of(rd: &Arc<RootDatum>, coeffs: &[i64], level: i64) -> AffineWeight {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{c}*w{}", i + 1))
        .collect();
    parse_weight(rd, &format!("{}@{level}", terms.join("+"))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

    #[test]
    fn dot_action_composes((ty, a, b, ta, tb, coeffs, level) in scenario()) {
        let rd = datum(&ty);
        let u = assemble(&rd, &a, ta);
        let v = assemble(&rd, &b, tb);
        let wt = weight_of(&rd, &coeffs, level);
        let stepwise = dot_action(&u, &dot_action(&v, &wt).unwrap()).unwrap();
        let combined = dot_action(&multiply(&u, &v).unwrap(), &wt).unwrap();
        prop_assert_eq!(&stepwise, &combined);
    }
}

proptest! {
    #[test]
    fn dot_action_inverts((ty, a, _b, ta, _tb, coeffs, level) in scenario()) {
        let rd = datum(&ty);
        let u = assemble(&rd, &a, ta);
        let wt = weight_of(&rd, &coeffs, level);
        let back = dot_action(&u.inverse(), &dot_action(&u, &wt).unwrap()).unwrap();
        prop_assert_eq!(&back, &wt);
    }

    #[test]
    fn canonical_words_round_trip((ty, a, _b, ta, _tb, _c, _l) in scenario()) {
        let rd = datum(&ty);
        let u = assemble(&rd, &a, ta);
        let again = from_word(&rd, &u.canonical_word()).unwrap();
        prop_assert_eq!(&again, &u);
        prop_assert_eq!(again.length(), u.length());
    }

    #[test]
    fn inverse_is_an_involution((ty, a, _b, ta, _tb, _c, _l) in scenario()) {
        let rd = datum(&ty);
        let u = assemble(&rd, &a, ta);
        prop_assert_eq!(u.inverse().length(), u.length());
        prop_assert_eq!(&u.inverse().inverse(), &u);
    }

    #[test]
    fn weight_literals_round_trip((ty, _a, _b, _ta, _tb, coeffs, level) in scenario()) {
        let rd = datum(&ty);
        let wt = weight_of(&rd, &coeffs, level);
        let again = parse_weight(&rd, &format_weight(&wt)).unwrap();
        prop_assert_eq!(&again, &wt);
    }
}

fn partitions_of(n: i64) -> Vec<Vec<i64>> {
    fn go(rest: i64, max: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=max.min(rest)).rev() {
            prefix.push(k);
            go(rest - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn group_pool() -> Vec<(GroupLabel, i64)> {
    vec![
        (GroupLabel::Finite(FiniteName::S3), 8),
        (GroupLabel::Finite(FiniteName::Q8), 8),
        (GroupLabel::Finite(FiniteName::D8), 8),
        (GroupLabel::Finite(FiniteName::Klein), 8),
        (GroupLabel::O2, 4),
        (GroupLabel::Sl2, 4),
        (GroupLabel::Sl3, 3),
    ]
}

proptest! {
    #[test]
    fn fusion_commutes_and_counts_dimensions(
        g_idx in 0..7usize,
        i in 0..64usize,
        j in 0..64usize,
    ) {
        let (g, bound) = group_pool().remove(g_idx);
        let set = irreps(&g, bound);
        let x = &set[i % set.len()];
        let y = &set[j % set.len()];
        let xy = tensor(&g, x, y).unwrap();
        let mut yx = tensor(&g, y, x).unwrap();
        let mut xy_sorted = xy.clone();
        let key = |t: &(weyl_cells::fusion::Irrep, i64)| format!("{:?}", t.0);
        xy_sorted.sort_by_key(&key);
        yx.sort_by_key(&key);
        prop_assert_eq!(&xy_sorted, &yx);
        let total: i64 = xy.iter().map(|(ir, m)| m * dim_in(&g, ir)).sum();
        prop_assert_eq!(total, dim_in(&g, x) * dim_in(&g, y));
    }

    #[test]
    fn collapse_is_idempotent(parts in prop::collection::vec(1i64..=6, 1..6), sp in any::<bool>()) {
        let mut parts = parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let n: i64 = parts.iter().sum();
        let ambient = if sp && n % 2 == 0 { Ambient::Sp(n as usize) } else { Ambient::So(n as usize) };
        let p = Partition::new(&parts, ambient).unwrap();
        let c = collapse(&p);
        prop_assert!(c.is_valid());
        prop_assert_eq!(c.parts().iter().sum::<i64>(), n);
        prop_assert_eq!(&collapse(&c), &c);
        // A valid partition is its own collapse.
        if p.is_valid() {
            prop_assert_eq!(&c, &p);
        }
    }

    #[test]
    fn transposition_reverses_closure(n in 2i64..=12, i in any::<usize>(), j in any::<usize>()) {
        let all = partitions_of(n);
        let a = &all[i % all.len()];
        let b = &all[j % all.len()];
        let p = Partition::new(a, Ambient::Gl(n as usize)).unwrap();
        let q = Partition::new(b, Ambient::Gl(n as usize)).unwrap();
        let pt = Partition::new(&p.transpose_parts(), Ambient::Gl(n as usize)).unwrap();
        let qt = Partition::new(&q.transpose_parts(), Ambient::Gl(n as usize)).unwrap();
        prop_assert_eq!(
            closure_leq(&p, &q).unwrap(),
            closure_leq(&qt, &pt).unwrap()
        );
    }
}
