//! The built-in catalogue of simple module families, one row per group type
//! and orbit, plus the engine that recomputes every verifiable column.
//!
//! Rows store parameterized words and labels as small templates. Expressions
//! inside braces are affine-ish integer arithmetic over the rank l, the
//! level k, and the entry parameters n, m, b, p; instantiation expands them
//! for concrete parameter values and the verifier replays each entry through
//! the shifted action, the bijection partner z, full commutativity,
//! sphericity and the sigma partition.

use crate::affine_weyl::{
    from_word, identity, is_left_spherical, is_rigid, is_right_spherical, multiply, simple,
    format_word, Letter, WeylElement, WeylError,
};
use crate::fusion::{
    format_irrep, parse_irrep, tensor, unit, FiniteName, FusionError, GroupLabel, Irrep,
};
use crate::orbits::{sigma_partition, OrbitError};
use crate::rootdata::{build, Family, RootDataError, RootDatum};
use crate::weights::{
    dot_action, format_weight, kappa_lambda0, min_dominant_v, weight, AffineWeight, WeightError,
};
use serde_json::json;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot parse template `{0}`")]
    BadTemplate(String),
    #[error("unknown table `{0}`")]
    UnknownTable(String),
    #[error("unknown row `{0}`")]
    UnknownRow(String),
    #[error("row {tag} is not instantiated at rank {rank}")]
    BadRank { tag: String, rank: usize },
    #[error("row {tag} has no level {kappa}")]
    BadLevel { tag: String, kappa: i64 },
    #[error("no catalogue entry matches the character `{0}`")]
    UnmatchedChi(String),
    #[error("unknown format `{0}`")]
    BadFormat(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Root(#[from] RootDataError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableId {
    SousReguliers,
    SousSous,
    Rang2,
}

impl TableId {
    pub fn parse(s: &str) -> Result<TableId, TableError> {
        match s {
            "sous-reguliers" => Ok(TableId::SousReguliers),
            "sous-sous" => Ok(TableId::SousSous),
            "rang2" => Ok(TableId::Rang2),
            _ => Err(TableError::UnknownTable(s.to_string())),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::SousReguliers => "sous-reguliers",
            TableId::SousSous => "sous-sous",
            TableId::Rang2 => "rang2",
        })
    }
}

type Env = HashMap<char, i64>;

/// Integer expression evaluator: + - * / with parentheses, literals, and
/// single-letter variables. Division truncates; the catalogue only divides
/// nonnegative quantities.
fn eval_expr(s: &str, env: &Env) -> Result<i64, TableError> {
    struct P<'a> {
        s: &'a [u8],
        pos: usize,
        env: &'a Env,
    }
    impl P<'_> {
        fn bad(&self) -> TableError {
            TableError::BadTemplate(String::from_utf8_lossy(self.s).into_owned())
        }
        fn peek(&self) -> Option<u8> {
            self.s.get(self.pos).copied()
        }
        fn expr(&mut self) -> Result<i64, TableError> {
            let mut acc = self.term()?;
            while let Some(c @ (b'+' | b'-')) = self.peek() {
                self.pos += 1;
                let t = self.term()?;
                acc = if c == b'+' { acc + t } else { acc - t };
            }
            Ok(acc)
        }
        fn term(&mut self) -> Result<i64, TableError> {
            let mut acc = self.factor()?;
            while let Some(c @ (b'*' | b'/')) = self.peek() {
                self.pos += 1;
                let t = self.factor()?;
                acc = if c == b'*' { acc * t } else { acc / t };
            }
            Ok(acc)
        }
        fn factor(&mut self) -> Result<i64, TableError> {
            match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    Ok(-self.factor()?)
                }
                Some(b'(') => {
                    self.pos += 1;
                    let v = self.expr()?;
                    if self.peek() != Some(b')') {
                        return Err(self.bad());
                    }
                    self.pos += 1;
                    Ok(v)
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    std::str::from_utf8(&self.s[start..self.pos])
                        .unwrap()
                        .parse()
                        .map_err(|_| self.bad())
                }
                Some(c) if c.is_ascii_lowercase() || c == b'N' => {
                    self.pos += 1;
                    self.env.get(&(c as char)).copied().ok_or_else(|| self.bad())
                }
                _ => Err(self.bad()),
            }
        }
    }
    let mut p = P {
        s: s.as_bytes(),
        pos: 0,
        env,
    };
    let v = p.expr()?;
    if p.pos != p.s.len() {
        return Err(p.bad());
    }
    Ok(v)
}

/// Replace every brace group in the template by its evaluated expression.
fn render(tpl: &str, env: &Env) -> Result<String, TableError> {
    let mut out = String::new();
    let mut rest = tpl;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let close = rest[open..]
            .find('}')
            .ok_or_else(|| TableError::BadTemplate(tpl.to_string()))?;
        out.push_str(&eval_expr(&rest[open + 1..open + close], env)?.to_string());
        rest = &rest[open + close + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

/// Expand a word template into generator letters.
///
/// Syntax: a digit is a simple reflection; `g{e}` a rotation; `[e]` a simple
/// reflection by expression; `[a..b]` the ascending run a, a+1, ..., b (empty
/// when a > b); `[a:b]` the descending run a, a-1, ..., b (empty when a < b);
/// `(body)^{e}` repetition; `P{v;a..b}(body)` the product of body over
/// v = a, ..., b ascending.
fn letters_from_template(tpl: &str, env: &Env) -> Result<Vec<Letter>, TableError> {
    fn bad(tpl: &str) -> TableError {
        TableError::BadTemplate(tpl.to_string())
    }
    // Reads an expression up to the next delimiter at depth zero.
    fn read_expr(s: &[u8], pos: &mut usize, delims: &[u8]) -> Result<String, String> {
        let start = *pos;
        let mut depth = 0usize;
        while *pos < s.len() {
            let c = s[*pos];
            if depth == 0 && delims.contains(&c) {
                break;
            }
            match c {
                b'(' => depth += 1,
                b')' => depth = depth.checked_sub(1).ok_or("unbalanced")?,
                _ => {}
            }
            *pos += 1;
        }
        Ok(String::from_utf8_lossy(&s[start..*pos]).into_owned())
    }
    fn brace_expr(s: &[u8], pos: &mut usize, env: &Env, tpl: &str) -> Result<i64, TableError> {
        if s.get(*pos) != Some(&b'{') {
            return Err(bad(tpl));
        }
        *pos += 1;
        let e = read_expr(s, pos, b"}").map_err(|_| bad(tpl))?;
        if s.get(*pos) != Some(&b'}') {
            return Err(bad(tpl));
        }
        *pos += 1;
        eval_expr(&e, env)
    }
    fn items(
        s: &[u8],
        pos: &mut usize,
        env: &Env,
        tpl: &str,
        out: &mut Vec<Letter>,
    ) -> Result<(), TableError> {
        while *pos < s.len() {
            match s[*pos] {
                b' ' => *pos += 1,
                b')' => return Ok(()),
                c if c.is_ascii_digit() => {
                    out.push(Letter::S((c - b'0') as usize));
                    *pos += 1;
                }
                b'g' => {
                    *pos += 1;
                    let m = brace_expr(s, pos, env, tpl)?;
                    if m < 1 {
                        return Err(bad(tpl));
                    }
                    out.push(Letter::Gamma(m as usize));
                }
                b'[' => {
                    *pos += 1;
                    let lo = read_expr(s, pos, b".:]").map_err(|_| bad(tpl))?;
                    let lo = eval_expr(&lo, env)?;
                    match s.get(*pos) {
                        Some(b']') => {
                            *pos += 1;
                            if lo < 0 {
                                return Err(bad(tpl));
                            }
                            out.push(Letter::S(lo as usize));
                        }
                        Some(b'.') => {
                            if s.get(*pos + 1) != Some(&b'.') {
                                return Err(bad(tpl));
                            }
                            *pos += 2;
                            let hi = read_expr(s, pos, b"]").map_err(|_| bad(tpl))?;
                            let hi = eval_expr(&hi, env)?;
                            if s.get(*pos) != Some(&b']') {
                                return Err(bad(tpl));
                            }
                            *pos += 1;
                            for v in lo..=hi {
                                if v < 0 {
                                    return Err(bad(tpl));
                                }
                                out.push(Letter::S(v as usize));
                            }
                        }
                        Some(b':') => {
                            *pos += 1;
                            let hi = read_expr(s, pos, b"]").map_err(|_| bad(tpl))?;
                            let hi = eval_expr(&hi, env)?;
                            if s.get(*pos) != Some(&b']') {
                                return Err(bad(tpl));
                            }
                            *pos += 1;
                            for v in (hi..=lo).rev() {
                                if v < 0 {
                                    return Err(bad(tpl));
                                }
                                out.push(Letter::S(v as usize));
                            }
                        }
                        _ => return Err(bad(tpl)),
                    }
                }
                b'(' => {
                    *pos += 1;
                    let body_start = *pos;
                    let mut depth = 0usize;
                    while *pos < s.len() {
                        match s[*pos] {
                            b'(' => depth += 1,
                            b')' if depth == 0 => break,
                            b')' => depth -= 1,
                            _ => {}
                        }
                        *pos += 1;
                    }
                    if s.get(*pos) != Some(&b')') {
                        return Err(bad(tpl));
                    }
                    let body = &s[body_start..*pos];
                    *pos += 1;
                    if s.get(*pos) != Some(&b'^') {
                        return Err(bad(tpl));
                    }
                    *pos += 1;
                    let reps = brace_expr(s, pos, env, tpl)?;
                    if reps < 0 {
                        return Err(bad(tpl));
                    }
                    for _ in 0..reps {
                        let mut bp = 0;
                        items(body, &mut bp, env, tpl, out)?;
                    }
                }
                b'P' => {
                    *pos += 1;
                    if s.get(*pos) != Some(&b'{') {
                        return Err(bad(tpl));
                    }
                    *pos += 1;
                    let var = *s.get(*pos).ok_or_else(|| bad(tpl))? as char;
                    *pos += 1;
                    if s.get(*pos) != Some(&b';') {
                        return Err(bad(tpl));
                    }
                    *pos += 1;
                    let lo = read_expr(s, pos, b".").map_err(|_| bad(tpl))?;
                    let lo = eval_expr(&lo, env)?;
                    if s.get(*pos) != Some(&b'.') || s.get(*pos + 1) != Some(&b'.') {
                        return Err(bad(tpl));
                    }
                    *pos += 2;
                    let hi = read_expr(s, pos, b"}").map_err(|_| bad(tpl))?;
                    let hi = eval_expr(&hi, env)?;
                    if s.get(*pos) != Some(&b'}') || s.get(*pos + 1) != Some(&b'(') {
                        return Err(bad(tpl));
                    }
                    *pos += 2;
                    let body_start = *pos;
                    let mut depth = 0usize;
                    while *pos < s.len() {
                        match s[*pos] {
                            b'(' => depth += 1,
                            b')' if depth == 0 => break,
                            b')' => depth -= 1,
                            _ => {}
                        }
                        *pos += 1;
                    }
                    if s.get(*pos) != Some(&b')') {
                        return Err(bad(tpl));
                    }
                    let body = &s[body_start..*pos];
                    *pos += 1;
                    for v in lo..=hi {
                        let mut env2 = env.clone();
                        env2.insert(var, v);
                        let mut bp = 0;
                        items(body, &mut bp, &env2, tpl, out)?;
                    }
                }
                _ => return Err(bad(tpl)),
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    let mut pos = 0;
    items(tpl.as_bytes(), &mut pos, env, tpl, &mut out)?;
    if pos != tpl.len() {
        return Err(bad(tpl));
    }
    Ok(out)
}

fn word_from_template(
    rd: &Arc<RootDatum>,
    tpl: &str,
    env: &Env,
) -> Result<(WeylElement, usize), TableError> {
    let letters = letters_from_template(tpl, env)?;
    let reflections = letters
        .iter()
        .filter(|l| matches!(l, Letter::S(_)))
        .count();
    Ok((from_word(rd, &letters)?, reflections))
}

/// Build a dominant weight at the given level from a rendered sum of
/// fundamental-weight terms: `3*w{1}+w{4}`, `0` for the vacuum. `W{e}`
/// contributes one copy of the e-th fundamental weight and disappears
/// entirely when e = 0.
fn label_from_template(
    rd: &Arc<RootDatum>,
    tpl: &str,
    env: &Env,
    kappa: i64,
) -> Result<AffineWeight, TableError> {
    let rendered = render(tpl, env)?;
    let bad = || TableError::BadTemplate(rendered.clone());
    let mut finite = vec![0i64; rd.rank];
    if rendered != "0" {
        for term in rendered.split('+') {
            let (coef, node) = if let Some(rest) = term.strip_prefix('W') {
                let node: i64 = rest.parse().map_err(|_| bad())?;
                if node == 0 {
                    continue;
                }
                (1, node)
            } else if let Some((c, n)) = term.split_once("*w") {
                (c.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?)
            } else if let Some(rest) = term.strip_prefix('w') {
                (1, rest.parse().map_err(|_| bad())?)
            } else {
                return Err(bad());
            };
            if coef < 0 || node < 1 || node > rd.rank as i64 {
                return Err(bad());
            }
            finite[node as usize - 1] += coef;
        }
    }
    Ok(weight(rd, finite, kappa, 0.into()))
}

/// The character of an entry; `triv` is the unit and `|` separates
/// alternative spellings tried against the row's group.
fn chi_irrep(group: &GroupLabel, tpl: &str, env: &Env) -> Result<Irrep, TableError> {
    if tpl == "triv" {
        return Ok(unit(group));
    }
    let rendered = render(tpl, env)?;
    for alt in rendered.split('|') {
        if let Ok(ir) = parse_irrep(group, alt) {
            return Ok(ir);
        }
    }
    Err(TableError::UnmatchedChi(rendered))
}

#[derive(Clone, Copy)]
pub enum Levels {
    Fixed(&'static [i64]),
    PerRank(fn(i64) -> Vec<i64>),
}

pub struct EntrySpec {
    /// Character template, `triv` for the unit.
    pub chi: &'static str,
    pub word: &'static str,
    /// Label templates aligned with the row's levels; a single template
    /// serves every level of a rank-dependent level set.
    pub labels: &'static [&'static str],
    /// Fixed parameter values, evaluated before the ranged ones.
    pub presets: &'static [(char, &'static str)],
    /// Ranged parameters (variable, lower, upper); `N` is the instantiation
    /// bound.
    pub params: &'static [(char, &'static str, &'static str)],
    /// Label replacements for special ranks: (rank, level index, template).
    pub overrides: &'static [(i64, usize, &'static str)],
    /// Bijection partner replacements for special levels: (kappa, word).
    pub z_overrides: &'static [(i64, &'static str)],
}

const NO_PRESETS: &[(char, &str)] = &[];
const NO_PARAMS: &[(char, &str, &str)] = &[];
const NO_OVERRIDES: &[(i64, usize, &str)] = &[];
const NO_Z: &[(i64, &str)] = &[];
const N_RANGE: &[(char, &str, &str)] = &[('n', "0", "N")];

macro_rules! entry {
    ($chi:expr, $word:expr, $labels:expr) => {
        EntrySpec {
            chi: $chi,
            word: $word,
            labels: $labels,
            presets: NO_PRESETS,
            params: NO_PARAMS,
            overrides: NO_OVERRIDES,
            z_overrides: NO_Z,
        }
    };
}

pub struct RowSpec {
    pub table: TableId,
    pub tag: &'static str,
    pub family: Family,
    pub ranks: &'static [usize],
    pub levels: Levels,
    pub group: fn(i64, i64) -> GroupLabel,
    pub entries: &'static [EntrySpec],
    /// Whether the row carries a sigma partition in the dual ambient.
    pub sigma: bool,
    /// Whether every word of the row must be fully commutative.
    pub check_fc: bool,
    /// Drop instances whose character pair is not dominant for the group.
    pub omit_nondominant_chi: bool,
}

fn grp_gm(_: i64, _: i64) -> GroupLabel {
    GroupLabel::Torus(1)
}
fn grp_sl2(_: i64, _: i64) -> GroupLabel {
    GroupLabel::Sl2
}
fn grp_sl3(_: i64, _: i64) -> GroupLabel {
    GroupLabel::Sl3
}
fn grp_klein(_: i64, _: i64) -> GroupLabel {
    GroupLabel::Finite(FiniteName::Klein)
}
fn grp_s3(_: i64, _: i64) -> GroupLabel {
    GroupLabel::Finite(FiniteName::S3)
}
fn grp_o2(_: i64, _: i64) -> GroupLabel {
    GroupLabel::O2
}
fn grp_z2(_: i64, _: i64) -> GroupLabel {
    GroupLabel::Finite(FiniteName::Zn(2))
}
fn grp_z3(_: i64, _: i64) -> GroupLabel {
    GroupLabel::Finite(FiniteName::Zn(3))
}
fn grp_one(_: i64, _: i64) -> GroupLabel {
    GroupLabel::Finite(FiniteName::Zn(1))
}
fn grp_z2xsl2(_: i64, _: i64) -> GroupLabel {
    GroupLabel::Z2xSl2
}
fn grp_z4_or_klein(l: i64, _: i64) -> GroupLabel {
    if l % 2 != 0 {
        GroupLabel::Finite(FiniteName::Zn(4))
    } else {
        GroupLabel::Finite(FiniteName::Klein)
    }
}
fn grp_order8(l: i64, k: i64) -> GroupLabel {
    if l % 2 == 0 || k % 2 != 0 {
        GroupLabel::Finite(FiniteName::D8)
    } else {
        GroupLabel::Finite(FiniteName::Q8)
    }
}
fn grp_c_crit(l: i64, _: i64) -> GroupLabel {
    if (l + 1) % 4 == 0 {
        GroupLabel::O2
    } else {
        GroupLabel::NSl2Gm
    }
}
fn grp_a_kernel(l: i64, k: i64) -> GroupLabel {
    GroupLabel::TorusKernel { a: l + 1 + k, b: -k }
}
fn grp_a_crit(l: i64, _: i64) -> GroupLabel {
    GroupLabel::Gl2Kernel { m: (l + 1) / 2 }
}

fn half_range_levels(l: i64) -> Vec<i64> {
    (2..=l / 2).map(|x| -x).collect()
}
fn odd_critical_level(l: i64) -> Vec<i64> {
    vec![-(l + 1) / 2]
}
fn even_deep_level(l: i64) -> Vec<i64> {
    vec![-l / 2 - 1]
}

/// Shared entries of the two deep type-A rows; the kernel group changes with
/// the level but the five character families do not.
const A_DEEP_ENTRIES: &[EntrySpec] = &[
    EntrySpec {
        chi: "{-n},0",
        word: "([0..-k-1]g{l})^{n-k}g{-k}",
        labels: &["{n}*w{-k}"],
        presets: NO_PRESETS,
        params: N_RANGE,
        overrides: NO_OVERRIDES,
        z_overrides: NO_Z,
    },
    EntrySpec {
        chi: "{b+p},{b}",
        word: "([0..p-k-1]g{l})^{-k-b}(0[l:p-k+1]g{1})^{b}g{p-k}",
        labels: &["{l+1+2*k-p}*w{b}+{p}*w{l+1+k+b}"],
        presets: NO_PRESETS,
        params: &[('b', "1", "-k-1"), ('p', "1", "l+2*k")],
        overrides: NO_OVERRIDES,
        z_overrides: NO_Z,
    },
    EntrySpec {
        chi: "{b-n},{b}",
        word: "([0..-k-1]g{l})^{n-k-b}(0[l:-k+1]g{1})^{b}g{-k}",
        labels: &["{l+1+2*k}*w{b}+{n}*w{-k}"],
        presets: NO_PRESETS,
        params: &[('b', "1", "-k-1"), ('n', "0", "N")],
        overrides: NO_OVERRIDES,
        z_overrides: NO_Z,
    },
    EntrySpec {
        chi: "{n},0",
        word: "(0[l:l+2+k]g{1})^{n-k}g{l+1+k}",
        labels: &["{n}*w{l+1+k}"],
        presets: NO_PRESETS,
        params: N_RANGE,
        overrides: NO_OVERRIDES,
        z_overrides: NO_Z,
    },
    EntrySpec {
        chi: "{b+l+1+2*k+n},{b}",
        word: "([0..l+k]g{l})^{-k-b}(0[l:l+2+k]g{1})^{b+n}g{l+1+k}",
        labels: &["{n}*w{l+1+k}+{l+1+2*k}*w{l+1+k+b}"],
        presets: NO_PRESETS,
        params: &[('b', "1", "-k-1"), ('n', "0", "N")],
        overrides: NO_OVERRIDES,
        z_overrides: NO_Z,
    },
];

static ROWS: &[RowSpec] = &[
    // Subregular rows.
    RowSpec {
        table: TableId::SousReguliers,
        tag: "A1",
        family: Family::A,
        ranks: &[1],
        levels: Levels::Fixed(&[-1]),
        group: grp_sl2,
        entries: &[EntrySpec {
            chi: "{n}",
            word: "(0g{1})^{n}0",
            labels: &["{n}*w{1}"],
            presets: NO_PRESETS,
            params: N_RANGE,
            overrides: NO_OVERRIDES,
            z_overrides: NO_Z,
        }],
        sigma: false,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousReguliers,
        tag: "A",
        family: Family::A,
        ranks: &[2, 3, 4, 5, 6, 7, 8],
        levels: Levels::Fixed(&[-1]),
        group: grp_gm,
        entries: &[
            EntrySpec {
                chi: "{n}",
                word: "(0g{i})^{n}0",
                labels: &["{n}*w{j}"],
                presets: &[('i', "1"), ('j', "l")],
                params: N_RANGE,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
            EntrySpec {
                chi: "{-n}",
                word: "(0g{i})^{n}0",
                labels: &["{n}*w{j}"],
                presets: &[('i', "l"), ('j', "1")],
                params: N_RANGE,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
        ],
        sigma: true,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousReguliers,
        tag: "B",
        family: Family::B,
        ranks: &[3, 4, 5, 6, 7, 8],
        levels: Levels::Fixed(&[-1, -2]),
        group: grp_klein,
        entries: &[
            entry!("triv", "0", &["0", "0"]),
            EntrySpec {
                chi: "x",
                word: "021g{1}",
                labels: &["w{3}", "0"],
                presets: NO_PRESETS,
                params: NO_PARAMS,
                overrides: &[(3, 0, "2*w{3}")],
                z_overrides: NO_Z,
            },
            entry!("y", "02[3..l][l-1:2]0", &["{2*l-3}*w{1}", "{2*l-5}*w{1}"]),
            entry!(
                "xy",
                "02[3..l][l-1:1]g{1}",
                &["{2*l-4}*w{1}+w{2}", "{2*l-5}*w{1}"]
            ),
        ],
        sigma: false,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousReguliers,
        tag: "C",
        family: Family::C,
        ranks: &[2, 3, 4, 5, 6, 7, 8],
        levels: Levels::Fixed(&[-1]),
        group: grp_o2,
        entries: &[
            EntrySpec {
                chi: "{n}",
                word: "(0[1..l-1]g{l})^{n}0",
                labels: &["{n*l}*w{1}"],
                presets: NO_PRESETS,
                params: N_RANGE,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
            entry!("sign", "010", &["w{2}"]),
        ],
        sigma: false,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousReguliers,
        tag: "D",
        family: Family::D,
        ranks: &[4, 5, 6, 7, 8],
        levels: Levels::Fixed(&[-1, -2]),
        group: grp_z4_or_klein,
        entries: &[
            entry!("triv", "0", &["0", "0"]),
            EntrySpec {
                chi: "2|x",
                word: "021g{1}",
                labels: &["w{3}", "0"],
                presets: NO_PRESETS,
                params: NO_PARAMS,
                overrides: &[(4, 0, "w{3}+w{4}")],
                z_overrides: NO_Z,
            },
            EntrySpec {
                chi: "y|1",
                word: "02[3..l-2][i]g{i}",
                labels: &["{l-3}*w{1}+w{j}", "{l-4}*w{1}"],
                presets: &[('i', "l-1"), ('j', "l")],
                params: NO_PARAMS,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
            EntrySpec {
                chi: "3|xy",
                word: "02[3..l-2][i]g{i}",
                labels: &["{l-3}*w{1}+w{j}", "{l-4}*w{1}"],
                presets: &[('i', "l"), ('j', "l-1")],
                params: NO_PARAMS,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
        ],
        sigma: false,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousReguliers,
        tag: "E6",
        family: Family::E,
        ranks: &[6],
        levels: Levels::Fixed(&[-1, -2, -3]),
        group: grp_z3,
        entries: &[
            entry!("triv", "0", &["0", "0", "0"]),
            EntrySpec {
                chi: "1",
                word: "063g{i}60",
                labels: &["2*w{j}", "w{j}", "0"],
                presets: &[('i', "1"), ('j', "4")],
                params: NO_PARAMS,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
            EntrySpec {
                chi: "2",
                word: "063g{i}60",
                labels: &["2*w{j}", "w{j}", "0"],
                presets: &[('i', "5"), ('j', "2")],
                params: NO_PARAMS,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
        ],
        sigma: false,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousReguliers,
        tag: "E7",
        family: Family::E,
        ranks: &[7],
        levels: Levels::Fixed(&[-1, -2, -3, -4]),
        group: grp_z2,
        entries: &[
            entry!("triv", "0", &["0", "0", "0", "0"]),
            entry!("1", "0[1..6]g{6}", &["3*w{7}", "2*w{7}", "w{7}", "0"]),
        ],
        sigma: false,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousReguliers,
        tag: "E8",
        family: Family::E,
        ranks: &[8],
        levels: Levels::Fixed(&[-1, -2, -3, -4, -5, -6]),
        group: grp_one,
        entries: &[entry!("triv", "0", &["0", "0", "0", "0", "0", "0"])],
        sigma: false,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousReguliers,
        tag: "F4",
        family: Family::F,
        ranks: &[4],
        levels: Levels::Fixed(&[-1, -2, -3]),
        group: grp_z2,
        entries: &[
            entry!("triv", "0", &["0", "0", "0"]),
            entry!("1", "0123210", &["5*w{4}", "3*w{4}", "w{4}"]),
        ],
        sigma: false,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousReguliers,
        tag: "G2",
        family: Family::G,
        ranks: &[2],
        levels: Levels::Fixed(&[-1, -2]),
        group: grp_s3,
        entries: &[
            entry!("triv", "0", &["0", "0"]),
            entry!("sign", "01210", &["4*w{2}", "w{2}"]),
            entry!("2dim", "0121210", &["3*w{1}", "w{1}"]),
        ],
        sigma: false,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    // Deeper rows.
    RowSpec {
        table: TableId::SousSous,
        tag: "A",
        family: Family::A,
        ranks: &[4, 5, 6, 7],
        levels: Levels::PerRank(half_range_levels),
        group: grp_a_kernel,
        entries: A_DEEP_ENTRIES,
        sigma: true,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousSous,
        tag: "Acrit",
        family: Family::A,
        ranks: &[3, 5, 7],
        levels: Levels::PerRank(odd_critical_level),
        group: grp_a_crit,
        entries: A_DEEP_ENTRIES,
        sigma: true,
        check_fc: true,
        omit_nondominant_chi: true,
    },
    RowSpec {
        table: TableId::SousSous,
        tag: "B",
        family: Family::B,
        ranks: &[5, 6, 7],
        levels: Levels::Fixed(&[-3, -4]),
        group: grp_klein,
        entries: &[
            entry!("triv", "021320", &["0", "0"]),
            EntrySpec {
                chi: "x",
                word: "021[3..l][l-1:3]20",
                labels: &["{2*l-7}*w{1}", "{2*l-9}*w{1}"],
                presets: NO_PRESETS,
                params: NO_PARAMS,
                overrides: NO_OVERRIDES,
                z_overrides: &[(-4, "021[3..l][l-1:4]2")],
            },
            EntrySpec {
                chi: "y",
                word: "0213240321g{1}",
                labels: &["w{5}", "0"],
                presets: NO_PRESETS,
                params: NO_PARAMS,
                overrides: &[(5, 0, "2*w{5}")],
                z_overrides: NO_Z,
            },
            entry!(
                "xy",
                "02132[4..l][l-1:4]0321g{1}",
                &["{2*l-8}*w{1}+w{4}", "{2*l-9}*w{1}"]
            ),
        ],
        sigma: true,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousSous,
        tag: "B4",
        family: Family::B,
        ranks: &[4],
        levels: Levels::Fixed(&[-3]),
        group: grp_o2,
        entries: &[
            EntrySpec {
                chi: "{n}",
                word: "(0234g{1})^{n}021320",
                labels: &["{2*n}*w{4}"],
                presets: NO_PRESETS,
                params: N_RANGE,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
            entry!("sign", "02134320", &["w{1}"]),
        ],
        sigma: true,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousSous,
        tag: "C",
        family: Family::C,
        ranks: &[4, 5, 6, 7],
        levels: Levels::PerRank(half_range_levels),
        group: grp_order8,
        entries: &[
            entry!("triv", "P{i;0..-2*k-2}([i:0])", &["0"]),
            entry!("x|i", "P{i;0..-2*k-1}([i:0])", &["w{-2*k}"]),
            entry!(
                "y|j",
                "[0..l][l-1:-2*k-2]P{i;0..-2*k-3}([i:0])",
                &["{2*l+4+4*k}*w{1}"]
            ),
            entry!(
                "xy|k",
                "[0..l][l-1:-2*k-1]P{i;0..-2*k-2}([i:0])",
                &["{2*l+3+4*k}*w{1}+w{-2*k-1}"]
            ),
            entry!("2dim", "([0..l])^{-k}g{l}", &["{l+2+2*k}*w{-k}"]),
        ],
        sigma: true,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousSous,
        tag: "Ccrit",
        family: Family::C,
        ranks: &[3, 5, 7],
        levels: Levels::PerRank(odd_critical_level),
        group: grp_c_crit,
        entries: &[
            EntrySpec {
                chi: "{2*n}",
                word: "([0..l])^{n}P{i;0..l-1}([i:0])",
                labels: &["W{n-l*(n/l)}+{n+n/l}*w{l}"],
                presets: NO_PRESETS,
                params: N_RANGE,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
            EntrySpec {
                chi: "{2*n-l}",
                word: "([0..l])^{n}g{l}",
                labels: &["W{n-l*(n/l)}+{n+n/l-(l+1)/2}*w{l}"],
                presets: NO_PRESETS,
                params: &[('n', "(l+1)/2", "(l+1)/2+N")],
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
            entry!("sign", "[0..l][l-1]P{i;0..l-2}([i:0])", &["2*w{1}"]),
        ],
        sigma: true,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousSous,
        tag: "Ceven",
        family: Family::C,
        ranks: &[2, 4, 6],
        levels: Levels::PerRank(even_deep_level),
        group: grp_z2xsl2,
        entries: &[
            EntrySpec {
                chi: "{n}",
                word: "([0..l])^{n}P{i;0..l}([i:0])",
                labels: &["{n}*w{l}"],
                presets: NO_PRESETS,
                params: N_RANGE,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
            EntrySpec {
                chi: "sign*{n}",
                word: "([0..l])^{n+l/2+1}g{l}",
                labels: &["{n}*w{l}"],
                presets: NO_PRESETS,
                params: N_RANGE,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
        ],
        sigma: true,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousSous,
        tag: "D",
        family: Family::D,
        ranks: &[6, 7, 8],
        levels: Levels::Fixed(&[-3, -4]),
        group: grp_z4_or_klein,
        entries: &[
            entry!("triv", "021320", &["0", "0"]),
            EntrySpec {
                chi: "2|x",
                word: "0213240321g{1}",
                labels: &["w{5}", "0"],
                presets: NO_PRESETS,
                params: NO_PARAMS,
                overrides: &[(6, 0, "w{5}+w{6}")],
                z_overrides: NO_Z,
            },
            EntrySpec {
                chi: "y|1",
                word: "0[2..l-2][j]1[2..l-2][i]g{i}",
                labels: &["{l-5}*w{2}+w{i}", "{l-6}*w{2}"],
                presets: &[('i', "l-1"), ('j', "l")],
                params: NO_PARAMS,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
            EntrySpec {
                chi: "3|xy",
                word: "0[2..l-2][j]1[2..l-2][i]g{i}",
                labels: &["{l-5}*w{2}+w{i}", "{l-6}*w{2}"],
                presets: &[('i', "l"), ('j', "l-1")],
                params: NO_PARAMS,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
        ],
        sigma: true,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousSous,
        tag: "D5",
        family: Family::D,
        ranks: &[5],
        levels: Levels::Fixed(&[-3]),
        group: grp_gm,
        entries: &[
            EntrySpec {
                chi: "{n}",
                word: "02(13g{i})^{n}1320",
                labels: &["{n}*w{i}"],
                presets: &[('i', "4")],
                params: N_RANGE,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
            EntrySpec {
                chi: "{-n}",
                word: "02(13g{i})^{n}1320",
                labels: &["{n}*w{i}"],
                presets: &[('i', "5")],
                params: N_RANGE,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
        ],
        sigma: true,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousSous,
        tag: "E6",
        family: Family::E,
        ranks: &[6],
        levels: Levels::Fixed(&[-4]),
        group: grp_gm,
        entries: &[
            EntrySpec {
                chi: "{n}",
                word: "063243(g{i}[i]243)^{n}60",
                labels: &["{2*n}*w{i}"],
                presets: &[('i', "1")],
                params: N_RANGE,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
            EntrySpec {
                chi: "{-n}",
                word: "063243(g{i}[i]243)^{n}60",
                labels: &["{2*n}*w{i}"],
                presets: &[('i', "5")],
                params: N_RANGE,
                overrides: NO_OVERRIDES,
                z_overrides: NO_Z,
            },
        ],
        sigma: false,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousSous,
        tag: "E7",
        family: Family::E,
        ranks: &[7],
        levels: Levels::Fixed(&[-5, -6]),
        group: grp_z2,
        entries: &[
            entry!("triv", "0123473210", &["0", "0"]),
            entry!(
                "1",
                "012347352413273456g{6}",
                &["w{1}+3*w{6}", "2*w{6}"]
            ),
        ],
        sigma: false,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousSous,
        tag: "E8",
        family: Family::E,
        ranks: &[8],
        levels: Levels::Fixed(&[-7, -8, -9, -10]),
        group: grp_one,
        entries: &[entry!("triv", "01234568543210", &["0", "0", "0", "0"])],
        sigma: false,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::SousSous,
        tag: "F4",
        family: Family::F,
        ranks: &[4],
        levels: Levels::Fixed(&[-4]),
        group: grp_z2,
        entries: &[
            entry!("triv", "0123243210", &["0"]),
            entry!("1", "012324130213243210", &["4*w{4}"]),
        ],
        sigma: false,
        check_fc: true,
        omit_nondominant_chi: false,
    },
    // Rank-two rows beyond full commutativity.
    RowSpec {
        table: TableId::Rang2,
        tag: "A2zero",
        family: Family::A,
        ranks: &[2],
        levels: Levels::Fixed(&[-2]),
        group: grp_sl3,
        entries: &[EntrySpec {
            chi: "{m},{n}",
            word: "(01g{2})^{n+1}(02g{1})^{m+1}0",
            labels: &["{m}*w{1}+{n}*w{2}"],
            presets: NO_PRESETS,
            params: &[('m', "0", "N"), ('n', "0", "N")],
            overrides: NO_OVERRIDES,
            z_overrides: NO_Z,
        }],
        sigma: false,
        check_fc: false,
        omit_nondominant_chi: false,
    },
    RowSpec {
        table: TableId::Rang2,
        tag: "G2min",
        family: Family::G,
        ranks: &[2],
        levels: Levels::Fixed(&[-3]),
        group: grp_sl2,
        entries: &[EntrySpec {
            chi: "{n}",
            word: "01212010(210)^{2*n+n-2*(n/2)}21210",
            labels: &["{n}*w{1}+{n-2*(n/2)}*w{2}"],
            presets: NO_PRESETS,
            params: N_RANGE,
            overrides: NO_OVERRIDES,
            z_overrides: NO_Z,
        }],
        sigma: false,
        check_fc: false,
        omit_nondominant_chi: false,
    },
];

pub fn rows() -> &'static [RowSpec] {
    ROWS
}

pub fn find_row(table: TableId, tag: &str) -> Result<&'static RowSpec, TableError> {
    ROWS.iter()
        .find(|r| r.table == table && r.tag == tag)
        .ok_or_else(|| TableError::UnknownRow(format!("{table}/{tag}")))
}

fn levels_of(row: &RowSpec, rank: usize) -> Vec<i64> {
    match row.levels {
        Levels::Fixed(ls) => ls.to_vec(),
        Levels::PerRank(f) => f(rank as i64),
    }
}

/// One concrete (entry, parameter, level) choice of a row at a rank.
pub struct Instance {
    pub entry: &'static EntrySpec,
    pub env: Env,
    pub level_idx: usize,
    pub kappa: i64,
}

fn base_env(rank: usize, kappa: i64, n_max: i64) -> Env {
    HashMap::from([('l', rank as i64), ('k', kappa), ('N', n_max)])
}

fn instances(row: &RowSpec, rank: usize, n_max: i64) -> Result<Vec<Instance>, TableError> {
    if !row.ranks.contains(&rank) {
        return Err(TableError::BadRank {
            tag: row.tag.to_string(),
            rank,
        });
    }
    let mut out = Vec::new();
    for (level_idx, kappa) in levels_of(row, rank).into_iter().enumerate() {
        for entry in row.entries {
            let mut base = base_env(rank, kappa, n_max);
            for (var, expr) in entry.presets {
                let v = eval_expr(expr, &base)?;
                base.insert(*var, v);
            }
            let mut envs = vec![base];
            for (var, lo, hi) in entry.params {
                let mut next = Vec::new();
                for env in &envs {
                    let lo = eval_expr(lo, env)?;
                    let hi = eval_expr(hi, env)?;
                    for v in lo..=hi {
                        let mut env2 = env.clone();
                        env2.insert(*var, v);
                        next.push(env2);
                    }
                }
                envs = next;
            }
            for env in envs {
                if row.omit_nondominant_chi && entry.chi != "triv" {
                    let rendered = render(entry.chi, &env)?;
                    if let Some((x, y)) = rendered.split_once(',') {
                        let x: i64 = x.parse().map_err(|_| TableError::BadTemplate(rendered.clone()))?;
                        let y: i64 = y.parse().map_err(|_| TableError::BadTemplate(rendered.clone()))?;
                        if x < y {
                            continue;
                        }
                    }
                }
                out.push(Instance {
                    entry,
                    env,
                    level_idx,
                    kappa,
                });
            }
        }
    }
    Ok(out)
}

fn expected_label(
    rd: &Arc<RootDatum>,
    inst: &Instance,
    rank: usize,
) -> Result<AffineWeight, TableError> {
    let tpl = inst
        .entry
        .overrides
        .iter()
        .find(|(r, li, _)| *r == rank as i64 && *li == inst.level_idx)
        .map(|(_, _, t)| *t)
        .unwrap_or_else(|| {
            if inst.entry.labels.len() == 1 {
                inst.entry.labels[0]
            } else {
                inst.entry.labels[inst.level_idx]
            }
        });
    label_from_template(rd, tpl, &inst.env, inst.kappa)
}

#[derive(Clone, Debug)]
pub struct Report {
    pub row: String,
    pub check: &'static str,
    pub status: bool,
    pub computed: String,
    pub expected: String,
}

impl Report {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "row": self.row,
            "check": self.check,
            "status": if self.status { "pass" } else { "fail" },
            "computed": self.computed,
            "expected": self.expected,
        })
    }
}

pub fn all_pass(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.status)
}

fn product_of_sings(
    rd: &Arc<RootDatum>,
    sing: &[usize],
) -> Result<WeylElement, TableError> {
    let mut acc = identity(rd);
    for &s in sing {
        acc = multiply(&acc, &simple(rd, s)?)?;
    }
    Ok(acc)
}

/// Recompute every verifiable column of one row at one rank.
pub fn verify_row(row: &RowSpec, rank: usize, n_max: i64) -> Result<Vec<Report>, TableError> {
    let rd = Arc::new(build(row.family, rank)?);
    let mut out = Vec::new();
    for (level_idx, kappa) in levels_of(row, rank).into_iter().enumerate() {
        let (v, kplus) = min_dominant_v(&rd, kappa)?;
        let sing = kplus.sing_set()?;
        let group = (row.group)(rank as i64, kappa);
        if row.sigma {
            let id = format!("{}/{}{}@{}", row.table, row.tag, rank, kappa);
            let report = match sigma_partition(row.family, rank, kappa) {
                Ok(p) => {
                    let ok = p.is_valid()
                        && p.parts().iter().sum::<i64>() == p.ambient().size() as i64;
                    Report {
                        row: id,
                        check: "sigma",
                        status: ok,
                        computed: p.to_string(),
                        expected: format!("valid partition of {}", p.ambient()),
                    }
                }
                Err(e) => Report {
                    row: id,
                    check: "sigma",
                    status: false,
                    computed: e.to_string(),
                    expected: "valid partition".to_string(),
                },
            };
            out.push(report);
        }
        for inst in instances(row, rank, n_max)? {
            if inst.level_idx != level_idx {
                continue;
            }
            let params: Vec<String> = inst
                .entry
                .params
                .iter()
                .map(|(var, _, _)| format!("{var}={}", inst.env[var]))
                .collect();
            let id = format!(
                "{}/{}{}@{}/chi={}{}{}",
                row.table,
                row.tag,
                rank,
                kappa,
                render(inst.entry.chi, &inst.env).unwrap_or_else(|_| inst.entry.chi.to_string()),
                if params.is_empty() { "" } else { "/" },
                params.join(",")
            );
            let push = |out: &mut Vec<Report>, check, status, computed: String, expected: String| {
                out.push(Report {
                    row: id.clone(),
                    check,
                    status,
                    computed,
                    expected,
                });
            };

            let (w, refl) = word_from_template(&rd, inst.entry.word, &inst.env)?;
            push(
                &mut out,
                "reduced",
                w.length() == refl as i64,
                w.length().to_string(),
                refl.to_string(),
            );

            // The rank-two table uses z = w v^{-1} across the board; the
            // other tables switch to the Duflo partner on the trivial
            // character, plus one tabled exceptional z.
            let uniform_z = row.table == TableId::Rang2;
            let chi = chi_irrep(&group, inst.entry.chi, &inst.env)?;
            let trivial = !uniform_z && chi == unit(&group);
            let z_tpl = inst
                .entry
                .z_overrides
                .iter()
                .find(|(zk, _)| *zk == kappa)
                .map(|(_, t)| *t);
            let z = if trivial {
                multiply(&v.inverse(), &product_of_sings(&rd, &sing)?)?
            } else {
                match z_tpl {
                    Some(t) => {
                        let letters = letters_from_template(t, &inst.env)?;
                        from_word(&rd, &letters)?
                    }
                    None => multiply(&w, &v.inverse())?,
                }
            };
            let z_dot = dot_action(&z, &kplus)?;

            // The highest weight of the module is z . k+; it equals
            // w . k Lambda_0 by transitivity except where z was overridden.
            let computed = if trivial || z_tpl.is_some() {
                z_dot.clone()
            } else {
                dot_action(&w, &kappa_lambda0(&rd, kappa))?
            };
            let expected = expected_label(&rd, &inst, rank)?;
            push(
                &mut out,
                "label",
                computed.eq_mod_delta(&expected) && computed.has_dominant_finite_part(),
                format_weight(&computed),
                format_weight(&expected),
            );

            if trivial {
                let vac = kappa_lambda0(&rd, kappa);
                push(
                    &mut out,
                    "duflo",
                    z_dot == vac,
                    format_weight(&z_dot),
                    format_weight(&vac),
                );
            } else if z_tpl.is_none() {
                push(
                    &mut out,
                    "transport",
                    z_dot.eq_mod_delta(&computed),
                    format_weight(&z_dot),
                    format_weight(&computed),
                );
            }
            if !uniform_z {
                let z_descents = z.right_descents();
                let z_shape =
                    is_left_spherical(&z) && sing.iter().all(|s| z_descents.contains(s));
                push(
                    &mut out,
                    "z-shape",
                    z_shape,
                    format!(
                        "left spherical: {}, right descents: {:?}",
                        is_left_spherical(&z),
                        z_descents
                    ),
                    format!("left spherical, descents contain {sing:?}"),
                );
            }

            if row.check_fc {
                push(
                    &mut out,
                    "fc",
                    crate::kl::is_fully_commutative(&w),
                    "checked".to_string(),
                    "fully commutative".to_string(),
                );
            }
            push(
                &mut out,
                "spherical",
                is_left_spherical(&w) && is_right_spherical(&w),
                format!(
                    "left: {}, right: {}",
                    is_left_spherical(&w),
                    is_right_spherical(&w)
                ),
                "spherical on both sides".to_string(),
            );
        }
    }
    Ok(out)
}

pub fn verify_table(table: TableId, n_max: i64) -> Result<Vec<Report>, TableError> {
    let mut out = Vec::new();
    for row in ROWS.iter().filter(|r| r.table == table) {
        for &rank in row.ranks {
            out.extend(verify_row(row, rank, n_max)?);
        }
    }
    Ok(out)
}

/// The level count of each subregular family equals the largest comark.
pub fn verify_level_ranges() -> Result<Vec<Report>, TableError> {
    let data: &[(Family, usize, i64)] = &[
        (Family::A, 5, 1),
        (Family::B, 5, 2),
        (Family::C, 5, 1),
        (Family::D, 6, 2),
        (Family::E, 6, 3),
        (Family::E, 7, 4),
        (Family::E, 8, 6),
        (Family::F, 4, 3),
        (Family::G, 2, 2),
    ];
    let mut out = Vec::new();
    for &(family, rank, expected) in data {
        let rd = build(family, rank)?;
        out.push(Report {
            row: format!("{family}{rank}"),
            check: "level-range",
            status: rd.d_max_comark == expected,
            computed: rd.d_max_comark.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(out)
}

/// All elements of minimal length whose unique reduced word starts with t
/// and ends with the zero node, found by growing rigid words.
fn shortest_rigid_between(
    rd: &Arc<RootDatum>,
    t: usize,
    max_len: i64,
) -> Result<Vec<WeylElement>, TableError> {
    let mut frontier = vec![simple(rd, t)?];
    loop {
        let found: Vec<WeylElement> = frontier
            .iter()
            .filter(|w| w.right_descents().contains(&0))
            .cloned()
            .collect();
        if !found.is_empty() {
            return Ok(found);
        }
        if frontier.is_empty() || frontier[0].length() >= max_len {
            return Ok(Vec::new());
        }
        let mut next = Vec::new();
        for w in &frontier {
            for s in 0..=rd.rank {
                let ws = multiply(w, &simple(rd, s)?)?;
                if ws.length() > w.length() && is_rigid(&ws) {
                    next.push(ws);
                }
            }
        }
        next.sort_by_key(|w| format_word(&w.canonical_word()));
        next.dedup();
        frontier = next;
    }
}

/// For each subregular (type, level): exactly one singular reflection, the
/// dot action of that reflection fixes the dominant representative, and the
/// minimal rigid word from t to the zero node recovers t v.
pub fn verify_singleton_sing() -> Result<Vec<Report>, TableError> {
    let mut out = Vec::new();
    for row in ROWS.iter().filter(|r| r.table == TableId::SousReguliers) {
        for &rank in row.ranks {
            let rd = Arc::new(build(row.family, rank)?);
            for kappa in levels_of(row, rank) {
                let id = format!("{}{}@{}", row.tag, rank, kappa);
                let (v, kplus) = min_dominant_v(&rd, kappa)?;
                let sing = kplus.sing_set()?;
                out.push(Report {
                    row: id.clone(),
                    check: "singleton",
                    status: sing.len() == 1,
                    computed: format!("{sing:?}"),
                    expected: "one singular reflection".to_string(),
                });
                if sing.len() != 1 {
                    continue;
                }
                let t = sing[0];
                let fixed = dot_action(&simple(&rd, t)?, &kplus)?;
                out.push(Report {
                    row: id.clone(),
                    check: "fixes",
                    status: fixed == kplus,
                    computed: format_weight(&fixed),
                    expected: format_weight(&kplus),
                });
                let tv = multiply(&simple(&rd, t)?, &v)?;
                let found = shortest_rigid_between(&rd, t, tv.length())?;
                let ok = found.len() == 1 && found[0] == tv && is_rigid(&tv);
                out.push(Report {
                    row: id,
                    check: "tv-minimal",
                    status: ok,
                    computed: format!(
                        "{} candidates at length {}",
                        found.len(),
                        found.first().map_or(0, |w| w.length())
                    ),
                    expected: format!("exactly {tv}"),
                });
            }
        }
    }
    Ok(out)
}

/// Tensor two characters of a row's group and map every summand back to its
/// catalogue label.
pub fn fuse_modules(
    table: TableId,
    tag: &str,
    rank: usize,
    kappa: i64,
    chi1: &str,
    chi2: &str,
) -> Result<Vec<(AffineWeight, i64)>, TableError> {
    let row = find_row(table, tag)?;
    if !row.ranks.contains(&rank) {
        return Err(TableError::BadRank {
            tag: tag.to_string(),
            rank,
        });
    }
    let levels = levels_of(row, rank);
    let level_idx = levels
        .iter()
        .position(|&k| k == kappa)
        .ok_or_else(|| TableError::BadLevel {
            tag: tag.to_string(),
            kappa,
        })?;
    let rd = Arc::new(build(row.family, rank)?);
    let group = (row.group)(rank as i64, kappa);
    let a = parse_irrep(&group, chi1)?;
    let b = parse_irrep(&group, chi2)?;
    let search = instances(row, rank, 64)?;
    let mut out = Vec::new();
    for (ir, mult) in tensor(&group, &a, &b)? {
        let inst = search
            .iter()
            .filter(|i| i.level_idx == level_idx)
            .find(|i| {
                chi_irrep(&group, i.entry.chi, &i.env)
                    .map(|c| c == ir)
                    .unwrap_or(false)
            })
            .ok_or_else(|| TableError::UnmatchedChi(format_irrep(&group, &ir)))?;
        out.push((expected_label(&rd, inst, rank)?, mult));
    }
    Ok(out)
}

/// One fixture line of an emitted table.
struct Line {
    family: Family,
    rank: usize,
    kappa: i64,
    chi: String,
    word: String,
    label: String,
}

fn emit_lines(table: TableId, n_max: i64) -> Result<Vec<Line>, TableError> {
    let mut out: Vec<Line> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for row in ROWS.iter().filter(|r| r.table == table) {
        for &rank in row.ranks {
            let rd = Arc::new(build(row.family, rank)?);
            for inst in instances(row, rank, n_max)? {
                let group = (row.group)(rank as i64, inst.kappa);
                let chi = format_irrep(&group, &chi_irrep(&group, inst.entry.chi, &inst.env)?);
                let letters = letters_from_template(inst.entry.word, &inst.env)?;
                let word = format_word(&letters);
                let label = format_weight(&expected_label(&rd, &inst, rank)?);
                let key = (rank, inst.kappa, chi.clone(), word.clone(), label.clone());
                if seen.insert(key) {
                    out.push(Line {
                        family: row.family,
                        rank,
                        kappa: inst.kappa,
                        chi,
                        word,
                        label,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Regenerate a table as `tsv`, `json` or `tex`; output is byte-stable.
pub fn emit_table(table: TableId, format: &str, n_max: i64) -> Result<String, TableError> {
    let lines = emit_lines(table, n_max)?;
    match format {
        "tsv" => {
            let mut s = String::from("type\trank\tkappa\tchi\tword\tlabel\n");
            for l in lines {
                s.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    l.family, l.rank, l.kappa, l.chi, l.word, l.label
                ));
            }
            Ok(s)
        }
        "json" => {
            let rows: Vec<serde_json::Value> = lines
                .iter()
                .map(|l| {
                    json!({
                        "type": l.family.to_string(),
                        "rank": l.rank,
                        "kappa": l.kappa,
                        "chi": l.chi,
                        "word": l.word,
                        "label": l.label,
                    })
                })
                .collect();
            Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&json!({
                    "table": table.to_string(),
                    "rows": rows,
                }))
                .expect("json")
            ))
        }
        "tex" => {
            let mut s = String::from(
                "\\begin{tabular}{llllll}\ntype & rank & kappa & chi & word & label \\\\\n",
            );
            for l in lines {
                s.push_str(&format!(
                    "{} & {} & {} & {} & {} & {} \\\\\n",
                    l.family, l.rank, l.kappa, l.chi, l.word, l.label
                ));
            }
            s.push_str("\\end{tabular}\n");
            Ok(s)
        }
        other => Err(TableError::BadFormat(other.to_string())),
    }
}
