//! Command-line entry point. Exit codes: 0 ok, 1 a requested check failed,
//! 2 unusable input.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::affine_weyl::{
    bruhat_leq, elements_up_to, format_word, from_word, identity, is_left_spherical, is_rigid,
    is_right_spherical, multiply, parse_word, simple, WeylElement,
};
use crate::fusion::{format_irrep, parse_group, parse_irrep, tensor, tensor_json};
use crate::kl::{format_poly, is_fully_commutative, mu_graph, KlContext};
use crate::orbits::{
    closure_leq, collapse, ls_dual, parse_partition, sigma_partition, weighted_dynkin,
};
use crate::rootdata::{build, parse_type, RootDatum};
use crate::tables::{
    all_pass, emit_table, find_row, fuse_modules, verify_level_ranges, verify_row,
    verify_singleton_sing, verify_table, Report, TableId,
};
use crate::weights::{
    dot_action, format_weight, min_dominant_v, parse_weight, AffineWeight,
};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Parser)]
#[command(name = "weyl-cells", version, disable_help_subcommand = true)]
#[command(about = "Extended affine Weyl group arithmetic and module table checks")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the root datum of a type.
    Rootdata {
        #[command(subcommand)]
        cmd: RootdataCmd,
    },
    /// Arithmetic in the extended affine Weyl group.
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// Affine weights and the shifted dot action.
    Weight {
        #[command(subcommand)]
        cmd: WeightCmd,
    },
    /// Kazhdan-Lusztig polynomials, mu coefficients, full commutativity.
    Kl {
        #[command(subcommand)]
        cmd: KlCmd,
    },
    /// Nilpotent orbit partitions.
    Orbit {
        #[command(subcommand)]
        cmd: OrbitCmd,
    },
    /// Tensor product of two irreducible characters of a centralizer group.
    Fuse {
        /// Group label: S3, Q8, D8, Klein, Z4, O2, Gm, SL2, SL3, ...
        #[arg(long)]
        group: String,
        x: String,
        y: String,
    },
    /// Fuse two modules of a catalogue row through their characters.
    FuseRow {
        #[arg(long, value_parser = parse_table_id)]
        table: TableId,
        /// Row tag inside the table, e.g. G2, B4, Ceven.
        #[arg(long)]
        row: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        x: String,
        y: String,
    },
    /// Verify or emit the module catalogue.
    Table {
        #[command(subcommand)]
        cmd: TableCmd,
    },
}

#[derive(Subcommand)]
enum RootdataCmd {
    Show {
        #[arg(long = "type")]
        ty: String,
    },
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Multiply words left to right and print the canonical form.
    Mult {
        #[arg(long = "type")]
        ty: String,
        #[arg(required = true, num_args = 2..)]
        words: Vec<String>,
    },
    /// Length of an element.
    Len {
        #[arg(long = "type")]
        ty: String,
        word: String,
    },
    /// Left and right descent sets.
    Descents {
        #[arg(long = "type")]
        ty: String,
        word: String,
    },
    /// Bruhat order test x <= y.
    Leq {
        #[arg(long = "type")]
        ty: String,
        x: String,
        y: String,
    },
    /// Enumerate rigid elements up to a length bound.
    Rigid {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value_t = 9)]
        max_len: i64,
        /// Keep only left and right spherical elements.
        #[arg(long)]
        spherical: bool,
    },
}

#[derive(Subcommand)]
enum WeightCmd {
    /// Shifted action of a word on a weight literal.
    Dot {
        #[arg(long = "type")]
        ty: String,
        word: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Chase a weight to its rho-dominant representative.
    Dominant {
        #[arg(long = "type")]
        ty: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Singular simple reflections of a weight.
    Sing {
        #[arg(long = "type")]
        ty: String,
        #[arg(allow_hyphen_values = true)]
        weight: String,
    },
    /// Minimal v with v . (k Lambda_0) dominant, and that dominant weight.
    Minv {
        #[arg(long = "type")]
        ty: String,
        #[arg(allow_hyphen_values = true)]
        kappa: i64,
    },
}

#[derive(Subcommand)]
enum KlCmd {
    /// Kazhdan-Lusztig polynomial P_{x,y}.
    Poly {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        max_len: Option<i64>,
        x: String,
        y: String,
    },
    /// Coefficient mu(x, y).
    Mu {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        max_len: Option<i64>,
        x: String,
        y: String,
    },
    /// All edges (x, y, mu) up to a length bound.
    MuGraph {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value_t = 6)]
        max_len: i64,
    },
    /// Stembridge full commutativity test.
    Fc {
        #[arg(long = "type")]
        ty: String,
        word: String,
    },
}

#[derive(Subcommand)]
enum OrbitCmd {
    /// Lusztig-Spaltenstein dual of a partition.
    Dual {
        partition: String,
    },
    /// Closure order test p <= q.
    Closure {
        p: String,
        q: String,
    },
    /// Weighted Dynkin diagram.
    Dynkin {
        partition: String,
    },
    /// Collapse to the nearest valid partition below.
    Collapse {
        partition: String,
    },
    /// The partition attached to sigma for a type and level.
    Sigma {
        #[arg(long = "type")]
        ty: String,
        #[arg(allow_hyphen_values = true)]
        kappa: i64,
    },
}

#[derive(Subcommand)]
enum TableCmd {
    /// Re-derive every cell of a table and check it.
    Verify {
        /// sous-reguliers, sous-sous, rang2, laws, or all.
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 3)]
        nmax: i64,
        /// Restrict to one row tag.
        #[arg(long)]
        row: Option<String>,
        /// Restrict to one rank (only with --row).
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Print the rows of a table.
    Emit {
        #[arg(long, value_parser = parse_table_id)]
        id: TableId,
        #[arg(long, default_value_t = 2)]
        nmax: i64,
        /// tsv, json, or tex; defaults to the global format.
        #[arg(long)]
        style: Option<String>,
    },
}

fn parse_table_id(s: &str) -> Result<TableId, String> {
    TableId::parse(s).map_err(|e| e.to_string())
}

fn datum(ty: &str) -> Result<Arc<RootDatum>, String> {
    let (family, rank) = parse_type(ty).map_err(|e| e.to_string())?;
    Ok(Arc::new(build(family, rank).map_err(|e| e.to_string())?))
}

fn element(rd: &Arc<RootDatum>, s: &str) -> Result<WeylElement, String> {
    let word = parse_word(s).map_err(|e| e.to_string())?;
    from_word(rd, &word).map_err(|e| e.to_string())
}

fn canonical(w: &WeylElement) -> String {
    format_word(&w.canonical_word())
}

/// Repeatedly applies singular-negative reflections until rho-dominant;
/// returns the chasing element u and the dominant weight u . wt.
fn chase_dominant(
    rd: &Arc<RootDatum>,
    wt: &AffineWeight,
) -> Result<(WeylElement, AffineWeight), String> {
    let mut u = identity(rd);
    let mut cur = wt.clone();
    'outer: loop {
        for i in 0..=rd.rank {
            if cur.pairing(i) < -1 {
                let s = simple(rd, i).map_err(|e| e.to_string())?;
                cur = dot_action(&s, &cur).map_err(|e| e.to_string())?;
                u = multiply(&s, &u).map_err(|e| e.to_string())?;
                continue 'outer;
            }
        }
        return Ok((u, cur));
    }
}

fn nodes(set: &[usize]) -> String {
    set.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// One pass/fail line per failed check plus a summary; exit 1 on any failure.
fn print_reports(reports: &[Report], format: Format) -> ExitCode {
    match format {
        Format::Json => {
            let vals: Vec<_> = reports.iter().map(|r| r.to_json()).collect();
            println!("{}", serde_json::to_string_pretty(&json!(vals)).unwrap());
        }
        Format::Tsv => {
            println!("row\tcheck\tstatus\tcomputed\texpected");
            for r in reports {
                println!(
                    "{}\t{}\t{}\t{}\t{}",
                    r.row,
                    r.check,
                    if r.status { "pass" } else { "fail" },
                    r.computed,
                    r.expected
                );
            }
        }
        Format::Text => {
            for r in reports.iter().filter(|r| !r.status) {
                println!(
                    "FAIL {} [{}]\n  computed: {}\n  expected: {}",
                    r.row, r.check, r.computed, r.expected
                );
            }
            let failed = reports.iter().filter(|r| !r.status).count();
            println!("{} checks, {} failed", reports.len(), failed);
        }
    }
    if all_pass(reports) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn predicate(name: &str, value: bool, format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", json!({ name: value })),
        _ => println!("{value}"),
    }
    if value {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

pub fn run<I: IntoIterator<Item = String>>(args: I) -> ExitCode {
    let argv = std::iter::once("weyl-cells".to_string()).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(if code == 0 { 0 } else { 2 });
        }
    };
    match dispatch(cli.command, cli.format) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Cmd, format: Format) -> Result<ExitCode, String> {
    Ok(match cmd {
        Cmd::Rootdata {
            cmd: RootdataCmd::Show { ty },
        } => {
            let rd = datum(&ty)?;
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&rd.to_json()).unwrap())
                }
                _ => {
                    println!("type: {}", rd.type_name());
                    println!("rank: {}", rd.rank);
                    println!("marks: {}", nodes_i64(&rd.marks));
                    println!("comarks: {}", nodes_i64(&rd.comarks));
                    println!("h: {}", rd.h);
                    println!("h_dual: {}", rd.h_dual);
                    println!("d_max_comark: {}", rd.d_max_comark);
                    println!("omega_order: {}", rd.omega_group().order());
                    println!("cartan:");
                    for row in &rd.cartan {
                        println!("  {}", nodes_i64(row));
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Weyl { cmd } => weyl(cmd, format)?,
        Cmd::Weight { cmd } => weight_cmd(cmd, format)?,
        Cmd::Kl { cmd } => kl_cmd(cmd, format)?,
        Cmd::Orbit { cmd } => orbit(cmd, format)?,
        Cmd::Fuse { group, x, y } => {
            let g = parse_group(&group).map_err(|e| e.to_string())?;
            let xi = parse_irrep(&g, &x).map_err(|e| e.to_string())?;
            let yi = parse_irrep(&g, &y).map_err(|e| e.to_string())?;
            let terms = tensor(&g, &xi, &yi).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", tensor_json(&g, &terms)),
                Format::Tsv => {
                    for (ir, m) in &terms {
                        println!("{}\t{}", format_irrep(&g, ir), m);
                    }
                }
                Format::Text => {
                    let parts: Vec<String> = terms
                        .iter()
                        .map(|(ir, m)| format!("{}*{}", m, format_irrep(&g, ir)))
                        .collect();
                    println!("{}", parts.join(" + "));
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::FuseRow {
            table,
            row,
            rank,
            k,
            x,
            y,
        } => {
            let terms = fuse_modules(table, &row, rank, k, &x, &y).map_err(|e| e.to_string())?;
            match format {
                Format::Json => {
                    let vals: Vec<_> = terms
                        .iter()
                        .map(|(wt, m)| json!({"label": format_weight(wt), "mult": m}))
                        .collect();
                    println!("{}", json!(vals));
                }
                Format::Tsv => {
                    for (wt, m) in &terms {
                        println!("{}\t{}", format_weight(wt), m);
                    }
                }
                Format::Text => {
                    for (wt, m) in &terms {
                        println!("{}x{}", m, format_weight(wt));
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Table { cmd } => table_cmd(cmd, format)?,
    })
}

fn nodes_i64(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn weyl(cmd: WeylCmd, format: Format) -> Result<ExitCode, String> {
    Ok(match cmd {
        WeylCmd::Mult { ty, words } => {
            let rd = datum(&ty)?;
            let mut acc = identity(&rd);
            for w in &words {
                acc = multiply(&acc, &element(&rd, w)?).map_err(|e| e.to_string())?;
            }
            match format {
                Format::Json => println!("{}", acc.to_json()),
                _ => println!("{}", canonical(&acc)),
            }
            ExitCode::SUCCESS
        }
        WeylCmd::Len { ty, word } => {
            let rd = datum(&ty)?;
            let w = element(&rd, &word)?;
            match format {
                Format::Json => println!("{}", json!({"length": w.length()})),
                _ => println!("{}", w.length()),
            }
            ExitCode::SUCCESS
        }
        WeylCmd::Descents { ty, word } => {
            let rd = datum(&ty)?;
            let w = element(&rd, &word)?;
            let (l, r) = (w.left_descents(), w.right_descents());
            match format {
                Format::Json => println!("{}", json!({"left": l, "right": r})),
                _ => {
                    println!("left: {}", nodes(&l));
                    println!("right: {}", nodes(&r));
                }
            }
            ExitCode::SUCCESS
        }
        WeylCmd::Leq { ty, x, y } => {
            let rd = datum(&ty)?;
            let xe = element(&rd, &x)?;
            let ye = element(&rd, &y)?;
            let ans = bruhat_leq(&xe, &ye).map_err(|e| e.to_string())?;
            predicate("leq", ans, format)
        }
        WeylCmd::Rigid {
            ty,
            max_len,
            spherical,
        } => {
            let rd = datum(&ty)?;
            let mut found: Vec<WeylElement> = elements_up_to(&rd, max_len)
                .into_iter()
                .filter(is_rigid)
                .filter(|w| !spherical || (is_left_spherical(w) && is_right_spherical(w)))
                .collect();
            found.sort_by_key(|w| (w.length(), canonical(w)));
            match format {
                Format::Json => {
                    let vals: Vec<_> = found
                        .iter()
                        .map(|w| json!({"word": canonical(w), "length": w.length()}))
                        .collect();
                    println!("{}", json!(vals));
                }
                _ => {
                    for w in &found {
                        println!("{}\t{}", canonical(w), w.length());
                    }
                }
            }
            ExitCode::SUCCESS
        }
    })
}

fn weight_cmd(cmd: WeightCmd, format: Format) -> Result<ExitCode, String> {
    Ok(match cmd {
        WeightCmd::Dot { ty, word, weight } => {
            let rd = datum(&ty)?;
            let w = element(&rd, &word)?;
            let wt = parse_weight(&rd, &weight).map_err(|e| e.to_string())?;
            let out = dot_action(&w, &wt).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", out.to_json()),
                _ => println!("{}", format_weight(&out)),
            }
            ExitCode::SUCCESS
        }
        WeightCmd::Dominant { ty, weight } => {
            let rd = datum(&ty)?;
            let wt = parse_weight(&rd, &weight).map_err(|e| e.to_string())?;
            let (u, dom) = chase_dominant(&rd, &wt)?;
            match format {
                Format::Json => println!(
                    "{}",
                    json!({"u": canonical(&u), "weight": format_weight(&dom)})
                ),
                _ => {
                    println!("u: {}", canonical(&u));
                    println!("weight: {}", format_weight(&dom));
                }
            }
            ExitCode::SUCCESS
        }
        WeightCmd::Sing { ty, weight } => {
            let rd = datum(&ty)?;
            let wt = parse_weight(&rd, &weight).map_err(|e| e.to_string())?;
            let sing = wt.sing_set().map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", json!({"sing": sing})),
                _ => println!("{}", nodes(&sing)),
            }
            ExitCode::SUCCESS
        }
        WeightCmd::Minv { ty, kappa } => {
            let rd = datum(&ty)?;
            let (v, kplus) = min_dominant_v(&rd, kappa).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!(
                    "{}",
                    json!({"v": canonical(&v), "kplus": format_weight(&kplus)})
                ),
                _ => {
                    println!("v: {}", canonical(&v));
                    println!("kplus: {}", format_weight(&kplus));
                }
            }
            ExitCode::SUCCESS
        }
    })
}

fn kl_cmd(cmd: KlCmd, format: Format) -> Result<ExitCode, String> {
    Ok(match cmd {
        KlCmd::Poly {
            ty,
            max_len,
            x,
            y,
        } => {
            let rd = datum(&ty)?;
            let mut ctx = match max_len {
                Some(b) => KlContext::with_bound(&rd, b),
                None => KlContext::new(&rd),
            };
            let xe = element(&rd, &x)?;
            let ye = element(&rd, &y)?;
            let p = ctx.kl_poly(&xe, &ye).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", json!({"poly": p, "pretty": format_poly(&p)})),
                _ => println!("{}", format_poly(&p)),
            }
            ExitCode::SUCCESS
        }
        KlCmd::Mu {
            ty,
            max_len,
            x,
            y,
        } => {
            let rd = datum(&ty)?;
            let mut ctx = match max_len {
                Some(b) => KlContext::with_bound(&rd, b),
                None => KlContext::new(&rd),
            };
            let xe = element(&rd, &x)?;
            let ye = element(&rd, &y)?;
            let m = ctx.mu(&xe, &ye).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", json!({"mu": m})),
                _ => println!("{m}"),
            }
            ExitCode::SUCCESS
        }
        KlCmd::MuGraph { ty, max_len } => {
            let rd = datum(&ty)?;
            let mut edges = mu_graph(&rd, max_len).map_err(|e| e.to_string())?;
            edges.sort_by_key(|(x, y, _)| (y.length(), canonical(y), x.length(), canonical(x)));
            match format {
                Format::Json => {
                    let vals: Vec<_> = edges
                        .iter()
                        .map(|(x, y, m)| {
                            json!({"x": canonical(x), "y": canonical(y), "mu": m})
                        })
                        .collect();
                    println!("{}", json!(vals));
                }
                _ => {
                    for (x, y, m) in &edges {
                        println!("{}\t{}\t{}", canonical(x), canonical(y), m);
                    }
                }
            }
            ExitCode::SUCCESS
        }
        KlCmd::Fc { ty, word } => {
            let rd = datum(&ty)?;
            let w = element(&rd, &word)?;
            predicate("fully_commutative", is_fully_commutative(&w), format)
        }
    })
}

fn orbit(cmd: OrbitCmd, format: Format) -> Result<ExitCode, String> {
    Ok(match cmd {
        OrbitCmd::Dual { partition } => {
            let p = parse_partition(&partition).map_err(|e| e.to_string())?;
            let d = ls_dual(&p).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", d.to_json()),
                _ => println!("{d}"),
            }
            ExitCode::SUCCESS
        }
        OrbitCmd::Closure { p, q } => {
            let pp = parse_partition(&p).map_err(|e| e.to_string())?;
            let qq = parse_partition(&q).map_err(|e| e.to_string())?;
            let ans = closure_leq(&pp, &qq).map_err(|e| e.to_string())?;
            predicate("leq", ans, format)
        }
        OrbitCmd::Dynkin { partition } => {
            let p = parse_partition(&partition).map_err(|e| e.to_string())?;
            let d = weighted_dynkin(&p).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", json!({"dynkin": d})),
                _ => println!("{}", nodes_i64(&d)),
            }
            ExitCode::SUCCESS
        }
        OrbitCmd::Collapse { partition } => {
            let p = parse_partition(&partition).map_err(|e| e.to_string())?;
            let c = collapse(&p);
            match format {
                Format::Json => println!("{}", c.to_json()),
                _ => println!("{c}"),
            }
            ExitCode::SUCCESS
        }
        OrbitCmd::Sigma { ty, kappa } => {
            let (family, rank) = parse_type(&ty).map_err(|e| e.to_string())?;
            let p = sigma_partition(family, rank, kappa).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!("{}", p.to_json()),
                _ => println!("{p}"),
            }
            ExitCode::SUCCESS
        }
    })
}

fn table_cmd(cmd: TableCmd, format: Format) -> Result<ExitCode, String> {
    Ok(match cmd {
        TableCmd::Verify {
            id,
            nmax,
            row,
            rank,
        } => {
            let mut reports = Vec::new();
            match id.as_str() {
                "laws" => {
                    reports.extend(verify_level_ranges().map_err(|e| e.to_string())?);
                    reports.extend(verify_singleton_sing().map_err(|e| e.to_string())?);
                }
                "all" => {
                    for t in [TableId::SousReguliers, TableId::SousSous, TableId::Rang2] {
                        reports.extend(verify_table(t, nmax).map_err(|e| e.to_string())?);
                    }
                    reports.extend(verify_level_ranges().map_err(|e| e.to_string())?);
                    reports.extend(verify_singleton_sing().map_err(|e| e.to_string())?);
                }
                other => {
                    let t = parse_table_id(other)?;
                    match row {
                        Some(tag) => {
                            let spec = find_row(t, &tag).map_err(|e| e.to_string())?;
                            let ranks: Vec<usize> = match rank {
                                Some(l) => vec![l],
                                None => spec.ranks.to_vec(),
                            };
                            for l in ranks {
                                reports
                                    .extend(verify_row(spec, l, nmax).map_err(|e| e.to_string())?);
                            }
                        }
                        None => {
                            reports.extend(verify_table(t, nmax).map_err(|e| e.to_string())?)
                        }
                    }
                }
            }
            print_reports(&reports, format)
        }
        TableCmd::Emit { id, nmax, style } => {
            let style = style.unwrap_or_else(|| {
                match format {
                    Format::Json => "json",
                    _ => "tsv",
                }
                .to_string()
            });
            print!("{}", emit_table(id, &style, nmax).map_err(|e| e.to_string())?);
            ExitCode::SUCCESS
        }
    })
}
