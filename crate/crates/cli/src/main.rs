use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gamma_omega::abelian::{invariant_factors, parse_matrix, smith_normal_form, AbMap, FgAbelianGroup, IntMatrix};
use gamma_omega::functors::{functor_apply, gamma2_oracle, FunctorError, FunctorName};
use gamma_omega::homology::{assemble_homology, cyclic_homology, lhs_e2_split, Assembly, CyclicModule, E2Page};
use gamma_omega::milnor::{braid_closure, mu_bar, vanish_up_to, BraidWord, LinkData};
use gamma_omega::nilpotent::{
    build_tower_with, lemma22_decompose, normal_generation_check, FpPresentation, NilpotentError, NqLimits, Tower,
};
use gamma_omega::selftest::selftest;
use gamma_omega::whitehead::{pi3_sequence, pipeline_report, WhiteheadInput};
use gamma_omega::words::{hall_basis, lcs_weight, magnus_expand, parse_word_over};

#[derive(Parser)]
#[command(name = "gamma-omega", version, about = "Exact computations with abelian groups, nilpotent quotients and link invariants")]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Class cap for nilpotent quotients (default: GAMMA_OMEGA_MAX_CLASS or 12).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_class: Option<u64>,
    /// Cap on the collected length of a relator during the quotient algorithm.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_length: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form of an integer matrix.
    Snf {
        /// Matrix as nested rows, e.g. "[[2,4],[6,8]]".
        #[arg(long)]
        matrix: String,
    },
    /// Canonical form of an abelian group.
    Abgroup {
        /// Relation matrix: generators are rows, relations are columns.
        #[arg(long, conflicts_with = "group")]
        relations: Option<String>,
        /// Group as a sum, e.g. "Z/2 + Z/6 + Z".
        #[arg(long)]
        group: Option<String>,
    },
    /// Apply tensor2, ext:k, sym2 or gamma2 to an abelian group.
    Functor {
        #[arg(long)]
        name: String,
        #[arg(long)]
        group: String,
    },
    /// Gamma2 of a finite group by brute force over its elements.
    #[command(name = "gamma2-oracle")]
    Gamma2Oracle {
        #[arg(long)]
        group: String,
        /// Largest group order accepted.
        #[arg(long, default_value_t = 64)]
        bound: usize,
    },
    /// Basic commutators of the free group.
    Hall {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        class: usize,
    },
    /// Truncated Magnus expansion of a word.
    Magnus {
        #[arg(long)]
        word: String,
        /// Generator letters, e.g. "a,b".
        #[arg(long, default_value = "a,b")]
        gens: String,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Nilpotent quotient of a finitely presented group.
    Nq {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(long)]
        class: usize,
    },
    /// All quotients G/gamma_{c+1} for c = 1..depth.
    Tower {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(long)]
        depth: usize,
    },
    /// Write an element of the commutator subgroup as a product of
    /// commutators with the chosen generators, level by level.
    Lemma22 {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(long)]
        depth: usize,
        /// The element, as a word in the generators.
        #[arg(long)]
        word: String,
        /// Generators to commute with (default: all).
        #[arg(long)]
        xs: Option<String>,
    },
    /// Whether the chosen generators normally generate every level.
    Normgen {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        xs: String,
    },
    /// Homology of a cyclic group with twisted coefficients.
    #[command(name = "cyclic-homology")]
    CyclicHomology {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 6)]
        pmax: usize,
    },
    /// E2 page of a split extension A x| C_m.
    E2 {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 6)]
        pmax: usize,
        #[arg(long, default_value_t = 2)]
        qmax: usize,
    },
    /// Homology of A x| C_m read off its E2 page, or an ambiguity report.
    Assemble {
        /// E2 page as JSON; otherwise the page is built from --m/--group/--action.
        #[arg(long)]
        page: Option<String>,
        #[command(flatten)]
        module: OptModuleArgs,
        #[arg(long, default_value_t = 6)]
        pmax: usize,
        #[arg(long, default_value_t = 2)]
        qmax: usize,
        #[arg(long, default_value_t = 6)]
        imax: usize,
    },
    /// Milnor invariant of a closed braid.
    Milnor {
        #[command(flatten)]
        braid: BraidArgs,
        /// Component labels from 1, e.g. "1,2,3".
        #[arg(long)]
        index: String,
    },
    /// Whether all Milnor invariants of length 2..=q vanish.
    Vanish {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long)]
        q: usize,
    },
    /// Cokernel of the Whitehead map and the resulting sequence for pi_3.
    Whitehead {
        /// WhiteheadInput as JSON (file path or inline document).
        #[arg(long, conflicts_with = "dims")]
        input: Option<String>,
        /// Rational dimensions "h2,h3,h4" with w = 0.
        #[arg(long)]
        dims: Option<String>,
    },
    /// The fixed pipeline report, every step marked CHECKED or ASSUMED.
    #[command(name = "paper-report")]
    PaperReport,
    /// Run the oracle suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct PresArgs {
    /// Generator letters, e.g. "a,b".
    #[arg(long)]
    gens: String,
    /// A relator; repeat for several.
    #[arg(long = "rel")]
    rels: Vec<String>,
}

#[derive(Args)]
struct ModuleArgs {
    /// Order of the cyclic group.
    #[arg(long)]
    m: u64,
    #[arg(long)]
    group: String,
    /// Matrix of the generator's action on the canonical generators
    /// (default: trivial action).
    #[arg(long)]
    action: Option<String>,
}

#[derive(Args)]
struct OptModuleArgs {
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    action: Option<String>,
}

#[derive(Args)]
struct BraidArgs {
    #[arg(long)]
    strands: Option<usize>,
    /// Braid word "s1 s2^-1 ...", or a JSON {"strands":…, "word":[…]}.
    #[arg(long)]
    braid: String,
}

enum Failure {
    Usage(String),
    Resource(String),
}

impl From<NilpotentError> for Failure {
    fn from(e: NilpotentError) -> Self {
        match e {
            NilpotentError::ResourceCap(_) => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

/// Output of a subcommand: the JSON document and its text rendering.
struct Output {
    json: Value,
    text: String,
}

fn out(json: Value, text: impl Into<String>) -> Result<Output, Failure> {
    Ok(Output { json, text: text.into() })
}

fn group(text: &str) -> Result<FgAbelianGroup, Failure> {
    text.parse().map_err(Failure::Usage)
}

fn matrix(text: &str) -> Result<IntMatrix, Failure> {
    parse_matrix(text).map_err(Failure::Usage)
}

fn letters(text: &str) -> Vec<char> {
    text.chars().filter(|c| !c.is_whitespace() && *c != ',').collect()
}

fn limits(cli: &Cli) -> NqLimits {
    let mut l = NqLimits::from_env();
    if let Some(c) = cli.max_class {
        l.max_class = c as usize;
    }
    if let Some(m) = cli.max_length {
        l.max_collected_length = m;
    }
    l
}

fn presentation(p: &PresArgs) -> Result<FpPresentation, Failure> {
    let rels: Vec<&str> = p.rels.iter().map(String::as_str).collect();
    Ok(FpPresentation::parse(&p.gens, &rels)?)
}

fn tower(cli: &Cli, p: &PresArgs, depth: usize) -> Result<(FpPresentation, Tower), Failure> {
    let fp = presentation(p)?;
    let t = build_tower_with(&fp, depth, &limits(cli))?;
    Ok((fp, t))
}

fn generator_indices(fp: &FpPresentation, text: &str) -> Result<Vec<usize>, Failure> {
    letters(text)
        .into_iter()
        .map(|c| {
            fp.generators()
                .iter()
                .position(|&g| g == c)
                .ok_or_else(|| usage(format!("{c:?} is not a generator")))
        })
        .collect()
}

fn module(m: u64, g: &str, action: Option<&str>) -> Result<CyclicModule, Failure> {
    let a = group(g)?;
    let t = match action {
        Some(text) => AbMap::new(a.clone(), a.clone(), matrix(text)?).map_err(usage)?,
        None => AbMap::identity(&a),
    };
    CyclicModule::new(m, t).map_err(usage)
}

fn braid(b: &BraidArgs) -> Result<BraidWord, Failure> {
    let text = b.braid.trim();
    if text.starts_with('{') {
        return serde_json::from_str(text).map_err(usage);
    }
    match b.strands {
        Some(n) => BraidWord::parse(n, text).map_err(usage),
        None => text.parse().map_err(usage),
    }
}

/// Inline JSON, or a path to a file holding it.
fn json_arg(text: &str) -> Result<String, Failure> {
    if text.trim_start().starts_with('{') {
        Ok(text.to_string())
    } else {
        fs::read_to_string(text).map_err(|e| usage(format!("{text}: {e}")))
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Snf { matrix: m } => {
            let m = matrix(m)?;
            let s = smith_normal_form(&m);
            let inv = invariant_factors(&m);
            out(
                json!({ "d": s.d, "u": s.u, "v": s.v, "invariant_factors": inv.iter().map(ToString::to_string).collect::<Vec<_>>() }),
                format!("D =\n{}\ninvariant factors: [{}]", s.d, list(&inv)),
            )
        }
        Command::Abgroup { relations, group: g } => {
            let a = match (relations, g) {
                (Some(r), _) => FgAbelianGroup::from_relations(&matrix(r)?),
                (None, Some(g)) => group(g)?,
                (None, None) => return Err(usage("give --relations or --group")),
            };
            out(to_value(&a), a.to_string())
        }
        Command::Functor { name, group: g } => {
            let f: FunctorName = name.parse().map_err(usage)?;
            let a = group(g)?;
            let r = functor_apply(f, &a);
            out(json!({ "functor": f, "input": a, "result": r }), format!("{f}({a}) = {r}"))
        }
        Command::Gamma2Oracle { group: g, bound } => {
            let a = group(g)?;
            let r = gamma2_oracle(&a, *bound).map_err(|e| match e {
                FunctorError::TooLarge { .. } => Failure::Resource(e.to_string()),
                _ => usage(e),
            })?;
            let formula = functor_apply(FunctorName::Gamma2, &a);
            out(
                json!({ "input": a, "oracle": r, "formula": formula, "agree": r == formula }),
                format!("gamma2({a}) = {r} by enumeration, {formula} by formula"),
            )
        }
        Command::Hall { rank, class } => {
            let basis = hall_basis(*rank, *class);
            let counts: Vec<usize> = basis.iter().map(Vec::len).collect();
            let text = basis
                .iter()
                .enumerate()
                .map(|(k, layer)| format!("weight {} ({}): {}", k + 1, layer.len(), list(layer)))
                .collect::<Vec<_>>()
                .join("\n");
            out(json!({ "counts": counts, "basis": basis }), text)
        }
        Command::Magnus { word, gens, degree } => {
            let names = letters(gens);
            let w = parse_word_over(word, &names).map_err(usage)?;
            let s = magnus_expand(&w, *degree);
            let weight = lcs_weight(&w, *degree);
            out(
                json!({ "word": w.display_with(&names), "series": s, "lcs_weight": weight }),
                format!("{s}\nlower central weight: {weight}"),
            )
        }
        Command::Nq { pres, class } => {
            let (_, t) = tower(cli, pres, *class)?;
            let q = t.levels.last().expect("class ≥ 1");
            let order = q.group.order().map_or_else(|| "infinite".to_string(), |o| o.to_string());
            out(
                json!({ "group": q.group, "generator_images": q.generator_images, "order": order }),
                format!("{}\norder: {order}", q.group),
            )
        }
        Command::Tower { pres, depth } => {
            let (_, t) = tower(cli, pres, *depth)?;
            let levels: Vec<Value> = t
                .levels
                .iter()
                .map(|l| {
                    json!({
                        "class": l.class(),
                        "order": l.group.order().map(|o| o.to_string()),
                        "layer_sizes": l.group.layer_sizes(),
                    })
                })
                .collect();
            let text = t
                .levels
                .iter()
                .map(|l| {
                    let order = l.group.order().map_or_else(|| "infinite".to_string(), |o| o.to_string());
                    format!("class {}: order {order}, layers [{}]", l.class(), list(&l.group.layer_sizes()))
                })
                .collect::<Vec<_>>()
                .join("\n");
            out(json!({ "levels": levels }), text)
        }
        Command::Lemma22 { pres, depth, word, xs } => {
            let (fp, t) = tower(cli, pres, *depth)?;
            let w = fp.parse_word(word)?;
            let xs = match xs {
                Some(x) => generator_indices(&fp, x)?,
                None => (0..fp.ngens()).collect(),
            };
            let a = t.element_from_word(&w);
            let d = lemma22_decompose(&t, &a, &xs)?;
            let verified = d.verify(&t, &a);
            let text = d
                .generators
                .iter()
                .zip(&d.factors)
                .map(|(&x, g)| format!("[g, {}] with g = {:?} at the top level", fp.generators()[x], g.components.last().cloned().unwrap_or_default()))
                .collect::<Vec<_>>()
                .join("\n");
            out(
                json!({ "decomposition": d, "verified": verified }),
                format!("{text}\nverified at every level: {verified}"),
            )
        }
        Command::Normgen { pres, depth, xs } => {
            let (fp, t) = tower(cli, pres, *depth)?;
            let xs = generator_indices(&fp, xs)?;
            let checks = normal_generation_check(&t, &xs)?;
            let text = checks
                .iter()
                .map(|c| format!("class {}: {}", c.level, c.normally_generated))
                .collect::<Vec<_>>()
                .join("\n");
            out(to_value(&checks), text)
        }
        Command::CyclicHomology { module: m, pmax } => {
            let md = module(m.m, &m.group, m.action.as_deref())?;
            let h = cyclic_homology(&md, *pmax);
            let text = h.iter().enumerate().map(|(p, g)| format!("H_{p} = {g}")).collect::<Vec<_>>().join("\n");
            out(to_value(&h), text)
        }
        Command::E2 { module: m, pmax, qmax } => {
            let md = module(m.m, &m.group, m.action.as_deref())?;
            let page = lhs_e2_split(md.underlying(), md.action(), md.m(), *pmax, *qmax).map_err(usage)?;
            out(to_value(&page), page.to_string())
        }
        Command::Assemble { page, module: m, pmax, qmax, imax } => {
            let page: E2Page = match (page, &m.m, &m.group) {
                (Some(p), _, _) => serde_json::from_str(&json_arg(p)?).map_err(usage)?,
                (None, Some(mm), Some(g)) => {
                    let md = module(*mm, g, m.action.as_deref())?;
                    lhs_e2_split(md.underlying(), md.action(), md.m(), *pmax, *qmax).map_err(usage)?
                }
                _ => return Err(usage("give --page, or --m and --group")),
            };
            let a = assemble_homology(&page, *imax);
            let text = match &a {
                Assembly::Determined { homology } => {
                    homology.iter().enumerate().map(|(i, g)| format!("H_{i} = {g}")).collect::<Vec<_>>().join("\n")
                }
                Assembly::Ambiguous(r) => {
                    let mut lines: Vec<String> = r
                        .partial
                        .iter()
                        .enumerate()
                        .map(|(i, g)| match g {
                            Some(g) => format!("H_{i} = {g}"),
                            None => format!("H_{i} = ?"),
                        })
                        .collect();
                    lines.extend(r.unresolved.iter().map(|u| format!("degree {}: {}", u.degree, u.reason)));
                    lines.join("\n")
                }
            };
            out(to_value(&a), text)
        }
        Command::Milnor { braid: b, index } => {
            let link = braid_closure(&braid(b)?);
            let index: Vec<usize> = index
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| usage(format!("bad index entry {s:?}"))))
                .collect::<Result<_, _>>()?;
            let mu = mu_bar(&link, &index).map_err(usage)?;
            out(json!({ "link": link_json(&link), "mu": mu }), mu.to_string())
        }
        Command::Vanish { braid: b, q } => {
            let link = braid_closure(&braid(b)?);
            let v = vanish_up_to(&link, *q).map_err(usage)?;
            let text = v
                .iter()
                .map(|l| match &l.witness {
                    None => format!("length {}: all vanish", l.length),
                    Some(w) => format!("length {}: {w}", l.length),
                })
                .collect::<Vec<_>>()
                .join("\n");
            out(to_value(&v), text)
        }
        Command::Whitehead { input, dims } => {
            let input: WhiteheadInput = match (input, dims) {
                (Some(i), _) => serde_json::from_str(&json_arg(i)?).map_err(usage)?,
                (None, Some(d)) => {
                    let v: Vec<u64> = d
                        .split(',')
                        .map(|s| s.trim().parse().map_err(|_| usage(format!("bad dimension {s:?}"))))
                        .collect::<Result<_, _>>()?;
                    let [h2, h3, h4] = v[..] else {
                        return Err(usage("--dims needs three numbers h2,h3,h4"));
                    };
                    WhiteheadInput::rational_zero(h2, h3, h4)
                }
                (None, None) => return Err(usage("give --input or --dims")),
            };
            let r = pi3_sequence(&input).map_err(usage)?;
            out(to_value(&r), r.to_string())
        }
        Command::PaperReport => {
            let r = pipeline_report();
            out(to_value(&r), r.to_string().trim_end().to_string())
        }
        Command::Selftest { seed } => {
            let r = selftest(*seed);
            if !r.all_passed() {
                print_output(cli.json, &Output { json: to_value(&r), text: r.to_string() });
                return Err(Failure::Resource("some suites failed".into()));
            }
            out(to_value(&r), r.to_string().trim_end().to_string())
        }
    }
}

fn link_json(link: &LinkData) -> Value {
    json!({
        "components": link.components,
        "meridians": link.meridians,
        "longitudes": link.longitudes,
        "framing_corrections": link.framing_corrections,
    })
}

fn print_output(json: bool, o: &Output) {
    let body = if json {
        serde_json::to_string_pretty(&o.json).expect("valid JSON")
    } else {
        o.text.clone()
    };
    // A closed pipe downstream is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{body}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            print_output(cli.json, &o);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
