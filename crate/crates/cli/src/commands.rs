use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cocyclic_core::character::{
    build_char3_table, char3_onedim, char3_via_transgression, induce_character, is_n_class_function,
};
use cocyclic_core::cochain::{cyclic_3cocycle, random_coboundary, random_cochain};
use cocyclic_core::cohomology::{brute_force_counts, cohomology_order, DEFAULT_ENUMERATION_CAP, DEFAULT_MATRIX_CAP};
use cocyclic_core::induced::{
    block_structure, induced_rho, inertia_skeleton, trace_multiplicity_report, two_way_consistency, verify_wreath_hom,
    Transversal,
};
use cocyclic_core::io::{
    read_character, read_cochain, resolve_group, CharacterFile, CochainFile, GroupFile, GroupRef, MonomialFile,
    TransgressionSidecar,
};
use cocyclic_core::transgression::{
    compare_transgressions, proof_trace, transgress_gamma, transgress_willerton, verify_2cocycle, verify_corpus,
    TransgressedCocycle,
};
use cocyclic_core::{
    CharacterTable, Cochain, Error, FiniteGroup, Result, Subgroup, ThreeCocycle, TransgressionKind, Verdict,
};

#[derive(Parser, Debug)]
#[command(
    name = "cocyclic",
    version,
    about = "Exact finite-group 3-cocycles, transgression and induced characters"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// The only source of randomness.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group structure.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Cochain construction and checks.
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// `H^n(G, ℤ/m)` by Smith normal form or by enumeration.
    #[command(subcommand)]
    Cohomology(CohomologyCmd),
    /// Transgress a 3-cocycle to a 2-cochain on `C_G(f)`.
    Transgress(TransgressArgs),
    /// Replay the 2-cocycle proof for `Γ` step by step.
    ProofTrace(ProofTraceArgs),
    /// One value of the 1-dimensional 3-character, by both formulas.
    Char3(Char3Args),
    /// Character tables.
    #[command(subcommand)]
    Char(CharCmd),
    /// Invariance under simultaneous conjugation.
    #[command(subcommand)]
    ClassFunction(ClassFunctionCmd),
    /// Induction from a subgroup.
    #[command(subcommand)]
    Induce(InduceCmd),
    /// Conjugacy class representatives with centralizers.
    Inertia(InertiaArgs),
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    Info(GroupArg),
}

#[derive(Args, Debug)]
struct GroupArg {
    /// Group file or builtin name.
    #[arg(long)]
    group: String,
}

#[derive(Args, Debug)]
struct SubgroupArgs {
    /// Subgroup elements, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "subgroup_gens")]
    subgroup: Option<Vec<usize>>,
    /// Subgroup generators, comma separated.
    #[arg(long, value_delimiter = ',')]
    subgroup_gens: Option<Vec<usize>>,
}

impl SubgroupArgs {
    fn resolve(&self, group: &FiniteGroup) -> Result<Option<Subgroup>> {
        match (&self.subgroup, &self.subgroup_gens) {
            (Some(elements), _) => group.subgroup(elements).map(Some),
            (None, Some(gens)) => group.generated_subgroup(gens).map(Some),
            (None, None) => Ok(None),
        }
    }

    fn require(&self, group: &FiniteGroup) -> Result<Subgroup> {
        self.resolve(group)?
            .ok_or_else(|| Error::Parse("--subgroup or --subgroup-gens is required".into()))
    }
}

#[derive(Subcommand, Debug)]
enum CocycleCmd {
    /// Cocycle condition for a cochain of arity 1, 2 or 3.
    Check {
        #[arg(long)]
        cochain: PathBuf,
    },
    /// The generator `a·g₃·⌊(g₂+g₁)/n⌋/n` on ℤ/n.
    Cyclic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: i64,
    },
    /// A seeded random ℤ/m-valued cochain, or coboundary with `--coboundary`.
    Random {
        #[arg(long)]
        group: String,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        coboundary: bool,
    },
    /// Pull a cochain back along a homomorphism from `--group`.
    Pullback {
        #[arg(long)]
        cochain: PathBuf,
        #[arg(long)]
        group: String,
        /// Image of every element of `--group`, comma separated.
        #[arg(long, value_delimiter = ',')]
        map: Vec<usize>,
    },
}

#[derive(Args, Debug)]
struct CohomologyArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    degree: usize,
    #[arg(long)]
    modulus: u64,
    #[arg(long)]
    cap: Option<u128>,
}

#[derive(Subcommand, Debug)]
enum CohomologyCmd {
    Order(CohomologyArgs),
    Brute(CohomologyArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Gamma,
    Willerton,
}

impl From<Kind> for TransgressionKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Gamma => TransgressionKind::Gamma,
            Kind::Willerton => TransgressionKind::Willerton,
        }
    }
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct TransgressArgs {
    #[command(subcommand)]
    verify: Option<TransgressCmd>,
    #[arg(long)]
    cochain: Option<PathBuf>,
    #[arg(long)]
    f: Option<usize>,
    #[arg(long, value_enum, default_value_t = Kind::Gamma)]
    kind: Kind,
}

#[derive(Subcommand, Debug)]
enum TransgressCmd {
    /// 2-cocycle check of the transgression, for one cocycle or the builtin corpus.
    Verify {
        #[arg(long)]
        cochain: Option<PathBuf>,
        #[arg(long)]
        f: Option<usize>,
        #[arg(long, value_enum, default_value_t = Kind::Gamma)]
        kind: Kind,
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        /// Seeded coboundaries per group, added to the cyclic pullbacks.
        #[arg(long, default_value_t = 10)]
        coboundaries: u64,
    },
    /// Pointwise comparison of the two transgressions; a report only.
    Compare {
        #[arg(long)]
        cochain: PathBuf,
        #[arg(long)]
        f: usize,
    },
    /// Adds seeded coboundaries to the cocycle and reports whether the
    /// transgression and the character table move. Nothing is asserted.
    Invariance {
        #[arg(long)]
        cochain: PathBuf,
        /// Without `--f` every element is used as base.
        #[arg(long)]
        f: Option<usize>,
        #[arg(long, default_value_t = 3)]
        coboundaries: u64,
        #[arg(long, default_value_t = 12)]
        modulus: u64,
    },
}

#[derive(Args, Debug)]
struct ProofTraceArgs {
    #[arg(long)]
    cochain: PathBuf,
    #[arg(long)]
    f: usize,
    /// Without `--k`, `--h` and `--g` every triple in `C_G(f)` is replayed.
    #[arg(long, requires_all = ["h", "g"])]
    k: Option<usize>,
    #[arg(long, requires_all = ["k", "g"])]
    h: Option<usize>,
    #[arg(long, requires_all = ["k", "h"])]
    g: Option<usize>,
}

#[derive(Args, Debug)]
struct Char3Args {
    #[arg(long)]
    cochain: PathBuf,
    #[arg(long)]
    f: usize,
    #[arg(long)]
    g: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Subcommand, Debug)]
enum CharCmd {
    /// The 3-character table of a 3-cocycle.
    Table {
        #[arg(long)]
        cochain: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum ClassFunctionCmd {
    /// Check a character file on `--group`, or the 3-character table of `--cochain`.
    Check {
        #[arg(long, requires = "character", conflicts_with = "cochain")]
        group: Option<String>,
        #[arg(long)]
        character: Option<PathBuf>,
        #[arg(long)]
        cochain: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum InduceCmd {
    /// Induce a character file whose tuples are elements of the subgroup.
    Char {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        subgroup: SubgroupArgs,
        #[arg(long)]
        character: PathBuf,
    },
    /// The monomial matrix of `f` acting on a transversal.
    Rho {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        subgroup: SubgroupArgs,
        #[arg(long)]
        f: usize,
        /// Coset representatives, comma separated; minimal ones by default.
        #[arg(long, value_delimiter = ',')]
        reps: Option<Vec<usize>>,
    },
    /// Wreath homomorphism, block structure, transversal lemma and two-way
    /// consistency for one subgroup or all of them.
    Verify {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        subgroup: SubgroupArgs,
    },
}

#[derive(Args, Debug)]
struct InertiaArgs {
    #[arg(long)]
    group: String,
    /// With `--f`, also report trace multiplicities over this subgroup.
    #[command(flatten)]
    subgroup: SubgroupArgs,
    #[arg(long)]
    f: Option<usize>,
}

pub enum Outcome {
    Clean,
    Violations,
}

impl Outcome {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Outcome::Clean
        } else {
            Outcome::Violations
        }
    }
}

fn emit(value: &Value, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_value<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn count(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn three_cocycle(path: &Path) -> Result<ThreeCocycle> {
    ThreeCocycle::new(read_cochain(path)?)
}

fn transgress(c: &ThreeCocycle, f: usize, kind: TransgressionKind) -> Result<TransgressedCocycle> {
    match kind {
        TransgressionKind::Gamma => transgress_gamma(c, f),
        TransgressionKind::Willerton => transgress_willerton(c, f),
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let out = cli.out.as_deref();
    let seed = cli.seed;
    match cli.command {
        Command::Group(GroupCmd::Info(arg)) => {
            let g = resolve_group(&arg.group)?;
            let classes = g.conjugacy_classes();
            let centralizer_orders: Vec<usize> = classes.iter().map(|c| g.centralizer(c[0]).order()).collect();
            let subgroup_orders: Vec<usize> = g.subgroups().iter().map(Subgroup::order).collect();
            emit(
                &json!({
                    "order": g.order(),
                    "abelian": g.is_abelian(),
                    "exponent": g.exponent(),
                    "element_orders": g.elements().map(|x| g.element_order(x)).collect::<Vec<_>>(),
                    "conjugacy_classes": classes,
                    "centralizer_orders": centralizer_orders,
                    "subgroup_orders": subgroup_orders,
                }),
                out,
            )?;
            Ok(Outcome::Clean)
        }
        Command::Cocycle(cmd) => run_cocycle(cmd, out, seed),
        Command::Cohomology(cmd) => {
            let (args, brute) = match cmd {
                CohomologyCmd::Order(a) => (a, false),
                CohomologyCmd::Brute(a) => (a, true),
            };
            let g = resolve_group(&args.group)?;
            let report = if brute {
                let counts = brute_force_counts(
                    &g,
                    args.degree,
                    args.modulus,
                    args.cap.unwrap_or(DEFAULT_ENUMERATION_CAP),
                )?;
                json!({
                    "cocycles": count(counts.cocycles),
                    "coboundaries": count(counts.coboundaries),
                    "ratio": count(counts.ratio()),
                })
            } else {
                let cap = args
                    .cap
                    .map_or(DEFAULT_MATRIX_CAP, |c| usize::try_from(c).unwrap_or(usize::MAX));
                let order = cohomology_order(&g, args.degree, args.modulus, cap)?;
                json!({"degree": args.degree, "modulus": args.modulus, "order": count(order)})
            };
            emit(&report, out)?;
            Ok(Outcome::Clean)
        }
        Command::Transgress(args) => run_transgress(args, out, seed),
        Command::ProofTrace(args) => {
            let c = three_cocycle(&args.cochain)?;
            let triples = match (args.k, args.h, args.g) {
                (Some(k), Some(h), Some(g)) => vec![[k, h, g]],
                _ => {
                    let cg = c.group().centralizer(args.f);
                    let els = cg.elements();
                    els.iter()
                        .flat_map(|&k| els.iter().flat_map(move |&h| els.iter().map(move |&g| [k, h, g])))
                        .collect()
                }
            };
            let mut failures = Vec::new();
            let mut traces = Vec::new();
            for [k, h, g] in &triples {
                let steps = proof_trace(&c, args.f, *k, *h, *g)?;
                if steps.iter().any(|s| !s.equal) {
                    failures.push(vec![*k, *h, *g]);
                }
                if triples.len() == 1 {
                    traces.push(to_value(&steps));
                }
            }
            let mut report = json!({
                "f": args.f,
                "triples": triples.len(),
                "all_equal": failures.is_empty(),
                "failures": failures,
            });
            if let Some(steps) = traces.pop() {
                report["steps"] = steps;
            }
            emit(&report, out)?;
            Ok(Outcome::from_ok(failures.is_empty()))
        }
        Command::Char3(args) => {
            let c = three_cocycle(&args.cochain)?;
            let closed = char3_onedim(&c, args.f, args.g, args.k)?;
            let via = char3_via_transgression(&c, args.f, args.g, args.k)?;
            emit(
                &json!({
                    "tuple": [args.f, args.g, args.k],
                    "closed_form": closed.to_string(),
                    "via_transgression": via.to_string(),
                    "equal": closed == via,
                }),
                out,
            )?;
            Ok(Outcome::from_ok(closed == via))
        }
        Command::Char(CharCmd::Table { cochain }) => {
            let table = build_char3_table(&three_cocycle(&cochain)?)?;
            emit(&to_value(&CharacterFile::from_table(&table)), out)?;
            Ok(Outcome::Clean)
        }
        Command::ClassFunction(ClassFunctionCmd::Check {
            group,
            character,
            cochain,
        }) => {
            let table = match (group, character, cochain) {
                (_, _, Some(path)) => build_char3_table(&three_cocycle(&path)?)?,
                (Some(group), Some(path), None) => read_character(&path, &resolve_group(&group)?)?,
                _ => return Err(Error::Parse("give --cochain, or --group with --character".into())),
            };
            let verdict = is_n_class_function(&table);
            let mut report = json!({"arity": table.arity(), "class_function": verdict.holds()});
            if let Some(w) = verdict.witness() {
                report["witness"] = json!(w);
            }
            emit(&report, out)?;
            Ok(Outcome::from_ok(verdict.holds()))
        }
        Command::Induce(cmd) => run_induce(cmd, out),
        Command::Inertia(args) => {
            let g = resolve_group(&args.group)?;
            let objects: Vec<Value> = inertia_skeleton(&g)
                .objects
                .iter()
                .map(|(rep, c)| {
                    json!({
                        "representative": rep,
                        "class_size": g.conjugacy_class_of(*rep).len(),
                        "centralizer": c.elements(),
                    })
                })
                .collect();
            let mut report = json!({"objects": objects});
            if let (Some(h), Some(f)) = (args.subgroup.resolve(&g)?, args.f) {
                report["multiplicities"] = to_value(&trace_multiplicity_report(&h, f)?);
            }
            emit(&report, out)?;
            Ok(Outcome::Clean)
        }
    }
}

fn run_cocycle(cmd: CocycleCmd, out: Option<&Path>, seed: u64) -> Result<Outcome> {
    match cmd {
        CocycleCmd::Check { cochain } => {
            let c = read_cochain(&cochain)?;
            let verdict = c.is_cocycle()?;
            let mut report = json!({
                "arity": c.arity(),
                "cocycle": verdict.holds(),
                "normalized": c.is_normalized(),
            });
            if let Some(w) = verdict.witness() {
                report["witness"] = json!(w);
            }
            emit(&report, out)?;
            Ok(Outcome::from_ok(verdict.holds()))
        }
        CocycleCmd::Cyclic { n, a } => {
            if n == 0 {
                return Err(Error::Parse("--n must be positive".into()));
            }
            let c = cyclic_3cocycle(n, a);
            let group = if cocyclic_core::library::builtin(&format!("Z{n}")).is_some() {
                GroupRef::Name(format!("Z{n}"))
            } else {
                GroupRef::Inline(GroupFile::from_group(c.group()))
            };
            emit(&to_value(&CochainFile::from_cochain(&c, group)), out)?;
            Ok(Outcome::Clean)
        }
        CocycleCmd::Random {
            group,
            arity,
            modulus,
            coboundary,
        } => {
            if modulus == 0 {
                return Err(Error::Parse("--modulus must be positive".into()));
            }
            let g = resolve_group(&group)?;
            let c = if coboundary {
                random_coboundary(&g, arity, modulus, seed)?
            } else {
                random_cochain(&g, arity, modulus, seed)?
            };
            emit(&to_value(&CochainFile::from_cochain(&c, GroupRef::Name(group))), out)?;
            Ok(Outcome::Clean)
        }
        CocycleCmd::Pullback { cochain, group, map } => {
            let c = read_cochain(&cochain)?;
            let source = resolve_group(&group)?;
            let pulled = c.pullback(&source, &map)?;
            emit(
                &to_value(&CochainFile::from_cochain(&pulled, GroupRef::Name(group))),
                out,
            )?;
            Ok(Outcome::Clean)
        }
    }
}

fn run_transgress(args: TransgressArgs, out: Option<&Path>, seed: u64) -> Result<Outcome> {
    match args.verify {
        Some(TransgressCmd::Compare { cochain, f }) => {
            emit(&to_value(&compare_transgressions(&three_cocycle(&cochain)?, f)?), out)?;
            return Ok(Outcome::Clean);
        }
        Some(TransgressCmd::Invariance {
            cochain,
            f,
            coboundaries,
            modulus,
        }) => {
            emit(
                &invariance_experiment(&three_cocycle(&cochain)?, f, coboundaries, modulus, seed)?,
                out,
            )?;
            return Ok(Outcome::Clean);
        }
        Some(TransgressCmd::Verify {
            cochain,
            f,
            kind,
            max_order,
            coboundaries,
        }) => {
            let kind = TransgressionKind::from(kind);
            let report = match cochain {
                None => to_value(&verify_corpus(max_order, coboundaries, seed, kind)?),
                Some(path) => {
                    let c = three_cocycle(&path)?;
                    let bases: Vec<usize> = match f {
                        Some(f) => vec![f],
                        None => c.group().elements().collect(),
                    };
                    let mut failures = Vec::new();
                    for &f in &bases {
                        if let Verdict::Fails(witness) = verify_2cocycle(&transgress(&c, f, kind)?)? {
                            failures.push(json!({"f": f, "witness": witness}));
                        }
                    }
                    json!({
                        "kind": to_value(&kind),
                        "checked": bases.len(),
                        "violations": failures.len(),
                        "failures": failures,
                    })
                }
            };
            let clean = report["violations"] == json!(0);
            emit(&report, out)?;
            return Ok(Outcome::from_ok(clean));
        }
        None => {}
    }

    let (Some(path), Some(f)) = (args.cochain, args.f) else {
        return Err(Error::Parse("transgress needs --cochain and --f".into()));
    };
    let t = transgress(&three_cocycle(&path)?, f, args.kind.into())?;
    let file = CochainFile::from_cochain(
        t.table(),
        GroupRef::Inline(GroupFile::from_group(t.centralizer().as_group())),
    );
    let sidecar = TransgressionSidecar::from_transgression(&t);
    match out {
        Some(path) => {
            let sidecar_path = sidecar_path(path);
            emit(&to_value(&file), Some(path))?;
            emit(&to_value(&sidecar), Some(&sidecar_path))?;
            emit(&json!({"cochain": path, "sidecar": sidecar_path}), None)?;
        }
        None => emit(
            &json!({"cochain": to_value(&file), "sidecar": to_value(&sidecar)}),
            None,
        )?,
    }
    Ok(Outcome::Clean)
}

/// For each seed, `c + δb` with `b` a random 2-cochain: does `Γ` change
/// pointwise at each base, and does the arity-3 character table change.
fn invariance_experiment(c: &ThreeCocycle, f: Option<usize>, count: u64, modulus: u64, seed: u64) -> Result<Value> {
    let g = c.group();
    let bases: Vec<usize> = match f {
        Some(f) => vec![f],
        None => g.elements().collect(),
    };
    let table = build_char3_table(c)?;
    let mut trials = Vec::new();
    for i in 0..count {
        let trial_seed = seed.wrapping_add(i);
        let b = random_coboundary(g, 3, modulus, trial_seed)?;
        let values = c
            .cochain()
            .values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| *x + *y)
            .collect();
        let shifted = ThreeCocycle::new(Cochain::from_values(g, 3, values)?)?;
        let mut gamma_moved = Vec::new();
        for &f in &bases {
            if transgress_gamma(c, f)?.table() != transgress_gamma(&shifted, f)?.table() {
                gamma_moved.push(f);
            }
        }
        trials.push(json!({
            "seed": trial_seed,
            "gamma_changed_at": gamma_moved,
            "char3_table_equal": build_char3_table(&shifted)? == table,
        }));
    }
    Ok(json!({"modulus": modulus, "bases": bases, "trials": trials}))
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".sidecar.json");
    path.with_file_name(name)
}

fn run_induce(cmd: InduceCmd, out: Option<&Path>) -> Result<Outcome> {
    match cmd {
        InduceCmd::Char {
            group,
            subgroup,
            character,
        } => {
            let g = resolve_group(&group)?;
            let h = subgroup.require(&g)?;
            let local = local_table(&h, &character)?;
            let induced = induce_character(&g, &h, &local)?;
            emit(&to_value(&CharacterFile::from_table(&induced)), out)?;
            Ok(Outcome::Clean)
        }
        InduceCmd::Rho {
            group,
            subgroup,
            f,
            reps,
        } => {
            let g = resolve_group(&group)?;
            let h = subgroup.require(&g)?;
            let t = match reps {
                Some(reps) => Transversal::new(&h, reps)?,
                None => Transversal::canonical(&h)?,
            };
            let rho = induced_rho(&t, f)?;
            let mut report = to_value(&MonomialFile::from(&rho));
            report["reps"] = json!(t.reps());
            emit(&report, out)?;
            Ok(Outcome::Clean)
        }
        InduceCmd::Verify { group, subgroup } => {
            let g = resolve_group(&group)?;
            let subgroups = match subgroup.resolve(&g)? {
                Some(h) => vec![h],
                None => g.subgroups(),
            };
            let mut checked = 0usize;
            let mut failures = Vec::new();
            let mut record = |h: &Subgroup, check: &str, verdict: Verdict| {
                checked += 1;
                if let Verdict::Fails(w) = verdict {
                    failures.push(json!({"subgroup": h.elements(), "check": check, "witness": w}));
                }
            };
            for h in &subgroups {
                record(h, "wreath-hom", verify_wreath_hom(&Transversal::canonical(h)?)?);
                for f in g.elements() {
                    record(h, "block-structure", block_structure(h, f)?.check());
                    let report = trace_multiplicity_report(h, f)?;
                    let balance = if report.balanced() {
                        Verdict::Holds
                    } else {
                        Verdict::Fails(vec![f])
                    };
                    record(h, "multiplicity-sum", balance);
                    record(h, "transversal-lemma", g.verify_transversal_lemma(h, f)?);
                    for &x in g.centralizer(f).elements() {
                        let verdict = match two_way_consistency(h, f, x) {
                            Err(Error::ClassEscape { rep, element }) => Verdict::Fails(vec![f, rep, element]),
                            other => other?,
                        };
                        record(h, "two-way-consistency", verdict);
                    }
                }
            }
            let clean = failures.is_empty();
            emit(
                &json!({
                    "subgroups": subgroups.len(),
                    "checked": checked,
                    "violations": failures.len(),
                    "failures": failures,
                }),
                out,
            )?;
            Ok(Outcome::from_ok(clean))
        }
    }
}

/// Reads a character file written in parent indices and re-indexes it onto
/// the subgroup's own table.
fn local_table(h: &Subgroup, path: &Path) -> Result<CharacterTable> {
    let mut file: CharacterFile = {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
    };
    for entry in &mut file.entries {
        for x in &mut entry.tuple {
            *x = h.local_index(*x).ok_or(Error::NotASubgroup { element: *x })?;
        }
    }
    file.build(h.as_group())
}
