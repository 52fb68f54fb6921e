//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//! Every check is exact; wall-clock bounds are pinned below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_integer::gcd;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use cocyclic_core::character::{
    build_char3_table, char2_onedim, char3_onedim, char3_via_transgression, cyclic_pullbacks, induce_character,
    one_dim_characters,
};
use cocyclic_core::cochain::{cyclic_3cocycle, random_coboundary, random_cochain};
use cocyclic_core::cohomology::{brute_force_counts, cohomology_order, DEFAULT_ENUMERATION_CAP, DEFAULT_MATRIX_CAP};
use cocyclic_core::induced::{
    block_structure, monomial_trace_oracle, trace_multiplicity_report, two_way_consistency, verify_wreath_hom,
    Transversal,
};
use cocyclic_core::transgression::{proof_trace, transgress_gamma, verify_gamma_is_2cocycle};
use cocyclic_core::{
    library, CharacterTable, CircleElement, Cochain, CyclotomicValue, Error, FiniteGroup, Subgroup, ThreeCocycle,
};

const BOUND_NILPOTENCE: Duration = Duration::from_secs(5);
const BOUND_CHECKER: Duration = Duration::from_secs(10);
const BOUND_COHOMOLOGY: Duration = Duration::from_secs(5);
const BOUND_TRANSGRESSION: Duration = Duration::from_secs(60);
const BOUND_PROOF: Duration = Duration::from_secs(30);

type Outcome = Result<String, String>;

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

/// Every isomorphism type of order at most 8: the builtin ones plus ℤ/4×ℤ/2 and ℤ/2³.
fn groups_up_to_order_8() -> Vec<(String, FiniteGroup)> {
    let mut groups = library::corpus(8);
    let z4z2 = FiniteGroup::from_permutations(&[vec![1, 2, 3, 0, 4, 5], vec![0, 1, 2, 3, 5, 4]], 64).unwrap();
    let z2cubed = FiniteGroup::from_permutations(
        &[vec![1, 0, 2, 3, 4, 5], vec![0, 1, 3, 2, 4, 5], vec![0, 1, 2, 3, 5, 4]],
        64,
    )
    .unwrap();
    groups.push(("Z4xZ2".into(), z4z2));
    groups.push(("Z2xZ2xZ2".into(), z2cubed));
    groups
}

fn nilpotence() -> Outcome {
    let mut checked = 0;
    for (name, g) in library::corpus(24) {
        for seed in 0..100 {
            let a = random_cochain(&g, 1, 12, seed).map_err(|e| e.to_string())?;
            let dd = a.coboundary().and_then(|b| b.coboundary()).map_err(|e| e.to_string())?;
            ensure(dd.arity() == 3 && dd.is_zero(), || {
                format!("{name} seed {seed}: δδ ≠ 0")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cochains"))
}

fn checker_matches_coboundary() -> Outcome {
    let (mut cocycles, mut others) = (0, 0);
    for (name, g) in groups_up_to_order_8() {
        let pulled = cyclic_pullbacks(&g);
        for seed in 0..50u64 {
            // a third plain random cochains, a third cocycles, a third perturbed cocycles
            let c = match seed % 3 {
                0 => random_cochain(&g, 3, 6, seed).unwrap(),
                1 => {
                    let b = random_coboundary(&g, 3, 6, seed).unwrap();
                    match pulled.get(seed as usize % pulled.len().max(1)) {
                        Some((_, z)) => add(z.cochain(), &b),
                        None => b,
                    }
                }
                _ => {
                    let b = random_coboundary(&g, 3, 6, seed).unwrap();
                    let spot = (seed as usize * 7919) % g.order().pow(3);
                    let bump = Cochain::delta(&g, &b.tuple_at(spot), CircleElement::new(1, 6)).unwrap();
                    add(&b, &bump)
                }
            };
            let checker = c.is_3cocycle().unwrap().holds();
            let delta = c.coboundary().unwrap().is_zero();
            ensure(checker == delta, || {
                format!("{name} seed {seed}: checker {checker}, δc = 0 is {delta}")
            })?;
            if checker {
                cocycles += 1;
            } else {
                others += 1;
            }
        }
    }
    ensure(cocycles > 0 && others > 0, || {
        "sample did not exercise both outcomes".into()
    })?;
    Ok(format!("{cocycles} cocycles, {others} non-cocycles"))
}

fn add(a: &Cochain, b: &Cochain) -> Cochain {
    let values = a.values().iter().zip(b.values()).map(|(x, y)| *x + *y).collect();
    Cochain::from_values(a.group(), a.arity(), values).unwrap()
}

fn cohomology_cross_check() -> Outcome {
    let z2 = library::cyclic(2);
    for (n, cochains) in [(3usize, 256u32), (2, 16)] {
        let order = cohomology_order(&z2, n, 2, DEFAULT_MATRIX_CAP).map_err(|e| e.to_string())?;
        ensure(order == 2, || format!("H^{n}(Z2, Z/2) = {order}"))?;
        ensure(2u128.pow(2u32.pow(n as u32)) == cochains as u128, || {
            "cochain count".into()
        })?;
        let counts = brute_force_counts(&z2, n, 2, DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
        ensure(counts.ratio() == order, || {
            format!("degree {n}: brute ratio {}", counts.ratio())
        })?;
    }
    for n in 1..=8usize {
        let g = library::cyclic(n);
        for m in 1..=8u64 {
            let order = cohomology_order(&g, 1, m, DEFAULT_MATRIX_CAP).map_err(|e| e.to_string())?;
            let homs = count_homomorphisms(&g, m);
            let expected = gcd(n as u64, m) as u128;
            ensure(order == expected && homs == expected, || {
                format!("H^1(Z{n}, Z/{m}) = {order}, homomorphisms {homs}, gcd {expected}")
            })?;
            if (m as u128).pow(n as u32) <= 1 << 12 {
                let brute = brute_force_counts(&g, 1, m, DEFAULT_ENUMERATION_CAP).map_err(|e| e.to_string())?;
                ensure(brute.ratio() == expected, || {
                    format!("Z{n}, Z/{m}: cochain enumeration {}", brute.ratio())
                })?;
            }
        }
    }
    Ok("Z2 degrees 2 and 3, 64 cyclic H¹ pairs".into())
}

/// Scans all `m^|G|` maps `G → ℤ/m` for additivity.
fn count_homomorphisms(g: &FiniteGroup, m: u64) -> u128 {
    let mut phi = vec![0u64; g.order()];
    let mut count = 0;
    loop {
        let additive = g
            .elements()
            .all(|a| g.elements().all(|b| phi[g.mul(a, b)] == (phi[a] + phi[b]) % m));
        if additive {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == phi.len() {
                return count;
            }
            phi[i] += 1;
            if phi[i] < m {
                break;
            }
            phi[i] = 0;
            i += 1;
        }
    }
}

fn transgression_is_a_two_cocycle() -> Outcome {
    let mut checked = 0;
    for (name, g) in library::corpus(16) {
        let mut cocycles = cyclic_pullbacks(&g);
        for seed in 0..10 {
            let b = random_coboundary(&g, 3, 12, seed).unwrap();
            cocycles.push((format!("coboundary#{seed}"), ThreeCocycle::new(b).unwrap()));
        }
        for (label, c) in &cocycles {
            for f in g.elements() {
                let verdict = verify_gamma_is_2cocycle(c, f).map_err(|e| e.to_string())?;
                ensure(verdict.holds(), || format!("{name} {label} f={f}: {verdict:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (group, cocycle, f) cases, 0 violations"))
}

fn proof_replay() -> Outcome {
    let mut steps = 0;
    for n in 1..=8usize {
        for a in 0..n as i64 {
            let c = ThreeCocycle::new(cyclic_3cocycle(n, a)).unwrap();
            for f in 0..n {
                for k in 0..n {
                    for h in 0..n {
                        for g in 0..n {
                            for step in proof_trace(&c, f, k, h, g).map_err(|e| e.to_string())? {
                                ensure(step.equal, || {
                                    format!(
                                        "Z{n} a={a} f={f} (k,h,g)=({k},{h},{g}): {} {} ≠ {}",
                                        step.name, step.left, step.right
                                    )
                                })?;
                                steps += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{steps} identities"))
}

fn dual_path() -> Outcome {
    let mut checked = 0;
    for (name, g) in library::corpus(16) {
        let mut cocycles = cyclic_pullbacks(&g);
        for seed in 0..2 {
            cocycles.push((
                format!("coboundary#{seed}"),
                ThreeCocycle::new(random_coboundary(&g, 3, 12, seed).unwrap()).unwrap(),
            ));
        }
        for (label, c) in &cocycles {
            for f in g.elements() {
                let t = transgress_gamma(c, f).unwrap();
                let cf = t.centralizer();
                for &x in cf.elements() {
                    for &k in cf.elements() {
                        if !g.commutes(x, k) {
                            continue;
                        }
                        let closed = char3_onedim(c, f, x, k).unwrap();
                        let via =
                            char2_onedim(t.table(), cf.local_index(x).unwrap(), cf.local_index(k).unwrap()).unwrap();
                        ensure(closed == via, || {
                            format!("{name} {label} ({f},{x},{k}): {closed} ≠ {via}")
                        })?;
                        checked += 1;
                    }
                }
            }
        }
        // the packaged dual-path entry point on the first commuting triples
        if let Some((_, c)) = cocycles.first() {
            for t in g.commuting_tuples(3).into_iter().take(64) {
                ensure(
                    char3_onedim(c, t[0], t[1], t[2]).unwrap() == char3_via_transgression(c, t[0], t[1], t[2]).unwrap(),
                    || format!("{name} {t:?}"),
                )?;
            }
        }
    }
    Ok(format!("{checked} commuting triples"))
}

fn frobenius_oracle() -> Outcome {
    let mut checked = 0;
    for (name, g) in library::corpus(24) {
        for h in g.subgroups() {
            let transversal = Transversal::canonical(&h).unwrap();
            for lam in one_dim_characters(h.as_group()) {
                let table = CharacterTable::from_homomorphism(h.as_group(), &lam).unwrap();
                let induced = induce_character(&g, &h, &table).unwrap();
                for f in g.elements() {
                    let oracle = monomial_trace_oracle(&transversal, &lam, f).unwrap();
                    let formula = induced.get(&[f]).unwrap();
                    ensure(formula == &oracle, || {
                        format!("{name} H={:?} f={f}: {formula} ≠ {oracle}", h.elements())
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (G, H, λ, f) cases"))
}

fn sampled_table(group: &FiniteGroup, arity: usize, seed: u64) -> CharacterTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CharacterTable::from_fn(group, arity, |_| {
        let c = Rational64::new(rng.gen_range(-3..4), rng.gen_range(1..4));
        Ok(CyclotomicValue::term(c, CircleElement::new(rng.gen_range(0..24), 24)))
    })
    .unwrap()
}

fn transitivity() -> Outcome {
    let d4 = library::dihedral4();
    let z4 = d4
        .subgroups()
        .into_iter()
        .find(|h| h.order() == 4 && h.elements().iter().any(|&x| d4.element_order(x) == 4))
        .unwrap();
    let mut chains: Vec<(String, FiniteGroup, Subgroup, Subgroup)> = Vec::new();
    for k in d4
        .subgroups()
        .into_iter()
        .filter(|k| k.order() == 2 && k.is_subgroup_of(&z4))
    {
        chains.push(("Z2 ≤ Z4 ≤ D4".into(), d4.clone(), k, z4.clone()));
    }
    let a4 = library::alternating4();
    let v4 = a4.subgroups().into_iter().find(|h| h.order() == 4).unwrap();
    for k in a4.subgroups().into_iter().filter(|k| k.order() == 2) {
        chains.push(("Z2 ≤ Z2xZ2 ≤ A4".into(), a4.clone(), k, v4.clone()));
    }
    let mut checked = 0;
    for (label, g, k, h) in &chains {
        let k_in_h = k.within(h).unwrap();
        let mut tables: Vec<CharacterTable> = (1..=3)
            .flat_map(|arity| (0..4).map(move |s| (arity, s)))
            .map(|(a, s)| sampled_table(k.as_group(), a, s))
            .collect();
        // arity 3 from a restricted cocycle
        for (_, c) in cyclic_pullbacks(g).into_iter().take(3) {
            let restricted = ThreeCocycle::new(c.cochain().restrict(k).unwrap()).unwrap();
            tables.push(build_char3_table(&restricted).unwrap());
        }
        for t in &tables {
            let direct = induce_character(g, k, t).unwrap();
            let staged = induce_character(g, h, &induce_character(h.as_group(), &k_in_h, t).unwrap()).unwrap();
            ensure(direct == staged, || {
                format!("{label} K={:?} arity {}", k.elements(), t.arity())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{} chains, {checked} tables", chains.len()))
}

fn wreath_and_blocks() -> Outcome {
    let mut checked = 0;
    for (name, g) in library::corpus(24) {
        for h in g.subgroups() {
            let verdict = verify_wreath_hom(&Transversal::canonical(&h).unwrap()).unwrap();
            ensure(verdict.holds(), || {
                format!("{name} H={:?}: wreath {verdict:?}", h.elements())
            })?;
            for f in g.elements() {
                let blocks = block_structure(&h, f).unwrap();
                let shape = blocks.check();
                ensure(shape.holds(), || {
                    format!("{name} H={:?} f={f}: block shape {shape:?}", h.elements())
                })?;
                let report = trace_multiplicity_report(&h, f).unwrap();
                let total: usize = report.classes.iter().map(|&(_, m)| m).sum::<usize>() + report.m_double_prime;
                ensure(total == g.order() / h.order(), || {
                    format!("{name} H={:?} f={f}: Σm = {total}", h.elements())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (G, H, f) block decompositions"))
}

fn lemma_and_two_way() -> Outcome {
    let (mut lemma, mut two_way) = (0, 0);
    for (name, g) in library::corpus(16) {
        for h in g.subgroups() {
            for f in g.elements() {
                let verdict = g.verify_transversal_lemma(&h, f).unwrap();
                ensure(verdict.holds(), || {
                    format!("{name} H={:?} f={f}: lemma {verdict:?}", h.elements())
                })?;
                lemma += 1;
                for &x in g.centralizer(f).elements() {
                    match two_way_consistency(&h, f, x) {
                        Ok(v) => ensure(v.holds(), || format!("{name} H={:?} f={f} g={x}: {v:?}", h.elements()))?,
                        Err(e @ Error::ClassEscape { .. }) => return Err(format!("{name}: ClassEscape fired: {e}")),
                        Err(e) => return Err(e.to_string()),
                    }
                    two_way += 1;
                }
            }
        }
    }
    Ok(format!("{lemma} lemma cases, {two_way} two-way cases"))
}

/// Runs every command twice and compares the digests of everything written.
fn determinism() -> Outcome {
    let first = cli_transcript_digest()?;
    let second = cli_transcript_digest()?;
    ensure(first == second, || format!("digests differ: {first} vs {second}"))?;
    Ok(format!("sha256 {first}"))
}

fn cli_transcript_digest() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    // relative names keep the temporary directory out of every output
    let path = |name: &str| name.to_owned();
    let (c4, c2, s3r, s3c, t, chr, hchr) = (
        path("c4.json"),
        path("c2.json"),
        path("s3.json"),
        path("s3c.json"),
        path("t.json"),
        path("chr.json"),
        path("h.json"),
    );
    // (expected exit status, arguments)
    let runs: Vec<(i32, Vec<String>)> = [
        (0, vec!["group", "info", "--group", "S4"]),
        (0, vec!["cocycle", "cyclic", "--n", "4", "--a", "1", "--out", &c4]),
        (0, vec!["cocycle", "cyclic", "--n", "2", "--a", "1", "--out", &c2]),
        (0, vec!["cocycle", "check", "--cochain", &c4]),
        (
            0,
            vec![
                "cocycle",
                "random",
                "--group",
                "S3",
                "--arity",
                "3",
                "--modulus",
                "6",
                "--seed",
                "7",
                "--out",
                &s3r,
            ],
        ),
        (1, vec!["cocycle", "check", "--cochain", &s3r]),
        (
            0,
            vec![
                "cocycle",
                "pullback",
                "--cochain",
                &c2,
                "--group",
                "S3",
                "--map",
                "0,1,0,1,1,0",
                "--out",
                &s3c,
            ],
        ),
        (
            0,
            vec![
                "cocycle",
                "random",
                "--group",
                "D4",
                "--arity",
                "3",
                "--modulus",
                "12",
                "--coboundary",
                "--seed",
                "3",
            ],
        ),
        (
            0,
            vec![
                "cohomology",
                "order",
                "--group",
                "S3",
                "--degree",
                "3",
                "--modulus",
                "6",
            ],
        ),
        (
            0,
            vec![
                "cohomology",
                "brute",
                "--group",
                "Z2",
                "--degree",
                "3",
                "--modulus",
                "2",
            ],
        ),
        (
            0,
            vec![
                "transgress",
                "--cochain",
                &c4,
                "--f",
                "2",
                "--kind",
                "gamma",
                "--out",
                &t,
            ],
        ),
        (
            0,
            vec!["transgress", "--cochain", &c4, "--f", "1", "--kind", "willerton"],
        ),
        (
            0,
            vec![
                "transgress",
                "verify",
                "--max-order",
                "8",
                "--coboundaries",
                "3",
                "--seed",
                "11",
            ],
        ),
        (0, vec!["transgress", "verify", "--cochain", &c4, "--kind", "willerton"]),
        (0, vec!["proof-trace", "--cochain", &c4, "--f", "2"]),
        (
            0,
            vec![
                "proof-trace",
                "--cochain",
                &c4,
                "--f",
                "2",
                "--k",
                "1",
                "--h",
                "3",
                "--g",
                "2",
            ],
        ),
        (0, vec!["char3", "--cochain", &c2, "--f", "1", "--g", "1", "--k", "1"]),
        (0, vec!["char", "table", "--cochain", &c4, "--out", &chr]),
        (0, vec!["char", "table", "--cochain", &s3c]),
        (0, vec!["class-function", "check", "--group", "Z4", "--character", &chr]),
        (0, vec!["class-function", "check", "--cochain", &s3c]),
        (
            0,
            vec!["induce", "rho", "--group", "S3", "--subgroup-gens", "1", "--f", "2"],
        ),
        (0, vec!["induce", "verify", "--group", "D4"]),
        (
            0,
            vec!["inertia", "--group", "S4", "--subgroup-gens", "1,2", "--f", "3"],
        ),
    ]
    .into_iter()
    .map(|(code, args)| (code, args.iter().map(|s| s.to_string()).collect()))
    .collect();

    let mut hasher = Sha256::new();
    for (code, args) in &runs {
        let output = Command::new(env!("CARGO_BIN_EXE_cocyclic"))
            .current_dir(d)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(output.status.code() == Some(*code), || {
            format!(
                "{args:?} exited {:?}: {}",
                output.status.code(),
                String::from_utf8_lossy(&output.stderr)
            )
        })?;
        hasher.update(&output.stdout);
        hasher.update(&output.stderr);
    }
    // induce char needs a character file on H written in parent indices
    write_subgroup_character(&d.join(&hchr))?;
    let output = Command::new(env!("CARGO_BIN_EXE_cocyclic"))
        .current_dir(d)
        .args([
            "induce",
            "char",
            "--group",
            "S3",
            "--subgroup",
            "0,2,5",
            "--character",
            &hchr,
        ])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(output.status.success(), || {
        String::from_utf8_lossy(&output.stderr).into_owned()
    })?;
    hasher.update(&output.stdout);
    for file in [&c4, &c2, &s3r, &s3c, &t, &format!("{t}.sidecar.json"), &chr] {
        hasher.update(std::fs::read(d.join(file)).map_err(|e| format!("{file}: {e}"))?);
    }
    Ok(hasher.finalize().iter().map(|b| format!("{b:02x}")).collect())
}

fn write_subgroup_character(path: &Path) -> Result<(), String> {
    // λ(x) = k/3 on the rotation subgroup {0, 2, 5} of S3
    let s3 = library::symmetric3();
    let a3 = s3.subgroup(&[0, 2, 5]).map_err(|e| e.to_string())?;
    let lam = one_dim_characters(a3.as_group()).pop().ok_or("no characters")?;
    let entries: Vec<serde_json::Value> = a3
        .elements()
        .iter()
        .enumerate()
        .map(|(i, &x)| serde_json::json!({"tuple": [x], "value": [["1/1", lam[i].to_string()]]}))
        .collect();
    let body = serde_json::json!({"arity": 1, "entries": entries});
    std::fs::write(path, body.to_string()).map_err(|e| e.to_string())
}

fn main() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Option<Duration>, Check); 11] = [
        ("coboundary nilpotence", Some(BOUND_NILPOTENCE), nilpotence),
        (
            "3-cocycle checker agrees with δ",
            Some(BOUND_CHECKER),
            checker_matches_coboundary,
        ),
        (
            "cohomology orders vs enumeration",
            Some(BOUND_COHOMOLOGY),
            cohomology_cross_check,
        ),
        (
            "transgressed Γ is a 2-cocycle",
            Some(BOUND_TRANSGRESSION),
            transgression_is_a_two_cocycle,
        ),
        ("proof replay", Some(BOUND_PROOF), proof_replay),
        ("dual-path 3-character", None, dual_path),
        ("arity-1 induction vs monomial trace", None, frobenius_oracle),
        ("induction transitivity", None, transitivity),
        ("wreath homomorphism and block shape", None, wreath_and_blocks),
        ("transversal lemma and two-way consistency", None, lemma_and_two_way),
        ("CLI determinism", None, determinism),
    ];
    let mut failed = 0;
    for (i, (name, bound, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, bound) {
            (Ok(_), Some(b)) if elapsed >= b => Err(format!("took {elapsed:.2?}, bound {b:?}")),
            (r, _) => r,
        };
        let bound_text = bound.map_or(String::new(), |b| format!(" < {b:?}"));
        match result {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}{bound_text}]",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}{bound_text}]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
