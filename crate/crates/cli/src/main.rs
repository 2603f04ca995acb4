//! Command-line front end for the twistcert engine.
//!
//! Subcommands build a group family at a prime power `q`, run one of the
//! engine's verifications and print a deterministic JSON report: sorted
//! keys, exact rationals rendered as strings, no floating point and no
//! wall-clock fields, so reports are byte-identical across reruns and
//! worker counts.
//!
//! Exit codes: `0` success, `2` invalid configuration, `3` invariant,
//! oracle or cache failure, `4` resource bound exceeded.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use twistcert_core::catalog::{
    build_setup, central_type_subspaces, classify_klein, named_m, solve_circle, sylow_subgroup,
    sz_center, CharacterKind, SubgroupSpec,
};
use twistcert_core::character::{sz_character_by_cosets, verify_induced_closed_form, ClassFunction};
use twistcert_core::group::{Family, FiniteGroup, JordanType};
use twistcert_core::obstruction::{certify, verify_quadruple_product_criterion, Conclusion};
use twistcert_core::rational::{format_rational, int};
use twistcert_core::twist::{
    build_twist, coset_sum, verify_coproduct_identity, verify_twist_axioms, OmegaKind,
};
use twistcert_core::{Error, Result, DEFAULT_ENUMERATION_BOUND};

/// Enumeration bound that admits `Sz(32)` (order 32,537,600).
const SZ32_ENUMERATION_BOUND: u64 = 40_000_000;

/// Largest group for which `character` verifies the full brute-force
/// table element by element; above it only the Suzuki coset-representative
/// summary is available.
const FULL_TABLE_ORDER_CAP: usize = 1_000_000;

/// Largest group for which `enumerate` tabulates the element-order
/// histogram.
const HISTOGRAM_ORDER_CAP: usize = 200_000;

#[derive(Parser)]
#[command(
    name = "twistcert",
    version,
    about = "Exact obstruction certificates for twisted group algebras of SL2(q), PSL2(q), SL3(p) and Sz(q)"
)]
struct Cli {
    /// Upper bound on the order of any group to enumerate.
    #[arg(
        long,
        global = true,
        env = "TWISTCERT_BOUND",
        default_value_t = DEFAULT_ENUMERATION_BOUND
    )]
    bound: u64,

    /// Cap on parallel worker threads (default: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Directory for the integrity-checked group cache.
    #[arg(long, global = true, env = "TWISTCERT_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one obstruction certificate.
    Verify(VerifyArgs),
    /// Classify the Klein four-subgroups of psl2(q), q odd, and list the
    /// central-type p-subgroups of the unipotent subgroup.
    Classify(GroupArgs),
    /// Build the induced character and verify it against its closed form.
    Character(GroupArgs),
    /// Enumerate a group and report structural statistics.
    Enumerate(GroupArgs),
    /// Run the oracle matrix: characters, certificates, classification,
    /// structure counts, twist axioms and the exhaustive property checks.
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Group family: sl2, psl2, sl3 or sz.
    #[arg(long)]
    family: String,

    /// Prime power, consistent with the family.
    #[arg(long)]
    q: u32,

    /// Subgroup spec, e.g. "E=1,g", "klein:x=2,y=3", "L3" or "Z2x2";
    /// an optional "<family>:" prefix is accepted.
    #[arg(long)]
    m: String,

    /// Override tau: dim*dim field codes, row-major, comma-separated.
    #[arg(long, value_delimiter = ',')]
    tau: Option<Vec<u32>>,
}

#[derive(Args)]
struct GroupArgs {
    /// Group family: sl2, psl2, sl3 or sz.
    #[arg(long)]
    family: String,

    /// Prime power, consistent with the family.
    #[arg(long)]
    q: u32,
}

#[derive(Args)]
struct SelftestArgs {
    /// Also enumerate Sz(32) and verify its induced character; raises the
    /// bound to 40,000,000.
    #[arg(long)]
    include_sz32: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> ExitCode {
    match e {
        Error::Config(_) => ExitCode::from(2),
        Error::Invariant(_) | Error::Cache(_) | Error::Io(_) => ExitCode::from(3),
        Error::Bound(_) => ExitCode::from(4),
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if let Some(workers) = cli.workers {
        if workers == 0 {
            return Err(Error::Config("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    }
    let (report, ok) = match &cli.command {
        Command::Verify(args) => (run_verify(cli, args)?, true),
        Command::Classify(args) => (run_classify(cli, args)?, true),
        Command::Character(args) => (run_character(cli, args)?, true),
        Command::Enumerate(args) => (run_enumerate(cli, args)?, true),
        Command::Selftest(args) => run_selftest(cli, args)?,
    };
    let text = format!(
        "{}\n",
        serde_json::to_string_pretty(&report).expect("report serialization cannot fail")
    );
    if let Some(path) = &cli.out {
        std::fs::write(path, &text)?;
    }
    print!("{text}");
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

/// Wraps a payload in the versioned report envelope.  The config echo is
/// semantic only — paths and worker counts are excluded so equal
/// configurations yield identical bytes.
fn report(config: Value, payload: Value) -> Value {
    json!({
        "schema": 1,
        "tool": {
            "name": "twistcert",
            "version": env!("CARGO_PKG_VERSION"),
        },
        "config": config,
        "timing": Value::Null,
        "payload": payload,
    })
}

fn build_group(cli: &Cli, family: Family, q: u32) -> Result<Arc<FiniteGroup>> {
    FiniteGroup::build_with(family, q, cli.bound, cli.cache_dir.as_deref())
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> Result<Value> {
    let family = Family::parse(&args.family)?;
    let spec = SubgroupSpec::parse(family, &args.m)?;
    let g = build_group(cli, family, args.q)?;
    let setup = build_setup(&g, &spec, args.tau.as_deref())?;
    let cert = certify(&setup)?;
    let config = json!({
        "command": "verify",
        "family": family.name(),
        "q": args.q,
        "m": spec.canonical_string(),
        "tau": args.tau,
        "bound": cli.bound,
    });
    Ok(report(config, cert.to_json()))
}

fn run_classify(cli: &Cli, args: &GroupArgs) -> Result<Value> {
    let family = Family::parse(&args.family)?;
    let g = build_group(cli, family, args.q)?;
    let classification = classify_klein(&g)?;
    let orbits: Vec<Value> = classification
        .orbits
        .iter()
        .map(|o| json!({"representative": o.representative, "size": o.size}))
        .collect();
    let subspaces: Vec<Value> = central_type_subspaces(g.field())
        .iter()
        .map(|s| json!({"basis": s.basis, "order": s.members.len()}))
        .collect();
    let payload = json!({
        "q": args.q,
        "klein_subgroup_count": classification.subgroups.len(),
        "orbit_count": orbits.len(),
        "orbits": orbits,
        "fixed_involution": classification.fixed_involution,
        "containing_fixed": classification.containing_fixed,
        "central_type_p_subgroups": subspaces,
    });
    let config = json!({
        "command": "classify",
        "family": family.name(),
        "q": args.q,
        "bound": cli.bound,
    });
    Ok(report(config, payload))
}

fn run_character(cli: &Cli, args: &GroupArgs) -> Result<Value> {
    let family = Family::parse(&args.family)?;
    let g = build_group(cli, family, args.q)?;
    let payload = if g.order() > FULL_TABLE_ORDER_CAP {
        if family != Family::Sz {
            return Err(Error::Bound(format!(
                "full character table over {} elements exceeds the cap {FULL_TABLE_ORDER_CAP}",
                g.order()
            )));
        }
        let s = sz_character_by_cosets(&g, None)?;
        json!({
            "degree": s.degree.to_string(),
            "full_table_verified": false,
            "values": Value::Null,
            "coset_summary": {
                "degree": s.degree,
                "value_on_p": s.value_on_p,
                "p_size": s.p_size,
                "group_order": s.group_order,
            },
        })
    } else {
        let chi = ClassFunction::induced_from_sylow(&g)?;
        let table = verify_induced_closed_form(&chi)?;
        let values: Vec<Value> = table
            .iter()
            .map(|(v, n)| json!({"value": format_rational(v), "elements": n}))
            .collect();
        let coset_summary = if family == Family::Sz {
            let s = sz_character_by_cosets(&g, Some(&chi))?;
            json!({
                "degree": s.degree,
                "value_on_p": s.value_on_p,
                "p_size": s.p_size,
                "group_order": s.group_order,
            })
        } else {
            Value::Null
        };
        json!({
            "degree": format_rational(chi.value(g.identity_index())),
            "full_table_verified": true,
            "values": values,
            "coset_summary": coset_summary,
        })
    };
    let config = json!({
        "command": "character",
        "family": family.name(),
        "q": args.q,
        "bound": cli.bound,
    });
    Ok(report(config, payload))
}

fn run_enumerate(cli: &Cli, args: &GroupArgs) -> Result<Value> {
    let family = Family::parse(&args.family)?;
    let g = build_group(cli, family, args.q)?;
    let n = g.order() as u32;
    let e = g.identity_index();
    let involutions = (0..n).filter(|&i| i != e && g.mul(i, i) == e).count();
    let histogram = if g.order() <= HISTOGRAM_ORDER_CAP {
        let mut hist: BTreeMap<u64, usize> = BTreeMap::new();
        for idx in 0..n {
            *hist.entry(g.element_order(idx)).or_default() += 1;
        }
        let rows: Vec<Value> = hist
            .into_iter()
            .map(|(order, count)| json!({"order": order, "count": count}))
            .collect();
        Value::Array(rows)
    } else {
        Value::Null
    };
    let payload = json!({
        "family": family.name(),
        "q": args.q,
        "p": g.field().p(),
        "m": g.field().m(),
        "order": g.order() as u64,
        "involutions": involutions,
        "element_order_histogram": histogram,
    });
    let config = json!({
        "command": "enumerate",
        "family": family.name(),
        "q": args.q,
        "bound": cli.bound,
    });
    Ok(report(config, payload))
}

/// One line of the selftest report.
struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn check<F>(checks: &mut Vec<Check>, name: &str, f: F)
where
    F: FnOnce() -> Result<String>,
{
    let (pass, detail) = match f() {
        Ok(detail) => (true, detail),
        Err(e) => (false, e.to_string()),
    };
    checks.push(Check {
        name: name.to_string(),
        pass,
        detail,
    });
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invariant(msg()))
    }
}

/// Builds each group at most once per selftest run.
struct GroupCache {
    bound: u64,
    dir: Option<PathBuf>,
    map: HashMap<(Family, u32), Arc<FiniteGroup>>,
}

impl GroupCache {
    fn get(&mut self, family: Family, q: u32) -> Result<Arc<FiniteGroup>> {
        if let Some(g) = self.map.get(&(family, q)) {
            return Ok(Arc::clone(g));
        }
        let g = FiniteGroup::build_with(family, q, self.bound, self.dir.as_deref())?;
        self.map.insert((family, q), Arc::clone(&g));
        Ok(g)
    }
}

fn run_selftest(cli: &Cli, args: &SelftestArgs) -> Result<(Value, bool)> {
    let bound = if args.include_sz32 {
        cli.bound.max(SZ32_ENUMERATION_BOUND)
    } else {
        cli.bound
    };
    let mut cache = GroupCache {
        bound,
        dir: cli.cache_dir.clone(),
        map: HashMap::new(),
    };
    let mut checks: Vec<Check> = Vec::new();

    // Induced characters match their closed forms element by element.
    let character_scope: [(Family, u32); 12] = [
        (Family::Sl2, 4),
        (Family::Sl2, 5),
        (Family::Sl2, 7),
        (Family::Sl2, 8),
        (Family::Sl2, 9),
        (Family::Psl2, 5),
        (Family::Psl2, 7),
        (Family::Psl2, 9),
        (Family::Psl2, 13),
        (Family::Sl3, 2),
        (Family::Sl3, 3),
        (Family::Sz, 8),
    ];
    for (family, q) in character_scope {
        let name = format!("character/{}({q})", family.name());
        check(&mut checks, &name, || {
            let g = cache.get(family, q)?;
            let chi = ClassFunction::induced_from_sylow(&g)?;
            let table = verify_induced_closed_form(&chi)?;
            let mut detail = format!(
                "induced character matches the closed form; {} distinct nonzero values",
                table.len()
            );
            if family == Family::Sz {
                let s = sz_character_by_cosets(&g, Some(&chi))?;
                expect(s.degree == 455 && s.value_on_p == 7, || {
                    format!(
                        "coset formula gave degree {}, value {} on p-elements; expected 455, 7",
                        s.degree, s.value_on_p
                    )
                })?;
                detail.push_str("; coset formula degree 455, value 7");
            }
            Ok(detail)
        });
    }

    // Obstruction certificates: three methods agree, the value matches the
    // oracle, the reduced denominator shares a factor with |M|.
    let obstruction_matrix: [(Family, u32, &str, &str); 11] = [
        (Family::Psl2, 5, "klein:x=2,y=0", "15/4"),
        (Family::Psl2, 7, "klein:x=2,y=3", "1/4"),
        (Family::Sl2, 4, "E=1,g", "135/4"),
        (Family::Sl2, 8, "E=1,g", "3087/4"),
        (Family::Sl2, 9, "E=1,g", "512/9"),
        (Family::Psl2, 9, "E=1,g", "640/3"),
        (Family::Psl2, 9, "klein:x=1,y=1", "125/4"),
        (Family::Psl2, 13, "klein:x=4,y=3", "343/4"),
        (Family::Sl3, 3, "L3", "64/9"),
        (Family::Sl3, 3, "L1", "34496/9"),
        (Family::Sz, 8, "Z2x2", "22295/4"),
    ];
    for (family, q, spec_str, want) in obstruction_matrix {
        let name = format!("obstruction/{}({q})/{spec_str}", family.name());
        check(&mut checks, &name, || {
            let g = cache.get(family, q)?;
            let spec = SubgroupSpec::parse(family, spec_str)?;
            let setup = build_setup(&g, &spec, None)?;
            let cert = certify(&setup)?;
            let value = format_rational(&cert.value);
            expect(value == want, || {
                format!("chi(y^2) = {value}, oracle expects {want}")
            })?;
            expect(cert.conclusion == Conclusion::Obstructed, || {
                format!("conclusion {}, expected obstructed", cert.conclusion.label())
            })?;
            expect(
                cert.closed_form.as_ref() == Some(&cert.value),
                || "closed form disagrees with the computed value".to_string(),
            )?;
            Ok(format!(
                "chi(y^2) = {value}; denominator gcd with |M| = {}; three methods agree",
                cert.gcd_with_m
            ))
        });
    }

    // Klein classification: orbit counts and the containing-fixed count.
    for (q, orbit_count) in [(5u32, 1usize), (7, 2), (11, 1), (13, 1)] {
        let name = format!("classify/psl2({q})");
        check(&mut checks, &name, || {
            let g = cache.get(Family::Psl2, q)?;
            let c = classify_klein(&g)?;
            expect(c.orbits.len() == orbit_count, || {
                format!("{} orbits, expected {orbit_count}", c.orbits.len())
            })?;
            let mut detail = format!(
                "{orbit_count} conjugacy class(es) among {} Klein subgroups",
                c.subgroups.len()
            );
            if q == 7 || q == 11 {
                let want = ((q + 1) / 4) as usize;
                expect(c.containing_fixed == want, || {
                    format!(
                        "{} subgroups contain the fixed involution, expected {want}",
                        c.containing_fixed
                    )
                })?;
                detail.push_str(&format!("; {want} contain the fixed involution"));
            }
            Ok(detail)
        });
    }

    // Structure counts.
    check(&mut checks, "structure/sl3(3)/unipotent", || {
        let g = cache.get(Family::Sl3, 3)?;
        let u = sylow_subgroup(&g)?;
        let mut two_one = Vec::new();
        for &x in u.members() {
            if x != g.identity_index() && g.jordan_type(x)? == JordanType::TwoOne {
                two_one.push(x);
            }
        }
        expect(two_one.len() == 14, || {
            format!("{} type-(2,1) elements in U, expected 14", two_one.len())
        })?;
        let rep = two_one[0];
        let centralizer = (0..g.order() as u32)
            .filter(|&x| g.mul(x, rep) == g.mul(rep, x))
            .count();
        expect(centralizer == 54, || {
            format!("|C(u)| = {centralizer}, expected 54")
        })?;
        Ok("14 type-(2,1) elements in U; centralizer order 54".to_string())
    });
    check(&mut checks, "structure/sz(8)/center", || {
        let g = cache.get(Family::Sz, 8)?;
        let u = sylow_subgroup(&g)?;
        let z = sz_center(&g)?;
        expect(z.order() == 8, || format!("|Z(U)| = {}, expected 8", z.order()))?;
        expect(u.exponent() == 4, || {
            format!("exponent(U) = {}, expected 4", u.exponent())
        })?;
        let involutions: Vec<u32> = u
            .members()
            .iter()
            .copied()
            .filter(|&x| x != g.identity_index() && g.element_order(x) == 2)
            .collect();
        let z_nontrivial: Vec<u32> = z
            .members()
            .iter()
            .copied()
            .filter(|&x| x != g.identity_index())
            .collect();
        expect(involutions == z_nontrivial, || {
            "involutions of U differ from Z(U) minus the identity".to_string()
        })?;
        Ok("|Z(U)| = 8; exponent(U) = 4; involutions of U = Z(U) minus identity".to_string())
    });
    for (q, count) in [(5u32, 4usize), (7, 8), (13, 12)] {
        let name = format!("structure/circle/GF({q})");
        check(&mut checks, &name, || {
            let g = cache.get(Family::Psl2, q)?;
            let solutions = solve_circle(g.field())?;
            expect(solutions.len() == count, || {
                format!(
                    "{} solutions of x^2+y^2=-1 over GF({q}), expected {count}",
                    solutions.len()
                )
            })?;
            Ok(format!("{count} solutions of x^2+y^2=-1"))
        });
    }

    // Twist axioms and the twisted-coproduct identity.
    check(&mut checks, "twist/axioms/C2xC2", || {
        let g = cache.get(Family::Psl2, 5)?;
        let klein = named_m(&g, &SubgroupSpec::parse(Family::Psl2, "klein:x=2,y=0")?)?;
        let twist = build_twist(&klein, OmegaKind::Standard)?;
        expect(verify_twist_axioms(&twist), || {
            "twist axioms fail on C2xC2".to_string()
        })?;
        Ok("unit, cocycle and counit axioms hold (standard pairing)".to_string())
    });
    check(&mut checks, "twist/axioms/C3xC3", || {
        let g = cache.get(Family::Psl2, 9)?;
        let m = named_m(&g, &SubgroupSpec::parse(Family::Psl2, "E=1,g")?)?;
        let twist = build_twist(&m, OmegaKind::Standard)?;
        expect(verify_twist_axioms(&twist), || {
            "twist axioms fail on C3xC3".to_string()
        })?;
        Ok("unit, cocycle and counit axioms hold (standard pairing)".to_string())
    });
    check(&mut checks, "twist/axioms/corrupted", || {
        let g = cache.get(Family::Psl2, 5)?;
        let klein = named_m(&g, &SubgroupSpec::parse(Family::Psl2, "klein:x=2,y=0")?)?;
        let twist = build_twist(&klein, OmegaKind::CorruptedStandard)?;
        expect(!verify_twist_axioms(&twist), || {
            "corrupted pairing passed the axiom check".to_string()
        })?;
        Ok("corrupted pairing rejected by the axiom check".to_string())
    });
    check(&mut checks, "twist/coproduct-identity", || {
        let g = cache.get(Family::Psl2, 5)?;
        let klein = named_m(&g, &SubgroupSpec::parse(Family::Psl2, "klein:x=2,y=0")?)?;
        let tau = g.element_from_int_entries(&[1, 0, 1, 1])?;
        let chi = ClassFunction::for_kind(&g, CharacterKind::Phi5)?;
        for kind in [OmegaKind::Standard, OmegaKind::Swapped] {
            let twist = build_twist(&klein, kind)?;
            expect(verify_coproduct_identity(&twist, tau, &chi)?, || {
                format!("coproduct identity fails for the {kind:?} pairing")
            })?;
        }
        let c_tau = coset_sum(&klein, tau)?;
        expect(c_tau.augmentation() == int(klein.order() as i64), || {
            "counit of the double-coset sum is not |M|".to_string()
        })?;
        Ok("holds for two nondegenerate pairings; counit of c_tau = |M| = 4".to_string())
    });

    // Exhaustive property checks at selftest scale.
    check(&mut checks, "property/field-axioms/GF(9)", || {
        let g = cache.get(Family::Psl2, 9)?;
        let f = g.field();
        for a in 0..f.q() {
            expect(f.powi(a, 9) == a, || format!("a^9 != a at {a}"))?;
            for b in 0..f.q() {
                expect(f.mul(a, b) == f.mul(b, a), || "mul not commutative".into())?;
                expect(f.add(a, b) == f.add(b, a), || "add not commutative".into())?;
                for c in 0..f.q() {
                    expect(
                        f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)),
                        || "distributivity fails".into(),
                    )?;
                }
            }
        }
        Ok("commutativity, distributivity and a^q = a hold on all of GF(9)".to_string())
    });
    check(&mut checks, "property/theta/GF(8)", || {
        let g = cache.get(Family::Sz, 8)?;
        let f = g.field();
        let mut image = BTreeSet::new();
        for a in 0..f.q() {
            let t = f.frobenius(a, 2);
            expect(f.frobenius(t, 2) == f.mul(a, a), || {
                format!("theta^2 != squaring at {a}")
            })?;
            if a != 0 {
                let v = f.mul(a, t);
                expect(image.insert(v), || format!("a*theta(a) collides at {a}"))?;
                expect(v != 1 || a == 1, || {
                    format!("a*theta(a) = 1 at {a} != 1")
                })?;
            }
        }
        expect(image.len() == (f.q() - 1) as usize, || {
            "a*theta(a) is not onto the units".to_string()
        })?;
        Ok("theta^2 = squaring; a*theta(a) bijective on the units of GF(8)".to_string())
    });
    check(&mut checks, "property/group-laws/psl2(7)", || {
        let g = cache.get(Family::Psl2, 7)?;
        let f = g.field();
        let chi = ClassFunction::induced_from_sylow(&g)?;
        let n = g.order() as u32;
        for a in 0..n {
            expect(g.mul(a, g.inv(a)) == g.identity_index(), || {
                format!("a * a^-1 != 1 at {a}")
            })?;
            for b in 0..n {
                let prod = g.canon_matrix(g.matrix(a).mul(&g.matrix(b), f));
                expect(g.matrix(g.mul(a, b)) == prod, || {
                    format!("index product disagrees with matrix product at ({a},{b})")
                })?;
                expect(chi.value(g.conj(a, b)) == chi.value(b), || {
                    format!("character not conjugation-invariant at ({a},{b})")
                })?;
            }
        }
        Ok("products, inverses and character conjugation-invariance hold on all pairs".to_string())
    });
    check(&mut checks, "property/quadruple-criterion", || {
        let g5 = cache.get(Family::Psl2, 5)?;
        let u5 = sylow_subgroup(&g5)?;
        let tau5 = g5.element_from_int_entries(&[0, -1, 1, 0])?;
        expect(verify_quadruple_product_criterion(&u5, tau5)?, || {
            "criterion false on psl2(5) where tau^2 = 1".to_string()
        })?;
        let s5 = cache.get(Family::Sl2, 5)?;
        let su = sylow_subgroup(&s5)?;
        let stau = s5.element_from_int_entries(&[0, -1, 1, 0])?;
        expect(!verify_quadruple_product_criterion(&su, stau)?, || {
            "criterion true on sl2(5) where tau^2 = -1".to_string()
        })?;
        Ok("product = 1 exactly when u'v = v'u = 1 and tau^2 = 1, on psl2(5) and sl2(5)"
            .to_string())
    });
    check(&mut checks, "property/torus-conjugation/psl2(7)", || {
        let g = cache.get(Family::Psl2, 7)?;
        let f = g.field();
        let (x, y) = (2u32, 3u32);
        let m = named_m(&g, &SubgroupSpec::Klein { x, y })?;
        let mut rotations = 0usize;
        for a in 0..7u32 {
            for b in 0..7u32 {
                if f.add(f.mul(a, a), f.mul(b, b)) != 1 {
                    continue;
                }
                let kappa = g.element_from_int_entries(&[
                    i64::from(a),
                    i64::from(b),
                    -i64::from(b),
                    i64::from(a),
                ])?;
                let mut image: Vec<u32> = m.members().iter().map(|&v| g.conj(kappa, v)).collect();
                image.sort_unstable();
                let aa = f.sub(f.mul(a, a), f.mul(b, b));
                let two_ab = f.mul(2, f.mul(a, b));
                let x2 = f.add(f.mul(aa, x), f.mul(two_ab, y));
                let y2 = f.sub(f.mul(aa, y), f.mul(two_ab, x));
                let target = named_m(&g, &SubgroupSpec::Klein { x: x2, y: y2 })?;
                expect(image == target.members(), || {
                    format!("rotation ({a},{b}) does not map ({x},{y}) as predicted")
                })?;
                rotations += 1;
            }
        }
        expect(rotations > 0, || "no rotations found".to_string())?;
        Ok(format!(
            "all {rotations} rotations carry the Klein parameters as predicted"
        ))
    });

    if args.include_sz32 {
        check(&mut checks, "stretch/sz(32)", || {
            let g = cache.get(Family::Sz, 32)?;
            let expected = 32u64 * 32 * 31 * 1025;
            expect(g.order() as u64 == expected, || {
                format!("|Sz(32)| = {}, expected {expected}", g.order())
            })?;
            let s = sz_character_by_cosets(&g, None)?;
            expect(
                s.degree == 31775 && s.value_on_p == 31 && s.p_size == 1 << 20,
                || {
                    format!(
                        "coset character gave degree {}, value {}, |P| = {}",
                        s.degree, s.value_on_p, s.p_size
                    )
                },
            )?;
            Ok(format!(
                "|Sz(32)| = {expected}; induced degree 31775, value 31 on p-elements"
            ))
        });
    }

    let passed = checks.iter().filter(|c| c.pass).count();
    let failed = checks.len() - passed;
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
        .collect();
    let payload = json!({
        "scope": if args.include_sz32 { "default+sz32" } else { "default" },
        "checks": rows,
        "passed": passed,
        "failed": failed,
        "all_pass": failed == 0,
    });
    let config = json!({
        "command": "selftest",
        "include_sz32": args.include_sz32,
        "bound": bound,
    });
    Ok((report(config, payload), failed == 0))
}
