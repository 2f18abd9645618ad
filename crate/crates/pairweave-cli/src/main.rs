//! Command-line surface for the pairweave library: enumeration and moment
//! data emission plus `verify` subcommands that re-check the identities with
//! machine-readable verdicts.

use std::collections::BTreeSet;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use pairweave::fock::{
    adjoint_identity_check, fock_gram_psd, vacuum_moment, BlockedBasis, FockVector, Regime,
};
use pairweave::freeprob::{
    connected_pairing_count, free_convolve, mu_q_moments, verify_theorem6, MomentSeq,
};
use pairweave::linalg::PsdMethod;
use pairweave::measures::{
    density_eval, make_mu_q, mu_ab_moments, quad_moments, rational_to_f64, AtomMode as LibAtomMode,
};
use pairweave::pairings::{catalan, double_factorial, enumerate_pairings};
use pairweave::scalar::{format_rational, parse_rational, rat, rat_int, QPoly, Rational};
use pairweave::states::{
    hankel_psd, selfadjoint_moments, symgroup_gram_psd, word_gram_psd, word_moment, CovarianceQ,
    Kernel, Letter, Word,
};
use pairweave::weights::{verify_corollary7, Weight};
use pairweave::PairweaveError;

#[derive(Parser)]
#[command(
    name = "pairweave",
    version,
    about = "Exact pair-partition weights, deformed Fock operators, and the \
             moment identities that connect them"
)]
struct Cli {
    /// Write output to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for all pseudo-randomness (reports are byte-identical per seed)
    #[arg(long, global = true, default_value_t = 17)]
    seed: u64,

    /// Include wall-clock timings in reports (off by default so identical
    /// invocations produce byte-identical output)
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate pairings of {1..n}
    Pairings {
        #[command(subcommand)]
        cmd: PairingsCmd,
    },
    /// Moment sequences: CSV rows `order,moment`
    Moments(MomentsArgs),
    /// Gram-matrix positivity certificates (JSON verdicts)
    Gram {
        #[command(subcommand)]
        cmd: GramCmd,
    },
    /// Continuous density of mu_q for -1 < q < 0: CSV rows `t,density`
    /// after a `# atoms:` header line
    Density(DensityArgs),
    /// Free convolution of two moment sequences stored as JSON arrays of
    /// rational strings
    Freeconv(FreeconvArgs),
    /// Re-verify the library's identities and emit a JSON verdict report
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum PairingsCmd {
    /// Emit one JSON object per pairing of {1..n}
    Enum {
        /// Even number of points, at most 16
        #[arg(long)]
        n: usize,
        /// Include crossings/blocks/inner-outer statistics per pairing
        #[arg(long)]
        stats: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WeightKind {
    /// q^(pairs - blocks), with the sign twist taken automatically at q < 0
    Tq,
    /// the signed extension regardless of the sign of q
    Tqneg,
    /// mu^(crossings); requires --mu
    Thatmu,
    /// (-1)^(crossings)
    Tminusone,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// exact rational pairing sums
    Pairing,
    /// Gauss-Legendre quadrature of the closed-form density (mu_q only)
    Quadrature,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AtomMode {
    /// atom mass max(1-2(1+q),0)/(4|q|), kept verbatim from the source
    /// formula even though it under-weights the atoms
    Paper,
    /// atom mass max(1-2(1+q),0)/(2|q|), forced by total mass 1
    Derived,
}

impl From<AtomMode> for LibAtomMode {
    fn from(m: AtomMode) -> LibAtomMode {
        match m {
            AtomMode::Paper => LibAtomMode::Paper,
            AtomMode::Derived => LibAtomMode::Derived,
        }
    }
}

#[derive(Args)]
struct MomentsArgs {
    /// Weight function for the pairing sum
    #[arg(long, value_enum, default_value_t = WeightKind::Tq)]
    weight: WeightKind,
    /// Rational parameter as "p/q" or "p"
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Crossing weight for --weight thatmu
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Highest moment order to emit
    #[arg(long, default_value_t = 12)]
    order: usize,
    #[arg(long, value_enum, default_value_t = Method::Pairing)]
    method: Method,
    /// Atom handling for --method quadrature
    #[arg(long, value_enum, default_value_t = AtomMode::Derived)]
    atom_mode: AtomMode,
    /// Quadrature node count (at least 64)
    #[arg(long, default_value_t = 256)]
    points: usize,
}

#[derive(Subcommand)]
enum GramCmd {
    /// Gram of the symmetric-group kernel t(V_{sigma^-1 pi}) over S_r
    Symgroup {
        #[arg(long)]
        r: usize,
        /// Rational q-point; repeatable
        #[arg(long, required = true, allow_hyphen_values = true)]
        q: Vec<String>,
        /// Also multiply in the crossing weight mu^(crossings)
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Gram of moments of words w_i w_j^* over all words up to a length
    Words {
        #[arg(long)]
        maxlen: usize,
        #[arg(long, default_value_t = 2)]
        indices: usize,
        #[arg(long, required = true, allow_hyphen_values = true)]
        q: Vec<String>,
    },
    /// Gram of the n-particle blocked basis inner product
    Fock {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        indices: usize,
        #[arg(long, required = true, allow_hyphen_values = true)]
        q: Vec<String>,
        /// Use the signed inner product (negative-q regime)
        #[arg(long)]
        signed: bool,
    },
}

#[derive(Args)]
struct DensityArgs {
    /// Rational q in (-1, 0)
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Number of sample points across the support
    #[arg(long, default_value_t = 201)]
    points: usize,
    #[arg(long, value_enum, default_value_t = AtomMode::Derived)]
    atom_mode: AtomMode,
}

#[derive(Args)]
struct FreeconvArgs {
    /// JSON file holding the first moment sequence (array of "p/q" strings)
    #[arg(long)]
    a: PathBuf,
    /// JSON file holding the second moment sequence
    #[arg(long)]
    b: PathBuf,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// The alternating-sum identity over all pairings equals the
    /// (1-q)^inner sum over non-crossing pairings
    Corollary7 {
        #[arg(long, default_value_t = 5)]
        rmax: usize,
    },
    /// <c*(i) u, v> = <u, c(i) v> on random vectors, both regimes
    Theorem4 {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Operator vacuum moments equal the pairing-sum moments, both regimes
    Theorem5 {
        /// Exhaustive word length bound (words over 3 indices)
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
        /// Number of random words of length up to 10
        #[arg(long, default_value_t = 200)]
        words: usize,
    },
    /// The convolution identity mu_q = D mu_q1 boxplus D mu_q2 with
    /// 1/q = 1/q1 + 1/q2
    Theorem6 {
        #[arg(long, allow_hyphen_values = true)]
        q1: String,
        #[arg(long, allow_hyphen_values = true)]
        q2: String,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Everything: counts, boundary moments, all theorem checks, Gram and
    /// Hankel certificates, and the density quadrature cross-check
    All {
        /// Trim the exhaustive and randomized searches
        #[arg(long)]
        quick: bool,
    },
}

struct Check {
    name: String,
    expected: String,
    actual: String,
    pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Check {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let pass = expected == actual;
        Check {
            name: name.into(),
            expected,
            actual,
            pass,
        }
    }

    fn flag(name: impl Into<String>, pass: bool, detail: impl ToString) -> Check {
        Check {
            name: name.into(),
            expected: "pass".into(),
            actual: if pass {
                "pass".to_string()
            } else {
                format!("fail: {}", detail.to_string())
            },
            pass,
        }
    }
}

fn checks_json(checks: &[Check]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "expected": c.expected,
                    "actual": c.actual,
                    "pass": c.pass,
                })
            })
            .collect(),
    )
}

fn report(command: &str, params: Value, checks: &[Check], elapsed_ms: u128) -> (String, bool) {
    let pass = checks.iter().all(|c| c.pass);
    let v = json!({
        "schema": "pairweave/1",
        "command": command,
        "params": params,
        "checks": checks_json(checks),
        "pass": pass,
        "elapsed_ms": elapsed_ms,
    });
    (format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), pass)
}

fn parse_q(s: &str) -> Result<Rational, PairweaveError> {
    parse_rational(s)
}

fn qpoly_json(p: &QPoly) -> Value {
    p.to_json()
}

fn run() -> Result<(String, bool), CliError> {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    let seed = cli.seed;
    let timings = cli.timings;
    let elapsed = |t: &std::time::Instant| if timings { t.elapsed().as_millis() } else { 0 };

    let out: (String, bool) = match cli.cmd {
        Cmd::Pairings { cmd: PairingsCmd::Enum { n, stats } } => {
            let mut buf = String::new();
            for v in enumerate_pairings(n).map_err(CliError::Math)? {
                let pairs: Vec<Value> =
                    v.pairs().iter().map(|&(k, l)| json!([k, l])).collect();
                let obj = if stats {
                    let (inner, outer) = if v.is_noncrossing() {
                        let (o, i) = v.inner_outer_counts().map_err(CliError::Math)?;
                        (json!(i), json!(o))
                    } else {
                        (Value::Null, Value::Null)
                    };
                    json!({
                        "pairs": pairs,
                        "crossings": v.crossing_count(),
                        "blocks": v.block_count(),
                        "noncrossing": v.is_noncrossing(),
                        "inner": inner,
                        "outer": outer,
                    })
                } else {
                    json!({ "pairs": pairs })
                };
                buf.push_str(&serde_json::to_string(&obj).unwrap());
                buf.push('\n');
            }
            (buf, true)
        }

        Cmd::Moments(args) => (run_moments(&args)?, true),

        Cmd::Gram { cmd } => run_gram(cmd, timings, &started)?,

        Cmd::Density(args) => (run_density(&args)?, true),

        Cmd::Freeconv(args) => (run_freeconv(&args)?, true),

        Cmd::Verify { cmd } => {
            let (name, params, checks) = match cmd {
                VerifyCmd::Corollary7 { rmax } => (
                    "verify corollary7",
                    json!({"rmax": rmax}),
                    checks_corollary7(rmax)?,
                ),
                VerifyCmd::Theorem4 { trials } => (
                    "verify theorem4",
                    json!({"trials": trials, "seed": seed}),
                    checks_theorem4(trials, seed),
                ),
                VerifyCmd::Theorem5 { maxlen, words } => (
                    "verify theorem5",
                    json!({"maxlen": maxlen, "words": words, "seed": seed}),
                    checks_theorem5(maxlen, words, seed)?,
                ),
                VerifyCmd::Theorem6 { q1, q2, order } => {
                    let q1 = parse_q(&q1).map_err(CliError::Math)?;
                    let q2 = parse_q(&q2).map_err(CliError::Math)?;
                    (
                        "verify theorem6",
                        json!({
                            "q1": format_rational(&q1),
                            "q2": format_rational(&q2),
                            "order": order
                        }),
                        checks_theorem6_single(&q1, &q2, order)?,
                    )
                }
                VerifyCmd::All { quick } => (
                    "verify all",
                    json!({"quick": quick, "seed": seed}),
                    checks_all(quick, seed)?,
                ),
            };
            report(name, params, &checks, elapsed(&started))
        }
    };
    Ok(if let Some(path) = cli.out {
        std::fs::write(&path, out.0.as_bytes())
            .map_err(|e| CliError::Math(PairweaveError::InvalidArgument(e.to_string())))?;
        (String::new(), out.1)
    } else {
        out
    })
}

enum CliError {
    Math(PairweaveError),
}

fn run_moments(args: &MomentsArgs) -> Result<String, CliError> {
    let q = parse_q(&args.q).map_err(CliError::Math)?;
    match args.method {
        Method::Pairing => {
            let weight = match args.weight {
                WeightKind::Tq => {
                    // sign dispatch mirrors mu_q_moments
                    return Ok(moments_csv(
                        &mu_q_moments(&q, args.order)
                            .map_err(CliError::Math)?
                            .to_rationals()
                            .map_err(CliError::Math)?,
                    ));
                }
                WeightKind::Tqneg => Weight::TQNeg,
                WeightKind::Tminusone => Weight::TMinusOne,
                WeightKind::Thatmu => {
                    let mu = args
                        .mu
                        .as_deref()
                        .ok_or_else(|| {
                            CliError::Math(PairweaveError::InvalidArgument(
                                "--weight thatmu requires --mu".into(),
                            ))
                        })
                        .and_then(|s| parse_q(s).map_err(CliError::Math))?;
                    Weight::THatMu { mu: Some(mu) }
                }
            };
            if args.order > 16 {
                return Err(CliError::Math(PairweaveError::InvalidArgument(
                    "pairing moments capped at order 16".into(),
                )));
            }
            let ms = selfadjoint_moments(&weight, args.order, &CovarianceQ::fock());
            Ok(moments_csv(
                &ms.iter().map(|p| p.eval(&q)).collect::<Vec<_>>(),
            ))
        }
        Method::Quadrature => {
            let spec = make_mu_q(&q, args.atom_mode.into()).map_err(CliError::Math)?;
            let qm = quad_moments(&spec, args.order, args.points).map_err(CliError::Math)?;
            let mut buf = format!(
                "# total_mass={}\n# error_estimate={}\norder,moment\n",
                qm.total_mass, qm.error_estimate
            );
            for (i, m) in qm.moments.iter().enumerate() {
                buf.push_str(&format!("{},{}\n", i + 1, m));
            }
            Ok(buf)
        }
    }
}

fn moments_csv(ms: &[Rational]) -> String {
    let mut buf = String::from("order,moment\n");
    for (i, m) in ms.iter().enumerate() {
        buf.push_str(&format!("{},{}\n", i + 1, format_rational(m)));
    }
    buf
}

fn parse_qpoints(qs: &[String]) -> Result<Vec<Rational>, CliError> {
    qs.iter().map(|s| parse_q(s).map_err(CliError::Math)).collect()
}

fn gram_report(
    command: &str,
    params: Value,
    dim: usize,
    matrix: &[Vec<QPoly>],
    verdicts: &[(Rational, pairweave::linalg::PsdReport)],
    elapsed_ms: u128,
) -> (String, bool) {
    let checks: Vec<Check> = verdicts
        .iter()
        .map(|(qp, rep)| {
            Check::new(
                format!("psd(q={})", format_rational(qp)),
                "psd",
                if rep.psd { "psd" } else { "not psd" },
            )
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass);
    let matrix_json = if dim <= 16 {
        Value::Array(
            matrix
                .iter()
                .map(|row| Value::Array(row.iter().map(qpoly_json).collect()))
                .collect(),
        )
    } else {
        Value::Null
    };
    let v = json!({
        "schema": "pairweave/1",
        "command": command,
        "params": params,
        "dim": dim,
        "matrix": matrix_json,
        "checks": checks_json(&checks),
        "methods": verdicts.iter().map(|(_, r)| match r.method {
            PsdMethod::ExactLdl => "exact_ldl",
            PsdMethod::FloatEigen => "float_eigen",
        }).collect::<Vec<_>>(),
        "pass": pass,
        "elapsed_ms": elapsed_ms,
    });
    (format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), pass)
}

fn run_gram(
    cmd: GramCmd,
    timings: bool,
    started: &std::time::Instant,
) -> Result<(String, bool), CliError> {
    let elapsed = |t: &std::time::Instant| if timings { t.elapsed().as_millis() } else { 0 };
    match cmd {
        GramCmd::Symgroup { r, q, mu } => {
            let qpoints = parse_qpoints(&q)?;
            let weight = match mu {
                None => Weight::TQ,
                Some(m) => {
                    let mu = parse_q(&m).map_err(CliError::Math)?;
                    Weight::product(vec![Weight::TQ, Weight::THatMu { mu: Some(mu) }])
                }
            };
            let rep = symgroup_gram_psd(&weight, r, &qpoints).map_err(CliError::Math)?;
            Ok(gram_report(
                "gram symgroup",
                json!({"r": r, "q": q}),
                rep.dim,
                &rep.matrix,
                &rep.verdicts,
                elapsed(started),
            ))
        }
        GramCmd::Words { maxlen, indices, q } => {
            let qpoints = parse_qpoints(&q)?;
            let words = all_words(maxlen, indices);
            let rep = word_gram_psd(
                &words,
                &Kernel::Identity,
                &CovarianceQ::fock(),
                &Weight::TQ,
                &qpoints,
            )
            .map_err(CliError::Math)?;
            Ok(gram_report(
                "gram words",
                json!({"maxlen": maxlen, "indices": indices, "q": q}),
                rep.dim,
                &rep.matrix,
                &rep.verdicts,
                elapsed(started),
            ))
        }
        GramCmd::Fock {
            n,
            indices,
            q,
            signed,
        } => {
            let qpoints = parse_qpoints(&q)?;
            let regime = if signed { Regime::Signed } else { Regime::Nonneg };
            let rep = fock_gram_psd(n, indices, &qpoints, regime).map_err(CliError::Math)?;
            Ok(gram_report(
                "gram fock",
                json!({"n": n, "indices": indices, "q": q, "signed": signed}),
                rep.dim,
                &rep.matrix,
                &rep.verdicts,
                elapsed(started),
            ))
        }
    }
}

fn run_density(args: &DensityArgs) -> Result<String, CliError> {
    let q = parse_q(&args.q).map_err(CliError::Math)?;
    if args.points < 2 {
        return Err(CliError::Math(PairweaveError::InvalidArgument(
            "need at least 2 sample points".into(),
        )));
    }
    let spec = make_mu_q(&q, args.atom_mode.into()).map_err(CliError::Math)?;
    let atoms = spec
        .atoms
        .iter()
        .map(|(loc, mass)| format!("{loc},{mass}"))
        .collect::<Vec<_>>()
        .join(";");
    let mut buf = format!("# atoms: {atoms}\nt,density\n");
    for i in 0..args.points {
        let t = -spec.r + 2.0 * spec.r * (i as f64) / ((args.points - 1) as f64);
        buf.push_str(&format!("{},{}\n", t, density_eval(&spec, t)));
    }
    Ok(buf)
}

fn run_freeconv(args: &FreeconvArgs) -> Result<String, CliError> {
    let load = |p: &PathBuf| -> Result<MomentSeq, CliError> {
        let text = std::fs::read_to_string(p)
            .map_err(|e| CliError::Math(PairweaveError::InvalidArgument(e.to_string())))?;
        let strings: Vec<String> = serde_json::from_str(&text)
            .map_err(|e| CliError::Math(PairweaveError::Parse(e.to_string())))?;
        let ms = strings
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(CliError::Math)?;
        Ok(MomentSeq::from_rationals(&ms))
    };
    let a = load(&args.a)?;
    let b = load(&args.b)?;
    let conv = free_convolve(&a, &b).map_err(CliError::Math)?;
    let strings: Vec<String> = conv
        .to_rationals()
        .map_err(CliError::Math)?
        .iter()
        .map(format_rational)
        .collect();
    Ok(format!("{}\n", serde_json::to_string(&strings).unwrap()))
}

// ---- verify bodies --------------------------------------------------------

fn checks_corollary7(rmax: usize) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    for r in 1..=rmax {
        let (lhs, rhs, equal) = verify_corollary7(r).map_err(CliError::Math)?;
        checks.push(Check {
            name: format!("r={r}"),
            expected: rhs.to_string(),
            actual: lhs.to_string(),
            pass: equal,
        });
    }
    Ok(checks)
}

fn random_basis(rng: &mut ChaCha8Rng, nmax: usize, indices: usize) -> BlockedBasis {
    let n = rng.random_range(1..=nmax);
    let idx: Vec<usize> = (0..n).map(|_| rng.random_range(1..=indices)).collect();
    let seps: BTreeSet<usize> = (1..n).filter(|_| rng.random_bool(0.5)).collect();
    BlockedBasis::new(idx, seps).unwrap()
}

fn random_vector(rng: &mut ChaCha8Rng, nmax: usize, indices: usize) -> FockVector {
    let mut v = FockVector::zero();
    if rng.random_bool(0.3) {
        v = v.add(&FockVector::vacuum().scale(&QPoly::constant(rat(
            rng.random_range(-3..=3),
            rng.random_range(1..=3),
        ))));
    }
    for _ in 0..rng.random_range(1..=2) {
        let b = FockVector::basis(random_basis(rng, nmax, indices));
        let c = QPoly::constant(rat(rng.random_range(-3..=3), rng.random_range(1..=3)));
        v = v.add(&b.scale(&c));
    }
    v
}

fn checks_theorem4(trials: usize, seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    for (regime, tag) in [(Regime::Nonneg, "nonneg"), (Regime::Signed, "signed")] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = 0usize;
        for _ in 0..trials {
            let u = random_vector(&mut rng, 3, 3);
            let v = random_vector(&mut rng, 4, 3);
            let index = rng.random_range(1..=3);
            if !adjoint_identity_check(index, &u, &v, regime) {
                failures += 1;
            }
        }
        checks.push(Check::new(
            format!("adjointness[{tag}] failures over {trials} trials"),
            0,
            failures,
        ));
    }
    checks
}

fn all_words(maxlen: usize, indices: usize) -> Vec<Word> {
    // all words over {c(i), c*(i)} with length 0..=maxlen
    let letters: Vec<Letter> = (1..=indices)
        .flat_map(|i| [Letter::c(i), Letter::c_star(i)])
        .collect();
    let mut out = vec![Word(Vec::new())];
    let mut layer = vec![Word(Vec::new())];
    for _ in 0..maxlen {
        let mut next = Vec::new();
        for w in &layer {
            for l in &letters {
                let mut v = w.0.clone();
                v.push(*l);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn theorem5_holds(w: &Word, regime: Regime) -> bool {
    let weight = match regime {
        Regime::Nonneg => Weight::TQ,
        Regime::Signed => Weight::TQNeg,
    };
    vacuum_moment(w, regime)
        == word_moment(w, &Kernel::Identity, &CovarianceQ::fock(), &weight)
}

fn checks_theorem5(maxlen: usize, nwords: usize, seed: u64) -> Result<Vec<Check>, CliError> {
    if maxlen > 8 {
        return Err(CliError::Math(PairweaveError::InvalidArgument(
            "exhaustive word length capped at 8".into(),
        )));
    }
    let mut checks = Vec::new();
    let words = all_words(maxlen, 3);
    for (regime, tag) in [(Regime::Nonneg, "nonneg"), (Regime::Signed, "signed")] {
        let failures = words.iter().filter(|w| !theorem5_holds(w, regime)).count();
        checks.push(Check::new(
            format!(
                "vacuum=pairing[{tag}] failures over {} exhaustive words",
                words.len()
            ),
            0,
            failures,
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rand_failures = 0usize;
        for _ in 0..nwords {
            let len = rng.random_range(1..=10);
            let w = Word(
                (0..len)
                    .map(|_| {
                        let i = rng.random_range(1..=3);
                        if rng.random_bool(0.5) {
                            Letter::c_star(i)
                        } else {
                            Letter::c(i)
                        }
                    })
                    .collect(),
            );
            if !theorem5_holds(&w, regime) {
                rand_failures += 1;
            }
        }
        checks.push(Check::new(
            format!("vacuum=pairing[{tag}] failures over {nwords} random words"),
            0,
            rand_failures,
        ));
    }
    Ok(checks)
}

fn checks_theorem6_single(
    q1: &Rational,
    q2: &Rational,
    order: usize,
) -> Result<Vec<Check>, CliError> {
    let rep = verify_theorem6(q1, q2, order).map_err(CliError::Math)?;
    Ok(vec![Check {
        name: format!(
            "moments(q={}) = convolved moments, order {order}",
            format_rational(&rep.q)
        ),
        expected: rep
            .lhs
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(","),
        actual: rep
            .rhs
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(","),
        pass: rep.equal,
    }])
}

fn checks_counts() -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    for r in 1..=6usize {
        let count = enumerate_pairings(2 * r).map_err(CliError::Math)?.count() as u64;
        checks.push(Check::new(
            format!("pairings(2r={})", 2 * r),
            double_factorial(2 * r - 1),
            count,
        ));
        let nc = enumerate_pairings(2 * r)
            .map_err(CliError::Math)?
            .filter(|v| v.is_noncrossing())
            .count() as u64;
        checks.push(Check::new(format!("noncrossing(2r={})", 2 * r), catalan(r), nc));
    }
    let connected_expect = [1u64, 1, 4, 27];
    for (r, &e) in connected_expect.iter().enumerate() {
        checks.push(Check::new(
            format!("connected(2r={})", 2 * (r + 1)),
            e,
            connected_pairing_count(r + 1).map_err(CliError::Math)?,
        ));
    }
    Ok(checks)
}

fn checks_boundary() -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let cases: [(Rational, &str, fn(usize) -> u64); 3] = [
        (rat_int(1), "gaussian", |r| double_factorial(2 * r - 1)),
        (rat_int(0), "catalan", catalan),
        (rat_int(-1), "bernoulli", |_| 1),
    ];
    for (q, tag, f) in cases {
        let ms = mu_q_moments(&q, 12)
            .map_err(CliError::Math)?
            .to_rationals()
            .map_err(CliError::Math)?;
        for r in 1..=6 {
            checks.push(Check::new(
                format!("m_{}(q={}) [{tag}]", 2 * r, format_rational(&q)),
                rat_int(f(r) as i64),
                format_rational(&ms[2 * r - 1]),
            ));
        }
    }
    Ok(checks)
}

fn checks_gram_suites(quick: bool) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let qpoints = [rat_int(0), rat(1, 4), rat(1, 2), rat(3, 4), rat_int(1)];
    let nmax = if quick { 3 } else { 4 };
    for n in 1..=nmax {
        for indices in 1..=2usize {
            let rep = fock_gram_psd(n, indices, &qpoints, Regime::Nonneg)
                .map_err(CliError::Math)?;
            checks.push(Check::flag(
                format!("fock gram psd n={n} indices={indices} (dim {})", rep.dim),
                rep.all_psd(),
                "not psd",
            ));
        }
    }
    let sym_points = [rat_int(0), rat(1, 2), rat_int(1)];
    let weights = [
        ("tq", Weight::TQ),
        (
            "tq*thatmu(1/2)",
            Weight::product(vec![
                Weight::TQ,
                Weight::THatMu { mu: Some(rat(1, 2)) },
            ]),
        ),
    ];
    for (tag, w) in &weights {
        for r in 1..=4usize {
            let rep = symgroup_gram_psd(w, r, &sym_points).map_err(CliError::Math)?;
            checks.push(Check::flag(
                format!("symgroup gram psd r={r} weight={tag}"),
                rep.all_psd(),
                "not psd",
            ));
        }
    }
    Ok(checks)
}

fn checks_theorem6_grid(order: usize) -> Result<Vec<Check>, CliError> {
    let grid = [rat_int(1), rat(1, 2), rat(1, 3), rat(3, 4)];
    let mut checks = Vec::new();
    for sign in [1i64, -1] {
        for a in &grid {
            for b in &grid {
                let q1 = a * rat_int(sign);
                let q2 = b * rat_int(sign);
                let rep = verify_theorem6(&q1, &q2, order).map_err(CliError::Math)?;
                checks.push(Check::flag(
                    format!(
                        "theorem6 q1={} q2={}",
                        format_rational(&q1),
                        format_rational(&q2)
                    ),
                    rep.equal,
                    "moment mismatch",
                ));
            }
        }
    }
    // iterated: three free copies of the scaled endpoint measures
    for base in [rat_int(1), rat_int(-1)] {
        let g = mu_q_moments(&base, order).map_err(CliError::Math)?;
        let third = pairweave::freeprob::dilate(&g, &rat(1, 3)).map_err(CliError::Math)?;
        let conv = free_convolve(
            &free_convolve(&third, &third).map_err(CliError::Math)?,
            &third,
        )
        .map_err(CliError::Math)?;
        let target = mu_q_moments(&(&base / rat_int(3)), order).map_err(CliError::Math)?;
        checks.push(Check::flag(
            format!("iterated N=3 from q={}", format_rational(&base)),
            conv == target,
            "moment mismatch",
        ));
    }
    Ok(checks)
}

fn checks_density_identities(quick: bool) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    // combinatorial: mu_{1,sqrt(1+q)} moments match mu_q
    for q in [rat(-1, 4), rat(-1, 2), rat(-3, 4)] {
        let beta2 = rat_int(1) + &q;
        let ab = mu_ab_moments(&rat_int(1), &beta2, 12).map_err(CliError::Math)?;
        let direct = mu_q_moments(&q, 12).map_err(CliError::Math)?;
        checks.push(Check::flag(
            format!("mu_ab(1,1+q)=mu_q at q={}", format_rational(&q)),
            ab == direct,
            "moment mismatch",
        ));
    }
    // analytic: density + atoms integrate to the exact moments
    let npoints = if quick { 128 } else { 256 };
    for q in [rat(-1, 4), rat(-1, 2), rat(-3, 4), rat(-9, 10)] {
        let spec = make_mu_q(&q, LibAtomMode::Derived).map_err(CliError::Math)?;
        let qm = quad_moments(&spec, 10, npoints).map_err(CliError::Math)?;
        let exact = mu_q_moments(&q, 10)
            .map_err(CliError::Math)?
            .to_rationals()
            .map_err(CliError::Math)?;
        let max_dev = exact
            .iter()
            .enumerate()
            .map(|(i, m)| (qm.moments[i] - rational_to_f64(m)).abs())
            .fold((qm.total_mass - 1.0).abs(), f64::max);
        checks.push(Check::flag(
            format!("quadrature matches moments at q={}", format_rational(&q)),
            max_dev < 1e-8,
            format!("max deviation {max_dev:e}"),
        ));
    }
    // the verbatim atom constant: report its deviation (expected failure
    // below q = -1/2, e.g. total mass 2/3 at q = -3/4)
    for q in [rat(-3, 4), rat(-9, 10)] {
        let spec = make_mu_q(&q, LibAtomMode::Paper).map_err(CliError::Math)?;
        let qm = quad_moments(&spec, 2, npoints).map_err(CliError::Math)?;
        checks.push(Check::flag(
            format!(
                "paper atom mode at q={} loses mass (got {:.6})",
                format_rational(&q),
                qm.total_mass
            ),
            (qm.total_mass - 1.0).abs() > 1e-3,
            "unexpectedly normalized",
        ));
    }
    Ok(checks)
}

fn checks_hankel() -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    for q in [rat_int(-1), rat(-1, 2), rat_int(0), rat(1, 2), rat_int(1)] {
        let ms = mu_q_moments(&q, 12)
            .map_err(CliError::Math)?
            .to_rationals()
            .map_err(CliError::Math)?;
        let rep = hankel_psd(&ms).map_err(CliError::Math)?;
        checks.push(Check::flag(
            format!("hankel psd q={}", format_rational(&q)),
            rep.psd,
            "not psd",
        ));
    }
    Ok(checks)
}

fn checks_all(quick: bool, seed: u64) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    checks.extend(checks_counts()?);
    checks.extend(checks_corollary7(5)?);
    checks.extend(checks_theorem5(if quick { 4 } else { 6 }, if quick { 50 } else { 200 }, seed)?);
    checks.extend(checks_theorem4(if quick { 30 } else { 100 }, seed));
    checks.extend(checks_gram_suites(quick)?);
    checks.extend(checks_theorem6_grid(12)?);
    checks.extend(checks_density_identities(quick)?);
    checks.extend(checks_boundary()?);
    checks.extend(checks_hankel()?);
    Ok(checks)
}

fn main() -> ExitCode {
    match run() {
        Ok((text, pass)) => {
            if !text.is_empty() {
                let mut stdout = std::io::stdout().lock();
                let _ = stdout.write_all(text.as_bytes());
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
