//! Command dispatch. Every command yields a JSON document and an exit code.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;
use twist_cert_core::bounds::{
    nset_membership_two, propagate, IntervalBound, NuParams, PairState, TwoFamilyMembership,
};
use twist_cert_core::classify::{
    check_conjugation_symmetry, classify_word, lantern_like_query, relation_catalog,
    relation_context, WordKind, WordOutcome, WordVerdict,
};
use twist_cert_core::pingpong::{
    certify_free_n, certify_free_two, certify_relpa_two, nu_report, NuBoundEntry,
};
use twist_cert_core::rational::{parse_rational, to_exact_string, Rational};
use twist_cert_core::sl2z::{self, Mat2, MatrixClass};
use twist_cert_core::traintrack::{self, PaOutcome};
use twist_cert_core::{CurveSystem, RelationName, TwistWord};

use crate::output::{
    matrix_rows, CertificateDoc, IntOut, QuadraticDoc, EXIT_NEGATIVE, EXIT_POSITIVE, EXIT_UNKNOWN,
};
use crate::schema::{parse_chart, parse_system, Diagnostic};
use crate::words::{parse_nonempty_word, parse_word, WordError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    CertifyFree,
    CertifyRelpa,
    ClassifyWord,
    RelationsList,
    RelationsCheck,
    Sl2zClassify,
    Sl2zSearch,
    TraintrackAnalyze,
    BoundsPropagate,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Flags {
    pub word: Option<String>,
    pub max_len: Option<u32>,
    pub m: Option<u64>,
    pub n: Option<u64>,
    pub lambda: Option<String>,
    pub mu: Option<String>,
    pub seed: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub flags: Flags,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Schema(#[from] Diagnostic),
    #[error("--word: {0}")]
    Word(#[from] WordError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {err}")]
    Io { path: String, err: std::io::Error },
    #[error("{0}")]
    Engine(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn engine(e: impl std::fmt::Display) -> CliError {
    CliError::Engine(e.to_string())
}

/// Output document plus exit code.
pub type Outcome = (String, i32);

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn read_input(cfg: &RunConfig) -> Result<String, CliError> {
    let path = cfg
        .input_path
        .as_ref()
        .ok_or_else(|| usage("this command needs an input file"))?;
    std::fs::read_to_string(path).map_err(|err| CliError::Io {
        path: path.display().to_string(),
        err,
    })
}

fn load_system(cfg: &RunConfig) -> Result<CurveSystem, CliError> {
    Ok(parse_system(&read_input(cfg)?)?)
}

fn rational_flag(name: &str, v: &Option<String>) -> Result<Option<Rational>, CliError> {
    v.as_deref()
        .map(|s| parse_rational(s).map_err(|e| usage(format!("--{name}: {e}"))))
        .transpose()
}

fn word_flag(cfg: &RunConfig) -> Result<&str, CliError> {
    cfg.flags
        .word
        .as_deref()
        .ok_or_else(|| usage("--word is required"))
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::CertifyFree => certify_free(cfg),
        Command::CertifyRelpa => certify_relpa(cfg),
        Command::ClassifyWord => classify(cfg),
        Command::RelationsList => relations_list(cfg),
        Command::RelationsCheck => relations_check(),
        Command::Sl2zClassify => sl2z_classify(cfg),
        Command::Sl2zSearch => sl2z_search(cfg),
        Command::TraintrackAnalyze => traintrack_analyze(cfg),
        Command::BoundsPropagate => bounds_propagate(cfg),
    }
}

#[derive(Serialize)]
struct NuTermDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<String>,
    value: String,
}

#[derive(Serialize)]
struct NuEntryDoc {
    i: String,
    j: String,
    families: Vec<Vec<NuTermDoc>>,
    max: String,
    nu: IntOut,
}

fn nu_doc(sys: &CurveSystem, e: &NuBoundEntry) -> NuEntryDoc {
    let name = |f: usize| sys.family(f).name.clone();
    NuEntryDoc {
        i: name(e.i),
        j: name(e.j),
        families: e
            .families
            .iter()
            .map(|fam| {
                fam.iter()
                    .map(|t| NuTermDoc {
                        k: t.k.map(name),
                        l: t.l.map(name),
                        value: to_exact_string(&t.value),
                    })
                    .collect()
            })
            .collect(),
        max: to_exact_string(&e.max),
        nu: IntOut::from(&e.nu),
    }
}

#[derive(Serialize)]
struct CertifyDoc {
    command: &'static str,
    certificate: CertificateDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu_report: Option<Vec<NuEntryDoc>>,
}

fn nu_params(cfg: &RunConfig, n: usize) -> Result<NuParams, CliError> {
    let mut p = NuParams::standard();
    if let Some(l) = rational_flag("lambda", &cfg.flags.lambda)? {
        p = p.with_uniform_lambda(l);
    }
    if let Some(m) = rational_flag("mu", &cfg.flags.mu)? {
        for i in 0..n {
            for j in (i + 1)..n {
                p = p.with_mu(i, j, m.clone());
            }
        }
    }
    p.validate().map_err(|e| usage(e.to_string()))?;
    Ok(p)
}

fn certify_free(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let sys = load_system(cfg)?;
    let (cert, report) = if sys.num_families() >= 3 {
        let cert = certify_free_n(&sys, None).map_err(engine)?;
        let params = nu_params(cfg, sys.num_families())?;
        let rep = nu_report(&sys, &params).map_err(engine)?;
        (cert, Some(rep.iter().map(|e| nu_doc(&sys, e)).collect()))
    } else {
        (certify_free_two(&sys).map_err(engine)?, None)
    };
    let code = crate::output::verdict_exit(cert.verdict());
    let doc = CertifyDoc {
        command: "certify-free",
        certificate: CertificateDoc::from(&cert),
        nu_report: report,
    };
    Ok((pretty(&doc), code))
}

fn certify_relpa(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let sys = load_system(cfg)?;
    let cert = certify_relpa_two(&sys).map_err(engine)?;
    let code = crate::output::verdict_exit(cert.verdict());
    let doc = CertifyDoc {
        command: "certify-relpa",
        certificate: CertificateDoc::from(&cert),
        nu_report: None,
    };
    Ok((pretty(&doc), code))
}

#[derive(Serialize)]
struct VerdictDoc {
    kind: &'static str,
    basis: Option<&'static str>,
    relation: Option<String>,
    trace: Option<IntOut>,
    core: String,
    conjugator: String,
    detail: String,
}

fn verdict_doc(v: &WordVerdict, names: &[&str]) -> VerdictDoc {
    VerdictDoc {
        kind: v.kind.as_str(),
        basis: v.basis.map(|b| b.tag()),
        relation: v.relation.as_ref().map(|r| r.statement()),
        trace: v.trace.as_ref().map(IntOut::from),
        core: v.core.display_with(names).to_string(),
        conjugator: v.conjugator.display_with(names).to_string(),
        detail: v.detail.clone(),
    }
}

fn kind_exit(k: WordKind) -> i32 {
    match k {
        WordKind::RelPA => EXIT_POSITIVE,
        WordKind::Unknown => EXIT_UNKNOWN,
        _ => EXIT_NEGATIVE,
    }
}

#[derive(Serialize)]
struct ClassifyDoc {
    command: &'static str,
    word: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<VerdictDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    by_algebraic_case: Option<BTreeMap<&'static str, VerdictDoc>>,
}

fn classify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let sys = load_system(cfg)?;
    let names = sys.family_names();
    let w = parse_nonempty_word(word_flag(cfg)?, &names)?;
    let outcome = classify_word(&sys, &w).map_err(engine)?;
    let word = w.display_with(&names).to_string();
    let (doc, code) = match &outcome {
        WordOutcome::Determined(v) => (
            ClassifyDoc {
                command: "classify-word",
                word,
                verdict: Some(verdict_doc(v, &names)),
                by_algebraic_case: None,
            },
            kind_exit(v.kind),
        ),
        WordOutcome::ByAlgebraicCase { alg_zero, alg_two } => (
            ClassifyDoc {
                command: "classify-word",
                word,
                verdict: None,
                by_algebraic_case: Some(BTreeMap::from([
                    ("alg_abs=0", verdict_doc(alg_zero, &names)),
                    ("alg_abs=2", verdict_doc(alg_two, &names)),
                ])),
            },
            EXIT_UNKNOWN,
        ),
    };
    Ok((pretty(&doc), code))
}

#[derive(Serialize)]
struct RelationDoc {
    name: &'static str,
    statement: String,
    lhs: String,
    rhs: String,
    context: &'static str,
}

#[derive(Serialize)]
struct LanternLikeDoc {
    ab: u64,
    alg_abs: Option<u64>,
    relations: Vec<&'static str>,
    basis: &'static str,
    reason: Option<String>,
}

#[derive(Serialize)]
struct RelationsListDoc {
    command: &'static str,
    relations: Vec<RelationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lantern_like: Option<LanternLikeDoc>,
}

fn relations_list(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let relations = relation_catalog()
        .into_iter()
        .map(|r| RelationDoc {
            name: r.name.as_str(),
            statement: r.statement(),
            lhs: r.lhs.to_string(),
            rhs: r.rhs_string(),
            context: relation_context(r.name),
        })
        .collect();
    let lantern_like = match cfg.input_path {
        None => None,
        Some(_) => {
            let sys = load_system(cfg)?;
            if sys.num_families() != 2 || !sys.all_single_curves() {
                return Err(usage("lantern-like query needs two single-curve families"));
            }
            let ab = sys.geom(0, 1);
            let alg = sys.alg_abs(0, 1);
            let ans = lantern_like_query(ab, alg);
            Some(LanternLikeDoc {
                ab,
                alg_abs: alg,
                relations: ans.relations.iter().map(|r| r.name.as_str()).collect(),
                basis: ans.basis.tag(),
                reason: ans.reason,
            })
        }
    };
    let doc = RelationsListDoc {
        command: "relations-list",
        relations,
        lantern_like,
    };
    Ok((pretty(&doc), EXIT_POSITIVE))
}

fn mat_doc(m: &Mat2) -> [[IntOut; 2]; 2] {
    [
        [IntOut::from(&m.a), IntOut::from(&m.b)],
        [IntOut::from(&m.c), IntOut::from(&m.d)],
    ]
}

#[derive(Serialize)]
struct RelationCheckDoc {
    name: &'static str,
    statement: String,
    method: &'static str,
    holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lhs_matrix: Option<[[IntOut; 2]; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rhs_matrix: Option<[[IntOut; 2]; 2]>,
}

#[derive(Serialize)]
struct RelationsCheckDoc {
    command: &'static str,
    checks: Vec<RelationCheckDoc>,
}

fn relations_check() -> Result<Outcome, CliError> {
    let mut code = EXIT_POSITIVE;
    let mut checks = Vec::new();
    for r in relation_catalog() {
        let doc = match sl2z::check_relation(&r) {
            Ok((l, rh, ok)) => {
                if !ok {
                    code = EXIT_NEGATIVE;
                }
                RelationCheckDoc {
                    name: r.name.as_str(),
                    statement: r.statement(),
                    method: "SL2Z",
                    holds: Some(ok),
                    lhs_matrix: Some(mat_doc(&l)),
                    rhs_matrix: Some(mat_doc(&rh)),
                }
            }
            Err(_) if r.name == RelationName::TbtaSquared => {
                let ok = check_conjugation_symmetry(&r).map_err(engine)?;
                if !ok {
                    code = EXIT_NEGATIVE;
                }
                RelationCheckDoc {
                    name: r.name.as_str(),
                    statement: r.statement(),
                    method: "conjugation-symmetry",
                    holds: Some(ok),
                    lhs_matrix: None,
                    rhs_matrix: None,
                }
            }
            Err(_) => RelationCheckDoc {
                name: r.name.as_str(),
                statement: r.statement(),
                method: "none",
                holds: None,
                lhs_matrix: None,
                rhs_matrix: None,
            },
        };
        checks.push(doc);
    }
    let doc = RelationsCheckDoc {
        command: "relations-check",
        checks,
    };
    Ok((pretty(&doc), code))
}

fn powers(cfg: &RunConfig) -> Result<(u64, u64), CliError> {
    let m = cfg.flags.m.unwrap_or(1);
    let n = cfg.flags.n.unwrap_or(1);
    if m == 0 || n == 0 {
        return Err(usage("--m and --n must be >= 1"));
    }
    Ok((m, n))
}

#[derive(Serialize)]
struct Sl2zClassifyDoc {
    command: &'static str,
    word: String,
    m: u64,
    n: u64,
    matrix: [[IntOut; 2]; 2],
    trace: IntOut,
    class: &'static str,
    central: bool,
}

fn sl2z_classify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (m, n) = powers(cfg)?;
    let w = parse_word(word_flag(cfg)?, &["A", "B"])?;
    let mat = sl2z::eval_word(&w, m, n).map_err(engine)?;
    let class = sl2z::classify_matrix(&mat);
    let doc = Sl2zClassifyDoc {
        command: "sl2z-classify",
        word: w.to_string(),
        m,
        n,
        matrix: mat_doc(&mat),
        trace: IntOut::from(&mat.trace()),
        class: class.as_str(),
        central: matches!(class, MatrixClass::Reducible { central: true }),
    };
    Ok((pretty(&doc), EXIT_POSITIVE))
}

#[derive(Serialize)]
struct Sl2zSearchDoc {
    command: &'static str,
    tag: &'static str,
    m: u64,
    n: u64,
    max_len: u32,
    found: Option<String>,
    length: Option<usize>,
}

fn sl2z_search(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (m, n) = powers(cfg)?;
    let max_len = cfg.flags.max_len.unwrap_or(12);
    let found = sl2z::find_relation(m, n, max_len).map_err(engine)?;
    let code = if found.is_some() {
        EXIT_POSITIVE
    } else {
        EXIT_NEGATIVE
    };
    let doc = Sl2zSearchDoc {
        command: "sl2z-search",
        tag: "SL2Z-BFS",
        m,
        n,
        max_len,
        length: found.as_ref().map(|w| w.letter_length() as usize),
        found: found.map(|w| w.to_string()),
    };
    Ok((pretty(&doc), code))
}

#[derive(Serialize)]
struct PaDoc {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<QuadraticDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenvector: Option<Vec<QuadraticDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    primitivity_power: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    caveat: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct TraintrackDoc {
    command: &'static str,
    provenance: String,
    word: String,
    matrix: Vec<Vec<IntOut>>,
    trace: IntOut,
    det: IntOut,
    char_poly: String,
    real_eigenvalues: Vec<QuadraticDoc>,
    pa: PaDoc,
}

fn traintrack_analyze(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let chart = parse_chart(&read_input(cfg)?)?;
    let names = chart.names();
    let w = match cfg.flags.word.as_deref() {
        Some(t) => parse_nonempty_word(t, &names)?,
        None if names.len() == 1 => TwistWord::from_pairs(&[(0, 1)]),
        None => {
            return Err(usage(
                "--word is required for charts with several generators",
            ))
        }
    };
    let mat = traintrack::compose(&chart, &w).map_err(engine)?;
    let out = traintrack::pa_certificate(&mat).map_err(engine)?;
    let fac = out.char_poly();
    let (pa, code) = match &out {
        PaOutcome::CertifiedPAOnChart(c) => (
            PaDoc {
                status: "CertifiedPAOnChart",
                lambda: Some(QuadraticDoc::from(&c.lambda)),
                eigenvector: Some(c.eigenvector.iter().map(QuadraticDoc::from).collect()),
                primitivity_power: Some(c.primitivity_power),
                caveat: Some(c.caveat),
                reason: None,
            },
            EXIT_POSITIVE,
        ),
        PaOutcome::NotCertified { reason, .. } => (
            PaDoc {
                status: "NotCertified",
                lambda: None,
                eigenvector: None,
                primitivity_power: None,
                caveat: None,
                reason: Some(reason.to_string()),
            },
            EXIT_UNKNOWN,
        ),
    };
    let doc = TraintrackDoc {
        command: "traintrack-analyze",
        provenance: chart.provenance().to_string(),
        word: w.display_with(&names).to_string(),
        matrix: matrix_rows(&mat),
        trace: IntOut::from(&mat.trace()),
        det: IntOut::from(&mat.det()),
        char_poly: fac.to_string(),
        real_eigenvalues: fac.real_roots().iter().map(QuadraticDoc::from).collect(),
        pa,
    };
    Ok((pretty(&doc), code))
}

#[derive(Serialize)]
struct StateDoc {
    step: usize,
    applied: Option<String>,
    bounds: BTreeMap<String, [String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    membership: Option<&'static str>,
}

#[derive(Serialize)]
struct BoundsDoc {
    command: &'static str,
    word: String,
    lambda: String,
    states: Vec<StateDoc>,
}

fn interval_doc(b: &IntervalBound) -> [String; 2] {
    [to_exact_string(b.lo()), to_exact_string(b.hi())]
}

fn bounds_propagate(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let sys = load_system(cfg)?;
    let names = sys.family_names();
    let w = parse_word(word_flag(cfg)?, &names)?;
    let seed_text = cfg
        .flags
        .seed
        .as_deref()
        .ok_or_else(|| usage("--seed is required: (x,c) for every curve c, comma separated"))?;
    let seed: Vec<u64> = seed_text
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage("--seed must be comma-separated nonnegative integers"))?;
    if seed.len() != sys.num_curves() {
        return Err(usage(format!(
            "--seed has {} values, the system has {} curves",
            seed.len(),
            sys.num_curves()
        )));
    }
    let lambda = rational_flag("lambda", &cfg.flags.lambda)?
        .unwrap_or_else(|| Rational::from_integer(1.into()));
    let states = propagate(&sys, &w, &PairState::exact(&seed)).map_err(engine)?;
    let applied: Vec<String> = w
        .letters()
        .iter()
        .rev()
        .map(|l| TwistWord::new([*l]).display_with(&names).to_string())
        .collect();
    let docs = states
        .iter()
        .enumerate()
        .map(|(k, st)| {
            let membership = (sys.num_families() == 2)
                .then(|| nset_membership_two(&sys, st, 0, 1, &lambda).ok())
                .flatten()
                .map(|m| match m {
                    TwoFamilyMembership::InNa => "N_A",
                    TwoFamilyMembership::InNb => "N_B",
                    TwoFamilyMembership::InY => "Y",
                    TwoFamilyMembership::Undetermined => "undetermined",
                });
            StateDoc {
                step: k,
                applied: k.checked_sub(1).map(|i| applied[i].clone()),
                bounds: (0..sys.num_curves())
                    .map(|c| (sys.curve_name(c).to_string(), interval_doc(&st.bounds[c])))
                    .collect(),
                membership,
            }
        })
        .collect();
    let doc = BoundsDoc {
        command: "bounds-propagate",
        word: w.display_with(&names).to_string(),
        lambda: to_exact_string(&lambda),
        states: docs,
    };
    Ok((pretty(&doc), EXIT_POSITIVE))
}
