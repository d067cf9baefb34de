use std::collections::BTreeSet;
use std::fmt;

use asai_core::arith;
use asai_core::charlattice::{EllContext, FiniteSetting};
use asai_core::lfactor::{self, EulerFactor, RootOfUnity};
use asai_core::oracle::{self, OracleConfig, OracleReport};
use asai_core::padic::{self, CuspidalDatum, Distinction, Violation};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::render::{key_values, record_table, Document, Format, Table};
use crate::{Command, DatumArgs, DualArg, LiftArgs, ScanArgs};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_ORACLE: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}", describe(.0))]
    Core(#[from] asai_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(_) => EXIT_VALIDATION,
        }
    }
}

fn describe(e: &asai_core::Error) -> String {
    match e {
        asai_core::Error::Validation(vs) => {
            let lines: Vec<String> = vs.iter().map(|v| format!("  {v}")).collect();
            format!("invalid cuspidal datum\n{}", lines.join("\n"))
        }
        other => other.to_string(),
    }
}

pub struct Outcome {
    pub rendered: String,
    pub code: u8,
}

pub fn run(cmd: &Command, format: Option<Format>) -> Result<Outcome, CliError> {
    let (doc, code, default) = match cmd {
        Command::Invariants { datum, ell } => (invariants(datum, *ell)?, 0, Format::Text),
        Command::Lfactor { datum, characteristic } => (lfactor(datum, *characteristic)?, 0, Format::Text),
        Command::Lifts(args) => (lifts(args)?, 0, Format::Text),
        Command::Scan(args) => (scan(args)?, 0, Format::Csv),
        Command::Verify {
            max_modulus,
            parallel,
            inject_fault,
        } => {
            let report = verify(*max_modulus, *parallel, *inject_fault);
            let code = if report.passed() { 0 } else { EXIT_ORACLE };
            (verify_document(&report), code, Format::Text)
        }
    };
    Ok(Outcome {
        rendered: doc.render(format.unwrap_or(default)),
        code,
    })
}

fn datum(args: &DatumArgs) -> Result<CuspidalDatum, CliError> {
    let distinction = if args.not_distinguished {
        Distinction::NotDistinguishedUpToUnramifiedTwist
    } else if let (Some(o), Some(k)) = (args.twist_order, args.twist_exponent) {
        Distinction::TwistOfDistinguished(RootOfUnity::new(o, k)?)
    } else {
        Distinction::Distinguished
    };
    Ok(CuspidalDatum {
        q_o: args.qo.clone(),
        n: args.n,
        e_ffo: args.e_ffo,
        e_ef: args.e,
        f_ef: args.f,
        e_sigma: args.e_sigma,
        supercuspidal: !args.non_supercuspidal,
        distinction,
    })
}

fn validated(d: &CuspidalDatum, ell: Option<u64>) -> Result<(), CliError> {
    padic::validate(d, ell).map_err(|v| CliError::Core(asai_core::Error::Validation(v)))
}

fn big(n: &BigUint) -> Value {
    Value::String(n.to_string())
}

fn invariants(args: &DatumArgs, ell: u64) -> Result<Document, CliError> {
    let d = datum(args)?;
    validated(&d, Some(ell))?;
    let r = padic::invariants(&d, ell)?;
    let json = json!({
        "e_o": r.e_o,
        "N": r.n_big,
        "q_pow": big(&r.q_pow),
        "q_Eo": big(&r.q_eo),
        "banal": r.banal,
        "rel_banal": r.relatively_banal,
        "xo_char0": r.x_o.char0,
        "xo_modell": r.x_o.modell,
        "xo_kernel": r.x_o.kernel,
    });
    let pairs = [
        ("e_o", r.e_o.to_string()),
        ("N", r.n_big.to_string()),
        ("q_pow", r.q_pow.to_string()),
        ("q_Eo", r.q_eo.to_string()),
        ("banal", r.banal.to_string()),
        ("rel_banal", r.relatively_banal.to_string()),
        ("xo_char0", r.x_o.char0.to_string()),
        ("xo_modell", r.x_o.modell.to_string()),
        ("xo_kernel", r.x_o.kernel.to_string()),
    ];
    Ok(Document {
        json,
        tables: vec![record_table(&pairs)],
        text: key_values(&pairs),
    })
}

fn roots_json(f: &EulerFactor) -> Value {
    Value::Array(
        f.roots()
            .map(|(z, m)| json!({ "order": z.order(), "exponent": z.exponent(), "multiplicity": m }))
            .collect(),
    )
}

fn lfactor(args: &DatumArgs, ch: u64) -> Result<Document, CliError> {
    let d = datum(args)?;
    validated(&d, (ch != 0).then_some(ch))?;
    let f = lfactor::asai_l_factor(&d, ch)?;
    let period = if ch != 0 && d.distinction.is_distinguished_up_to_twist() {
        let mut underlying = d.clone();
        underlying.distinction = Distinction::Distinguished;
        Some(lfactor::period_report(&underlying, ch)?)
    } else {
        None
    };
    let mut pairs = vec![
        ("characteristic", ch.to_string()),
        ("factor", f.render()),
        ("roots", f.render_roots()),
        ("degree", f.degree().to_string()),
        ("pole_order_at_one", f.pole_order_at_one().to_string()),
    ];
    let mut json = json!({
        "characteristic": ch,
        "factor": f.render(),
        "roots": roots_json(&f),
        "degree": f.degree(),
        "pole_order_at_one": f.pole_order_at_one(),
    });
    if let Some(p) = period {
        pairs.push(("period_nonzero", p.nonzero.to_string()));
        json["period"] = json!({
            "nonzero": p.nonzero,
            "numerator_zero_order": p.numerator_zero_order,
            "denominator_zero_order": p.denominator_zero_order,
            "scalar_vanishes": p.scalar_vanishes,
            "q_o_minus_one_valuation": p.q_o_minus_one_valuation,
        });
    }
    Ok(Document {
        json,
        tables: vec![record_table(&pairs)],
        text: key_values(&pairs),
    })
}

fn lifts(args: &LiftArgs) -> Result<Document, CliError> {
    let s = match args.dual {
        DualArg::Sigma => FiniteSetting::galois_pair(args.qo.clone(), args.n)?,
        DualArg::SelfDual => FiniteSetting::self_dual(args.qo.clone(), args.n)?,
    };
    let label = s.to_string();
    let ctx = EllContext::new(&s, args.ell)?;
    let theta = s.index(args.theta.clone());
    let class = s.enumerate_lifts(&ctx, &theta)?;
    let (theta_r, _) = s.ell_decompose(&ctx, &theta);
    let sc = s.is_regular(&theta_r);
    let closed = if s.is_dual_selfdual_modell(&ctx, &theta)? {
        Some(s.closed_form_dual_lift_count(&ctx, &theta, sc)?)
    } else {
        None
    };
    let reps: Vec<String> = class.representatives.iter().map(|r| r.value().to_string()).collect();
    let closed_str = closed.as_ref().map_or("-".to_string(), |c| c.count.to_string());
    let conditional = closed.as_ref().is_some_and(|c| c.conditional_on_distinction);
    let pairs = [
        ("setting", label.clone()),
        ("ell", args.ell.to_string()),
        ("theta", theta.value().to_string()),
        ("theta_r", theta_r.value().to_string()),
        ("case", class.case_tag.to_string()),
        ("supercuspidal_reduction", sc.to_string()),
        ("total", class.total.to_string()),
        ("dual_count", class.dual_count.to_string()),
        ("closed_form", closed_str),
        ("closed_form_conditional", conditional.to_string()),
        ("representatives", reps.join(" ")),
    ];
    let json = json!({
        "setting": label,
        "ell": args.ell,
        "theta": big(theta.value()),
        "theta_r": big(theta_r.value()),
        "case": class.case_tag.to_string(),
        "supercuspidal_reduction": sc,
        "total": class.total,
        "dual_count": class.dual_count,
        "closed_form": closed.as_ref().map_or(Value::Null, |c| big(&c.count)),
        "closed_form_conditional": conditional,
        "representatives": reps,
    });
    Ok(Document {
        json,
        tables: vec![record_table(&pairs)],
        text: key_values(&pairs),
    })
}

/// `a..b` (inclusive), `a,b,c`, or a single value.
fn parse_set(flag: &str, s: &str) -> Result<BTreeSet<u64>, CliError> {
    let bad = |part: &str| CliError::Usage(format!("--{flag}: cannot parse `{part}`"));
    let mut out = BTreeSet::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.trim().parse().map_err(|_| bad(part))?;
            let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad(part))?;
            out.extend(a..=b);
        } else {
            out.insert(part.parse().map_err(|_| bad(part))?);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("--{flag} is empty")));
    }
    Ok(out)
}

type InputKey = (u64, u32, u32, u32, u32, u32);

fn input_key(d: &CuspidalDatum, q: u64) -> InputKey {
    (q, d.n, d.e_ffo, d.e_ef, d.f_ef, d.e_sigma)
}

fn input_json(k: &InputKey) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("q_o".into(), big(&BigUint::from(k.0)));
    m.insert("n".into(), k.1.into());
    m.insert("e_ffo".into(), k.2.into());
    m.insert("e_ef".into(), k.3.into());
    m.insert("f_ef".into(), k.4.into());
    m.insert("e_sigma".into(), k.5.into());
    m
}

fn input_cells(k: &InputKey) -> Vec<String> {
    vec![
        k.0.to_string(),
        k.1.to_string(),
        k.2.to_string(),
        k.3.to_string(),
        k.4.to_string(),
        k.5.to_string(),
    ]
}

const INPUT_HEADERS: [&str; 6] = ["q_o", "n", "e_ffo", "e_ef", "f_ef", "e_sigma"];

struct Row {
    key: InputKey,
    ell: u64,
    inv: padic::InvariantReport,
    pole_order: u64,
    period_nonzero: bool,
}

struct Reject {
    key: InputKey,
    ell: Option<u64>,
    violations: Vec<Violation>,
}

fn scan(args: &ScanArgs) -> Result<Document, CliError> {
    let qs: Vec<u64> = parse_set("qo-range", &args.qo_range)?
        .into_iter()
        .filter(|&q| matches!(arith::prime_power(&BigUint::from(q)), Some((p, _)) if p != BigUint::from(2u32)))
        .collect();
    if qs.is_empty() {
        return Err(CliError::Usage("--qo-range contains no odd prime power".into()));
    }
    let ns = parse_set("n-range", &args.n_range)?;
    let ells = parse_set("ell-set", &args.ell_set)?;
    if let Some(&bad) = ells.iter().find(|&&l| !arith::is_prime_u64(l)) {
        return Err(CliError::Usage(format!("--ell-set: {bad} is not a prime")));
    }
    let mut rows = Vec::new();
    let mut rejects = Vec::new();
    for &q in &qs {
        let q_o = BigUint::from(q);
        for &n in &ns {
            let n = u32::try_from(n).map_err(|_| CliError::Usage(format!("--n-range: {n} is too large")))?;
            if n == 0 {
                return Err(CliError::Usage("--n-range: n must be at least 1".into()));
            }
            for d in padic::candidate_data(&q_o, n, !args.non_supercuspidal, &Distinction::Distinguished) {
                let key = input_key(&d, q);
                if let Err(violations) = padic::validate(&d, None) {
                    rejects.push(Reject { key, ell: None, violations });
                    continue;
                }
                for &ell in ells.iter().filter(|&&l| q % l != 0) {
                    if let Err(violations) = padic::validate(&d, Some(ell)) {
                        rejects.push(Reject {
                            key,
                            ell: Some(ell),
                            violations,
                        });
                        continue;
                    }
                    rows.push(Row {
                        key,
                        ell,
                        inv: padic::invariants(&d, ell)?,
                        pole_order: lfactor::asai_l_factor(&d, ell)?.pole_order_at_one(),
                        period_nonzero: lfactor::period_report(&d, ell)?.nonzero,
                    });
                }
            }
        }
    }
    rows.sort_by_key(|r| (r.key, r.ell));
    rejects.sort_by_key(|r| (r.key, r.ell));
    Ok(scan_document(&rows, &rejects))
}

fn scan_document(rows: &[Row], rejects: &[Reject]) -> Document {
    let mut headers = INPUT_HEADERS.to_vec();
    headers.extend([
        "ell",
        "e_o",
        "N",
        "rel_banal",
        "banal",
        "xo_char0",
        "xo_modell",
        "xo_kernel",
        "pole_order",
        "period_nonzero",
    ]);
    let mut table = Table::new(&headers).titled("rows");
    let mut row_json = Vec::new();
    for r in rows {
        let mut cells = input_cells(&r.key);
        cells.extend([
            r.ell.to_string(),
            r.inv.e_o.to_string(),
            r.inv.n_big.to_string(),
            r.inv.relatively_banal.to_string(),
            r.inv.banal.to_string(),
            r.inv.x_o.char0.to_string(),
            r.inv.x_o.modell.to_string(),
            r.inv.x_o.kernel.to_string(),
            r.pole_order.to_string(),
            r.period_nonzero.to_string(),
        ]);
        table.push(cells);
        let mut m = input_json(&r.key);
        m.insert("ell".into(), r.ell.into());
        m.insert("e_o".into(), r.inv.e_o.into());
        m.insert("N".into(), r.inv.n_big.into());
        m.insert("rel_banal".into(), r.inv.relatively_banal.into());
        m.insert("banal".into(), r.inv.banal.into());
        m.insert("xo_char0".into(), r.inv.x_o.char0.into());
        m.insert("xo_modell".into(), r.inv.x_o.modell.into());
        m.insert("xo_kernel".into(), r.inv.x_o.kernel.into());
        m.insert("pole_order".into(), r.pole_order.into());
        m.insert("period_nonzero".into(), r.period_nonzero.into());
        row_json.push(Value::Object(m));
    }
    let mut headers = INPUT_HEADERS.to_vec();
    headers.extend(["ell", "tags"]);
    let mut rej_table = Table::new(&headers).titled("rejects");
    let mut rej_json = Vec::new();
    for r in rejects {
        let tags: Vec<&str> = r.violations.iter().map(|v| v.tag.as_str()).collect();
        let mut cells = input_cells(&r.key);
        cells.push(r.ell.map_or(String::new(), |l| l.to_string()));
        cells.push(tags.join(";"));
        rej_table.push(cells);
        let mut m = input_json(&r.key);
        m.insert("ell".into(), r.ell.map_or(Value::Null, Value::from));
        m.insert(
            "violations".into(),
            r.violations
                .iter()
                .map(|v| json!({ "tag": v.tag, "message": v.message }))
                .collect(),
        );
        rej_json.push(Value::Object(m));
    }
    let text = format!(
        "{}\n{}",
        Document {
            json: Value::Null,
            tables: vec![table.clone(), rej_table.clone()],
            text: String::new(),
        }
        .render(Format::Md),
        format_args!("{} rows, {} rejects\n", rows.len(), rejects.len())
    );
    Document {
        json: json!({ "rows": row_json, "rejects": rej_json }),
        tables: vec![table, rej_table],
        text,
    }
}

fn verify(max_modulus: Option<u64>, parallel: bool, inject_fault: bool) -> OracleReport {
    let base = OracleConfig::default();
    let cfg = OracleConfig {
        max_modulus: max_modulus.unwrap_or(base.max_modulus),
        parallel,
        inject_fault,
        ..base
    };
    oracle::run_suite(&cfg)
}

struct FailureLine<'a>(&'a oracle::Failure);

impl fmt::Display for FailureLine<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.0;
        write!(f, "[{}] {}: expected {}, got {}", x.tag, x.input, x.expected, x.actual)
    }
}

fn verify_document(r: &OracleReport) -> Document {
    let pairs = [
        ("passed", r.passed().to_string()),
        ("checked", r.checked.to_string()),
        ("skipped", r.skipped.to_string()),
        ("witnesses", r.witnesses.to_string()),
        ("failures", r.failures.len().to_string()),
    ];
    let mut text = key_values(&pairs);
    for x in &r.failures {
        text.push_str(&format!("{}\n", FailureLine(x)));
    }
    let mut failures = Table::new(&["tag", "input", "expected", "actual"]).titled("failures");
    for x in &r.failures {
        failures.push(vec![x.tag.clone(), x.input.clone(), x.expected.clone(), x.actual.clone()]);
    }
    let mut json = serde_json::to_value(r).expect("report serializes");
    json["passed"] = r.passed().into();
    Document {
        json,
        tables: vec![record_table(&pairs).titled("summary"), failures],
        text,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sets() {
        let v: Vec<u64> = parse_set("x", "1..4").unwrap().into_iter().collect();
        assert_eq!(v, [1, 2, 3, 4]);
        let v: Vec<u64> = parse_set("x", "7, 3,3..=5").unwrap().into_iter().collect();
        assert_eq!(v, [3, 4, 5, 7]);
        assert!(matches!(parse_set("x", ""), Err(CliError::Usage(_))));
        assert!(matches!(parse_set("x", "5..2"), Err(CliError::Usage(_))));
        assert!(matches!(parse_set("x", "a..2"), Err(CliError::Usage(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), EXIT_USAGE);
        let e = CliError::from(asai_core::Error::NotPrime(6));
        assert_eq!(e.exit_code(), EXIT_VALIDATION);
    }
}
