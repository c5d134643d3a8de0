//! One function per subcommand; each validates its arguments, runs the
//! kernel, and emits a report.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde_json::{json, Value};

use ordercert_core::analytic::{
    isolate_real_roots, real_slice, Certifier, CertifyConfig, Mat2c, Mat2r, RealRoot,
    RepCertificate, Verdict,
};
use ordercert_core::covers::{
    abelianization, branched_quotient, cyclic_cover_presentation, fox_formula_order, knot_group,
    Order,
};
use ordercert_core::knots::TwoBridgeKnot;
use ordercert_core::riley::riley_polynomial;

use crate::report::{
    emit_envelope, float_text, float_value, parse_knot, print_all, CliError, CmdResult,
};

/// Reads `ORDERCERT_TOL`; absence means the default tolerance.
fn config_from_env() -> Result<CertifyConfig, CliError> {
    match std::env::var("ORDERCERT_TOL") {
        Err(std::env::VarError::NotPresent) => Ok(CertifyConfig::default()),
        Err(e) => Err(CliError::invalid(format!("ORDERCERT_TOL: {e}"))),
        Ok(text) => {
            let tol: f64 = text
                .trim()
                .parse()
                .map_err(|_| CliError::invalid(format!("ORDERCERT_TOL is not a float: {text:?}")))?;
            if !tol.is_finite() || tol <= 0.0 {
                return Err(CliError::invalid(format!(
                    "ORDERCERT_TOL must be a positive finite float, got {tol}"
                )));
            }
            Ok(CertifyConfig { tol })
        }
    }
}

fn complex_matrix_value(m: &Mat2c) -> Value {
    let entry = |i, j| {
        let e = m.entry(i, j);
        json!([float_value(e.re), float_value(e.im)])
    };
    json!([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
}

fn real_matrix_value(m: &Mat2r) -> Value {
    let entry = |i, j| float_value(m.entry(i, j));
    json!([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
}

fn root_value(root: &RealRoot) -> Value {
    json!({
        "value": float_value(root.value),
        "lo": root.lo.to_string(),
        "hi": root.hi.to_string(),
        "width": float_value(root.width),
    })
}

fn certificate_value(cert: &RepCertificate) -> Value {
    json!({
        "branch": cert.branch.label(),
        "theta": float_value(cert.theta),
        "s_star": root_value(&cert.s_star),
        "margin": float_value(cert.margin),
        "residuals": {
            "relation": float_value(cert.residual_relation),
            "central": float_value(cert.residual_central),
            "real": float_value(cert.residual_real),
            "relation_real": float_value(cert.residual_relation_real),
        },
        "matrices": {
            "rho_x": complex_matrix_value(&cert.rho_x),
            "rho_y": complex_matrix_value(&cert.rho_y),
            "real_x": real_matrix_value(&cert.real_x),
            "real_y": real_matrix_value(&cert.real_y),
        },
    })
}

fn verdict_label(verdict: &Verdict) -> &'static str {
    match verdict {
        Verdict::CertifiedLeftOrderable(_) => "certified_left_orderable",
        Verdict::CertifiedViaBetti => "certified_via_betti",
        Verdict::Inconclusive(_) => "inconclusive",
    }
}

fn order_value(order: &Order) -> Value {
    match order {
        Order::Finite(n) => Value::String(n.to_string()),
        Order::Infinite => Value::String("infinite".to_string()),
    }
}

pub fn cmd_phi(knot: &str) -> CmdResult {
    let arg = parse_knot(knot)?;
    let riley = riley_polynomial(&arg.knot).map_err(CliError::from_core)?;
    let payload = json!({
        "phi": riley.phi().text(),
        "cos_form": riley.cos_form().text(),
        "s_degree": arg.knot.half_degree(),
        "properties": serde_json::to_value(riley.report()).expect("report serializes"),
    });
    emit_envelope("phi", &arg, payload, vec![])
}

pub fn cmd_certify(knot: &str, n: u32) -> CmdResult {
    if n < 2 {
        return Err(CliError::invalid("cover degree n must be at least 2"));
    }
    let arg = parse_knot(knot)?;
    let certifier =
        Certifier::with_config(arg.knot, config_from_env()?).map_err(CliError::from_core)?;
    let verdict = certifier.certify(n);
    let mut payload = json!({
        "n": n,
        "verdict": verdict_label(&verdict),
    });
    match &verdict {
        Verdict::CertifiedLeftOrderable(cert) => {
            payload["certificate"] = certificate_value(cert);
        }
        Verdict::Inconclusive(reason) => {
            payload["reason"] = Value::String(reason.label().to_string());
        }
        Verdict::CertifiedViaBetti => {}
    }
    emit_envelope("certify", &arg, payload, vec![])
}

fn scan_entry(n: u32, verdict: &Verdict) -> Value {
    let mut entry = json!({
        "n": n,
        "verdict": verdict_label(verdict),
    });
    match verdict {
        Verdict::CertifiedLeftOrderable(cert) => {
            entry["branch"] = Value::String(cert.branch.label().to_string());
            entry["s_star"] = float_value(cert.s_star.value);
            entry["margin"] = float_value(cert.margin);
        }
        Verdict::Inconclusive(reason) => {
            entry["reason"] = Value::String(reason.label().to_string());
        }
        Verdict::CertifiedViaBetti => {}
    }
    entry
}

pub fn cmd_scan(knot: &str, n_max: u32) -> CmdResult {
    if !(2..=10_000).contains(&n_max) {
        return Err(CliError::invalid("--n-max must lie in 2..=10000"));
    }
    let arg = parse_knot(knot)?;
    let certifier =
        Certifier::with_config(arg.knot, config_from_env()?).map_err(CliError::from_core)?;
    let report = certifier.scan(n_max);
    let payload = json!({
        "n_max": n_max,
        "n0": report.n0,
        "verdicts": report
            .verdicts
            .iter()
            .map(|(n, v)| scan_entry(*n, v))
            .collect::<Vec<_>>(),
    });
    emit_envelope("scan", &arg, payload, vec![])
}

fn normalized_pairs(p_max: i64) -> Vec<TwoBridgeKnot> {
    let mut out = Vec::new();
    let mut p = 3;
    while p <= p_max {
        for q in (1..p).step_by(2) {
            if let Ok(k) = TwoBridgeKnot::normalized(p, q) {
                out.push(k);
            }
        }
        p += 2;
    }
    out
}

pub fn cmd_batch(p_max: i64, n_max: u32, pmod4: Option<u8>) -> CmdResult {
    if p_max < 3 {
        return Err(CliError::invalid("--p-max must be at least 3"));
    }
    if !(2..=10_000).contains(&n_max) {
        return Err(CliError::invalid("--n-max must lie in 2..=10000"));
    }
    if let Some(r) = pmod4 {
        if r != 1 && r != 3 {
            return Err(CliError::invalid("--pmod4 must be 1 or 3 (p is odd)"));
        }
    }
    let config = config_from_env()?;
    let knots: Vec<TwoBridgeKnot> = normalized_pairs(p_max)
        .into_iter()
        .filter(|k| pmod4.is_none_or(|r| k.p() % 4 == r as i64))
        .collect();
    // scans run in parallel; collect keeps canonical (p, q) order
    let lines = knots
        .par_iter()
        .map(|k| {
            let certifier =
                Certifier::with_config(*k, config).map_err(CliError::from_core)?;
            let report = certifier.scan(n_max);
            let line = json!({
                "p": k.p(),
                "q": k.q(),
                "n_max": n_max,
                "n0": report.n0,
            });
            Ok(serde_json::to_string(&line).expect("line serializes"))
        })
        .collect::<Result<Vec<String>, CliError>>()?;
    let mut doc = lines.join("\n");
    if !doc.is_empty() {
        doc.push('\n');
    }
    print_all(&doc)
}

pub fn cmd_presentation(knot: &str, n: u32, branched: bool) -> CmdResult {
    if n < 1 {
        return Err(CliError::invalid("cover degree n must be at least 1"));
    }
    let arg = parse_knot(knot)?;
    let group = knot_group(&arg.knot);
    let cover = cyclic_cover_presentation(&group, n).map_err(CliError::from_core)?;
    let presentation = if branched {
        branched_quotient(&cover)
    } else {
        cover
    };
    let mut text = presentation.to_string();
    if let Some(m) = presentation.meridian() {
        text.push_str(&format!("meridian: {}\n", presentation.generator_names()[m]));
    }
    print_all(&text)
}

pub fn cmd_homology(knot: &str, n: u32) -> CmdResult {
    if n < 1 {
        return Err(CliError::invalid("cover degree n must be at least 1"));
    }
    let arg = parse_knot(knot)?;
    let group = knot_group(&arg.knot);
    let cover = cyclic_cover_presentation(&group, n).map_err(CliError::from_core)?;
    let branched = branched_quotient(&cover);
    let snf = abelianization(&branched);
    let fox = fox_formula_order(&arg.knot.alexander(), n);
    let payload = json!({
        "n": n,
        "generators": branched.num_generators(),
        "relators": branched.relators().len(),
        "snf_diagonal": snf.diagonal.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "betti": snf.betti,
        "torsion_order": order_value(&snf.order),
        "fox_order": order_value(&fox),
        "agreement": snf.order == fox,
    });
    emit_envelope("homology", &arg, payload, vec![])
}

pub fn cmd_curve(knot: &str, from: f64, to: f64, steps: u32) -> CmdResult {
    if !(from > 0.0 && from < to && to < PI) {
        return Err(CliError::invalid(
            "theta range must satisfy 0 < from < to < pi",
        ));
    }
    if steps < 2 {
        return Err(CliError::invalid("--steps must be at least 2"));
    }
    let arg = parse_knot(knot)?;
    let riley = riley_polynomial(&arg.knot).map_err(CliError::from_core)?;
    let mut rows = Vec::with_capacity(steps as usize);
    for i in 0..steps {
        let theta = from + (to - from) * i as f64 / (steps - 1) as f64;
        let slice = real_slice(riley.cos_form(), theta);
        let roots = isolate_real_roots(&slice).map_err(CliError::from_core)?;
        let values: Vec<f64> = roots.iter().map(|r| r.value).collect();
        rows.push((theta, values));
    }
    let columns = rows.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let header: Vec<String> = std::iter::once("theta".to_string())
        .chain((1..=columns).map(|k| format!("root_{k}")))
        .collect();
    let mut doc = header.join(",");
    doc.push('\n');
    for (theta, values) in rows {
        let mut cells = vec![float_text(theta)];
        for k in 0..columns {
            cells.push(values.get(k).map(|v| float_text(*v)).unwrap_or_default());
        }
        doc.push_str(&cells.join(","));
        doc.push('\n');
    }
    print_all(&doc)
}
