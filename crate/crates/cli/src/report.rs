//! Report envelope, knot argument parsing, fixed float formatting, and the
//! exit-status error type shared by every subcommand.

use serde_json::{json, Value};

use ordercert_core::knots::TwoBridgeKnot;
use ordercert_core::Error;

/// Command failure with the exit status it maps to: 2 for invalid input,
/// 1 for an internal invariant violation.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    pub fn from_core(e: Error) -> Self {
        match e {
            Error::InvalidPair { .. } => CliError::invalid(e.to_string()),
            _ => CliError::internal(e.to_string()),
        }
    }
}

pub type CmdResult = Result<(), CliError>;

/// Rounds to 12 significant digits; all floats pass through this before
/// emission so identical inputs give byte-identical reports.
pub fn quantize(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("scientific notation round trip")
}

pub fn float_value(x: f64) -> Value {
    let q = quantize(x);
    serde_json::Number::from_f64(q)
        .map(Value::Number)
        .expect("report floats are finite")
}

/// Formats a float for CSV cells with the same 12-significant-digit rule.
pub fn float_text(x: f64) -> String {
    let q = quantize(x);
    let mut buf = Vec::new();
    serde_json::to_writer(&mut buf, &q).expect("float serializes");
    String::from_utf8(buf).expect("float text is ascii")
}

/// A parsed `p/q` argument: the original spelling plus the normal form.
pub struct KnotArg {
    pub original: String,
    pub knot: TwoBridgeKnot,
    pub mirrored: bool,
}

pub fn parse_knot(text: &str) -> Result<KnotArg, CliError> {
    let bad = || CliError::invalid(format!("expected a knot written as p/q, got {text:?}"));
    let (p_text, q_text) = text.split_once('/').ok_or_else(bad)?;
    let p: i64 = p_text.trim().parse().map_err(|_| bad())?;
    let q: i64 = q_text.trim().parse().map_err(|_| bad())?;
    let knot = TwoBridgeKnot::normalized(p, q).map_err(CliError::from_core)?;
    Ok(KnotArg {
        original: format!("{p}/{q}"),
        knot,
        mirrored: knot.q() != q,
    })
}

pub fn knot_value(arg: &KnotArg) -> Value {
    json!({
        "original": arg.original,
        "normalized": format!("{}/{}", arg.knot.p(), arg.knot.q()),
        "p": arg.knot.p(),
        "q": arg.knot.q(),
        "mirrored": arg.mirrored,
    })
}

/// Writes to stdout; a closed pipe (e.g. piping into `head`) ends the
/// process quietly instead of panicking.
pub fn print_all(text: &str) -> CmdResult {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let result = out.write_all(text.as_bytes()).and_then(|_| out.flush());
    if let Err(e) = result {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        return Err(CliError::internal(format!("stdout: {e}")));
    }
    Ok(())
}

/// Prints the standard report envelope as pretty JSON.
pub fn emit_envelope(command: &str, arg: &KnotArg, payload: Value, warnings: Vec<String>) -> CmdResult {
    let doc = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "knot": knot_value(arg),
        "payload": payload,
        "warnings": warnings,
    });
    let text = serde_json::to_string_pretty(&doc).expect("report serializes");
    print_all(&text)?;
    print_all("\n")
}
