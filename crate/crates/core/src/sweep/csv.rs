use super::evaluate::{asymptote_bits, leading_bits};
use crate::bounds::{heisenberg_bound, sql_bound};
use crate::distributions::StrategyKind;
use crate::error::{Error, Result};
use crate::mi::{Method, MiEstimate};
use std::fmt::Write as _;

pub const CSV_HEADER: &str =
    "strategy,N,d,t,mi_bits,err_bits,asymptote_bits,heisenberg_bits,sql_bits,method,seed,runtime_ms";
pub const ASYMPTOTE_COLUMNS: &str = "offset_bits,ratio";

/// One line of sweep output.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub strategy: StrategyKind,
    pub n: u64,
    pub d: u64,
    pub t: Option<u32>,
    pub mi_bits: f64,
    pub err_bits: f64,
    pub asymptote_bits: f64,
    pub heisenberg_bits: f64,
    pub sql_bits: f64,
    pub method: Method,
    pub seed: Option<u64>,
    pub runtime_ms: Option<f64>,
    /// `mi_bits` minus the logarithmic leading term of the reference line.
    pub offset_bits: f64,
    /// `mi_bits / asymptote_bits`.
    pub ratio: f64,
}

impl ResultRow {
    pub fn from_estimate(est: &MiEstimate, runtime_ms: Option<f64>) -> Result<Self> {
        let point = est
            .spec
            .ok_or_else(|| Error::Domain("estimate has no strategy attached".into()))?;
        let asymptote = asymptote_bits(&point);
        Ok(Self {
            strategy: point.kind,
            n: point.n,
            d: point.d,
            t: point.t,
            mi_bits: est.bits,
            err_bits: est.err,
            asymptote_bits: asymptote,
            heisenberg_bits: heisenberg_bound(point.n)?,
            sql_bits: sql_bound(point.n)?,
            method: est.method,
            seed: est.seed,
            runtime_ms,
            offset_bits: est.bits - leading_bits(&point),
            ratio: est.bits / asymptote,
        })
    }

    pub fn write_csv(&self, out: &mut String, asymptote_columns: bool) {
        let opt = |v: Option<String>| v.unwrap_or_default();
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.strategy,
            self.n,
            self.d,
            opt(self.t.map(|t| t.to_string())),
            fmt_g12(self.mi_bits),
            fmt_g12(self.err_bits),
            fmt_g12(self.asymptote_bits),
            fmt_g12(self.heisenberg_bits),
            fmt_g12(self.sql_bits),
            self.method,
            opt(self.seed.map(|s| s.to_string())),
            opt(self.runtime_ms.map(fmt_g12)),
        );
        if asymptote_columns {
            let _ = write!(out, ",{},{}", fmt_g12(self.offset_bits), fmt_g12(self.ratio));
        }
        out.push('\n');
    }
}

/// Render rows as CSV: header plus one LF-terminated line per row.
pub fn to_csv(rows: &[ResultRow], asymptote_columns: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    if asymptote_columns {
        out.push(',');
        out.push_str(ASYMPTOTE_COLUMNS);
    }
    out.push('\n');
    for row in rows {
        row.write_csv(&mut out, asymptote_columns);
    }
    out
}

/// C `%.12g`: 12 significant digits, trailing zeros removed, exponent form
/// outside `1e-4 <= |x| < 1e12`.
pub fn fmt_g12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let fixed = format!("{:.*}", (DIGITS - 1 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::ProbeSpec;

    #[test]
    fn g12_matches_c_printf() {
        let cases = [
            (1.0, "1"),
            (0.1, "0.1"),
            (5.791358652018877, "5.79135865202"),
            (-1.2198977272241925, "-1.21989772722"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (4.936e-10, "4.936e-10"),
            (999999999999.5, "1e+12"),
            (0.0, "0"),
            (2.5e-300, "2.5e-300"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_g12(x), want, "{x}");
        }
    }

    #[test]
    fn row_layout() {
        let est = MiEstimate {
            bits: 0.5,
            err: 1e-10,
            method: Method::ClosedForm,
            spec: Some(ProbeSpec::sep_detection(1).unwrap()),
            seed: None,
        };
        let row = ResultRow::from_estimate(&est, None).unwrap();
        let csv = to_csv(&[row], false);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(
            lines[1],
            "sep-detection,1,2,1,0.5,1e-10,0.442695040889,1,0,closed-form,,"
        );
        assert!(csv.ends_with('\n') && !csv.contains('\r'));
        let row = ResultRow::from_estimate(&est, Some(1.5)).unwrap();
        let csv = to_csv(&[row], true);
        assert!(csv.starts_with(&format!("{CSV_HEADER},{ASYMPTOTE_COLUMNS}\n")));
        assert!(csv.lines().nth(1).unwrap().ends_with(",1.5,0.5,1.12944567664"));
    }
}
